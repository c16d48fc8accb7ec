//! Offline schema alignment between pretraining labels (open/Wikidata-style)
//! and each downstream dataset's closed vocabulary, built from co-occurrence
//! statistics and optionally corrected by curated entries.

use crate::record::{Gold, TaskRecord};
use crate::triple::{normalize_surface, Triple};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlignError {
    #[error("no usable examples on the {side} side")]
    EmptyCorpus { side: &'static str },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Whether an alignment entry maps entity types or relation labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlignKind {
    Entity,
    Relation,
}

impl AlignKind {
    fn as_str(&self) -> &'static str {
        match self {
            AlignKind::Entity => "entity",
            AlignKind::Relation => "relation",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "entity" => Some(AlignKind::Entity),
            "relation" => Some(AlignKind::Relation),
            _ => None,
        }
    }
}

/// One alignment entry with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignEntry {
    pub target: String,
    /// Co-occurrence score (PMI with add-one smoothing); 0 for curated entries.
    pub score: f64,
    pub curated: bool,
}

/// Directed label mapping for one dataset. Each source label maps to at most
/// one target, and curated entries win over computed ones on merge.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SchemaAlignment {
    pub dataset: String,
    #[serde(
        serialize_with = "serialize_entries",
        deserialize_with = "deserialize_entries"
    )]
    entries: BTreeMap<(AlignKind, String), AlignEntry>,
}

// JSON maps need string keys, so the entry table serializes as a record list.
#[derive(Serialize, Deserialize)]
struct EntryRecord {
    kind: AlignKind,
    source: String,
    target: String,
    score: f64,
    curated: bool,
}

fn serialize_entries<S: serde::Serializer>(
    entries: &BTreeMap<(AlignKind, String), AlignEntry>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let records: Vec<EntryRecord> = entries
        .iter()
        .map(|((kind, source), entry)| EntryRecord {
            kind: *kind,
            source: source.clone(),
            target: entry.target.clone(),
            score: entry.score,
            curated: entry.curated,
        })
        .collect();
    records.serialize(serializer)
}

fn deserialize_entries<'de, D: serde::Deserializer<'de>>(
    deserializer: D,
) -> Result<BTreeMap<(AlignKind, String), AlignEntry>, D::Error> {
    let records = Vec::<EntryRecord>::deserialize(deserializer)?;
    Ok(records
        .into_iter()
        .map(|r| {
            (
                (r.kind, r.source),
                AlignEntry {
                    target: r.target,
                    score: r.score,
                    curated: r.curated,
                },
            )
        })
        .collect())
}

impl SchemaAlignment {
    pub fn new(dataset: impl Into<String>) -> Self {
        SchemaAlignment {
            dataset: dataset.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, kind: AlignKind, source: impl Into<String>, entry: AlignEntry) {
        self.entries.insert((kind, source.into()), entry);
    }

    pub fn get(&self, kind: AlignKind, source: &str) -> Option<&AlignEntry> {
        self.entries.get(&(kind, source.to_string()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(AlignKind, String), &AlignEntry)> {
        self.entries.iter()
    }

    /// Target label set of one kind; labels already in it pass through
    /// [`apply_alignment`] unchanged, which keeps application idempotent.
    fn targets(&self, kind: AlignKind) -> impl Iterator<Item = &str> {
        self.entries
            .iter()
            .filter(move |((k, _), _)| *k == kind)
            .map(|(_, entry)| entry.target.as_str())
    }

    /// Layers `overlay` on top of `self`: curated entries always beat
    /// computed ones; within the same curation level the overlay wins.
    pub fn merge(&mut self, overlay: &SchemaAlignment) {
        for (key, entry) in &overlay.entries {
            match self.entries.get(key) {
                Some(existing) if existing.curated && !entry.curated => {}
                _ => {
                    self.entries.insert(key.clone(), entry.clone());
                }
            }
        }
    }
}

/// Maps a triple's labels through the alignment.
///
/// Entity triples (`instance of`) have their tail type mapped; all other
/// triples have their relation label mapped. A label that is already a target
/// label passes through unchanged. Unknown labels drop the triple (callers
/// count these drops).
pub fn apply_alignment(triple: &Triple, alignment: &SchemaAlignment) -> Option<Triple> {
    let is_entity = normalize_surface(&triple.relation) == "instance of";
    let (kind, label) = if is_entity {
        (AlignKind::Entity, normalize_surface(&triple.tail))
    } else {
        (AlignKind::Relation, normalize_surface(&triple.relation))
    };

    let mapped = match alignment.get(kind, &label) {
        Some(entry) => entry.target.clone(),
        None if alignment.targets(kind).any(|t| t == label) => label,
        None => return None,
    };

    let mut out = triple.clone();
    if is_entity {
        out.tail = mapped;
    } else {
        out.relation = mapped;
    }
    Some(out)
}

/// A pretraining-side example: text with its aligned triples.
pub type PretrainPair = (String, Vec<Triple>);

/// Builds alignment candidates from co-occurrence of pretraining labels with
/// downstream gold labels over shared mention surfaces.
///
/// The score is pointwise mutual information with add-one smoothing over the
/// joint count table; each pretraining label maps to its argmax downstream
/// label, ties broken by higher joint count then lexicographic label order.
/// Labels that never co-occur produce no entry.
pub fn build_cooccurrence_alignment(
    pretrain: &[PretrainPair],
    downstream: &[TaskRecord],
    dataset: &str,
) -> Result<SchemaAlignment, AlignError> {
    if pretrain.is_empty() {
        return Err(AlignError::EmptyCorpus { side: "pretraining" });
    }
    if downstream.is_empty() {
        return Err(AlignError::EmptyCorpus { side: "downstream" });
    }

    // Surface -> downstream labels, split by kind.
    let mut entity_by_surface: HashMap<String, Vec<String>> = HashMap::new();
    let mut relation_by_surface: HashMap<String, Vec<String>> = HashMap::new();
    for record in downstream {
        match &record.gold {
            Gold::TypedSpans { spans } => {
                for span in spans {
                    let surface = normalize_surface(&crate::grounding::char_slice(
                        &record.text,
                        span.span(),
                    ));
                    entity_by_surface
                        .entry(surface)
                        .or_default()
                        .push(normalize_surface(&span.label));
                }
            }
            Gold::EntitiesRelations {
                entities,
                relations,
            } => {
                for span in entities {
                    let surface = normalize_surface(&crate::grounding::char_slice(
                        &record.text,
                        span.span(),
                    ));
                    entity_by_surface
                        .entry(surface)
                        .or_default()
                        .push(normalize_surface(&span.label));
                }
                for rel in relations {
                    let surface = normalize_surface(&crate::grounding::char_slice(
                        &record.text,
                        rel.head,
                    ));
                    relation_by_surface
                        .entry(surface)
                        .or_default()
                        .push(normalize_surface(&rel.label));
                }
            }
            _ => {}
        }
    }
    if entity_by_surface.is_empty() && relation_by_surface.is_empty() {
        return Err(AlignError::EmptyCorpus { side: "downstream" });
    }

    // Joint counts keyed by (pretraining label, downstream label).
    let mut entity_joint: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut relation_joint: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut usable_pretrain = 0usize;
    for (_text, triples) in pretrain {
        if triples.is_empty() {
            continue;
        }
        usable_pretrain += 1;
        for triple in triples {
            let head_surface = normalize_surface(&triple.head);
            if normalize_surface(&triple.relation) == "instance of" {
                let source = normalize_surface(&triple.tail);
                if let Some(labels) = entity_by_surface.get(&head_surface) {
                    for label in labels {
                        *entity_joint.entry((source.clone(), label.clone())).or_insert(0) += 1;
                    }
                }
            } else {
                let source = normalize_surface(&triple.relation);
                if let Some(labels) = relation_by_surface.get(&head_surface) {
                    for label in labels {
                        *relation_joint
                            .entry((source.clone(), label.clone()))
                            .or_insert(0) += 1;
                    }
                }
            }
        }
    }
    if usable_pretrain == 0 {
        return Err(AlignError::EmptyCorpus { side: "pretraining" });
    }

    let mut alignment = SchemaAlignment::new(dataset);
    for (kind, joint) in [
        (AlignKind::Entity, &entity_joint),
        (AlignKind::Relation, &relation_joint),
    ] {
        for (source, candidates) in argmax_by_pmi(joint) {
            let (target, score) = candidates;
            alignment.insert(
                kind,
                source,
                AlignEntry {
                    target,
                    score,
                    curated: false,
                },
            );
        }
    }
    Ok(alignment)
}

/// PMI with add-one smoothing: log((c_st + 1) * total / ((c_s + 1) * (c_t + 1))).
fn argmax_by_pmi(joint: &BTreeMap<(String, String), usize>) -> BTreeMap<String, (String, f64)> {
    let mut source_totals: BTreeMap<&str, usize> = BTreeMap::new();
    let mut target_totals: BTreeMap<&str, usize> = BTreeMap::new();
    let mut total = 0usize;
    for ((source, target), count) in joint {
        *source_totals.entry(source).or_insert(0) += count;
        *target_totals.entry(target).or_insert(0) += count;
        total += count;
    }

    let mut best: BTreeMap<String, (String, f64, usize)> = BTreeMap::new();
    for ((source, target), &count) in joint {
        if count == 0 {
            continue;
        }
        let pmi = (((count + 1) * total.max(1)) as f64
            / ((source_totals[source.as_str()] + 1) * (target_totals[target.as_str()] + 1)) as f64)
            .ln();
        let candidate = (target.clone(), pmi, count);
        match best.get(source) {
            Some((cur_target, cur_pmi, cur_count)) => {
                let better = pmi > *cur_pmi
                    || (pmi == *cur_pmi && count > *cur_count)
                    || (pmi == *cur_pmi && count == *cur_count && target < cur_target);
                if better {
                    best.insert(source.clone(), candidate);
                }
            }
            None => {
                best.insert(source.clone(), candidate);
            }
        }
    }
    best.into_iter()
        .map(|(source, (target, pmi, _))| (source, (target, pmi)))
        .collect()
}

/// Saves the alignment as TSV: kind, source, target, score, curated flag.
/// Deterministic ordering; `save` then `load` is lossless.
pub fn save_alignment(alignment: &SchemaAlignment, path: &Path) -> Result<(), AlignError> {
    let mut out = String::new();
    writeln_str(&mut out, &format!("# dataset: {}", alignment.dataset));
    writeln_str(&mut out, "# kind\tsource_label\ttarget_label\tscore\tcurated");
    for ((kind, source), entry) in alignment.entries() {
        writeln_str(
            &mut out,
            &format!(
                "{}\t{}\t{}\t{}\t{}",
                kind.as_str(),
                source,
                entry.target,
                entry.score,
                u8::from(entry.curated)
            ),
        );
    }
    std::fs::write(path, out).map_err(|source| AlignError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn writeln_str(buf: &mut String, line: &str) {
    let _ = writeln!(buf, "{line}");
}

/// Loads one alignment TSV. A duplicate source label within one file violates
/// the map property and is a parse error.
pub fn load_alignment(path: &Path) -> Result<SchemaAlignment, AlignError> {
    let text = std::fs::read_to_string(path).map_err(|source| AlignError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let display = path.display().to_string();
    let mut alignment = SchemaAlignment::new("");
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(dataset) = comment.trim().strip_prefix("dataset:") {
                alignment.dataset = dataset.trim().to_string();
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(AlignError::Parse {
                path: display,
                line: line_no,
                message: format!("expected 5 tab-separated fields, got {}", fields.len()),
            });
        }
        let kind = AlignKind::parse(fields[0]).ok_or_else(|| AlignError::Parse {
            path: display.clone(),
            line: line_no,
            message: format!("unknown kind `{}`", fields[0]),
        })?;
        let score: f64 = fields[3].parse().map_err(|_| AlignError::Parse {
            path: display.clone(),
            line: line_no,
            message: format!("invalid score `{}`", fields[3]),
        })?;
        let curated = match fields[4] {
            "0" => false,
            "1" => true,
            other => {
                return Err(AlignError::Parse {
                    path: display,
                    line: line_no,
                    message: format!("curated flag must be 0 or 1, got `{other}`"),
                })
            }
        };
        let key = (kind, fields[1].to_string());
        if alignment.entries.contains_key(&key) {
            return Err(AlignError::Parse {
                path: display,
                line: line_no,
                message: format!("duplicate source label `{}`", fields[1]),
            });
        }
        alignment.entries.insert(
            key,
            AlignEntry {
                target: fields[2].to_string(),
                score,
                curated,
            },
        );
    }
    Ok(alignment)
}
