//! Pretraining/multi-task corpus preparation: prefix attachment, test-set
//! leakage filtering, coreference document chunking, and seeded mixing.

use crate::codec::{DecodeHints, EncodeMode, EncodedExample};
use crate::grounding::{char_slice, Span};
use crate::record::PredictionUnit;
use crate::triple::{normalize_surface, serialize_triples, Triple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("dataset `{dataset}` has no source stream")]
    UnknownDataset { dataset: String },
    #[error("example from `{corpus}` is registered for {registered:?}, not {requested:?}")]
    FamilyMismatch {
        corpus: String,
        registered: Vec<PretrainFamily>,
        requested: PretrainFamily,
    },
    #[error("invalid mixture spec: {reason}")]
    InvalidSpec { reason: String },
    #[error(transparent)]
    Triple(#[from] crate::triple::TripleError),
}

/// The three pretraining task families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PretrainFamily {
    Entity,
    Relation,
    Triple,
}

impl PretrainFamily {
    pub fn prefix(&self) -> &'static str {
        match self {
            PretrainFamily::Entity => "entity:",
            PretrainFamily::Relation => "relation:",
            PretrainFamily::Triple => "triple:",
        }
    }

    fn unit(&self) -> PredictionUnit {
        match self {
            PretrainFamily::Entity => PredictionUnit::Entity,
            PretrainFamily::Relation => PredictionUnit::Relation,
            PretrainFamily::Triple => PredictionUnit::Triple,
        }
    }
}

/// One (text, triples) alignment from a pretraining corpus. The `family`
/// field accepts a single string or an array, matching corpora registered for
/// more than one pretraining task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PretrainExample {
    pub text: String,
    pub triples: Vec<Triple>,
    pub source: String,
    pub family: FamilySpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilySpec {
    One(PretrainFamily),
    Many(Vec<PretrainFamily>),
}

impl FamilySpec {
    pub fn families(&self) -> Vec<PretrainFamily> {
        match self {
            FamilySpec::One(f) => vec![*f],
            FamilySpec::Many(fs) => fs.clone(),
        }
    }
}

/// Drops pretraining examples whose normalized text equals a test sentence.
/// Matching is exact normalized-sentence equality.
pub fn filter_leakage(
    examples: impl IntoIterator<Item = PretrainExample>,
    test_texts: &HashSet<String>,
) -> (Vec<PretrainExample>, usize) {
    let mut kept = Vec::new();
    let mut removed = 0usize;
    for example in examples {
        if test_texts.contains(&normalize_surface(&example.text)) {
            removed += 1;
        } else {
            kept.push(example);
        }
    }
    (kept, removed)
}

/// Normalizes a set of test sentences for [`filter_leakage`].
pub fn normalize_test_set<'a>(sentences: impl IntoIterator<Item = &'a str>) -> HashSet<String> {
    sentences
        .into_iter()
        .map(normalize_surface)
        .collect()
}

/// Attaches the pretraining-task prefix and linearizes the gold triples.
/// The requested family must be one the example's corpus is registered for.
pub fn attach_pretraining_prefix(
    example: &PretrainExample,
    family: PretrainFamily,
) -> Result<EncodedExample, CorpusError> {
    let registered = example.family.families();
    if !registered.contains(&family) {
        return Err(CorpusError::FamilyMismatch {
            corpus: example.source.clone(),
            registered,
            requested: family,
        });
    }
    let gold_output = serialize_triples(&example.triples)?;
    let mut hasher = Sha256::new();
    hasher.update(example.source.as_bytes());
    hasher.update([0x1f]);
    hasher.update(family.prefix().as_bytes());
    hasher.update([0x1f]);
    hasher.update(example.text.as_bytes());
    let digest = hasher.finalize();
    let id: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();

    Ok(EncodedExample {
        id,
        input: format!("{} {}", family.prefix(), example.text),
        gold_output,
        hints: DecodeHints {
            task: None,
            dataset: example.source.clone(),
            unit: family.unit(),
            mode: EncodeMode::ZeroShot,
            label_vocab: Vec::new(),
            slot_list: Vec::new(),
            marked_span: None,
            source_text: example.text.clone(),
        },
    })
}

/// How datasets are combined into one training stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MixStrategy {
    /// Components concatenated in spec order.
    Concatenate,
    /// Sample dataset d with probability min(n_d, cap) / sum_i min(n_i, cap);
    /// within a dataset, examples cycle in seeded shuffled order.
    ExampleProportional { cap: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixComponent {
    pub dataset: String,
    /// Number of examples from this dataset (its effective size n_d).
    pub count: u64,
    /// Source file, used by the command-line pipeline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

/// A seeded, fully deterministic mixing recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub components: Vec<MixComponent>,
    pub strategy: MixStrategy,
    pub seed: u64,
    /// Output stream length for sampling strategies. Defaults to the sum of
    /// capped component sizes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<u64>,
}

impl MixtureSpec {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if self.components.is_empty() {
            return Err(CorpusError::InvalidSpec {
                reason: "spec has no components".into(),
            });
        }
        if let MixStrategy::ExampleProportional { cap } = self.strategy {
            if cap == 0 {
                return Err(CorpusError::InvalidSpec {
                    reason: "cap must be positive".into(),
                });
            }
        }
        for component in &self.components {
            if component.count == 0 {
                return Err(CorpusError::InvalidSpec {
                    reason: format!("component `{}` has zero count", component.dataset),
                });
            }
        }
        Ok(())
    }

    /// Capped sampling weights, in component order.
    pub fn weights(&self) -> Vec<u64> {
        match self.strategy {
            MixStrategy::Concatenate => self.components.iter().map(|c| c.count).collect(),
            MixStrategy::ExampleProportional { cap } => self
                .components
                .iter()
                .map(|c| c.count.min(cap))
                .collect(),
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Mixes per-dataset streams into one deterministic stream.
///
/// Items are opaque; the command-line pipeline mixes raw JSONL lines so the
/// output is byte-identical across runs with the same spec and seed.
pub fn mix_examples<T: Clone>(
    spec: &MixtureSpec,
    sources: &BTreeMap<String, Vec<T>>,
) -> Result<Vec<T>, CorpusError> {
    spec.validate()?;
    for component in &spec.components {
        let stream = sources
            .get(&component.dataset)
            .ok_or_else(|| CorpusError::UnknownDataset {
                dataset: component.dataset.clone(),
            })?;
        if (stream.len() as u64) < component.count {
            return Err(CorpusError::InvalidSpec {
                reason: format!(
                    "component `{}` wants {} examples but the stream has {}",
                    component.dataset,
                    component.count,
                    stream.len()
                ),
            });
        }
    }

    match spec.strategy {
        MixStrategy::Concatenate => {
            let mut out = Vec::new();
            for component in &spec.components {
                let stream = &sources[&component.dataset];
                out.extend_from_slice(&stream[..component.count as usize]);
            }
            Ok(out)
        }
        MixStrategy::ExampleProportional { .. } => {
            let weights = spec.weights();
            let total_weight: u64 = weights.iter().sum();
            let draws = spec.total.unwrap_or(total_weight) as usize;

            // Per-component cursors over a seeded shuffled order, cycled.
            let mut orders: Vec<Vec<usize>> = Vec::new();
            let mut cursors = vec![0usize; spec.components.len()];
            for (idx, component) in spec.components.iter().enumerate() {
                let n = component.count as usize;
                let mut order: Vec<usize> = (0..n).collect();
                let mut rng =
                    ChaCha20Rng::seed_from_u64(splitmix64(spec.seed ^ (idx as u64 + 1)));
                // Fisher-Yates, driven by explicit draws for stability.
                for i in (1..n).rev() {
                    let j = rng.gen_range(0..=i);
                    order.swap(i, j);
                }
                orders.push(order);
            }

            let mut rng = ChaCha20Rng::seed_from_u64(splitmix64(spec.seed));
            let mut out = Vec::with_capacity(draws);
            for _ in 0..draws {
                let mut pick = rng.gen_range(0..total_weight);
                let mut chosen = 0usize;
                for (idx, w) in weights.iter().enumerate() {
                    if pick < *w {
                        chosen = idx;
                        break;
                    }
                    pick -= w;
                }
                let order = &orders[chosen];
                let item_idx = order[cursors[chosen] % order.len()];
                cursors[chosen] += 1;
                out.push(sources[&spec.components[chosen].dataset][item_idx].clone());
            }
            Ok(out)
        }
    }
}

/// A coreference document restricted to one fixed-size chunk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorefChunk {
    pub text: String,
    /// Clusters with chunk-local character spans; clusters reduced to fewer
    /// than two mentions in this chunk are dropped.
    pub clusters: Vec<Vec<Span>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChunkStats {
    pub kept_mentions: usize,
    /// Mentions alone in their chunk after splitting (cluster dropped there).
    pub dropped_singletons: usize,
    /// Mentions straddling a chunk boundary (cannot be preserved intact).
    pub dropped_straddling: usize,
}

/// Splits a document into fixed-size chunks of whitespace-delimited tokens,
/// keeping only intra-chunk coreference. The token unit approximates the
/// model's subword limit without binding to any tokenizer.
pub fn chunk_document(
    text: &str,
    clusters: &[Vec<Span>],
    max_tokens: usize,
) -> (Vec<CorefChunk>, ChunkStats) {
    assert!(max_tokens > 0, "chunk size must be positive");

    // Token boundaries as char offsets.
    let chars: Vec<char> = text.chars().collect();
    let mut tokens: Vec<Span> = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        tokens.push(Span::new(start, i));
    }

    if tokens.is_empty() {
        return (Vec::new(), ChunkStats::default());
    }

    let mut chunk_ranges: Vec<Span> = Vec::new();
    let mut t = 0usize;
    while t < tokens.len() {
        let last = (t + max_tokens).min(tokens.len()) - 1;
        chunk_ranges.push(Span::new(tokens[t].start, tokens[last].end));
        t = last + 1;
    }

    let mut stats = ChunkStats::default();
    let mut chunks: Vec<CorefChunk> = chunk_ranges
        .iter()
        .map(|range| CorefChunk {
            text: char_slice(text, *range),
            clusters: Vec::new(),
        })
        .collect();

    for cluster in clusters {
        // Partition the cluster's mentions by owning chunk.
        let mut per_chunk: Vec<Vec<Span>> = vec![Vec::new(); chunk_ranges.len()];
        for mention in cluster {
            let mut placed = false;
            for (ci, range) in chunk_ranges.iter().enumerate() {
                if mention.start >= range.start && mention.end <= range.end {
                    per_chunk[ci].push(Span::new(
                        mention.start - range.start,
                        mention.end - range.start,
                    ));
                    placed = true;
                    break;
                }
            }
            if !placed {
                stats.dropped_straddling += 1;
            }
        }
        for (ci, mentions) in per_chunk.into_iter().enumerate() {
            match mentions.len() {
                0 => {}
                1 => stats.dropped_singletons += 1,
                _ => {
                    stats.kept_mentions += mentions.len();
                    chunks[ci].clusters.push(mentions);
                }
            }
        }
    }

    (chunks, stats)
}
