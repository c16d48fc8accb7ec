//! Data-driven dataset registry: multi-task tags, label vocabularies, and
//! dialogue slot lists. New datasets register at runtime or from a JSON file,
//! no code changes needed.

use crate::record::TaskKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("dataset `{dataset}` for task {task:?} is already registered")]
    Duplicate { task: TaskKind, dataset: String },
    #[error("failed to read registry file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse registry file {path}: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
}

/// Everything the codec needs to know about one dataset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetEntry {
    pub task: TaskKind,
    pub dataset: String,
    /// Multi-task prefix tag without the trailing separator, e.g. `ner conll03`.
    pub tag: String,
    /// Entity type / argument role / trigger type vocabulary. Empty = open.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entity_labels: Vec<String>,
    /// Relation label vocabulary. Empty = open.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relation_labels: Vec<String>,
    /// Dialogue state slot vocabulary.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slots: Vec<String>,
}

impl DatasetEntry {
    fn new(task: TaskKind, dataset: &str, tag: &str) -> Self {
        DatasetEntry {
            task,
            dataset: dataset.to_string(),
            tag: tag.to_string(),
            entity_labels: Vec::new(),
            relation_labels: Vec::new(),
            slots: Vec::new(),
        }
    }

    fn entities(mut self, labels: &[&str]) -> Self {
        self.entity_labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    fn relations(mut self, labels: &[&str]) -> Self {
        self.relation_labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    fn with_slots(mut self, slots: &[&str]) -> Self {
        self.slots = slots.iter().map(|s| s.to_string()).collect();
        self
    }
}

/// Immutable-after-load lookup table keyed by (task, dataset id).
#[derive(Debug, Clone, Default)]
pub struct DatasetRegistry {
    entries: BTreeMap<(TaskKind, String), DatasetEntry>,
}

impl DatasetRegistry {
    pub fn empty() -> Self {
        DatasetRegistry::default()
    }

    /// Registry preloaded with the 28 evaluation datasets. Label vocabularies
    /// carry the canonical type names where the sources define them; the rest
    /// are representative subsets that registry files can extend.
    pub fn builtin() -> Self {
        let mut registry = DatasetRegistry::empty();
        for entry in builtin_entries() {
            registry
                .register(entry)
                .expect("builtin registry has no duplicates");
        }
        registry
    }

    pub fn register(&mut self, entry: DatasetEntry) -> Result<(), RegistryError> {
        let key = (entry.task, entry.dataset.clone());
        if self.entries.contains_key(&key) {
            return Err(RegistryError::Duplicate {
                task: entry.task,
                dataset: entry.dataset,
            });
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    /// Loads extra entries from a JSON array file, on top of `self`.
    pub fn load_file(&mut self, path: &Path) -> Result<usize, RegistryError> {
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let entries: Vec<DatasetEntry> =
            serde_json::from_str(&text).map_err(|source| RegistryError::Parse {
                path: path.display().to_string(),
                source,
            })?;
        let count = entries.len();
        for entry in entries {
            self.register(entry)?;
        }
        Ok(count)
    }

    pub fn get(&self, task: TaskKind, dataset: &str) -> Option<&DatasetEntry> {
        self.entries.get(&(task, dataset.to_string()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &DatasetEntry> {
        self.entries.values()
    }
}

fn builtin_entries() -> Vec<DatasetEntry> {
    use TaskKind::*;
    let conll05_roles: &[&str] = &[
        "verb",
        "first argument",
        "second argument",
        "third argument",
        "fourth argument",
        "modal",
        "negation",
    ];
    let ace_entities: &[&str] = &[
        "human",
        "organization",
        "geographical entity",
        "location",
        "facility",
        "weapon",
        "vehicle",
    ];
    vec![
        DatasetEntry::new(Oie, "oie2016", "oie oie2016"),
        DatasetEntry::new(Oie, "web", "oie web"),
        DatasetEntry::new(Oie, "nyt", "oie nyt"),
        DatasetEntry::new(Oie, "penn", "oie penn"),
        DatasetEntry::new(RelationClassification, "tacred", "rc tacred").relations(&[
            "employee of",
            "member of",
            "founded by",
            "organization based in",
            "schools attended",
            "spouse",
            "title",
            "lives in",
        ]),
        DatasetEntry::new(RelationClassification, "fewrel", "rc fewrel").relations(&[
            "member of",
            "sport",
            "instance of",
            "capital of",
            "director",
            "performer",
            "developer",
            "country",
        ]),
        DatasetEntry::new(FactualProbe, "google-re", "fp google-re").relations(&[
            "place of birth",
            "place of death",
            "date of birth",
        ]),
        DatasetEntry::new(FactualProbe, "t-rex", "fp t-rex").relations(&[
            "place of birth",
            "capital of",
            "member of",
            "official language",
            "named after",
            "original language",
            "owned by",
            "instance of",
        ]),
        DatasetEntry::new(JointEntityRelation, "conll04", "jer conll04")
            .entities(&["location", "organization", "person", "other"])
            .relations(&[
                "work for",
                "kill",
                "organization based in",
                "live in",
                "located in",
            ]),
        DatasetEntry::new(JointEntityRelation, "ade", "jer ade")
            .entities(&["disease", "drug"])
            .relations(&["effect"]),
        DatasetEntry::new(JointEntityRelation, "nyt", "jer nyt")
            .entities(&["organization", "human", "location"])
            .relations(&[
                "company",
                "place of birth",
                "nationality",
                "place lived",
                "location contains",
                "neighborhood of",
            ]),
        DatasetEntry::new(JointEntityRelation, "ace2005", "jer ace2005")
            .entities(ace_entities)
            .relations(&[
                "part of",
                "located in",
                "work for",
                "agent of",
                "social",
                "near",
            ]),
        DatasetEntry::new(EventTrigger, "ace2005", "ee ace2005 trg").entities(&[
            "meet",
            "attack",
            "die",
            "transport",
            "elect",
            "marry",
            "injure",
            "transfer ownership",
            "transfer money",
            "start position",
            "end position",
            "arrest jail",
            "demonstrate",
            "phone write",
            "start organization",
            "end organization",
            "declare bankruptcy",
            "merge organization",
            "convict",
            "charge indict",
            "sue",
            "trial hearing",
            "sentence",
            "fine",
            "execute",
            "extradite",
            "acquit",
            "appeal",
            "pardon",
            "release parole",
            "be born",
            "divorce",
            "nominate",
        ]),
        DatasetEntry::new(EventArgument, "ace2005", "ee ace2005 arg").entities(&[
            "place",
            "time",
            "attacker",
            "target",
            "victim",
            "agent",
            "person",
            "entity",
            "instrument",
            "artifact",
            "origin",
            "destination",
            "buyer",
            "seller",
            "giver",
            "recipient",
            "money",
            "organization",
            "position",
            "crime",
            "sentence",
            "plaintiff",
            "defendant",
            "adjudicator",
            "prosecutor",
            "beneficiary",
            "vehicle",
            "price",
        ]),
        DatasetEntry::new(Coreference, "conll12", "cr conll12"),
        DatasetEntry::new(IntentDetection, "atis", "id atis").entities(&[
            "flight",
            "airfare",
            "flight and airfare",
            "ground service",
            "airline",
            "abbreviation",
            "aircraft",
            "flight time",
            "quantity",
            "distance",
            "city",
            "airport",
            "ground fare",
            "capacity",
            "flight number",
            "meal",
            "restriction",
        ]),
        DatasetEntry::new(IntentDetection, "snips", "id snips").entities(&[
            "play music",
            "add to playlist",
            "rate book",
            "search screening event",
            "book restaurant",
            "get weather",
            "search creative work",
        ]),
        DatasetEntry::new(Srl, "conll05", "srl conll05").entities(conll05_roles),
        DatasetEntry::new(Srl, "conll12", "srl conll12").entities(&[
            "verb",
            "first argument",
            "second argument",
            "third argument",
            "fourth argument",
            "modal",
            "negation",
            "location",
            "temporal",
            "manner",
            "cause",
            "purpose",
            "direction",
            "extent",
            "discourse",
            "adverbial",
        ]),
        DatasetEntry::new(Ner, "conll03", "ner conll03").entities(&[
            "location",
            "organization",
            "person",
            "miscellaneous",
        ]),
        DatasetEntry::new(Ner, "ontonotes", "ner ontonotes").entities(&[
            "person",
            "organization",
            "country city state",
            "location",
            "date",
            "time",
            "money",
            "percent",
            "facility",
            "event",
            "product",
            "law",
            "language",
            "work of art",
            "quantity",
            "ordinal",
            "cardinal",
            "nationality religious political group",
        ]),
        DatasetEntry::new(Ner, "genia", "ner genia").entities(&[
            "DNA",
            "RNA",
            "cell line",
            "cell type",
            "protein",
        ]),
        DatasetEntry::new(Ner, "ace2005", "ner ace2005").entities(ace_entities),
        DatasetEntry::new(DialogueStateTracking, "multiwoz", "dst multiwoz").with_slots(&[
            "attraction area",
            "attraction name",
            "attraction type",
            "hotel area",
            "hotel book day",
            "hotel book people",
            "hotel book stay",
            "hotel internet",
            "hotel name",
            "hotel parking",
            "hotel price range",
            "hotel stars",
            "hotel type",
            "restaurant area",
            "restaurant book day",
            "restaurant book people",
            "restaurant book time",
            "restaurant food",
            "restaurant name",
            "restaurant price range",
            "taxi arrive by",
            "taxi departure",
            "taxi destination",
            "taxi leave at",
            "train arrive by",
            "train book people",
            "train day",
            "train departure",
            "train destination",
            "train leave at",
        ]),
    ]
}
