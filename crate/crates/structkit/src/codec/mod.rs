//! Encoding native task records into prefixed text-to-triple examples and
//! decoding generated triples back into task predictions.

mod decode;
mod encode;

pub use decode::{
    decode_coref, decode_dst, decode_entity_prediction, decode_factual_probe, decode_intent,
    decode_open_triples, decode_relation_prediction, strip_augmentation, EntityPredictions,
    RelationPredictions,
};
pub use encode::{encode_record, expand_multi_predicate, factual_probe_priming, rc_priming};

use crate::grounding::{GroundingError, Span};
use crate::record::{PredictionUnit, TaskKind};
use crate::triple::TripleError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("no registered template for dataset `{dataset}` under task {task:?}")]
    UnknownDataset { task: TaskKind, dataset: String },
    #[error(transparent)]
    SpanOutOfRange(#[from] GroundingError),
    #[error("record has no predicate to expand")]
    NoPredicate,
    #[error("invalid record: {reason}")]
    InvalidRecord { reason: String },
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error("completion has no closing parenthesis")]
    MalformedCompletion,
}

/// How records are encoded: task-agnostic zero-shot prefixes, or multi-task
/// dataset tags with optional `[]` entity augmentation in the gold output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum EncodeMode {
    ZeroShot,
    MultiTask {
        #[serde(default)]
        augment: bool,
    },
}

impl EncodeMode {
    pub fn multi_task() -> Self {
        EncodeMode::MultiTask { augment: false }
    }

    pub fn augmented(&self) -> bool {
        matches!(self, EncodeMode::MultiTask { augment: true })
    }
}

/// Everything a decoder needs to turn raw output back into task predictions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodeHints {
    /// The downstream task, absent for pretraining-corpus examples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskKind>,
    pub dataset: String,
    pub unit: PredictionUnit,
    pub mode: EncodeMode,
    /// Label vocabulary for this unit (entity types or relation labels).
    /// Empty means open vocabulary.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub label_vocab: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slot_list: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_span: Option<Span>,
    /// The original (unmarked) source text, used for span grounding.
    pub source_text: String,
}

/// A prefixed input together with its linearized gold output and decode hints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodedExample {
    /// Content hash of (dataset, record index, sub index, unit), so
    /// generations produced out-of-band can be re-joined safely.
    pub id: String,
    pub input: String,
    pub gold_output: String,
    pub hints: DecodeHints,
}

/// Stable content id for an encoded example.
pub fn example_id(dataset: &str, record_index: usize, sub_index: usize, unit: PredictionUnit) -> String {
    let mut hasher = Sha256::new();
    hasher.update(dataset.as_bytes());
    hasher.update([0x1f]);
    hasher.update(record_index.to_le_bytes());
    hasher.update([0x1f]);
    hasher.update(sub_index.to_le_bytes());
    hasher.update([0x1f]);
    hasher.update(unit.to_string().as_bytes());
    let digest = hasher.finalize();
    let mut id = String::with_capacity(16);
    for byte in digest.iter().take(8) {
        id.push_str(&format!("{byte:02x}"));
    }
    id
}

/// Splits `prefix: rest` at the first separator, returning (prefix, rest).
/// The prefix law: every encoded input starts with exactly one prefix.
pub fn split_prefix(input: &str) -> Option<(&str, &str)> {
    let idx = input.find(':')?;
    let rest = &input[idx + 1..];
    Some((&input[..idx], rest.strip_prefix(' ').unwrap_or(rest)))
}
