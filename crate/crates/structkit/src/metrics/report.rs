//! The JSON evaluation report: metric values, drop accounting, and the
//! configuration fingerprint that makes numbers interpretable.

use super::taxonomy::ErrorTaxonomy;
use super::Prf;
use crate::record::TaskKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A named metric value: either a full PRF block or a scalar (joint accuracy,
/// P@1, average F1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricValue {
    Prf(Prf),
    Scalar(f64),
}

impl MetricValue {
    pub fn headline(&self) -> f64 {
        match self {
            MetricValue::Prf(prf) => prf.f1,
            MetricValue::Scalar(v) => *v,
        }
    }

    pub fn as_prf(&self) -> Option<&Prf> {
        match self {
            MetricValue::Prf(prf) => Some(prf),
            MetricValue::Scalar(_) => None,
        }
    }
}

/// Volume and drop accounting across one evaluated dataset.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounts {
    pub examples: usize,
    pub parsed_triples: usize,
    /// Malformed output fragments the parser had to skip.
    pub skipped_fragments: usize,
    /// Groups salvaged by the arity heuristic.
    pub recovered_triples: usize,
    /// Predictions dropped because their label had no schema mapping.
    pub dropped_unmapped_label: usize,
    /// Predictions dropped because their label was outside the vocabulary.
    pub dropped_out_of_vocab: usize,
    /// Entity surfaces that could not be grounded to a span.
    pub dropped_ungrounded: usize,
}

/// Per-dataset evaluation output, serialized as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub task: TaskKind,
    pub dataset: String,
    /// Hash of every setting that influenced the numbers (matcher, decode
    /// configs, alignment), so reports are comparable.
    pub config_fingerprint: String,
    pub metrics: BTreeMap<String, MetricValue>,
    pub counts: EvalCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taxonomy: Option<ErrorTaxonomy>,
}

impl EvalReport {
    pub fn metric(&self, name: &str) -> Option<&MetricValue> {
        self.metrics.get(name)
    }
}
