//! Every evaluation metric the toolkit reports, plus the recall-error
//! taxonomy for relation extraction.

mod assignment;
pub mod coref;
pub mod oie;
pub mod report;
pub mod taxonomy;

pub use assignment::max_weight_assignment;
pub use coref::{b_cubed, b_cubed_counts, ceaf_phi4, ceaf_phi4_counts, muc, muc_counts, CorefScores, RatioCounts};
pub use oie::{oie_tuple_prf, token_overlap_f1, TupleMatcher};
pub use report::{EvalCounts, EvalReport, MetricValue};
pub use taxonomy::{categorize_missing_relations, ErrorTaxonomy};

use crate::grounding::Span;
use crate::triple::normalize_surface;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::collections::HashMap;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("turn counts differ: {pred} predicted vs {gold} gold")]
    TurnCountMismatch { pred: usize, gold: usize },
    #[error("aligned lists differ in length: {pred} predicted vs {gold} gold")]
    LengthMismatch { pred: usize, gold: usize },
    #[error("metric is undefined on empty input")]
    Empty,
}

/// Precision / recall / F1 with the counts they were derived from.
///
/// For count-based metrics (everything built on [`micro_prf`]) the invariants
/// `p = tp/(tp+fp)`, `r = tp/(tp+fn)` hold exactly, with 0/0 defined as 0.
/// Ratio-based metrics (MUC, B3, CEAF) store their recall numerator and the
/// precision/recall shortfalls in the count fields instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub tp: f64,
    pub fp: f64,
    #[serde(rename = "fn")]
    pub fn_: f64,
}

fn safe_div(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

impl Prf {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Self {
        let (tp, fp, fn_) = (tp as f64, fp as f64, fn_ as f64);
        let precision = safe_div(tp, tp + fp);
        let recall = safe_div(tp, tp + fn_);
        // Single-division form of 2pr/(p+r); exact where the counts are.
        let f1 = safe_div(2.0 * tp, 2.0 * tp + fp + fn_);
        Prf {
            precision,
            recall,
            f1,
            tp,
            fp,
            fn_,
        }
    }

    pub fn zero() -> Self {
        Prf::from_counts(0, 0, 0)
    }
}

/// Micro precision / recall / F1 over multisets: tp is the size of the
/// multiset intersection. This is the shared kernel under the span, relation,
/// and classification F1 metrics.
pub fn micro_prf<T: Eq + Hash>(pred: &[T], gold: &[T]) -> Prf {
    let mut gold_counts: HashMap<&T, usize> = HashMap::new();
    for item in gold {
        *gold_counts.entry(item).or_insert(0) += 1;
    }
    let mut tp = 0usize;
    for item in pred {
        if let Some(count) = gold_counts.get_mut(&item) {
            if *count > 0 {
                *count -= 1;
                tp += 1;
            }
        }
    }
    Prf::from_counts(tp, pred.len() - tp, gold.len() - tp)
}

/// Span matching mode: identification matches on the span alone,
/// classification on the (span, label) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanMatchMode {
    Identification,
    Classification,
}

/// Micro F1 over typed spans, aggregated across documents. Items are
/// (document key, span, label); the key separates same-offset spans from
/// different documents.
pub fn typed_span_prf<K: Eq + Hash + Clone>(
    pred: &[(K, Span, String)],
    gold: &[(K, Span, String)],
    mode: SpanMatchMode,
) -> Prf {
    match mode {
        SpanMatchMode::Identification => {
            let p: Vec<(K, Span)> = pred.iter().map(|(k, s, _)| (k.clone(), *s)).collect();
            let g: Vec<(K, Span)> = gold.iter().map(|(k, s, _)| (k.clone(), *s)).collect();
            micro_prf(&p, &g)
        }
        SpanMatchMode::Classification => micro_prf(pred, gold),
    }
}

/// Fraction of turns whose full slot map matches the gold state exactly
/// (after surface normalization, "not given" slots included).
pub fn joint_goal_accuracy(
    pred_states: &[BTreeMap<String, String>],
    gold_states: &[BTreeMap<String, String>],
) -> Result<f64, MetricsError> {
    if pred_states.len() != gold_states.len() {
        return Err(MetricsError::TurnCountMismatch {
            pred: pred_states.len(),
            gold: gold_states.len(),
        });
    }
    if gold_states.is_empty() {
        return Err(MetricsError::Empty);
    }
    let correct = pred_states
        .iter()
        .zip(gold_states)
        .filter(|(pred, gold)| states_match(pred, gold))
        .count();
    Ok(correct as f64 / gold_states.len() as f64)
}

fn states_match(pred: &BTreeMap<String, String>, gold: &BTreeMap<String, String>) -> bool {
    if pred.len() != gold.len() {
        return false;
    }
    gold.iter().all(|(slot, value)| {
        pred.get(slot)
            .map(|p| normalize_surface(p) == normalize_surface(value))
            .unwrap_or(false)
    })
}

/// Mean precision at one: the fraction of exact normalized matches. A `None`
/// prediction (e.g. a malformed completion) scores as incorrect.
pub fn precision_at_1(
    predictions: &[Option<String>],
    golds: &[String],
) -> Result<f64, MetricsError> {
    if predictions.len() != golds.len() {
        return Err(MetricsError::LengthMismatch {
            pred: predictions.len(),
            gold: golds.len(),
        });
    }
    if golds.is_empty() {
        return Err(MetricsError::Empty);
    }
    let correct = predictions
        .iter()
        .zip(golds)
        .filter(|(pred, gold)| {
            pred.as_deref()
                .map(|p| normalize_surface(p) == normalize_surface(gold))
                .unwrap_or(false)
        })
        .count();
    Ok(correct as f64 / golds.len() as f64)
}
