//! Open information extraction tuple scoring: greedy bipartite matching under
//! a pluggable tuple matcher.

use super::{micro_prf, Prf};
use crate::triple::normalize_surface;
use serde::{Deserialize, Serialize};

/// Token-overlap F1 between two argument strings (multiset token counts,
/// whitespace tokenization after surface normalization).
pub fn token_overlap_f1(a: &str, b: &str) -> f64 {
    let ta: Vec<String> = normalize_surface(a)
        .split_whitespace()
        .map(|t| t.to_string())
        .collect();
    let tb: Vec<String> = normalize_surface(b)
        .split_whitespace()
        .map(|t| t.to_string())
        .collect();
    micro_prf(&ta, &tb).f1
}

/// How a predicted tuple is matched against a gold tuple. The benchmark
/// leaves this choice open, so it is pluggable and recorded in every report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "matcher", rename_all = "snake_case")]
pub enum TupleMatcher {
    /// Same arity and token-overlap F1 at or above the threshold on every slot.
    TokenOverlap { threshold: f64 },
    /// Same arity and normalized string equality on every slot.
    Exact,
}

impl Default for TupleMatcher {
    fn default() -> Self {
        TupleMatcher::TokenOverlap { threshold: 0.5 }
    }
}

impl TupleMatcher {
    /// Match score in [0, 1], or None if the pair does not match.
    pub fn score(&self, pred: &[String], gold: &[String]) -> Option<f64> {
        if pred.len() != gold.len() || pred.is_empty() {
            return None;
        }
        match self {
            TupleMatcher::TokenOverlap { threshold } => {
                let mut total = 0.0;
                for (p, g) in pred.iter().zip(gold) {
                    let f1 = token_overlap_f1(p, g);
                    if f1 < *threshold {
                        return None;
                    }
                    total += f1;
                }
                Some(total / pred.len() as f64)
            }
            TupleMatcher::Exact => {
                let equal = pred
                    .iter()
                    .zip(gold)
                    .all(|(p, g)| normalize_surface(p) == normalize_surface(g));
                equal.then_some(1.0)
            }
        }
    }
}

/// Greedy one-to-one matching of predicted tuples to gold tuples within one
/// sentence: candidate pairs are taken best-score-first, then micro PRF over
/// the matched pairs.
pub fn oie_tuple_prf(
    pred: &[Vec<String>],
    gold: &[Vec<String>],
    matcher: &TupleMatcher,
) -> Prf {
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (pi, p) in pred.iter().enumerate() {
        for (gi, g) in gold.iter().enumerate() {
            if let Some(score) = matcher.score(p, g) {
                candidates.push((score, pi, gi));
            }
        }
    }
    candidates.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let mut pred_used = vec![false; pred.len()];
    let mut gold_used = vec![false; gold.len()];
    let mut tp = 0usize;
    for (_, pi, gi) in candidates {
        if !pred_used[pi] && !gold_used[gi] {
            pred_used[pi] = true;
            gold_used[gi] = true;
            tp += 1;
        }
    }
    Prf::from_counts(tp, pred.len() - tp, gold.len() - tp)
}
