//! Coreference metrics: MUC, B3, and CEAF with the phi4 similarity.
//!
//! Each metric exposes a `_counts` variant returning per-document numerators
//! and denominators; corpus scores come from summing those and dividing once,
//! which is how the reference scorer aggregates documents.

use super::assignment::max_weight_assignment;
use super::{safe_div, Prf};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Add;

/// Numerators and denominators for a ratio-based precision/recall pair.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RatioCounts {
    pub precision_num: f64,
    pub precision_den: f64,
    pub recall_num: f64,
    pub recall_den: f64,
}

impl RatioCounts {
    pub fn to_prf(self) -> Prf {
        let precision = safe_div(self.precision_num, self.precision_den);
        let recall = safe_div(self.recall_num, self.recall_den);
        // 2PR/(P+R) with a single rounding division: multiply through by the
        // denominators so rational inputs give exact rational output.
        let f1_den = self.precision_num * self.recall_den + self.recall_num * self.precision_den;
        let f1 = if precision + recall > 0.0 {
            safe_div(2.0 * self.precision_num * self.recall_num, f1_den)
        } else {
            0.0
        };
        Prf {
            precision,
            recall,
            f1,
            tp: self.recall_num,
            fp: self.precision_den - self.precision_num,
            fn_: self.recall_den - self.recall_num,
        }
    }
}

impl Add for RatioCounts {
    type Output = RatioCounts;
    fn add(self, other: RatioCounts) -> RatioCounts {
        RatioCounts {
            precision_num: self.precision_num + other.precision_num,
            precision_den: self.precision_den + other.precision_den,
            recall_num: self.recall_num + other.recall_num,
            recall_den: self.recall_den + other.recall_den,
        }
    }
}

/// The three coreference scores plus their arithmetic mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorefScores {
    pub muc: Prf,
    pub b_cubed: Prf,
    pub ceaf_phi4: Prf,
    pub avg_f1: f64,
}

impl CorefScores {
    pub fn from_prfs(muc: Prf, b_cubed: Prf, ceaf_phi4: Prf) -> Self {
        CorefScores {
            muc,
            b_cubed,
            ceaf_phi4,
            avg_f1: (muc.f1 + b_cubed.f1 + ceaf_phi4.f1) / 3.0,
        }
    }
}

fn cluster_index<T: Eq + Hash + Clone>(clusters: &[Vec<T>]) -> HashMap<T, usize> {
    let mut index = HashMap::new();
    for (i, cluster) in clusters.iter().enumerate() {
        for mention in cluster {
            index.insert(mention.clone(), i);
        }
    }
    index
}

/// MUC recall numerator for one side: sum over key clusters of
/// (cluster size - number of partitions induced by the response).
/// Mentions absent from the response partition as singletons.
fn muc_side<T: Eq + Hash + Clone>(key: &[Vec<T>], response: &[Vec<T>]) -> (f64, f64) {
    let response_index = cluster_index(response);
    let mut num = 0.0;
    let mut den = 0.0;
    for cluster in key {
        if cluster.is_empty() {
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        let mut partitions = 0usize;
        for mention in cluster {
            match response_index.get(mention) {
                Some(idx) => {
                    if seen.insert(*idx) {
                        partitions += 1;
                    }
                }
                None => partitions += 1, // twinless mention: its own partition
            }
        }
        num += (cluster.len() - partitions) as f64;
        den += (cluster.len() - 1) as f64;
    }
    (num, den)
}

pub fn muc_counts<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> RatioCounts {
    let (recall_num, recall_den) = muc_side(gold, pred);
    let (precision_num, precision_den) = muc_side(pred, gold);
    RatioCounts {
        precision_num,
        precision_den,
        recall_num,
        recall_den,
    }
}

/// Link-based MUC score.
pub fn muc<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> Prf {
    muc_counts(pred, gold).to_prf()
}

fn b_cubed_side<T: Eq + Hash + Clone>(key: &[Vec<T>], response: &[Vec<T>]) -> (f64, f64) {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in key {
        if k.is_empty() {
            continue;
        }
        for r in response {
            let overlap = k.iter().filter(|m| r.contains(m)).count() as f64;
            num += overlap * overlap / k.len() as f64;
        }
        den += k.len() as f64;
    }
    (num, den)
}

pub fn b_cubed_counts<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> RatioCounts {
    let (recall_num, recall_den) = b_cubed_side(gold, pred);
    let (precision_num, precision_den) = b_cubed_side(pred, gold);
    RatioCounts {
        precision_num,
        precision_den,
        recall_num,
        recall_den,
    }
}

/// Mention-based B3 score.
pub fn b_cubed<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> Prf {
    b_cubed_counts(pred, gold).to_prf()
}

fn phi4(a_len: usize, b_len: usize, overlap: usize) -> f64 {
    if a_len + b_len == 0 {
        0.0
    } else {
        2.0 * overlap as f64 / (a_len + b_len) as f64
    }
}

pub fn ceaf_phi4_counts<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> RatioCounts {
    let weights: Vec<Vec<f64>> = pred
        .iter()
        .map(|p| {
            gold.iter()
                .map(|g| {
                    let overlap = p.iter().filter(|m| g.contains(m)).count();
                    phi4(p.len(), g.len(), overlap)
                })
                .collect()
        })
        .collect();
    let total = if pred.is_empty() || gold.is_empty() {
        0.0
    } else {
        max_weight_assignment(&weights).0
    };
    RatioCounts {
        precision_num: total,
        precision_den: pred.len() as f64,
        recall_num: total,
        recall_den: gold.len() as f64,
    }
}

/// Entity-based CEAF under the phi4 similarity, with the cluster alignment
/// solved exactly (the metric is defined by the optimal one-to-one map).
pub fn ceaf_phi4<T: Eq + Hash + Clone>(pred: &[Vec<T>], gold: &[Vec<T>]) -> Prf {
    ceaf_phi4_counts(pred, gold).to_prf()
}
