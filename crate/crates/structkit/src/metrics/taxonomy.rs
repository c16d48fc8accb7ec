//! Recall-error taxonomy for relation extraction: every missing gold relation
//! triple is assigned to exactly one category.

use super::oie::token_overlap_f1;
use serde::{Deserialize, Serialize};
use std::ops::Add;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorTaxonomy {
    /// Same relation, one entity close to a prediction's (token overlap >= 0.5),
    /// e.g. predicting "Alaska" where the gold tail is "Fairbanks".
    pub close_entity: usize,
    /// No related prediction at all.
    pub totally_missing: usize,
    /// Both entities predicted, but with a different relation label.
    pub wrong_relation: usize,
    /// The relation label was predicted, but about different entities.
    pub different_focus: usize,
}

impl ErrorTaxonomy {
    pub fn total(&self) -> usize {
        self.close_entity + self.totally_missing + self.wrong_relation + self.different_focus
    }
}

impl Add for ErrorTaxonomy {
    type Output = ErrorTaxonomy;
    fn add(self, other: ErrorTaxonomy) -> ErrorTaxonomy {
        ErrorTaxonomy {
            close_entity: self.close_entity + other.close_entity,
            totally_missing: self.totally_missing + other.totally_missing,
            wrong_relation: self.wrong_relation + other.wrong_relation,
            different_focus: self.different_focus + other.different_focus,
        }
    }
}

const CLOSE_ENTITY_THRESHOLD: f64 = 0.5;

/// Assigns each missing gold relation triple to one category, checked in
/// precedence order: CloseEntity, WrongRelation, DifferentFocus, then
/// TotallyMissing. Surfaces are expected pre-normalized (as the decoders
/// produce them).
pub fn categorize_missing_relations(
    missing: &[(String, String, String)],
    predicted: &[(String, String, String)],
) -> ErrorTaxonomy {
    let mut taxonomy = ErrorTaxonomy::default();
    for (gold_head, gold_rel, gold_tail) in missing {
        let close_entity = predicted.iter().any(|(h, r, t)| {
            r == gold_rel
                && (token_overlap_f1(h, gold_head) >= CLOSE_ENTITY_THRESHOLD
                    || token_overlap_f1(t, gold_tail) >= CLOSE_ENTITY_THRESHOLD)
        });
        if close_entity {
            taxonomy.close_entity += 1;
            continue;
        }
        let wrong_relation = predicted
            .iter()
            .any(|(h, r, t)| r != gold_rel && h == gold_head && t == gold_tail);
        if wrong_relation {
            taxonomy.wrong_relation += 1;
            continue;
        }
        let different_focus = predicted.iter().any(|(_, r, _)| r == gold_rel);
        if different_focus {
            taxonomy.different_focus += 1;
            continue;
        }
        taxonomy.totally_missing += 1;
    }
    taxonomy
}
