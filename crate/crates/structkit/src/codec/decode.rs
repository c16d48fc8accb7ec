//! Turning parsed triples back into task-specific predictions.

use super::CodecError;
use crate::grounding::{ground_surfaces, ground_surfaces_aligned, GroundingConfig, Span};
use crate::triple::{normalize_surface, Triple};
use std::collections::BTreeMap;

/// Removes one `[...]` augmentation bracket pair, if present.
pub fn strip_augmentation(surface: &str) -> String {
    let trimmed = surface.trim();
    if trimmed.len() >= 2 && trimmed.starts_with('[') && trimmed.ends_with(']') {
        trimmed[1..trimmed.len() - 1].to_string()
    } else {
        trimmed.to_string()
    }
}

fn clean_surface(surface: &str, augmented: bool) -> String {
    if augmented {
        normalize_surface(&strip_augmentation(surface))
    } else {
        normalize_surface(surface)
    }
}

/// Entity predictions grounded to spans, with drop accounting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntityPredictions {
    pub spans: Vec<(Span, String)>,
    /// Triples whose relation was not `instance of` or whose type label was
    /// outside the vocabulary.
    pub dropped_label: usize,
    /// Heads that could not be grounded to any remaining occurrence.
    pub dropped_surfaces: Vec<String>,
}

/// Keeps `instance of` triples whose type is in the vocabulary and grounds
/// their heads onto the text, left to right. Serves NER, JER entities, SRL
/// arguments, event triggers, and event arguments.
pub fn decode_entity_prediction(
    triples: &[Triple],
    text: &str,
    vocab: &[String],
    augmented: bool,
) -> EntityPredictions {
    let mut surfaces = Vec::new();
    let mut labels = Vec::new();
    let mut dropped_label = 0;
    for triple in triples {
        let relation = normalize_surface(&triple.relation);
        let label = normalize_surface(&triple.tail);
        if relation != "instance of" || (!vocab.is_empty() && !vocab.contains(&label)) {
            dropped_label += 1;
            continue;
        }
        surfaces.push(clean_surface(&triple.head, augmented));
        labels.push(label);
    }
    let aligned = ground_surfaces_aligned(&surfaces, text, &GroundingConfig::default());
    let mut spans = Vec::new();
    let mut dropped_surfaces = Vec::new();
    for ((surface, label), result) in surfaces.iter().zip(labels).zip(aligned) {
        match result {
            Some(g) => spans.push((g.span, label)),
            None => dropped_surfaces.push(surface.clone()),
        }
    }
    EntityPredictions {
        spans,
        dropped_label,
        dropped_surfaces,
    }
}

/// Relation predictions as surface triples, with drop accounting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RelationPredictions {
    pub relations: Vec<(String, String, String)>,
    pub dropped_label: usize,
}

/// Keeps triples whose relation is in the vocabulary, as (head, relation,
/// tail) surfaces. Exact duplicates (after normalization) collapse, since the
/// downstream metrics are set based. Serves relation classification and JER
/// relations.
pub fn decode_relation_prediction(
    triples: &[Triple],
    vocab: &[String],
    augmented: bool,
) -> RelationPredictions {
    let mut out = RelationPredictions::default();
    for triple in triples {
        let relation = normalize_surface(&triple.relation);
        if !vocab.is_empty() && !vocab.contains(&relation) {
            out.dropped_label += 1;
            continue;
        }
        let item = (
            clean_surface(&triple.head, augmented),
            relation,
            clean_surface(&triple.tail, augmented),
        );
        if !out.relations.contains(&item) {
            out.relations.push(item);
        }
    }
    out
}

/// Open information extraction tuples: identity passthrough with optional
/// first-triple trim and exact-duplicate removal.
pub fn decode_open_triples(
    triples: &[Triple],
    trim_to_first: bool,
    augmented: bool,
) -> Vec<Vec<String>> {
    let take = if trim_to_first {
        triples.len().min(1)
    } else {
        triples.len()
    };
    let mut tuples: Vec<Vec<String>> = Vec::new();
    for triple in &triples[..take] {
        let tuple = vec![
            clean_surface(&triple.head, augmented),
            clean_surface(&triple.relation, augmented),
            clean_surface(&triple.tail, augmented),
        ];
        if !tuples.contains(&tuple) {
            tuples.push(tuple);
        }
    }
    tuples
}

/// Groups `refer to` pairs into mention clusters via connected components.
///
/// Distinct surfaces are grounded once each (first text occurrence under
/// left-to-right matching) and every use of a surface resolves to that span,
/// so chains like (a,b),(b,c) close transitively into one cluster. Singleton
/// mentions are never emitted. The linearization cannot distinguish two
/// mentions that share a surface; such duplicates collapse.
pub fn decode_coref(triples: &[Triple], text: &str, augmented: bool) -> Vec<Vec<Span>> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut order: Vec<String> = Vec::new();
    for triple in triples {
        if normalize_surface(&triple.relation) != "refer to" {
            continue;
        }
        let head = clean_surface(&triple.head, augmented);
        let tail = clean_surface(&triple.tail, augmented);
        for surface in [&head, &tail] {
            if !order.contains(surface) {
                order.push(surface.clone());
            }
        }
        pairs.push((head, tail));
    }

    // Each distinct surface is grounded once; every use resolves to that span.
    let (grounded, _dropped) = ground_surfaces(&order, text, &GroundingConfig::default());
    let span_of: BTreeMap<String, Span> =
        grounded.into_iter().map(|g| (g.surface, g.span)).collect();

    // Union-find over grounded mention spans.
    let nodes: Vec<Span> = {
        let mut seen = Vec::new();
        for (head, tail) in &pairs {
            for surface in [head, tail] {
                if let Some(span) = span_of.get(surface) {
                    if !seen.contains(span) {
                        seen.push(*span);
                    }
                }
            }
        }
        seen
    };
    let index_of = |span: &Span| nodes.iter().position(|s| s == span).unwrap();
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (head, tail) in &pairs {
        if let (Some(h), Some(t)) = (span_of.get(head), span_of.get(tail)) {
            let (hi, ti) = (index_of(h), index_of(t));
            let (rh, rt) = (find(&mut parent, hi), find(&mut parent, ti));
            if rh != rt {
                parent[rh] = rt;
            }
        }
    }

    let mut clusters: BTreeMap<usize, Vec<Span>> = BTreeMap::new();
    for (i, span) in nodes.iter().enumerate() {
        clusters.entry(find(&mut parent, i)).or_default().push(*span);
    }
    clusters
        .into_values()
        .filter(|cluster| cluster.len() >= 2)
        .map(|mut cluster| {
            cluster.sort_by_key(|s| (s.start, s.end));
            cluster
        })
        .collect()
}

/// Fills the dialogue state: every slot is present, unmentioned slots default
/// to "not given", and on duplicate mentions the last one wins.
pub fn decode_dst(triples: &[Triple], slots: &[String]) -> BTreeMap<String, String> {
    let mut state: BTreeMap<String, String> = slots
        .iter()
        .map(|slot| (slot.clone(), "not given".to_string()))
        .collect();
    for triple in triples {
        if normalize_surface(&triple.head) != "[User]" {
            continue;
        }
        let slot = normalize_surface(&triple.relation);
        if let Some(value) = state.get_mut(&slot) {
            *value = normalize_surface(&triple.tail);
        }
    }
    state
}

/// The tail of the first `(intent; is; ...)` triple, if any.
pub fn decode_intent(triples: &[Triple]) -> Option<String> {
    triples
        .iter()
        .find(|t| {
            normalize_surface(&t.head) == "intent" && normalize_surface(&t.relation) == "is"
        })
        .map(|t| normalize_surface(&t.tail))
}

/// Extracts the generated object from a primed factual-probe completion.
///
/// The backend was primed with `( subject; relation;` so only the object (and
/// the closing paren) remains; backends that echo the full triple instead are
/// handled by stripping the priming prefix when it appears in the output.
pub fn decode_factual_probe(
    generated: &str,
    subject: &str,
    relation: &str,
) -> Result<String, CodecError> {
    let normalized = normalize_surface(generated);
    let priming = normalize_surface(&super::encode::factual_probe_priming(subject, relation));
    let remainder = match normalized.find(&priming) {
        Some(at) => &normalized[at + priming.len()..],
        None => normalized.as_str(),
    };
    let object = remainder
        .find(')')
        .map(|close| &remainder[..close])
        .ok_or(CodecError::MalformedCompletion)?;
    Ok(normalize_surface(object))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounding::char_slice;

    fn t(h: &str, r: &str, o: &str) -> Triple {
        Triple::new(h, r, o).unwrap()
    }

    fn vocab(labels: &[&str]) -> Vec<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn decodes_event_trigger() {
        let text = "The European Union held a summit in Brussels.";
        let preds = decode_entity_prediction(
            &[t("summit", "instance of", "meet")],
            text,
            &vocab(&["meet", "attack"]),
            false,
        );
        assert_eq!(preds.spans.len(), 1);
        assert_eq!(char_slice(text, preds.spans[0].0), "summit");
        assert_eq!(preds.spans[0].1, "meet");
        assert!(preds.dropped_surfaces.is_empty());
    }

    #[test]
    fn empty_generation_decodes_to_nothing() {
        let preds = decode_entity_prediction(&[], "text", &[], false);
        assert_eq!(preds, EntityPredictions::default());
    }

    #[test]
    fn ungroundable_head_is_dropped_and_counted() {
        let text = "The summit was held in Brussels.";
        // Brute-force substring scan confirms "Paris" is absent.
        assert!(!text.contains("Paris"));
        let preds = decode_entity_prediction(
            &[t("Paris", "instance of", "location")],
            text,
            &vocab(&["location"]),
            false,
        );
        assert!(preds.spans.is_empty());
        assert_eq!(preds.dropped_surfaces, vec!["Paris".to_string()]);
    }

    #[test]
    fn label_outside_vocabulary_is_dropped() {
        let preds = decode_entity_prediction(
            &[t("summit", "instance of", "banquet")],
            "the summit",
            &vocab(&["meet"]),
            false,
        );
        assert!(preds.spans.is_empty());
        assert_eq!(preds.dropped_label, 1);
    }

    #[test]
    fn duplicate_entity_mentions_ground_to_successive_occurrences() {
        let text = "Japan beat Syria , and Japan advanced .";
        let preds = decode_entity_prediction(
            &[
                t("Japan", "instance of", "location"),
                t("Japan", "instance of", "location"),
            ],
            text,
            &vocab(&["location"]),
            false,
        );
        assert_eq!(preds.spans.len(), 2);
        assert!(preds.spans[0].0.start < preds.spans[1].0.start);
    }

    #[test]
    fn relation_decode_keeps_vocab_matches() {
        let preds = decode_relation_prediction(
            &[t("Boott", "member of", "American Academy")],
            &vocab(&["member of", "sport"]),
            false,
        );
        assert_eq!(
            preds.relations,
            vec![(
                "Boott".to_string(),
                "member of".to_string(),
                "American Academy".to_string()
            )]
        );
        assert_eq!(preds.dropped_label, 0);
    }

    #[test]
    fn relation_outside_vocab_is_dropped() {
        let preds = decode_relation_prediction(
            &[t("a", "unknown-rel", "b")],
            &vocab(&["member of"]),
            false,
        );
        assert!(preds.relations.is_empty());
        assert_eq!(preds.dropped_label, 1);
    }

    #[test]
    fn open_triple_trim_and_dedup() {
        let triples = [t("google", "bought", "youtube"), t("x", "y", "z")];
        assert_eq!(
            decode_open_triples(&triples, true, false),
            vec![vec![
                "google".to_string(),
                "bought".to_string(),
                "youtube".to_string()
            ]]
        );

        // Dedup verified against exhaustive pairwise comparison.
        let dup = [t("a", "b", "c"), t("a", "b", "c")];
        let decoded = decode_open_triples(&dup, false, false);
        assert_eq!(decoded.len(), 1);
        for i in 0..decoded.len() {
            for j in i + 1..decoded.len() {
                assert_ne!(decoded[i], decoded[j]);
            }
        }
        assert!(decode_open_triples(&[], true, false).is_empty());
    }

    #[test]
    fn coref_pairs_form_one_cluster() {
        let text = "And deterrents don't work well when an enemy values your death more than his life.";
        let clusters = decode_coref(&[t("an enemy", "refer to", "his")], text, false);
        assert_eq!(clusters.len(), 1);
        let surfaces: Vec<String> = clusters[0]
            .iter()
            .map(|s| char_slice(text, *s))
            .collect();
        assert_eq!(surfaces, vec!["an enemy".to_string(), "his".to_string()]);
    }

    #[test]
    fn coref_transitive_closure() {
        let text = "alpha saw beta near gamma .";
        let clusters = decode_coref(
            &[t("alpha", "refer to", "beta"), t("beta", "refer to", "gamma")],
            text,
            false,
        );
        // Oracle: brute-force reachability over the pair graph.
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].len(), 3);
        assert!(decode_coref(&[], text, false).is_empty());
    }

    #[test]
    fn dst_defaults_and_last_mention_wins() {
        let slots = vocab(&[
            "taxi arrive by",
            "taxi departure",
            "taxi destination",
            "taxi leave at",
        ]);
        let state = decode_dst(&[t("[User]", "taxi leave at", "17:15")], &slots);
        assert_eq!(state.len(), 4);
        assert_eq!(state["taxi leave at"], "17:15");
        assert_eq!(state["taxi arrive by"], "not given");

        let empty = decode_dst(&[], &slots);
        assert!(empty.values().all(|v| v == "not given"));

        // Enumerate both orderings to confirm last-wins.
        let forward = decode_dst(
            &[
                t("[User]", "taxi leave at", "17:15"),
                t("[User]", "taxi leave at", "18:00"),
            ],
            &slots,
        );
        assert_eq!(forward["taxi leave at"], "18:00");
        let backward = decode_dst(
            &[
                t("[User]", "taxi leave at", "18:00"),
                t("[User]", "taxi leave at", "17:15"),
            ],
            &slots,
        );
        assert_eq!(backward["taxi leave at"], "17:15");
    }

    #[test]
    fn intent_takes_first_matching_triple() {
        assert_eq!(
            decode_intent(&[t("intent", "is", "play music")]),
            Some("play music".to_string())
        );
        assert_eq!(decode_intent(&[]), None);
        assert_eq!(
            decode_intent(&[t("x", "y", "z"), t("intent", "is", "flight and airfare")]),
            Some("flight and airfare".to_string())
        );
    }

    #[test]
    fn factual_probe_decodes_continuations_and_full_triples() {
        assert_eq!(
            decode_factual_probe(" Vienna)", "Kurt Schwertsik", "place of birth").unwrap(),
            "Vienna"
        );
        assert_eq!(
            decode_factual_probe("1941)", "Eldon Coombe", "date of birth").unwrap(),
            "1941"
        );
        assert!(matches!(
            decode_factual_probe(" Vienna", "Kurt Schwertsik", "place of birth"),
            Err(CodecError::MalformedCompletion)
        ));
        // Oracle backends echo the full gold triple; the priming is stripped.
        assert_eq!(
            decode_factual_probe(
                "( Kurt Schwertsik; place of birth; Vienna )",
                "Kurt Schwertsik",
                "place of birth"
            )
            .unwrap(),
            "Vienna"
        );
    }

    #[test]
    fn augmentation_brackets_are_stripped_before_grounding() {
        let text = "Iago lives in Tbilisi .";
        let preds = decode_entity_prediction(
            &[t("[Iago]", "instance of", "person")],
            text,
            &vocab(&["person"]),
            true,
        );
        assert_eq!(preds.spans.len(), 1);
        assert_eq!(char_slice(text, preds.spans[0].0), "Iago");

        // DST heads keep their brackets: "[User]" is a literal token.
        let state = decode_dst(&[t("[User]", "slot a", "v")], &vocab(&["slot a"]));
        assert_eq!(state["slot a"], "v");
    }

    #[test]
    fn strip_augmentation_removes_exactly_one_pair() {
        assert_eq!(strip_augmentation("[Iago]"), "Iago");
        assert_eq!(strip_augmentation("[[x]]"), "[x]");
        assert_eq!(strip_augmentation("plain"), "plain");
        assert_eq!(strip_augmentation("[open"), "[open");
    }
}
