//! End-to-end scoring: joins encoded examples with generations, decodes per
//! task, and assembles the metric report.

use crate::align::{apply_alignment, SchemaAlignment};
use crate::backend::{default_decode_config, priming_for, DecodeConfig, TRUE_FALSE_PROMPT_VERSION};
use crate::codec::{
    decode_coref, decode_dst, decode_entity_prediction, decode_factual_probe, decode_intent,
    decode_open_triples, decode_relation_prediction, EncodeMode, EncodedExample,
};
use crate::grounding::Span;
use crate::metrics::{
    b_cubed_counts, categorize_missing_relations, ceaf_phi4_counts, joint_goal_accuracy,
    micro_prf, muc_counts, precision_at_1, typed_span_prf, EvalCounts, EvalReport, MetricValue,
    MetricsError, Prf, RatioCounts, SpanMatchMode, TupleMatcher,
};
use crate::record::{PredictionUnit, TaskKind};
use crate::triple::{normalize_surface, parse_triples, Triple};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("generation/example id mismatch: {detail}")]
    IdMismatch { detail: String },
    #[error("evaluation needs at least one example")]
    Empty,
    #[error("examples span more than one dataset: {first} and {second}")]
    MixedDataset { first: String, second: String },
    #[error("example `{id}` carries no task hint")]
    MissingTask { id: String },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// One example joined with the raw text its backend generated.
#[derive(Debug, Clone)]
pub struct EvalInput {
    pub example: EncodedExample,
    pub generation: String,
}

/// Settings that influence the numbers; hashed into the report fingerprint.
#[derive(Debug, Clone, Default)]
pub struct EvalConfig {
    pub oie_matcher: TupleMatcher,
    pub alignment: Option<SchemaAlignment>,
    /// Overrides the per-dataset decode defaults when set.
    pub decode_config: Option<DecodeConfig>,
}

/// Joins generations to examples by id. Every example must have exactly one
/// generation and every generation must correspond to an example.
pub fn join_generations(
    examples: Vec<EncodedExample>,
    generations: &HashMap<String, String>,
) -> Result<Vec<EvalInput>, EvalError> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for example in &examples {
        *seen.entry(example.id.as_str()).or_insert(0) += 1;
    }
    for id in generations.keys() {
        if !seen.contains_key(id.as_str()) {
            return Err(EvalError::IdMismatch {
                detail: format!("generation id `{id}` matches no encoded example"),
            });
        }
    }
    examples
        .into_iter()
        .map(|example| {
            let generation =
                generations
                    .get(&example.id)
                    .cloned()
                    .ok_or_else(|| EvalError::IdMismatch {
                        detail: format!("example `{}` has no generation", example.id),
                    })?;
            Ok(EvalInput {
                example,
                generation,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct FingerprintView<'a> {
    oie_matcher: &'a TupleMatcher,
    decode_config: &'a Option<DecodeConfig>,
    alignment: &'a Option<SchemaAlignment>,
    prompt_version: &'a str,
}

fn fingerprint(config: &EvalConfig) -> String {
    let view = FingerprintView {
        oie_matcher: &config.oie_matcher,
        decode_config: &config.decode_config,
        alignment: &config.alignment,
        prompt_version: TRUE_FALSE_PROMPT_VERSION,
    };
    let json = serde_json::to_string(&view).expect("fingerprint view serializes");
    let digest = Sha256::digest(json.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Effective decode settings for one example: the override, the default
/// table, or a task-shape fallback for unregistered (e.g. synthetic) datasets.
fn decode_config_for(input: &EvalInput, config: &EvalConfig, task: TaskKind) -> DecodeConfig {
    if let Some(cfg) = config.decode_config {
        return cfg;
    }
    default_decode_config(task, input.example.hints.unit, &input.example.hints.dataset)
        .unwrap_or(DecodeConfig {
            length_penalty: 0.8,
            min_target_length: 0,
            max_target_length: 512,
            trim_to_first_triple: matches!(
                task,
                TaskKind::RelationClassification
                    | TaskKind::IntentDetection
                    | TaskKind::FactualProbe
            ),
        })
}

struct ParsedSides {
    pred: Vec<Triple>,
    gold: Vec<Triple>,
}

/// Parses both sides of one input, applying continuation priming and the
/// schema alignment (prediction side only) where applicable.
fn parse_sides(input: &EvalInput, config: &EvalConfig, counts: &mut EvalCounts) -> ParsedSides {
    let raw = match priming_for(&input.example) {
        Some(priming) => format!("{priming}{}", input.generation),
        None => input.generation.clone(),
    };
    let (mut pred, diags) = parse_triples(&raw);
    counts.parsed_triples += pred.len();
    counts.skipped_fragments += diags.skipped_count();
    counts.recovered_triples += diags.recovered_count;

    let task = input.example.hints.task;
    let alignable = matches!(
        task,
        Some(
            TaskKind::Ner
                | TaskKind::Srl
                | TaskKind::EventTrigger
                | TaskKind::EventArgument
                | TaskKind::JointEntityRelation
                | TaskKind::RelationClassification
        )
    );
    if alignable {
        if let Some(alignment) = &config.alignment {
            let mut mapped = Vec::with_capacity(pred.len());
            for triple in pred {
                match apply_alignment(&triple, alignment) {
                    Some(t) => mapped.push(t),
                    None => counts.dropped_unmapped_label += 1,
                }
            }
            pred = mapped;
        }
    }

    let (gold, _) = parse_triples(&input.example.gold_output);
    ParsedSides { pred, gold }
}

type SpanItem = (String, Span, String);

#[derive(Default)]
struct Accumulator {
    pred_spans: Vec<SpanItem>,
    gold_spans: Vec<SpanItem>,
    pred_relations: Vec<(String, String, String, String)>,
    gold_relations: Vec<(String, String, String, String)>,
    rc_pred: Vec<(String, String)>,
    rc_gold: Vec<(String, String)>,
    oie: (usize, usize, usize),
    coref_muc: RatioCounts,
    coref_b3: RatioCounts,
    coref_ceaf: RatioCounts,
    dst_pred: Vec<BTreeMap<String, String>>,
    dst_gold: Vec<BTreeMap<String, String>>,
    intent_pred: Vec<(String, String)>,
    intent_gold: Vec<(String, String)>,
    fp_pred: Vec<Option<String>>,
    fp_gold: Vec<String>,
    taxonomy: crate::metrics::ErrorTaxonomy,
}

/// Evaluates one dataset's examples against their generations.
pub fn evaluate_dataset(
    inputs: &[EvalInput],
    config: &EvalConfig,
) -> Result<EvalReport, EvalError> {
    let first = inputs.first().ok_or(EvalError::Empty)?;
    let task = first
        .example
        .hints
        .task
        .ok_or_else(|| EvalError::MissingTask {
            id: first.example.id.clone(),
        })?;
    let dataset = first.example.hints.dataset.clone();
    for input in inputs {
        if input.example.hints.dataset != dataset {
            return Err(EvalError::MixedDataset {
                first: dataset,
                second: input.example.hints.dataset.clone(),
            });
        }
    }

    let mut counts = EvalCounts {
        examples: inputs.len(),
        ..EvalCounts::default()
    };
    let mut acc = Accumulator::default();

    for input in inputs {
        let example = &input.example;
        let augmented = example.hints.mode.augmented();
        let decode_config = decode_config_for(input, config, task);
        let key = example.id.clone();

        match (task, example.hints.unit) {
            // Factual probing never goes through the triple parser: the
            // completion is primed and read up to the closing paren.
            (TaskKind::FactualProbe, _) => {
                let (gold_triples, _) = parse_triples(&example.gold_output);
                let Some(gold) = gold_triples.first() else {
                    continue;
                };
                acc.fp_gold.push(normalize_surface(&gold.tail));
                acc.fp_pred.push(
                    decode_factual_probe(&input.generation, &gold.head, &gold.relation).ok(),
                );
            }
            (TaskKind::Oie, _) => {
                let sides = parse_sides(input, config, &mut counts);
                let pred = decode_open_triples(
                    &sides.pred,
                    decode_config.trim_to_first_triple,
                    augmented,
                );
                let gold = decode_open_triples(&sides.gold, false, augmented);
                let prf = crate::metrics::oie_tuple_prf(&pred, &gold, &config.oie_matcher);
                acc.oie.0 += prf.tp as usize;
                acc.oie.1 += prf.fp as usize;
                acc.oie.2 += prf.fn_ as usize;
            }
            (TaskKind::Coreference, _) => {
                let sides = parse_sides(input, config, &mut counts);
                let text = &example.hints.source_text;
                let pred = decode_coref(&sides.pred, text, augmented);
                let gold = decode_coref(&sides.gold, text, augmented);
                acc.coref_muc = acc.coref_muc + muc_counts(&pred, &gold);
                acc.coref_b3 = acc.coref_b3 + b_cubed_counts(&pred, &gold);
                acc.coref_ceaf = acc.coref_ceaf + ceaf_phi4_counts(&pred, &gold);
            }
            (TaskKind::DialogueStateTracking, _) => {
                let sides = parse_sides(input, config, &mut counts);
                let slots = &example.hints.slot_list;
                acc.dst_pred.push(decode_dst(&sides.pred, slots));
                acc.dst_gold.push(decode_dst(&sides.gold, slots));
            }
            (TaskKind::IntentDetection, _) => {
                let sides = parse_sides(input, config, &mut counts);
                if let Some(label) = decode_intent(&sides.pred) {
                    acc.intent_pred.push((key.clone(), label));
                }
                if let Some(label) = decode_intent(&sides.gold) {
                    acc.intent_gold.push((key.clone(), label));
                }
            }
            (TaskKind::RelationClassification, _) => {
                let sides = parse_sides(input, config, &mut counts);
                let zero_shot = example.hints.mode == EncodeMode::ZeroShot;
                let vocab = &example.hints.label_vocab;
                let pred = decode_relation_prediction(&sides.pred, vocab, augmented);
                counts.dropped_out_of_vocab += pred.dropped_label;
                let gold = decode_relation_prediction(&sides.gold, vocab, augmented);
                // Output trimmed to the first triple; in zero-shot mode the
                // tail entity must match too.
                let to_item = |rels: &[(String, String, String)]| -> Option<(String, String)> {
                    rels.first().map(|(_, rel, tail)| {
                        if zero_shot {
                            (key.clone(), format!("{rel}\u{1f}{tail}"))
                        } else {
                            (key.clone(), rel.clone())
                        }
                    })
                };
                if let Some(item) = to_item(&pred.relations) {
                    acc.rc_pred.push(item);
                }
                if let Some(item) = to_item(&gold.relations) {
                    acc.rc_gold.push(item);
                }
            }
            (TaskKind::JointEntityRelation, PredictionUnit::Relation) => {
                let sides = parse_sides(input, config, &mut counts);
                let vocab = &example.hints.label_vocab;
                let pred = decode_relation_prediction(&sides.pred, vocab, augmented);
                counts.dropped_out_of_vocab += pred.dropped_label;
                let gold = decode_relation_prediction(&sides.gold, vocab, augmented);
                let missing: Vec<(String, String, String)> = gold
                    .relations
                    .iter()
                    .filter(|item| !pred.relations.contains(item))
                    .cloned()
                    .collect();
                acc.taxonomy =
                    acc.taxonomy + categorize_missing_relations(&missing, &pred.relations);
                for (h, r, t) in pred.relations {
                    acc.pred_relations.push((key.clone(), h, r, t));
                }
                for (h, r, t) in gold.relations {
                    acc.gold_relations.push((key.clone(), h, r, t));
                }
            }
            // Everything else is entity prediction over the source text.
            (_, _) => {
                let sides = parse_sides(input, config, &mut counts);
                let text = &example.hints.source_text;
                let vocab = &example.hints.label_vocab;
                let pred = decode_entity_prediction(&sides.pred, text, vocab, augmented);
                counts.dropped_out_of_vocab += pred.dropped_label;
                counts.dropped_ungrounded += pred.dropped_surfaces.len();
                let gold = decode_entity_prediction(&sides.gold, text, vocab, augmented);
                for (span, label) in pred.spans {
                    acc.pred_spans.push((key.clone(), span, label));
                }
                for (span, label) in gold.spans {
                    acc.gold_spans.push((key.clone(), span, label));
                }
            }
        }
    }

    let mut metrics: BTreeMap<String, MetricValue> = BTreeMap::new();
    match task {
        TaskKind::Ner | TaskKind::Srl | TaskKind::EventTrigger | TaskKind::EventArgument => {
            let id = typed_span_prf(&acc.pred_spans, &acc.gold_spans, SpanMatchMode::Identification);
            let cl = typed_span_prf(&acc.pred_spans, &acc.gold_spans, SpanMatchMode::Classification);
            metrics.insert("identification_f1".into(), MetricValue::Prf(id));
            metrics.insert("classification_f1".into(), MetricValue::Prf(cl));
        }
        TaskKind::JointEntityRelation => {
            let entity = typed_span_prf(
                &acc.pred_spans,
                &acc.gold_spans,
                SpanMatchMode::Classification,
            );
            metrics.insert("entity_f1".into(), MetricValue::Prf(entity));
            let relation = micro_prf(&acc.pred_relations, &acc.gold_relations);
            metrics.insert("relation_f1".into(), MetricValue::Prf(relation));
        }
        TaskKind::RelationClassification => {
            metrics.insert(
                "f1".into(),
                MetricValue::Prf(micro_prf(&acc.rc_pred, &acc.rc_gold)),
            );
        }
        TaskKind::Oie => {
            let (tp, fp, fn_) = acc.oie;
            metrics.insert("f1".into(), MetricValue::Prf(Prf::from_counts(tp, fp, fn_)));
        }
        TaskKind::Coreference => {
            let muc = acc.coref_muc.to_prf();
            let b3 = acc.coref_b3.to_prf();
            let ceaf = acc.coref_ceaf.to_prf();
            metrics.insert("muc".into(), MetricValue::Prf(muc));
            metrics.insert("b_cubed".into(), MetricValue::Prf(b3));
            metrics.insert("ceaf_phi4".into(), MetricValue::Prf(ceaf));
            metrics.insert(
                "avg_f1".into(),
                MetricValue::Scalar((muc.f1 + b3.f1 + ceaf.f1) / 3.0),
            );
        }
        TaskKind::DialogueStateTracking => {
            metrics.insert(
                "joint_accuracy".into(),
                MetricValue::Scalar(joint_goal_accuracy(&acc.dst_pred, &acc.dst_gold)?),
            );
        }
        TaskKind::IntentDetection => {
            metrics.insert(
                "f1".into(),
                MetricValue::Prf(micro_prf(&acc.intent_pred, &acc.intent_gold)),
            );
        }
        TaskKind::FactualProbe => {
            metrics.insert(
                "p_at_1".into(),
                MetricValue::Scalar(precision_at_1(&acc.fp_pred, &acc.fp_gold)?),
            );
        }
    }

    Ok(EvalReport {
        task,
        dataset,
        config_fingerprint: fingerprint(config),
        metrics,
        counts,
        taxonomy: (task == TaskKind::JointEntityRelation).then_some(acc.taxonomy),
    })
}

/// Groups mixed-task inputs by (task, dataset) and evaluates each group.
pub fn evaluate_grouped(
    inputs: Vec<EvalInput>,
    config: &EvalConfig,
) -> Result<Vec<EvalReport>, EvalError> {
    let mut groups: BTreeMap<(String, String), Vec<EvalInput>> = BTreeMap::new();
    for input in inputs {
        let task = input
            .example
            .hints
            .task
            .ok_or_else(|| EvalError::MissingTask {
                id: input.example.id.clone(),
            })?;
        let key = (
            format!("{task:?}"),
            input.example.hints.dataset.clone(),
        );
        groups.entry(key).or_default().push(input);
    }
    groups
        .into_values()
        .map(|group| evaluate_dataset(&group, config))
        .collect()
}
