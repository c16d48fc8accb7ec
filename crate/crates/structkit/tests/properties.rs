//! Cross-module invariants exercised over the synthetic corpora.

use structkit::backend::{generate, DecodeConfig, OracleBackend};
use structkit::codec::{encode_record, split_prefix, EncodeMode};
use structkit::eval::{evaluate_dataset, EvalConfig, EvalInput};
use structkit::fixtures::fixture_records;
use structkit::record::{PredictionUnit, TaskKind, ALL_TASK_KINDS};
use structkit::registry::DatasetRegistry;

fn oracle_inputs(
    task: TaskKind,
    mode: EncodeMode,
    count: usize,
    config: DecodeConfig,
) -> Vec<EvalInput> {
    let registry = DatasetRegistry::builtin();
    let mut examples = Vec::new();
    for (i, record) in fixture_records(task, count).iter().enumerate() {
        examples.extend(encode_record(record, mode, &registry, i).unwrap());
    }
    let oracle = OracleBackend::from_examples(examples.iter());
    examples
        .into_iter()
        .map(|example| {
            let generation = generate(&example, config, &oracle).unwrap();
            EvalInput {
                example,
                generation,
            }
        })
        .collect()
}

/// Every encoded input starts with exactly one prefix; stripping it recovers
/// the source text (with marking brackets for SRL/event arguments, and the
/// relationship suffix for relation classification).
#[test]
fn prefix_law_holds_for_every_task() {
    let registry = DatasetRegistry::builtin();
    for task in ALL_TASK_KINDS {
        for mode in [EncodeMode::ZeroShot, EncodeMode::multi_task()] {
            for (i, record) in fixture_records(task, 12).iter().enumerate() {
                for example in encode_record(record, mode, &registry, i).unwrap() {
                    let (prefix, rest) = split_prefix(&example.input)
                        .unwrap_or_else(|| panic!("{task:?}: no prefix in {}", example.input));
                    match mode {
                        EncodeMode::ZeroShot => {
                            assert!(
                                ["entity", "relation", "triple"].contains(&prefix),
                                "{task:?}: unexpected zero-shot prefix `{prefix}`"
                            );
                        }
                        EncodeMode::MultiTask { .. } => {
                            let entry = registry.get(task, &record.dataset).unwrap();
                            assert_eq!(prefix, entry.tag, "{task:?}");
                        }
                    }
                    match task {
                        TaskKind::Srl | TaskKind::EventArgument => {
                            assert_eq!(
                                structkit::grounding::unmark_span(rest),
                                example.hints.source_text
                            );
                        }
                        TaskKind::RelationClassification => {
                            assert!(rest.starts_with(&example.hints.source_text));
                            assert!(rest.contains("The relationship between"));
                        }
                        _ => assert_eq!(rest, example.hints.source_text),
                    }
                }
            }
        }
    }
}

/// The `[]` augmentation is a pure output-format change: encoding with it and
/// stripping at decode time still closes the oracle loop at exactly 1.0.
#[test]
fn augmented_encoding_still_closes_the_loop() {
    let config = DecodeConfig {
        length_penalty: 0.8,
        min_target_length: 0,
        max_target_length: 512,
        trim_to_first_triple: false,
    };
    for task in [
        TaskKind::Ner,
        TaskKind::JointEntityRelation,
        TaskKind::Oie,
        TaskKind::Coreference,
        TaskKind::DialogueStateTracking,
    ] {
        let inputs = oracle_inputs(task, EncodeMode::MultiTask { augment: true }, 20, config);
        let report = evaluate_dataset(&inputs, &EvalConfig::default()).unwrap();
        for (name, value) in &report.metrics {
            assert_eq!(value.headline(), 1.0, "{task:?} {name}");
        }
        assert_eq!(report.counts.dropped_ungrounded, 0, "{task:?}");
    }
}

/// Entity and relation examples from one record decode independently: the
/// input order of the two streams does not change the report.
#[test]
fn jer_units_decode_in_either_order() {
    let config = DecodeConfig {
        length_penalty: 0.8,
        min_target_length: 0,
        max_target_length: 512,
        trim_to_first_triple: false,
    };
    let mut inputs = oracle_inputs(
        TaskKind::JointEntityRelation,
        EncodeMode::multi_task(),
        20,
        config,
    );
    let forward = evaluate_dataset(&inputs, &EvalConfig::default()).unwrap();
    inputs.reverse();
    let backward = evaluate_dataset(&inputs, &EvalConfig::default()).unwrap();
    assert_eq!(forward.metrics, backward.metrics);
    assert_eq!(forward.taxonomy, backward.taxonomy);
}

/// Scores are invariant to decode-config fields the oracle backend ignores
/// (length penalty, target length bounds).
#[test]
fn oracle_scores_ignore_generation_only_config_fields() {
    let loose = DecodeConfig {
        length_penalty: 0.8,
        min_target_length: 0,
        max_target_length: 512,
        trim_to_first_triple: false,
    };
    let tight = DecodeConfig {
        length_penalty: 0.1,
        min_target_length: 3,
        max_target_length: 64,
        trim_to_first_triple: false,
    };
    for task in [TaskKind::Ner, TaskKind::Oie, TaskKind::Coreference] {
        let a = evaluate_dataset(
            &oracle_inputs(task, EncodeMode::multi_task(), 12, loose),
            &EvalConfig::default(),
        )
        .unwrap();
        let b = evaluate_dataset(
            &oracle_inputs(task, EncodeMode::multi_task(), 12, tight),
            &EvalConfig::default(),
        )
        .unwrap();
        assert_eq!(a.metrics, b.metrics, "{task:?}");
    }
}

/// The multi-task tag registry is data-driven: an example encoded under a
/// registry file override carries the new tag.
#[test]
fn registry_extension_tags_are_used() {
    let mut registry = DatasetRegistry::builtin();
    registry
        .register(structkit::registry::DatasetEntry {
            task: TaskKind::Ner,
            dataset: "newswire".into(),
            tag: "ner newswire".into(),
            entity_labels: vec!["person".into()],
            relation_labels: vec![],
            slots: vec![],
        })
        .unwrap();
    let mut record = fixture_records(TaskKind::Ner, 1).remove(0);
    record.dataset = "newswire".into();
    if let structkit::record::Gold::TypedSpans { spans } = &mut record.gold {
        spans.retain(|s| s.label == "person");
    }
    let examples = encode_record(&record, EncodeMode::multi_task(), &registry, 0).unwrap();
    assert!(examples[0].input.starts_with("ner newswire: "));

    // JER relation decode config differs by unit even on the same dataset.
    let entity = structkit::backend::default_decode_config(
        TaskKind::JointEntityRelation,
        PredictionUnit::Entity,
        "conll04",
    )
    .unwrap();
    let relation = structkit::backend::default_decode_config(
        TaskKind::JointEntityRelation,
        PredictionUnit::Relation,
        "conll04",
    )
    .unwrap();
    assert!(entity.length_penalty > relation.length_penalty);
}
