//! Turning task records into prefixed text-to-triple training/eval examples.

use super::{example_id, CodecError, DecodeHints, EncodeMode, EncodedExample};
use crate::grounding::{char_len, char_slice, mark_span, Span};
use crate::record::{Gold, PredictionUnit, TaskKind, TaskRecord};
use crate::registry::{DatasetEntry, DatasetRegistry};
use crate::triple::{normalize_surface, serialize_triples, Triple};

/// Duplicates a multi-predicate SRL or event-argument record, one record per
/// predicate, each with exactly one marked span and the gold arguments that
/// belong to it.
pub fn expand_multi_predicate(record: &TaskRecord) -> Result<Vec<TaskRecord>, CodecError> {
    if !matches!(record.task, TaskKind::Srl | TaskKind::EventArgument) {
        return Err(CodecError::InvalidRecord {
            reason: format!("expand_multi_predicate does not apply to {:?}", record.task),
        });
    }
    match &record.gold {
        Gold::Frames { frames } => {
            if frames.is_empty() {
                return Err(CodecError::NoPredicate);
            }
            Ok(frames
                .iter()
                .map(|frame| TaskRecord {
                    task: record.task,
                    dataset: record.dataset.clone(),
                    text: record.text.clone(),
                    gold: Gold::TypedSpans {
                        spans: frame.arguments.clone(),
                    },
                    marked_span: Some(frame.predicate),
                })
                .collect())
        }
        Gold::TypedSpans { .. } if record.marked_span.is_some() => Ok(vec![record.clone()]),
        _ => Err(CodecError::NoPredicate),
    }
}

/// Encodes one record into one or more examples. Joint entity and relation
/// extraction yields an entity example and a relation example; multi-predicate
/// SRL and event-argument records are expanded per predicate first.
///
/// `record_index` is the record's position in its corpus stream and feeds the
/// content-hash example ids.
pub fn encode_record(
    record: &TaskRecord,
    mode: EncodeMode,
    registry: &DatasetRegistry,
    record_index: usize,
) -> Result<Vec<EncodedExample>, CodecError> {
    let entry = registry
        .get(record.task, &record.dataset)
        .ok_or_else(|| CodecError::UnknownDataset {
            task: record.task,
            dataset: record.dataset.clone(),
        })?;

    let needs_expansion = matches!(record.task, TaskKind::Srl | TaskKind::EventArgument)
        && matches!(record.gold, Gold::Frames { .. });
    let expanded = if needs_expansion {
        expand_multi_predicate(record)?
    } else {
        vec![record.clone()]
    };

    let mut examples = Vec::new();
    for (sub_index, rec) in expanded.iter().enumerate() {
        for unit in rec.task.units() {
            examples.push(encode_unit(rec, unit, mode, entry, record_index, sub_index)?);
        }
    }
    Ok(examples)
}

fn encode_unit(
    record: &TaskRecord,
    unit: PredictionUnit,
    mode: EncodeMode,
    entry: &DatasetEntry,
    record_index: usize,
    sub_index: usize,
) -> Result<EncodedExample, CodecError> {
    let body = input_body(record)?;
    let input = match mode {
        EncodeMode::ZeroShot => format!("{} {}", unit.prefix(), body),
        EncodeMode::MultiTask { .. } => format!("{}: {}", entry.tag, body),
    };
    let triples = gold_triples(record, unit, entry, mode.augmented())?;
    let gold_output = serialize_triples(&triples)?;

    let label_vocab = match unit {
        PredictionUnit::Entity => entry.entity_labels.clone(),
        PredictionUnit::Relation => entry.relation_labels.clone(),
        PredictionUnit::Triple => Vec::new(),
    };
    let slot_list = match &record.gold {
        Gold::Slots { values } => values.keys().cloned().collect(),
        _ => Vec::new(),
    };

    Ok(EncodedExample {
        id: example_id(&record.dataset, record_index, sub_index, unit),
        input,
        gold_output,
        hints: DecodeHints {
            task: Some(record.task),
            dataset: record.dataset.clone(),
            unit,
            mode,
            label_vocab,
            slot_list,
            marked_span: record.marked_span,
            source_text: record.text.clone(),
        },
    })
}

/// The text part of the input after the prefix: marked for SRL and event
/// arguments, suffixed for relation classification, context sentences for
/// factual probe, the raw text otherwise.
fn input_body(record: &TaskRecord) -> Result<String, CodecError> {
    match (&record.task, &record.gold) {
        (TaskKind::Srl | TaskKind::EventArgument, _) => {
            let span = record.marked_span.ok_or(CodecError::NoPredicate)?;
            Ok(mark_span(&record.text, span)?)
        }
        (TaskKind::RelationClassification, Gold::Relation { head, tail, .. }) => {
            let head_surface = surface_of(&record.text, *head)?;
            let tail_surface = surface_of(&record.text, *tail)?;
            Ok(format!(
                "{} The relationship between {} and {} is",
                record.text, head_surface, tail_surface
            ))
        }
        (TaskKind::FactualProbe, Gold::FactualQuery { context, .. }) => {
            if context.is_empty() {
                Ok(record.text.clone())
            } else {
                Ok(context.join(" "))
            }
        }
        _ => Ok(record.text.clone()),
    }
}

fn gold_triples(
    record: &TaskRecord,
    unit: PredictionUnit,
    entry: &DatasetEntry,
    augment: bool,
) -> Result<Vec<Triple>, CodecError> {
    match (&record.gold, record.task, unit) {
        (Gold::TypedSpans { spans }, _, PredictionUnit::Entity) => {
            entity_triples(&record.text, spans, &entry.entity_labels, augment)
        }
        (Gold::EntitiesRelations { entities, .. }, _, PredictionUnit::Entity) => {
            entity_triples(&record.text, entities, &entry.entity_labels, augment)
        }
        (Gold::EntitiesRelations { relations, .. }, _, PredictionUnit::Relation) => relations
            .iter()
            .map(|rel| {
                check_label(&rel.label, &entry.relation_labels)?;
                let head = bracket(surface_of(&record.text, rel.head)?, augment);
                let tail = bracket(surface_of(&record.text, rel.tail)?, augment);
                Ok(Triple::new(head, rel.label.clone(), tail)?)
            })
            .collect(),
        (Gold::Relation { head, label, tail }, _, PredictionUnit::Relation) => {
            check_label(label, &entry.relation_labels)?;
            let head = bracket(surface_of(&record.text, *head)?, augment);
            let tail = bracket(surface_of(&record.text, *tail)?, augment);
            Ok(vec![Triple::new(head, label.clone(), tail)?])
        }
        (Gold::OpenTuples { tuples }, _, PredictionUnit::Triple) => tuples
            .iter()
            .map(|tuple| {
                if tuple.len() != 3 {
                    return Err(CodecError::InvalidRecord {
                        reason: format!("open tuple must have 3 slots, got {}", tuple.len()),
                    });
                }
                Ok(Triple::new(
                    bracket(normalize_surface(&tuple[0]), augment),
                    bracket(normalize_surface(&tuple[1]), augment),
                    bracket(normalize_surface(&tuple[2]), augment),
                )?)
            })
            .collect(),
        (Gold::Clusters { clusters }, _, PredictionUnit::Entity) => {
            let mut triples = Vec::new();
            for cluster in clusters {
                let mut mentions = cluster.clone();
                mentions.sort_by_key(|span| (span.start, span.end));
                for pair in mentions.windows(2) {
                    let antecedent = bracket(surface_of(&record.text, pair[0])?, augment);
                    let mention = bracket(surface_of(&record.text, pair[1])?, augment);
                    triples.push(Triple::new(antecedent, "refer to", mention)?);
                }
            }
            Ok(triples)
        }
        (Gold::Slots { values }, _, PredictionUnit::Entity) => {
            if values.is_empty() {
                return Err(CodecError::InvalidRecord {
                    reason: "dialogue state record has an empty slot map".into(),
                });
            }
            if !entry.slots.is_empty() {
                for slot in values.keys() {
                    if !entry.slots.contains(slot) {
                        return Err(CodecError::InvalidRecord {
                            reason: format!("slot `{slot}` is not in the dataset slot vocabulary"),
                        });
                    }
                }
            }
            values
                .iter()
                .map(|(slot, value)| {
                    let value = if value.trim().is_empty() {
                        "not given".to_string()
                    } else {
                        normalize_surface(value)
                    };
                    Ok(Triple::new("[User]", slot.clone(), value)?)
                })
                .collect()
        }
        (Gold::Intent { label }, _, PredictionUnit::Entity) => {
            check_label(label, &entry.entity_labels)?;
            Ok(vec![Triple::new("intent", "is", label.clone())?])
        }
        (
            Gold::FactualQuery {
                subject,
                relation,
                object,
                ..
            },
            _,
            PredictionUnit::Entity,
        ) => {
            check_label(relation, &entry.relation_labels)?;
            Ok(vec![Triple::new(
                subject.clone(),
                relation.clone(),
                object.clone(),
            )?])
        }
        (gold, task, unit) => Err(CodecError::InvalidRecord {
            reason: format!(
                "gold structure {:?} does not fit task {:?} unit {:?}",
                gold_kind(gold),
                task,
                unit
            ),
        }),
    }
}

fn entity_triples(
    text: &str,
    spans: &[crate::record::TypedSpan],
    vocab: &[String],
    augment: bool,
) -> Result<Vec<Triple>, CodecError> {
    spans
        .iter()
        .map(|span| {
            check_label(&span.label, vocab)?;
            let mention = bracket(surface_of(text, span.span())?, augment);
            Ok(Triple::new(mention, "instance of", span.label.clone())?)
        })
        .collect()
}

fn surface_of(text: &str, span: Span) -> Result<String, CodecError> {
    let len = char_len(text);
    if span.start >= span.end || span.end > len {
        return Err(CodecError::SpanOutOfRange(
            crate::grounding::GroundingError::SpanOutOfRange {
                start: span.start,
                end: span.end,
                len,
            },
        ));
    }
    Ok(normalize_surface(&char_slice(text, span)))
}

fn bracket(surface: String, augment: bool) -> String {
    if augment {
        format!("[{surface}]")
    } else {
        surface
    }
}

fn check_label(label: &str, vocab: &[String]) -> Result<(), CodecError> {
    if !vocab.is_empty() && !vocab.iter().any(|l| l == label) {
        return Err(CodecError::InvalidRecord {
            reason: format!("label `{label}` is not in the dataset vocabulary"),
        });
    }
    Ok(())
}

fn gold_kind(gold: &Gold) -> &'static str {
    match gold {
        Gold::TypedSpans { .. } => "typed_spans",
        Gold::Frames { .. } => "frames",
        Gold::EntitiesRelations { .. } => "entities_relations",
        Gold::Relation { .. } => "relation",
        Gold::OpenTuples { .. } => "open_tuples",
        Gold::Clusters { .. } => "clusters",
        Gold::Slots { .. } => "slots",
        Gold::Intent { .. } => "intent",
        Gold::FactualQuery { .. } => "factual_query",
    }
}

/// Continuation prefix for zero-shot relation classification: the backend is
/// primed with `( head;` and generates the relation and tail.
pub fn rc_priming(head: &str) -> String {
    format!("( {};", normalize_surface(head))
}

/// Continuation prefix for factual probing: the backend is primed with
/// `( subject; relation;` and generates only the object.
pub fn factual_probe_priming(subject: &str, relation: &str) -> String {
    format!(
        "( {}; {};",
        normalize_surface(subject),
        normalize_surface(relation)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::{PredicateFrame, SpanRelation, TypedSpan};
    use std::collections::BTreeMap;

    fn registry() -> DatasetRegistry {
        DatasetRegistry::builtin()
    }

    fn span_of(text: &str, surface: &str) -> Span {
        let byte_start = text.find(surface).expect("surface present");
        let start = text[..byte_start].chars().count();
        Span::new(start, start + surface.chars().count())
    }

    #[test]
    fn encodes_ner_record_in_both_modes() {
        let text = "Japan began the defence of their Asian Cup title with a lucky 2-1 win against Syria in a Group C championship match on Friday .";
        let record = TaskRecord {
            task: TaskKind::Ner,
            dataset: "conll03".into(),
            text: text.into(),
            gold: Gold::TypedSpans {
                spans: vec![
                    TypedSpan::new(span_of(text, "Japan").start, span_of(text, "Japan").end, "location"),
                    TypedSpan::new(span_of(text, "Asian Cup").start, span_of(text, "Asian Cup").end, "miscellaneous"),
                    TypedSpan::new(span_of(text, "Syria").start, span_of(text, "Syria").end, "location"),
                ],
            },
            marked_span: None,
        };

        let multi = encode_record(&record, EncodeMode::multi_task(), &registry(), 0).unwrap();
        assert_eq!(multi.len(), 1);
        assert_eq!(multi[0].input, format!("ner conll03: {text}"));
        assert_eq!(
            multi[0].gold_output,
            "( Japan; instance of; location ) ( Asian Cup; instance of; miscellaneous ) ( Syria; instance of; location )"
        );

        let zero = encode_record(&record, EncodeMode::ZeroShot, &registry(), 0).unwrap();
        assert_eq!(zero[0].input, format!("entity: {text}"));
        assert_eq!(zero[0].gold_output, multi[0].gold_output);
    }

    #[test]
    fn empty_gold_encodes_to_empty_output() {
        let record = TaskRecord {
            task: TaskKind::Ner,
            dataset: "conll03".into(),
            text: "nothing here".into(),
            gold: Gold::TypedSpans { spans: vec![] },
            marked_span: None,
        };
        let examples = encode_record(&record, EncodeMode::multi_task(), &registry(), 0).unwrap();
        assert_eq!(examples[0].gold_output, "");
    }

    #[test]
    fn dst_gold_covers_every_slot_alphabetically() {
        let mut values = BTreeMap::new();
        values.insert("taxi arrive by".to_string(), "not given".to_string());
        values.insert("taxi departure".to_string(), "Saint Johns College".to_string());
        values.insert("taxi destination".to_string(), "Pizza Hut Fen Ditton".to_string());
        values.insert("taxi leave at".to_string(), "17:15".to_string());
        let record = TaskRecord {
            task: TaskKind::DialogueStateTracking,
            dataset: "multiwoz".into(),
            text: "[User]: I would like a taxi from Saint Johns College to Pizza Hut Fen Ditton.".into(),
            gold: Gold::Slots { values },
            marked_span: None,
        };
        let examples = encode_record(&record, EncodeMode::multi_task(), &registry(), 0).unwrap();
        assert_eq!(
            examples[0].gold_output,
            "( [User]; taxi arrive by; not given ) ( [User]; taxi departure; Saint Johns College ) \
             ( [User]; taxi destination; Pizza Hut Fen Ditton ) ( [User]; taxi leave at; 17:15 )"
        );
        assert_eq!(examples[0].hints.slot_list.len(), 4);
    }

    #[test]
    fn jer_produces_independent_entity_and_relation_examples() {
        let text = "An art exhibit at the Hakawati Theatre in Arab east Jerusalem .";
        let theatre = span_of(text, "Hakawati Theatre");
        let jerusalem = span_of(text, "Jerusalem");
        let record = TaskRecord {
            task: TaskKind::JointEntityRelation,
            dataset: "conll04".into(),
            text: text.into(),
            gold: Gold::EntitiesRelations {
                entities: vec![
                    TypedSpan::new(theatre.start, theatre.end, "organization"),
                    TypedSpan::new(jerusalem.start, jerusalem.end, "location"),
                ],
                relations: vec![SpanRelation {
                    head: theatre,
                    label: "organization based in".into(),
                    tail: jerusalem,
                }],
            },
            marked_span: None,
        };
        let examples = encode_record(&record, EncodeMode::ZeroShot, &registry(), 7).unwrap();
        assert_eq!(examples.len(), 2);
        assert!(examples[0].input.starts_with("entity: "));
        assert!(examples[1].input.starts_with("relation: "));
        assert_ne!(examples[0].id, examples[1].id);
        assert_eq!(
            examples[1].gold_output,
            "( Hakawati Theatre; organization based in; Jerusalem )"
        );
    }

    #[test]
    fn srl_expansion_partitions_arguments_by_predicate() {
        let text = "a b c d e f g";
        let record = TaskRecord {
            task: TaskKind::Srl,
            dataset: "conll05".into(),
            text: text.into(),
            gold: Gold::Frames {
                frames: vec![
                    PredicateFrame {
                        predicate: span_of(text, "b"),
                        arguments: vec![
                            TypedSpan::new(0, 1, "first argument"),
                            TypedSpan::new(4, 5, "second argument"),
                        ],
                    },
                    PredicateFrame {
                        predicate: span_of(text, "d"),
                        arguments: vec![TypedSpan::new(8, 9, "first argument")],
                    },
                    PredicateFrame {
                        predicate: span_of(text, "f"),
                        arguments: vec![],
                    },
                ],
            },
            marked_span: None,
        };
        let expanded = expand_multi_predicate(&record).unwrap();
        assert_eq!(expanded.len(), 3);
        let gold_sizes: Vec<usize> = expanded
            .iter()
            .map(|r| match &r.gold {
                Gold::TypedSpans { spans } => spans.len(),
                _ => panic!("expansion must yield typed spans"),
            })
            .collect();
        assert_eq!(gold_sizes, vec![2, 1, 0]);
        for rec in &expanded {
            assert!(rec.marked_span.is_some());
        }

        let examples = encode_record(&record, EncodeMode::multi_task(), &registry(), 0).unwrap();
        assert_eq!(examples.len(), 3);
        assert_eq!(examples[0].input, "srl conll05: a [ b ] c d e f g");
        assert_eq!(examples[1].input, "srl conll05: a b c [ d ] e f g");
        let ids: std::collections::HashSet<_> = examples.iter().map(|e| e.id.clone()).collect();
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn single_predicate_expansion_is_identity() {
        let text = "Scotty accepted the decision";
        let record = TaskRecord {
            task: TaskKind::Srl,
            dataset: "conll05".into(),
            text: text.into(),
            gold: Gold::TypedSpans {
                spans: vec![TypedSpan::new(0, 6, "first argument")],
            },
            marked_span: Some(span_of(text, "accepted")),
        };
        let expanded = expand_multi_predicate(&record).unwrap();
        assert_eq!(expanded, vec![record]);
    }

    #[test]
    fn zero_predicates_is_an_error() {
        let record = TaskRecord {
            task: TaskKind::EventArgument,
            dataset: "ace2005".into(),
            text: "no triggers".into(),
            gold: Gold::Frames { frames: vec![] },
            marked_span: None,
        };
        assert!(matches!(
            expand_multi_predicate(&record),
            Err(CodecError::NoPredicate)
        ));
    }

    #[test]
    fn rc_input_carries_the_relationship_suffix() {
        let text = "The 1976 Thomas Cup was the tenth edition of Thomas Cup, the world championship of men's international team badminton (its female counterpart is the Uber Cup).";
        let record = TaskRecord {
            task: TaskKind::RelationClassification,
            dataset: "fewrel".into(),
            text: text.into(),
            gold: Gold::Relation {
                head: span_of(text, "Uber Cup"),
                label: "sport".into(),
                tail: span_of(text, "badminton"),
            },
            marked_span: None,
        };
        let examples = encode_record(&record, EncodeMode::multi_task(), &registry(), 0).unwrap();
        assert_eq!(
            examples[0].input,
            format!("rc fewrel: {text} The relationship between Uber Cup and badminton is")
        );
        assert_eq!(examples[0].gold_output, "( Uber Cup; sport; badminton )");
    }

    #[test]
    fn unknown_dataset_is_rejected() {
        let record = TaskRecord {
            task: TaskKind::Ner,
            dataset: "nowhere".into(),
            text: "x".into(),
            gold: Gold::TypedSpans { spans: vec![] },
            marked_span: None,
        };
        assert!(matches!(
            encode_record(&record, EncodeMode::ZeroShot, &registry(), 0),
            Err(CodecError::UnknownDataset { .. })
        ));
    }

    #[test]
    fn out_of_range_gold_span_is_rejected() {
        let record = TaskRecord {
            task: TaskKind::Ner,
            dataset: "conll03".into(),
            text: "short".into(),
            gold: Gold::TypedSpans {
                spans: vec![TypedSpan::new(0, 50, "location")],
            },
            marked_span: None,
        };
        assert!(matches!(
            encode_record(&record, EncodeMode::ZeroShot, &registry(), 0),
            Err(CodecError::SpanOutOfRange(_))
        ));
    }

    #[test]
    fn augmentation_brackets_mentions_only() {
        let text = "Iago lives in Tbilisi .";
        let iago = span_of(text, "Iago");
        let tbilisi = span_of(text, "Tbilisi");
        let record = TaskRecord {
            task: TaskKind::JointEntityRelation,
            dataset: "conll04".into(),
            text: text.into(),
            gold: Gold::EntitiesRelations {
                entities: vec![TypedSpan::new(iago.start, iago.end, "person")],
                relations: vec![SpanRelation {
                    head: iago,
                    label: "live in".into(),
                    tail: tbilisi,
                }],
            },
            marked_span: None,
        };
        let examples =
            encode_record(&record, EncodeMode::MultiTask { augment: true }, &registry(), 0)
                .unwrap();
        assert_eq!(examples[0].gold_output, "( [Iago]; instance of; person )");
        assert_eq!(examples[1].gold_output, "( [Iago]; live in; [Tbilisi] )");
    }

    #[test]
    fn priming_strings_match_the_serialized_format() {
        assert_eq!(rc_priming("Uber  Cup"), "( Uber Cup;");
        assert_eq!(
            factual_probe_priming("Kurt Schwertsik", "place of birth"),
            "( Kurt Schwertsik; place of birth;"
        );
    }
}
