//! Adapters from common external formats into the canonical record schema.

use crate::record::{Gold, TaskKind, TaskRecord, TypedSpan};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Converts CoNLL-style token-per-line columns (token, BIO tag; blank line
/// between sentences) into NER records. Tokens are joined with single spaces
/// and spans are char offsets into the joined text.
///
/// Tag labels pass through a mapper so column vocabularies like `PER` can be
/// renamed to the registry's label names.
pub fn conll_bio_to_records(
    input: &str,
    dataset: &str,
    map_label: impl Fn(&str) -> String,
) -> Result<Vec<TaskRecord>, IngestError> {
    let mut records = Vec::new();
    let mut tokens: Vec<String> = Vec::new();
    let mut tags: Vec<String> = Vec::new();

    let mut flush = |tokens: &mut Vec<String>, tags: &mut Vec<String>| {
        if tokens.is_empty() {
            return;
        }
        let text = tokens.join(" ");
        let mut offsets = Vec::with_capacity(tokens.len());
        let mut at = 0usize;
        for token in tokens.iter() {
            offsets.push((at, at + token.chars().count()));
            at += token.chars().count() + 1;
        }
        let mut spans: Vec<TypedSpan> = Vec::new();
        let mut open: Option<(usize, String)> = None; // (start token, label)
        for (idx, tag) in tags.iter().enumerate() {
            let (prefix, label) = match tag.split_once('-') {
                Some((p, l)) => (p, l),
                None => (tag.as_str(), ""),
            };
            match prefix {
                "B" => {
                    if let Some((start, lab)) = open.take() {
                        spans.push(TypedSpan::new(offsets[start].0, offsets[idx - 1].1, lab));
                    }
                    open = Some((idx, map_label(label)));
                }
                "I" => {
                    if open.is_none() {
                        // Tolerate I- without B-: treat as a new mention.
                        open = Some((idx, map_label(label)));
                    }
                }
                _ => {
                    if let Some((start, lab)) = open.take() {
                        spans.push(TypedSpan::new(offsets[start].0, offsets[idx - 1].1, lab));
                    }
                }
            }
        }
        if let Some((start, lab)) = open.take() {
            spans.push(TypedSpan::new(offsets[start].0, offsets[tags.len() - 1].1, lab));
        }
        records.push(TaskRecord {
            task: TaskKind::Ner,
            dataset: dataset.to_string(),
            text,
            gold: Gold::TypedSpans { spans },
            marked_span: None,
        });
        tokens.clear();
        tags.clear();
    };

    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            flush(&mut tokens, &mut tags);
            continue;
        }
        if trimmed.starts_with("-DOCSTART-") {
            flush(&mut tokens, &mut tags);
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let token = parts.next().ok_or(IngestError::Malformed {
            line: line_no,
            message: "empty row".into(),
        })?;
        let tag = parts.last().ok_or(IngestError::Malformed {
            line: line_no,
            message: format!("token `{token}` has no tag column"),
        })?;
        tokens.push(token.to_string());
        tags.push(tag.to_string());
    }
    flush(&mut tokens, &mut tags);
    Ok(records)
}

/// The CoNLL03 column vocabulary renamed to the registry's label names.
pub fn conll03_label(label: &str) -> String {
    match label {
        "PER" => "person".to_string(),
        "LOC" => "location".to_string(),
        "ORG" => "organization".to_string(),
        "MISC" => "miscellaneous".to_string(),
        other => other.to_lowercase(),
    }
}

/// The token-indexed JSON export format many span-pair extraction datasets
/// ship in: `tokens`, `entities` with token spans (end exclusive), and
/// `relations` referring to entity indices.
#[derive(Debug, serde::Deserialize)]
pub struct TokenIndexedExample {
    pub tokens: Vec<String>,
    #[serde(default)]
    pub entities: Vec<TokenIndexedEntity>,
    #[serde(default)]
    pub relations: Vec<TokenIndexedRelation>,
}

#[derive(Debug, serde::Deserialize)]
pub struct TokenIndexedEntity {
    #[serde(rename = "type")]
    pub label: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, serde::Deserialize)]
pub struct TokenIndexedRelation {
    #[serde(rename = "type")]
    pub label: String,
    pub head: usize,
    pub tail: usize,
}

/// Converts a token-indexed JSON array into canonical records: NER records
/// when no example carries relations, JER records otherwise. Tokens join with
/// single spaces; spans become char offsets.
pub fn token_indexed_json_to_records(
    json: &str,
    task: TaskKind,
    dataset: &str,
    map_label: impl Fn(&str) -> String,
) -> Result<Vec<TaskRecord>, IngestError> {
    let examples: Vec<TokenIndexedExample> =
        serde_json::from_str(json).map_err(|e| IngestError::Malformed {
            line: e.line(),
            message: e.to_string(),
        })?;
    examples
        .iter()
        .enumerate()
        .map(|(idx, example)| {
            let text = example.tokens.join(" ");
            let mut offsets = Vec::with_capacity(example.tokens.len());
            let mut at = 0usize;
            for token in &example.tokens {
                offsets.push((at, at + token.chars().count()));
                at += token.chars().count() + 1;
            }
            let char_span = |start: usize, end: usize| -> Result<crate::grounding::Span, IngestError> {
                if start >= end || end > offsets.len() {
                    return Err(IngestError::Malformed {
                        line: idx + 1,
                        message: format!("token span {start}..{end} out of range"),
                    });
                }
                Ok(crate::grounding::Span::new(offsets[start].0, offsets[end - 1].1))
            };

            let mut entities = Vec::with_capacity(example.entities.len());
            for entity in &example.entities {
                let span = char_span(entity.start, entity.end)?;
                entities.push(TypedSpan::new(span.start, span.end, map_label(&entity.label)));
            }

            let gold = match task {
                TaskKind::Ner => Gold::TypedSpans { spans: entities },
                TaskKind::JointEntityRelation => {
                    let mut relations = Vec::with_capacity(example.relations.len());
                    for relation in &example.relations {
                        let lookup = |i: usize| -> Result<crate::grounding::Span, IngestError> {
                            entities.get(i).map(TypedSpan::span).ok_or_else(|| {
                                IngestError::Malformed {
                                    line: idx + 1,
                                    message: format!("relation refers to missing entity {i}"),
                                }
                            })
                        };
                        relations.push(crate::record::SpanRelation {
                            head: lookup(relation.head)?,
                            label: map_label(&relation.label),
                            tail: lookup(relation.tail)?,
                        });
                    }
                    Gold::EntitiesRelations {
                        entities,
                        relations,
                    }
                }
                other => {
                    return Err(IngestError::Malformed {
                        line: idx + 1,
                        message: format!("token-indexed ingest supports NER and JER, not {other:?}"),
                    })
                }
            };

            Ok(TaskRecord {
                task,
                dataset: dataset.to_string(),
                text,
                gold,
                marked_span: None,
            })
        })
        .collect()
}
