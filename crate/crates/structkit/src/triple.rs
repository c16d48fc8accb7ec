//! The linearized triple sequence language: `( head; relation; tail )` groups.
//!
//! `parse_triples` is total: it accepts arbitrary model output, extracts every
//! well-formed group left to right, and records what it had to skip.
//! `serialize_triples` is its exact inverse on escaped fields.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::Range;
use thiserror::Error;

/// One `(head; relation; tail)` unit, the universal output representation.
///
/// Fields hold the logical (unescaped) surface strings. Construction through
/// [`Triple::new`] trims surrounding whitespace and rejects empty fields, which
/// is what makes `parse(serialize(ts)) == ts` exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub head: String,
    pub relation: String,
    pub tail: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TripleError {
    #[error("triple field `{field}` is empty after trimming")]
    EmptyField { field: &'static str },
}

impl Triple {
    /// Builds a triple, trimming surrounding whitespace from every field.
    pub fn new(
        head: impl Into<String>,
        relation: impl Into<String>,
        tail: impl Into<String>,
    ) -> Result<Self, TripleError> {
        let triple = Triple {
            head: head.into().trim().to_string(),
            relation: relation.into().trim().to_string(),
            tail: tail.into().trim().to_string(),
        };
        triple.validate()?;
        Ok(triple)
    }

    pub fn validate(&self) -> Result<(), TripleError> {
        for (field, value) in [
            ("head", &self.head),
            ("relation", &self.relation),
            ("tail", &self.tail),
        ] {
            if value.trim().is_empty() {
                return Err(TripleError::EmptyField { field });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "( {}; {}; {} )", self.head, self.relation, self.tail)
    }
}

// Corpus files store triples as 3-element arrays, so (de)serialize as a tuple.
impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(3)?;
        tup.serialize_element(&self.head)?;
        tup.serialize_element(&self.relation)?;
        tup.serialize_element(&self.tail)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TripleVisitor;
        impl<'de> Visitor<'de> for TripleVisitor {
            type Value = Triple;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [head, relation, tail] array")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Triple, A::Error> {
                let head: String = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let relation: String = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(1, &self))?;
                let tail: String = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(2, &self))?;
                if seq.next_element::<String>()?.is_some() {
                    return Err(serde::de::Error::invalid_length(4, &self));
                }
                Ok(Triple {
                    head,
                    relation,
                    tail,
                })
            }
        }
        deserializer.deserialize_seq(TripleVisitor)
    }
}

/// Why a fragment of raw output was not parsed into a triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    UnbalancedParen,
    WrongArity,
    EmptyField,
}

/// What the parser skipped or salvaged while reading raw output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseDiagnostics {
    /// Groups salvaged by the arity>3 heuristic (extra `;` folded into the head).
    pub recovered_count: usize,
    /// Byte ranges of dropped fragments, with the reason each was dropped.
    pub skipped_fragments: Vec<(Range<usize>, SkipReason)>,
}

impl ParseDiagnostics {
    pub fn skipped_count(&self) -> usize {
        self.skipped_fragments.len()
    }

    fn skip(&mut self, range: Range<usize>, reason: SkipReason) {
        self.skipped_fragments.push((range, reason));
    }
}

/// Whitespace handling applied by [`normalize_surface_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CasePolicy {
    #[default]
    Preserve,
    Lowercase,
}

/// Collapses whitespace runs to single spaces and trims the ends.
pub fn normalize_surface(s: &str) -> String {
    normalize_surface_with(s, CasePolicy::Preserve)
}

pub fn normalize_surface_with(s: &str, policy: CasePolicy) -> String {
    let collapsed = s.split_whitespace().collect::<Vec<_>>().join(" ");
    match policy {
        CasePolicy::Preserve => collapsed,
        CasePolicy::Lowercase => collapsed.to_lowercase(),
    }
}

const RESERVED: [char; 4] = ['\\', '(', ')', ';'];

fn escape_field(field: &str) -> String {
    let mut out = String::with_capacity(field.len());
    for c in field.chars() {
        if RESERVED.contains(&c) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Serializes triples as `( h; r; t )` groups separated by single spaces.
///
/// Reserved characters (`(`, `)`, `;`, `\`) inside fields are backslash-escaped
/// so that [`parse_triples`] inverts the serialization exactly. An empty field
/// signals a caller bug and is rejected.
pub fn serialize_triples(triples: &[Triple]) -> Result<String, TripleError> {
    let mut groups = Vec::with_capacity(triples.len());
    for triple in triples {
        triple.validate()?;
        groups.push(format!(
            "( {}; {}; {} )",
            escape_field(&triple.head),
            escape_field(&triple.relation),
            escape_field(&triple.tail)
        ));
    }
    Ok(groups.join(" "))
}

/// Parses every maximal well-formed `( a; b; c )` group out of arbitrary text.
///
/// Never fails: malformed fragments are skipped and recorded in the
/// diagnostics. Text outside paren groups (including the optional `<s>`/`<e>`
/// sentinels some backends emit) is ignored. A group with more than three
/// fields is salvaged by treating its last two `;` as the separators; such
/// salvages are counted in `recovered_count`.
pub fn parse_triples(raw: &str) -> (Vec<Triple>, ParseDiagnostics) {
    let chars: Vec<(usize, char)> = raw.char_indices().collect();
    let n = chars.len();
    let mut triples = Vec::new();
    let mut diags = ParseDiagnostics::default();

    let mut i = 0;
    while i < n {
        match chars[i].1 {
            '\\' => i += 2,
            '(' => {
                let open = i;
                let mut fields: Vec<String> = Vec::new();
                let mut current = String::new();
                let mut j = i + 1;
                let mut closed_at = None;
                let mut reopened_at = None;
                while j < n {
                    match chars[j].1 {
                        '\\' => {
                            if j + 1 < n {
                                current.push(chars[j + 1].1);
                                j += 2;
                            } else {
                                current.push('\\');
                                j += 1;
                            }
                        }
                        ';' => {
                            fields.push(std::mem::take(&mut current));
                            j += 1;
                        }
                        ')' => {
                            fields.push(std::mem::take(&mut current));
                            closed_at = Some(j);
                            break;
                        }
                        '(' => {
                            reopened_at = Some(j);
                            break;
                        }
                        c => {
                            current.push(c);
                            j += 1;
                        }
                    }
                }

                if let Some(close) = closed_at {
                    let range = chars[open].0..byte_end(raw, &chars, close + 1);
                    match fields.len() {
                        3 => match triple_from_fields(&fields[0], &fields[1], &fields[2]) {
                            Some(t) => triples.push(t),
                            None => diags.skip(range, SkipReason::EmptyField),
                        },
                        len if len > 3 => {
                            let head = fields[..len - 2].join(";");
                            match triple_from_fields(&head, &fields[len - 2], &fields[len - 1]) {
                                Some(t) => {
                                    triples.push(t);
                                    diags.recovered_count += 1;
                                }
                                None => diags.skip(range, SkipReason::EmptyField),
                            }
                        }
                        _ => diags.skip(range, SkipReason::WrongArity),
                    }
                    i = close + 1;
                } else if let Some(reopen) = reopened_at {
                    diags.skip(chars[open].0..chars[reopen].0, SkipReason::UnbalancedParen);
                    i = reopen;
                } else {
                    diags.skip(chars[open].0..raw.len(), SkipReason::UnbalancedParen);
                    i = n;
                }
            }
            _ => i += 1,
        }
    }

    (triples, diags)
}

fn byte_end(raw: &str, chars: &[(usize, char)], idx: usize) -> usize {
    if idx < chars.len() {
        chars[idx].0
    } else {
        raw.len()
    }
}

fn triple_from_fields(head: &str, relation: &str, tail: &str) -> Option<Triple> {
    Triple::new(head, relation, tail).ok()
}
