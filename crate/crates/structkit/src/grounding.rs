//! Maps generated entity surfaces back onto character spans of the source
//! text, left to right, with duplicated surfaces assigned sequentially.

use crate::triple::normalize_surface;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

/// A character span, end exclusive. All offsets in this crate count chars,
/// not bytes.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }
}

/// Slices `text` by character offsets.
pub fn char_slice(text: &str, span: Span) -> String {
    text.chars().skip(span.start).take(span.len()).collect()
}

pub fn char_len(text: &str) -> usize {
    text.chars().count()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroundingError {
    #[error("span {start}..{end} out of range for text of {len} chars")]
    SpanOutOfRange { start: usize, end: usize, len: usize },
}

/// A surface grounded to a concrete text span.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundedSpan {
    pub span: Span,
    pub surface: String,
    /// Which occurrence of this surface in the text was consumed (0-based).
    pub occurrence_index: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GroundingConfig {
    /// Retry a failed exact match case-insensitively. Off by default: the
    /// grounding procedure presumes exact surfaces.
    pub case_insensitive_fallback: bool,
}

/// Normalized view of a text that can map matches back to original char
/// offsets. Whitespace runs collapse to single spaces during matching, so
/// `Pizza  Hut` in the text still matches the surface `Pizza Hut`.
struct NormalizedText {
    normalized: String,
    lowered: String,
    /// For every byte of `normalized`, the char offset in the original text.
    to_orig_char: Vec<usize>,
}

impl NormalizedText {
    fn build(text: &str) -> Self {
        let mut normalized = String::new();
        let mut to_orig_char = Vec::new();
        let mut pending_ws: Option<usize> = None;
        for (char_idx, c) in text.chars().enumerate() {
            if c.is_whitespace() {
                if !normalized.is_empty() {
                    pending_ws.get_or_insert(char_idx);
                }
                continue;
            }
            if let Some(ws_idx) = pending_ws.take() {
                normalized.push(' ');
                to_orig_char.push(ws_idx);
            }
            normalized.push(c);
            for _ in 0..c.len_utf8() {
                to_orig_char.push(char_idx);
            }
        }
        let lowered = normalized.to_lowercase();
        NormalizedText {
            normalized,
            lowered,
            to_orig_char,
        }
    }

    /// Non-overlapping occurrences of `needle`, left to right, as original
    /// text spans. `needle` must be normalized already.
    fn occurrences(&self, needle: &str, case_insensitive: bool) -> Vec<Span> {
        if needle.is_empty() {
            return Vec::new();
        }
        let haystack = if case_insensitive {
            &self.lowered
        } else {
            &self.normalized
        };
        let needle_owned;
        let needle = if case_insensitive {
            needle_owned = needle.to_lowercase();
            &needle_owned
        } else {
            needle
        };
        // Lowercasing can change byte lengths (e.g. İ); when it does, fall
        // back to matching on the case-preserving form to keep offsets valid.
        if case_insensitive && self.lowered.len() != self.normalized.len() {
            return self.occurrences(needle, false);
        }
        let needle: &str = needle;
        haystack
            .match_indices(needle)
            .map(|(byte_start, m)| {
                let start = self.to_orig_char[byte_start];
                let last_byte = byte_start + m.len() - 1;
                let end = self.to_orig_char[last_byte] + 1;
                Span::new(start, end)
            })
            .collect()
    }
}

/// Grounds generated surfaces onto the text, in generation order.
///
/// Each surface consumes the next unconsumed occurrence of that exact surface;
/// occurrences are counted independently per distinct surface, so distinct
/// surfaces may overlap (nested mentions are fine). Surfaces with no remaining
/// occurrence are dropped and returned separately.
pub fn ground_surfaces(
    surfaces: &[String],
    text: &str,
    config: &GroundingConfig,
) -> (Vec<GroundedSpan>, Vec<String>) {
    let aligned = ground_surfaces_aligned(surfaces, text, config);
    let mut grounded = Vec::new();
    let mut dropped = Vec::new();
    for (surface, result) in surfaces.iter().zip(aligned) {
        match result {
            Some(g) => grounded.push(g),
            None => dropped.push(surface.clone()),
        }
    }
    (grounded, dropped)
}

/// As [`ground_surfaces`], but returns one slot per input surface so callers
/// can keep companion data (labels, cluster membership) aligned.
pub fn ground_surfaces_aligned(
    surfaces: &[String],
    text: &str,
    config: &GroundingConfig,
) -> Vec<Option<GroundedSpan>> {
    let view = NormalizedText::build(text);
    let mut occurrence_cache: HashMap<(String, bool), Vec<Span>> = HashMap::new();
    let mut consumed: HashMap<(String, bool), usize> = HashMap::new();
    let mut results = Vec::with_capacity(surfaces.len());

    for raw_surface in surfaces {
        let surface = normalize_surface(raw_surface);
        if surface.is_empty() {
            results.push(None);
            continue;
        }
        let mut matched = None;
        for case_insensitive in [false, true] {
            if case_insensitive && !config.case_insensitive_fallback {
                break;
            }
            let key = (surface.clone(), case_insensitive);
            let occs = occurrence_cache
                .entry(key.clone())
                .or_insert_with(|| view.occurrences(&surface, case_insensitive));
            let next = consumed.entry(key).or_insert(0);
            if *next < occs.len() {
                matched = Some(GroundedSpan {
                    span: occs[*next],
                    surface: surface.clone(),
                    occurrence_index: *next,
                });
                *next += 1;
                break;
            }
        }
        results.push(matched);
    }

    results
}

/// Inserts `[ ` before and ` ]` after the span, e.g. marking an SRL predicate.
pub fn mark_span(text: &str, span: Span) -> Result<String, GroundingError> {
    let len = char_len(text);
    if span.start > span.end || span.end > len || span.is_empty() {
        return Err(GroundingError::SpanOutOfRange {
            start: span.start,
            end: span.end,
            len,
        });
    }
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len() + 4);
    out.extend(&chars[..span.start]);
    out.push_str("[ ");
    out.extend(&chars[span.start..span.end]);
    out.push_str(" ]");
    out.extend(&chars[span.end..]);
    Ok(out)
}

/// Removes exactly one `[ ... ]` bracket pair inserted by [`mark_span`].
pub fn unmark_span(text: &str) -> String {
    if let Some(open) = text.find("[ ") {
        if let Some(close_rel) = text[open + 2..].find(" ]") {
            let close = open + 2 + close_rel;
            let mut out = String::with_capacity(text.len());
            out.push_str(&text[..open]);
            out.push_str(&text[open + 2..close]);
            out.push_str(&text[close + 2..]);
            return out;
        }
    }
    text.to_string()
}
