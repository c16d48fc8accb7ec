//! Native task records: one annotated example of one of the ten structure
//! prediction tasks, in the canonical JSON Lines schema.

use crate::grounding::Span;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The ten downstream structure prediction tasks, with event extraction split
/// into its trigger and argument passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    Oie,
    RelationClassification,
    FactualProbe,
    JointEntityRelation,
    Ner,
    Srl,
    EventTrigger,
    EventArgument,
    Coreference,
    DialogueStateTracking,
    IntentDetection,
}

pub const ALL_TASK_KINDS: [TaskKind; 11] = [
    TaskKind::Oie,
    TaskKind::RelationClassification,
    TaskKind::FactualProbe,
    TaskKind::JointEntityRelation,
    TaskKind::Ner,
    TaskKind::Srl,
    TaskKind::EventTrigger,
    TaskKind::EventArgument,
    TaskKind::Coreference,
    TaskKind::DialogueStateTracking,
    TaskKind::IntentDetection,
];

/// The pretraining-task family a downstream task maps onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskFamily {
    Entity,
    Relation,
    Triple,
    EntityAndRelation,
}

/// The unit one encoded example asks the backend to predict. Joint entity and
/// relation extraction fans out into one `Entity` and one `Relation` example.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PredictionUnit {
    Entity,
    Relation,
    Triple,
}

impl PredictionUnit {
    /// The zero-shot input prefix for this unit.
    pub fn prefix(&self) -> &'static str {
        match self {
            PredictionUnit::Entity => "entity:",
            PredictionUnit::Relation => "relation:",
            PredictionUnit::Triple => "triple:",
        }
    }
}

impl fmt::Display for PredictionUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictionUnit::Entity => f.write_str("entity"),
            PredictionUnit::Relation => f.write_str("relation"),
            PredictionUnit::Triple => f.write_str("triple"),
        }
    }
}

impl TaskKind {
    pub fn family(&self) -> TaskFamily {
        match self {
            TaskKind::Oie => TaskFamily::Triple,
            TaskKind::RelationClassification => TaskFamily::Relation,
            TaskKind::JointEntityRelation => TaskFamily::EntityAndRelation,
            TaskKind::FactualProbe
            | TaskKind::Ner
            | TaskKind::Srl
            | TaskKind::EventTrigger
            | TaskKind::EventArgument
            | TaskKind::Coreference
            | TaskKind::DialogueStateTracking
            | TaskKind::IntentDetection => TaskFamily::Entity,
        }
    }

    /// The prediction units this task fans out into, in encode order.
    pub fn units(&self) -> Vec<PredictionUnit> {
        match self.family() {
            TaskFamily::Entity => vec![PredictionUnit::Entity],
            TaskFamily::Relation => vec![PredictionUnit::Relation],
            TaskFamily::Triple => vec![PredictionUnit::Triple],
            TaskFamily::EntityAndRelation => {
                vec![PredictionUnit::Entity, PredictionUnit::Relation]
            }
        }
    }
}

/// A typed text span, e.g. an entity mention with its type or an argument
/// with its role.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypedSpan {
    pub start: usize,
    pub end: usize,
    pub label: String,
}

impl TypedSpan {
    pub fn new(start: usize, end: usize, label: impl Into<String>) -> Self {
        TypedSpan {
            start,
            end,
            label: label.into(),
        }
    }

    pub fn span(&self) -> Span {
        Span::new(self.start, self.end)
    }
}

/// A typed relation between two spans of the text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpanRelation {
    pub head: Span,
    pub label: String,
    pub tail: Span,
}

/// One predicate (or event trigger) together with its arguments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateFrame {
    pub predicate: Span,
    pub arguments: Vec<TypedSpan>,
}

/// Task-specific gold structure. The `kind` tag makes the JSONL self-describing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gold {
    /// NER entities and event triggers.
    TypedSpans { spans: Vec<TypedSpan> },
    /// SRL predicates / event triggers with their arguments, pre-expansion.
    Frames { frames: Vec<PredicateFrame> },
    /// Joint entity and relation extraction.
    EntitiesRelations {
        entities: Vec<TypedSpan>,
        relations: Vec<SpanRelation>,
    },
    /// Relation classification: a single labeled span pair.
    Relation {
        head: Span,
        label: String,
        tail: Span,
    },
    /// Open information extraction tuples, `[arg1, predicate, arg2]`.
    OpenTuples { tuples: Vec<Vec<String>> },
    /// Coreference mention clusters.
    Clusters { clusters: Vec<Vec<Span>> },
    /// Dialogue state: slot name to value, absent information as "not given".
    Slots { values: BTreeMap<String, String> },
    /// Intent detection label.
    Intent { label: String },
    /// Factual probe query with its oracle context sentences.
    FactualQuery {
        subject: String,
        relation: String,
        object: String,
        context: Vec<String>,
    },
}

/// A native annotated example in the canonical JSON Lines schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub task: TaskKind,
    pub dataset: String,
    pub text: String,
    pub gold: Gold,
    /// SRL predicate or event trigger to mark in the input, once expanded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked_span: Option<Span>,
}
