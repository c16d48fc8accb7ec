//! structkit: a text-to-triple codec and evaluation toolkit for structure
//! prediction tasks.
//!
//! Ten structure prediction tasks (open information extraction, joint entity
//! and relation extraction, named entity recognition, relation classification,
//! semantic role labeling, event extraction, coreference resolution, factual
//! probing, intent detection, dialogue state tracking) are linearized into a
//! shared triple-generation format, generated through a pluggable backend,
//! decoded back into task predictions, and scored with the standard metric for
//! each task. The oracle backend closes the loop without any model: encode,
//! generate, parse, decode, score must reproduce the gold structure exactly.

pub mod align;
pub mod backend;
pub mod codec;
pub mod corpus;
pub mod eval;
pub mod fixtures;
pub mod metrics;
pub mod grounding;
pub mod ingest;
pub mod record;
pub mod registry;
pub mod triple;

pub use codec::{encode_record, EncodeMode, EncodedExample};
pub use record::{TaskKind, TaskRecord};
pub use registry::DatasetRegistry;
pub use triple::{normalize_surface, parse_triples, serialize_triples, Triple};
