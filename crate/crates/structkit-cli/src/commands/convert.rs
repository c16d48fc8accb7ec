//! `structkit convert`: canonical records -> encoded examples.

use crate::errors::{CliError, ErrorCode};
use crate::jsonl::{read_jsonl, write_jsonl};
use crate::manifest::ManifestBuilder;
use crate::{ConvertArgs, InputFormat, ModeArg};
use anyhow::{Context, Result};
use serde::Serialize;
use structkit::codec::{encode_record, EncodeMode, EncodedExample};
use structkit::corpus::chunk_document;
use structkit::ingest::{conll03_label, conll_bio_to_records};
use structkit::record::{Gold, TaskKind, TaskRecord};
use structkit::registry::DatasetRegistry;

#[derive(Serialize)]
struct Settings<'a> {
    mode: &'a str,
    augment: bool,
    from: &'a str,
    task: &'a Option<String>,
    dataset: &'a Option<String>,
    chunk_size: usize,
    registry: Option<String>,
}

pub fn run(args: &ConvertArgs) -> Result<()> {
    let mode = match (args.mode, args.augment) {
        (ModeArg::ZeroShot, true) => {
            return Err(CliError::new(
                ErrorCode::InvalidConfig,
                "--augment is only valid with --mode multi-task",
            )
            .into())
        }
        (ModeArg::ZeroShot, false) => EncodeMode::ZeroShot,
        (ModeArg::MultiTask, augment) => EncodeMode::MultiTask { augment },
    };

    if args.chunk_size == 0 {
        return Err(CliError::new(ErrorCode::InvalidConfig, "--chunk-size must be positive").into());
    }

    let mut registry = DatasetRegistry::builtin();
    if let Some(path) = &args.registry {
        registry
            .load_file(path)
            .with_context(|| format!("loading registry {}", path.display()))?;
    }

    let task_filter: Option<TaskKind> = match &args.task {
        Some(name) => Some(
            serde_json::from_value(serde_json::Value::String(name.clone())).map_err(|_| {
                CliError::new(ErrorCode::InvalidConfig, format!("unknown task `{name}`"))
            })?,
        ),
        None => None,
    };

    let mut records: Vec<TaskRecord> = match args.from {
        InputFormat::Canonical => read_jsonl(&args.input)?,
        InputFormat::ConllBio => {
            let dataset = args.dataset.as_deref().ok_or_else(|| {
                CliError::new(ErrorCode::InvalidConfig, "--from conll-bio needs --dataset")
            })?;
            let text = std::fs::read_to_string(&args.input).map_err(|e| {
                CliError::new(ErrorCode::IoError, format!("{}: {e}", args.input.display()))
            })?;
            conll_bio_to_records(&text, dataset, conll03_label)
                .map_err(|e| CliError::new(ErrorCode::ParseError, e.to_string()))?
        }
    };
    if let Some(task) = task_filter {
        records.retain(|r| r.task == task);
    }
    if let Some(dataset) = &args.dataset {
        records.retain(|r| &r.dataset == dataset);
    }

    // Long coreference documents become fixed-size chunks before encoding.
    let mut expanded: Vec<TaskRecord> = Vec::with_capacity(records.len());
    for record in records {
        if record.task == TaskKind::Coreference {
            if let Gold::Clusters { clusters } = &record.gold {
                let (chunks, _stats) = chunk_document(&record.text, clusters, args.chunk_size);
                for chunk in chunks {
                    expanded.push(TaskRecord {
                        task: record.task,
                        dataset: record.dataset.clone(),
                        text: chunk.text,
                        gold: Gold::Clusters {
                            clusters: chunk.clusters,
                        },
                        marked_span: None,
                    });
                }
                continue;
            }
        }
        expanded.push(record);
    }

    let mut examples: Vec<EncodedExample> = Vec::with_capacity(expanded.len());
    for (index, record) in expanded.iter().enumerate() {
        let encoded = encode_record(record, mode, &registry, index)
            .with_context(|| format!("encoding record {index} of {}", args.input.display()))?;
        examples.extend(encoded);
    }

    write_jsonl(&args.out, &examples)?;
    log::info!(
        "encoded {} record(s) into {} example(s)",
        expanded.len(),
        examples.len()
    );

    ManifestBuilder::new(
        "convert",
        &Settings {
            mode: match args.mode {
                ModeArg::ZeroShot => "zero-shot",
                ModeArg::MultiTask => "multi-task",
            },
            augment: args.augment,
            from: match args.from {
                InputFormat::Canonical => "canonical",
                InputFormat::ConllBio => "conll-bio",
            },
            task: &args.task,
            dataset: &args.dataset,
            chunk_size: args.chunk_size,
            registry: args.registry.as_ref().map(|p| p.display().to_string()),
        },
    )?
    .input(&args.input)
    .output(&args.out)
    .write()?;
    Ok(())
}
