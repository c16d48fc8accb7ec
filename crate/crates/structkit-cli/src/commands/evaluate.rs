//! `structkit evaluate`: join generations with encoded examples, decode, and
//! score.

use crate::errors::{CliError, ErrorCode};
use crate::jsonl::{read_jsonl, write_json_pretty, write_jsonl};
use crate::manifest::ManifestBuilder;
use crate::EvaluateArgs;
use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use structkit::backend::{
    default_decode_config, run_batch, DecodeConfig, GenerationBackend, HttpBackend,
    HttpBackendConfig, OracleBackend,
};
use structkit::codec::EncodedExample;
use structkit::eval::{evaluate_grouped, join_generations, EvalConfig, EvalError};
use structkit::metrics::TupleMatcher;

#[derive(Debug, Serialize, Deserialize)]
struct GenerationLine {
    id: String,
    output: String,
}

#[derive(Serialize)]
struct Settings<'a> {
    source: String,
    alignment: Option<String>,
    decode_config: &'a Option<String>,
    oie_matcher: &'a str,
    jobs: usize,
}

fn parse_matcher(arg: &str) -> Result<TupleMatcher> {
    if arg == "exact" {
        return Ok(TupleMatcher::Exact);
    }
    let threshold: f64 = arg.parse().map_err(|_| {
        CliError::new(
            ErrorCode::InvalidConfig,
            format!("--oie-matcher must be `exact` or a threshold in [0,1], got `{arg}`"),
        )
    })?;
    if !(0.0..=1.0).contains(&threshold) {
        return Err(CliError::new(
            ErrorCode::InvalidConfig,
            format!("--oie-matcher threshold {threshold} outside [0,1]"),
        )
        .into());
    }
    Ok(TupleMatcher::TokenOverlap { threshold })
}

fn generate_all(
    examples: &[EncodedExample],
    backend: &dyn GenerationBackend,
    override_config: Option<DecodeConfig>,
    jobs: usize,
) -> Result<HashMap<String, String>> {
    let jobs_list: Vec<(EncodedExample, DecodeConfig)> = examples
        .iter()
        .map(|example| {
            let config = override_config.unwrap_or_else(|| {
                example
                    .hints
                    .task
                    .and_then(|task| {
                        default_decode_config(task, example.hints.unit, &example.hints.dataset)
                            .ok()
                    })
                    .unwrap_or(DecodeConfig {
                        length_penalty: 0.8,
                        min_target_length: 0,
                        max_target_length: 512,
                        trim_to_first_triple: false,
                    })
            });
            (example.clone(), config)
        })
        .collect();

    let mut generations = HashMap::new();
    for (id, result) in run_batch(&jobs_list, backend, jobs) {
        let output = result.with_context(|| format!("generating example {id}"))?;
        generations.insert(id, output);
    }
    Ok(generations)
}

pub fn run(args: &EvaluateArgs) -> Result<()> {
    let examples: Vec<EncodedExample> = read_jsonl(&args.encoded)?;
    if examples.is_empty() {
        return Err(CliError::new(
            ErrorCode::ParseError,
            format!("{} contains no examples", args.encoded.display()),
        )
        .into());
    }

    let decode_override: Option<DecodeConfig> = match &args.decode_config {
        Some(json) => Some(serde_json::from_str(json).map_err(|e| {
            CliError::new(ErrorCode::InvalidConfig, format!("--decode-config: {e}"))
        })?),
        None => None,
    };

    let (generations, source) = if let Some(path) = &args.generations {
        let lines: Vec<GenerationLine> = read_jsonl(path)?;
        let mut map = HashMap::new();
        for line in lines {
            if map.insert(line.id.clone(), line.output).is_some() {
                return Err(
                    EvalError::IdMismatch {
                        detail: format!("duplicate generation id `{}`", line.id),
                    }
                    .into(),
                );
            }
        }
        (map, format!("file:{}", path.display()))
    } else if args.oracle {
        let oracle = OracleBackend::from_examples(examples.iter());
        (
            generate_all(&examples, &oracle, decode_override, args.jobs)?,
            "oracle".to_string(),
        )
    } else {
        let url = args
            .backend_url
            .clone()
            .or_else(|| std::env::var(structkit::backend::http::BACKEND_URL_ENV).ok())
            .ok_or_else(|| {
                CliError::new(
                    ErrorCode::InvalidConfig,
                    "need one of --generations, --oracle, or --backend-url (or STRUCTKIT_BACKEND_URL)",
                )
            })?;
        let backend = HttpBackend::new(HttpBackendConfig::new(url))?;
        (
            generate_all(&examples, &backend, decode_override, args.jobs)?,
            backend.backend_id().to_string(),
        )
    };

    if let Some(path) = &args.save_generations {
        let mut lines: Vec<GenerationLine> = generations
            .iter()
            .map(|(id, output)| GenerationLine {
                id: id.clone(),
                output: output.clone(),
            })
            .collect();
        lines.sort_by(|a, b| a.id.cmp(&b.id));
        write_jsonl(path, &lines)?;
    }

    let alignment = match &args.alignment {
        Some(path) => Some(structkit::align::load_alignment(path)?),
        None => None,
    };

    let inputs = join_generations(examples, &generations)?;
    let config = EvalConfig {
        oie_matcher: parse_matcher(&args.oie_matcher)?,
        alignment,
        decode_config: decode_override,
    };
    let reports = evaluate_grouped(inputs, &config)?;
    for report in &reports {
        for (name, value) in &report.metrics {
            log::info!(
                "{:?}/{} {name} = {:.4}",
                report.task,
                report.dataset,
                value.headline()
            );
        }
    }
    if reports.len() == 1 {
        write_json_pretty(&args.report, &reports[0])?;
    } else {
        write_json_pretty(&args.report, &reports)?;
    }

    let mut manifest = ManifestBuilder::new(
        "evaluate",
        &Settings {
            source,
            alignment: args.alignment.as_ref().map(|p| p.display().to_string()),
            decode_config: &args.decode_config,
            oie_matcher: &args.oie_matcher,
            jobs: args.jobs,
        },
    )?
    .input(&args.encoded)
    .output(&args.report);
    if let Some(path) = &args.generations {
        manifest = manifest.input(path);
    }
    manifest.write()?;
    Ok(())
}
