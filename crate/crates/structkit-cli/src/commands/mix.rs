//! `structkit mix`: deterministic corpus mixing over raw JSONL lines, so the
//! output is byte-identical for a given spec and seed.

use crate::errors::{CliError, ErrorCode};
use crate::jsonl::{read_lines, write_atomic};
use crate::manifest::ManifestBuilder;
use crate::MixArgs;
use anyhow::Result;
use std::collections::BTreeMap;
use structkit::corpus::{mix_examples, MixtureSpec};

pub fn run(args: &MixArgs) -> Result<()> {
    let spec_text = std::fs::read_to_string(&args.spec).map_err(|e| {
        CliError::new(ErrorCode::IoError, format!("{}: {e}", args.spec.display()))
    })?;
    let mut spec: MixtureSpec = serde_json::from_str(&spec_text)
        .map_err(|e| CliError::parse(&args.spec, e.line(), e))?;
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    spec.validate()?;

    let mut sources: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut input_paths = Vec::new();
    for component in &spec.components {
        let path = component.path.as_ref().ok_or_else(|| {
            CliError::new(
                ErrorCode::InvalidConfig,
                format!("component `{}` has no path", component.dataset),
            )
        })?;
        let path = std::path::PathBuf::from(path);
        sources.insert(component.dataset.clone(), read_lines(&path)?);
        input_paths.push(path);
    }

    let mixed = mix_examples(&spec, &sources)?;
    let mut out = String::new();
    for line in &mixed {
        out.push_str(line);
        out.push('\n');
    }
    write_atomic(&args.out, out.as_bytes())?;
    log::info!("mixed {} example(s) from {} source(s)", mixed.len(), sources.len());

    let mut manifest = ManifestBuilder::new("mix", &spec)?
        .seed(spec.seed)
        .output(&args.out)
        .input(&args.spec);
    for path in &input_paths {
        manifest = manifest.input(path);
    }
    manifest.write()?;
    Ok(())
}
