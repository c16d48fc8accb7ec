//! `structkit align build` / `structkit align merge`.

use crate::jsonl::read_jsonl;
use crate::manifest::ManifestBuilder;
use crate::{AlignBuildArgs, AlignMergeArgs};
use anyhow::Result;
use serde::Serialize;
use structkit::align::{build_cooccurrence_alignment, load_alignment, save_alignment};
use structkit::corpus::PretrainExample;
use structkit::record::TaskRecord;

#[derive(Serialize)]
struct BuildSettings<'a> {
    dataset: &'a str,
}

pub fn build(args: &AlignBuildArgs) -> Result<()> {
    let pretrain_examples: Vec<PretrainExample> = read_jsonl(&args.pretrain)?;
    let pretrain: Vec<(String, Vec<structkit::triple::Triple>)> = pretrain_examples
        .into_iter()
        .map(|e| (e.text, e.triples))
        .collect();
    let downstream: Vec<TaskRecord> = read_jsonl(&args.downstream)?;

    let alignment = build_cooccurrence_alignment(&pretrain, &downstream, &args.dataset)?;
    save_alignment(&alignment, &args.out)?;
    log::info!("built {} alignment entr(ies)", alignment.len());

    ManifestBuilder::new(
        "align build",
        &BuildSettings {
            dataset: &args.dataset,
        },
    )?
    .input(&args.pretrain)
    .input(&args.downstream)
    .output(&args.out)
    .write()?;
    Ok(())
}

#[derive(Serialize)]
struct MergeSettings {
    overlays: usize,
}

pub fn merge(args: &AlignMergeArgs) -> Result<()> {
    let mut merged = load_alignment(&args.base)?;
    for overlay in &args.overlay {
        merged.merge(&load_alignment(overlay)?);
    }
    save_alignment(&merged, &args.out)?;
    log::info!("merged alignment has {} entr(ies)", merged.len());

    let mut manifest = ManifestBuilder::new(
        "align merge",
        &MergeSettings {
            overlays: args.overlay.len(),
        },
    )?
    .input(&args.base)
    .output(&args.out);
    for overlay in &args.overlay {
        manifest = manifest.input(overlay);
    }
    manifest.write()?;
    Ok(())
}
