//! Command-line front door: converts canonical records into encoded examples,
//! runs backends, evaluates generations, mixes corpora, and manages schema
//! alignments. Every command is deterministic given (inputs, config, seed)
//! and writes a manifest sufficient to re-run it.

pub mod commands;
pub mod errors;
pub mod jsonl;
pub mod manifest;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "structkit", version, about = "text-to-triple codec and evaluation toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Convert canonical task records into encoded text-to-triple examples.
    Convert(ConvertArgs),
    /// Decode generations (from a file, the oracle, or an HTTP backend) and
    /// compute the task's metric suite.
    Evaluate(EvaluateArgs),
    /// Mix per-dataset corpora into one deterministic training stream.
    Mix(MixArgs),
    /// Build or merge schema alignments.
    #[command(subcommand)]
    Align(AlignCommand),
    /// Write synthetic demo corpora for every task.
    DemoData(DemoDataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    ZeroShot,
    MultiTask,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Canonical JSON Lines records.
    Canonical,
    /// CoNLL-style token/tag columns (NER only).
    ConllBio,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Input records (canonical JSONL, or CoNLL columns with --from).
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "canonical")]
    pub from: InputFormat,
    /// Keep only records of this task (also names the task for column input).
    #[arg(long)]
    pub task: Option<String>,
    /// Keep only records of this dataset (also names the dataset for column
    /// input).
    #[arg(long)]
    pub dataset: Option<String>,
    #[arg(long, value_enum, default_value = "multi-task")]
    pub mode: ModeArg,
    /// Bracket entity positions in the gold output (multi-task only).
    #[arg(long)]
    pub augment: bool,
    /// Extra dataset registry entries (JSON array file).
    #[arg(long)]
    pub registry: Option<PathBuf>,
    /// Chunk size (whitespace tokens) for coreference documents.
    #[arg(long, default_value_t = 512)]
    pub chunk_size: usize,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// Encoded examples (JSONL from `convert`).
    pub encoded: PathBuf,
    /// Generations JSONL ({"id", "output"} per line).
    #[arg(long, conflicts_with_all = ["oracle", "backend_url"])]
    pub generations: Option<PathBuf>,
    /// Replay each example's gold output (round-trip check).
    #[arg(long)]
    pub oracle: bool,
    /// Generation endpoint; defaults to $STRUCTKIT_BACKEND_URL.
    #[arg(long)]
    pub backend_url: Option<String>,
    /// Schema alignment TSV applied to predictions before decoding.
    #[arg(long)]
    pub alignment: Option<PathBuf>,
    /// JSON overrides for the decode config, e.g.
    /// '{"length_penalty":0.5,"min_target_length":0,"max_target_length":512,"trim_to_first_triple":true}'.
    #[arg(long)]
    pub decode_config: Option<String>,
    /// Token-overlap threshold for the OIE tuple matcher ("exact" for string
    /// equality).
    #[arg(long, default_value = "0.5")]
    pub oie_matcher: String,
    /// Where to save backend generations (JSONL).
    #[arg(long)]
    pub save_generations: Option<PathBuf>,
    /// Concurrent in-flight backend requests.
    #[arg(long, default_value_t = 8)]
    pub jobs: usize,
    #[arg(long)]
    pub report: PathBuf,
}

#[derive(Args, Debug)]
pub struct MixArgs {
    /// Mixture spec JSON: components (dataset, count, path), strategy, seed.
    #[arg(long)]
    pub spec: PathBuf,
    /// Overrides the seed in the mixture file (CLI wins over file defaults).
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum AlignCommand {
    /// Build alignment candidates from co-occurrence statistics.
    Build(AlignBuildArgs),
    /// Layer alignment files; curated entries always win.
    Merge(AlignMergeArgs),
}

#[derive(Args, Debug)]
pub struct AlignBuildArgs {
    /// Pretraining corpus JSONL (text, triples, source, family).
    #[arg(long)]
    pub pretrain: PathBuf,
    /// Downstream records JSONL with gold labels.
    #[arg(long)]
    pub downstream: PathBuf,
    /// Target dataset id recorded in the alignment.
    #[arg(long)]
    pub dataset: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct AlignMergeArgs {
    /// Base alignment TSV.
    #[arg(long)]
    pub base: PathBuf,
    /// Overlays, applied in order (curated entries win).
    #[arg(long, required = true, num_args = 1..)]
    pub overlay: Vec<PathBuf>,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DemoDataArgs {
    #[arg(long, short)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 24)]
    pub count: usize,
}

/// Runs one parsed command; errors bubble up for the binary to report.
pub fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Convert(args) => commands::convert::run(&args),
        Command::Evaluate(args) => commands::evaluate::run(&args),
        Command::Mix(args) => commands::mix::run(&args),
        Command::Align(AlignCommand::Build(args)) => commands::align::build(&args),
        Command::Align(AlignCommand::Merge(args)) => commands::align::merge(&args),
        Command::DemoData(args) => commands::demo::run(&args),
    }
}
