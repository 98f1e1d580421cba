use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use modsearch::{EngineKind, ModelKind};

#[derive(Debug, Parser)]
#[command(
    name = "modsearch",
    version,
    about = "Pattern search over character classes with pluggable scores"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the alignments where the pattern fits the text.
    Search(SearchArgs),
    /// Compare the Karatsuba engine against the naive oracle on random instances.
    Verify(VerifyArgs),
    /// Time both engines over a grid of pattern lengths and report operation counts.
    Bench(BenchArgs),
    /// Write a random text file and pattern file.
    Gen(GenArgs),
}

/// Score model selection shared by `search` and `bench`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "exact", value_parser = parse_model)]
    pub model: ModelKind,
    /// Global local bound for trunc-l1 and bounded-l1.
    #[arg(long)]
    pub tau: Option<u32>,
    /// Score bound for every model except exact.
    #[arg(long)]
    pub b: Option<u32>,
    /// Assignment table for the table model.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    #[arg(long, default_value = "kam", value_parser = parse_engine)]
    pub engine: EngineKind,
    /// Worker threads for segment products; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Largest product length computed by cross products (1 = pure Karatsuba).
    #[arg(long, default_value_t = 4)]
    pub cutoff: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub text: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long)]
    pub json: bool,
    /// Print every alignment with a verdict column.
    #[arg(long)]
    pub all_scores: bool,
    /// Append engine operation counts.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random instances per model kind.
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
    #[arg(long, default_value_t = 512)]
    pub n_max: usize,
    #[arg(long, default_value_t = 16)]
    pub sigma: u32,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 4)]
    pub cutoff: usize,
    /// Corrupt one engine score per instance to exercise mismatch reporting.
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Comma-separated pattern lengths.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64,128")]
    pub m: Vec<usize>,
    /// Fixed text length for every row.
    #[arg(long, conflicts_with = "segments")]
    pub n: Option<usize>,
    /// Text length as a multiple of m, keeping the segment count fixed.
    #[arg(long, default_value_t = 64)]
    pub segments: usize,
    #[arg(long, default_value_t = 8)]
    pub sigma: u32,
    #[arg(long, default_value_t = 3)]
    pub max_class: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long, default_value_t = 4)]
    pub cutoff: usize,
    /// Skip timing the naive engine.
    #[arg(long)]
    pub skip_naive: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 16)]
    pub sigma: u32,
    #[arg(long, default_value_t = 3)]
    pub max_class: usize,
    /// Give about a third of the positions a private bound up to this value.
    #[arg(long)]
    pub private_bounds: Option<u32>,
    #[arg(long, default_value = "exact", value_parser = parse_model)]
    pub model: ModelKind,
    /// Output text file.
    #[arg(long)]
    pub text: PathBuf,
    /// Output pattern file.
    #[arg(long)]
    pub pattern: PathBuf,
    /// Output assignment table (table model only).
    #[arg(long)]
    pub table: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse()
}

fn parse_engine(s: &str) -> Result<EngineKind, String> {
    s.parse()
}
