use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "specsub", version, about = "Parallel subdivision graphs: spectra, random walks and invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Apply S_k or S_2k, optionally iterated.
    Transform(TransformArgs),
    /// Print predicted and/or computed normalized Laplacian spectra.
    Spectrum(SpectrumArgs),
    /// Print hitting-time, resistance or commute-time tables or single pairs.
    Metrics(MetricsArgs),
    /// Print Kf*, Kemeny's constant and spanning-tree counts.
    Invariants(InvariantsArgs),
    /// Run the verification suite and emit a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Vertex count (first part size for complete-bipartite).
    #[arg(long)]
    pub n: usize,
    /// Second part size for complete-bipartite.
    #[arg(long)]
    pub b: Option<usize>,
    /// Edge probability for random graphs.
    #[arg(long, default_value_t = 0.4)]
    pub p: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Sk,
    S2k,
}

#[derive(Debug, Args)]
pub struct TransformSpec {
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Base graph edge-list file.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub variant: VariantArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Write vertex labels of the last step as JSON.
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub transform: TransformSpec,
    /// Predict the transformed spectrum from the base spectrum.
    #[arg(long)]
    pub predict: bool,
    /// Eigensolve the transformed graph directly.
    #[arg(long)]
    pub compute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricKind {
    Hitting,
    Resistance,
    Commute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub kind: MetricKind,
    /// Work on S_k(G) with this many branches.
    #[arg(long)]
    pub sk: Option<usize>,
    /// Source vertex: an index, or `v:3` / `e:2,b:0` with --sk.
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
    /// Use the printed `+` cross term for spectral hitting times.
    #[arg(long)]
    pub as_published: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub transform: TransformSpec,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// `default` or a JSON corpus file.
    #[arg(long, default_value = "default")]
    pub corpus: String,
    /// Replace the default tolerance of every non-exact claim.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
    /// Evaluate spectral hitting times with the printed `+` cross term.
    #[arg(long)]
    pub as_published: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}
