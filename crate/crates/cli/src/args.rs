use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mmsym", version, about = "Rank decompositions of the matrix multiplication tensor")]
pub struct Cli {
    /// Output style; `records` prints one JSON object per line.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact residual check; exit 0 iff the residual is zero.
    Verify {
        /// File path or builtin:NAME.
        source: String,
    },
    /// Graphs, fingerprints, orbits and point configurations.
    Analyze(AnalyzeArgs),
    /// Dimensions of invariant subspaces.
    Dims(DimsArgs),
    /// Batch search over seeded restarts.
    Search(SearchArgs),
    /// Apply a group element to a decomposition.
    Transform {
        source: String,
        /// Element word (e.g. `a0conj*pi`) or a JSON element file.
        #[arg(long)]
        element: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Equality as multisets of terms up to per-term scaling; exit 1 if not.
    Equal { a: String, b: String },
    /// Run the session service.
    Serve(ServeArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub source: String,
    /// Write DOT files into DIR, or print them when DIR is omitted.
    #[arg(long, num_args = 0..=1, value_name = "DIR")]
    pub graphs: Option<Option<PathBuf>>,
    #[arg(long)]
    pub charpolys: bool,
    /// Generators: comma-separated words or a file (JSON list or words).
    #[arg(long, value_name = "GENS")]
    pub orbits: Option<String>,
    #[arg(long)]
    pub config: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Z3,
    Zn1,
    Zn1xz3,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: u64,
    /// All three when omitted.
    #[arg(long, value_enum)]
    pub group: Option<Group>,
    /// Confirm by the exact rank of the averaging projector.
    #[arg(long)]
    pub check_projector: bool,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub rank: usize,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long, default_value_t = 1)]
    pub restarts: u64,
    /// First seed; restarts use seed, seed+1, ...
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Schedule file (JSON).
    #[arg(long, conflicts_with = "zeros")]
    pub schedule: Option<PathBuf>,
    /// Zero target of the default sparsify schedule.
    #[arg(long)]
    pub zeros: Option<usize>,
    /// Rounding values, comma separated (e.g. 0,1,-1,1/2,-1/2).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub value_set: Option<Vec<String>>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Where to write the best exact decomposition.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the run report (JSON).
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Debug)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Factor file to start from.
    #[arg(long)]
    pub session: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 11)]
    pub p: usize,
    #[arg(long, default_value_t = 4)]
    pub q: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for decompositions found by RoundAttempt.
    #[arg(long, default_value = "rounds")]
    pub output_dir: PathBuf,
}
