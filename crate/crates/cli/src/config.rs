use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Exact Gram matrices of integral trace forms of tame cyclic number
/// fields, from the degree and the factored discriminant.
#[derive(Parser, Debug)]
#[command(name = "cyclic-shape", version, about)]
pub struct Cli {
    /// Process a JSONL batch file: one job object per line, each with a
    /// "cmd" field plus the flags of that subcommand. Outputs one JSON line
    /// per job, in input order.
    #[arg(long, value_name = "FILE", global = true)]
    pub batch: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the trace-zero Gram matrix A(d) (optionally the full trace form)
    Build(BuildArgs),
    /// Compute the coefficient table d -> a_d with provenance
    Coeffs(CoeffsArgs),
    /// Run the invariant suite on one input; exit 1 on the first breach
    Check(CheckArgs),
    /// Exact isometry test between two Gram matrices
    Isometry(CompareArgs),
    /// Shape comparison: isometry up to positive rational scaling
    Shape(CompareArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Degree m >= 2
    #[arg(long)]
    pub m: Option<u64>,

    /// Discriminant as inline JSON {"sign":1,"factors":[[7,6],...]}; a
    /// value not starting with '{' is read as a path to such a file
    #[arg(long, group = "disc_source")]
    pub disc: Option<String>,

    /// Path to a discriminant JSON file
    #[arg(long, group = "disc_source")]
    pub disc_file: Option<PathBuf>,

    /// Raw integer discriminant, trial-factored up to the built-in bound
    #[arg(long, group = "disc_source", allow_hyphen_values = true)]
    pub disc_int: Option<String>,

    /// Validation mode: strict | permissive
    #[arg(long, default_value = "strict")]
    pub mode: String,

    /// Output format: text | json
    #[arg(long, default_value = "text")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Also emit the full m x m trace-form Gram matrix
    #[arg(long)]
    pub full: bool,

    /// Include a lattice fingerprint with theta counts up to this norm
    #[arg(long)]
    pub theta_bound: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Externally computed trace-zero Gram matrix; equality with the built
    /// matrix is checked as the "golden identity" invariant
    #[arg(long)]
    pub compare: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Left Gram matrix JSON file (alternative to --m/--disc)
    #[arg(long)]
    pub left: Option<PathBuf>,

    /// Right Gram matrix JSON file
    #[arg(long)]
    pub right: Option<PathBuf>,

    /// Comparison target: a matrix JSON file, or a discriminant JSON file
    /// (built with the same m and mode)
    #[arg(long)]
    pub compare: Option<PathBuf>,
}
