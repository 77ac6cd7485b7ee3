use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wavedesign", version, about = "Unimodular waveform set design with low (weighted) integrated sidelobe level")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Design one waveform set and write it with its iteration trace.
    Design(DesignArgs),
    /// Correlations and sidelobe levels of an existing waveform file.
    Eval(EvalArgs),
    /// Minimum / average level, time and iterations per length over many seeds.
    Bench(BenchArgs),
    /// Compare the fast paths against the dense reference implementation.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Isl,
    Wisl,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Isl => "isl",
            Algo::Wisl => "wisl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StopKind {
    /// Relative change of the objective, normalized by its initial value.
    RelObj,
    /// Frobenius norm of the iterate difference.
    Frob,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExecKind {
    Seq,
    Par,
}

#[derive(Clone, Debug, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value_t = Algo::Isl)]
    pub algo: Algo,

    /// SQUAREM acceleration (default).
    #[arg(long, overrides_with = "no_accel")]
    pub accel: bool,

    #[arg(long, overrides_with = "accel")]
    pub no_accel: bool,

    #[arg(long, value_enum, default_value_t = StopKind::RelObj)]
    pub stop: StopKind,

    /// Stopping tolerance; 1e-8 for rel-obj, 1e-3 for frob.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,

    /// Lag weights, one per line for lags 0..P-1.
    #[arg(long, conflicts_with = "weight_band")]
    pub weights: Option<PathBuf>,

    /// Unit weights for lags |p| <= B, zero beyond.
    #[arg(long)]
    pub weight_band: Option<usize>,

    /// Parallelism inside one solve.
    #[arg(long, value_enum, default_value_t = ExecKind::Seq)]
    pub exec: ExecKind,
}

impl SolverArgs {
    pub fn accelerate(&self) -> bool {
        !self.no_accel
    }
}

#[derive(Clone, Debug, Args)]
pub struct DesignArgs {
    #[arg(short = 'M', long)]
    pub waveforms: usize,

    #[arg(short = 'P', long)]
    pub length: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[command(flatten)]
    pub solver: SolverArgs,

    /// Waveform CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub trace: Option<PathBuf>,

    /// Write zero for every elapsed time, making outputs byte-reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "in")]
    pub input: PathBuf,

    /// Correlation CSV output.
    #[arg(long)]
    pub corr: Option<PathBuf>,

    /// Also report the weighted level for these lag weights.
    #[arg(long)]
    pub weights: Option<PathBuf>,

    /// Emit only lags in [-L, L].
    #[arg(long)]
    pub lag_window: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub lengths: Vec<usize>,

    #[arg(short = 'M', long, default_value_t = 2)]
    pub waveforms: usize,

    #[arg(long, default_value_t = 10)]
    pub trials: usize,

    /// Trial t uses seed SEED + t.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[command(flatten)]
    pub solver: SolverArgs,

    /// Run trials concurrently. Reported times then include contention.
    #[arg(long)]
    pub concurrent: bool,

    /// Table CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Lower the dense size guards to this M*P.
    #[arg(long)]
    pub max_size: Option<usize>,
}
