use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "necrotica",
    version,
    about = "Radial stationary states and bifurcation spectra of a necrotic-core tumor model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Solve for R and σ̃; writes solution.json and the profile table.
    Solve,
    /// Mode table n = 0..n_max.
    Spectrum,
    /// n*, n** and the admissible even bifurcation points.
    Bifurcate,
    /// First-order boundary shapes and linearized fields for one even mode.
    Branch,
    /// Run every identity and lemma check; nonzero exit on any failure.
    Verify,
    /// Repeat a task over the Cartesian product of the listed parameters.
    Sweep {
        #[arg(long, value_enum, default_value_t = Task::Solve)]
        task: Task,
        /// Replace the ρ list by a bisection on ρ hitting this σ̃.
        #[arg(long)]
        target_sigma_tilde: Option<f64>,
    },
    /// Scaled Bessel table `n,s,ln_i_hat,ln_k_hat` for oracle comparison.
    #[command(hide = true)]
    DumpBessel {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Solve,
    Spectrum,
    Bifurcate,
    Branch,
    Verify,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Solve => "solve",
            Task::Spectrum => "spectrum",
            Task::Bifurcate => "bifurcate",
            Task::Branch => "branch",
            Task::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every command. Parameter flags take comma lists, which
/// only `sweep` accepts with more than one value.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub rho: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub beta: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',', allow_negative_numbers = true)]
    pub sigma_under: Option<Vec<f64>>,
    /// Proliferation intensity for pressure output (default 1; `branch`
    /// defaults to μ_n).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Mode index for `branch`.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    #[arg(long, global = true)]
    pub n_max: Option<u32>,
    /// Consecutive monotone modes required to certify n*.
    #[arg(long, global = true)]
    pub window: Option<u32>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub theta_grid: Option<usize>,
    /// Radial samples for profile and field tables.
    #[arg(long, global = true)]
    pub r_grid: Option<usize>,
    /// Sweep worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Table format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}
