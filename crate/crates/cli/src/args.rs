use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "zext", version, about = "Moments of ζ at the extrema of |ζ(1/2+it)|")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Unset flags fall back to the config file,
/// then to the defaults.
#[derive(Debug, Args, Clone, Default)]
pub struct CommonArgs {
    /// key = value file, or a run.json from an earlier run
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub t_max: Option<f64>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Depth of negative log powers
    #[arg(long = "K", visible_alias = "k", global = true)]
    pub k_depth: Option<usize>,
    #[arg(long, global = true)]
    pub k_max: Option<usize>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_terms: Option<usize>,
    #[arg(long, global = true)]
    pub include_sub_gamma1_lambdas: bool,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, env = "ZEXT_OUTPUT_DIR", global = true)]
    pub output_dir: Option<PathBuf>,
    /// Keep every stride-th row in plotting CSVs
    #[arg(long, global = true)]
    pub stride: Option<usize>,
}

#[derive(Debug, Subcommand, Clone, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// Find γ and λ up to t_max, write CSVs and verify the counts
    Zeros,
    /// Emit coefficient tables as JSON
    Coeffs {
        /// Theorems to tabulate; all when omitted
        #[arg(long, value_enum)]
        theorem: Vec<TheoremArg>,
    },
    /// Write running sums over λ or γ
    Sums {
        #[arg(long, value_enum)]
        observable: ObservableArg,
        /// Use the first this many zeros instead of all up to t_max
        #[arg(long)]
        zeros: Option<usize>,
    },
    /// Compare running sums with predictions and check the envelopes
    Compare {
        #[arg(long, value_enum)]
        observable: ObservableArg,
        #[arg(long)]
        zeros: Option<usize>,
    },
    /// Run the oracle suite
    Selftest {
        /// Skip the 10⁶-scale brute-force sums
        #[arg(long)]
        quick: bool,
        /// Fault injection: perturb this Stieltjes constant by 1e-6
        #[arg(long, hide = true)]
        corrupt_stieltjes: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremArg {
    Thm1,
    Corollary,
    Thm2,
    Thm3,
    Thm4,
    Hugpc,
    Hlpc2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableArg {
    /// ζ⁽ⁿ⁾ at λ
    ZetaDeriv,
    /// ζ at λ
    Zeta,
    /// χ at λ
    ChiLambda,
    /// χ at γ
    ChiGamma,
    /// Z² at λ
    ZSquared,
}
