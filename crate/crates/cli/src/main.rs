//! `ordermono` command-line front end.
//!
//! Exit codes: 0 ok, 1 other failure, 2 parse or usage error, 3 dimension
//! mismatch, 4 invalid multi-utility, 5 infeasible constraint, 6 violated
//! precondition, 7 failed verification, 8 no convergence.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordermono::rational::{self, Rational};
use ordermono::Error;

pub const SEED_ENV: &str = "ORDERMONO_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "ordermono",
    version,
    about = "Monotones of finite preorders and the uncertainty preorder"
)]
pub struct Cli {
    /// Seed for randomized commands. `ORDERMONO_SEED` takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Report entropies (and read entropy levels) in bits instead of nats.
    #[arg(long, global = true)]
    pub bits: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finest monotone class of a function, with the maximal-element
    /// representation flags (ground sets up to 6 elements).
    Classify {
        #[arg(long)]
        preorder: PathBuf,
        #[arg(long)]
        function: PathBuf,
    },
    /// Injective monotone from a multi-utility.
    BuildInjective {
        #[arg(long)]
        preorder: PathBuf,
        #[arg(long)]
        multi: PathBuf,
        #[command(flatten)]
        ratio: RatioArg,
        /// Write the function JSON here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multi-utility by one of several constructions.
    BuildMulti(BuildMultiArgs),
    /// Remove ties between incomparable elements of a strict monotone.
    Eliminate {
        #[arg(long)]
        preorder: PathBuf,
        #[arg(long)]
        function: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Density report for a subset (default: the whole ground set).
    Density {
        #[arg(long)]
        preorder: PathBuf,
        /// Comma-separated element indices.
        #[arg(long)]
        set: Option<String>,
        /// Also search for a minimal dense subset of this kind.
        #[arg(long)]
        greedy: Option<ordermono::DensityKind>,
    },
    /// Maximal elements versus entropy maximizers on `⟨E⟩ = c` over 3 outcomes.
    MaxentAudit {
        /// Energy values, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        energy: String,
        /// Constraint level `c`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        level: Rational,
        #[arg(long, value_parser = parse_rational, default_value = "1/1000")]
        step: Rational,
        /// CSV with one row per grid point.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every maximal and missed distribution, not just counts.
        #[arg(long)]
        full: bool,
    },
    /// Constructive witnesses, each re-verified exactly.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Compare two elements.
    #[command(subcommand)]
    Relate(RelateCommand),
    /// Seeded pair `p ≺ q` built by random transfers.
    RandomPair {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        transfers: usize,
    },
    /// Write the uncertainty preorder on a list of distributions and its
    /// Lorenz multi-utility.
    Lorenz {
        #[arg(long)]
        preorder_out: PathBuf,
        #[arg(long)]
        multi_out: PathBuf,
        /// Distributions, each comma-separated.
        #[arg(required = true, allow_hyphen_values = true)]
        dists: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct RatioArg {
    /// Aggregation ratio in (0, 1/2).
    #[arg(long = "r", value_parser = parse_ratio, default_value = "1/3")]
    pub r: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MultiMethod {
    /// Aggregates of the threshold family and its pairwise swaps.
    Swap,
    /// Lifts of an injective monotone by up-set indicators.
    FromInjective,
    /// Up-set and strict up-set indicators of a Debreu-dense set.
    Dense,
    /// A strict monotone plus strict up-set indicators of an upper-dense set.
    StrictDense,
    /// Indicators of every up-set.
    UpSets,
}

#[derive(Debug, Args)]
pub struct BuildMultiArgs {
    #[arg(long)]
    pub preorder: PathBuf,
    #[arg(long, value_enum)]
    pub method: MultiMethod,
    /// Input multi-utility (swap).
    #[arg(long)]
    pub multi: Option<PathBuf>,
    /// Input function (from-injective, strict-dense).
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Dense subset (dense, strict-dense); defaults to the whole ground set.
    #[arg(long)]
    pub set: Option<String>,
    #[command(flatten)]
    pub ratio: RatioArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// `z` with `x ⋈ z ≺ y` for incomparable `x`, `y`.
    UpperDense { x: String, y: String },
    /// `r` with `p ≺ r ≺ q` on two outcomes.
    OrderDense2 { p: String, q: String },
    /// Two incomparable distributions of (nearly) equal entropy.
    EqualEntropy {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check that a catalyst `r` enables `p ⪯ q` under majorization.
    Trumping { p: String, q: String, r: String },
}

#[derive(Debug, Subcommand)]
pub enum RelateCommand {
    /// Two elements of a preorder file.
    Preorder {
        #[arg(long)]
        preorder: PathBuf,
        x: usize,
        y: usize,
    },
    /// Two points of `[0,1] ∪ [2,3]` under the interval preorder.
    Interval {
        #[arg(value_parser = parse_rational)]
        x: Rational,
        #[arg(value_parser = parse_rational)]
        y: Rational,
    },
    /// Two distributions under the uncertainty preorder.
    Uncertainty {
        p: String,
        q: String,
        /// Also report classical majorization (zero-padded).
        #[arg(long)]
        classical: bool,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_ratio(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s)?;
    if r > rational::int(0) && r < rational::frac(1, 2) {
        Ok(r)
    } else {
        Err(format!(
            "ratio {} must lie in (0, 1/2)",
            rational::format(&r)
        ))
    }
}

pub fn parse_indices(s: &str) -> Result<Vec<usize>, Error> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad index {t:?}: {e}")))
        })
        .collect()
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::OutOfDomain(_)
        | Error::IndexOutOfRange { .. }
        | Error::EmptyDomain
        | Error::EmptyFamily
        | Error::BadRatio(..) => 2,
        Error::DimensionMismatch { .. } => 3,
        Error::NotMultiUtility { .. } => 4,
        Error::Infeasible(_) => 5,
        Error::Precondition(_)
        | Error::WrongClass { .. }
        | Error::NotIncreasing { .. }
        | Error::TooLarge { .. } => 6,
        Error::Verification(_) => 7,
        Error::NoConvergence(_) => 8,
        Error::Io(_) => 1,
    }
}

/// `ORDERMONO_SEED` when set, otherwise `--seed`.
fn effective_seed(flag: u64) -> Result<u64, Error> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = effective_seed(cli.seed).and_then(|seed| commands::run(&cli, seed));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{out}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
