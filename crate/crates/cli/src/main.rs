//! `capax`: exact capacities and capacity ratios from the command line.
//!
//! Exit codes: 0 success (or claim holds), 1 domain or input error, 2 usage
//! error, 3 claim refuted.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{print_error, Format};

#[derive(Parser, Debug)]
#[command(
    name = "capax",
    version,
    about = "Exact capacities of ellipsoids, polydisks and toric domains"
)]
pub struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for sweeps and grid searches.
    #[arg(long, env = "CAPAX_JOBS", global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

/// Exactly one domain. Ellipsoid and polydisk parameters are comma-separated
/// `p/q` tokens; `inf` is allowed in ellipsoids.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct DomainArg {
    #[arg(long, allow_hyphen_values = true)]
    ellipsoid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    polydisk: Option<String>,
    /// JSON profile file: {"kind": "concave"|"convex", "vertices": [["p/q","r/s"], ...]}.
    #[arg(long)]
    profile: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The k-th capacity c_k.
    Capacity {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        k: usize,
    },
    /// The first `count` capacities of an ellipsoid with their sources.
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        ellipsoid: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Indices k_m where the ellipsoid attains a local maximum of the ratio.
    Kset {
        #[arg(long, allow_hyphen_values = true)]
        ellipsoid: String,
        #[arg(long, default_value_t = 5)]
        max_m: usize,
    },
    /// The capacity ratio c_k / vol^(1/n), exactly through its n-th power.
    Ratio {
        #[command(flatten)]
        domain: DomainArg,
        #[arg(long)]
        k: usize,
    },
    /// Area, volume and capacities of a toric profile.
    Toric {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 10)]
        k_max: usize,
    },
    /// The ellipsoid maximizing the k-th ratio in dimension 2n.
    Search {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check a claim on a finite exact grid.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    claim: Claim,
    #[arg(long)]
    k: usize,
    /// Dimension for the global ellipsoid search.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Largest denominator of a1/a2 in the global ellipsoid search.
    #[arg(long, default_value_t = 30)]
    denom_bound: u64,
    /// Ellipsoid for the local check.
    #[arg(long, allow_hyphen_values = true)]
    ellipsoid: Option<String>,
    /// Perturbation sizes for the local check, comma-separated.
    #[arg(long)]
    eps: Option<String>,
    /// Concave profile files for the concave check; random profiles if absent.
    #[arg(long)]
    profile: Vec<PathBuf>,
    /// Number of random concave profiles.
    #[arg(long, default_value_t = 100)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid preset for the convex sweep.
    #[arg(long, value_enum, default_value_t = GridPreset::Default)]
    grid: GridPreset,
    /// Sweep s and t independently instead of balancing them.
    #[arg(long)]
    unbalanced: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    PropEllipsoidGlobal,
    PropEllipsoidLocal,
    PropToricConcave,
    PropToricConvex,
    Thresholds,
    Crossover,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridPreset {
    Coarse,
    Default,
    Dense,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| commands::run(cli.command)),
            Err(e) => Err(e.into()),
        },
        None => commands::run(cli.command),
    };
    match result {
        Ok(out) => match out.write(format) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => {
                eprintln!("capax: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            print_error(&e);
            ExitCode::from(1)
        }
    }
}
