//! `hypermaps`: counts, partition functions, quantum curves and topological recursion
//! for a-hypermaps from the command line.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypermaps::genfun::ZbarRoute;

#[derive(Parser, Debug)]
#[command(name = "hypermaps", version, about = "Exact a-hypermap enumeration and topological recursion")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Hyperedge size a (largest a for `check` and `report`)
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub a: u32,
    /// Truncation order: x-order for series, Σb window for expansions
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: Option<u32>,
    /// Largest total perimeter Σb enumerated by brute force
    #[arg(long, global = true, default_value_t = 12)]
    pub degree_bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Directory for cached results; caching is off without it
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// Also run the refinement and floating-point cross-checks
    NumericCrosscheck,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteArg {
    Closed,
    Disconnected,
    ExpConnected,
    Recursion,
}

impl From<RouteArg> for ZbarRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Closed => ZbarRoute::Closed,
            RouteArg::Disconnected => ZbarRoute::Disconnected,
            RouteArg::ExpConnected => ZbarRoute::ExpConnected,
            RouteArg::Recursion => ZbarRoute::Recursion,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weighted counts M_{g,n}(b) by enumeration
    Enumerate {
        #[arg(long, default_value_t = 0)]
        g: u32,
        /// Number of faces; must match --b when both are given
        #[arg(long)]
        n: Option<usize>,
        /// Face perimeters, comma separated
        #[arg(long, value_delimiter = ',', required_unless_present = "all_upto")]
        b: Vec<u32>,
        /// Every type with Σb up to this bound (perimeters non-decreasing)
        #[arg(long, conflicts_with = "b")]
        all_upto: Option<u32>,
    },
    /// M_{0,1}(b) by the closed formula, cross-checked against the N_b recursion
    ClosedForm {
        #[arg(long, value_delimiter = ',', required_unless_present = "upto")]
        b: Vec<u32>,
        #[arg(long, conflicts_with = "b")]
        upto: Option<u32>,
    },
    /// Coefficients of the modified partition function
    Partition {
        #[arg(long, value_enum, default_value_t = RouteArg::Closed)]
        route: RouteArg,
    },
    /// Checks the quantum curve on Z̄ from every route
    Qcurve,
    /// The correlator ω_{g,n} by topological recursion
    Toprec {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
    /// Expansion of ω_{g,n} at x = ∞, reported as M = c / Πb
    Expand {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
        /// A single perimeter vector instead of the whole window
        #[arg(long, value_delimiter = ',')]
        b: Vec<u32>,
    },
    /// Runs the consistency checks and prints a summary
    Check(CheckArgs),
    /// Runs the consistency checks and prints the full JSON report
    Report(CheckArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CheckArgs {
    /// Leave out everything that needs topological recursion
    #[arg(long)]
    pub no_specrec: bool,
    /// Σb window of the expansion checks
    #[arg(long)]
    pub window: Option<u32>,
    /// Replace one count, as a negative control: a:g:b1,b2,..:value
    #[arg(long)]
    pub inject_fault: Option<String>,
}

/// Outcome of a command other than success.
#[derive(Debug)]
pub enum Failure {
    /// a check ran and did not pass
    Check(String),
    /// bad input or a resource limit
    Usage(String),
    /// the reader closed stdout early
    Closed,
}

impl From<hypermaps::Error> for Failure {
    fn from(e: hypermaps::Error) -> Self {
        match e {
            hypermaps::Error::Invariant(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = std::io::stdout().lock();
    match commands::run(&cli, &mut out) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
