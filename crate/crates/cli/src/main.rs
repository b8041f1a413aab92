//! `probmink`: exact evaluation of Minkowski-type functions on distribution-induced expansions.
//!
//! Exit codes: 0 ok, 1 self-test failure, 2 malformed input, 3 domain error.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "probmink", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quad,
    Mc,
    All,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Output format
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Fractional digits in decimal renderings
    #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    precision: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate M at a digit sequence or a rational point
    Eval {
        /// Distribution: dyadic | geometric:<q> | custom:<p1,...;r>
        #[arg(long)]
        dist: String,
        /// Digit sequence, e.g. "3,1(1,2)"
        #[arg(long, conflicts_with = "x", required_unless_present = "x")]
        digits: Option<String>,
        /// Rational point in [0,1), e.g. 1/4
        #[arg(long)]
        x: Option<String>,
        /// Return a depth-N enclosure instead of an exact value (only with --x)
        #[arg(long, conflicts_with = "digits")]
        enclose: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Map a digit sequence to its point in [0,1)
    Encode {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        digits: String,
        #[command(flatten)]
        common: Common,
    },
    /// Digits of a rational point, plus its periodic form when one is found
    Decode {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        x: String,
        /// Number of digits to extract
        #[arg(long, default_value_t = 20)]
        depth: usize,
        /// Remainder-history budget for period detection
        #[arg(long, default_value_t = probmink::DEFAULT_MAX_STEPS)]
        max_steps: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Classical question-mark function at a rational in [0,1]
    Qmark {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        common: Common,
    },
    /// Integral of M over [0,1]: closed forms, cylinder quadrature, Monte Carlo
    Integral {
        #[arg(long)]
        dist: String,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        #[arg(long, default_value_t = 40)]
        cap: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Graph points (x, M(x)) over cylinder corners, as CSV sorted by x
    Graph {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        cap: u32,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
    },
    /// Cylinder increments and ratio checks along a digit prefix
    Diagnose {
        #[arg(long)]
        dist: String,
        /// Finite digit prefix, e.g. "2,1,3"
        #[arg(long)]
        digits: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the acceptance checks
    Selftest {
        /// Run a single criterion by number
        #[arg(long)]
        only: Option<u8>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { dist, digits, x, enclose, common } => {
            commands::eval(&dist, digits.as_deref(), x.as_deref(), enclose, &common)
        }
        Command::Encode { dist, digits, common } => commands::encode(&dist, &digits, &common),
        Command::Decode { dist, x, depth, max_steps, common } => {
            commands::decode(&dist, &x, depth, max_steps, &common)
        }
        Command::Qmark { x, common } => commands::qmark(&x, &common),
        Command::Integral { dist, method, depth, cap, samples, seed, common } => {
            commands::integral(&dist, method, depth, cap, samples, seed, &common)
        }
        Command::Graph { dist, depth, cap, out, precision } => {
            commands::graph(&dist, depth, cap, out.as_deref(), precision as usize)
        }
        Command::Diagnose { dist, digits, common } => commands::diagnose(&dist, &digits, &common),
        Command::Selftest { only } => commands::selftest(only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
