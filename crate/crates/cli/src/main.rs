//! `khinchin`: continued fraction statistics of algebraic numbers.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 when an expansion,
//! certification or output step fails.

mod artifact;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use khinchin_core::{LogBase, NumberSpec, SpeedMetric};

use config::{parse_log_base, parse_metric, parse_number, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Failure(_) => 2,
        }
    }
}

/// Computation errors are failures; argument problems are caught earlier.
impl From<khinchin_core::Error> for CliError {
    fn from(e: khinchin_core::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "khinchin", version, about = "Continued fraction statistics of algebraic numbers")]
pub struct Cli {
    /// JSON file with default settings; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct Numbers {
    /// Number spec as JSON, e.g. '{"kind":"nthroot","radicand":2,"degree":3}'. Repeatable.
    #[arg(long = "number", value_parser = parse_number)]
    numbers: Vec<NumberSpec>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified continued fraction coefficients.
    Expand {
        #[command(flatten)]
        numbers: Numbers,
        /// Number of terms including b0.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// KLD, chi-square, means, K(a) and Bailey's C over the first n coefficients.
    Analyze {
        #[command(flatten)]
        numbers: Numbers,
        /// Coefficients analysed after b0.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: Option<u64>,
        /// Log base of the KLD columns.
        #[arg(long, value_parser = parse_log_base)]
        kld_base: Option<LogBase>,
        #[command(flatten)]
        output: Output,
    },
    /// Bucket counts of approximation speed over the first n convergents.
    Speed {
        #[command(flatten)]
        numbers: Numbers,
        /// Number of convergents.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        terms: Option<u64>,
        /// khinchin, newspeed, adams or abc. Repeatable.
        #[arg(long = "metric", value_parser = parse_metric)]
        metrics: Vec<SpeedMetric>,
        /// Increasing bucket boundaries.
        #[arg(long, value_delimiter = ',')]
        boundaries: Option<Vec<f64>>,
        #[arg(long, value_parser = parse_log_base)]
        log_base: Option<LogBase>,
        #[command(flatten)]
        output: Output,
    },
    /// The ratio r_n = B(n)/(B(n-1) log B(n-1)) over an index range.
    Rn {
        #[command(flatten)]
        numbers: Numbers,
        /// First and last index.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        range: Option<Vec<usize>>,
        #[arg(long, value_parser = parse_log_base)]
        log_base: Option<LogBase>,
        #[command(flatten)]
        output: Output,
    },
    /// Statistics of pseudo-random baselines.
    Random {
        /// Generator seed. Repeatable.
        #[arg(long = "seed")]
        seeds: Vec<u64>,
        /// Decimal digits per random number.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: Option<u32>,
        /// Coefficients analysed; defaults to all certified ones.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        terms: Option<u64>,
        /// Draw coefficients straight from the Gauss-Kuzmin law instead of decimals.
        #[arg(long)]
        sampler: bool,
        #[arg(long, value_parser = parse_log_base)]
        kld_base: Option<LogBase>,
        #[command(flatten)]
        output: Output,
    },
    /// Geometric mean of the Gauss-Kuzmin law truncated at maxn.
    Kc {
        /// Truncation point. Repeatable.
        #[arg(long, required = true, value_parser = clap::value_parser!(u64).range(1..))]
        maxn: Vec<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Recompute published tables and diff against them.
    Reproduce {
        /// Table number 1..=7; all tables when omitted. Repeatable.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=7))]
        table: Vec<u8>,
        /// Output directory.
        #[arg(long, short, default_value = "reproduce")]
        out: PathBuf,
    },
}

/// Usage line of the subcommand named in argv, or of the whole tool.
fn usage() -> String {
    let mut cmd = Cli::command();
    cmd.build();
    let sub = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    match sub.as_deref().and_then(|s| cmd.find_subcommand_mut(s)) {
        Some(sub) => sub.render_usage().to_string(),
        None => cmd.render_usage().to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.render().to_string();
            eprint!("{text}");
            if !text.contains("Usage:") {
                eprintln!("\n{}", usage());
            }
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}\n\n{}", usage()),
                CliError::Failure(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
