use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fmanifold::poly::parse_rational;
use fmanifold::sampling::DEFAULT_SEED;
use fmanifold::Rational;
use fmanifold_cli::runner::DEFAULT_POINTS;
use fmanifold_cli::{emit_report, parse_spec, run_chain, run_dualize, run_verify, Format, RunOptions};

#[derive(Parser)]
#[command(name = "fmanifold")]
#[command(about = "Exact verification of Frobenius manifolds, their duals and F-algebroids")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Frobenius axioms, Euler conditions and F-algebroid axioms
    Verify {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Build the dual product and check the duality map at sampled points
    Dualize {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Include the dual structure constants in the report
        #[arg(long)]
        emit_dual: bool,
        /// Also check at this point, written as comma-separated rationals
        #[arg(long, value_parser = parse_point)]
        at: Vec<Vec<Rational>>,
    },
    /// Check the chain of dual products built from the chain identities
    Chain {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        /// Number of chain stages; defaults to the number of identities
        #[arg(long)]
        depth: Option<usize>,
        /// Also check at this point, written as comma-separated rationals
        #[arg(long, value_parser = parse_point)]
        at: Vec<Vec<Rational>>,
    },
}

#[derive(Args)]
struct Common {
    /// Number of sampled rational points
    #[arg(long, default_value_t = DEFAULT_POINTS)]
    points: usize,
    /// Seed for every random choice
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

fn parse_point(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',')
        .map(|c| match parse_rational(c.trim()) {
            Ok(Some(q)) => Ok(q),
            Ok(None) => Err(format!("invalid rational {c:?}")),
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (file, common, mut opts, run): (_, _, _, fn(&_, &_) -> _) = match cli.command {
        Command::Verify { file, common } => (file, common, RunOptions::default(), run_verify),
        Command::Dualize { file, common, emit_dual, at } => {
            (file, common, RunOptions { emit_dual, at, ..RunOptions::default() }, run_dualize)
        }
        Command::Chain { file, common, depth, at } => (file, common, RunOptions { depth, at, ..RunOptions::default() }, run_chain),
    };
    opts.points = common.points;
    opts.seed = common.seed;
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let spec = match parse_spec(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let report = match run(&spec, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match common.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Machine => Format::Machine,
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(&emit_report(&report, format)).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
