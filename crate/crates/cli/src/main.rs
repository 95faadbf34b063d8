//! `qhyper`: run identity suites, evaluate polynomial families and expand
//! generating functions, all in exact rational arithmetic.

mod config;
mod eval;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qhyper::verify::{run_suite, suite_names};

use config::{Format, Layer};

#[derive(Parser)]
#[command(name = "qhyper", version, about = "Exact q-series evaluation and identity checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite and write a report.
    Check(CheckArgs),
    /// Evaluate a polynomial family at a rational point.
    Eval(eval::EvalArgs),
    /// Print the coefficients of a series in t.
    Expand(eval::ExpandArgs),
    /// List the registered suites.
    List,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    /// Truncation order N for series in t.
    #[arg(long)]
    order: Option<usize>,
    /// Numeric sums stop below 2^-BITS.
    #[arg(long)]
    epsilon_bits: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long = "report", alias = "report-path")]
    report_path: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON file with any of the fields above.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn usage_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    let file = match args.config.as_deref().map(config::load_file).transpose() {
        Ok(f) => f,
        Err(e) => return usage_error(format!("{e:#}")),
    };
    let flags = Layer {
        suite: args.suite,
        trials: args.trials,
        order: args.order,
        epsilon_bits: args.epsilon_bits,
        seed: args.seed,
        report_path: args.report_path,
        format: args.format,
    };
    let cfg = match config::resolve(flags, file, std::env::var(config::SEED_ENV).ok()) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let reports = match run_suite(&cfg.suite, &cfg.run) {
        Ok(r) => r,
        Err(e) => return usage_error(format!("{e}; known suites: {}", suite_names().join(", "))),
    };
    let text = match cfg.format {
        Format::Json => report::to_json(&cfg.suite, &cfg.run, &reports),
        Format::Tsv => report::to_tsv(&reports),
        Format::Human => report::to_human(&cfg.suite, &cfg.run, &reports),
    };
    match &cfg.report_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return usage_error(format!("writing {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Eval(args) => match eval::cmd_eval(&args) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(format!("{e:#}")),
        },
        Command::Expand(args) => match eval::cmd_expand(&args) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(format!("{e:#}")),
        },
        Command::List => {
            for name in suite_names() {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
    }
}
