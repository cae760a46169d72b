use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use regd::error::{CliError, Result};
use regd::{analyze, load_csv, parse_formula, render_text, simulate, to_json};

#[derive(Parser)]
#[command(name = "regd", version, about = "Cohen's d for regression models with covariates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate d, its bias-corrected version and confidence intervals.
    Analyze {
        #[arg(long)]
        data: PathBuf,
        /// e.g. "G3 ~ address + traveltime + failures"
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = ",")]
        delimiter: String,
        /// Group level coded 0 (default: the smaller level).
        #[arg(long)]
        reference: Option<String>,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Skip rows with missing values in the used columns.
        #[arg(long)]
        drop_missing: bool,
    },
    /// Monte Carlo check of bias, variance and interval coverage.
    Simulate {
        #[arg(long)]
        n0: usize,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated β₀, β₁, β₂, …
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value_t = 10_000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draw covariates once and reuse them.
        #[arg(long)]
        fixed_design: bool,
        /// Run replications on all cores; the report is identical.
        #[arg(long)]
        parallel: bool,
    },
}

fn delimiter_byte(text: &str) -> Result<u8> {
    match text.as_bytes() {
        [b] => Ok(*b),
        _ if text == "\\t" => Ok(b'\t'),
        _ => Err(CliError::Usage(format!(
            "--delimiter must be a single byte, got `{text}`"
        ))),
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Analyze {
            data,
            formula,
            delimiter,
            reference,
            alpha,
            format,
            drop_missing,
        } => {
            let mut spec = parse_formula(&formula)?;
            spec.reference_level = reference;
            let dataset = load_csv(&data, delimiter_byte(&delimiter)?)?;
            let report = analyze(&dataset, &spec, alpha, drop_missing)?;
            Ok(match format {
                Format::Json => to_json(&report) + "\n",
                Format::Text => render_text(&report),
            })
        }
        Command::Simulate {
            n0,
            n1,
            k,
            beta,
            sigma,
            alpha,
            reps,
            seed,
            fixed_design,
            parallel,
        } => {
            let beta = simulate::parse_beta(&beta)?;
            let cfg = simulate::config(n0, n1, k, beta, sigma, alpha, reps, seed, fixed_design)?;
            let report = simulate::run(cfg, parallel)?;
            Ok(to_json(&report) + "\n")
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
