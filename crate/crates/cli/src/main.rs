use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use modsqrt::harness::{run_trials, summarize, summary_to_csv, summary_to_json, ExperimentPlan, OutputFormat};
use modsqrt::{parse_integer, solve, Algorithm, Error, PrimeContext};

#[derive(Parser)]
#[command(name = "modsqrt", about = "Square roots modulo an odd prime", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the canonical square root of a value modulo a prime.
    Sqrt {
        /// The odd prime modulus, decimal or 0x-hex.
        #[arg(long)]
        prime: String,
        /// The value whose root is requested, decimal or 0x-hex.
        #[arg(long)]
        value: String,
        /// Solver tag, or `auto` to route by the valuation of p - 1.
        #[arg(long, default_value = "auto")]
        alg: String,
        /// Seed for the solver's randomness; random when omitted.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run seeded solver trials and print a statistics summary.
    Bench {
        /// Prime size in bits.
        #[arg(long)]
        bits: u32,
        /// Requested 2-adic valuation of p - 1.
        #[arg(long)]
        e: u32,
        /// Trials per algorithm.
        #[arg(long)]
        trials: u32,
        /// Experiment seed.
        #[arg(long)]
        seed: u64,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Comma-separated algorithm tags; defaults to the timing-table set.
        #[arg(long)]
        algs: Option<String>,
        /// Generate a fresh prime per trial instead of one per cell.
        #[arg(long)]
        fresh_primes: bool,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().command {
        Command::Sqrt {
            prime,
            value,
            alg,
            seed,
        } => cmd_sqrt(&prime, &value, &alg, seed),
        Command::Bench {
            bits,
            e,
            trials,
            seed,
            format,
            algs,
            fresh_primes,
        } => cmd_bench(bits, e, trials, seed, &format, algs.as_deref(), fresh_primes),
    }
}

fn cmd_sqrt(prime: &str, value: &str, alg: &str, seed: Option<u64>) -> anyhow::Result<ExitCode> {
    let p = parse_integer(prime).context("parsing --prime")?;
    let ctx = PrimeContext::new(p).context("validating --prime")?;
    let a = ctx.element(parse_integer(value).context("parsing --value")?);
    let algorithm = match alg {
        "auto" => None,
        tag => Some(tag.parse::<Algorithm>()?),
    };
    let mut rng = ChaCha20Rng::seed_from_u64(seed.unwrap_or_else(rand::random));
    match solve(&a, algorithm, &mut rng) {
        Ok(outcome) => {
            println!("{}", outcome.root);
            Ok(ExitCode::SUCCESS)
        }
        Err(Error::NonResidue) => {
            eprintln!("error: {}", Error::NonResidue);
            Ok(ExitCode::from(2))
        }
        Err(err @ Error::RetryLimitExceeded(_)) => {
            eprintln!("error: {err}");
            Ok(ExitCode::from(3))
        }
        Err(err) => Err(err.into()),
    }
}

fn cmd_bench(
    bits: u32,
    e: u32,
    trials: u32,
    seed: u64,
    format: &str,
    algs: Option<&str>,
    fresh_primes: bool,
) -> anyhow::Result<ExitCode> {
    let format = match format {
        "csv" => OutputFormat::Csv,
        "json" => OutputFormat::Json,
        other => anyhow::bail!("unknown format `{other}` (expected csv or json)"),
    };
    let algorithms = match algs {
        None => Algorithm::benchmark_set(),
        Some(list) => list
            .split(',')
            .map(|tag| tag.trim().parse::<Algorithm>())
            .collect::<Result<Vec<_>, _>>()?,
    };
    let mut plan = ExperimentPlan::new(bits, e, trials, seed, algorithms);
    plan.format = format;
    plan.fresh_prime_per_trial = fresh_primes;
    let reports = run_trials(&plan)?;
    let rows = summarize(&reports)?;
    let text = match plan.format {
        OutputFormat::Csv => summary_to_csv(&rows)?,
        OutputFormat::Json => summary_to_json(&rows)?,
    };
    print!("{text}");
    if !text.ends_with('\n') {
        println!();
    }
    Ok(ExitCode::SUCCESS)
}
