//! Trial runner and statistics: seeded experiment plans, per-trial reports,
//! and grouped summaries with binomial confidence intervals.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeContext;
use crate::prime::gen_prime_with_valuation;
use crate::solve::{solve, Algorithm};

/// Output encoding for summaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One benchmark cell: a prime shape (bits, e), a trial count, a seed, and
/// the algorithms to compare.
#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub bits: u32,
    pub e: u32,
    pub trials: u32,
    pub seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub format: OutputFormat,
    /// Generate a fresh prime per trial instead of one per cell.
    pub fresh_prime_per_trial: bool,
}

impl ExperimentPlan {
    pub fn new(bits: u32, e: u32, trials: u32, seed: u64, algorithms: Vec<Algorithm>) -> Self {
        ExperimentPlan {
            bits,
            e,
            trials,
            seed,
            algorithms,
            format: OutputFormat::Csv,
            fresh_prime_per_trial: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits < 8 {
            return Err(Error::InvalidPlan("bits must be at least 8".into()));
        }
        if self.e < 1 {
            return Err(Error::InvalidPlan("e must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::InvalidPlan("trials must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidPlan("no algorithms selected".into()));
        }
        Ok(())
    }
}

/// Outcome of a single solver invocation inside a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub algorithm: Algorithm,
    pub success_first_try: bool,
    pub retries: u32,
    pub elapsed_ns: u64,
    pub prime_bits: u32,
    pub e: u32,
}

/// Summary of one (algorithm, bits, e) group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: String,
    pub bits: u32,
    pub e: u32,
    pub trials: u64,
    pub success_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_ns: f64,
    pub median_ns: f64,
}

const DOMAIN_PRIME: u64 = 1;
const DOMAIN_TRIAL: u64 = 2;

/// Independent stream keyed on (seed, domain, a, b); used for cell prime
/// generation and for per-trial randomness so trials can run in parallel
/// and still replay exactly.
fn derive_rng(seed: u64, domain: u64, a: u64, b: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    key[16..24].copy_from_slice(&a.to_le_bytes());
    key[24..32].copy_from_slice(&b.to_le_bytes());
    ChaCha20Rng::from_seed(key)
}

fn run_one_trial(
    plan: &ExperimentPlan,
    cell_prime: Option<&PrimeContext>,
    alg_index: usize,
    alg: Algorithm,
    trial: u32,
) -> Result<TrialReport> {
    let ctx = match cell_prime {
        Some(ctx) => ctx.clone(),
        None => {
            // fresh prime per (algorithm, trial); (0, 0) is the shared cell key
            let mut prng = derive_rng(
                plan.seed,
                DOMAIN_PRIME,
                alg_index as u64 + 1,
                u64::from(trial) + 1,
            );
            gen_prime_with_valuation(plan.bits, plan.e, &mut prng)?
        }
    };
    let mut rng = derive_rng(plan.seed, DOMAIN_TRIAL, alg_index as u64, u64::from(trial));
    // a = s^2 for uniform nonzero s: every instance is solvable
    let s = ctx.sample(&mut rng, true);
    let a = s.square();
    let started = Instant::now();
    let outcome = solve(&a, Some(alg), &mut rng)?;
    let elapsed_ns = started.elapsed().as_nanos().min(u128::from(u64::MAX)) as u64;
    if outcome.root.square() != a {
        return Err(Error::InternalInvariantViolation(
            "harness re-verification of the root failed",
        ));
    }
    Ok(TrialReport {
        algorithm: alg,
        success_first_try: outcome.retries == 0,
        retries: outcome.retries,
        elapsed_ns,
        prime_bits: plan.bits,
        e: plan.e,
    })
}

/// Runs every (algorithm, trial) pair of the plan. One prime is generated
/// per cell and shared across algorithms unless `fresh_prime_per_trial` is
/// set. Reports are identical across replays except for elapsed times.
pub fn run_trials(plan: &ExperimentPlan) -> Result<Vec<TrialReport>> {
    plan.validate()?;
    let cell_prime = if plan.fresh_prime_per_trial {
        None
    } else {
        let mut prng = derive_rng(plan.seed, DOMAIN_PRIME, 0, 0);
        Some(gen_prime_with_valuation(plan.bits, plan.e, &mut prng)?)
    };
    let mut reports = Vec::with_capacity(plan.algorithms.len() * plan.trials as usize);
    for (ai, &alg) in plan.algorithms.iter().enumerate() {
        let batch: Result<Vec<TrialReport>> = (0..plan.trials)
            .into_par_iter()
            .map(|trial| run_one_trial(plan, cell_prime.as_ref(), ai, alg, trial))
            .collect();
        reports.extend(batch?);
    }
    Ok(reports)
}

/// Wilson score interval at 95% confidence; always inside [0, 1] and always
/// containing the point estimate.
fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    let nf = n as f64;
    let phat = successes as f64 / nf;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / nf;
    let center = (phat + z2 / (2.0 * nf)) / denom;
    let half = Z * (phat * (1.0 - phat) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    // the interval contains phat by construction; keep that true under rounding
    let low = (center - half).max(0.0).min(phat);
    let high = (center + half).min(1.0).max(phat);
    (low, high)
}

/// Groups reports by (algorithm, bits, e), in first-appearance order, and
/// computes success rate, its 95% interval, and mean/median wall time.
pub fn summarize(reports: &[TrialReport]) -> Result<Vec<SummaryRow>> {
    if reports.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut keys: Vec<(Algorithm, u32, u32)> = Vec::new();
    for r in reports {
        let key = (r.algorithm, r.prime_bits, r.e);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    let mut rows = Vec::with_capacity(keys.len());
    for (alg, bits, e) in keys {
        let group: Vec<&TrialReport> = reports
            .iter()
            .filter(|r| r.algorithm == alg && r.prime_bits == bits && r.e == e)
            .collect();
        let n = group.len() as u64;
        let successes = group.iter().filter(|r| r.success_first_try).count() as u64;
        let (ci_low, ci_high) = wilson_interval(successes, n);
        let mut times: Vec<u64> = group.iter().map(|r| r.elapsed_ns).collect();
        times.sort_unstable();
        let mean_ns = times.iter().map(|&t| t as f64).sum::<f64>() / n as f64;
        let median_ns = if times.len() % 2 == 1 {
            times[times.len() / 2] as f64
        } else {
            (times[times.len() / 2 - 1] as f64 + times[times.len() / 2] as f64) / 2.0
        };
        rows.push(SummaryRow {
            algorithm: alg.tag().to_string(),
            bits,
            e,
            trials: n,
            success_rate: successes as f64 / n as f64,
            ci_low,
            ci_high,
            mean_ns,
            median_ns,
        });
    }
    Ok(rows)
}

/// CSV with the fixed column order
/// `algorithm,bits,e,trials,success_rate,ci_low,ci_high,mean_ns,median_ns`.
pub fn summary_to_csv(rows: &[SummaryRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::Serialization(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn summary_from_csv(text: &str) -> Result<Vec<SummaryRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<std::result::Result<Vec<SummaryRow>, _>>()
        .map_err(|e| Error::Serialization(e.to_string()))
}

pub fn summary_to_json(rows: &[SummaryRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn summary_from_json(text: &str) -> Result<Vec<SummaryRow>> {
    serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
}
