//! The `simulate` subcommand.

use rayon::prelude::*;
use regd_core::{Probability, Replication, SimConfig, SimulationPlan, SimulationReport};

use crate::error::{CliError, Result};

/// Parses `--beta` as comma-separated numbers.
pub fn parse_beta(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("--beta: `{part}` is not a finite number")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
pub fn config(
    n0: usize,
    n1: usize,
    k: usize,
    beta: Vec<f64>,
    sigma: f64,
    alpha: f64,
    reps: usize,
    seed: u64,
    fixed_design: bool,
) -> Result<SimConfig> {
    let alpha = Probability::new(alpha)
        .map_err(|_| CliError::Usage(format!("alpha must lie in [0, 1], got {alpha}")))?;
    let cfg = SimConfig {
        n0,
        n1,
        k,
        beta,
        sigma,
        alpha,
        reps,
        seed,
        fixed_design,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the replications, across the rayon pool when `parallel` is set.
///
/// Records are collected in replication-index order either way, so both
/// paths produce the same report bit for bit.
pub fn run(config: SimConfig, parallel: bool) -> Result<SimulationReport> {
    let reps = config.reps as u64;
    let plan = SimulationPlan::new(config)?;
    let records: Vec<Replication> = if parallel {
        (0..reps)
            .into_par_iter()
            .map(|i| plan.replicate(i))
            .collect::<regd_core::Result<_>>()?
    } else {
        (0..reps).map(|i| plan.replicate(i)).collect::<regd_core::Result<_>>()?
    };
    Ok(plan.summarize(&records))
}
