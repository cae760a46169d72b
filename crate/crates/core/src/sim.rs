//! Monte Carlo harness for the sampling distribution of `d̂`.
//!
//! Each replication draws data from `y = Xβ + ε`, `ε ~ N(0, σ²I)`, fits the
//! regression and records `d̂`, `d̂ᵤ` and whether each interval covers the
//! true `d = β₁/σ`. Replication `i` uses its own random stream derived from
//! `(seed, i)`, and aggregation walks the records in index order, so serial
//! and parallel drivers produce bit-identical reports.

use alloc::vec::Vec;

use crate::effect::{cohens_d, hedges_g, se_hedges_g};
use crate::error::{Error, Result};
use crate::interval::{inversion_ci, normal_quantile};
use crate::linalg::{ols_fit, DesignMatrix};
use crate::nct::c_exact;
use crate::rng::Xoshiro256StarStar;
use crate::special::Probability;

/// Consecutive singular designs tolerated before giving up.
pub const MAX_RANK_RETRIES: usize = 100;

/// Stream index reserved for the shared design in the fixed-design regime.
const FIXED_DESIGN_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimConfig {
    pub n0: usize,
    pub n1: usize,
    /// Covariates beyond the group regressor, drawn i.i.d. standard normal.
    pub k: usize,
    /// `[β₀, β₁, β₂, …]`, length `2 + k`.
    pub beta: Vec<f64>,
    pub sigma: f64,
    pub alpha: Probability,
    pub reps: usize,
    pub seed: u64,
    /// Draw the covariates once and reuse them in every replication.
    pub fixed_design: bool,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::InvalidConfig("reps must be at least 1"));
        }
        if self.n0 == 0 || self.n1 == 0 {
            return Err(Error::InvalidConfig("both groups need at least one observation"));
        }
        if self.beta.len() != 2 + self.k {
            return Err(Error::InvalidConfig("beta must have length 2 + k"));
        }
        if self.beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidConfig("beta must be finite"));
        }
        // the standard error needs m > 2
        if self.n0 + self.n1 <= 4 + self.k {
            return Err(Error::InvalidConfig("n0 + n1 must exceed k + 4"));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidConfig("sigma must be positive and finite"));
        }
        let a = self.alpha.get();
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidConfig("alpha must lie strictly between 0 and 1"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }

    /// Residual degrees of freedom `n − 2 − k`.
    pub fn m(&self) -> usize {
        self.n() - 2 - self.k
    }

    /// True effect size `β₁ / σ`.
    pub fn d(&self) -> f64 {
        self.beta[1] / self.sigma
    }
}

/// Outcome of one replication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replication {
    pub d_hat: f64,
    pub d_u: f64,
    pub v1_squared: f64,
    pub covered_inversion: bool,
    pub covered_normal: bool,
    pub rank_retries: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimulationReport {
    pub reps_used: usize,
    pub m: usize,
    pub d_true: f64,
    pub mean_d_hat: f64,
    pub mean_d_u: f64,
    /// `c(m)·d`.
    pub theoretical_mean: f64,
    /// Sample variance (divisor `reps − 1`; 0 when `reps = 1`).
    pub empirical_var_d_hat: f64,
    /// `m/(m−2)·E[v₁²] + (m/(m−2) − c(m)²)·d²`; exact for fixed and random designs.
    pub theoretical_var: f64,
    /// Monte Carlo standard error of `mean_d_hat`.
    pub mc_se_mean: f64,
    /// Monte Carlo standard error of `empirical_var_d_hat`.
    pub mc_se_var: f64,
    pub mean_v1_squared: f64,
    pub coverage_inversion: Probability,
    pub coverage_normal: Probability,
    pub rank_retries: usize,
}

/// A validated configuration plus everything shared across replications.
#[derive(Debug, Clone)]
pub struct SimulationPlan {
    config: SimConfig,
    group: Vec<f64>,
    fixed_covariates: Option<Vec<Vec<f64>>>,
    z: f64,
}

impl SimulationPlan {
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let group: Vec<f64> = core::iter::repeat_n(0.0, config.n0)
            .chain(core::iter::repeat_n(1.0, config.n1))
            .collect();
        let z = normal_quantile(Probability::saturating(1.0 - 0.5 * config.alpha.get()))?;
        let mut plan = SimulationPlan {
            config,
            group,
            fixed_covariates: None,
            z,
        };
        if plan.config.fixed_design && plan.config.k > 0 {
            let mut rng = Xoshiro256StarStar::for_stream(plan.config.seed, FIXED_DESIGN_STREAM);
            let mut attempts = 0;
            let covariates = loop {
                let candidate = plan.draw_covariates(&mut rng);
                let design = plan.design(&candidate)?;
                let probe: Vec<f64> = (0..plan.config.n()).map(|i| i as f64).collect();
                match ols_fit(&design, &probe) {
                    Ok(_) => break candidate,
                    Err(Error::RankDeficient { .. }) => {
                        attempts += 1;
                        if attempts >= MAX_RANK_RETRIES {
                            return Err(Error::RepeatedRankFailure { attempts });
                        }
                    }
                    Err(e) => return Err(e),
                }
            };
            plan.fixed_covariates = Some(covariates);
        }
        Ok(plan)
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    fn draw_covariates(&self, rng: &mut Xoshiro256StarStar) -> Vec<Vec<f64>> {
        (0..self.config.k)
            .map(|_| (0..self.config.n()).map(|_| rng.next_normal()).collect())
            .collect()
    }

    fn design(&self, covariates: &[Vec<f64>]) -> Result<DesignMatrix> {
        let named: Vec<(&str, &[f64])> = covariates.iter().map(|c| ("x", c.as_slice())).collect();
        DesignMatrix::new("group", &self.group, &named)
    }

    /// Runs replication `index`.
    pub fn replicate(&self, index: u64) -> Result<Replication> {
        let cfg = &self.config;
        let mut rng = Xoshiro256StarStar::for_stream(cfg.seed, index);
        let mut retries = 0;
        loop {
            let drawn;
            let covariates: &[Vec<f64>] = match &self.fixed_covariates {
                Some(fixed) => fixed,
                None => {
                    drawn = self.draw_covariates(&mut rng);
                    &drawn
                }
            };
            let design = self.design(covariates)?;
            let mut y = design.mul_vec(&cfg.beta);
            for v in y.iter_mut() {
                *v += cfg.sigma * rng.next_normal();
            }
            let fit = match ols_fit(&design, &y) {
                Ok(fit) => fit,
                Err(Error::RankDeficient { .. }) if self.fixed_covariates.is_none() => {
                    retries += 1;
                    if retries >= MAX_RANK_RETRIES {
                        return Err(Error::RepeatedRankFailure { attempts: retries });
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };

            let d_true = cfg.d();
            let m = fit.m();
            let v1 = fit.v1_squared();
            let d_hat = cohens_d(&fit)?;
            let d_u = hedges_g(d_hat, m)?;
            let se = se_hedges_g(d_u, m, v1)?;
            let inversion = inversion_ci(d_hat, m, v1, cfg.alpha)?;
            let covered_normal = d_u - self.z * se <= d_true && d_true <= d_u + self.z * se;
            return Ok(Replication {
                d_hat,
                d_u,
                v1_squared: v1,
                covered_inversion: inversion.contains(d_true),
                covered_normal,
                rank_retries: retries,
            });
        }
    }

    /// Aggregates records given in replication-index order.
    pub fn summarize(&self, records: &[Replication]) -> SimulationReport {
        let cfg = &self.config;
        let reps = records.len();
        let nf = reps as f64;
        let m = cfg.m();
        let mf = m as f64;
        let d = cfg.d();
        let c = c_exact(m);

        let mean_d_hat = records.iter().map(|r| r.d_hat).sum::<f64>() / nf;
        let mean_d_u = records.iter().map(|r| r.d_u).sum::<f64>() / nf;
        let mean_v1 = records.iter().map(|r| r.v1_squared).sum::<f64>() / nf;
        let (ss2, ss4) = records.iter().fold((0.0, 0.0), |(s2, s4), r| {
            let e = r.d_hat - mean_d_hat;
            let e2 = e * e;
            (s2 + e2, s4 + e2 * e2)
        });
        let (var, mc_se_mean, mc_se_var) = if reps > 1 {
            let var = ss2 / (nf - 1.0);
            let central2 = ss2 / nf;
            let central4 = ss4 / nf;
            let var_of_var = (central4 - central2 * central2).max(0.0) / nf;
            (var, libm::sqrt(var / nf), libm::sqrt(var_of_var))
        } else {
            (0.0, 0.0, 0.0)
        };
        let covered_inv = records.iter().filter(|r| r.covered_inversion).count();
        let covered_norm = records.iter().filter(|r| r.covered_normal).count();
        let ratio = mf / (mf - 2.0);

        SimulationReport {
            reps_used: reps,
            m,
            d_true: d,
            mean_d_hat,
            mean_d_u,
            theoretical_mean: c * d,
            empirical_var_d_hat: var,
            theoretical_var: ratio * mean_v1 + (ratio - c * c) * d * d,
            mc_se_mean,
            mc_se_var,
            mean_v1_squared: mean_v1,
            coverage_inversion: Probability::saturating(covered_inv as f64 / nf),
            coverage_normal: Probability::saturating(covered_norm as f64 / nf),
            rank_retries: records.iter().map(|r| r.rank_retries).sum(),
        }
    }
}

/// Runs every replication in order on the calling thread.
pub fn run_simulation(config: &SimConfig) -> Result<SimulationReport> {
    let plan = SimulationPlan::new(config.clone())?;
    let records = (0..config.reps as u64)
        .map(|i| plan.replicate(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(plan.summarize(&records))
}
