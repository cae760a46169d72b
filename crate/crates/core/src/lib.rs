//! Cohen's d generalized to a linear regression with covariates.
//!
//! The estimator is `d̂ = β̂₁ / σ̂` where `β̂₁` is the least squares coefficient
//! of a 0/1 group regressor and `σ̂²` the residual variance with
//! `m = n − 2 − k` degrees of freedom. Under normal errors
//! `d̂ / √v₁² ~ t(m, τ)` with `v₁²` the group entry of `diag((X′X)⁻¹)`,
//! which gives the exact bias factor `c(m)`, an unbiased estimator with a
//! standard error, and confidence intervals by inverting the non-central t
//! CDF over its non-centrality parameter.
//!
//! The crate is `no_std` (with `alloc`) and free of IO. File formats, the
//! formula language and the command line live in the `regd` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;

pub mod effect;
pub mod interval;
pub mod linalg;
pub mod nct;
pub mod rng;
pub mod sim;
pub mod special;

pub use error::{Error, ErrorKind, Result};

pub use effect::{
    cohens_d, cohens_d_classic, cohens_d_from_t, dhat_moments, estimate, f_squared, hedges_g,
    se_hedges_g, tau_hat, EffectLabel, EffectSizeEstimate, MomentPair,
};
pub use interval::{
    inversion_ci, noncentrality_interval, normal_ci, normal_quantile, CiMethod, ConfidenceInterval,
};
pub use linalg::{ols_fit, v1_squared_two_group, DesignMatrix, RegressionFit};
pub use nct::{
    c_factor, invert_noncentrality, nct_cdf, nct_mean, nct_variance, CFactorMethod, NctParams,
};
pub use sim::{run_simulation, Replication, SimConfig, SimulationPlan, SimulationReport};
pub use special::{ln_gamma, regularized_incomplete_beta, std_normal_cdf, Probability};
