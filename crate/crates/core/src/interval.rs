//! Confidence intervals for the effect size `d`.

use crate::effect::tau_hat;
use crate::error::{Error, Result};
use crate::nct::{invert_noncentrality, TAU_LIMIT};
use crate::special::{normal_cdf_raw, Probability};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CiMethod {
    /// Inverting the non-central t CDF over the non-centrality parameter.
    Inversion,
    /// `d̂ᵤ ± z·se`.
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    /// Coverage `1 − α`.
    pub level: Probability,
    pub method: CiMethod,
}

impl ConfidenceInterval {
    /// Closed-interval membership.
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn check_alpha(alpha: Probability, function: &'static str) -> Result<f64> {
    let a = alpha.get();
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(Error::Domain {
            function,
            detail: "alpha must lie strictly between 0 and 1",
        })
    }
}

/// `[τ₁, τ₂]` with `F(τ₁) = 1 − α/2` and `F(τ₂) = α/2`, where `F` is the
/// `t(m, τ)` CDF evaluated at the observed `τ̂`.
pub fn noncentrality_interval(tau_hat: f64, m: usize, alpha: Probability) -> Result<(f64, f64)> {
    let a = check_alpha(alpha, "inversion_ci")?;
    if m == 0 {
        return Err(Error::Domain {
            function: "inversion_ci",
            detail: "needs m >= 1",
        });
    }
    if !(tau_hat.abs() <= TAU_LIMIT) {
        let limit = if tau_hat > 0.0 { 0.0 } else { 1.0 };
        return Err(Error::Saturated { tau: tau_hat, limit });
    }
    let lower = invert_noncentrality(tau_hat, m, Probability::saturating(1.0 - 0.5 * a))?;
    let upper = invert_noncentrality(tau_hat, m, Probability::saturating(0.5 * a))?;
    Ok((lower, upper))
}

/// Exact `(1 − α)` interval `[τ₁·√v₁², τ₂·√v₁²]` for `d`.
pub fn inversion_ci(d_hat: f64, m: usize, v1sq: f64, alpha: Probability) -> Result<ConfidenceInterval> {
    if !(v1sq > 0.0) {
        return Err(Error::Domain {
            function: "inversion_ci",
            detail: "v1 squared must be positive",
        });
    }
    let (t1, t2) = noncentrality_interval(tau_hat(d_hat, v1sq), m, alpha)?;
    let scale = libm::sqrt(v1sq);
    Ok(ConfidenceInterval {
        lower: t1 * scale,
        upper: t2 * scale,
        level: alpha.complement(),
        method: CiMethod::Inversion,
    })
}

/// Standard normal quantile by bisection on `Φ`.
pub fn normal_quantile(p: Probability) -> Result<f64> {
    let target = p.get();
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain {
            function: "normal_quantile",
            detail: "probability must lie strictly between 0 and 1",
        });
    }
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if normal_cdf_raw(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Normal-approximation interval `d̂ᵤ ± z₁₋α/₂·se`.
pub fn normal_ci(d_u: f64, se: f64, alpha: Probability) -> Result<ConfidenceInterval> {
    let a = check_alpha(alpha, "normal_ci")?;
    let z = normal_quantile(Probability::saturating(1.0 - 0.5 * a))?;
    Ok(ConfidenceInterval {
        lower: d_u - z * se,
        upper: d_u + z * se,
        level: alpha.complement(),
        method: CiMethod::Normal,
    })
}
