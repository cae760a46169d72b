//! Effect-size estimators and their exact moments.
//!
//! Sign convention throughout: group 1 minus group 0, matching β̂₁.

use crate::error::{Error, Result};
use crate::linalg::RegressionFit;
use crate::nct::c_exact;

/// Biased estimate `d̂ = β̂₁ / σ̂` from a regression fit.
pub fn cohens_d(fit: &RegressionFit) -> Result<f64> {
    if !(fit.sigma2_hat() > 0.0) {
        return Err(Error::DegenerateVariance);
    }
    Ok(fit.beta_group() / fit.sigma_hat())
}

/// Classical two-sample `d̂ = (Ȳ₁ − Ȳ₀) / S` with pooled
/// `S = √((Q₀ + Q₁)/(n₀ + n₁ − 2))`, where `Q` are within-group sums of
/// squared deviations.
pub fn cohens_d_classic(mean0: f64, mean1: f64, q0: f64, q1: f64, n0: usize, n1: usize) -> Result<f64> {
    if n0 + n1 <= 2 {
        return Err(Error::Domain {
            function: "cohens_d_classic",
            detail: "needs n0 + n1 > 2",
        });
    }
    if q0 < 0.0 || q1 < 0.0 {
        return Err(Error::Domain {
            function: "cohens_d_classic",
            detail: "sums of squares must be non-negative",
        });
    }
    let pooled = (q0 + q1) / (n0 + n1 - 2) as f64;
    if !(pooled > 0.0) {
        return Err(Error::DegenerateVariance);
    }
    Ok((mean1 - mean0) / libm::sqrt(pooled))
}

/// `d̂ = t·√((n₀ + n₁)/(n₀·n₁))` from the pooled two-sample t statistic.
pub fn cohens_d_from_t(t: f64, n0: usize, n1: usize) -> Result<f64> {
    let v = crate::linalg::v1_squared_two_group(n0, n1).map_err(|_| Error::Domain {
        function: "cohens_d_from_t",
        detail: "both groups need at least one observation",
    })?;
    Ok(t * libm::sqrt(v))
}

/// Unbiased `d̂ᵤ = d̂ / c(m)` with the exact `c(m)`.
pub fn hedges_g(d_hat: f64, m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain {
            function: "hedges_g",
            detail: "needs m >= 2",
        });
    }
    Ok(d_hat / c_exact(m))
}

/// Standard error of `d̂ᵤ`:
/// `√( m·c⁻²/(m−2)·v₁² + (m·c⁻²/(m−2) − 1)·d̂ᵤ² )`.
pub fn se_hedges_g(d_u: f64, m: usize, v1sq: f64) -> Result<f64> {
    if m <= 2 {
        return Err(Error::Domain {
            function: "se_hedges_g",
            detail: "needs m > 2",
        });
    }
    if !(v1sq > 0.0) {
        return Err(Error::Domain {
            function: "se_hedges_g",
            detail: "v1 squared must be positive",
        });
    }
    let c = c_exact(m);
    let mf = m as f64;
    let scaled = mf / ((mf - 2.0) * c * c);
    let radicand = scaled * v1sq + (scaled - 1.0) * d_u * d_u;
    if !(radicand > 0.0) {
        return Err(Error::NumericalDegeneracy {
            quantity: "standard error radicand",
            value: radicand,
        });
    }
    Ok(libm::sqrt(radicand))
}

/// Mean and variance of an estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentPair {
    pub mean: f64,
    pub variance: f64,
}

/// Exact moments of `d̂` under the normal linear model:
/// `E[d̂] = c(m)·d` and `Var[d̂] = m/(m−2)·v₁² + (m/(m−2) − c(m)²)·d²`.
pub fn dhat_moments(d: f64, m: usize, v1sq: f64) -> Result<MomentPair> {
    if m <= 2 {
        return Err(Error::Domain {
            function: "dhat_moments",
            detail: "needs m > 2",
        });
    }
    if !(v1sq > 0.0) {
        return Err(Error::Domain {
            function: "dhat_moments",
            detail: "v1 squared must be positive",
        });
    }
    let c = c_exact(m);
    let mf = m as f64;
    let ratio = mf / (mf - 2.0);
    let variance = ratio * v1sq + (ratio - c * c) * d * d;
    if !(variance > 0.0) {
        return Err(Error::NumericalDegeneracy {
            quantity: "variance of d_hat",
            value: variance,
        });
    }
    Ok(MomentPair {
        mean: c * d,
        variance,
    })
}

/// Cohen's `f² = d̂² / (m·v₁²)`.
pub fn f_squared(d_hat: f64, m: usize, v1sq: f64) -> f64 {
    d_hat * d_hat / (m as f64 * v1sq)
}

/// Observed non-centrality `τ̂ = d̂ / √v₁²`.
pub fn tau_hat(d_hat: f64, v1sq: f64) -> f64 {
    d_hat / libm::sqrt(v1sq)
}

/// Conventional magnitude label at 0.2 / 0.5 / 0.8. Reporting only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum EffectLabel {
    Negligible,
    Small,
    Medium,
    Large,
}

impl EffectLabel {
    pub fn classify(d: f64) -> Self {
        let a = d.abs();
        if a >= 0.8 {
            EffectLabel::Large
        } else if a >= 0.5 {
            EffectLabel::Medium
        } else if a >= 0.2 {
            EffectLabel::Small
        } else {
            EffectLabel::Negligible
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EffectLabel::Negligible => "negligible",
            EffectLabel::Small => "small",
            EffectLabel::Medium => "medium",
            EffectLabel::Large => "large",
        }
    }
}

/// The full set of point estimates derived from one fit.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EffectSizeEstimate {
    pub d_hat: f64,
    pub d_u: f64,
    pub se_d_u: f64,
    pub tau_hat: f64,
    pub v1_squared: f64,
    pub m: usize,
    pub f_squared: f64,
    pub c_m: f64,
}

impl EffectSizeEstimate {
    /// Derives every estimate from `d̂`, `m` and `v₁²`.
    pub fn from_parts(d_hat: f64, m: usize, v1_squared: f64) -> Result<Self> {
        let d_u = hedges_g(d_hat, m)?;
        let se_d_u = se_hedges_g(d_u, m, v1_squared)?;
        Ok(EffectSizeEstimate {
            d_hat,
            d_u,
            se_d_u,
            tau_hat: tau_hat(d_hat, v1_squared),
            v1_squared,
            m,
            f_squared: f_squared(d_hat, m, v1_squared),
            c_m: c_exact(m),
        })
    }
}

/// Estimates from a regression fit. Requires `m > 2` for the standard error.
pub fn estimate(fit: &RegressionFit) -> Result<EffectSizeEstimate> {
    EffectSizeEstimate::from_parts(cohens_d(fit)?, fit.m(), fit.v1_squared())
}
