//! The non-central t distribution `t(m, τ)`.
//!
//! Covers the mean-inflation factor `c(m)` and its closed-form
//! approximations, the first two moments, the CDF, and inversion of the CDF
//! over the non-centrality parameter at a fixed observation.

use crate::error::{Error, Result};
use crate::special::{incomplete_beta_xy, ln_gamma_unchecked, normal_cdf_raw, Probability};

/// Largest supported `|τ|`. Beyond it `Φ(−τ)` underflows and the CDF is saturated.
pub const TAU_LIMIT: f64 = 1e3;

/// Parameters of `t(m, τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NctParams {
    m: usize,
    tau: f64,
}

impl NctParams {
    pub fn new(m: usize, tau: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain {
                function: "nct_cdf",
                detail: "degrees of freedom must be at least 1",
            });
        }
        if !tau.is_finite() {
            return Err(Error::Domain {
                function: "nct_cdf",
                detail: "non-centrality must be finite",
            });
        }
        if tau.abs() > TAU_LIMIT {
            let limit = if tau > 0.0 { 0.0 } else { 1.0 };
            return Err(Error::Saturated { tau, limit });
        }
        Ok(NctParams { m, tau })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// How `c(m)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CFactorMethod {
    /// `Γ((m−1)/2)·√(m/2) / Γ(m/2)`.
    Exact,
    /// `1 / (1 − 3/(4m − 1))`.
    Hedges,
    /// `1 + 3/(4m)`, the leading terms of the large-m expansion.
    Tricomi,
    /// `√(2m / (2m − 3))`.
    Laforgia,
}

impl CFactorMethod {
    pub const ALL: [CFactorMethod; 4] = [
        CFactorMethod::Exact,
        CFactorMethod::Hedges,
        CFactorMethod::Tricomi,
        CFactorMethod::Laforgia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CFactorMethod::Exact => "exact",
            CFactorMethod::Hedges => "hedges",
            CFactorMethod::Tricomi => "tricomi",
            CFactorMethod::Laforgia => "laforgia",
        }
    }
}

/// Mean-inflation factor `c(m)` with `E[t(m, τ)] = c(m)·τ`.
///
/// `Exact` and `Hedges` need `m ≥ 2`, `Laforgia` needs `m ≥ 2`, `Tricomi`
/// accepts any `m ≥ 1`.
pub fn c_factor(m: usize, method: CFactorMethod) -> Result<f64> {
    let min = match method {
        CFactorMethod::Tricomi => 1,
        _ => 2,
    };
    if m < min {
        return Err(Error::Domain {
            function: "c_factor",
            detail: "degrees of freedom too small for the requested method",
        });
    }
    let mf = m as f64;
    Ok(match method {
        CFactorMethod::Exact => c_exact(m),
        CFactorMethod::Hedges => 1.0 / (1.0 - 3.0 / (4.0 * mf - 1.0)),
        CFactorMethod::Tricomi => 1.0 + 3.0 / (4.0 * mf),
        CFactorMethod::Laforgia => libm::sqrt(2.0 * mf / (2.0 * mf - 3.0)),
    })
}

/// Threshold above which `ln c(m)` is taken from the Stirling difference.
const C_STIRLING_MIN_M: usize = 100;

pub(crate) fn c_exact(m: usize) -> f64 {
    let z = m as f64 / 2.0;
    if m < C_STIRLING_MIN_M {
        let ln_c = ln_gamma_unchecked(z - 0.5) + 0.5 * libm::log(z) - ln_gamma_unchecked(z);
        return libm::exp(ln_c);
    }
    // ln Γ(z − ½) − ln Γ(z) + ½ ln z with the large logarithms cancelled
    // analytically: (z − 1)·ln(1 − 1/(2z)) + ½ + S(z − ½) − S(z), where S is
    // the Stirling remainder series.
    let ln_c = (z - 1.0) * libm::log1p(-0.5 / z) + 0.5 + stirling_tail(z - 0.5) - stirling_tail(z);
    libm::exp(ln_c)
}

fn stirling_tail(w: f64) -> f64 {
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0
        - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))))
}

/// `E[T] = c(m)·τ`, defined for `m > 1`.
pub fn nct_mean(p: NctParams) -> Result<f64> {
    if p.m <= 1 {
        return Err(Error::Domain {
            function: "nct_mean",
            detail: "the mean requires more than 1 degree of freedom",
        });
    }
    Ok(c_exact(p.m) * p.tau)
}

/// `Var[T] = m/(m−2) + (m/(m−2) − c(m)²)·τ²`, defined for `m > 2`.
pub fn nct_variance(p: NctParams) -> Result<f64> {
    if p.m <= 2 {
        return Err(Error::Domain {
            function: "nct_variance",
            detail: "the variance requires more than 2 degrees of freedom",
        });
    }
    let mf = p.m as f64;
    let ratio = mf / (mf - 2.0);
    let c = c_exact(p.m);
    let var = ratio + (ratio - c * c) * p.tau * p.tau;
    if !(var > 0.0) {
        return Err(Error::NumericalDegeneracy {
            quantity: "non-central t variance",
            value: var,
        });
    }
    Ok(var)
}

/// Tail-bound threshold for the CDF series.
const SERIES_TOL: f64 = 1e-13;
/// Base term cap per summation direction; widened with the Poisson spread.
const SERIES_BASE_CAP: usize = 2000;

/// CDF of `t(m, τ)` at `x`.
///
/// For `x ≥ 0` this is `Φ(−τ) + ½·Σⱼ [Pⱼ·I_y(j+½, m/2) + Qⱼ·I_y(j+1, m/2)]`
/// with `y = x²/(m + x²)`, Poisson weights `Pⱼ` and companion weights `Qⱼ`.
/// The sum starts at the Poisson mode and runs in both directions, with the
/// weights seeded in log space and the incomplete beta values advanced by
/// their three-term recurrence. Negative `x` uses
/// `F(x; m, τ) = 1 − F(−x; m, −τ)`.
pub fn nct_cdf(x: f64, p: NctParams) -> Result<Probability> {
    if !x.is_finite() {
        return Err(Error::Domain {
            function: "nct_cdf",
            detail: "x must be finite",
        });
    }
    let value = if x < 0.0 {
        1.0 - cdf_nonnegative(-x, p.m, -p.tau)?
    } else {
        cdf_nonnegative(x, p.m, p.tau)?
    };
    Ok(Probability::saturating(value))
}

fn cdf_nonnegative(t: f64, m: usize, delta: f64) -> Result<f64> {
    let lower = normal_cdf_raw(-delta);
    if t == 0.0 {
        return Ok(lower);
    }
    let mf = m as f64;
    let t2 = t * t;
    let denom = mf + t2;
    let y = t2 / denom;
    let y_comp = mf / denom;
    let ln_y = libm::log(y);
    let ln_y_comp = libm::log(y_comp);
    let b = 0.5 * mf;
    let ln_gamma_b = ln_gamma_unchecked(b);

    let lambda = 0.5 * delta * delta;
    if lambda == 0.0 {
        return Ok(lower + 0.5 * incomplete_beta_xy(0.5, b, y, y_comp)?);
    }
    let ln_lambda = libm::log(lambda);

    let mode = libm::floor(lambda) as usize;
    let j0 = mode as f64;
    let ln_base = -lambda + j0 * ln_lambda;
    let p0 = libm::exp(ln_base - ln_gamma_unchecked(j0 + 1.0));
    let q0 = delta * core::f64::consts::FRAC_1_SQRT_2 * libm::exp(ln_base - ln_gamma_unchecked(j0 + 1.5));

    let a_p = j0 + 0.5;
    let a_q = j0 + 1.0;
    let ip0 = incomplete_beta_xy(a_p, b, y, y_comp)?;
    let iq0 = incomplete_beta_xy(a_q, b, y, y_comp)?;
    // g(a) = Γ(a+b)/(Γ(a+1)Γ(b))·y^a·(1−y)^b, so that I(a+1) = I(a) − g(a)
    let gp0 = libm::exp(
        ln_gamma_unchecked(a_p + b) - ln_gamma_unchecked(a_p + 1.0) - ln_gamma_b
            + a_p * ln_y
            + b * ln_y_comp,
    );
    let gq0 = libm::exp(
        ln_gamma_unchecked(a_q + b) - ln_gamma_unchecked(a_q + 1.0) - ln_gamma_b
            + a_q * ln_y
            + b * ln_y_comp,
    );

    let cap = SERIES_BASE_CAP + (20.0 * libm::sqrt(lambda)) as usize;
    let mut sum = p0 * ip0 + q0 * iq0;

    // backward from the mode
    {
        let (mut pj, mut qj) = (p0, q0);
        let (mut ip, mut iq) = (ip0, iq0);
        let (mut gp, mut gq) = (gp0, gq0);
        let mut j = mode;
        let mut steps = 0;
        while j > 0 {
            let jf = j as f64;
            let ap = jf + 0.5;
            let aq = jf + 1.0;
            // g(a−1) = g(a)·a / (y·(a+b−1))
            gp *= ap / (y * (ap + b - 1.0));
            gq *= aq / (y * (aq + b - 1.0));
            ip += gp;
            iq += gq;
            pj *= jf / lambda;
            qj *= (jf + 0.5) / lambda;
            j -= 1;
            steps += 1;
            sum += pj * ip + qj * iq;

            let ratio = (j as f64 + 0.5) / lambda;
            if ratio < 1.0 {
                let bound = (pj + qj.abs()) * ratio / (1.0 - ratio);
                if bound < SERIES_TOL {
                    break;
                }
            }
            if steps >= cap {
                return Err(Error::NoConvergence {
                    routine: "nct_cdf",
                    iterations: steps,
                });
            }
        }
    }

    // forward from the mode
    {
        let (mut pj, mut qj) = (p0, q0);
        let (mut ip, mut iq) = (ip0, iq0);
        let (mut gp, mut gq) = (gp0, gq0);
        let mut j = mode;
        let mut steps = 0;
        loop {
            let jf = j as f64;
            let ap = jf + 0.5;
            let aq = jf + 1.0;
            ip -= gp;
            iq -= gq;
            gp *= y * (ap + b) / (ap + 1.0);
            gq *= y * (aq + b) / (aq + 1.0);
            j += 1;
            steps += 1;
            let jf = j as f64;
            pj *= lambda / jf;
            qj *= lambda / (jf + 0.5);
            sum += pj * ip + qj * iq;

            // Past the mode the weights shrink at least geometrically with
            // ratio λ/(j+1), and I_y(a, b) decreases in a.
            if jf > lambda {
                let ratio = lambda / (jf + 1.0);
                let bound = (pj * ip.max(0.0) + qj.abs() * iq.max(0.0)) * ratio / (1.0 - ratio);
                if bound < SERIES_TOL {
                    break;
                }
            }
            if steps >= cap {
                return Err(Error::NoConvergence {
                    routine: "nct_cdf",
                    iterations: steps,
                });
            }
        }
    }

    Ok(lower + 0.5 * sum)
}

/// Width at which the bisection for `τ` stops.
const BISECTION_WIDTH: f64 = 1e-10;

/// Solves `F(τ) = prob` for `τ`, where `F(τ)` is the `t(m, τ)` CDF at the
/// fixed observation `x`.
///
/// `F` is strictly decreasing in `τ`. The root is bracketed by geometric
/// expansion from `x·(1 − 1/(4m))` and then bisected to width `1e-10`.
pub fn invert_noncentrality(x: f64, m: usize, prob: Probability) -> Result<f64> {
    let target = prob.get();
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::Domain {
            function: "invert_noncentrality",
            detail: "probability must lie strictly between 0 and 1",
        });
    }
    if m == 0 || !x.is_finite() {
        return Err(Error::Domain {
            function: "invert_noncentrality",
            detail: "requires m >= 1 and a finite observation",
        });
    }
    let cdf_at = |tau: f64| -> Result<f64> { Ok(nct_cdf(x, NctParams::new(m, tau)?)?.get()) };

    let start = (x * (1.0 - 0.25 / m as f64)).clamp(-TAU_LIMIT, TAU_LIMIT);
    let f_start = cdf_at(start)?;
    if f_start == target {
        return Ok(start);
    }
    // F too large means τ must grow.
    let direction = if f_start > target { 1.0 } else { -1.0 };
    let mut near = start;
    let mut step = 1.0;
    let far = loop {
        let candidate = (start + direction * step).clamp(-TAU_LIMIT, TAU_LIMIT);
        let f = cdf_at(candidate)?;
        if (f - target) * direction <= 0.0 {
            break candidate;
        }
        if candidate.abs() >= TAU_LIMIT {
            return Err(Error::BracketFailure { target });
        }
        near = candidate;
        step *= 2.0;
    };

    let (mut lo, mut hi) = if direction > 0.0 { (near, far) } else { (far, near) };
    // invariant: F(lo) ≥ target ≥ F(hi)
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf_at(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
