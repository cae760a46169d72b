//! Scalar special functions: log-gamma, the regularized incomplete beta
//! function and the standard normal CDF.

use crate::error::{Error, Result};

/// A value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::Domain {
                function: "probability",
                detail: "value must lie in [0, 1]",
            })
        }
    }

    /// Clamps rounding excursions (and NaN, to 0) into `[0, 1]`.
    pub(crate) fn saturating(value: f64) -> Self {
        if value >= 1.0 {
            Probability(1.0)
        } else if value > 0.0 {
            Probability(value)
        } else {
            Probability(0.0)
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn complement(self) -> Self {
        Probability(1.0 - self.0)
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

impl TryFrom<f64> for Probability {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Probability::new(value)
    }
}

impl core::fmt::Display for Probability {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&self.0, f)
    }
}

// Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed., gammln).
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_SERIES_0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "ln_gamma",
            detail: "argument must be positive and finite",
        });
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    // Γ(1) = Γ(2) = 1; the series is only accurate to ~1e-15 absolute there.
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let shifted = x + LANCZOS_G;
    let head = (x + 0.5) * libm::log(shifted) - shifted;
    let mut series = LANCZOS_SERIES_0;
    let mut denom = x;
    for c in LANCZOS_COEF {
        denom += 1.0;
        series += c / denom;
    }
    head + libm::log(SQRT_2PI * series / x)
}

pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma_unchecked(a) + ln_gamma_unchecked(b) - ln_gamma_unchecked(a + b)
}

const BETA_CF_MAX_ITER: usize = 300;
const BETA_CF_EPS: f64 = 1e-15;
const BETA_CF_TINY: f64 = 1e-300;

/// Regularized incomplete beta function `I_x(a, b)`.
///
/// Evaluated by the continued fraction in modified Lentz form. For
/// `x > (a + 1) / (a + b + 2)` the reflection `I_x(a, b) = 1 − I_{1−x}(b, a)`
/// is applied first so the fraction converges quickly.
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> Result<Probability> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain {
            function: "regularized_incomplete_beta",
            detail: "shape parameters must be positive and finite",
        });
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            function: "regularized_incomplete_beta",
            detail: "x must lie in [0, 1]",
        });
    }
    incomplete_beta_unchecked(a, b, x).map(Probability::saturating)
}

pub(crate) fn incomplete_beta_unchecked(a: f64, b: f64, x: f64) -> Result<f64> {
    incomplete_beta_xy(a, b, x, 1.0 - x)
}

/// `I_x(a, b)` with the complement `y = 1 − x` supplied by the caller, who
/// can often form it without cancellation.
pub(crate) fn incomplete_beta_xy(a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if y <= 0.0 {
        return Ok(1.0);
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        Ok(1.0 - beta_continued_fraction(b, a, y, x)?)
    } else {
        beta_continued_fraction(a, b, x, y)
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    let ln_front = a * libm::log(x) + b * libm::log(y) - ln_beta(a, b);
    let front = libm::exp(ln_front) / a;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < BETA_CF_TINY {
        d = BETA_CF_TINY;
    }
    d = 1.0 / d;
    let mut h = d;

    for m in 1..=BETA_CF_MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;

        // even step
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < BETA_CF_TINY {
            d = BETA_CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < BETA_CF_TINY {
            c = BETA_CF_TINY;
        }
        d = 1.0 / d;
        h *= d * c;

        // odd step
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < BETA_CF_TINY {
            d = BETA_CF_TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < BETA_CF_TINY {
            c = BETA_CF_TINY;
        }
        d = 1.0 / d;
        let step = d * c;
        h *= step;

        if (step - 1.0).abs() < BETA_CF_EPS {
            return Ok(front * h);
        }
    }
    Err(Error::NoConvergence {
        routine: "regularized_incomplete_beta",
        iterations: BETA_CF_MAX_ITER,
    })
}

/// Standard normal CDF `Φ(x)`, computed as `erfc(−x/√2) / 2`.
///
/// Saturates to exactly 0 or 1 far in the tails. NaN maps to 0.
pub fn std_normal_cdf(x: f64) -> Probability {
    Probability::saturating(normal_cdf_raw(x))
}

#[inline]
pub(crate) fn normal_cdf_raw(x: f64) -> f64 {
    0.5 * libm::erfc(-x * core::f64::consts::FRAC_1_SQRT_2)
}
