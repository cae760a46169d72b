//! Test-only oracles. Nothing here calls into the crate under test.

#![allow(dead_code)]

use statrs::function::gamma::ln_gamma;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Returns the Kronrod estimate, its error estimate and the integral of `|f|`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let x = h * XGK[j];
        let (lo, hi) = (f(c - x), f(c + x));
        kronrod += WGK[j] * (lo + hi);
        abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs(), abs * h.abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    let (value, err, abs) = gk15(f, a, b);
    // below the rounding floor further splitting only multiplies the work
    let floor = 50.0 * f64::EPSILON * abs;
    if err <= tol.max(floor) || depth == 0 || (b - a).abs() < 1e-14 * (1.0 + a.abs()) {
        return value;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth - 1) + adapt(f, mid, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod (7/15) over `[a, b]`, split into `pieces` first.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, pieces: usize) -> f64 {
    let h = (b - a) / pieces as f64;
    (0..pieces)
        .map(|i| adapt(&f, a + i as f64 * h, a + (i + 1) as f64 * h, tol / pieces as f64, 30))
        .sum()
}

/// Non-adaptive composite Kronrod rule over `panels` equal panels, for
/// integrands whose pointwise noise would keep an adaptive rule splitting.
pub fn integrate_fixed<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|i| gk15(&f, a + i as f64 * h, a + (i + 1) as f64 * h).0)
        .sum()
}

extern "C" {
    // the platform C library, not the Rust port the crate uses
    #[link_name = "erfc"]
    fn c_erfc(x: f64) -> f64;
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * unsafe { c_erfc(-x / std::f64::consts::SQRT_2) }
}

/// Density of `√(V/m)` for `V ~ χ²_m`, evaluated at `s > 0`.
pub fn scaled_chi_density(s: f64, m: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    // ln g = ln 2 + k ln k − ln Γ(k) − k + ln s·(2k − 1) − k (s² − 1) + k
    // with k = m/2; the s-dependent part is written as −2k·((s² − 1)/2 − ln s) − ln s
    // so that it stays accurate near the peak at s = 1 for large m.
    let k = 0.5 * m;
    let constant = 2f64.ln() + k * k.ln() - ln_gamma(k) - k;
    let t = s - 1.0;
    let shape = (t - t.ln_1p()) + 0.5 * t * t;
    (constant - 2.0 * k * shape - s.ln()).exp()
}

/// `P(T ≤ x)` for `T ~ t(m, τ)` from `E[Φ(x·S − τ)]`, `S = √(V/m)`, integrated
/// over the density of `S`.
pub fn nct_cdf_quadrature(x: f64, m: usize, tau: f64) -> f64 {
    let mf = m as f64;
    // S concentrates at 1 with sd ≈ 1/√(2m); cover 0 to far in the right tail
    let hi = 1.0 + 40.0 / (2.0 * mf).sqrt() + 2.0;
    integrate(
        |s| normal_cdf(x * s - tau) * scaled_chi_density(s, mf),
        0.0,
        hi,
        1e-13,
        64,
    )
}

/// Density of `t(m, τ)` at `x`, `∫ s·φ(x s − τ)·g(s) ds`.
pub fn nct_density_quadrature(x: f64, m: usize, tau: f64) -> f64 {
    let mf = m as f64;
    let hi = 1.0 + 40.0 / (2.0 * mf).sqrt() + 2.0;
    let phi = |z: f64| (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
    integrate(|s| s * phi(x * s - tau) * scaled_chi_density(s, mf), 0.0, hi, 1e-14, 64)
}

/// `E[1/S]` for `S = √(V/m)`: the factor `c(m)` in `E[T] = c(m)·τ`.
pub fn inverse_scale_mean(m: usize) -> f64 {
    let mf = m as f64;
    let hi = 1.0 + 40.0 / (2.0 * mf).sqrt() + 2.0;
    integrate(|s| if s > 0.0 { scaled_chi_density(s, mf) / s } else { 0.0 }, 0.0, hi, 1e-14, 64)
}

/// Small deterministic uniform source for drawing test inputs.
pub struct Draws(u64);

impl Draws {
    pub fn new(seed: u64) -> Self {
        Draws(seed)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        lo + (hi - lo) * ((z >> 11) as f64 / (1u64 << 53) as f64)
    }

    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        (lo as f64 + self.uniform(0.0, (hi - lo + 1) as f64).floor()) as usize
    }

    /// Box–Muller standard normal.
    pub fn normal(&mut self) -> f64 {
        let u = self.uniform(f64::MIN_POSITIVE, 1.0);
        let v = self.uniform(0.0, 1.0);
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    /// A draw from `t(m, τ)` as `(Z + τ)/√(V/m)`.
    pub fn noncentral_t(&mut self, m: usize, tau: f64) -> f64 {
        let z = self.normal() + tau;
        let v: f64 = (0..m).map(|_| self.normal().powi(2)).sum();
        z / (v / m as f64).sqrt()
    }
}
