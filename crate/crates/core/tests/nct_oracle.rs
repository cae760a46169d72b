mod common;

use common::Draws;
use regd_core::nct::{c_factor, invert_noncentrality, nct_cdf, nct_mean, nct_variance, CFactorMethod, NctParams};
use regd_core::rng::Xoshiro256StarStar;
use regd_core::special::{regularized_incomplete_beta, Probability};
use statrs::distribution::{ContinuousCDF, StudentsT};

fn cdf(x: f64, m: usize, tau: f64) -> f64 {
    nct_cdf(x, NctParams::new(m, tau).unwrap()).unwrap().get()
}

#[test]
fn cdf_matches_quadrature_on_random_triples() {
    let mut draws = Draws::new(2024);
    for _ in 0..50 {
        let m = draws.int(1, 500);
        let tau = draws.uniform(-20.0, 20.0);
        let x = tau + draws.uniform(-6.0, 6.0) * (1.0 + tau.abs() / (2.0 * m as f64).sqrt());
        let got = cdf(x, m, tau);
        let oracle = common::nct_cdf_quadrature(x, m, tau);
        assert!((got - oracle).abs() < 1e-9, "F({x}; {m}, {tau}) = {got} vs {oracle}");
    }
}

#[test]
fn cdf_agrees_with_integrated_density() {
    // F(b) − F(a) against the integral of the density between a and b
    for &(m, tau, a, b) in &[(5usize, 1.0, -1.0, 2.5), (30, 3.0, 2.0, 4.5), (391, -0.8, -2.0, 1.0)] {
        let mass = common::integrate(|x| common::nct_density_quadrature(x, m, tau), a, b, 1e-12, 16);
        let diff = cdf(b, m, tau) - cdf(a, m, tau);
        assert!((diff - mass).abs() < 1e-9, "m={m} τ={tau}: {diff} vs {mass}");
    }
}

#[test]
fn zero_noncentrality_is_the_central_t() {
    for &m in &[1usize, 2, 3, 7, 30, 391, 5000] {
        let t = StudentsT::new(0.0, 1.0, m as f64).unwrap();
        for i in -40..=40 {
            let x = i as f64 * 0.2;
            let tail = 0.5
                * regularized_incomplete_beta(0.5 * m as f64, 0.5, m as f64 / (m as f64 + x * x))
                    .unwrap()
                    .get();
            let central = if x >= 0.0 { 1.0 - tail } else { tail };
            let got = cdf(x, m, 0.0);
            assert!((got - central).abs() < 1e-12, "m={m} x={x}");
            assert!((got - t.cdf(x)).abs() < 1e-9, "m={m} x={x} statrs");
        }
    }
}

#[test]
fn reflection_is_exact() {
    let mut draws = Draws::new(7);
    for _ in 0..500 {
        let m = draws.int(1, 2000);
        let tau = draws.uniform(-50.0, 50.0);
        let x = draws.uniform(-60.0, 60.0);
        let (lhs, rhs) = (cdf(x, m, tau), 1.0 - cdf(-x, m, -tau));
        if x < 0.0 {
            assert_eq!(lhs, rhs);
        } else {
            // one rounding of 1 − (1 − F)
            assert!((lhs - rhs).abs() <= f64::EPSILON, "{lhs} vs {rhs}");
        }
    }
}

#[test]
fn monotone_in_x_and_tau() {
    for &m in &[3usize, 20, 391] {
        for &tau in &[-4.0, 0.0, 1.136455, 6.0] {
            let mut last = -1.0;
            for i in 0..=300 {
                let x = tau - 6.0 + i as f64 * 0.04;
                let p = cdf(x, m, tau);
                assert!(p > last, "x grid m={m} τ={tau} x={x}");
                last = p;
            }
        }
        for &x in &[-2.0, 0.0, 1.136455, 5.0] {
            let mut last = 2.0;
            for i in 0..=300 {
                let tau = x - 6.0 + i as f64 * 0.04;
                let p = cdf(x, m, tau);
                assert!(p < last, "τ grid m={m} x={x} τ={tau}");
                last = p;
            }
        }
    }
}

#[test]
fn inversion_round_trip() {
    let mut draws = Draws::new(99);
    for _ in 0..200 {
        let m = draws.int(3, 500);
        let tau = draws.uniform(-20.0, 20.0);
        // x drawn from t(m, τ) itself, so F(x) is spread over (0, 1)
        let x = draws.noncentral_t(m, tau);
        let p = Probability::new(cdf(x, m, tau)).unwrap();
        let back = invert_noncentrality(x, m, p).unwrap();
        assert!((back - tau).abs() < 1e-7, "x={x} m={m} τ={tau} → {back}");
        assert!((cdf(x, m, back) - p.get()).abs() < 1e-9);
    }
}

fn moments_from_cdf(m: usize, tau: f64) -> (f64, f64) {
    // E[T] = ∫₀^∞ (1 − F(x)) − F(−x) dx and E[T²] = ∫₀^∞ 2x (1 − F(x) + F(−x)) dx,
    // with x = u/(1 − u). The tails carry ~1e-14 absolute noise, so x stops at
    // 3e3, where the neglected tail of E[T²] is below 1e-7 for m ≥ 5.
    let u_max = 3e3 / (1.0 + 3e3);
    let tails = |u: f64| {
        let x = u / (1.0 - u);
        let jacobian = 1.0 / ((1.0 - u) * (1.0 - u));
        (x, 1.0 - cdf(x, m, tau), cdf(-x, m, tau), jacobian)
    };
    let first = common::integrate_fixed(
        |u| {
            let (_, upper, lower, j) = tails(u);
            (upper - lower) * j
        },
        0.0,
        u_max,
        1000,
    );
    let second = common::integrate_fixed(
        |u| {
            let (x, upper, lower, j) = tails(u);
            2.0 * x * (upper + lower) * j
        },
        0.0,
        u_max,
        1000,
    );
    (first, second - first * first)
}

#[test]
fn moments_match_cdf_integrals() {
    for &m in &[5usize, 30, 391] {
        for &tau in &[0.0, 1.0, 3.0] {
            let p = NctParams::new(m, tau).unwrap();
            let (mean, var) = moments_from_cdf(m, tau);
            assert!((nct_mean(p).unwrap() - mean).abs() < 1e-6, "mean m={m} τ={tau}: {mean}");
            assert!((nct_variance(p).unwrap() - var).abs() < 1e-6, "var m={m} τ={tau}: {var}");
        }
    }
}

#[test]
fn mean_at_two_degrees_of_freedom() {
    let c2 = c_factor(2, CFactorMethod::Exact).unwrap();
    assert!((c2 - common::inverse_scale_mean(2)).abs() < 1e-10);
    assert!((nct_mean(NctParams::new(2, 1.0).unwrap()).unwrap() - c2).abs() < 1e-15);
}

#[test]
fn exact_factor_matches_inverse_scale_mean() {
    for &m in &[2usize, 3, 4, 10, 38, 100, 391, 2000] {
        let exact = c_factor(m, CFactorMethod::Exact).unwrap();
        let oracle = common::inverse_scale_mean(m);
        assert!((exact - oracle).abs() < 1e-10, "c({m}) = {exact} vs {oracle}");
    }
}

#[test]
fn hedges_is_closer_than_tricomi() {
    for m in 4..=1000 {
        let exact = c_factor(m, CFactorMethod::Exact).unwrap();
        let hedges = c_factor(m, CFactorMethod::Hedges).unwrap();
        let tricomi = c_factor(m, CFactorMethod::Tricomi).unwrap();
        assert!((hedges - exact).abs() < (tricomi - exact).abs(), "m={m}");
    }
}

#[test]
fn monte_carlo_mean_and_variance() {
    // T = (Z + τ)/√(V/m) with V a sum of m squared normals
    let (m, tau, draws) = (10usize, 2.0, 10_000_000usize);
    let mut rng = Xoshiro256StarStar::seed_from_u64(20240611);
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..draws {
        let z = rng.next_normal() + tau;
        let v: f64 = (0..m).map(|_| rng.next_normal().powi(2)).sum();
        let t = z / (v / m as f64).sqrt();
        sum += t;
        sum2 += t * t;
    }
    let mean = sum / draws as f64;
    let var = sum2 / draws as f64 - mean * mean;
    let p = NctParams::new(m, tau).unwrap();
    assert!((mean - nct_mean(p).unwrap()).abs() < 3e-3, "{mean}");
    // the fourth moment is finite at m = 10, so 5·sd/√N bounds the variance error
    assert!((var - nct_variance(p).unwrap()).abs() < 0.02, "{var}");
}
