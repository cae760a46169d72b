use std::io::Write;
use std::process::Command;

use regd::EffectSizeReport;
use regd_core::{f_squared, hedges_g, se_hedges_g};

#[test]
fn json_report_recomputes_from_its_own_fields() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "y,g,x1,x2").unwrap();
    // deterministic pseudo-data
    let mut s = 17u64;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    for i in 0..60 {
        let g = if i % 3 == 0 { "treated" } else { "control" };
        let (x1, x2) = (next() * 4.0, next() - 0.5);
        let y = 2.0 + 0.7 * (i % 3 == 0) as u8 as f64 + 0.3 * x1 - x2 + next() * 2.0;
        writeln!(f, "{y},{g},{x1},{x2}").unwrap();
    }
    f.flush().unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_regd"))
        .args(["analyze", "--data", f.path().to_str().unwrap(), "--formula", "y ~ g + x1 + x2", "--alpha", "0.1"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r: EffectSizeReport = serde_json::from_slice(&out.stdout).unwrap();

    assert_eq!(r.m, 60 - 2 - 2);
    assert_eq!((r.n0, r.n1), (40, 20));
    let d_u = hedges_g(r.d_hat, r.m).unwrap();
    assert!((d_u - r.d_u).abs() < 1e-9);
    assert!((se_hedges_g(d_u, r.m, r.v1_squared).unwrap() - r.se_d_u).abs() < 1e-9);
    assert!((f_squared(r.d_hat, r.m, r.v1_squared) - r.f_squared).abs() < 1e-9);
    assert!((r.d_hat / r.v1_squared.sqrt() - r.tau_hat).abs() < 1e-8);
    assert!((r.confidence_level - 0.9).abs() < 1e-12);
    assert!((r.tau_interval.lower * r.v1_squared.sqrt() - r.inversion_ci.lower).abs() < 1e-8);
}
