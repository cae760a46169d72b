//! The analysis pipeline and its report.

use regd_core::{
    c_factor, estimate, inversion_ci, noncentrality_interval, normal_ci, normal_quantile, ols_fit,
    CFactorMethod, EffectLabel, Probability,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dataset::Dataset;
use crate::design::{build_design_matrix, LevelMapping};
use crate::error::{CliError, Result};
use crate::formula::{render, ModelSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub name: String,
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CFactors {
    pub exact: f64,
    pub hedges: f64,
    pub tricomi: f64,
    pub laforgia: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectSizeReport {
    pub formula: String,
    pub n: usize,
    pub n0: usize,
    pub n1: usize,
    pub k: usize,
    pub m: usize,
    pub rows_dropped: usize,
    pub level_mapping: LevelMapping,
    pub coefficients: Vec<Coefficient>,
    pub beta_group: f64,
    pub sigma_hat: f64,
    pub d_hat: f64,
    pub d_u: f64,
    pub se_d_u: f64,
    pub tau_hat: f64,
    pub v1_squared: f64,
    pub f_squared: f64,
    pub c_m: f64,
    pub c_factors: CFactors,
    pub alpha: f64,
    pub confidence_level: f64,
    pub inversion_ci: Interval,
    /// `[τ₁, τ₂]` before scaling by `√v₁²`.
    pub tau_interval: Interval,
    pub normal_ci: Interval,
    pub z: f64,
    pub label: String,
}

/// Rounds to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().expect("formatted float parses")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap());
            if let Some(r) = serde_json::Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 10 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    round_value(&mut v);
    serde_json::to_string_pretty(&v).expect("reports serialize")
}

fn c_all(m: usize) -> Result<CFactors> {
    Ok(CFactors {
        exact: c_factor(m, CFactorMethod::Exact)?,
        hedges: c_factor(m, CFactorMethod::Hedges)?,
        tricomi: c_factor(m, CFactorMethod::Tricomi)?,
        laforgia: c_factor(m, CFactorMethod::Laforgia)?,
    })
}

/// Fit, estimate and both intervals for `spec` on `dataset`.
pub fn analyze(dataset: &Dataset, spec: &ModelSpec, alpha: f64, drop_missing: bool) -> Result<EffectSizeReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::Usage(format!("alpha must lie strictly between 0 and 1, got {alpha}")));
    }
    let a = Probability::new(alpha)?;
    let bound = build_design_matrix(dataset, spec, drop_missing)?;
    let fit = ols_fit(&bound.matrix, &bound.response)?;
    let est = estimate(&fit)?;

    let exact = inversion_ci(est.d_hat, est.m, est.v1_squared, a)?;
    let (tau1, tau2) = noncentrality_interval(est.tau_hat, est.m, a)?;
    let approx = normal_ci(est.d_u, est.se_d_u, a)?;
    let z = normal_quantile(Probability::new(1.0 - 0.5 * alpha)?)?;

    let coefficients = bound
        .matrix
        .column_names()
        .iter()
        .zip(fit.beta_hat())
        .map(|(name, &estimate)| Coefficient {
            name: name.clone(),
            estimate,
        })
        .collect();

    Ok(EffectSizeReport {
        formula: render(spec),
        n: fit.n(),
        n0: fit.n0(),
        n1: fit.n1(),
        k: fit.k(),
        m: fit.m(),
        rows_dropped: bound.rows_dropped,
        level_mapping: bound.levels,
        coefficients,
        beta_group: fit.beta_group(),
        sigma_hat: fit.sigma_hat(),
        d_hat: est.d_hat,
        d_u: est.d_u,
        se_d_u: est.se_d_u,
        tau_hat: est.tau_hat,
        v1_squared: est.v1_squared,
        f_squared: est.f_squared,
        c_m: est.c_m,
        c_factors: c_all(est.m)?,
        alpha,
        confidence_level: 1.0 - alpha,
        inversion_ci: Interval {
            lower: exact.lower,
            upper: exact.upper,
        },
        tau_interval: Interval {
            lower: tau1,
            upper: tau2,
        },
        normal_ci: Interval {
            lower: approx.lower,
            upper: approx.upper,
        },
        z,
        label: EffectLabel::classify(est.d_u).as_str().to_string(),
    })
}

/// One labelled quantity per line.
pub fn render_text(r: &EffectSizeReport) -> String {
    let pct = 100.0 * r.confidence_level;
    let lines = [
        format!("model                     {}", r.formula),
        format!(
            "groups                    {} = 0 (n0 = {}), {} = 1 (n1 = {})",
            r.level_mapping.reference, r.n0, r.level_mapping.other, r.n1
        ),
        format!("observations              {} (dropped {})", r.n, r.rows_dropped),
        format!("degrees of freedom m      {}", r.m),
        format!("beta_1                    {:.7}", r.beta_group),
        format!("sigma_hat                 {:.7}", r.sigma_hat),
        format!("v1_squared                {:.8}", r.v1_squared),
        format!("d_hat                     {:.7}", r.d_hat),
        format!("d_u (bias corrected)      {:.7}", r.d_u),
        format!("se(d_u)                   {:.7}", r.se_d_u),
        format!("tau_hat                   {:.7}", r.tau_hat),
        format!("f_squared                 {:.9}", r.f_squared),
        format!("c(m) exact                {:.9}", r.c_factors.exact),
        format!("c(m) hedges               {:.9}", r.c_factors.hedges),
        format!("c(m) tricomi              {:.9}", r.c_factors.tricomi),
        format!("c(m) laforgia             {:.9}", r.c_factors.laforgia),
        format!(
            "{pct}% inversion CI          [{:.7}, {:.7}]",
            r.inversion_ci.lower, r.inversion_ci.upper
        ),
        format!(
            "tau interval              [{:.7}, {:.7}]",
            r.tau_interval.lower, r.tau_interval.upper
        ),
        format!(
            "{pct}% normal CI             [{:.7}, {:.7}] (z = {:.6})",
            r.normal_ci.lower, r.normal_ci.upper, r.z
        ),
        format!("magnitude                 {}", r.label),
    ];
    let mut out = lines.join("\n");
    out.push('\n');
    out
}
