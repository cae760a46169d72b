//! Design matrices and least squares by Householder QR.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Column index of the 0/1 group regressor (β₁).
pub const GROUP_COLUMN: usize = 1;

/// Dense `n × (2 + k)` model matrix laid out as `[1, group, covariates…]`.
///
/// Stored column-major. Construction checks that every cell is finite, the
/// group column holds both 0 and 1 and nothing else, and `n > 2 + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    values: Vec<f64>,
    rows: usize,
    column_names: Vec<String>,
}

impl DesignMatrix {
    /// Builds `[1, group, covariates…]`. The group column must be coded 0/1.
    pub fn new(group_name: &str, group: &[f64], covariates: &[(&str, &[f64])]) -> Result<Self> {
        let rows = group.len();
        let cols = 2 + covariates.len();

        for (row, &g) in group.iter().enumerate() {
            if !g.is_finite() {
                return Err(Error::NonFinite {
                    column: group_name.to_string(),
                    row,
                });
            }
        }
        let has_zero = group.contains(&0.0);
        let has_one = group.contains(&1.0);
        let other = group.iter().any(|&g| g != 0.0 && g != 1.0);
        if !has_zero || !has_one || other {
            let distinct = has_zero as usize + has_one as usize + other as usize;
            return Err(Error::NonBinaryGroup { distinct });
        }

        for (name, column) in covariates {
            if column.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: column.len(),
                });
            }
            if let Some(row) = column.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    column: name.to_string(),
                    row,
                });
            }
        }
        if rows <= cols {
            return Err(Error::TooFewObservations { n: rows, columns: cols });
        }

        let mut values = Vec::with_capacity(rows * cols);
        values.extend(core::iter::repeat_n(1.0, rows));
        values.extend_from_slice(group);
        for (_, column) in covariates {
            values.extend_from_slice(column);
        }

        let mut column_names = Vec::with_capacity(cols);
        column_names.push("(intercept)".to_string());
        column_names.push(group_name.to_string());
        column_names.extend(covariates.iter().map(|(name, _)| name.to_string()));

        Ok(DesignMatrix {
            values,
            rows,
            column_names,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.column_names.len()
    }

    /// Number of covariates beyond the group regressor.
    pub fn k(&self) -> usize {
        self.cols() - 2
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.values[j * self.rows..(j + 1) * self.rows]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[col * self.rows + row]
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn group_column_index(&self) -> usize {
        GROUP_COLUMN
    }

    /// Rows in group 0 and group 1.
    pub fn group_sizes(&self) -> (usize, usize) {
        let n1 = self.column(GROUP_COLUMN).iter().filter(|&&g| g == 1.0).count();
        (self.rows - n1, n1)
    }

    /// `X·β`.
    pub fn mul_vec(&self, beta: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for (j, &b) in beta.iter().enumerate() {
            for (o, x) in out.iter_mut().zip(self.column(j)) {
                *o += x * b;
            }
        }
        out
    }

    /// `X′·v`.
    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.cols())
            .map(|j| self.column(j).iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    }
}

/// Least squares fit of `y = Xβ + ε`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegressionFit {
    beta_hat: Vec<f64>,
    sigma2_hat: f64,
    m: usize,
    v_diag: Vec<f64>,
    n0: usize,
    n1: usize,
}

impl RegressionFit {
    pub fn beta_hat(&self) -> &[f64] {
        &self.beta_hat
    }

    /// β̂₁, the group coefficient.
    pub fn beta_group(&self) -> f64 {
        self.beta_hat[GROUP_COLUMN]
    }

    /// Residual variance `RSS / m`.
    pub fn sigma2_hat(&self) -> f64 {
        self.sigma2_hat
    }

    pub fn sigma_hat(&self) -> f64 {
        libm::sqrt(self.sigma2_hat)
    }

    /// Residual degrees of freedom `n − 2 − k`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Diagonal of `(X′X)⁻¹`.
    pub fn v_diag(&self) -> &[f64] {
        &self.v_diag
    }

    /// `v₁² = e′(X′X)⁻¹e`, the group entry of [`v_diag`](Self::v_diag).
    pub fn v1_squared(&self) -> f64 {
        self.v_diag[GROUP_COLUMN]
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n(&self) -> usize {
        self.n0 + self.n1
    }

    pub fn k(&self) -> usize {
        self.beta_hat.len() - 2
    }
}

/// Ordinary least squares via Householder QR (no pivoting).
///
/// `X′X` is never formed. `diag((X′X)⁻¹)` comes from the rows of `R⁻¹`,
/// obtained by back substitution against unit vectors. A residual sum of
/// squares below the rounding floor `(n·ε)²·‖y‖²` is reported as exactly 0.
pub fn ols_fit(x: &DesignMatrix, y: &[f64]) -> Result<RegressionFit> {
    let n = x.rows();
    let p = x.cols();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: y.len(),
        });
    }
    if let Some(row) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            column: "(response)".to_string(),
            row,
        });
    }

    let mut a = x.values.clone();
    let mut qty = y.to_vec();
    let mut diag = vec![0.0; p];

    for j in 0..p {
        let (head, tail) = a.split_at_mut((j + 1) * n);
        let col = &mut head[j * n..];
        let norm = libm::sqrt(col[j..].iter().map(|v| v * v).sum::<f64>());
        if norm == 0.0 {
            diag[j] = 0.0;
            continue;
        }
        let alpha = if col[j] > 0.0 { -norm } else { norm };
        // v = col[j..] − alpha·e₁, stored in place
        col[j] -= alpha;
        let vtv: f64 = col[j..].iter().map(|v| v * v).sum();
        diag[j] = alpha;
        if vtv == 0.0 {
            continue;
        }
        let v = &col[j..];
        for k in 0..p - j - 1 {
            let target = &mut tail[k * n + j..(k + 1) * n];
            let s = 2.0 * v.iter().zip(target.iter()).map(|(a, b)| a * b).sum::<f64>() / vtv;
            for (t, vi) in target.iter_mut().zip(v) {
                *t -= s * vi;
            }
        }
        let target = &mut qty[j..];
        let s = 2.0 * v.iter().zip(target.iter()).map(|(a, b)| a * b).sum::<f64>() / vtv;
        for (t, vi) in target.iter_mut().zip(v) {
            *t -= s * vi;
        }
    }

    let max_diag = diag.iter().fold(0.0f64, |acc, d| acc.max(d.abs()));
    let tol = n as f64 * f64::EPSILON * max_diag;
    if let Some(column) = diag.iter().position(|d| !(d.abs() >= tol) || *d == 0.0) {
        return Err(Error::RankDeficient { column });
    }

    // R[i][j] for j > i sits at a[j*n + i]; the diagonal lives in `diag`.
    let r = |i: usize, j: usize| if i == j { diag[i] } else { a[j * n + i] };

    let mut beta = qty[..p].to_vec();
    for i in (0..p).rev() {
        let mut s = beta[i];
        for j in i + 1..p {
            s -= r(i, j) * beta[j];
        }
        beta[i] = s / r(i, i);
    }

    // rows of R⁻¹: solve R·z = e_c for each column c, accumulate z_i² into row i
    let mut v_diag = vec![0.0; p];
    let mut z = vec![0.0; p];
    for c in 0..p {
        for i in (0..=c).rev() {
            let mut s = if i == c { 1.0 } else { 0.0 };
            for j in i + 1..=c {
                s -= r(i, j) * z[j];
            }
            z[i] = s / r(i, i);
            v_diag[i] += z[i] * z[i];
        }
    }

    let fitted = x.mul_vec(&beta);
    let rss: f64 = y.iter().zip(&fitted).map(|(a, b)| (a - b) * (a - b)).sum();
    let y_norm2: f64 = y.iter().map(|v| v * v).sum();
    let floor = (n as f64 * f64::EPSILON) * (n as f64 * f64::EPSILON) * y_norm2;
    let rss = if rss <= floor { 0.0 } else { rss };

    let m = n - p;
    let (n0, n1) = x.group_sizes();
    Ok(RegressionFit {
        beta_hat: beta,
        sigma2_hat: rss / m as f64,
        m,
        v_diag,
        n0,
        n1,
    })
}

/// `v₁² = (n₀ + n₁) / (n₀·n₁)`, the closed form for a design without covariates.
pub fn v1_squared_two_group(n0: usize, n1: usize) -> Result<f64> {
    if n0 == 0 || n1 == 0 {
        return Err(Error::Domain {
            function: "v1_squared_two_group",
            detail: "both groups need at least one observation",
        });
    }
    Ok((n0 + n1) as f64 / (n0 as f64 * n1 as f64))
}
