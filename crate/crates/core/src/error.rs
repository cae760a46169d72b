use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the function.
    Domain { function: &'static str, detail: &'static str },
    /// An iterative routine hit its iteration cap.
    NoConvergence { routine: &'static str, iterations: usize },
    /// The group regressor does not take exactly the two values 0 and 1.
    NonBinaryGroup { distinct: usize },
    /// A design or response cell is NaN or infinite.
    NonFinite { column: String, row: usize },
    /// `n ≤ 2 + k`: no residual degrees of freedom.
    TooFewObservations { n: usize, columns: usize },
    /// Response length differs from the design row count, or column lengths differ.
    LengthMismatch { expected: usize, found: usize },
    /// A triangular-factor diagonal fell below the rank tolerance.
    RankDeficient { column: usize },
    /// Residual variance is zero, so d̂ is undefined.
    DegenerateVariance,
    /// Non-centrality outside the supported range; the CDF is pinned at `limit`.
    Saturated { tau: f64, limit: f64 },
    /// The root bracket for the non-centrality parameter could not be found.
    BracketFailure { target: f64 },
    /// A quantity that is positive in exact arithmetic came out non-positive.
    NumericalDegeneracy { quantity: &'static str, value: f64 },
    /// Simulation settings violate their invariants.
    InvalidConfig(&'static str),
    /// The simulation drew too many singular designs in a row.
    RepeatedRankFailure { attempts: usize },
}

/// Coarse classification used for exit codes and error reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Data,
    Numerical,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "domain",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NonBinaryGroup { .. } => "non_binary_group",
            Error::NonFinite { .. } => "non_finite",
            Error::TooFewObservations { .. } => "too_few_observations",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::DegenerateVariance => "degenerate_variance",
            Error::Saturated { .. } => "saturated",
            Error::BracketFailure { .. } => "bracket_failure",
            Error::NumericalDegeneracy { .. } => "numerical_degeneracy",
            Error::InvalidConfig(_) => "invalid_config",
            Error::RepeatedRankFailure { .. } => "repeated_rank_failure",
        }
    }

    /// Module that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Domain { function, .. } => match *function {
                "ln_gamma" | "regularized_incomplete_beta" | "std_normal_cdf" => "special",
                "c_factor" | "nct_mean" | "nct_variance" | "nct_cdf" | "invert_noncentrality" => {
                    "nct"
                }
                "inversion_ci" | "normal_ci" | "normal_quantile" => "interval",
                "v1_squared_two_group" => "linalg",
                _ => "effect",
            },
            Error::NoConvergence { .. } => "special",
            Error::NonBinaryGroup { .. }
            | Error::NonFinite { .. }
            | Error::TooFewObservations { .. }
            | Error::LengthMismatch { .. }
            | Error::RankDeficient { .. } => "linalg",
            Error::DegenerateVariance | Error::NumericalDegeneracy { .. } => "effect",
            Error::Saturated { .. } | Error::BracketFailure { .. } => "nct",
            Error::InvalidConfig(_) | Error::RepeatedRankFailure { .. } => "sim",
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NonBinaryGroup { .. }
            | Error::NonFinite { .. }
            | Error::TooFewObservations { .. }
            | Error::LengthMismatch { .. }
            | Error::RankDeficient { .. }
            | Error::DegenerateVariance => ErrorKind::Data,
            Error::InvalidConfig(_) => ErrorKind::Usage,
            _ => ErrorKind::Numerical,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { function, detail } => write!(f, "{function}: {detail}"),
            Error::NoConvergence { routine, iterations } => {
                write!(f, "{routine} did not converge within {iterations} iterations")
            }
            Error::NonBinaryGroup { distinct } => write!(
                f,
                "group regressor must contain exactly the values 0 and 1, found {distinct} distinct values"
            ),
            Error::NonFinite { column, row } => {
                write!(f, "column `{column}` has a missing or non-finite value at row {row}")
            }
            Error::TooFewObservations { n, columns } => write!(
                f,
                "{n} observations leave no residual degrees of freedom for {columns} coefficients"
            ),
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            Error::RankDeficient { column } => {
                write!(f, "design matrix is rank deficient at column {column}")
            }
            Error::DegenerateVariance => {
                write!(f, "residual variance is zero; the effect size is undefined")
            }
            Error::Saturated { tau, limit } => write!(
                f,
                "non-centrality {tau} is outside the supported range |tau| <= 1000; CDF saturated at {limit}"
            ),
            Error::BracketFailure { target } => write!(
                f,
                "no non-centrality parameter within |tau| <= 1000 attains CDF value {target}"
            ),
            Error::NumericalDegeneracy { quantity, value } => {
                write!(f, "{quantity} evaluated to {value}, expected a positive value")
            }
            Error::InvalidConfig(msg) => write!(f, "invalid simulation config: {msg}"),
            Error::RepeatedRankFailure { attempts } => write!(
                f,
                "{attempts} consecutive simulated designs were rank deficient"
            ),
        }
    }
}

impl core::error::Error for Error {}
