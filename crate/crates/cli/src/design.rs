//! Binding a formula to a dataset.

use regd_core::DesignMatrix;
use serde::{Deserialize, Serialize};

use crate::dataset::{Column, Dataset};
use crate::error::{CliError, Result};
use crate::formula::ModelSpec;

/// Which group level was coded 0 and which 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelMapping {
    pub column: String,
    /// Coded 0.
    pub reference: String,
    /// Coded 1.
    pub other: String,
}

#[derive(Debug, Clone)]
pub struct BoundDesign {
    pub matrix: DesignMatrix,
    pub response: Vec<f64>,
    pub levels: LevelMapping,
    pub rows_dropped: usize,
}

fn lookup<'a>(dataset: &'a Dataset, name: &str) -> Result<&'a Column> {
    dataset
        .column(name)
        .ok_or_else(|| CliError::UnknownColumn(name.to_string()))
}

fn numeric<'a>(dataset: &'a Dataset, name: &str) -> Result<&'a [Option<f64>]> {
    match lookup(dataset, name)? {
        Column::Numeric(values) => Ok(values),
        Column::Text(_) => Err(CliError::NonNumeric(name.to_string())),
    }
}

/// Orders two levels: numerically when both parse as numbers, otherwise
/// lexicographically.
fn level_order(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => x.total_cmp(&y),
        _ => a.cmp(b),
    }
}

/// Builds `[1, group, covariates…]` and the response for the rows in use.
///
/// Rows with a missing cell in any used column are an error unless
/// `drop_missing` is set, in which case they are skipped and counted.
pub fn build_design_matrix(dataset: &Dataset, spec: &ModelSpec, drop_missing: bool) -> Result<BoundDesign> {
    let response = numeric(dataset, &spec.response)?;
    let group = lookup(dataset, &spec.group)?;
    let covariates = spec
        .covariates
        .iter()
        .map(|name| numeric(dataset, name))
        .collect::<Result<Vec<_>>>()?;

    let mut keep = Vec::with_capacity(dataset.rows());
    for row in 0..dataset.rows() {
        let missing = if response[row].is_none() {
            Some(&spec.response)
        } else if group.is_missing(row) {
            Some(&spec.group)
        } else {
            spec.covariates
                .iter()
                .zip(&covariates)
                .find(|(_, values)| values[row].is_none())
                .map(|(name, _)| name)
        };
        match missing {
            None => keep.push(row),
            Some(_) if drop_missing => {}
            Some(column) => {
                return Err(CliError::Missing {
                    column: column.clone(),
                    row: row + 1,
                })
            }
        }
    }

    let labels: Vec<String> = keep
        .iter()
        .map(|&row| group.label(row).expect("missing rows were filtered"))
        .collect();
    let mut levels: Vec<&str> = labels.iter().map(String::as_str).collect();
    levels.sort_by(|a, b| level_order(a, b));
    levels.dedup();
    if levels.len() != 2 {
        return Err(CliError::GroupLevels {
            column: spec.group.clone(),
            levels: levels.len(),
        });
    }
    let reference = match &spec.reference_level {
        None => levels[0].to_string(),
        Some(level) => {
            let found = levels.iter().find(|l| {
                **l == level.as_str()
                    || matches!((l.parse::<f64>(), level.parse::<f64>()), (Ok(a), Ok(b)) if a == b)
            });
            found
                .map(|l| l.to_string())
                .ok_or_else(|| CliError::UnknownLevel {
                    column: spec.group.clone(),
                    level: level.clone(),
                })?
        }
    };
    let other = levels.iter().find(|l| **l != reference).unwrap().to_string();

    let coded: Vec<f64> = labels.iter().map(|l| if *l == reference { 0.0 } else { 1.0 }).collect();
    let y: Vec<f64> = keep.iter().map(|&r| response[r].unwrap()).collect();
    let cov_values: Vec<Vec<f64>> = covariates
        .iter()
        .map(|values| keep.iter().map(|&r| values[r].unwrap()).collect())
        .collect();
    let cov_refs: Vec<(&str, &[f64])> = spec
        .covariates
        .iter()
        .map(String::as_str)
        .zip(cov_values.iter().map(Vec::as_slice))
        .collect();

    let matrix = DesignMatrix::new(&spec.group, &coded, &cov_refs)?;
    Ok(BoundDesign {
        matrix,
        response: y,
        levels: LevelMapping {
            column: spec.group.clone(),
            reference,
            other,
        },
        rows_dropped: dataset.rows() - keep.len(),
    })
}
