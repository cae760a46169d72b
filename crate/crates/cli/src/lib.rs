//! CSV ingestion, model formulas, reports and the `regd` command line.

pub mod dataset;
pub mod design;
pub mod error;
pub mod formula;
pub mod report;
pub mod simulate;

pub use dataset::{load_csv, Column, Dataset};
pub use design::{build_design_matrix, BoundDesign, LevelMapping};
pub use error::{CliError, Result};
pub use formula::{parse_formula, render, ModelSpec};
pub use report::{analyze, render_text, to_json, EffectSizeReport};
