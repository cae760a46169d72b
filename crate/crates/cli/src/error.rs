//! Errors surfaced by the command line, with their exit codes.

use std::path::PathBuf;

use regd_core::ErrorKind;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] regd_core::Error),
    #[error("cannot read `{}`: {source}", path.display())]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("`{}` is empty", path.display())]
    EmptyFile { path: PathBuf },
    #[error("line {line}: expected {expected} fields, found {found}")]
    RaggedRow { line: u64, expected: usize, found: usize },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("formula syntax error at byte {offset}: {message}")]
    FormulaSyntax { offset: usize, message: String },
    #[error("term `{0}` appears more than once in the formula")]
    DuplicateTerm(String),
    #[error("no column named `{0}`")]
    UnknownColumn(String),
    #[error("column `{0}` is not numeric")]
    NonNumeric(String),
    #[error("column `{column}` is missing a value at data row {row}")]
    Missing { column: String, row: usize },
    #[error("group column `{column}` has {levels} distinct values; exactly 2 are required")]
    GroupLevels { column: String, levels: usize },
    #[error("reference level `{level}` does not occur in column `{column}`")]
    UnknownLevel { column: String, level: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Unreadable { .. } => "unreadable_path",
            CliError::EmptyFile { .. } => "empty_file",
            CliError::RaggedRow { .. } => "ragged_row",
            CliError::Csv(_) => "malformed_csv",
            CliError::FormulaSyntax { .. } => "formula_syntax",
            CliError::DuplicateTerm(_) => "duplicate_term",
            CliError::UnknownColumn(_) => "unknown_column",
            CliError::NonNumeric(_) => "non_numeric",
            CliError::Missing { .. } => "missing_value",
            CliError::GroupLevels { .. } => "non_binary_group",
            CliError::UnknownLevel { .. } => "unknown_level",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn module(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.module(),
            CliError::Unreadable { .. }
            | CliError::EmptyFile { .. }
            | CliError::RaggedRow { .. }
            | CliError::Csv(_) => "dataset",
            CliError::FormulaSyntax { .. } | CliError::DuplicateTerm(_) => "formula",
            CliError::UnknownColumn(_)
            | CliError::NonNumeric(_)
            | CliError::Missing { .. }
            | CliError::GroupLevels { .. }
            | CliError::UnknownLevel { .. } => "design",
            CliError::Usage(_) => "cli",
        }
    }

    /// 1 usage, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Usage => 1,
                ErrorKind::Data => 2,
                ErrorKind::Numerical => 3,
            },
            CliError::FormulaSyntax { .. } | CliError::DuplicateTerm(_) | CliError::Usage(_) => 1,
            _ => 2,
        }
    }

    /// `{code, module, message}` for the error stream.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Payload<'a> {
            code: &'a str,
            module: &'a str,
            message: String,
        }
        serde_json::to_string(&Payload {
            code: self.code(),
            module: self.module(),
            message: self.to_string(),
        })
        .expect("error payload serializes")
    }
}
