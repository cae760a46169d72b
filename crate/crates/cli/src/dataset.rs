//! Column-typed tables read from delimited text.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{CliError, Result};

/// One column. `None` marks a missing cell (empty or `NA`).
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Numeric(Vec<Option<f64>>),
    Text(Vec<Option<String>>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Numeric(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_missing(&self, row: usize) -> bool {
        match self {
            Column::Numeric(v) => v[row].is_none(),
            Column::Text(v) => v[row].is_none(),
        }
    }

    /// The cell as text; numbers use Rust's shortest round-trip form.
    pub fn label(&self, row: usize) -> Option<String> {
        match self {
            Column::Numeric(v) => v[row].map(|x| x.to_string()),
            Column::Text(v) => v[row].clone(),
        }
    }
}

/// A rectangular table of named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Column>,
    rows: usize,
}

impl Dataset {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.names.iter().position(|n| n == name).map(|i| &self.columns[i])
    }
}

fn is_missing(cell: &str) -> bool {
    let cell = cell.trim();
    cell.is_empty() || cell == "NA"
}

/// Reads a headed, delimited file. Columns whose non-missing cells all parse
/// as numbers become numeric; all others are text.
pub fn load_csv(path: &Path, delimiter: u8) -> Result<Dataset> {
    let file = File::open(path).map_err(|source| CliError::Unreadable {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(file, delimiter).map_err(|e| match e {
        CliError::EmptyFile { .. } => CliError::EmptyFile {
            path: path.to_path_buf(),
        },
        other => other,
    })
}

/// As [`load_csv`], from any reader.
pub fn parse_csv<R: Read>(reader: R, delimiter: u8) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .flexible(true)
        .from_reader(reader);

    let header = rdr.headers()?.clone();
    if header.is_empty() || (header.len() == 1 && header[0].trim().is_empty()) {
        return Err(CliError::EmptyFile {
            path: "<input>".into(),
        });
    }
    let names: Vec<String> = header.iter().map(|h| h.trim().to_string()).collect();
    let width = names.len();

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); width];
    for record in rdr.records() {
        let record = record?;
        if record.len() != width {
            let line = record.position().map_or(0, |p| p.line());
            return Err(CliError::RaggedRow {
                line,
                expected: width,
                found: record.len(),
            });
        }
        for (column, cell) in cells.iter_mut().zip(record.iter()) {
            column.push(cell.to_string());
        }
    }

    let rows = cells.first().map_or(0, Vec::len);
    let columns = cells.into_iter().map(type_column).collect();
    Ok(Dataset { names, columns, rows })
}

fn type_column(raw: Vec<String>) -> Column {
    let numeric: Option<Vec<Option<f64>>> = raw
        .iter()
        .map(|cell| {
            if is_missing(cell) {
                Some(None)
            } else {
                cell.trim().parse::<f64>().ok().map(Some)
            }
        })
        .collect();
    match numeric {
        Some(values) => Column::Numeric(values),
        None => Column::Text(
            raw.into_iter()
                .map(|cell| if is_missing(&cell) { None } else { Some(cell) })
                .collect(),
        ),
    }
}
