//! CSV ingestion into a [`Dataset`].

use std::path::PathBuf;

use cmcsel_core::{Dataset, Family};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("column `{0}` not found in header")]
    MissingColumn(String),
    #[error("row {row}, column `{column}`: cannot parse `{value}` as a number")]
    NonNumericCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("row {row}, column `{column}`: level `{level}` has no mapping")]
    UnmappedLevel {
        row: usize,
        column: String,
        level: String,
    },
    #[error("row {row}, column `{column}`: missing value")]
    MissingCell { row: usize, column: String },
    #[error("row {row}: expected {expected} cells, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("invalid dataset: {0}")]
    Dataset(#[from] cmcsel_core::Error),
}

/// Where the data lives and how to read it.
#[derive(Debug, Clone)]
pub struct CsvSpec {
    pub path: PathBuf,
    pub response: String,
    pub family: Family,
    /// Text level encodings per column, e.g. `famhist: Present → 1, Absent → 0`.
    pub categorical_map: Vec<(String, Vec<(String, f64)>)>,
}

impl CsvSpec {
    pub fn new(path: impl Into<PathBuf>, response: impl Into<String>, family: Family) -> Self {
        Self {
            path: path.into(),
            response: response.into(),
            family,
            categorical_map: Vec::new(),
        }
    }

    pub fn map_level(mut self, column: &str, level: &str, value: f64) -> Self {
        match self.categorical_map.iter_mut().find(|(c, _)| c == column) {
            Some((_, levels)) => levels.push((level.to_string(), value)),
            None => self
                .categorical_map
                .push((column.to_string(), vec![(level.to_string(), value)])),
        }
        self
    }

    fn levels(&self, column: &str) -> Option<&[(String, f64)]> {
        self.categorical_map
            .iter()
            .find(|(c, _)| c == column)
            .map(|(_, l)| l.as_slice())
    }
}

/// Header names written by R's `write.csv` and friends for the row-name column.
fn is_index_header(name: &str) -> bool {
    matches!(name, "" | "row.names" | "rownames" | "Unnamed: 0")
}

/// Reads `spec.path`: header row required, predictors in file column order,
/// an unnamed leading index column skipped. Row numbers in errors count data
/// rows from 1.
pub fn load_csv(spec: &CsvSpec) -> Result<Dataset, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(&spec.path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();

    let skip_first = headers.first().is_some_and(|h| is_index_header(h));
    let response_idx = headers
        .iter()
        .position(|h| *h == spec.response)
        .ok_or_else(|| LoadError::MissingColumn(spec.response.clone()))?;
    for (column, _) in &spec.categorical_map {
        if !headers.contains(column) {
            return Err(LoadError::MissingColumn(column.clone()));
        }
    }
    let predictor_idx: Vec<usize> = (0..headers.len())
        .filter(|&j| j != response_idx && !(skip_first && j == 0))
        .collect();

    let mut columns = vec![Vec::new(); predictor_idx.len()];
    let mut y = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        let row = r + 1;
        if record.len() != headers.len() {
            return Err(LoadError::RaggedRow {
                row,
                expected: headers.len(),
                found: record.len(),
            });
        }
        let cell = |j: usize| -> Result<f64, LoadError> {
            let column = &headers[j];
            let raw = &record[j];
            if raw.is_empty() || raw == "NA" {
                return Err(LoadError::MissingCell {
                    row,
                    column: column.clone(),
                });
            }
            if let Some(levels) = spec.levels(column) {
                if let Some((_, v)) = levels.iter().find(|(l, _)| l == raw) {
                    return Ok(*v);
                }
                if raw.parse::<f64>().is_err() {
                    return Err(LoadError::UnmappedLevel {
                        row,
                        column: column.clone(),
                        level: raw.to_string(),
                    });
                }
            }
            raw.parse::<f64>().map_err(|_| LoadError::NonNumericCell {
                row,
                column: column.clone(),
                value: raw.to_string(),
            })
        };
        for (col, &j) in columns.iter_mut().zip(&predictor_idx) {
            col.push(cell(j)?);
        }
        y.push(cell(response_idx)?);
    }

    let names = predictor_idx.iter().map(|&j| headers[j].clone()).collect();
    Ok(Dataset::from_columns(spec.family, columns, y)?.with_names(names)?)
}
