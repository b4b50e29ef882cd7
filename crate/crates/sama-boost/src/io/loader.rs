//! CSV dataset ingestion.
//!
//! Expects a header row; every non-label cell must parse as a finite
//! number. Labels may be arbitrary strings and are remapped to
//! contiguous 1..=K in order of first appearance, with the mapping
//! returned alongside the dataset.

use super::IoError;
use crate::data::{partition_views, MultiviewDataset};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Where a dataset lives and how to slice it into views.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetManifest {
    pub path: PathBuf,
    /// Header name of the label column.
    pub label_column: String,
    #[serde(rename = "views")]
    pub view_spec: ViewSpec,
    /// Field delimiter; must be a single byte.
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
}

fn default_delimiter() -> char {
    ','
}

impl DatasetManifest {
    pub fn new(path: impl Into<PathBuf>, label_column: impl Into<String>, view_spec: ViewSpec) -> Self {
        Self { path: path.into(), label_column: label_column.into(), view_spec, delimiter: ',' }
    }
}

/// How feature columns are grouped into views.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViewSpec {
    /// Column-name groups, one per view; must be disjoint and cover
    /// every feature column.
    Explicit(Vec<Vec<String>>),
    /// Shuffle the feature columns with `seed` and deal them into
    /// `count` nearly equal views.
    Random { count: usize, seed: u64 },
}

/// A parsed dataset plus the naming context the file carried.
#[derive(Debug, Clone)]
pub struct LoadedDataset {
    pub dataset: MultiviewDataset,
    /// Feature headers in column order (label column removed).
    pub feature_names: Vec<String>,
    /// `label_names[c - 1]` is the original string for class c.
    pub label_names: Vec<String>,
}

fn delimiter_byte(delimiter: char) -> Result<u8, IoError> {
    u8::try_from(u32::from(delimiter)).map_err(|_| IoError::BadDelimiter(delimiter))
}

/// Loads the file described by `manifest` into a [`MultiviewDataset`].
pub fn load_csv_dataset(manifest: &DatasetManifest) -> Result<LoadedDataset, IoError> {
    let path_label = manifest.path.display().to_string();
    let file = std::fs::File::open(&manifest.path)
        .map_err(|source| IoError::Read { path: path_label.clone(), source })?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter_byte(manifest.delimiter)?)
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let headers = reader.headers()?.clone();
    let label_index = headers
        .iter()
        .position(|h| h == manifest.label_column)
        .ok_or_else(|| IoError::UnknownLabelColumn { column: manifest.label_column.clone() })?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_index)
        .map(|(_, h)| h.to_string())
        .collect();

    let mut examples: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let mut label_names: Vec<String> = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record?;
        let row = index + 1; // 1-based data rows, header excluded
        let mut features = Vec::with_capacity(feature_names.len());
        for (column, cell) in record.iter().enumerate() {
            if column == label_index {
                continue;
            }
            let parsed: f64 = cell.parse().unwrap_or(f64::NAN);
            if !parsed.is_finite() {
                return Err(IoError::BadNumericCell {
                    row,
                    column: headers.get(column).unwrap_or("").to_string(),
                    value: cell.to_string(),
                });
            }
            features.push(parsed);
        }
        let raw_label = record.get(label_index).unwrap_or("");
        let class = match label_names.iter().position(|name| name == raw_label) {
            Some(existing) => existing + 1,
            None => {
                label_names.push(raw_label.to_string());
                label_names.len()
            }
        };
        examples.push(features);
        labels.push(class);
    }
    if examples.is_empty() {
        return Err(IoError::EmptyFile { path: path_label });
    }

    let d = feature_names.len();
    let views = match &manifest.view_spec {
        ViewSpec::Random { count, seed } => partition_views(d, *count, *seed)?,
        ViewSpec::Explicit(groups) => resolve_view_names(groups, &feature_names, &manifest.label_column)?,
    };
    let k = label_names.len();
    let dataset = MultiviewDataset::new(examples, views, labels, k)?;
    Ok(LoadedDataset { dataset, feature_names, label_names })
}

fn resolve_view_names(
    groups: &[Vec<String>],
    feature_names: &[String],
    label_column: &str,
) -> Result<Vec<Vec<usize>>, IoError> {
    groups
        .iter()
        .map(|group| {
            group
                .iter()
                .map(|name| {
                    if name == label_column {
                        return Err(IoError::LabelInView { column: name.clone() });
                    }
                    feature_names
                        .iter()
                        .position(|f| f == name)
                        .ok_or_else(|| IoError::UnknownViewColumn { column: name.clone() })
                })
                .collect()
        })
        .collect()
}
