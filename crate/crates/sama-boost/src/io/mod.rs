//! Everything that crosses the process boundary: CSV dataset
//! ingestion and experiment-report serialization.

mod loader;
mod report;

pub use loader::{load_csv_dataset, DatasetManifest, LoadedDataset, ViewSpec};
pub use report::{
    digest_indices, report_from_json, report_to_json, write_report, ExperimentReport, Metrics,
    ReportFormat, RoundRecord, SplitSummary, SCHEMA_VERSION,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed csv")]
    Csv(#[from] csv::Error),
    #[error("{path} has no data rows")]
    EmptyFile { path: String },
    #[error("label column {column:?} is not in the header")]
    UnknownLabelColumn { column: String },
    #[error("view column {column:?} is not in the header")]
    UnknownViewColumn { column: String },
    #[error("the label column {column:?} cannot be used as a view column")]
    LabelInView { column: String },
    #[error("data row {row}, column {column:?}: {value:?} is not a finite number")]
    BadNumericCell { row: usize, column: String, value: String },
    #[error("delimiter {0:?} is not a single-byte character")]
    BadDelimiter(char),
    #[error("report serialization failed")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Data(#[from] crate::data::DataError),
}
