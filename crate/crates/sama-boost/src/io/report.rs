//! Experiment reports: the typed artifact a run leaves behind, and its
//! JSON / CSV-bundle serializations.
//!
//! Every float is serialized with 12 significant digits in scientific
//! notation, which keeps output byte-identical across runs of the same
//! experiment while preserving more precision than any of the tracked
//! quantities carries.

use super::IoError;
use crate::diagnostics::{BoundTrace, KappaErrorCloud, MarginReport};
use crate::runner::{Algorithm, RunConfig};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

/// What one boosting round contributed, plus the errors of the
/// ensemble truncated right after it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RoundRecord {
    /// 1-based round index.
    pub round: usize,
    /// Expansion coefficient (alpha for the single-view baselines;
    /// reported as 0 for late fusion, which has no fused coefficient).
    pub beta: f64,
    /// Weight-update normalizer (1 for late fusion, as above).
    pub z: f64,
    pub beta_clamped: bool,
    /// Weighted error of each view's learner this round; single-entry
    /// for the concatenated-space baselines, and possibly shorter than
    /// V for late fusion when a view stopped early.
    pub per_view_error: Vec<f64>,
    /// Per-view fitness scores; empty for the baselines, which vote
    /// without fitness.
    pub fitness: Vec<f64>,
    pub train_error: f64,
    pub test_error: f64,
}

/// Final-model quality. The threshold metrics treat class 1 (the
/// first label seen in the file) as positive and exist only for K = 2.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metrics {
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_score: Option<f64>,
    pub auc: Option<f64>,
}

/// Partition sizes plus order-sensitive digests of the index lists, so
/// reports can prove two runs shared a split without embedding it.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SplitSummary {
    pub train: usize,
    pub validation: usize,
    pub test: usize,
    pub train_digest: u64,
    pub validation_digest: u64,
    pub test_digest: u64,
}

impl SplitSummary {
    pub fn from_split(split: &crate::data::StratifiedSplit) -> Self {
        Self {
            train: split.train_indices.len(),
            validation: split.validation_indices.len(),
            test: split.test_indices.len(),
            train_digest: digest_indices(&split.train_indices),
            validation_digest: digest_indices(&split.validation_indices),
            test_digest: digest_indices(&split.test_indices),
        }
    }
}

/// FNV-1a over the little-endian bytes of each index.
pub fn digest_indices(indices: &[usize]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &index in indices {
        for byte in (index as u64).to_le_bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x100000001b3);
        }
    }
    hash
}

/// The complete artifact of one run: configuration echo, data
/// provenance, per-round trajectory, metrics, and whichever diagnostic
/// sections were requested.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub algorithm: Algorithm,
    pub config: RunConfig,
    pub label_names: Vec<String>,
    pub feature_names: Vec<String>,
    /// Resolved feature-column groups, one per view.
    pub views: Vec<Vec<usize>>,
    pub split: SplitSummary,
    pub rounds: Vec<RoundRecord>,
    pub metrics: Metrics,
    pub bounds: Option<BoundTrace>,
    pub margins: Option<MarginReport>,
    pub kappa: Option<KappaErrorCloud>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Json,
    CsvBundle,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv_bundle" => Ok(Self::CsvBundle),
            other => Err(format!("unknown format {other:?} (expected json or csv_bundle)")),
        }
    }
}

/// 12 significant digits, scientific notation — the one float format
/// used across every artifact.
pub(crate) fn fmt_f64(value: f64) -> String {
    format!("{value:.11e}")
}

/// Pretty JSON with [`fmt_f64`] floats.
struct TwelveDigits<'a> {
    inner: serde_json::ser::PrettyFormatter<'a>,
}

impl TwelveDigits<'_> {
    fn new() -> Self {
        Self { inner: serde_json::ser::PrettyFormatter::new() }
    }
}

impl serde_json::ser::Formatter for TwelveDigits<'_> {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{}", fmt_f64(value))
    }

    fn begin_array<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.begin_array(writer)
    }

    fn end_array<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.begin_object(writer)
    }

    fn end_object<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W>(&mut self, writer: &mut W, first: bool) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.begin_object_key(writer, first)
    }

    fn end_object_key<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.end_object_key(writer)
    }

    fn begin_object_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W>(&mut self, writer: &mut W) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        self.inner.end_object_value(writer)
    }
}

fn to_json_with_formatter<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut buffer = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut buffer, TwelveDigits::new());
    value.serialize(&mut serializer)?;
    buffer.push(b'\n');
    Ok(String::from_utf8(buffer).expect("serializer emits utf-8"))
}

pub fn report_to_json(report: &ExperimentReport) -> Result<String, IoError> {
    to_json_with_formatter(report)
}

pub fn report_from_json(text: &str) -> Result<ExperimentReport, IoError> {
    Ok(serde_json::from_str(text)?)
}

fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text)
        .map_err(|source| IoError::Write { path: path.display().to_string(), source })
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush().map_err(|source| IoError::Write {
        path: path.display().to_string(),
        source,
    })?;
    let bytes = writer.into_inner().expect("vec writer cannot fail");
    std::fs::write(path, bytes)
        .map_err(|source| IoError::Write { path: path.display().to_string(), source })
}

#[derive(Serialize)]
struct BundleManifest {
    schema_version: u32,
    files: Vec<String>,
}

/// Writes `report` to `path`. For [`ReportFormat::Json`], `path` is
/// the document itself; for [`ReportFormat::CsvBundle`], it is a
/// directory receiving one CSV per populated section plus a
/// `manifest.json` naming what was written. Returns the files written.
pub fn write_report(
    report: &ExperimentReport,
    path: &Path,
    format: ReportFormat,
) -> Result<Vec<PathBuf>, IoError> {
    match format {
        ReportFormat::Json => {
            write_text(path, &report_to_json(report)?)?;
            Ok(vec![path.to_path_buf()])
        }
        ReportFormat::CsvBundle => write_bundle(report, path),
    }
}

fn write_bundle(report: &ExperimentReport, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir)
        .map_err(|source| IoError::Write { path: dir.display().to_string(), source })?;
    let mut files: Vec<String> = Vec::new();
    let mut written: Vec<PathBuf> = Vec::new();
    let emit = |name: &str,
                header: Vec<String>,
                rows: Vec<Vec<String>>,
                files: &mut Vec<String>,
                written: &mut Vec<PathBuf>|
     -> Result<(), IoError> {
        let path = dir.join(name);
        write_csv(&path, &header, &rows)?;
        files.push(name.to_string());
        written.push(path);
        Ok(())
    };

    // rounds.csv: per-view columns sized to the widest round
    let view_count =
        report.rounds.iter().map(|r| r.per_view_error.len()).max().unwrap_or(0);
    let fitness_count = report.rounds.iter().map(|r| r.fitness.len()).max().unwrap_or(0);
    let mut header: Vec<String> =
        ["round", "beta", "z", "beta_clamped", "train_error", "test_error"]
            .iter()
            .map(|s| s.to_string())
            .collect();
    header.extend((0..view_count).map(|v| format!("error_view{v}")));
    header.extend((0..fitness_count).map(|v| format!("fitness_view{v}")));
    let rows: Vec<Vec<String>> = report
        .rounds
        .iter()
        .map(|r| {
            let mut row = vec![
                r.round.to_string(),
                fmt_f64(r.beta),
                fmt_f64(r.z),
                r.beta_clamped.to_string(),
                fmt_f64(r.train_error),
                fmt_f64(r.test_error),
            ];
            for v in 0..view_count {
                row.push(r.per_view_error.get(v).map(|&e| fmt_f64(e)).unwrap_or_default());
            }
            for v in 0..fitness_count {
                row.push(r.fitness.get(v).map(|&f| fmt_f64(f)).unwrap_or_default());
            }
            row
        })
        .collect();
    emit("rounds.csv", header, rows, &mut files, &mut written)?;

    if let Some(bounds) = &report.bounds {
        let header =
            ["round", "z", "beta", "bound", "training_error"].map(String::from).to_vec();
        let rows = bounds
            .points
            .iter()
            .map(|p| {
                vec![
                    p.round.to_string(),
                    fmt_f64(p.z),
                    fmt_f64(p.beta),
                    fmt_f64(p.bound),
                    fmt_f64(p.training_error),
                ]
            })
            .collect();
        emit("bounds.csv", header, rows, &mut files, &mut written)?;
    }

    if let Some(margins) = &report.margins {
        let header = ["psi", "fraction_at_most", "margin_bound"].map(String::from).to_vec();
        let mut cdf = margins.cdf.clone();
        cdf.sort_by(|a, b| a.0.total_cmp(&b.0));
        let rows = cdf
            .iter()
            .map(|&(psi, fraction)| {
                let bound = margins
                    .bound_curve
                    .iter()
                    .find(|(theta, _)| (theta - psi).abs() < 1e-9)
                    .map(|&(_, b)| fmt_f64(b))
                    .unwrap_or_default();
                vec![fmt_f64(psi), fmt_f64(fraction), bound]
            })
            .collect();
        emit("margins.csv", header, rows, &mut files, &mut written)?;
    }

    if let Some(cloud) = &report.kappa {
        let header = ["member_i", "member_j", "kappa", "mean_error"].map(String::from).to_vec();
        let rows = cloud
            .points
            .iter()
            .map(|p| {
                vec![p.i.to_string(), p.j.to_string(), fmt_f64(p.kappa), fmt_f64(p.error)]
            })
            .collect();
        emit("kappa_cloud.csv", header, rows, &mut files, &mut written)?;
    }

    let header = ["metric", "value"].map(String::from).to_vec();
    let mut rows = vec![
        vec!["train_accuracy".to_string(), fmt_f64(report.metrics.train_accuracy)],
        vec!["test_accuracy".to_string(), fmt_f64(report.metrics.test_accuracy)],
    ];
    for (name, value) in [
        ("precision", report.metrics.precision),
        ("recall", report.metrics.recall),
        ("f_score", report.metrics.f_score),
        ("auc", report.metrics.auc),
    ] {
        if let Some(value) = value {
            rows.push(vec![name.to_string(), fmt_f64(value)]);
        }
    }
    if let Some(cloud) = &report.kappa {
        rows.push(vec!["kappa_members".to_string(), cloud.members.to_string()]);
        rows.push(vec!["kappa_centroid_kappa".to_string(), fmt_f64(cloud.centroid_kappa)]);
        rows.push(vec!["kappa_centroid_error".to_string(), fmt_f64(cloud.centroid_error)]);
    }
    emit("metrics.csv", header, rows, &mut files, &mut written)?;

    let manifest = BundleManifest { schema_version: report.schema_version, files };
    let manifest_path = dir.join("manifest.json");
    write_text(&manifest_path, &to_json_with_formatter(&manifest)?)?;
    written.push(manifest_path);
    Ok(written)
}
