//! End-to-end experiment orchestration: load a dataset, split it,
//! optionally corrupt the training labels, fit one or several
//! algorithms, evaluate, compute the requested diagnostics, and leave
//! an [`ExperimentReport`] on disk.

use crate::boost::baseline::{fit_baseline, BaselineModel, BaselineStrategy, BoostLateEnsemble, SammeEnsemble};
use crate::boost::{fit_sama, BetaRule, BoostConfig, BoostError, Combiner, Prediction, SamaEnsemble};
use crate::data::{inject_label_noise, stratified_split, MultiviewDataset, SplitSpec};
use crate::diagnostics::{self as diag, DiagError};
use crate::io::{
    load_csv_dataset, write_report, DatasetManifest, ExperimentReport, IoError, Metrics,
    ReportFormat, RoundRecord, SplitSummary, ViewSpec, SCHEMA_VERSION,
};
use crate::learners::{LearnerConfig, LearnerKind};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid configuration:\n  {}", violations.join("\n  "))]
    Config { violations: Vec<String> },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("training failed")]
    Training(#[from] BoostError),
    #[error("diagnostics failed")]
    Diagnostics(#[from] DiagError),
}

impl RunError {
    /// Process exit code: 2 config, 3 data/io, 4 training.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config { .. } => 2,
            Self::Io(_) => 3,
            Self::Training(_) | Self::Diagnostics(_) => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    SamaV1,
    SamaV2,
    Ma,
    Samme,
    BoostEarly,
    BoostLate,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::SamaV1 => "sama_v1",
            Self::SamaV2 => "sama_v2",
            Self::Ma => "ma",
            Self::Samme => "samme",
            Self::BoostEarly => "boost_early",
            Self::BoostLate => "boost_late",
        }
    }

    /// Whether the algorithm trains the collaborative multiview
    /// ensemble (and therefore supports the diagnostics sections).
    pub fn is_multiview(self) -> bool {
        matches!(self, Self::SamaV1 | Self::SamaV2 | Self::Ma)
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sama_v1" => Ok(Self::SamaV1),
            "sama_v2" => Ok(Self::SamaV2),
            "ma" => Ok(Self::Ma),
            "samme" => Ok(Self::Samme),
            "boost_early" => Ok(Self::BoostEarly),
            "boost_late" => Ok(Self::BoostLate),
            other => Err(format!(
                "unknown algorithm {other:?} (expected sama_v1, sama_v2, ma, samme, boost_early or boost_late)"
            )),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SplitSection {
    /// Train / validation / test fractions; must sum to 1.
    pub ratios: [f64; 3],
    pub seed: u64,
}

impl Default for SplitSection {
    fn default() -> Self {
        Self { ratios: [0.6, 0.2, 0.2], seed: 0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSection {
    /// Fraction of *training* labels to flip to a random wrong class.
    pub fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoostSection {
    pub algorithm: Algorithm,
    pub rounds: usize,
    pub beta_max: f64,
    pub beta_tolerance: f64,
    pub clamp_fitness: bool,
    pub seed: u64,
}

impl Default for BoostSection {
    fn default() -> Self {
        let base = BoostConfig::default();
        Self {
            algorithm: Algorithm::SamaV2,
            rounds: base.rounds,
            beta_max: base.beta_max,
            beta_tolerance: base.beta_tolerance,
            clamp_fitness: base.clamp_fitness,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LearnerSection {
    pub kind: LearnerKind,
    pub hidden_units: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub regularization: f64,
}

impl Default for LearnerSection {
    fn default() -> Self {
        let base = LearnerConfig::default();
        Self {
            kind: base.kind,
            hidden_units: base.hidden_units,
            epochs: base.epochs,
            learning_rate: base.learning_rate,
            regularization: base.regularization,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct DiagnosticsSection {
    /// Training-error bound trace (binary multiview runs only).
    pub bounds: bool,
    /// Margin distribution and bound curve.
    pub margins: bool,
    /// Kappa-error cloud over round hypotheses.
    pub kappa: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub path: PathBuf,
    pub format: ReportFormat,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { path: PathBuf::from("report.json"), format: ReportFormat::Json }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct CompareSection {
    /// Algorithms a `compare` invocation fits on the frozen split.
    pub algorithms: Vec<Algorithm>,
}

/// One declarative experiment: every knob a run needs, echoed
/// verbatim into the report it produces.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: DatasetManifest,
    #[serde(default)]
    pub split: SplitSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub boost: BoostSection,
    #[serde(default)]
    pub learner: LearnerSection,
    #[serde(default)]
    pub diagnostics: DiagnosticsSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub compare: CompareSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            dataset: DatasetManifest::new(
                "data.csv",
                "label",
                ViewSpec::Random { count: 2, seed: 0 },
            ),
            split: SplitSection::default(),
            noise: NoiseSection::default(),
            boost: BoostSection::default(),
            learner: LearnerSection::default(),
            diagnostics: DiagnosticsSection::default(),
            output: OutputSection::default(),
            compare: CompareSection::default(),
        }
    }
}

impl RunConfig {
    /// Parses a TOML configuration file.
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        toml::from_str(text).map_err(|e| RunError::Config { violations: vec![e.to_string()] })
    }
}

/// Flag-level overrides layered on top of a parsed config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub algorithm: Option<String>,
    pub rounds: Option<usize>,
    /// Replaces the view spec with a random partition of this size.
    pub views: Option<usize>,
    /// Master seed: sets the view, split, noise, and boosting seeds.
    pub seed: Option<u64>,
    pub noise: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub emit_bounds: bool,
    pub emit_margins: bool,
    pub emit_kappa: bool,
}

pub fn apply_overrides(config: &mut RunConfig, overrides: &Overrides) -> Result<(), RunError> {
    let mut violations = Vec::new();
    if let Some(name) = &overrides.algorithm {
        match name.parse() {
            Ok(algorithm) => config.boost.algorithm = algorithm,
            Err(message) => violations.push(format!("--algorithm: {message}")),
        }
    }
    if let Some(name) = &overrides.format {
        match name.parse() {
            Ok(format) => config.output.format = format,
            Err(message) => violations.push(format!("--format: {message}")),
        }
    }
    if let Some(rounds) = overrides.rounds {
        config.boost.rounds = rounds;
    }
    if let Some(count) = overrides.views {
        let seed = match config.dataset.view_spec {
            ViewSpec::Random { seed, .. } => seed,
            ViewSpec::Explicit(_) => 0,
        };
        config.dataset.view_spec = ViewSpec::Random { count, seed };
    }
    if let Some(seed) = overrides.seed {
        config.split.seed = seed;
        config.noise.seed = seed;
        config.boost.seed = seed;
        if let ViewSpec::Random { count, .. } = config.dataset.view_spec {
            config.dataset.view_spec = ViewSpec::Random { count, seed };
        }
    }
    if let Some(fraction) = overrides.noise {
        config.noise.fraction = fraction;
    }
    if let Some(path) = &overrides.out {
        config.output.path = path.clone();
    }
    config.diagnostics.bounds |= overrides.emit_bounds;
    config.diagnostics.margins |= overrides.emit_margins;
    config.diagnostics.kappa |= overrides.emit_kappa;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(RunError::Config { violations })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Run,
    Compare,
}

/// Collects every violated field instead of stopping at the first.
fn validate(config: &RunConfig, mode: Mode) -> Vec<String> {
    let mut violations = Vec::new();
    if config.boost.rounds == 0 {
        violations.push("boost.rounds must be at least 1".to_string());
    }
    if !(config.boost.beta_max > 0.0) || !config.boost.beta_max.is_finite() {
        violations.push(format!("boost.beta_max = {} must be positive and finite", config.boost.beta_max));
    }
    if !(config.boost.beta_tolerance > 0.0) || !config.boost.beta_tolerance.is_finite() {
        violations.push(format!(
            "boost.beta_tolerance = {} must be positive and finite",
            config.boost.beta_tolerance
        ));
    }
    let ratio_sum: f64 = config.split.ratios.iter().sum();
    if config.split.ratios.iter().any(|&r| r < 0.0) || (ratio_sum - 1.0).abs() > 1e-9 {
        violations.push(format!(
            "split.ratios = {:?} must be non-negative and sum to 1",
            config.split.ratios
        ));
    }
    if !(0.0..=1.0).contains(&config.noise.fraction) || config.noise.fraction.is_nan() {
        violations.push(format!("noise.fraction = {} must lie in [0, 1]", config.noise.fraction));
    }
    if config.learner.kind == LearnerKind::ShallowNet {
        if config.learner.hidden_units == 0 {
            violations.push("learner.hidden_units must be at least 1".to_string());
        }
        if config.learner.epochs == 0 {
            violations.push("learner.epochs must be at least 1".to_string());
        }
        if !(config.learner.learning_rate > 0.0) || !config.learner.learning_rate.is_finite() {
            violations.push(format!(
                "learner.learning_rate = {} must be positive and finite",
                config.learner.learning_rate
            ));
        }
        if config.learner.regularization < 0.0 || !config.learner.regularization.is_finite() {
            violations.push(format!(
                "learner.regularization = {} must be non-negative and finite",
                config.learner.regularization
            ));
        }
    }
    if u8::try_from(u32::from(config.dataset.delimiter)).is_err() {
        violations.push(format!(
            "dataset.delimiter = {:?} must be a single-byte character",
            config.dataset.delimiter
        ));
    }
    match &config.dataset.view_spec {
        ViewSpec::Random { count: 0, .. } => {
            violations.push("dataset.views.random.count must be at least 1".to_string());
        }
        ViewSpec::Explicit(groups) if groups.is_empty() || groups.iter().any(Vec::is_empty) => {
            violations.push("dataset.views.explicit needs at least one non-empty group".to_string());
        }
        _ => {}
    }
    let diagnostics_requested = config.diagnostics.bounds
        || config.diagnostics.margins
        || config.diagnostics.kappa;
    if mode == Mode::Run && diagnostics_requested && !config.boost.algorithm.is_multiview() {
        violations.push(format!(
            "diagnostics sections require a multiview algorithm (sama_v1, sama_v2 or ma), got {}",
            config.boost.algorithm
        ));
    }
    if config.diagnostics.kappa && config.boost.rounds < 2 {
        violations.push("diagnostics.kappa needs boost.rounds >= 2".to_string());
    }
    if mode == Mode::Compare && config.compare.algorithms.is_empty() {
        violations.push("compare.algorithms must list at least one algorithm".to_string());
    }
    violations
}

/// A fitted model of any supported algorithm, with uniform prediction
/// and prefix-truncation access.
enum FittedModel {
    Sama(SamaEnsemble),
    Baseline(BaselineModel),
}

impl FittedModel {
    fn predict(&self, record: &[f64]) -> Result<Prediction, BoostError> {
        match self {
            Self::Sama(model) => model.predict(record),
            Self::Baseline(model) => model.predict(record),
        }
    }

    fn error_on(&self, dataset: &MultiviewDataset) -> Result<f64, BoostError> {
        match self {
            Self::Sama(model) => model.error_on(dataset),
            Self::Baseline(model) => model.error_on(dataset),
        }
    }

    fn rounds(&self) -> usize {
        match self {
            Self::Sama(model) => model.rounds.len(),
            Self::Baseline(model) => model.rounds(),
        }
    }

    /// The model truncated after round `t` (1-based).
    fn prefix(&self, t: usize) -> FittedModel {
        match self {
            Self::Sama(model) => {
                let mut truncated = model.clone();
                truncated.rounds.truncate(t);
                Self::Sama(truncated)
            }
            Self::Baseline(BaselineModel::Samme(model)) => {
                let mut truncated = model.clone();
                truncated.rounds.truncate(t);
                Self::Baseline(BaselineModel::Samme(truncated))
            }
            Self::Baseline(BaselineModel::BoostLate(model)) => {
                let per_view = model
                    .per_view
                    .iter()
                    .map(|view| {
                        let mut truncated = view.clone();
                        truncated.rounds.truncate(t);
                        truncated
                    })
                    .collect();
                Self::Baseline(BaselineModel::BoostLate(BoostLateEnsemble {
                    per_view,
                    k: model.k,
                    d: model.d,
                }))
            }
        }
    }
}

fn sama_round_records(
    model: &FittedModel,
    ensemble: &SamaEnsemble,
    train: &MultiviewDataset,
    test: &MultiviewDataset,
) -> Result<Vec<RoundRecord>, RunError> {
    (1..=ensemble.rounds.len())
        .map(|t| {
            let round = &ensemble.rounds[t - 1];
            let prefix = model.prefix(t);
            Ok(RoundRecord {
                round: t,
                beta: round.beta,
                z: round.z,
                beta_clamped: round.beta_clamped,
                per_view_error: round.per_view_error.clone(),
                fitness: round.fitness.clone(),
                train_error: prefix.error_on(train)?,
                test_error: prefix.error_on(test)?,
            })
        })
        .collect()
}

fn samme_round_records(
    model: &FittedModel,
    ensemble: &SammeEnsemble,
    train: &MultiviewDataset,
    test: &MultiviewDataset,
) -> Result<Vec<RoundRecord>, RunError> {
    (1..=ensemble.rounds.len())
        .map(|t| {
            let round = &ensemble.rounds[t - 1];
            let prefix = model.prefix(t);
            Ok(RoundRecord {
                round: t,
                beta: round.alpha,
                z: round.z,
                beta_clamped: false,
                per_view_error: vec![round.error],
                fitness: Vec::new(),
                train_error: prefix.error_on(train)?,
                test_error: prefix.error_on(test)?,
            })
        })
        .collect()
}

fn late_round_records(
    model: &FittedModel,
    ensemble: &BoostLateEnsemble,
    train: &MultiviewDataset,
    test: &MultiviewDataset,
) -> Result<Vec<RoundRecord>, RunError> {
    (1..=model.rounds())
        .map(|t| {
            let prefix = model.prefix(t);
            // views that stopped before round t simply contribute no
            // error entry; late fusion has no fused coefficient at all
            let per_view_error: Vec<f64> = ensemble
                .per_view
                .iter()
                .filter_map(|view| view.rounds.get(t - 1).map(|r| r.error))
                .collect();
            Ok(RoundRecord {
                round: t,
                beta: 0.0,
                z: 1.0,
                beta_clamped: false,
                per_view_error,
                fitness: Vec::new(),
                train_error: prefix.error_on(train)?,
                test_error: prefix.error_on(test)?,
            })
        })
        .collect()
}

/// Positive-class share of a prediction's score mass (class 1 is the
/// positive class). Dividing by the signed total reads V2 scores the
/// same way the combiner does — the total is the net fitness mass, so
/// a negative total flips the raw sums back into support shares.
fn positive_share(prediction: &Prediction) -> f64 {
    let total: f64 = prediction.scores.iter().sum();
    if total != 0.0 {
        prediction.scores[0] / total
    } else {
        0.5
    }
}

fn compute_metrics(
    model: &FittedModel,
    train: &MultiviewDataset,
    test: &MultiviewDataset,
) -> Result<Metrics, RunError> {
    let train_accuracy = 1.0 - model.error_on(train)?;
    let predictions: Vec<Prediction> = (0..test.n())
        .map(|i| model.predict(test.record(i)))
        .collect::<Result<_, _>>()?;
    let predicted: Vec<usize> = predictions.iter().map(|p| p.label).collect();
    let wrong = predicted.iter().zip(test.labels()).filter(|(p, t)| p != t).count();
    let test_accuracy = 1.0 - wrong as f64 / test.n() as f64;

    let mut metrics = Metrics {
        train_accuracy,
        test_accuracy,
        precision: None,
        recall: None,
        f_score: None,
        auc: None,
    };
    if test.k() == 2 {
        let (precision, recall) = diag::precision_recall(&predicted, test.labels(), 1)?;
        metrics.precision = Some(precision);
        metrics.recall = Some(recall);
        metrics.f_score = Some(diag::f_score(precision, recall)?);
        let scores: Vec<f64> = predictions.iter().map(positive_share).collect();
        let positives: Vec<bool> = test.labels().iter().map(|&y| y == 1).collect();
        metrics.auc = Some(diag::roc_auc(&scores, &positives)?);
    }
    Ok(metrics)
}

/// Margin-CDF sample grid: -1.0 to 1.0 in steps of 0.1.
fn psi_grid() -> Vec<f64> {
    (-10..=10).map(|i| f64::from(i) / 10.0).collect()
}

/// Everything shared between the algorithms of one experiment.
struct Prepared {
    label_names: Vec<String>,
    feature_names: Vec<String>,
    views: Vec<Vec<usize>>,
    split: SplitSummary,
    train: MultiviewDataset,
    test: MultiviewDataset,
}

fn prepare(config: &RunConfig) -> Result<Prepared, RunError> {
    let loaded = load_csv_dataset(&config.dataset)?;
    if config.diagnostics.bounds && loaded.dataset.k() != 2 {
        return Err(RunError::Config {
            violations: vec![format!(
                "diagnostics.bounds requires a binary dataset; {} has {} classes",
                config.dataset.path.display(),
                loaded.dataset.k()
            )],
        });
    }
    let [train_ratio, validation_ratio, test_ratio] = config.split.ratios;
    let spec = SplitSpec::new(train_ratio, validation_ratio, test_ratio, config.split.seed)
        .map_err(IoError::from)?;
    let split = stratified_split(&loaded.dataset, &spec).map_err(IoError::from)?;
    let train = if config.noise.fraction > 0.0 {
        inject_label_noise(&split.train, config.noise.fraction, config.noise.seed)
            .map_err(IoError::from)?
    } else {
        split.train.clone()
    };
    Ok(Prepared {
        label_names: loaded.label_names,
        feature_names: loaded.feature_names,
        views: loaded.dataset.views().to_vec(),
        split: SplitSummary::from_split(&split),
        train,
        test: split.test.clone(),
    })
}

fn fit_model(config: &RunConfig, algorithm: Algorithm, train: &MultiviewDataset) -> Result<FittedModel, RunError> {
    let boost_config = BoostConfig {
        rounds: config.boost.rounds,
        learner: LearnerConfig {
            kind: config.learner.kind,
            hidden_units: config.learner.hidden_units,
            epochs: config.learner.epochs,
            learning_rate: config.learner.learning_rate,
            regularization: config.learner.regularization,
            seed: 0, // derived per round and view from boost.seed
        },
        beta_max: config.boost.beta_max,
        beta_tolerance: config.boost.beta_tolerance,
        combiner: if algorithm == Algorithm::SamaV1 { Combiner::V1 } else { Combiner::V2 },
        beta_rule: if algorithm == Algorithm::Ma { BetaRule::MaClosedForm } else { BetaRule::Optimized },
        clamp_fitness: config.boost.clamp_fitness,
        seed: config.boost.seed,
    };
    Ok(match algorithm {
        Algorithm::SamaV1 | Algorithm::SamaV2 | Algorithm::Ma => {
            FittedModel::Sama(fit_sama(train, &boost_config)?)
        }
        Algorithm::Samme => {
            FittedModel::Baseline(fit_baseline(train, &boost_config, BaselineStrategy::Samme)?)
        }
        Algorithm::BoostEarly => {
            FittedModel::Baseline(fit_baseline(train, &boost_config, BaselineStrategy::BoostEarly)?)
        }
        Algorithm::BoostLate => {
            FittedModel::Baseline(fit_baseline(train, &boost_config, BaselineStrategy::BoostLate)?)
        }
    })
}

fn build_report(
    config: &RunConfig,
    algorithm: Algorithm,
    prepared: &Prepared,
) -> Result<ExperimentReport, RunError> {
    let model = fit_model(config, algorithm, &prepared.train)?;
    let rounds = match &model {
        FittedModel::Sama(ensemble) => {
            sama_round_records(&model, ensemble, &prepared.train, &prepared.test)?
        }
        FittedModel::Baseline(BaselineModel::Samme(ensemble)) => {
            samme_round_records(&model, ensemble, &prepared.train, &prepared.test)?
        }
        FittedModel::Baseline(BaselineModel::BoostLate(ensemble)) => {
            late_round_records(&model, ensemble, &prepared.train, &prepared.test)?
        }
    };
    let metrics = compute_metrics(&model, &prepared.train, &prepared.test)?;

    let mut bounds = None;
    let mut margins = None;
    let mut kappa = None;
    if let FittedModel::Sama(ensemble) = &model {
        if config.diagnostics.bounds {
            bounds = Some(diag::bound_trace(ensemble, &prepared.train)?);
        }
        if config.diagnostics.margins {
            margins = Some(diag::margin_distribution(ensemble, &prepared.train, &psi_grid())?);
        }
        if config.diagnostics.kappa {
            kappa = Some(diag::kappa_error_cloud(ensemble, &prepared.test)?);
        }
    }

    Ok(ExperimentReport {
        schema_version: SCHEMA_VERSION,
        algorithm,
        config: config.clone(),
        label_names: prepared.label_names.clone(),
        feature_names: prepared.feature_names.clone(),
        views: prepared.views.clone(),
        split: prepared.split.clone(),
        rounds,
        metrics,
        bounds,
        margins,
        kappa,
    })
}

/// A finished run: the report and where it was written.
pub struct RunOutcome {
    pub algorithm: Algorithm,
    pub report: ExperimentReport,
    pub written: Vec<PathBuf>,
}

/// Runs the configured algorithm end to end and writes its report.
pub fn run(config: &RunConfig) -> Result<RunOutcome, RunError> {
    let violations = validate(config, Mode::Run);
    if !violations.is_empty() {
        return Err(RunError::Config { violations });
    }
    let prepared = prepare(config)?;
    let algorithm = config.boost.algorithm;
    let report = build_report(config, algorithm, &prepared)?;
    let written = write_report(&report, &config.output.path, config.output.format)?;
    Ok(RunOutcome { algorithm, report, written })
}

/// Output location for one algorithm of a comparison, derived from the
/// configured base path: `report.json` becomes `report.<name>.json`,
/// a csv_bundle directory gains a `<name>/` subdirectory.
pub fn compare_output_path(base: &Path, format: ReportFormat, algorithm: Algorithm) -> PathBuf {
    match format {
        ReportFormat::Json => {
            let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
            let name = format!("{stem}.{}.json", algorithm.name());
            base.with_file_name(name)
        }
        ReportFormat::CsvBundle => base.join(algorithm.name()),
    }
}

/// Fits every algorithm in `compare.algorithms` on one frozen split
/// (identical view partition, split, and noise), writing one report
/// each. Diagnostics sections are attached to the multiview
/// algorithms only.
pub fn compare(config: &RunConfig) -> Result<Vec<RunOutcome>, RunError> {
    let violations = validate(config, Mode::Compare);
    if !violations.is_empty() {
        return Err(RunError::Config { violations });
    }
    let prepared = prepare(config)?;
    config
        .compare
        .algorithms
        .iter()
        .map(|&algorithm| {
            let mut per_algorithm = config.clone();
            per_algorithm.boost.algorithm = algorithm;
            let report = build_report(&per_algorithm, algorithm, &prepared)?;
            let path = compare_output_path(&config.output.path, config.output.format, algorithm);
            let written = write_report(&report, &path, config.output.format)?;
            Ok(RunOutcome { algorithm, report, written })
        })
        .collect()
}
