//! Weak learners trained per view under a boosting weight distribution.
//!
//! Two families are provided: weighted multiclass decision stumps, and
//! single-hidden-layer networks trained on a weight-scaled squared
//! error. Both emit a normalized confidence vector over classes, which
//! is what the reward-penalty combiners consume.

mod net;
mod stump;

pub use net::train_shallow_net;
pub use stump::train_stump;

use crate::data::WeightDistribution;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LearnError {
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("{rows} rows, {labels} labels and {weights} weights do not agree")]
    SizeMismatch { rows: usize, labels: usize, weights: usize },
    #[error("row {row} has label {label}, outside 1..={k}")]
    LabelOutOfRange { row: usize, label: usize, k: usize },
    #[error("row {row} has {len} features, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("learner expects {expected} features, record has {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("hyperparameter {name} = {value} is invalid")]
    BadHyperparameter { name: &'static str, value: f64 },
    #[error("training loss became non-finite at epoch {epoch}")]
    NonFiniteLoss { epoch: usize },
}

/// Which weak-learner family to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearnerKind {
    Stump,
    ShallowNet,
}

/// Hyperparameters shared by every per-view training call. The network
/// fields are ignored when `kind` is [`LearnerKind::Stump`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub kind: LearnerKind,
    pub hidden_units: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    /// L2 penalty applied to connection weights (biases exempt).
    pub regularization: f64,
    pub seed: u64,
}

impl Default for LearnerConfig {
    fn default() -> Self {
        Self {
            kind: LearnerKind::Stump,
            hidden_units: 5,
            epochs: 500,
            learning_rate: 0.5,
            regularization: 0.0,
            seed: 0,
        }
    }
}

/// Per-class confidence emitted by a learner for one record:
/// non-negative entries summing to 1 (within 1e-9).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceVector {
    entries: Vec<f64>,
}

impl ConfidenceVector {
    pub(crate) fn new(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|&p| p >= 0.0));
        debug_assert!((entries.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        Self { entries }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Confidence assigned to 1-based class `c`.
    pub fn entry(&self, c: usize) -> f64 {
        self.entries[c - 1]
    }

    /// Arg-max class (1-based); ties resolve to the lowest class index.
    pub fn predicted_class(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.entries.iter().enumerate() {
            if p > self.entries[best] {
                best = i;
            }
        }
        best + 1
    }

    /// Confidence in the predicted class.
    pub fn peak(&self) -> f64 {
        self.entries[self.predicted_class() - 1]
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Model {
    Stump(stump::Stump),
    /// Fallback when no split beats predicting a single class.
    Constant { confidence: Vec<f64> },
    Net(net::Net),
}

/// A weak learner fitted on one view's columns.
#[derive(Debug, Clone)]
pub struct TrainedLearner {
    pub(crate) model: Model,
    view: usize,
    input_dim: usize,
    k: usize,
}

impl TrainedLearner {
    pub(crate) fn new(model: Model, input_dim: usize, k: usize) -> Self {
        Self { model, view: 0, input_dim, k }
    }

    /// Tags the learner with the view index it was trained on.
    pub fn with_view(mut self, view: usize) -> Self {
        self.view = view;
        self
    }

    pub fn view(&self) -> usize {
        self.view
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Loss trace for network learners (one entry per epoch, preceded
    /// by the initial loss); `None` for stumps.
    pub fn training_loss(&self) -> Option<&[f64]> {
        match &self.model {
            Model::Net(net) => Some(&net.loss_history),
            _ => None,
        }
    }

    /// Class-confidence vector for a record from this learner's view.
    pub fn predict_confidence(&self, x: &[f64]) -> Result<ConfidenceVector, LearnError> {
        if x.len() != self.input_dim {
            return Err(LearnError::ArityMismatch { expected: self.input_dim, got: x.len() });
        }
        let entries = match &self.model {
            Model::Stump(stump) => stump.confidence(x).to_vec(),
            Model::Constant { confidence } => confidence.clone(),
            Model::Net(net) => net.confidence(x),
        };
        Ok(ConfidenceVector::new(entries))
    }

    pub fn predict_label(&self, x: &[f64]) -> Result<usize, LearnError> {
        Ok(self.predict_confidence(x)?.predicted_class())
    }
}

/// Trains whichever learner family `config.kind` selects.
pub fn train_learner(
    config: &LearnerConfig,
    x: &[Vec<f64>],
    labels: &[usize],
    weights: &WeightDistribution,
    k: usize,
) -> Result<TrainedLearner, LearnError> {
    match config.kind {
        LearnerKind::Stump => train_stump(x, labels, weights, k),
        LearnerKind::ShallowNet => train_shallow_net(x, labels, weights, k, config),
    }
}

pub(crate) fn validate_training_set(
    x: &[Vec<f64>],
    labels: &[usize],
    weights: &WeightDistribution,
    k: usize,
) -> Result<usize, LearnError> {
    if x.is_empty() {
        return Err(LearnError::EmptyTrainingSet);
    }
    if x.len() != labels.len() || x.len() != weights.len() {
        return Err(LearnError::SizeMismatch {
            rows: x.len(),
            labels: labels.len(),
            weights: weights.len(),
        });
    }
    let dim = x[0].len();
    for (row, record) in x.iter().enumerate() {
        if record.len() != dim {
            return Err(LearnError::RaggedRow { row, len: record.len(), expected: dim });
        }
    }
    for (row, &label) in labels.iter().enumerate() {
        if label == 0 || label > k {
            return Err(LearnError::LabelOutOfRange { row, label, k });
        }
    }
    Ok(dim)
}
