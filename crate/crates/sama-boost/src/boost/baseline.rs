//! Single-view boosting baselines.
//!
//! SAMME is the multiclass AdaBoost generalization with the
//! `ln(K - 1)` additive term. Boost-Early runs it on all views'
//! columns concatenated; Boost-Late runs one SAMME per view and fuses
//! the finished ensembles by unweighted majority vote.

use super::{BoostError, Prediction};
use crate::data::{MultiviewDataset, WeightDistribution};
use crate::learners::{train_learner, TrainedLearner};
use serde::{Deserialize, Serialize};

/// Cap on alpha when a round's weighted error is exactly zero.
const ALPHA_CAP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineStrategy {
    /// SAMME over every feature column.
    Samme,
    /// Early fusion: identical to [`BaselineStrategy::Samme`], named
    /// for symmetry with late fusion.
    BoostEarly,
    /// Late fusion: per-view SAMME ensembles, majority-voted.
    BoostLate,
}

#[derive(Debug, Clone)]
pub struct SammeRound {
    pub learner: TrainedLearner,
    pub alpha: f64,
    pub z: f64,
    /// Weighted training error that produced `alpha`.
    pub error: f64,
}

/// A SAMME ensemble over a fixed set of feature columns.
#[derive(Debug, Clone)]
pub struct SammeEnsemble {
    pub rounds: Vec<SammeRound>,
    pub k: usize,
    /// Full record width this ensemble expects.
    pub d: usize,
    /// Columns of the record the learners actually see.
    pub columns: Vec<usize>,
}

impl SammeEnsemble {
    fn project(&self, record: &[f64]) -> Vec<f64> {
        self.columns.iter().map(|&c| record[c]).collect()
    }

    /// Alpha-weighted vote: scores[c] sums the alpha of rounds
    /// predicting class c + 1.
    pub fn predict(&self, record: &[f64]) -> Result<Prediction, BoostError> {
        if record.len() != self.d {
            return Err(BoostError::LengthMismatch { left: record.len(), right: self.d });
        }
        let projected = self.project(record);
        let mut scores = vec![0.0; self.k];
        for round in &self.rounds {
            let label = round.learner.predict_label(&projected).expect("record width checked");
            scores[label - 1] += round.alpha;
        }
        let label = super::argmax_lowest(&scores);
        Ok(Prediction { label, scores })
    }
}

/// Per-view SAMME ensembles fused by unweighted majority vote; ties
/// resolve to the lowest class index.
#[derive(Debug, Clone)]
pub struct BoostLateEnsemble {
    pub per_view: Vec<SammeEnsemble>,
    pub k: usize,
    pub d: usize,
}

impl BoostLateEnsemble {
    pub fn predict(&self, record: &[f64]) -> Result<Prediction, BoostError> {
        if record.len() != self.d {
            return Err(BoostError::LengthMismatch { left: record.len(), right: self.d });
        }
        let mut votes = vec![0.0; self.k];
        // score vector kept for threshold metrics: per-view alpha-mass
        // vectors, each normalized to sum 1, added up
        let mut scores = vec![0.0; self.k];
        for ensemble in &self.per_view {
            let prediction = ensemble.predict(record)?;
            votes[prediction.label - 1] += 1.0;
            let mass: f64 = prediction.scores.iter().sum();
            if mass > 0.0 {
                for (s, &p) in scores.iter_mut().zip(&prediction.scores) {
                    *s += p / mass;
                }
            }
        }
        Ok(Prediction { label: super::argmax_lowest(&votes), scores })
    }
}

/// Whatever [`fit_baseline`] produced.
#[derive(Debug, Clone)]
pub enum BaselineModel {
    Samme(SammeEnsemble),
    BoostLate(BoostLateEnsemble),
}

impl BaselineModel {
    pub fn predict(&self, record: &[f64]) -> Result<Prediction, BoostError> {
        match self {
            Self::Samme(ensemble) => ensemble.predict(record),
            Self::BoostLate(ensemble) => ensemble.predict(record),
        }
    }

    pub fn predict_labels(&self, dataset: &MultiviewDataset) -> Result<Vec<usize>, BoostError> {
        (0..dataset.n()).map(|i| Ok(self.predict(dataset.record(i))?.label)).collect()
    }

    pub fn error_on(&self, dataset: &MultiviewDataset) -> Result<f64, BoostError> {
        let predicted = self.predict_labels(dataset)?;
        let wrong =
            predicted.iter().zip(dataset.labels()).filter(|(p, t)| p != t).count();
        Ok(wrong as f64 / dataset.n() as f64)
    }

    /// Completed rounds; for late fusion, the maximum across views.
    pub fn rounds(&self) -> usize {
        match self {
            Self::Samme(ensemble) => ensemble.rounds.len(),
            Self::BoostLate(ensemble) => {
                ensemble.per_view.iter().map(|e| e.rounds.len()).max().unwrap_or(0)
            }
        }
    }
}

/// Trains a baseline ensemble with the learner settings and round
/// budget of `config` (beta fields are unused here).
pub fn fit_baseline(
    dataset: &MultiviewDataset,
    config: &super::BoostConfig,
    strategy: BaselineStrategy,
) -> Result<BaselineModel, BoostError> {
    if config.rounds == 0 {
        return Err(BoostError::NoRounds);
    }
    if dataset.k() < 2 {
        return Err(BoostError::NeedsTwoClasses { k: dataset.k() });
    }
    match strategy {
        BaselineStrategy::Samme | BaselineStrategy::BoostEarly => {
            let all_columns: Vec<usize> = (0..dataset.d()).collect();
            Ok(BaselineModel::Samme(fit_samme(dataset, &all_columns, config, 0)?))
        }
        BaselineStrategy::BoostLate => {
            let per_view = dataset
                .views()
                .iter()
                .enumerate()
                .map(|(view, columns)| fit_samme(dataset, columns, config, view))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(BaselineModel::BoostLate(BoostLateEnsemble {
                per_view,
                k: dataset.k(),
                d: dataset.d(),
            }))
        }
    }
}

fn fit_samme(
    dataset: &MultiviewDataset,
    columns: &[usize],
    config: &super::BoostConfig,
    seed_tag: usize,
) -> Result<SammeEnsemble, BoostError> {
    let n = dataset.n();
    let k = dataset.k();
    let labels = dataset.labels();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| columns.iter().map(|&c| dataset.record(i)[c]).collect())
        .collect();

    let mut weights = WeightDistribution::uniform(n)?;
    let mut rounds = Vec::new();

    for t in 1..=config.rounds {
        let mut learner_config = config.learner.clone();
        learner_config.seed = super::round_seed(config.seed, t, seed_tag);
        let learner = train_learner(&learner_config, &rows, labels, &weights, k)
            .map_err(|source| BoostError::LearnerTraining { round: t, view: seed_tag, source })?;

        let wrong: Vec<bool> = rows
            .iter()
            .zip(labels)
            .map(|(row, &label)| learner.predict_label(row).expect("arity fixed") != label)
            .collect();
        let error: f64 = wrong
            .iter()
            .zip(weights.weights())
            .filter(|(&miss, _)| miss)
            .map(|(_, &w)| w)
            .sum();

        // a learner no better than random guessing ends the run
        if error >= (k - 1) as f64 / k as f64 {
            break;
        }
        let alpha = if error == 0.0 {
            ALPHA_CAP.ln()
        } else {
            ((1.0 - error) / error).ln() + (k as f64 - 1.0).ln()
        };

        let unnormalized: Vec<f64> = weights
            .weights()
            .iter()
            .zip(&wrong)
            .map(|(&w, &miss)| if miss { w * alpha.exp() } else { w })
            .collect();
        let z: f64 = unnormalized.iter().sum();
        if !(z > 0.0) || !z.is_finite() {
            return Err(BoostError::ZeroNormalizer);
        }
        let updated: Vec<f64> =
            unnormalized.iter().map(|&u| (u / z).max(f64::MIN_POSITIVE)).collect();
        weights = WeightDistribution::from_weights(updated, t)?;

        rounds.push(SammeRound { learner, alpha, z, error });
    }

    if rounds.is_empty() {
        return Err(BoostError::DegenerateEnsemble);
    }
    Ok(SammeEnsemble { rounds, k, d: dataset.d(), columns: columns.to_vec() })
}
