//! Forward-stagewise multiview boosting.
//!
//! Each round trains one weak learner per view on a shared weight
//! distribution, scores every view by a reward-penalty fitness, picks
//! the round's expansion coefficient beta — numerically for
//! SAMA-AdaBoost, by the closed form for MA-AdaBoost — and reweights
//! examples by how many views got them wrong. Single-view baselines
//! (SAMME, Boost-Early, Boost-Late) live in [`baseline`].

pub mod baseline;
mod objective;

pub use objective::{
    difficulty, evaluate_objective, exp_loss, ma_beta, objective_derivative, optimize_beta,
    transform_hypothesis, update_weights, BetaSearch, BoostError,
};

use crate::data::{MultiviewDataset, WeightDistribution};
use crate::learners::{train_learner, ConfidenceVector, LearnerConfig, TrainedLearner};
use serde::{Deserialize, Serialize};

/// How per-view hypotheses are fused into an ensemble decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combiner {
    /// Fitness-weighted vote on one-hot hypotheses, rounded to the
    /// nearest indicator vector (half rounds up); falls back to the
    /// arg-max of the raw vote when rounding is not one-hot.
    V1,
    /// Arg-max of fitness-weighted confidence mass per class.
    V2,
}

/// Rule for the per-round expansion coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaRule {
    /// Minimize the round objective numerically (SAMA-AdaBoost).
    Optimized,
    /// Closed form from the product of per-view errors (MA-AdaBoost).
    MaClosedForm,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoostConfig {
    /// Number of boosting rounds T.
    pub rounds: usize,
    pub learner: LearnerConfig,
    /// Upper end of the beta search interval.
    pub beta_max: f64,
    /// Derivative magnitude at which the beta bisection may stop.
    pub beta_tolerance: f64,
    pub combiner: Combiner,
    pub beta_rule: BetaRule,
    /// Clamp negative view fitness to zero before voting.
    pub clamp_fitness: bool,
    /// Base seed; per-round, per-view learner seeds derive from it.
    pub seed: u64,
}

impl Default for BoostConfig {
    fn default() -> Self {
        Self {
            rounds: 10,
            learner: LearnerConfig::default(),
            beta_max: 10.0,
            beta_tolerance: 1e-10,
            combiner: Combiner::V2,
            beta_rule: BetaRule::Optimized,
            clamp_fitness: false,
            seed: 0,
        }
    }
}

/// Everything one boosting round produced.
#[derive(Debug, Clone)]
pub struct BoostRound {
    /// One learner per view, index-aligned with the dataset's views.
    pub learners: Vec<TrainedLearner>,
    /// Reward-penalty fitness of each view's learner.
    pub fitness: Vec<f64>,
    pub beta: f64,
    /// Normalizer of the weight update, equal to the objective at beta.
    pub z: f64,
    /// Weighted training error of each view's learner, unclipped.
    pub per_view_error: Vec<f64>,
    /// Whether beta sat on an endpoint of the search interval.
    pub beta_clamped: bool,
}

/// A fitted multiview ensemble.
#[derive(Debug, Clone)]
pub struct SamaEnsemble {
    pub rounds: Vec<BoostRound>,
    pub k: usize,
    pub v: usize,
    /// Feature-column groups the ensemble was trained on.
    pub views: Vec<Vec<usize>>,
    /// Record width expected by [`predict_ensemble`].
    pub d: usize,
    pub combiner: Combiner,
    pub beta_rule: BetaRule,
}

/// Ensemble decision for one full-width record.
#[derive(Debug, Clone)]
pub struct Prediction {
    /// 1-based class.
    pub label: usize,
    /// Combiner-specific per-class score vector.
    pub scores: Vec<f64>,
}

/// Reward-penalty fitness of one view's learner: with r the fraction
/// of examples it classifies correctly and
/// `R = sum_correct W_i conf_i - sum_wrong (1 - W_j conf_j)`
/// (conf taken in the *predicted* class), fitness is `r * (1 + R)`.
/// Negative values are meaningful and kept; clamping is the caller's
/// choice.
pub fn learner_fitness(
    confidences: &[ConfidenceVector],
    labels: &[usize],
    weights: &[f64],
) -> Result<f64, BoostError> {
    if confidences.is_empty() {
        return Err(BoostError::EmptyInput);
    }
    if confidences.len() != labels.len() || confidences.len() != weights.len() {
        return Err(BoostError::LengthMismatch {
            left: confidences.len(),
            right: labels.len().min(weights.len()),
        });
    }
    let n = confidences.len() as f64;
    let mut correct = 0usize;
    let mut reward = 0.0;
    for ((conf, &label), &w) in confidences.iter().zip(labels).zip(weights) {
        let predicted = conf.predicted_class();
        let stake = w * conf.peak();
        if predicted == label {
            correct += 1;
            reward += stake;
        } else {
            reward -= 1.0 - stake;
        }
    }
    Ok(correct as f64 / n * (1.0 + reward))
}

/// Deterministic per-round, per-view seed derivation (splitmix64 over
/// a round/view counter mixed into the base seed).
fn round_seed(base: u64, round: usize, view: usize) -> u64 {
    let mut z = base ^ (((round as u64) << 20) | view as u64).wrapping_mul(0x9E3779B97F4A7C15);
    z = z.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Fits a SAMA- or MA-AdaBoost ensemble on `dataset`.
pub fn fit_sama(dataset: &MultiviewDataset, config: &BoostConfig) -> Result<SamaEnsemble, BoostError> {
    if config.rounds == 0 {
        return Err(BoostError::NoRounds);
    }
    if dataset.k() < 2 {
        return Err(BoostError::NeedsTwoClasses { k: dataset.k() });
    }
    let n = dataset.n();
    let v = dataset.v();
    let k = dataset.k();
    let labels = dataset.labels();

    let view_matrices: Vec<Vec<Vec<f64>>> = (0..v)
        .map(|view| (0..n).map(|i| dataset.view_record(i, view)).collect())
        .collect();

    let mut weights = WeightDistribution::uniform(n)?;
    let mut rounds = Vec::with_capacity(config.rounds);

    for t in 1..=config.rounds {
        let mut learners = Vec::with_capacity(v);
        let mut fitness = Vec::with_capacity(v);
        let mut per_view_error = Vec::with_capacity(v);
        let mut wrong_views = vec![0usize; n];

        for view in 0..v {
            let mut learner_config = config.learner.clone();
            learner_config.seed = round_seed(config.seed, t, view);
            let learner = train_learner(&learner_config, &view_matrices[view], labels, &weights, k)
                .map_err(|source| BoostError::LearnerTraining { round: t, view, source })?
                .with_view(view);

            let confidences: Vec<ConfidenceVector> = view_matrices[view]
                .iter()
                .map(|row| learner.predict_confidence(row).expect("arity fixed by training"))
                .collect();

            let mut view_error = 0.0;
            for (i, conf) in confidences.iter().enumerate() {
                if conf.predicted_class() != labels[i] {
                    view_error += weights.weights()[i];
                    wrong_views[i] += 1;
                }
            }
            let mut f = learner_fitness(&confidences, labels, weights.weights())?;
            if config.clamp_fitness {
                f = f.max(0.0);
            }
            fitness.push(f);
            per_view_error.push(view_error);
            learners.push(learner);
        }

        let (beta, beta_clamped) = match config.beta_rule {
            BetaRule::Optimized => {
                let search = optimize_beta(
                    weights.weights(),
                    &wrong_views,
                    v,
                    config.beta_max,
                    config.beta_tolerance,
                )?;
                (search.beta, search.clamped)
            }
            BetaRule::MaClosedForm => {
                let raw = ma_beta(&per_view_error)?;
                if raw < 0.0 {
                    (0.0, true)
                } else if raw > config.beta_max {
                    (config.beta_max, true)
                } else {
                    (raw, false)
                }
            }
        };

        let (updated, z) = update_weights(weights.weights(), &wrong_views, v, beta)?;
        weights = WeightDistribution::from_weights(updated, t)?;

        rounds.push(BoostRound { learners, fitness, beta, z, per_view_error, beta_clamped });
    }

    Ok(SamaEnsemble {
        rounds,
        k,
        v,
        views: dataset.views().to_vec(),
        d: dataset.d(),
        combiner: config.combiner,
        beta_rule: config.beta_rule,
    })
}

fn argmax_lowest(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    best + 1
}

fn argmin_lowest(scores: &[f64]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s < scores[best] {
            best = i;
        }
    }
    best + 1
}

/// Reads a fitness-weighted score vector the way the combiners define
/// it: relative to the net fitness mass `V * sum F` (the denominator
/// the vote is normalized by). A negative net mass flips the
/// comparison — every member votes "against", so the least-penalized
/// class wins — and a zero net mass leaves the vote undefined.
fn weighted_argmax(scores: &[f64], total_fitness: f64) -> Result<usize, BoostError> {
    if total_fitness == 0.0 {
        return Err(BoostError::DegenerateEnsemble);
    }
    Ok(if total_fitness > 0.0 { argmax_lowest(scores) } else { argmin_lowest(scores) })
}

impl SamaEnsemble {
    pub(crate) fn project(&self, record: &[f64], view: usize) -> Vec<f64> {
        self.views[view].iter().map(|&c| record[c]).collect()
    }

    /// Combined decision for a full-width record (see [`predict_ensemble`]).
    pub fn predict(&self, record: &[f64]) -> Result<Prediction, BoostError> {
        predict_ensemble(self, record)
    }

    /// Labels for every row of a dataset with matching width.
    pub fn predict_labels(&self, dataset: &MultiviewDataset) -> Result<Vec<usize>, BoostError> {
        (0..dataset.n()).map(|i| Ok(self.predict(dataset.record(i))?.label)).collect()
    }

    /// 0/1 error of the combined vote on a dataset.
    pub fn error_on(&self, dataset: &MultiviewDataset) -> Result<f64, BoostError> {
        let predicted = self.predict_labels(dataset)?;
        let wrong = predicted
            .iter()
            .zip(dataset.labels())
            .filter(|(p, t)| p != t)
            .count();
        Ok(wrong as f64 / dataset.n() as f64)
    }

    /// Decision of round `t` (0-based) alone: that round's V learners
    /// fused by its fitness-weighted confidence vote. These are the
    /// member hypotheses of the kappa-error analysis.
    pub fn round_prediction(&self, t: usize, record: &[f64]) -> Result<usize, BoostError> {
        let round = &self.rounds[t];
        let mut scores = vec![0.0; self.k];
        for (learner, &f) in round.learners.iter().zip(&round.fitness) {
            let conf = learner
                .predict_confidence(&self.project(record, learner.view()))
                .map_err(|source| BoostError::LearnerTraining {
                    round: t + 1,
                    view: learner.view(),
                    source,
                })?;
            for (s, &c) in scores.iter_mut().zip(conf.entries()) {
                *s += f * c;
            }
        }
        weighted_argmax(&scores, round.fitness.iter().sum())
    }
}

/// Fuses every round's hypotheses into a final decision using the
/// ensemble's combiner. Ties always resolve to the lowest class index.
///
/// Both combiners read the vote relative to the net fitness mass
/// `V * sum F` — V1 divides by it outright, V2's argmax inverts when
/// it is negative (see [`Prediction::scores`] for the raw sums). A
/// zero net mass is a degenerate ensemble.
pub fn predict_ensemble(ensemble: &SamaEnsemble, record: &[f64]) -> Result<Prediction, BoostError> {
    if record.len() != ensemble.d {
        return Err(BoostError::LengthMismatch { left: record.len(), right: ensemble.d });
    }
    match ensemble.combiner {
        Combiner::V2 => {
            let mut scores = vec![0.0; ensemble.k];
            let mut total_fitness = 0.0;
            for round in &ensemble.rounds {
                for (learner, &f) in round.learners.iter().zip(&round.fitness) {
                    total_fitness += f;
                    let conf = learner
                        .predict_confidence(&ensemble.project(record, learner.view()))
                        .expect("record width checked");
                    for (s, &c) in scores.iter_mut().zip(conf.entries()) {
                        *s += f * c;
                    }
                }
            }
            let label = weighted_argmax(&scores, total_fitness)?;
            Ok(Prediction { label, scores })
        }
        Combiner::V1 => {
            let total_fitness: f64 = ensemble
                .rounds
                .iter()
                .map(|round| round.fitness.iter().sum::<f64>())
                .sum();
            let denominator = ensemble.v as f64 * total_fitness;
            if denominator == 0.0 {
                return Err(BoostError::DegenerateEnsemble);
            }
            let mut scores = vec![0.0; ensemble.k];
            for round in &ensemble.rounds {
                for (learner, &f) in round.learners.iter().zip(&round.fitness) {
                    let label = learner
                        .predict_label(&ensemble.project(record, learner.view()))
                        .expect("record width checked");
                    scores[label - 1] += f;
                }
            }
            for s in &mut scores {
                *s /= denominator;
            }
            // round each entry half-up; a clean one-hot wins outright
            let rounded: Vec<i64> = scores.iter().map(|&s| (s + 0.5).floor() as i64).collect();
            let ones = rounded.iter().filter(|&&r| r == 1).count();
            let zeros = rounded.iter().filter(|&&r| r == 0).count();
            let label = if ones == 1 && zeros == rounded.len() - 1 {
                rounded.iter().position(|&r| r == 1).unwrap() + 1
            } else {
                argmax_lowest(&scores)
            };
            Ok(Prediction { label, scores })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::MultiviewDataset;

    /// Builds an ensemble of constant-confidence learners: one round
    /// per (fitness, confidence) pair, single view over one column.
    fn constant_ensemble(members: &[(f64, Vec<f64>)], combiner: Combiner) -> SamaEnsemble {
        let k = members[0].1.len();
        let rounds = members
            .iter()
            .map(|(f, conf)| BoostRound {
                learners: vec![TrainedLearner::new(
                    crate::learners::Model::Constant { confidence: conf.clone() },
                    1,
                    k,
                )],
                fitness: vec![*f],
                beta: 0.5,
                z: 0.9,
                per_view_error: vec![0.1],
                beta_clamped: false,
            })
            .collect();
        SamaEnsemble {
            rounds,
            k,
            v: 1,
            views: vec![vec![0]],
            d: 1,
            combiner,
            beta_rule: BetaRule::Optimized,
        }
    }

    #[test]
    fn fitness_matches_hand_computation() {
        // one correct view member at confidence 0.8, one wrong at 0.6
        let confidences = vec![
            ConfidenceVector::new(vec![0.8, 0.2]),
            ConfidenceVector::new(vec![0.4, 0.6]),
        ];
        let f = learner_fitness(&confidences, &[1, 1], &[0.5, 0.5]).unwrap();
        assert!((f - 0.35).abs() < 1e-12);
    }

    #[test]
    fn fitness_can_go_negative() {
        let confidences = vec![
            ConfidenceVector::new(vec![0.9, 0.1]),
            ConfidenceVector::new(vec![0.2, 0.8]),
            ConfidenceVector::new(vec![0.2, 0.8]),
        ];
        // one lightly weighted hit, two hedged misses: each miss pays
        // 1 - W*conf, so the reward term drops below -1
        let f = learner_fitness(&confidences, &[1, 1, 1], &[0.01, 0.495, 0.495]).unwrap();
        assert!(f < 0.0, "fitness {f}");
    }

    #[test]
    fn v2_vote_weighs_confidence_by_fitness() {
        let ensemble = constant_ensemble(
            &[(2.0, vec![0.6, 0.4]), (1.0, vec![0.1, 0.9])],
            Combiner::V2,
        );
        let prediction = ensemble.predict(&[0.0]).unwrap();
        assert_eq!(prediction.label, 2);
        assert!((prediction.scores[0] - 1.3).abs() < 1e-12);
        assert!((prediction.scores[1] - 1.7).abs() < 1e-12);
    }

    #[test]
    fn v1_unanimous_vote_rounds_to_one_hot() {
        // both members predict class 1; each entry of the normalized
        // vote is 1/V = 1 (single view), a clean indicator
        let ensemble = constant_ensemble(
            &[(3.0, vec![0.9, 0.1]), (1.0, vec![0.8, 0.2])],
            Combiner::V1,
        );
        let prediction = ensemble.predict(&[0.0]).unwrap();
        assert_eq!(prediction.label, 1);
        assert!((prediction.scores[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn v1_split_vote_falls_back_to_argmax() {
        // equal fitness on opposite classes: both entries round to 1,
        // not one-hot, so the raw vote decides and ties go low
        let ensemble = constant_ensemble(
            &[(2.0, vec![0.9, 0.1]), (2.0, vec![0.1, 0.9])],
            Combiner::V1,
        );
        let prediction = ensemble.predict(&[0.0]).unwrap();
        assert_eq!(prediction.label, 1);
    }

    #[test]
    fn zero_fitness_ensembles_are_degenerate() {
        let v2 = constant_ensemble(&[(0.0, vec![0.6, 0.4])], Combiner::V2);
        assert!(matches!(v2.predict(&[0.0]), Err(BoostError::DegenerateEnsemble)));
        let v1 = constant_ensemble(&[(0.0, vec![0.6, 0.4])], Combiner::V1);
        assert!(matches!(v1.predict(&[0.0]), Err(BoostError::DegenerateEnsemble)));
        // exactly cancelling fitness leaves no net mass either
        let mixed = constant_ensemble(
            &[(1.0, vec![0.6, 0.4]), (-1.0, vec![0.6, 0.4])],
            Combiner::V2,
        );
        assert!(matches!(mixed.predict(&[0.0]), Err(BoostError::DegenerateEnsemble)));
    }

    #[test]
    fn negative_net_fitness_reads_the_v2_vote_through_its_normalizer() {
        // every member votes "against" (learners with many absolute
        // misses get negative fitness), so dividing by the negative
        // net mass makes the most-supported class win, as in V1
        let ensemble = constant_ensemble(
            &[(-2.0, vec![0.9, 0.1]), (-1.0, vec![0.8, 0.2])],
            Combiner::V2,
        );
        let prediction = ensemble.predict(&[0.0]).unwrap();
        assert_eq!(prediction.label, 1);
        // the reported scores stay raw
        assert!((prediction.scores[0] - (-2.6)).abs() < 1e-12);
        assert!((prediction.scores[1] - (-0.4)).abs() < 1e-12);
    }

    fn separable_two_view() -> MultiviewDataset {
        let mut examples = Vec::new();
        let mut labels = Vec::new();
        for i in 0..10 {
            let wiggle = i as f64 * 0.01;
            examples.push(vec![-1.0 - wiggle, -2.0 + wiggle]);
            labels.push(1);
            examples.push(vec![1.0 + wiggle, 2.0 - wiggle]);
            labels.push(2);
        }
        MultiviewDataset::new(examples, vec![vec![0], vec![1]], labels, 2).unwrap()
    }

    #[test]
    fn one_round_solves_a_separable_problem() {
        let data = separable_two_view();
        let config = BoostConfig { rounds: 1, ..BoostConfig::default() };
        let ensemble = fit_sama(&data, &config).unwrap();
        assert_eq!(ensemble.error_on(&data).unwrap(), 0.0);
        // every view is perfect, so the objective decays monotonically
        // and the search clamps at beta_max
        assert_eq!(ensemble.rounds[0].beta, config.beta_max);
        assert!(ensemble.rounds[0].beta_clamped);
        assert!((ensemble.rounds[0].z - (-config.beta_max).exp()).abs() < 1e-12);
    }

    #[test]
    fn single_view_beta_matches_the_classical_closed_form() {
        // V = 1 collapses the objective to classical AdaBoost's, whose
        // optimum is 0.5 ln((1 - err) / err)
        let mut examples = Vec::new();
        let mut labels = Vec::new();
        for i in 0..12 {
            examples.push(vec![i as f64]);
            labels.push(if i < 6 { 1 } else { 2 });
        }
        // two contrarians keep every stump imperfect
        examples.push(vec![-5.0]);
        labels.push(2);
        examples.push(vec![20.0]);
        labels.push(1);
        let data = MultiviewDataset::new(examples, vec![vec![0]], labels, 2).unwrap();
        let config = BoostConfig { rounds: 5, beta_tolerance: 1e-16, ..BoostConfig::default() };
        let ensemble = fit_sama(&data, &config).unwrap();
        for round in &ensemble.rounds {
            let err = round.per_view_error[0];
            assert!(err > 0.0 && err < 0.5);
            let alpha = 0.5 * ((1.0 - err) / err).ln();
            assert!((round.beta - alpha).abs() < 1e-10, "beta {} vs alpha {}", round.beta, alpha);
        }
    }

    #[test]
    fn rounds_record_the_advertised_invariants() {
        let data = separable_two_view();
        let config = BoostConfig { rounds: 3, ..BoostConfig::default() };
        let ensemble = fit_sama(&data, &config).unwrap();
        assert_eq!(ensemble.rounds.len(), 3);
        for round in &ensemble.rounds {
            assert_eq!(round.learners.len(), 2);
            assert_eq!(round.fitness.len(), 2);
            assert!(round.z > 0.0);
            assert!(round.beta >= 0.0);
            assert!(round.per_view_error.iter().all(|&e| (0.0..=1.0).contains(&e)));
        }
    }

    #[test]
    fn ma_rule_runs_and_stays_in_range() {
        let data = separable_two_view();
        let config = BoostConfig {
            rounds: 3,
            beta_rule: BetaRule::MaClosedForm,
            ..BoostConfig::default()
        };
        let ensemble = fit_sama(&data, &config).unwrap();
        for round in &ensemble.rounds {
            assert!(round.beta >= 0.0 && round.beta <= config.beta_max);
        }
    }

    #[test]
    fn record_width_is_checked() {
        let data = separable_two_view();
        let ensemble = fit_sama(&data, &BoostConfig { rounds: 1, ..Default::default() }).unwrap();
        assert!(ensemble.predict(&[0.0]).is_err());
    }
}
