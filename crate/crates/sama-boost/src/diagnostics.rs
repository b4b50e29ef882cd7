//! Convergence bounds, margin analysis, and committee diversity.
//!
//! The training-error bound `prod Z_t / exp(sum beta_t)` and its margin
//! generalization `exp(2 theta / V) * prod Z_t / exp(sum beta_t)` come
//! out of the exponential-loss telescoping for binary sign voting, so
//! the bound traces are restricted to K = 2 runs. Margins themselves
//! are defined for any K as the convex-vote weight on the true class
//! minus the best weight on a wrong one. Kappa-error clouds measure
//! pairwise diversity between the round-level hypotheses.

use crate::boost::{BoostError, SamaEnsemble};
use crate::data::MultiviewDataset;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiagError {
    #[error("inputs have mismatched lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("sign-vote analysis needs binary labels, got {k} classes")]
    BinaryOnly { k: usize },
    #[error("label {label} outside 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },
    #[error("chance agreement is 1 while observed agreement is not")]
    UndefinedKappa,
    #[error("theta = {theta} must lie in [0, 1]")]
    BadTheta { theta: f64 },
    #[error("{name} = {value} must lie in [0, 1]")]
    BadRate { name: &'static str, value: f64 },
    #[error("normalizer {z} must be positive")]
    BadNormalizer { z: f64 },
    #[error("ensemble carries zero total beta")]
    ZeroTotalBeta,
    #[error("at least one view is required")]
    ZeroViews,
    #[error("need at least one positive and one negative example")]
    OneClassOnly,
    #[error("pairwise analysis needs at least two members, got {members}")]
    NotEnoughMembers { members: usize },
    #[error(transparent)]
    Boost(#[from] BoostError),
}

/// `prod Z_t / exp(sum beta_t)`, the upper bound on the sign-vote
/// training error after the rounds described by `zs` and `betas`.
/// Empty inputs give the vacuous bound 1.
pub fn training_error_bound(zs: &[f64], betas: &[f64]) -> Result<f64, DiagError> {
    if zs.len() != betas.len() {
        return Err(DiagError::LengthMismatch { left: zs.len(), right: betas.len() });
    }
    if let Some(&z) = zs.iter().find(|&&z| !(z > 0.0) || !z.is_finite()) {
        return Err(DiagError::BadNormalizer { z });
    }
    // log space: the product and the exponential both reach extreme
    // magnitudes long before their ratio does
    let log_bound: f64 = zs.iter().map(|z| z.ln()).sum::<f64>() - betas.iter().sum::<f64>();
    Ok(log_bound.exp())
}

/// `exp(2 theta / V) * prod Z_t / exp(sum beta_t)`: the bound on the
/// fraction of training examples with sign-vote margin at most theta.
/// At theta = 0 it reproduces [`training_error_bound`].
pub fn margin_bound(theta: f64, zs: &[f64], betas: &[f64], v: usize) -> Result<f64, DiagError> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(DiagError::BadTheta { theta });
    }
    if v == 0 {
        return Err(DiagError::ZeroViews);
    }
    Ok((2.0 * theta / v as f64).exp() * training_error_bound(zs, betas)?)
}

/// [`margin_bound`] with the residual 1/m factor the formula is
/// sometimes quoted with. The m-free form is the one consistent with
/// the training-error bound at theta = 0; this variant is kept for
/// comparison only.
pub fn margin_bound_with_residual(
    theta: f64,
    zs: &[f64],
    betas: &[f64],
    v: usize,
    m: usize,
) -> Result<f64, DiagError> {
    if m == 0 {
        return Err(DiagError::EmptyInput);
    }
    Ok(margin_bound(theta, zs, betas, v)? / m as f64)
}

/// The canonical theta grid {0, 0.1, ..., 1.0} used by reports.
pub fn theta_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// One prefix of a bound trace.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundPoint {
    /// 1-based round index; the fields below cover rounds 1..=round.
    pub round: usize,
    pub z: f64,
    pub beta: f64,
    pub bound: f64,
    /// 0/1 error of the prefix ensemble's sign vote on the training set.
    pub training_error: f64,
}

/// Per-round bound values next to the empirical errors they dominate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundTrace {
    pub points: Vec<BoundPoint>,
}

fn class_sign(label: usize) -> f64 {
    if label == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Per-round, per-example summed view signs `sigma_t(x) = sum_v s_v`
/// with s_v = +1 when view v's learner says class 1, -1 otherwise.
fn view_sign_sums(
    ensemble: &SamaEnsemble,
    dataset: &MultiviewDataset,
) -> Result<Vec<Vec<f64>>, DiagError> {
    if ensemble.k != 2 {
        return Err(DiagError::BinaryOnly { k: ensemble.k });
    }
    if dataset.d() != ensemble.d {
        return Err(DiagError::LengthMismatch { left: dataset.d(), right: ensemble.d });
    }
    ensemble
        .rounds
        .iter()
        .map(|round| {
            (0..dataset.n())
                .map(|i| {
                    let record = dataset.record(i);
                    let mut sigma = 0.0;
                    for learner in &round.learners {
                        let label = learner
                            .predict_label(&ensemble.project(record, learner.view()))
                            .expect("record width checked");
                        sigma += class_sign(label);
                    }
                    Ok(sigma)
                })
                .collect()
        })
        .collect()
}

/// Tracks the training-error bound and the empirical sign-vote error
/// of every prefix of a binary ensemble. The sign vote decides by
/// `sum_t beta_t * sigma_t(x)`, ties going to class 1.
pub fn bound_trace(ensemble: &SamaEnsemble, train: &MultiviewDataset) -> Result<BoundTrace, DiagError> {
    let signs = view_sign_sums(ensemble, train)?;
    let n = train.n();
    let mut vote = vec![0.0; n];
    let mut log_bound = 0.0;
    let mut points = Vec::with_capacity(ensemble.rounds.len());
    for (t, round) in ensemble.rounds.iter().enumerate() {
        for (acc, &sigma) in vote.iter_mut().zip(&signs[t]) {
            *acc += round.beta * sigma;
        }
        log_bound += round.z.ln() - round.beta;
        let wrong = vote
            .iter()
            .zip(train.labels())
            .filter(|(&f, &y)| {
                let voted = if f >= 0.0 { 1 } else { 2 };
                voted != y
            })
            .count();
        points.push(BoundPoint {
            round: t + 1,
            z: round.z,
            beta: round.beta,
            bound: log_bound.exp(),
            training_error: wrong as f64 / n as f64,
        });
    }
    Ok(BoundTrace { points })
}

/// Sign-vote margins `y * sum_t beta_t sigma_t(x) / sum_t beta_t` of a
/// binary ensemble, one per example, each in [-V, V]. This is the
/// margin notion [`margin_bound`] controls; for K = 2 it equals V
/// times [`margin_of_example`].
pub fn sign_vote_margins(
    ensemble: &SamaEnsemble,
    dataset: &MultiviewDataset,
) -> Result<Vec<f64>, DiagError> {
    let signs = view_sign_sums(ensemble, dataset)?;
    let total_beta: f64 = ensemble.rounds.iter().map(|r| r.beta).sum();
    if !(total_beta > 0.0) {
        return Err(DiagError::ZeroTotalBeta);
    }
    Ok((0..dataset.n())
        .map(|i| {
            let f: f64 =
                ensemble.rounds.iter().enumerate().map(|(t, r)| r.beta * signs[t][i]).sum();
            class_sign(dataset.label(i)) * f / total_beta
        })
        .collect())
}

/// Margin of one example under the beta-weighted convex vote: with
/// `w_p = sum_t sum_v beta_t [h_v^t(x) = p] / (V sum_t beta_t)`, the
/// margin is `w_y - max_{p != y} w_p`, in [-1, 1]. Defined for any K.
pub fn margin_of_example(
    ensemble: &SamaEnsemble,
    record: &[f64],
    label: usize,
) -> Result<f64, DiagError> {
    if label == 0 || label > ensemble.k {
        return Err(DiagError::LabelOutOfRange { label, k: ensemble.k });
    }
    if record.len() != ensemble.d {
        return Err(DiagError::LengthMismatch { left: record.len(), right: ensemble.d });
    }
    let total_beta: f64 = ensemble.rounds.iter().map(|r| r.beta).sum();
    if !(total_beta > 0.0) {
        return Err(DiagError::ZeroTotalBeta);
    }
    let mut w = vec![0.0; ensemble.k];
    for round in &ensemble.rounds {
        for learner in &round.learners {
            let voted = learner
                .predict_label(&ensemble.project(record, learner.view()))
                .expect("record width checked");
            w[voted - 1] += round.beta;
        }
    }
    let scale = ensemble.v as f64 * total_beta;
    for entry in &mut w {
        *entry /= scale;
    }
    let best_wrong = w
        .iter()
        .enumerate()
        .filter(|&(p, _)| p != label - 1)
        .map(|(_, &entry)| entry)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(w[label - 1] - best_wrong)
}

/// Empirical CDF of `margins` sampled at `grid`: for each psi the
/// fraction of margins at most psi, returned sorted ascending by psi.
pub fn margin_cdf(margins: &[f64], grid: &[f64]) -> Vec<(f64, f64)> {
    let n = margins.len() as f64;
    let mut psis: Vec<f64> = grid.to_vec();
    psis.sort_by(|a, b| a.total_cmp(b));
    psis.iter()
        .map(|&psi| (psi, margins.iter().filter(|&&m| m <= psi).count() as f64 / n))
        .collect()
}

/// Margins, their CDF, and (for binary runs) the margin-bound curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarginReport {
    /// Per-example convex-vote margins, dataset order.
    pub margins: Vec<f64>,
    /// (psi, fraction with margin <= psi), ascending in psi.
    pub cdf: Vec<(f64, f64)>,
    /// (theta, margin_bound(theta)) over the canonical grid; empty
    /// unless K = 2, where the bound derivation applies.
    pub bound_curve: Vec<(f64, f64)>,
}

/// Computes every example's margin, samples the CDF at `grid`, and —
/// for binary ensembles — attaches the bound curve over [`theta_grid`].
pub fn margin_distribution(
    ensemble: &SamaEnsemble,
    dataset: &MultiviewDataset,
    grid: &[f64],
) -> Result<MarginReport, DiagError> {
    let margins = (0..dataset.n())
        .map(|i| margin_of_example(ensemble, dataset.record(i), dataset.label(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let cdf = margin_cdf(&margins, grid);
    let bound_curve = if ensemble.k == 2 {
        let zs: Vec<f64> = ensemble.rounds.iter().map(|r| r.z).collect();
        let betas: Vec<f64> = ensemble.rounds.iter().map(|r| r.beta).collect();
        theta_grid()
            .into_iter()
            .map(|theta| Ok((theta, margin_bound(theta, &zs, &betas, ensemble.v)?)))
            .collect::<Result<Vec<_>, DiagError>>()?
    } else {
        Vec::new()
    };
    Ok(MarginReport { margins, cdf, bound_curve })
}

/// Cohen's kappa between two label sequences over classes 1..=K:
/// `(p_o - p_e) / (1 - p_e)` from the coincidence matrix, where p_o is
/// the observed agreement and p_e the chance agreement of the two
/// marginals. Perfect agreement is 1 by definition, covering the
/// both-constant-identical case where the ratio alone would be 0/0.
pub fn kappa(a: &[usize], b: &[usize], k: usize) -> Result<f64, DiagError> {
    if a.len() != b.len() {
        return Err(DiagError::LengthMismatch { left: a.len(), right: b.len() });
    }
    if a.is_empty() {
        return Err(DiagError::EmptyInput);
    }
    for &label in a.iter().chain(b) {
        if label == 0 || label > k {
            return Err(DiagError::LabelOutOfRange { label, k });
        }
    }
    let n = a.len();
    let mut matrix = vec![vec![0usize; k]; k];
    for (&x, &y) in a.iter().zip(b) {
        matrix[x - 1][y - 1] += 1;
    }
    let agreements: usize = (0..k).map(|c| matrix[c][c]).sum();
    if agreements == n {
        return Ok(1.0);
    }
    let p_observed = agreements as f64 / n as f64;
    let p_chance: f64 = (0..k)
        .map(|c| {
            let row: usize = matrix[c].iter().sum();
            let column: usize = (0..k).map(|r| matrix[r][c]).sum();
            (row as f64 / n as f64) * (column as f64 / n as f64)
        })
        .sum();
    // p_e = 1 forces both marginals onto one shared class, which makes
    // p_o = 1 as well; this branch is unreachable but kept as a guard
    if 1.0 - p_chance <= f64::EPSILON {
        return Err(DiagError::UndefinedKappa);
    }
    Ok((p_observed - p_chance) / (1.0 - p_chance))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KappaErrorPoint {
    /// 0-based member indices of the pair.
    pub i: usize,
    pub j: usize,
    pub kappa: f64,
    /// Mean of the two members' test error rates.
    pub error: f64,
}

/// All pairwise (kappa, mean error) points of an ensemble's members,
/// plus their centroid. Low kappa and low error — the lower left of
/// the scatter — is where diverse, accurate committees live.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KappaErrorCloud {
    pub members: usize,
    pub points: Vec<KappaErrorPoint>,
    pub centroid_kappa: f64,
    pub centroid_error: f64,
}

/// Builds the cloud from precomputed member predictions and the truth.
pub fn kappa_error_cloud_from_predictions(
    predictions: &[Vec<usize>],
    truth: &[usize],
    k: usize,
) -> Result<KappaErrorCloud, DiagError> {
    if predictions.len() < 2 {
        return Err(DiagError::NotEnoughMembers { members: predictions.len() });
    }
    if truth.is_empty() {
        return Err(DiagError::EmptyInput);
    }
    for member in predictions {
        if member.len() != truth.len() {
            return Err(DiagError::LengthMismatch { left: member.len(), right: truth.len() });
        }
    }
    let n = truth.len() as f64;
    let errors: Vec<f64> = predictions
        .iter()
        .map(|member| member.iter().zip(truth).filter(|(p, t)| p != t).count() as f64 / n)
        .collect();
    let mut points = Vec::with_capacity(predictions.len() * (predictions.len() - 1) / 2);
    for i in 0..predictions.len() {
        for j in i + 1..predictions.len() {
            points.push(KappaErrorPoint {
                i,
                j,
                kappa: kappa(&predictions[i], &predictions[j], k)?,
                error: 0.5 * (errors[i] + errors[j]),
            });
        }
    }
    let count = points.len() as f64;
    let centroid_kappa = points.iter().map(|p| p.kappa).sum::<f64>() / count;
    let centroid_error = points.iter().map(|p| p.error).sum::<f64>() / count;
    Ok(KappaErrorCloud {
        members: predictions.len(),
        points,
        centroid_kappa,
        centroid_error,
    })
}

/// Kappa-error cloud of a fitted ensemble on a test set. Members are
/// the T round-level hypotheses (each round's learners fused by that
/// round's fitness-weighted confidence vote), giving T(T-1)/2 points.
pub fn kappa_error_cloud(
    ensemble: &SamaEnsemble,
    test: &MultiviewDataset,
) -> Result<KappaErrorCloud, DiagError> {
    if ensemble.rounds.len() < 2 {
        return Err(DiagError::NotEnoughMembers { members: ensemble.rounds.len() });
    }
    if test.d() != ensemble.d {
        return Err(DiagError::LengthMismatch { left: test.d(), right: ensemble.d });
    }
    let predictions = (0..ensemble.rounds.len())
        .map(|t| {
            (0..test.n())
                .map(|i| Ok(ensemble.round_prediction(t, test.record(i))?))
                .collect::<Result<Vec<_>, DiagError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    kappa_error_cloud_from_predictions(&predictions, test.labels(), ensemble.k)
}

/// Harmonic mean of precision and recall; zero when both are zero.
pub fn f_score(precision: f64, recall: f64) -> Result<f64, DiagError> {
    if !(0.0..=1.0).contains(&precision) {
        return Err(DiagError::BadRate { name: "precision", value: precision });
    }
    if !(0.0..=1.0).contains(&recall) {
        return Err(DiagError::BadRate { name: "recall", value: recall });
    }
    if precision == 0.0 && recall == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * precision * recall / (precision + recall))
}

/// Precision and recall of `predicted` against `truth` for one
/// positive class; empty denominators yield zero.
pub fn precision_recall(
    predicted: &[usize],
    truth: &[usize],
    positive: usize,
) -> Result<(f64, f64), DiagError> {
    if predicted.len() != truth.len() {
        return Err(DiagError::LengthMismatch { left: predicted.len(), right: truth.len() });
    }
    if predicted.is_empty() {
        return Err(DiagError::EmptyInput);
    }
    let mut true_positive = 0usize;
    let mut predicted_positive = 0usize;
    let mut actual_positive = 0usize;
    for (&p, &t) in predicted.iter().zip(truth) {
        if p == positive {
            predicted_positive += 1;
            if t == positive {
                true_positive += 1;
            }
        }
        if t == positive {
            actual_positive += 1;
        }
    }
    let precision =
        if predicted_positive == 0 { 0.0 } else { true_positive as f64 / predicted_positive as f64 };
    let recall =
        if actual_positive == 0 { 0.0 } else { true_positive as f64 / actual_positive as f64 };
    Ok((precision, recall))
}

/// Probability that a random positive outscores a random negative,
/// ties counting one half — the area under the ROC curve.
pub fn roc_auc(scores: &[f64], positive: &[bool]) -> Result<f64, DiagError> {
    if scores.len() != positive.len() {
        return Err(DiagError::LengthMismatch { left: scores.len(), right: positive.len() });
    }
    let pos: Vec<f64> =
        scores.iter().zip(positive).filter(|(_, &p)| p).map(|(&s, _)| s).collect();
    let neg: Vec<f64> =
        scores.iter().zip(positive).filter(|(_, &p)| !p).map(|(&s, _)| s).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(DiagError::OneClassOnly);
    }
    let mut favorable = 0.0;
    for &p in &pos {
        for &n in &neg {
            if p > n {
                favorable += 1.0;
            } else if p == n {
                favorable += 0.5;
            }
        }
    }
    Ok(favorable / (pos.len() as f64 * neg.len() as f64))
}
