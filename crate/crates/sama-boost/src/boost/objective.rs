//! The multiview exponential objective and its per-round minimization.
//!
//! One boosting round classifies every example with V per-view
//! learners; `b` counts the views that got an example wrong. The
//! round's objective is
//!
//! ```text
//! A(beta) = sum_i W_i * exp(-beta * (1 - 2 b_i / V))
//! ```
//!
//! a sum of exponentials in `beta`, hence convex: the optimal beta is
//! the unique root of `dA/dbeta` on `[0, beta_max]`, or a clamped
//! endpoint when the derivative never changes sign there. The naive
//! closed form [`ma_beta`] sets beta from the product of per-view
//! weighted errors instead and is kept as the cheaper, weaker rule.

use crate::data::LabelVector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoostError {
    #[error("inputs have mismatched lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("label vectors span {left} and {right} classes")]
    ClassCountMismatch { left: usize, right: usize },
    #[error("{b} misclassifying views out of {v}")]
    BadViewCount { b: usize, v: usize },
    #[error("at least one view is required")]
    ZeroViews,
    #[error("empty input")]
    EmptyInput,
    #[error("beta_max = {beta_max} must be positive and finite")]
    BadSearchRange { beta_max: f64 },
    #[error("beta tolerance = {tolerance} must be positive and finite")]
    BadTolerance { tolerance: f64 },
    #[error("weight normalizer vanished")]
    ZeroNormalizer,
    #[error("boosting needs at least two classes, got {k}")]
    NeedsTwoClasses { k: usize },
    #[error("rounds must be at least 1")]
    NoRounds,
    #[error("ensemble carries no usable fitness mass")]
    DegenerateEnsemble,
    #[error("training the view-{view} learner in round {round} failed")]
    LearnerTraining {
        round: usize,
        view: usize,
        #[source]
        source: crate::learners::LearnError,
    },
    #[error(transparent)]
    Data(#[from] crate::data::DataError),
}

/// Reward-penalty recoding of one view's hypothesis against the truth.
///
/// A correct one-hot prediction is kept as-is; a wrong one is replaced
/// by a vector carrying -1 at both the true and the predicted class, so
/// that `Y . h~` is +1 exactly when the view was right and -1 when it
/// was wrong.
pub fn transform_hypothesis(truth: &LabelVector, predicted: &LabelVector) -> Result<Vec<i8>, BoostError> {
    if truth.k() != predicted.k() {
        return Err(BoostError::ClassCountMismatch { left: truth.k(), right: predicted.k() });
    }
    let mut recoded = vec![0i8; truth.k()];
    if truth.hot_index() == predicted.hot_index() {
        recoded[predicted.hot_index() - 1] = 1;
    } else {
        recoded[truth.hot_index() - 1] = -1;
        recoded[predicted.hot_index() - 1] = -1;
    }
    Ok(recoded)
}

/// Exponential loss of one example misclassified by `b` of `v` views:
/// `exp(2b/v - 1)`.
pub fn exp_loss(b: usize, v: usize) -> Result<f64, BoostError> {
    Ok(difficulty(b, v)?.exp())
}

/// Degree of difficulty `2b/v - 1`, in [-1, 1]: -1 when every view is
/// right, +1 when every view is wrong.
pub fn difficulty(b: usize, v: usize) -> Result<f64, BoostError> {
    if v == 0 {
        return Err(BoostError::ZeroViews);
    }
    if b > v {
        return Err(BoostError::BadViewCount { b, v });
    }
    Ok(2.0 * b as f64 / v as f64 - 1.0)
}

fn check_objective_inputs(weights: &[f64], b: &[usize], v: usize) -> Result<(), BoostError> {
    if weights.is_empty() {
        return Err(BoostError::EmptyInput);
    }
    if weights.len() != b.len() {
        return Err(BoostError::LengthMismatch { left: weights.len(), right: b.len() });
    }
    if v == 0 {
        return Err(BoostError::ZeroViews);
    }
    if let Some(&bad) = b.iter().find(|&&bi| bi > v) {
        return Err(BoostError::BadViewCount { b: bad, v });
    }
    Ok(())
}

/// `A(beta)` for a candidate expansion coefficient.
pub fn evaluate_objective(
    weights: &[f64],
    b: &[usize],
    v: usize,
    beta: f64,
) -> Result<f64, BoostError> {
    check_objective_inputs(weights, b, v)?;
    Ok(weights
        .iter()
        .zip(b)
        .map(|(&w, &bi)| w * (-beta * (1.0 - 2.0 * bi as f64 / v as f64)).exp())
        .sum())
}

/// Analytic `dA/dbeta`.
pub fn objective_derivative(
    weights: &[f64],
    b: &[usize],
    v: usize,
    beta: f64,
) -> Result<f64, BoostError> {
    check_objective_inputs(weights, b, v)?;
    Ok(weights
        .iter()
        .zip(b)
        .map(|(&w, &bi)| {
            let slope = 2.0 * bi as f64 / v as f64 - 1.0;
            w * slope * (beta * slope).exp()
        })
        .sum())
}

/// Result of the one-dimensional objective minimization.
#[derive(Debug, Clone, Copy)]
pub struct BetaSearch {
    pub beta: f64,
    /// `A(beta)`, which is also the weight normalizer Z of the round.
    pub objective: f64,
    /// True when the minimum sat on an endpoint of `[0, beta_max]`
    /// rather than at an interior stationary point.
    pub clamped: bool,
}

/// Minimizes `A` over `[0, beta_max]` by bisection on the derivative.
///
/// The derivative is monotone (A is convex), so a sign change brackets
/// the unique interior root; without one the minimum is the endpoint
/// where A is smallest, reported with `clamped` set. Bisection stops
/// once `|dA/dbeta| < tolerance` or the bracket reaches floating-point
/// resolution, whichever comes first, so a tolerance below ~1e-15
/// effectively requests full precision.
pub fn optimize_beta(
    weights: &[f64],
    b: &[usize],
    v: usize,
    beta_max: f64,
    tolerance: f64,
) -> Result<BetaSearch, BoostError> {
    check_objective_inputs(weights, b, v)?;
    if !(beta_max > 0.0) || !beta_max.is_finite() {
        return Err(BoostError::BadSearchRange { beta_max });
    }
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(BoostError::BadTolerance { tolerance });
    }

    let g = |beta: f64| objective_derivative(weights, b, v, beta).expect("inputs checked");
    let g_low = g(0.0);
    if g_low >= 0.0 {
        // A is non-decreasing on the whole interval
        return Ok(BetaSearch {
            beta: 0.0,
            objective: evaluate_objective(weights, b, v, 0.0)?,
            clamped: true,
        });
    }
    let g_high = g(beta_max);
    if g_high <= 0.0 {
        return Ok(BetaSearch {
            beta: beta_max,
            objective: evaluate_objective(weights, b, v, beta_max)?,
            clamped: true,
        });
    }

    let mut lo = 0.0f64;
    let mut hi = beta_max;
    let mut mid = 0.5 * (lo + hi);
    while hi - lo > f64::EPSILON * (1.0 + hi) {
        mid = 0.5 * (lo + hi);
        let g_mid = g(mid);
        if g_mid.abs() < tolerance {
            break;
        }
        if g_mid < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BetaSearch { beta: mid, objective: evaluate_objective(weights, b, v, mid)?, clamped: false })
}

/// Closed-form beta from the product of per-view weighted errors
/// (each clipped into `[1e-9, 1 - 1e-9]` first):
/// `0.5 * ln((1 - prod P) / prod P)`.
pub fn ma_beta(per_view_errors: &[f64]) -> Result<f64, BoostError> {
    if per_view_errors.is_empty() {
        return Err(BoostError::EmptyInput);
    }
    let product: f64 = per_view_errors.iter().map(|&e| e.clamp(1e-9, 1.0 - 1e-9)).product();
    Ok(0.5 * ((1.0 - product) / product).ln())
}

/// One exponential reweighting step: multiplies each weight by
/// `exp(-beta * (1 - 2 b_i / V))` and renormalizes. Returns the new
/// distribution together with the normalizer Z.
pub fn update_weights(
    weights: &[f64],
    b: &[usize],
    v: usize,
    beta: f64,
) -> Result<(Vec<f64>, f64), BoostError> {
    check_objective_inputs(weights, b, v)?;
    let unnormalized: Vec<f64> = weights
        .iter()
        .zip(b)
        .map(|(&w, &bi)| w * (-beta * (1.0 - 2.0 * bi as f64 / v as f64)).exp())
        .collect();
    let z: f64 = unnormalized.iter().sum();
    if !(z > 0.0) || !z.is_finite() {
        return Err(BoostError::ZeroNormalizer);
    }
    // floor at the smallest positive double so the distribution stays
    // strictly positive even when an easy example's weight underflows
    let updated: Vec<f64> =
        unnormalized.iter().map(|&u| (u / z).max(f64::MIN_POSITIVE)).collect();
    Ok((updated, z))
}
