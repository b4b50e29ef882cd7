//! Weighted multiclass decision stump.
//!
//! The search enumerates every feature and every midpoint between
//! consecutive distinct values, in feature-then-threshold order, and
//! keeps the first split that strictly improves the weighted 0/1
//! error. Each side predicts its weighted-majority class and reports
//! the side's normalized class histogram as its confidence, so a stump
//! never does worse than the best constant predictor.

use super::{validate_training_set, LearnError, Model, TrainedLearner};
use crate::data::WeightDistribution;

#[derive(Debug, Clone)]
pub(crate) struct Stump {
    feature: usize,
    threshold: f64,
    below: Vec<f64>,
    above_or_equal: Vec<f64>,
}

impl Stump {
    pub(crate) fn confidence(&self, x: &[f64]) -> &[f64] {
        if x[self.feature] < self.threshold {
            &self.below
        } else {
            &self.above_or_equal
        }
    }

    #[cfg(test)]
    pub(crate) fn split(&self) -> (usize, f64) {
        (self.feature, self.threshold)
    }
}

/// Weighted mass not captured by the heaviest class. Ties go to the
/// lowest class index, matching prediction-side tie-breaking.
fn majority_error(hist: &[f64], mass: f64) -> f64 {
    let mut best = 0;
    for (i, &h) in hist.iter().enumerate() {
        if h > hist[best] {
            best = i;
        }
    }
    mass - hist[best]
}

fn normalize(hist: &[f64]) -> Vec<f64> {
    let total: f64 = hist.iter().sum();
    hist.iter().map(|&h| (h / total).max(0.0)).collect()
}

/// Fits a stump minimizing weighted 0/1 error; falls back to the
/// weighted-majority constant predictor when no split improves on it.
pub fn train_stump(
    x: &[Vec<f64>],
    labels: &[usize],
    weights: &WeightDistribution,
    k: usize,
) -> Result<TrainedLearner, LearnError> {
    let dim = validate_training_set(x, labels, weights, k)?;
    let w = weights.weights();
    let n = x.len();

    // raw per-class weight mass over the whole set (total mass is 1)
    let mut total = vec![0.0f64; k];
    for (&label, &weight) in labels.iter().zip(w) {
        total[label - 1] += weight;
    }
    let mut best_error = majority_error(&total, 1.0);
    let mut best: Option<(usize, f64, Vec<f64>, Vec<f64>)> = None;

    let mut order: Vec<usize> = (0..n).collect();
    for feature in 0..dim {
        order.sort_by(|&a, &b| x[a][feature].partial_cmp(&x[b][feature]).unwrap());
        let mut prefix = vec![0.0f64; k];
        let mut prefix_mass = 0.0;
        for cut in 1..n {
            let prev = order[cut - 1];
            prefix[labels[prev] - 1] += w[prev];
            prefix_mass += w[prev];
            let lo = x[prev][feature];
            let hi = x[order[cut]][feature];
            if lo == hi {
                continue;
            }
            let suffix: Vec<f64> = (0..k).map(|c| total[c] - prefix[c]).collect();
            let error =
                majority_error(&prefix, prefix_mass) + majority_error(&suffix, 1.0 - prefix_mass);
            // mathematically tied cuts can differ by an ulp depending
            // on accumulation order; demand a real improvement so ties
            // stay with the earliest candidate
            if error < best_error - 1e-12 {
                best_error = error;
                let threshold = lo + (hi - lo) / 2.0;
                best = Some((feature, threshold, normalize(&prefix), normalize(&suffix)));
            }
        }
    }

    let model = match best {
        Some((feature, threshold, below, above_or_equal)) => {
            Model::Stump(Stump { feature, threshold, below, above_or_equal })
        }
        None => Model::Constant { confidence: normalize(&total) },
    };
    Ok(TrainedLearner::new(model, dim, k))
}
