//! Collaborative multiview boosting.
//!
//! This crate trains additive ensembles over datasets whose features
//! are split into several *views* (feature groups). Each boosting
//! round fits one weak learner per view on a shared example-weight
//! distribution, scores how many views get each example wrong, and
//! picks the round coefficient that minimizes a shared exponential
//! loss — so the views help one another instead of boosting in
//! isolation.
//!
//! The pieces:
//!
//! - [`data`]: multiview datasets, stratified splits, label noise.
//! - [`learners`]: the weak learners (decision stumps and a small
//!   one-hidden-layer network) with confidence outputs.
//! - [`boost`]: the collaborative trainer, its closed-form
//!   predecessor, and single-view baselines (SAMME on stacked
//!   features, per-view SAMME with late fusion).
//! - [`diagnostics`]: training-error and margin bounds, margin
//!   distributions, kappa-error clouds, ROC/AUC.
//! - [`io`]: CSV dataset loading and deterministic report output.
//! - [`runner`]: declarative experiment configs and the run/compare
//!   drivers behind the `sama-boost` binary.
//!
//! The `examples/` directory walks through each capability on the
//! bundled datasets; start with `train_sama`.

pub mod boost;
pub mod data;
pub mod diagnostics;
pub mod io;
pub mod learners;
pub mod runner;
