//! Multiview data model: feature records grouped into disjoint views,
//! one-hot label encoding, boosting weight distributions, stratified
//! splitting and label-noise injection.
//!
//! Class labels are 1-based and contiguous (`1..=k`) everywhere in the
//! public API; vectors indexed by class use position `c - 1`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("dataset has no examples")]
    EmptyDataset,
    #[error("row {row} has {len} features, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("row {row}, feature column {column} is not finite")]
    NonFiniteFeature { row: usize, column: usize },
    #[error("row {row} has label {label}, outside 1..={k}")]
    LabelOutOfRange { row: usize, label: usize, k: usize },
    #[error("{labels} labels for {examples} examples")]
    LabelCountMismatch { labels: usize, examples: usize },
    #[error("class index {class} outside 1..={k}")]
    ClassOutOfRange { class: usize, k: usize },
    #[error("view {view} is empty")]
    EmptyView { view: usize },
    #[error("view {view} references feature column {column}, dataset has {d}")]
    ViewColumnOutOfRange { view: usize, column: usize, d: usize },
    #[error("feature column {column} appears in more than one view")]
    OverlappingViews { column: usize },
    #[error("feature column {column} belongs to no view")]
    UncoveredColumn { column: usize },
    #[error("cannot partition {d} feature columns into {v} views")]
    BadViewCount { d: usize, v: usize },
    #[error("split ratios {ratios:?} must be non-negative and sum to 1")]
    BadSplitRatios { ratios: [f64; 3] },
    #[error("class {class} has no examples but a positive split ratio was requested")]
    EmptyClass { class: usize },
    #[error("noise fraction {fraction} outside [0, 1]")]
    BadNoiseFraction { fraction: f64 },
    #[error("label noise needs at least two classes")]
    NoiseNeedsTwoClasses,
    #[error("weight vector must be non-empty")]
    EmptyWeights,
    #[error("weight {index} is {value}, weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("weights sum to {sum}, expected 1 within 1e-9")]
    UnnormalizedWeights { sum: f64 },
}

/// One-hot encoding of a class label: entry `c - 1` is 1, the rest 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelVector {
    entries: Vec<u8>,
    hot_index: usize,
}

impl LabelVector {
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// The encoded class, 1-based.
    pub fn hot_index(&self) -> usize {
        self.hot_index
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }
}

/// Encodes 1-based class `c` as a one-hot vector of length `k`.
///
/// ```
/// use sama_boost::data::encode_label;
/// let y = encode_label(3, 3).unwrap();
/// assert_eq!(y.entries(), &[0, 0, 1]);
/// ```
pub fn encode_label(c: usize, k: usize) -> Result<LabelVector, DataError> {
    if c == 0 || c > k {
        return Err(DataError::ClassOutOfRange { class: c, k });
    }
    let mut entries = vec![0u8; k];
    entries[c - 1] = 1;
    Ok(LabelVector { entries, hot_index: c })
}

/// A labelled dataset whose feature columns are grouped into disjoint
/// views. Immutable once constructed; all derived sets (splits, noisy
/// copies) are fresh values.
#[derive(Debug, Clone)]
pub struct MultiviewDataset {
    examples: Vec<Vec<f64>>,
    views: Vec<Vec<usize>>,
    labels: Vec<usize>,
    k: usize,
}

impl MultiviewDataset {
    pub fn new(
        examples: Vec<Vec<f64>>,
        views: Vec<Vec<usize>>,
        labels: Vec<usize>,
        k: usize,
    ) -> Result<Self, DataError> {
        if examples.is_empty() {
            return Err(DataError::EmptyDataset);
        }
        let d = examples[0].len();
        for (row, x) in examples.iter().enumerate() {
            if x.len() != d {
                return Err(DataError::RaggedRow { row, len: x.len(), expected: d });
            }
            for (column, value) in x.iter().enumerate() {
                if !value.is_finite() {
                    return Err(DataError::NonFiniteFeature { row, column });
                }
            }
        }
        if labels.len() != examples.len() {
            return Err(DataError::LabelCountMismatch {
                labels: labels.len(),
                examples: examples.len(),
            });
        }
        for (row, &label) in labels.iter().enumerate() {
            if label == 0 || label > k {
                return Err(DataError::LabelOutOfRange { row, label, k });
            }
        }
        let mut owner = vec![usize::MAX; d];
        for (v, group) in views.iter().enumerate() {
            if group.is_empty() {
                return Err(DataError::EmptyView { view: v });
            }
            for &column in group {
                if column >= d {
                    return Err(DataError::ViewColumnOutOfRange { view: v, column, d });
                }
                if owner[column] != usize::MAX {
                    return Err(DataError::OverlappingViews { column });
                }
                owner[column] = v;
            }
        }
        if let Some(column) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(DataError::UncoveredColumn { column });
        }
        Ok(Self { examples, views, labels, k })
    }

    pub fn n(&self) -> usize {
        self.examples.len()
    }

    /// Total feature dimensionality across all views. (The views
    /// partition the columns exactly, so this works even for an empty
    /// partition of a split.)
    pub fn d(&self) -> usize {
        self.views.iter().map(Vec::len).sum()
    }

    pub fn v(&self) -> usize {
        self.views.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, example: usize) -> usize {
        self.labels[example]
    }

    pub fn record(&self, example: usize) -> &[f64] {
        &self.examples[example]
    }

    pub fn views(&self) -> &[Vec<usize>] {
        &self.views
    }

    /// Projects one example onto the columns of `view`.
    pub fn view_record(&self, example: usize, view: usize) -> Vec<f64> {
        let x = &self.examples[example];
        self.views[view].iter().map(|&c| x[c]).collect()
    }

    /// Projects an arbitrary full-width record onto the columns of `view`.
    pub fn project(&self, record: &[f64], view: usize) -> Vec<f64> {
        self.views[view].iter().map(|&c| record[c]).collect()
    }

    /// Number of examples carrying each class, indexed by `class - 1`.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k];
        for &label in &self.labels {
            counts[label - 1] += 1;
        }
        counts
    }

    /// New dataset containing the given rows, in the given order. An
    /// empty selection is allowed — a 1/0/0 split legitimately leaves
    /// empty partitions — and keeps the shape metadata intact.
    pub fn subset(&self, indices: &[usize]) -> Result<Self, DataError> {
        if indices.is_empty() {
            return Ok(Self {
                examples: Vec::new(),
                views: self.views.clone(),
                labels: Vec::new(),
                k: self.k,
            });
        }
        let examples = indices.iter().map(|&i| self.examples[i].clone()).collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Self::new(examples, self.views.clone(), labels, self.k)
    }

    /// Same features and views, different labels.
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<Self, DataError> {
        Self::new(self.examples.clone(), self.views.clone(), labels, self.k)
    }
}

/// Balanced random partition of `d` feature columns into `v` views:
/// columns are shuffled by `seed` and dealt round-robin, so group sizes
/// differ by at most one. Columns within a view are kept ascending.
///
/// ```
/// use sama_boost::data::partition_views;
/// let views = partition_views(5, 2, 7).unwrap();
/// let mut sizes: Vec<usize> = views.iter().map(|g| g.len()).collect();
/// sizes.sort();
/// assert_eq!(sizes, vec![2, 3]);
/// ```
pub fn partition_views(d: usize, v: usize, seed: u64) -> Result<Vec<Vec<usize>>, DataError> {
    if v == 0 || v > d {
        return Err(DataError::BadViewCount { d, v });
    }
    let mut columns: Vec<usize> = (0..d).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    columns.shuffle(&mut rng);
    let mut groups = vec![Vec::new(); v];
    for (i, column) in columns.into_iter().enumerate() {
        groups[i % v].push(column);
    }
    for group in &mut groups {
        group.sort_unstable();
    }
    Ok(groups)
}

/// Ratios and seed for a train/validation/test split.
#[derive(Debug, Clone, Copy)]
pub struct SplitSpec {
    pub train: f64,
    pub validation: f64,
    pub test: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train: f64, validation: f64, test: f64, seed: u64) -> Result<Self, DataError> {
        let spec = Self { train, validation, test, seed };
        let ratios = [train, validation, test];
        let sum: f64 = ratios.iter().sum();
        if ratios.iter().any(|&r| r < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(DataError::BadSplitRatios { ratios });
        }
        Ok(spec)
    }

    fn ratios(&self) -> [f64; 3] {
        [self.train, self.validation, self.test]
    }
}

/// Outcome of [`stratified_split`]: the three partitions plus the row
/// indices (into the parent dataset) that produced them.
#[derive(Debug, Clone)]
pub struct StratifiedSplit {
    pub train: MultiviewDataset,
    pub validation: MultiviewDataset,
    pub test: MultiviewDataset,
    pub train_indices: Vec<usize>,
    pub validation_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
}

/// Splits per class so each partition's class proportions match the
/// requested ratios to within one example. Deterministic for a given
/// spec; each class is apportioned by largest remainder.
pub fn stratified_split(
    dataset: &MultiviewDataset,
    spec: &SplitSpec,
) -> Result<StratifiedSplit, DataError> {
    let ratios = spec.ratios();
    let sum: f64 = ratios.iter().sum();
    if ratios.iter().any(|&r| r < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(DataError::BadSplitRatios { ratios });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); dataset.k()];
    for (i, &label) in dataset.labels().iter().enumerate() {
        by_class[label - 1].push(i);
    }
    let mut parts: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (c, members) in by_class.iter_mut().enumerate() {
        if members.is_empty() {
            if ratios.iter().any(|&r| r > 0.0) {
                return Err(DataError::EmptyClass { class: c + 1 });
            }
            continue;
        }
        members.shuffle(&mut rng);
        let counts = apportion(members.len(), &ratios);
        let mut offset = 0;
        for (p, &count) in counts.iter().enumerate() {
            parts[p].extend_from_slice(&members[offset..offset + count]);
            offset += count;
        }
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    let [train_indices, validation_indices, test_indices] = parts;
    Ok(StratifiedSplit {
        train: dataset.subset(&train_indices)?,
        validation: dataset.subset(&validation_indices)?,
        test: dataset.subset(&test_indices)?,
        train_indices,
        validation_indices,
        test_indices,
    })
}

/// Largest-remainder apportionment of `n` items over `ratios`; the
/// rounding surplus goes to the largest fractional parts, ties broken
/// by partition order.
fn apportion(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let ideal: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    let mut counts = [0usize; 3];
    for (p, &x) in ideal.iter().enumerate() {
        counts[p] = x.floor() as usize;
    }
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| {
        let fa = ideal[a] - ideal[a].floor();
        let fb = ideal[b] - ideal[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for p in order.into_iter().take(n - assigned) {
        counts[p] += 1;
    }
    counts
}

/// Returns a copy of `dataset` in which exactly `round(fraction * n)`
/// labels, chosen deterministically from `seed`, are replaced with a
/// uniformly random *different* class.
pub fn inject_label_noise(
    dataset: &MultiviewDataset,
    fraction: f64,
    seed: u64,
) -> Result<MultiviewDataset, DataError> {
    if !(0.0..=1.0).contains(&fraction) || fraction.is_nan() {
        return Err(DataError::BadNoiseFraction { fraction });
    }
    let n = dataset.n();
    let m = (fraction * n as f64).round() as usize;
    if m == 0 {
        return dataset.with_labels(dataset.labels().to_vec());
    }
    let k = dataset.k();
    if k < 2 {
        return Err(DataError::NoiseNeedsTwoClasses);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut labels = dataset.labels().to_vec();
    for &i in order.iter().take(m) {
        // draw from the k-1 classes other than the current label
        let draw = rng.gen_range(1..k);
        let wrong = if draw >= labels[i] { draw + 1 } else { draw };
        labels[i] = wrong;
    }
    dataset.with_labels(labels)
}

/// Boosting weight distribution over training examples at a given
/// round: strictly positive, sums to 1 (within 1e-9).
#[derive(Debug, Clone)]
pub struct WeightDistribution {
    weights: Vec<f64>,
    round: usize,
}

impl WeightDistribution {
    /// Uniform initial distribution, round index 0.
    pub fn uniform(n: usize) -> Result<Self, DataError> {
        if n == 0 {
            return Err(DataError::EmptyWeights);
        }
        Ok(Self { weights: vec![1.0 / n as f64; n], round: 0 })
    }

    pub fn from_weights(weights: Vec<f64>, round: usize) -> Result<Self, DataError> {
        if weights.is_empty() {
            return Err(DataError::EmptyWeights);
        }
        let mut sum = 0.0;
        for (index, &value) in weights.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(DataError::NonPositiveWeight { index, value });
            }
            sum += value;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(DataError::UnnormalizedWeights { sum });
        }
        Ok(Self { weights, round })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn round(&self) -> usize {
        self.round
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_dataset(labels: Vec<usize>, k: usize) -> MultiviewDataset {
        let n = labels.len();
        let examples: Vec<Vec<f64>> = (0..n).map(|i| vec![i as f64, -(i as f64)]).collect();
        MultiviewDataset::new(examples, vec![vec![0], vec![1]], labels, k).unwrap()
    }

    #[test]
    fn encode_label_examples() {
        assert_eq!(encode_label(1, 4).unwrap().entries(), &[1, 0, 0, 0]);
        assert_eq!(encode_label(3, 3).unwrap().entries(), &[0, 0, 1]);
        let y = encode_label(2, 2).unwrap();
        assert_eq!(y.entries(), &[0, 1]);
        assert_eq!(y.hot_index(), 2);
    }

    #[test]
    fn encode_label_rejects_out_of_range() {
        assert!(encode_label(0, 3).is_err());
        assert!(encode_label(4, 3).is_err());
    }

    #[test]
    fn partition_views_balances_and_covers() {
        let views = partition_views(5, 2, 42).unwrap();
        let mut sizes: Vec<usize> = views.iter().map(|g| g.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        let mut all: Vec<usize> = views.concat();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn partition_views_single_view_keeps_everything() {
        let views = partition_views(4, 1, 0).unwrap();
        assert_eq!(views, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn partition_views_is_deterministic_per_seed() {
        assert_eq!(partition_views(9, 3, 5).unwrap(), partition_views(9, 3, 5).unwrap());
    }

    #[test]
    fn partition_views_rejects_bad_counts() {
        assert!(partition_views(3, 0, 0).is_err());
        assert!(partition_views(3, 4, 0).is_err());
    }

    #[test]
    fn stratified_split_hits_exact_sizes_on_balanced_data() {
        let labels: Vec<usize> = (0..100).map(|i| if i < 50 { 1 } else { 2 }).collect();
        let data = toy_dataset(labels, 2);
        let spec = SplitSpec::new(0.6, 0.2, 0.2, 9).unwrap();
        let split = stratified_split(&data, &spec).unwrap();
        assert_eq!(split.train.n(), 60);
        assert_eq!(split.validation.n(), 20);
        assert_eq!(split.test.n(), 20);
        assert_eq!(split.train.class_counts(), vec![30, 30]);
        assert_eq!(split.validation.class_counts(), vec![10, 10]);
        assert_eq!(split.test.class_counts(), vec![10, 10]);
    }

    #[test]
    fn stratified_split_partitions_every_index_once() {
        let labels: Vec<usize> = (0..53).map(|i| i % 3 + 1).collect();
        let data = toy_dataset(labels, 3);
        let spec = SplitSpec::new(0.6, 0.2, 0.2, 3).unwrap();
        let split = stratified_split(&data, &spec).unwrap();
        let mut seen: Vec<usize> = split
            .train_indices
            .iter()
            .chain(&split.validation_indices)
            .chain(&split.test_indices)
            .copied()
            .collect();
        seen.sort_unstable();
        assert_eq!(seen, (0..53).collect::<Vec<_>>());
    }

    #[test]
    fn stratified_split_is_deterministic() {
        let labels: Vec<usize> = (0..40).map(|i| i % 2 + 1).collect();
        let data = toy_dataset(labels, 2);
        let spec = SplitSpec::new(0.5, 0.25, 0.25, 11).unwrap();
        let a = stratified_split(&data, &spec).unwrap();
        let b = stratified_split(&data, &spec).unwrap();
        assert_eq!(a.train_indices, b.train_indices);
        assert_eq!(a.test_indices, b.test_indices);
    }

    #[test]
    fn stratified_split_all_train_ratio() {
        let labels: Vec<usize> = (0..10).map(|i| i % 2 + 1).collect();
        let data = toy_dataset(labels, 2);
        let spec = SplitSpec::new(1.0, 0.0, 0.0, 0).unwrap();
        let split = stratified_split(&data, &spec).unwrap();
        assert_eq!(split.train.n(), 10);
        assert_eq!(split.validation.n() + split.test.n(), 0);
    }

    #[test]
    fn stratified_split_rejects_empty_class() {
        // k = 3 declared, class 3 absent
        let labels: Vec<usize> = (0..10).map(|i| i % 2 + 1).collect();
        let data = toy_dataset(labels, 3);
        let spec = SplitSpec::new(0.6, 0.2, 0.2, 0).unwrap();
        assert!(matches!(
            stratified_split(&data, &spec),
            Err(DataError::EmptyClass { class: 3 })
        ));
    }

    #[test]
    fn split_spec_rejects_bad_ratios() {
        assert!(SplitSpec::new(0.5, 0.2, 0.2, 0).is_err());
        assert!(SplitSpec::new(0.8, -0.2, 0.4, 0).is_err());
    }

    #[test]
    fn noise_changes_exactly_the_rounded_count() {
        let labels: Vec<usize> = (0..100).map(|i| i % 4 + 1).collect();
        let data = toy_dataset(labels.clone(), 4);
        let noisy = inject_label_noise(&data, 0.2, 77).unwrap();
        let changed = labels
            .iter()
            .zip(noisy.labels())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, 20);
        assert!(noisy.labels().iter().all(|&l| (1..=4).contains(&l)));
    }

    #[test]
    fn full_noise_on_binary_flips_every_label() {
        let labels: Vec<usize> = (0..30).map(|i| i % 2 + 1).collect();
        let data = toy_dataset(labels.clone(), 2);
        let noisy = inject_label_noise(&data, 1.0, 5).unwrap();
        for (original, corrupted) in labels.iter().zip(noisy.labels()) {
            assert_ne!(original, corrupted);
        }
    }

    #[test]
    fn zero_noise_is_identity() {
        let labels: Vec<usize> = (0..10).map(|i| i % 2 + 1).collect();
        let data = toy_dataset(labels.clone(), 2);
        let noisy = inject_label_noise(&data, 0.0, 5).unwrap();
        assert_eq!(noisy.labels(), labels.as_slice());
    }

    #[test]
    fn noise_rejects_bad_fraction() {
        let data = toy_dataset(vec![1, 2], 2);
        assert!(inject_label_noise(&data, 1.5, 0).is_err());
        assert!(inject_label_noise(&data, -0.1, 0).is_err());
    }

    #[test]
    fn uniform_weights_sum_to_one() {
        let w = WeightDistribution::uniform(8).unwrap();
        assert_eq!(w.len(), 8);
        assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert_eq!(w.round(), 0);
    }

    #[test]
    fn weight_validation_rejects_degenerate_vectors() {
        assert!(WeightDistribution::from_weights(vec![], 0).is_err());
        assert!(WeightDistribution::from_weights(vec![0.5, 0.5, 0.0], 0).is_err());
        assert!(WeightDistribution::from_weights(vec![0.7, 0.7], 0).is_err());
    }

    #[test]
    fn dataset_validation_rejects_structural_defects() {
        // ragged row
        assert!(MultiviewDataset::new(
            vec![vec![1.0, 2.0], vec![1.0]],
            vec![vec![0, 1]],
            vec![1, 2],
            2
        )
        .is_err());
        // non-finite cell
        assert!(MultiviewDataset::new(
            vec![vec![1.0, f64::NAN]],
            vec![vec![0, 1]],
            vec![1],
            1
        )
        .is_err());
        // overlapping views
        assert!(MultiviewDataset::new(
            vec![vec![1.0, 2.0]],
            vec![vec![0], vec![0, 1]],
            vec![1],
            1
        )
        .is_err());
        // uncovered column
        assert!(MultiviewDataset::new(vec![vec![1.0, 2.0]], vec![vec![0]], vec![1], 1).is_err());
        // label out of range
        assert!(MultiviewDataset::new(vec![vec![1.0]], vec![vec![0]], vec![3], 2).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn partition_is_exact_and_balanced(d in 1usize..40, v in 1usize..8, seed in any::<u64>()) {
                prop_assume!(v <= d);
                let views = partition_views(d, v, seed).unwrap();
                let mut all: Vec<usize> = views.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..d).collect::<Vec<_>>());
                let sizes: Vec<usize> = views.iter().map(|g| g.len()).collect();
                let min = sizes.iter().min().unwrap();
                let max = sizes.iter().max().unwrap();
                prop_assert!(max - min <= 1);
            }

            #[test]
            fn split_proportions_within_one_example(
                per_class in proptest::collection::vec(3usize..40, 1..4),
                seed in any::<u64>(),
            ) {
                let mut labels = Vec::new();
                for (c, &count) in per_class.iter().enumerate() {
                    labels.extend(std::iter::repeat(c + 1).take(count));
                }
                let k = per_class.len();
                let examples: Vec<Vec<f64>> = (0..labels.len()).map(|i| vec![i as f64]).collect();
                let data = MultiviewDataset::new(examples, vec![vec![0]], labels, k).unwrap();
                let spec = SplitSpec::new(0.6, 0.2, 0.2, seed).unwrap();
                let split = stratified_split(&data, &spec).unwrap();
                for (part, ratio) in [
                    (&split.train, 0.6),
                    (&split.validation, 0.2),
                    (&split.test, 0.2),
                ] {
                    for (c, &total) in per_class.iter().enumerate() {
                        let got = if part.n() == 0 {
                            0
                        } else {
                            part.class_counts()[c]
                        };
                        let ideal = ratio * total as f64;
                        prop_assert!((got as f64 - ideal).abs() < 1.0 + 1e-9);
                    }
                }
            }
        }
    }
}
