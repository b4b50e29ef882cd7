//! Release gates for the toolkit, one test per numbered check. Each
//! prints its own `acceptance N (...): PASS` line so a full run reads
//! as a checklist; any failure names the quantity that broke and by
//! how much.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sama_boost::boost::baseline::{fit_baseline, BaselineStrategy};
use sama_boost::boost::{
    evaluate_objective, fit_sama, ma_beta, objective_derivative, optimize_beta,
    transform_hypothesis, update_weights, BoostConfig, SamaEnsemble,
};
use sama_boost::data::{
    encode_label, inject_label_noise, stratified_split, MultiviewDataset, SplitSpec,
    WeightDistribution,
};
use sama_boost::diagnostics::{
    bound_trace, f_score, kappa, kappa_error_cloud, margin_bound, roc_auc, sign_vote_margins,
    theta_grid, training_error_bound,
};
use sama_boost::io::{load_csv_dataset, DatasetManifest, ViewSpec};
use sama_boost::learners::{train_learner, LearnerConfig, LearnerKind};

fn pass(number: usize, what: &str) {
    println!("acceptance {number} ({what}): PASS");
}

/// 50 points on a line, labeled by side with eight contrarians mixed
/// in so no stump is ever perfect and every weighted error stays well
/// inside (0, 0.5).
fn contrarian_line() -> MultiviewDataset {
    let flips = [3usize, 8, 13, 21, 30, 36, 41, 46];
    let mut examples = Vec::new();
    let mut labels = Vec::new();
    for i in 0..50 {
        examples.push(vec![i as f64]);
        let base = if i < 25 { 1 } else { 2 };
        labels.push(if flips.contains(&i) { 3 - base } else { base });
    }
    MultiviewDataset::new(examples, vec![vec![0]], labels, 2).unwrap()
}

/// Two overlapping clusters per view: class centers at -0.5/+0.5 with
/// uniform +-1 jitter, so stumps keep erring round after round.
fn overlapping_two_view(n_per_class: usize, seed: u64) -> MultiviewDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut examples = Vec::new();
    let mut labels = Vec::new();
    for label in [1usize, 2] {
        let center = if label == 1 { -0.5 } else { 0.5 };
        for _ in 0..n_per_class {
            examples.push(vec![
                center + rng.gen_range(-1.0..1.0),
                center + rng.gen_range(-1.0..1.0),
            ]);
            labels.push(label);
        }
    }
    MultiviewDataset::new(examples, vec![vec![0], vec![1]], labels, 2).unwrap()
}

/// Guaranteed-gap clusters: the class sign puts every feature of a
/// view on one side of zero, so a single stump separates each view.
fn separable_two_view(n_per_class: usize, seed: u64) -> MultiviewDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut examples = Vec::new();
    let mut labels = Vec::new();
    for label in [1usize, 2] {
        let sign = if label == 1 { -1.0 } else { 1.0 };
        for _ in 0..n_per_class {
            examples.push(vec![
                sign * (1.0 + rng.gen_range(0.0..1.0)),
                sign * (1.0 + rng.gen_range(0.0..1.0)),
            ]);
            labels.push(label);
        }
    }
    MultiviewDataset::new(examples, vec![vec![0], vec![1]], labels, 2).unwrap()
}

/// With a single view the multiview update collapses to the classical
/// binary AdaBoost recursion: the optimized beta is 0.5 ln((1-e)/e)
/// and the weight trajectory is w * exp(-+beta). This check replays
/// ten rounds against a from-scratch classical implementation sharing
/// only the stump trainer, and demands the trajectories agree to
/// 1e-12 per weight.
#[test]
fn acceptance_1_single_view_run_is_classical_adaboost() {
    let data = contrarian_line();
    let config = BoostConfig { rounds: 10, beta_tolerance: 1e-16, ..Default::default() };
    let ensemble = fit_sama(&data, &config).unwrap();
    assert_eq!(ensemble.v, 1);

    let x: Vec<Vec<f64>> = (0..data.n()).map(|i| data.record(i).to_vec()).collect();
    let mut classical = vec![1.0 / 50.0; 50];
    let mut replayed = classical.clone();
    for (t, round) in ensemble.rounds.iter().enumerate() {
        // classical side: its own stump, error, alpha and update
        let dist = WeightDistribution::from_weights(classical.clone(), t).unwrap();
        let stump = train_learner(&config.learner, &x, data.labels(), &dist, 2).unwrap();
        let predicted: Vec<usize> =
            x.iter().map(|row| stump.predict_label(row).unwrap()).collect();
        let fitted: Vec<usize> = x
            .iter()
            .map(|row| round.learners[0].predict_label(row).unwrap())
            .collect();
        assert_eq!(predicted, fitted, "round {}: the stumps diverged", t + 1);

        let error: f64 = predicted
            .iter()
            .zip(data.labels())
            .zip(&classical)
            .filter(|((p, y), _)| p != y)
            .map(|(_, &w)| w)
            .sum();
        assert!(error > 0.0 && error < 0.5, "round {}: degenerate error {error}", t + 1);
        assert!(
            (round.per_view_error[0] - error).abs() < 1e-12,
            "round {}: internal error {} vs classical {}",
            t + 1,
            round.per_view_error[0],
            error
        );

        let alpha = 0.5 * ((1.0 - error) / error).ln();
        assert!(!round.beta_clamped);
        assert!(
            (round.beta - alpha).abs() < 1e-12,
            "round {}: beta {} vs alpha {}",
            t + 1,
            round.beta,
            alpha
        );

        let mut z = 0.0;
        for (w, (p, y)) in classical.iter_mut().zip(predicted.iter().zip(data.labels())) {
            *w *= if p == y { (-alpha).exp() } else { alpha.exp() };
            z += *w;
        }
        for w in &mut classical {
            *w /= z;
        }

        // multiview side, replayed from the recorded round
        let b: Vec<usize> =
            fitted.iter().zip(data.labels()).map(|(p, y)| usize::from(p != y)).collect();
        replayed = update_weights(&replayed, &b, 1, round.beta).unwrap().0;

        for (i, (a, b)) in classical.iter().zip(&replayed).enumerate() {
            assert!(
                (a - b).abs() < 1e-12,
                "round {}, example {i}: classical {a} vs multiview {b}",
                t + 1
            );
        }
    }
    pass(1, "single-view run is classical AdaBoost");
}

/// The bisection minimizer must land at least as low as a 1e-3-step
/// scan of [0, 10] (to 1e-6), kill the derivative at interior optima,
/// and its analytic derivative must agree with central differences.
#[test]
fn acceptance_2_beta_search_lands_on_the_grid_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for instance in 0..100 {
        let n = rng.gen_range(1..=20);
        let v = rng.gen_range(1..=5usize);
        let mut w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
        let total: f64 = w.iter().sum();
        for wi in &mut w {
            *wi /= total;
        }
        let b: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=v)).collect();

        let search = optimize_beta(&w, &b, v, 10.0, 1e-12).unwrap();
        let grid_min = (0..=10_000)
            .map(|i| evaluate_objective(&w, &b, v, i as f64 * 1e-3).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(
            search.objective <= grid_min + 1e-6,
            "instance {instance}: objective {} above grid minimum {}",
            search.objective,
            grid_min
        );
        if !search.clamped {
            let slope = objective_derivative(&w, &b, v, search.beta).unwrap();
            assert!(
                slope.abs() < 1e-6,
                "instance {instance}: interior derivative {slope} at beta {}",
                search.beta
            );
        }

        for beta in [0.3, 0.9, 1.7, 3.1] {
            let g = objective_derivative(&w, &b, v, beta).unwrap();
            let h = 1e-6;
            let fd = (evaluate_objective(&w, &b, v, beta + h).unwrap()
                - evaluate_objective(&w, &b, v, beta - h).unwrap())
                / (2.0 * h);
            if g.abs() >= 1e-3 {
                assert!(
                    ((fd - g) / g).abs() <= 1e-4,
                    "instance {instance}, beta {beta}: fd {fd} vs analytic {g}"
                );
            } else {
                // a flat objective (every b_i = V/2) has derivative
                // zero everywhere; relative error is meaningless there
                assert!(
                    (fd - g).abs() <= 1e-6,
                    "instance {instance}, beta {beta}: fd {fd} vs analytic {g}"
                );
            }
        }
    }
    pass(2, "beta search lands on the grid optimum");
}

/// On every round of a noisy 20-round run, the optimized beta must
/// score at or below the closed-form beta on the same weight state —
/// and the ratio-to-optimum ordering must hold in at least 95% of
/// rounds. The weight state is reconstructed by replaying the
/// recorded rounds; matching each round's Z validates the replay.
#[test]
fn acceptance_3_optimized_beta_dominates_the_closed_form() {
    let data = overlapping_two_view(60, 77);
    let config = BoostConfig { rounds: 20, beta_tolerance: 1e-14, ..Default::default() };
    let ensemble = fit_sama(&data, &config).unwrap();

    let mut weights = vec![1.0 / data.n() as f64; data.n()];
    let mut ordered = 0;
    for (t, round) in ensemble.rounds.iter().enumerate() {
        let mut b = vec![0usize; data.n()];
        for learner in &round.learners {
            for i in 0..data.n() {
                let row = data.view_record(i, learner.view());
                if learner.predict_label(&row).unwrap() != data.label(i) {
                    b[i] += 1;
                }
            }
        }

        let a_sama = evaluate_objective(&weights, &b, 2, round.beta).unwrap();
        assert!(
            (a_sama - round.z).abs() < 1e-9,
            "round {}: replayed objective {} vs recorded Z {}",
            t + 1,
            a_sama,
            round.z
        );

        let beta_ma = ma_beta(&round.per_view_error).unwrap().clamp(0.0, config.beta_max);
        let a_ma = evaluate_objective(&weights, &b, 2, beta_ma).unwrap();
        assert!(
            a_sama <= a_ma + 1e-12,
            "round {}: optimized objective {} above closed form {}",
            t + 1,
            a_sama,
            a_ma
        );

        let best = optimize_beta(&weights, &b, 2, config.beta_max, 1e-14).unwrap().objective;
        if a_sama / best <= a_ma / best {
            ordered += 1;
        }

        weights = update_weights(&weights, &b, 2, round.beta).unwrap().0;
    }
    assert!(ordered >= 19, "ratio ordering held in only {ordered}/20 rounds");
    pass(3, "optimized beta dominates the closed form");
}

/// Five seeded binary runs: the running bound prod Z_t / exp(sum beta)
/// must sit above the empirical sign-vote training error at every
/// prefix, and a 20-round bound must come in below a 5-round bound.
#[test]
fn acceptance_4_error_bound_dominates_every_prefix() {
    for seed in [11u64, 22, 33, 44, 55] {
        let data = separable_two_view(30, seed);
        let long = fit_sama(&data, &BoostConfig { rounds: 20, ..Default::default() }).unwrap();
        let trace = bound_trace(&long, &data).unwrap();
        assert_eq!(trace.points.len(), 20);
        for point in &trace.points {
            assert!(
                point.training_error <= point.bound,
                "seed {seed}, round {}: error {} above bound {}",
                point.round,
                point.training_error,
                point.bound
            );
        }

        let short = fit_sama(&data, &BoostConfig { rounds: 5, ..Default::default() }).unwrap();
        let short_bound = training_error_bound(
            &short.rounds.iter().map(|r| r.z).collect::<Vec<_>>(),
            &short.rounds.iter().map(|r| r.beta).collect::<Vec<_>>(),
        )
        .unwrap();
        let long_bound = trace.points.last().unwrap().bound;
        assert!(
            long_bound <= short_bound,
            "seed {seed}: bound {long_bound} at T=20 above {short_bound} at T=5"
        );
    }
    pass(4, "error bound dominates every prefix");
}

fn bound_curve_of(ensemble: &SamaEnsemble, theta: f64) -> f64 {
    let zs: Vec<f64> = ensemble.rounds.iter().map(|r| r.z).collect();
    let betas: Vec<f64> = ensemble.rounds.iter().map(|r| r.beta).collect();
    margin_bound(theta, &zs, &betas, ensemble.v).unwrap()
}

/// On the same five runs, the fraction of training examples whose
/// sign-vote margin y F(x) / sum beta falls at or below theta must
/// stay under margin_bound(theta) across the whole theta grid, and
/// the bound at fixed theta must not increase from T=5 to T=25.
#[test]
fn acceptance_5_margin_bound_dominates_the_margin_cdf() {
    for seed in [11u64, 22, 33, 44, 55] {
        let data = separable_two_view(30, seed);
        let run = fit_sama(&data, &BoostConfig { rounds: 20, ..Default::default() }).unwrap();
        let margins = sign_vote_margins(&run, &data).unwrap();
        for theta in theta_grid() {
            let fraction = margins.iter().filter(|&&m| m <= theta).count() as f64
                / margins.len() as f64;
            let bound = bound_curve_of(&run, theta);
            assert!(
                fraction <= bound,
                "seed {seed}, theta {theta}: fraction {fraction} above bound {bound}"
            );
        }

        let short = fit_sama(&data, &BoostConfig { rounds: 5, ..Default::default() }).unwrap();
        let long = fit_sama(&data, &BoostConfig { rounds: 25, ..Default::default() }).unwrap();
        for theta in theta_grid() {
            let early = bound_curve_of(&short, theta);
            let late = bound_curve_of(&long, theta);
            assert!(
                late <= early,
                "seed {seed}, theta {theta}: bound grew from {early} (T=5) to {late} (T=25)"
            );
        }
    }
    pass(5, "margin bound dominates the margin CDF");
}

/// Breast-cancer benchmark, two random views, shallow nets, ten
/// rounds, three seeds: the collaborative ensemble must reach 0.88
/// test accuracy on every seed and beat late fusion on at least two.
#[test]
fn acceptance_6_wdbc_sama_v2_beats_late_fusion() {
    let mut wins = 0;
    for seed in [0u64, 3, 5] {
        let manifest = DatasetManifest::new(
            "data/breast_cancer.csv",
            "diagnosis",
            ViewSpec::Random { count: 2, seed },
        );
        let loaded = load_csv_dataset(&manifest).unwrap();
        let spec = SplitSpec::new(0.6, 0.2, 0.2, seed).unwrap();
        let split = stratified_split(&loaded.dataset, &spec).unwrap();
        let config = BoostConfig {
            rounds: 10,
            learner: LearnerConfig {
                kind: LearnerKind::ShallowNet,
                hidden_units: 8,
                epochs: 600,
                learning_rate: 0.5,
                regularization: 0.0,
                seed: 0,
            },
            seed,
            ..Default::default()
        };
        let sama = fit_sama(&split.train, &config).unwrap();
        let late = fit_baseline(&split.train, &config, BaselineStrategy::BoostLate).unwrap();
        let sama_accuracy = 1.0 - sama.error_on(&split.test).unwrap();
        let late_accuracy = 1.0 - late.error_on(&split.test).unwrap();
        assert!(
            sama_accuracy >= 0.88,
            "seed {seed}: test accuracy {sama_accuracy} below 0.88"
        );
        if sama_accuracy >= late_accuracy {
            wins += 1;
        }
    }
    assert!(wins >= 2, "beat late fusion on only {wins}/3 seeds");
    pass(6, "breast-cancer accuracy and late-fusion comparison");
}

/// Flipping 20% of the training labels must push the kappa-error
/// centroid strictly left (lower member agreement) and strictly up
/// (higher member test error) relative to the clean run; T=15 rounds
/// give exactly 105 pairwise points either way.
#[test]
fn acceptance_7_label_noise_degrades_the_kappa_error_cloud() {
    let seed = 13u64;
    let manifest = DatasetManifest::new(
        "data/clusters_binary.csv",
        "label",
        ViewSpec::Random { count: 2, seed },
    );
    let loaded = load_csv_dataset(&manifest).unwrap();
    let spec = SplitSpec::new(0.6, 0.2, 0.2, seed).unwrap();
    let split = stratified_split(&loaded.dataset, &spec).unwrap();
    let config = BoostConfig { rounds: 15, seed, ..Default::default() };

    let clean = fit_sama(&split.train, &config).unwrap();
    let noisy_train = inject_label_noise(&split.train, 0.2, seed).unwrap();
    let noisy = fit_sama(&noisy_train, &config).unwrap();

    let clean_cloud = kappa_error_cloud(&clean, &split.test).unwrap();
    let noisy_cloud = kappa_error_cloud(&noisy, &split.test).unwrap();
    assert_eq!(clean_cloud.points.len(), 105);
    assert_eq!(noisy_cloud.points.len(), 105);
    assert!(
        noisy_cloud.centroid_kappa < clean_cloud.centroid_kappa,
        "noisy centroid kappa {} not below clean {}",
        noisy_cloud.centroid_kappa,
        clean_cloud.centroid_kappa
    );
    assert!(
        noisy_cloud.centroid_error > clean_cloud.centroid_error,
        "noisy centroid error {} not above clean {}",
        noisy_cloud.centroid_error,
        clean_cloud.centroid_error
    );
    pass(7, "label noise degrades the kappa-error cloud");
}

/// Hand-checkable diagnostic values, all demanded to 1e-12: the two
/// kappa coincidence matrices, the four-pair AUC, the f-score cases,
/// and the recoding of correct/incorrect hypotheses for every class
/// pair up to K=5.
#[test]
fn acceptance_8_diagnostic_oracles_are_exact() {
    let tol = 1e-12;

    let half = kappa(&[1, 1, 2, 2], &[1, 2, 2, 2], 2).unwrap();
    assert!((half - 0.5).abs() < tol, "kappa {half} vs 0.5");
    let chance = kappa(&[1, 1, 2, 2], &[1, 1, 1, 1], 2).unwrap();
    assert!(chance.abs() < tol, "kappa {chance} vs 0");

    let auc = roc_auc(&[0.9, 0.8, 0.4, 0.3], &[true, false, true, false]).unwrap();
    assert!((auc - 0.75).abs() < tol, "auc {auc} vs 3/4");

    assert!((f_score(0.5, 0.5).unwrap() - 0.5).abs() < tol);
    assert!((f_score(0.8, 0.6).unwrap() - 0.96 / 1.4).abs() < tol);
    assert!(f_score(0.0, 0.7).unwrap().abs() < tol);
    assert!(f_score(0.0, 0.0).unwrap().abs() < tol);

    for k in 2..=5usize {
        for truth in 1..=k {
            for predicted in 1..=k {
                let recoded = transform_hypothesis(
                    &encode_label(truth, k).unwrap(),
                    &encode_label(predicted, k).unwrap(),
                )
                .unwrap();
                let mut expected = vec![0i8; k];
                if truth == predicted {
                    expected[predicted - 1] = 1;
                } else {
                    expected[truth - 1] = -1;
                    expected[predicted - 1] = -1;
                }
                assert_eq!(
                    recoded, expected,
                    "K={k}, truth {truth}, predicted {predicted}"
                );
            }
        }
    }
    pass(8, "diagnostic oracles are exact");
}

fn cli(args: &[&str]) {
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_sama-boost"))
        .args(args)
        .stdout(std::process::Stdio::null())
        .status()
        .expect("binary should spawn");
    assert!(status.success(), "cli {args:?} exited with {status}");
}

/// Every byte of a report must be reproducible: the same config run
/// twice gives identical JSON and an identical CSV bundle, down to
/// float formatting.
#[test]
fn acceptance_9_cli_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(
        &config,
        r#"
[dataset]
path = "data/clusters_binary.csv"
label_column = "label"

[dataset.views.random]
count = 2
seed = 9

[split]
ratios = [0.6, 0.2, 0.2]
seed = 9

[noise]
fraction = 0.1
seed = 9

[boost]
algorithm = "sama_v2"
rounds = 5
seed = 9

[diagnostics]
bounds = true
margins = true
kappa = true
"#,
    )
    .unwrap();
    let config = config.to_str().unwrap();

    let json = dir.path().join("report.json");
    let json_arg = json.to_str().unwrap();
    cli(&["run", "--config", config, "--out", json_arg]);
    let first = std::fs::read(&json).unwrap();
    cli(&["run", "--config", config, "--out", json_arg]);
    let second = std::fs::read(&json).unwrap();
    assert!(!first.is_empty());
    assert_eq!(first, second, "JSON report changed between identical runs");

    let bundle = dir.path().join("bundle");
    let bundle_arg = bundle.to_str().unwrap();
    let read_bundle = |path: &std::path::Path| {
        let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(path)
            .unwrap()
            .map(|entry| {
                let entry = entry.unwrap();
                (
                    entry.file_name().to_string_lossy().into_owned(),
                    std::fs::read(entry.path()).unwrap(),
                )
            })
            .collect();
        files.sort();
        files
    };
    cli(&["run", "--config", config, "--format", "csv_bundle", "--out", bundle_arg]);
    let first = read_bundle(&bundle);
    cli(&["run", "--config", config, "--format", "csv_bundle", "--out", bundle_arg]);
    let second = read_bundle(&bundle);
    assert!(!first.is_empty());
    assert_eq!(first, second, "CSV bundle changed between identical runs");

    pass(9, "CLI reruns are byte-identical");
}
