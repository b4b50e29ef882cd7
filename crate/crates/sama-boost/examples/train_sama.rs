//! Trains the collaborative multiview ensemble on the bundled
//! breast-cancer table and walks through what each round produced.
//!
//! ```text
//! cargo run --example train_sama
//! ```

use sama_boost::boost::{fit_sama, BoostConfig};
use sama_boost::data::{stratified_split, SplitSpec};
use sama_boost::io::{load_csv_dataset, DatasetManifest, ViewSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = DatasetManifest::new(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/breast_cancer.csv"),
        "diagnosis",
        ViewSpec::Random { count: 2, seed: 0 },
    );
    let loaded = load_csv_dataset(&manifest)?;
    println!(
        "loaded {} examples, {} features, {} classes ({})",
        loaded.dataset.n(),
        loaded.dataset.d(),
        loaded.dataset.k(),
        loaded.label_names.join(" / "),
    );
    for (v, columns) in loaded.dataset.views().iter().enumerate() {
        println!("view {v}: {} feature columns", columns.len());
    }

    let split = stratified_split(&loaded.dataset, &SplitSpec::new(0.6, 0.2, 0.2, 0)?)?;
    println!(
        "split: {} train / {} validation / {} test\n",
        split.train.n(),
        split.validation.n(),
        split.test.n(),
    );

    // Decision stumps per view, twelve rounds, numeric beta.
    let config = BoostConfig { rounds: 12, ..Default::default() };
    let ensemble = fit_sama(&split.train, &config)?;

    println!("round     beta        Z     view errors          view fitness");
    for (t, round) in ensemble.rounds.iter().enumerate() {
        let errors: Vec<String> =
            round.per_view_error.iter().map(|e| format!("{e:.3}")).collect();
        let fitness: Vec<String> = round.fitness.iter().map(|f| format!("{f:+.3}")).collect();
        println!(
            "{:>5}  {:>7.4}  {:>7.4}  [{}]        [{}]",
            t + 1,
            round.beta,
            round.z,
            errors.join(", "),
            fitness.join(", "),
        );
    }

    let train_accuracy = 1.0 - ensemble.error_on(&split.train)?;
    let test_accuracy = 1.0 - ensemble.error_on(&split.test)?;
    println!("\ntrain accuracy {train_accuracy:.4}, test accuracy {test_accuracy:.4}");

    // The ensemble also explains individual decisions: the score
    // vector is the fitness-weighted confidence mass per class, read
    // relative to the net fitness mass — realistic learners carry
    // negative fitness, so the least-penalized class wins the vote.
    let record = split.test.record(0);
    let prediction = ensemble.predict(record)?;
    println!(
        "first test record: predicted {} (truth {}), scores {:?}",
        loaded.label_names[prediction.label - 1],
        loaded.label_names[split.test.label(0) - 1],
        prediction.scores.iter().map(|s| (s * 1e3).round() / 1e3).collect::<Vec<_>>(),
    );
    Ok(())
}
