//! Fits every algorithm on one frozen split of the three-class
//! clusters table and prints a side-by-side accuracy table — the
//! library-level equivalent of `sama-boost compare`.
//!
//! ```text
//! cargo run --example compare_algorithms
//! ```

use sama_boost::boost::baseline::{fit_baseline, BaselineStrategy};
use sama_boost::boost::{fit_sama, BetaRule, BoostConfig, Combiner};
use sama_boost::data::{stratified_split, MultiviewDataset, SplitSpec};
use sama_boost::io::{load_csv_dataset, DatasetManifest, ViewSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let manifest = DatasetManifest::new(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/clusters_three.csv"),
        "label",
        ViewSpec::Random { count: 3, seed: 2 },
    );
    let loaded = load_csv_dataset(&manifest)?;
    let split = stratified_split(&loaded.dataset, &SplitSpec::new(0.6, 0.2, 0.2, 2)?)?;
    println!(
        "{} examples, {} classes, {} views; {} train / {} test\n",
        loaded.dataset.n(),
        loaded.dataset.k(),
        loaded.dataset.v(),
        split.train.n(),
        split.test.n(),
    );

    let base = BoostConfig { rounds: 15, seed: 2, ..Default::default() };
    let mut table: Vec<(&str, f64, f64)> = Vec::new();

    for (name, combiner, rule) in [
        ("sama_v1", Combiner::V1, BetaRule::Optimized),
        ("sama_v2", Combiner::V2, BetaRule::Optimized),
        ("ma", Combiner::V2, BetaRule::MaClosedForm),
    ] {
        let config = BoostConfig { combiner, beta_rule: rule, ..base.clone() };
        let ensemble = fit_sama(&split.train, &config)?;
        table.push((
            name,
            accuracy_of(|r| ensemble.predict(r).map(|p| p.label), &split.train)?,
            accuracy_of(|r| ensemble.predict(r).map(|p| p.label), &split.test)?,
        ));
    }
    for (name, strategy) in [
        ("samme", BaselineStrategy::Samme),
        ("boost_early", BaselineStrategy::BoostEarly),
        ("boost_late", BaselineStrategy::BoostLate),
    ] {
        let model = fit_baseline(&split.train, &base, strategy)?;
        table.push((
            name,
            accuracy_of(|r| model.predict(r).map(|p| p.label), &split.train)?,
            accuracy_of(|r| model.predict(r).map(|p| p.label), &split.test)?,
        ));
    }

    println!("algorithm      train acc   test acc");
    for (name, train, test) in table {
        println!("{name:<12}      {train:.4}     {test:.4}");
    }
    Ok(())
}

fn accuracy_of<E>(
    mut predict: impl FnMut(&[f64]) -> Result<usize, E>,
    dataset: &MultiviewDataset,
) -> Result<f64, E> {
    let mut correct = 0;
    for i in 0..dataset.n() {
        if predict(dataset.record(i))? == dataset.label(i) {
            correct += 1;
        }
    }
    Ok(correct as f64 / dataset.n() as f64)
}
