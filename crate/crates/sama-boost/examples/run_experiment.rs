//! Drives a whole experiment from a declarative TOML config — the
//! same path the `sama-boost` binary takes — and pokes at the report
//! it writes. Reports are byte-reproducible: rerunning an identical
//! config produces an identical file.
//!
//! ```text
//! cargo run --example run_experiment
//! ```

use sama_boost::runner::{self, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::temp_dir().join("sama-boost-example");
    std::fs::create_dir_all(&out_dir)?;
    let out = out_dir.join("report.json");

    let config = RunConfig::from_toml(&format!(
        r#"
[dataset]
path = "{data}"
label_column = "label"

[dataset.views.random]
count = 2
seed = 3

[split]
ratios = [0.6, 0.2, 0.2]
seed = 3

[boost]
algorithm = "sama_v2"
rounds = 10
seed = 3

[diagnostics]
bounds = true
margins = true
kappa = true

[output]
path = "{out}"
"#,
        data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/clusters_binary.csv"),
        out = out.display(),
    ))?;

    let outcome = runner::run(&config)?;
    let metrics = &outcome.report.metrics;
    println!("algorithm: {}", outcome.algorithm);
    println!("train accuracy: {:.4}", metrics.train_accuracy);
    println!("test accuracy:  {:.4}", metrics.test_accuracy);
    if let (Some(f), Some(auc)) = (metrics.f_score, metrics.auc) {
        println!("f-score {f:.4}, AUC {auc:.4}");
    }

    let split = &outcome.report.split;
    println!(
        "split {} / {} / {} (train digest {:016x})",
        split.train, split.validation, split.test, split.train_digest
    );

    if let Some(bounds) = &outcome.report.bounds {
        let last = bounds.points.last().unwrap();
        println!(
            "bound after {} rounds: {:.3e} (training error {:.4})",
            last.round, last.bound, last.training_error
        );
    }
    if let Some(kappa) = &outcome.report.kappa {
        println!(
            "kappa-error centroid: ({:+.4}, {:.4}) over {} pairs",
            kappa.centroid_kappa,
            kappa.centroid_error,
            kappa.points.len()
        );
    }

    for path in &outcome.written {
        println!("wrote {}", path.display());
    }

    // rerun to demonstrate the byte-level determinism
    let before = std::fs::read(&out)?;
    runner::run(&config)?;
    let after = std::fs::read(&out)?;
    println!(
        "rerun produced {} bytes, identical: {}",
        after.len(),
        before == after
    );
    Ok(())
}
