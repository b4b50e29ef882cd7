//! Margin analysis in two acts. First the empirical story: longer
//! runs push the convex-vote margin distribution to the right even
//! after the training error stops moving. Then the theoretical one:
//! on a problem the views separate cleanly, the margin bound
//! certifies the absence of small margins, with a certificate that
//! sharpens as rounds accumulate.
//!
//! ```text
//! cargo run --example margin_analysis
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sama_boost::boost::{fit_sama, BoostConfig};
use sama_boost::data::{stratified_split, MultiviewDataset, SplitSpec};
use sama_boost::diagnostics::{margin_distribution, sign_vote_margins, theta_grid};
use sama_boost::io::{load_csv_dataset, DatasetManifest, ViewSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // --- Act one: margin mass keeps moving right with T -------------
    let manifest = DatasetManifest::new(
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/clusters_binary.csv"),
        "label",
        ViewSpec::Random { count: 2, seed: 5 },
    );
    let loaded = load_csv_dataset(&manifest)?;
    let split = stratified_split(&loaded.dataset, &SplitSpec::new(0.8, 0.0, 0.2, 5)?)?;

    let psi_grid: Vec<f64> = (0..=8).map(|i| -1.0 + i as f64 * 0.25).collect();
    println!("convex-vote margin CDF on the training set:");
    println!("   psi     T = 5    T = 25");
    let mut cdfs = Vec::new();
    for rounds in [5usize, 25] {
        let config = BoostConfig { rounds, seed: 5, ..Default::default() };
        let ensemble = fit_sama(&split.train, &config)?;
        let report = margin_distribution(&ensemble, &split.train, &psi_grid)?;
        let mean = report.margins.iter().sum::<f64>() / report.margins.len() as f64;
        let min = report.margins.iter().cloned().fold(f64::INFINITY, f64::min);
        cdfs.push((report.cdf, min, mean));
    }
    for (row, (psi, _)) in cdfs[0].0.iter().enumerate() {
        println!(
            "  {psi:>5.2}    {:.4}    {:.4}",
            cdfs[0].0[row].1, cdfs[1].0[row].1
        );
    }
    println!(
        "margins: min {:+.4} -> {:+.4}, mean {:+.4} -> {:+.4}\n",
        cdfs[0].1, cdfs[1].1, cdfs[0].2, cdfs[1].2
    );

    // --- Act two: the bound, in the regime its derivation targets ---
    let data = separable_two_view(40, 11);
    println!("separable two-view problem, margin bound over the theta grid:");
    println!("  theta    fraction <= theta    bound T = 5    bound T = 25");
    let short = fit_sama(&data, &BoostConfig { rounds: 5, ..Default::default() })?;
    let long = fit_sama(&data, &BoostConfig { rounds: 25, ..Default::default() })?;
    let margins = sign_vote_margins(&long, &data)?;
    let curve = |e: &sama_boost::boost::SamaEnsemble| {
        let report = margin_distribution(e, &data, &theta_grid());
        report.map(|r| r.bound_curve)
    };
    let short_curve = curve(&short)?;
    let long_curve = curve(&long)?;
    for ((theta, short_bound), (_, long_bound)) in short_curve.iter().zip(&long_curve) {
        let fraction =
            margins.iter().filter(|&&m| m <= *theta).count() as f64 / margins.len() as f64;
        println!(
            "  {theta:>5.2}         {fraction:.4}         {short_bound:.3e}      {long_bound:.3e}"
        );
    }
    let min_margin = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    println!(
        "\nEvery sign-vote margin is {min_margin:.2} here — no example sits at or\n\
         below any theta in the grid, and the certificate of that fact\n\
         tightens by orders of magnitude between T = 5 and T = 25."
    );
    Ok(())
}

/// The class sign pushes every feature of both views to one side of
/// zero, so each view is separable by a single stump.
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
