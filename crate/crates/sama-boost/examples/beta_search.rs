//! The round objective from the inside: evaluates
//! `A(beta) = sum_i W_i exp(-beta (1 - 2 b_i / V))` on a small
//! hand-made weight state, minimizes it, and compares the result with
//! the closed form the predecessor algorithm would use.
//!
//! ```text
//! cargo run --example beta_search
//! ```

use sama_boost::boost::{
    evaluate_objective, exp_loss, ma_beta, objective_derivative, optimize_beta,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Six examples under three views: one every view gets right, one
    // every view gets wrong, and a spread of mixed verdicts.
    let weights = [0.25, 0.10, 0.15, 0.20, 0.05, 0.25];
    let b = [0usize, 3, 1, 2, 1, 0];
    let v = 3;

    println!("per-example exponential loss at the vote split (beta = 1):");
    for (i, &bi) in b.iter().enumerate() {
        println!(
            "  example {i}: {bi}/{v} views wrong, exp(2b/V - 1) = {:.4}",
            exp_loss(bi, v)?
        );
    }

    println!("\n  beta      A(beta)    dA/dbeta");
    for step in 0..=8 {
        let beta = step as f64 * 0.25;
        println!(
            "  {beta:.2}    {:>8.5}    {:>+8.5}",
            evaluate_objective(&weights, &b, v, beta)?,
            objective_derivative(&weights, &b, v, beta)?,
        );
    }

    let search = optimize_beta(&weights, &b, v, 10.0, 1e-12)?;
    println!(
        "\nbisection: beta* = {:.6}, A(beta*) = {:.6}, clamped = {}",
        search.beta, search.objective, search.clamped
    );
    println!(
        "derivative at beta*: {:+.2e}",
        objective_derivative(&weights, &b, v, search.beta)?
    );

    // The predecessor's closed form works off the product of per-view
    // errors. It lands close on easy states but never below A(beta*).
    let per_view_error = [0.30, 0.35, 0.40];
    let closed = ma_beta(&per_view_error)?;
    println!(
        "\nclosed form from per-view errors {per_view_error:?}: beta = {closed:.6}, A = {:.6}",
        evaluate_objective(&weights, &b, v, closed)?
    );

    // With one view the optimum is the classical AdaBoost coefficient.
    let single_b: Vec<usize> = b.iter().map(|&bi| usize::from(bi > 1)).collect();
    let error: f64 =
        weights.iter().zip(&single_b).filter(|(_, &bi)| bi == 1).map(|(&w, _)| w).sum();
    let classical = 0.5 * ((1.0 - error) / error).ln();
    let single = optimize_beta(&weights, &single_b, 1, 10.0, 1e-14)?;
    println!(
        "\nV = 1 check: beta* = {:.12} vs 0.5 ln((1-e)/e) = {:.12}",
        single.beta, classical
    );
    Ok(())
}
