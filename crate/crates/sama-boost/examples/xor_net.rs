//! The two weak learners head to head on XOR — the classic case a
//! decision stump cannot represent but one hidden layer can.
//!
//! ```text
//! cargo run --example xor_net
//! ```

use sama_boost::data::WeightDistribution;
use sama_boost::learners::{train_learner, LearnerConfig, LearnerKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = vec![vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
    let labels = vec![1usize, 2, 2, 1];
    let weights = WeightDistribution::uniform(4)?;

    let stump = train_learner(
        &LearnerConfig { kind: LearnerKind::Stump, ..Default::default() },
        &x,
        &labels,
        &weights,
        2,
    )?;
    let net = train_learner(
        &LearnerConfig {
            kind: LearnerKind::ShallowNet,
            hidden_units: 5,
            epochs: 2000,
            seed: 1,
            ..Default::default()
        },
        &x,
        &labels,
        &weights,
        2,
    )?;

    println!("record        truth    stump    net     net confidence");
    let mut stump_correct = 0;
    let mut net_correct = 0;
    for (record, &label) in x.iter().zip(&labels) {
        let s = stump.predict_label(record)?;
        let n = net.predict_label(record)?;
        let conf = net.predict_confidence(record)?;
        stump_correct += usize::from(s == label);
        net_correct += usize::from(n == label);
        println!(
            "({:.0}, {:.0})          {label}        {s}      {n}     [{:.3}, {:.3}]",
            record[0], record[1], conf.entries()[0], conf.entries()[1],
        );
    }
    println!("\nstump: {stump_correct}/4 correct — no axis-aligned threshold separates XOR");
    println!("net:   {net_correct}/4 correct");

    if let Some(history) = net.training_loss() {
        println!(
            "\nnet training loss: {:.4} at epoch 0, {:.6} after {} epochs",
            history[0],
            history.last().unwrap(),
            history.len() - 1,
        );
    }
    Ok(())
}
