use clap::{Args, Parser, Subcommand};
use sama_boost::runner::{self, Overrides, RunConfig, RunError, RunOutcome};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sama-boost", version, about = "Collaborative multiview boosting experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train the configured algorithm and write its report.
    Run(CommonArgs),
    /// Train every algorithm in [compare] on one frozen split.
    Compare(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Override boost.algorithm (sama_v1, sama_v2, ma, samme, boost_early, boost_late).
    #[arg(long)]
    algorithm: Option<String>,
    /// Override boost.rounds.
    #[arg(long)]
    rounds: Option<usize>,
    /// Repartition the features into this many random views.
    #[arg(long)]
    views: Option<usize>,
    /// Master seed for views, split, noise, and boosting.
    #[arg(long)]
    seed: Option<u64>,
    /// Override noise.fraction.
    #[arg(long)]
    noise: Option<f64>,
    /// Override output.path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override output.format (json or csv_bundle).
    #[arg(long)]
    format: Option<String>,
    /// Attach the training-error bound trace.
    #[arg(long)]
    emit_bounds: bool,
    /// Attach the margin distribution and bound curve.
    #[arg(long)]
    emit_margins: bool,
    /// Attach the kappa-error cloud.
    #[arg(long)]
    emit_kappa: bool,
}

impl CommonArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            algorithm: self.algorithm.clone(),
            rounds: self.rounds,
            views: self.views,
            seed: self.seed,
            noise: self.noise,
            out: self.out.clone(),
            format: self.format.clone(),
            emit_bounds: self.emit_bounds,
            emit_margins: self.emit_margins,
            emit_kappa: self.emit_kappa,
        }
    }
}

fn load_config(args: &CommonArgs) -> Result<RunConfig, RunError> {
    let text = std::fs::read_to_string(&args.config).map_err(|source| RunError::Config {
        violations: vec![format!("cannot read {}: {source}", args.config.display())],
    })?;
    let mut config = RunConfig::from_toml(&text)?;
    runner::apply_overrides(&mut config, &args.overrides())?;
    Ok(config)
}

fn summarize(outcome: &RunOutcome) {
    let metrics = &outcome.report.metrics;
    println!(
        "{}: {} rounds, train acc {:.4}, test acc {:.4}",
        outcome.algorithm,
        outcome.report.rounds.len(),
        metrics.train_accuracy,
        metrics.test_accuracy,
    );
    for path in &outcome.written {
        println!("  wrote {}", path.display());
    }
}

fn real_main() -> Result<(), RunError> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run(args) => {
            let config = load_config(args)?;
            let outcome = runner::run(&config)?;
            summarize(&outcome);
        }
        Command::Compare(args) => {
            let config = load_config(args)?;
            for outcome in runner::compare(&config)? {
                summarize(&outcome);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            let mut source = std::error::Error::source(&error);
            while let Some(cause) = source {
                eprintln!("  caused by: {cause}");
                source = cause.source();
            }
            ExitCode::from(error.exit_code())
        }
    }
}
