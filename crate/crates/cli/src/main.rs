use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nfel_core::harness::{self, ExperimentConfig, Mode};

#[derive(Parser)]
#[command(
    name = "nfel",
    version,
    about = "Neuro-fuzzy inverse modeling and feedback-error-learning control"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Overrides the configuration seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; defaults to `output.dir` from the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Acquire train/test data from the plant under proportional control.
    GenData(Common),
    /// Fit the inverse model: cluster initialization then gradient tuning.
    Train {
        #[command(flatten)]
        common: Common,
        /// Training data; defaults to `<out>/train.csv`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Evaluate a model on held-out data.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Defaults to `<out>/model.json`.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Defaults to `<out>/test.csv`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Run a closed-loop square-wave experiment.
    Control {
        #[command(flatten)]
        common: Common,
        /// Inverse model; required for every mode except `p-only`.
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: CliMode,
    },
    /// Drive the plant open loop with a sinusoidal speed reference.
    OpenLoop(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    POnly,
    Comp,
    CompLearnSlow,
    CompLearnFast,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Self {
        match m {
            CliMode::POnly => Mode::POnly,
            CliMode::Comp => Mode::Comp,
            CliMode::CompLearnSlow => Mode::CompLearnSlow,
            CliMode::CompLearnFast => Mode::CompLearnFast,
        }
    }
}

impl Common {
    fn load(&self) -> nfel_core::Result<(ExperimentConfig, PathBuf)> {
        let mut cfg = ExperimentConfig::load(&self.config)?;
        if let Some(seed) = self.seed {
            cfg = cfg.with_seed(seed);
        }
        let out = self.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
        Ok((cfg, out))
    }
}

fn or_default(path: &Option<PathBuf>, out: &Path, name: &str) -> PathBuf {
    path.clone().unwrap_or_else(|| out.join(name))
}

fn run(cli: Cli) -> nfel_core::Result<()> {
    match cli.command {
        Command::GenData(common) => {
            let (cfg, out) = common.load()?;
            let r = harness::run_gen_data(&cfg, &out)?;
            println!(
                "wrote {} ({} rows) and {} ({} rows)",
                r.train_path.display(),
                r.train_rows,
                r.test_path.display(),
                r.test_rows
            );
        }
        Command::Train { common, data } => {
            let (cfg, out) = common.load()?;
            let data = or_default(&data, &out, harness::TRAIN_CSV);
            let r = harness::run_train(&cfg, &data, &out)?;
            println!(
                "trained {} rules on {} samples: cluster rms {:.3}, final rms {:.3}, {} unsupported rules",
                r.summary.rules,
                r.summary.samples,
                r.summary.cluster_rms,
                r.summary.final_rms,
                r.summary.unsupported_rules
            );
        }
        Command::Eval {
            common,
            model,
            data,
        } => {
            let (cfg, out) = common.load()?;
            let model = or_default(&model, &out, harness::MODEL_JSON);
            let data = or_default(&data, &out, harness::TEST_CSV);
            let r = harness::run_eval(&cfg, &model, &data, &out)?;
            println!(
                "rms {:.3} ({:.2}% of span), peak {:.3} ({:.2}%), {} unsupported samples",
                r.rms,
                r.rms_percent(),
                r.max_abs,
                r.percent_of_range,
                r.unsupported
            );
        }
        Command::Control {
            common,
            model,
            mode,
        } => {
            let (cfg, out) = common.load()?;
            let mode = Mode::from(mode);
            let r = harness::run_control_experiment(&cfg, model.as_deref(), mode, &out)?;
            println!(
                "wrote {} and {}",
                r.trace_path.display(),
                r.model_path.display()
            );
            for h in &r.summary.half_periods {
                println!(
                    "  half {:>2} [{:>6.2}s, {:>6.2}s) level {:.3}: settle error {:+.5} m",
                    h.index, h.start_t, h.end_t, h.level, h.settle_error
                );
            }
        }
        Command::OpenLoop(common) => {
            let (cfg, out) = common.load()?;
            let rows = harness::run_open_loop_experiment(&cfg, &out)?;
            let last = rows.last().map_or(0.0, |r| r.y);
            println!(
                "wrote {} ({} rows), final position {:.4} m",
                out.join(harness::OPEN_LOOP_CSV).display(),
                rows.len(),
                last
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nfel: error: {e}");
            ExitCode::FAILURE
        }
    }
}
