//! The end-to-end pipeline: data acquisition on the simulated actuator,
//! inverse-model training and evaluation, control and open-loop runs.
//!
//! Every `run_*` function writes its outputs into a directory and returns
//! what it wrote. The in-memory counterparts are usable without a filesystem.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::control::{p_controller, run_control, ControlRun, ControlStats};
use crate::error::{Error, Result};
use crate::fuzzy::RuleBase;
use crate::learning::{cluster_init, evaluate, train_epochs, EpochRecord, ErrorReport};
use crate::plant::{run_open_loop, OpenLoopRow, Plant};
use crate::signal::{sample_count, sine_samples, Reference};

use super::analysis::{half_period_stats, HalfPeriodStat};
use super::config::{ExperimentConfig, Mode, Split};
use super::io::{
    control_csv, eval_csv, inverse_dataset, load_model, model_json, open_loop_csv, read_dataset,
    save_json, write_dataset, write_text, DataRow,
};

pub const TRAIN_CSV: &str = "train.csv";
pub const TEST_CSV: &str = "test.csv";
pub const MODEL_JSON: &str = "model.json";
pub const TRAIN_REPORT_JSON: &str = "train_report.json";
pub const EVAL_CSV: &str = "eval.csv";
pub const EVAL_SUMMARY_JSON: &str = "eval_summary.json";
pub const OPEN_LOOP_CSV: &str = "open_loop.csv";

pub fn control_csv_name(mode: Mode) -> String {
    format!("control-{mode}.csv")
}

pub fn control_model_name(mode: Mode) -> String {
    format!("model-{mode}.json")
}

pub fn control_summary_name(mode: Mode) -> String {
    format!("control-{mode}-summary.json")
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GeneratedData {
    pub train: Vec<DataRow>,
    pub test: Vec<DataRow>,
}

/// Runs the plant under proportional control through every excitation
/// segment in order, without resetting between segments, and files each
/// segment's samples under its split.
pub fn generate_data(cfg: &ExperimentConfig) -> Result<GeneratedData> {
    cfg.validate()?;
    let params = cfg.plant_params();
    let ctl = cfg.controller_for(Mode::POnly);
    let dt = params.dt;
    let mut plant = Plant::new(params)?;
    let mut out = GeneratedData::default();
    let mut tick = 0usize;

    for seg in &cfg.excitation.segments {
        let n = sample_count(seg.duration, dt);
        let reference = sine_samples(
            cfg.excitation.offset,
            0.5 * seg.amplitude,
            seg.frequency,
            n,
            dt,
        );
        let sink = match seg.split {
            Split::Train => &mut out.train,
            Split::Test => &mut out.test,
        };
        for y_ref in reference {
            let m = plant.measure();
            sink.push(DataRow {
                t: tick as f64 * dt,
                y_ref,
                omega: plant.state().omega,
                v: m.v,
                y: m.y,
            });
            plant.advance(p_controller(&ctl, y_ref, m.y));
            tick += 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenDataOutput {
    pub train_path: PathBuf,
    pub test_path: PathBuf,
    pub train_rows: usize,
    pub test_rows: usize,
}

pub fn run_gen_data(cfg: &ExperimentConfig, out_dir: &Path) -> Result<GenDataOutput> {
    let data = generate_data(cfg)?;
    let dt = cfg.plant.dt;
    let train_path = out_dir.join(TRAIN_CSV);
    let test_path = out_dir.join(TEST_CSV);
    write_dataset(&train_path, &data.train, dt)?;
    write_dataset(&test_path, &data.test, dt)?;
    Ok(GenDataOutput {
        train_path,
        test_path,
        train_rows: data.train.len(),
        test_rows: data.test.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainSummary {
    pub samples: usize,
    pub rules: usize,
    /// Rules that saw (almost) no training data and were left at zero.
    pub unsupported_rules: usize,
    pub alpha: f64,
    pub epochs: usize,
    /// Training-set RMS of the cluster-initialized model, rpm.
    pub cluster_rms: f64,
    pub final_rms: f64,
    pub history: Vec<EpochRecord>,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub cluster_model: RuleBase,
    pub model: RuleBase,
    pub summary: TrainSummary,
}

/// Cluster initialization followed by gradient tuning of the inverse model
/// `omega = h(y_ref, y, v)`.
pub fn train_inverse_model(cfg: &ExperimentConfig, rows: &[DataRow]) -> Result<TrainOutcome> {
    cfg.check_inverse_inputs()?;
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let data = inverse_dataset(rows, Some(cfg.plant.dt));
    let structure = cfg.structure()?;
    let cluster_model = cluster_init(&structure, &data)?;
    let span = cfg.model.output.span();
    let cluster_rms = evaluate(&cluster_model, &data, span).rms;

    let (model, history) = if cfg.train.epochs == 0 {
        (cluster_model.clone(), Vec::new())
    } else {
        let (m, report) = train_epochs(&cluster_model, &data, &cfg.train_config())?;
        (m, report.history)
    };
    let summary = TrainSummary {
        samples: data.len(),
        rules: model.len(),
        unsupported_rules: model.support_flags().iter().filter(|s| !**s).count(),
        alpha: cfg.train.alpha,
        epochs: cfg.train.epochs,
        cluster_rms,
        final_rms: history.last().map_or(cluster_rms, |r| r.rms),
        history,
    };
    Ok(TrainOutcome {
        cluster_model,
        model,
        summary,
    })
}

pub fn run_train(cfg: &ExperimentConfig, data_path: &Path, out_dir: &Path) -> Result<TrainOutcome> {
    let (rows, _) = read_dataset(data_path)?;
    let outcome = train_inverse_model(cfg, &rows)?;
    write_text(&out_dir.join(MODEL_JSON), &model_json(&outcome.model))?;
    save_json(&out_dir.join(TRAIN_REPORT_JSON), &outcome.summary)?;
    Ok(outcome)
}

fn check_model_inputs(model: &RuleBase) -> Result<()> {
    let names: Vec<&str> = model.antecedents().iter().map(|p| p.name()).collect();
    if names != crate::control::CONDITION_ORDER {
        return Err(Error::ModelMismatch(format!(
            "expected inputs {:?}, model has {names:?}",
            crate::control::CONDITION_ORDER
        )));
    }
    Ok(())
}

pub fn evaluate_inverse_model(
    cfg: &ExperimentConfig,
    model: &RuleBase,
    rows: &[DataRow],
) -> Result<ErrorReport> {
    check_model_inputs(model)?;
    let data = inverse_dataset(rows, Some(cfg.plant.dt));
    Ok(evaluate(model, &data, cfg.model.output.span()))
}

pub fn run_eval(
    cfg: &ExperimentConfig,
    model_path: &Path,
    data_path: &Path,
    out_dir: &Path,
) -> Result<ErrorReport> {
    let model = load_model(model_path)?;
    let (rows, _) = read_dataset(data_path)?;
    let report = evaluate_inverse_model(cfg, &model, &rows)?;
    let data = inverse_dataset(&rows, None);
    write_text(
        &out_dir.join(EVAL_CSV),
        &eval_csv(&data, &report.predictions),
    )?;
    save_json(&out_dir.join(EVAL_SUMMARY_JSON), &report)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlSummary {
    pub mode: String,
    pub alpha: f64,
    pub stats: ControlStats,
    /// Present for square-wave references.
    pub half_periods: Vec<HalfPeriodStat>,
}

/// Runs one control experiment. `model` may be omitted for `p-only`, in
/// which case an all-zero model of the configured structure stands in.
pub fn control_experiment(
    cfg: &ExperimentConfig,
    model: Option<RuleBase>,
    mode: Mode,
) -> Result<(ControlRun, ControlSummary)> {
    cfg.validate()?;
    let model = match model {
        Some(m) => m,
        None if !mode.uses_model() => cfg.structure()?,
        None => {
            return Err(Error::InvalidConfig(format!("mode {mode} needs a model")));
        }
    };
    check_model_inputs(&model)?;
    let params = cfg.plant_params();
    let ctl = cfg.controller_for(mode);
    let reference = cfg.reference.sample(params.dt)?;
    let run = run_control(&params, model, &ctl, &reference)?;
    let half_periods = match cfg.reference {
        Reference::Square(sq) => {
            half_period_stats(&run.trace, sq.half_period_samples(params.dt), params.dt)
        }
        Reference::Sine(_) => Vec::new(),
    };
    let summary = ControlSummary {
        mode: mode.to_string(),
        alpha: ctl.alpha,
        stats: run.stats,
        half_periods,
    };
    Ok((run, summary))
}

#[derive(Debug, Clone)]
pub struct ControlOutput {
    pub run: ControlRun,
    pub summary: ControlSummary,
    pub trace_path: PathBuf,
    pub model_path: PathBuf,
}

pub fn run_control_experiment(
    cfg: &ExperimentConfig,
    model_path: Option<&Path>,
    mode: Mode,
    out_dir: &Path,
) -> Result<ControlOutput> {
    let model = model_path.map(load_model).transpose()?;
    let (run, summary) = control_experiment(cfg, model, mode)?;
    let trace_path = out_dir.join(control_csv_name(mode));
    let model_path = out_dir.join(control_model_name(mode));
    write_text(&trace_path, &control_csv(&run.trace))?;
    write_text(&model_path, &model_json(&run.model))?;
    save_json(&out_dir.join(control_summary_name(mode)), &summary)?;
    Ok(ControlOutput {
        run,
        summary,
        trace_path,
        model_path,
    })
}

pub fn open_loop_experiment(cfg: &ExperimentConfig) -> Result<Vec<OpenLoopRow>> {
    cfg.validate()?;
    let params = cfg.plant_params();
    let ol = &cfg.open_loop;
    let reference = sine_samples(
        0.0,
        ol.amplitude,
        ol.frequency,
        sample_count(ol.duration, params.dt),
        params.dt,
    );
    run_open_loop(&params, &reference)
}

pub fn run_open_loop_experiment(
    cfg: &ExperimentConfig,
    out_dir: &Path,
) -> Result<Vec<OpenLoopRow>> {
    let rows = open_loop_experiment(cfg)?;
    write_text(&out_dir.join(OPEN_LOOP_CSV), &open_loop_csv(&rows))?;
    Ok(rows)
}
