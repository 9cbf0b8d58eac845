//! Gradient-descent tuning of rule conclusions on the squared error
//! `E = (Y(x) - y)^2 / 2`.
//!
//! `Y` is linear in each conclusion, so `dE/dw_l = (Y - y) * d_l / sum(d)`.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{RuleBase, Scratch};

use super::dataset::{Dataset, Sample};
use super::metrics::evaluate;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainConfig {
    pub alpha: f64,
    pub epochs: usize,
    #[serde(default)]
    pub shuffle: bool,
    /// Seeds the per-epoch shuffle; unused when `shuffle` is off.
    #[serde(default)]
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            alpha: 0.8,
            epochs: 50,
            shuffle: false,
            seed: 0,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "learning rate must be positive, got {}",
                self.alpha
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidConfig("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

/// `E = (Y(x) - y)^2 / 2` at one sample.
pub fn objective(rb: &RuleBase, s: &Sample) -> Result<f64> {
    let e = rb.infer(&s.x)? - s.y;
    Ok(0.5 * e * e)
}

/// `dE/dw_l` for every rule at one sample.
pub fn gradient(rb: &RuleBase, s: &Sample) -> Result<Vec<f64>> {
    let act = rb.activation(&s.x)?;
    let e = rb.output_for(&s.x, &act)? - s.y;
    Ok(act.degrees().iter().map(|d| e * d / act.total()).collect())
}

/// One descent step on a single sample, all rules updated from the same
/// pre-step output. Returns the pre-step error `Y(x) - y`.
pub fn gradient_step(rb: &mut RuleBase, s: &Sample, alpha: f64) -> Result<f64> {
    gradient_step_with(rb, s, alpha, &mut Scratch::default())
}

pub fn gradient_step_with(
    rb: &mut RuleBase,
    s: &Sample,
    alpha: f64,
    scratch: &mut Scratch,
) -> Result<f64> {
    let e = rb.infer_with(&s.x, scratch)? - s.y;
    let act = scratch.activation();
    let scale = alpha * e / act.total();
    for (w, &d) in rb.conclusions_mut().iter_mut().zip(act.degrees()) {
        *w -= scale * d;
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Training-set RMS after the epoch.
    pub rms: f64,
    pub max_abs: f64,
    /// Samples skipped because no rule fired.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    pub initial_rms: f64,
    pub history: Vec<EpochRecord>,
}

impl TrainReport {
    pub fn final_rms(&self) -> f64 {
        self.history.last().map_or(self.initial_rms, |r| r.rms)
    }
}

/// Runs `cfg.epochs` sequential passes of [`gradient_step`] over `data`.
pub fn train_epochs(
    rb: &RuleBase,
    data: &Dataset,
    cfg: &TrainConfig,
) -> Result<(RuleBase, TrainReport)> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if let Some(s) = data.iter().find(|s| s.x.len() != rb.dims()) {
        return Err(Error::DimensionMismatch {
            expected: rb.dims(),
            got: s.x.len(),
        });
    }
    // Only the ordering matters here, so the span is irrelevant.
    let initial_rms = evaluate(rb, data, 1.0).rms;
    let mut rb = rb.clone();
    let mut scratch = Scratch::default();
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut history = Vec::with_capacity(cfg.epochs);

    for epoch in 1..=cfg.epochs {
        if cfg.shuffle {
            order.shuffle(&mut rng);
        }
        let mut skipped = 0;
        for &k in &order {
            match gradient_step_with(&mut rb, &data.samples[k], cfg.alpha, &mut scratch) {
                Ok(_) => {}
                Err(Error::UnsupportedRegion { .. }) => skipped += 1,
                Err(e) => return Err(e),
            }
        }
        let report = evaluate(&rb, data, 1.0);
        history.push(EpochRecord {
            epoch,
            rms: report.rms,
            max_abs: report.max_abs,
            skipped,
        });
    }
    Ok((
        rb,
        TrainReport {
            initial_rms,
            history,
        },
    ))
}
