//! Proportional position loop with a fuzzy inverse-model feedforward that
//! learns online from the feedback command (feedback-error-learning).
//!
//! Each tick the proportional command `omega_p` and the compensation
//! `omega_comp = h(y_ref, y, v)` are summed into the speed reference. When
//! learning is on, every rule is then moved along the feedback command,
//! weighted by its normalized activation at the condition that produced the
//! action.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{RuleBase, Scratch};
use crate::plant::{Plant, PlantParams};

/// Antecedent order of an inverse model used for compensation.
pub const CONDITION_ORDER: [&str; 3] = ["y_ref", "y", "v"];

/// Rule conclusions beyond `DIVERGENCE_FACTOR * omega_max` abort a run.
pub const DIVERGENCE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerConfig {
    /// Proportional gain, rpm/m.
    pub kp: f64,
    /// Online learning rate.
    pub alpha: f64,
    pub learning_enabled: bool,
    pub compensation_enabled: bool,
    /// Direction of the online update, +1 or -1.
    pub update_sign: i32,
    /// Rules are updated every `update_interval` ticks.
    pub update_interval: usize,
}

impl Default for ControllerConfig {
    fn default() -> Self {
        Self {
            kp: 30_000.0,
            alpha: 0.0,
            learning_enabled: false,
            compensation_enabled: false,
            update_sign: 1,
            update_interval: 1,
        }
    }
}

impl ControllerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.kp > 0.0) {
            return Err(Error::InvalidConfig("kp must be positive".into()));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidConfig("alpha must be non-negative".into()));
        }
        if self.update_sign != 1 && self.update_sign != -1 {
            return Err(Error::InvalidConfig("update_sign must be +1 or -1".into()));
        }
        if self.update_interval == 0 {
            return Err(Error::InvalidConfig(
                "update_interval must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// `kp * (y_ref - y)`, rpm.
pub fn p_controller(cfg: &ControllerConfig, y_ref: f64, y: f64) -> f64 {
    cfg.kp * (y_ref - y)
}

/// Inverse-model output at `(y_ref, y, v)`, or `None` where no rule fires.
pub fn compensation(rb: &RuleBase, y_ref: f64, v: f64, y: f64) -> Option<f64> {
    rb.infer(&[y_ref, y, v]).ok()
}

/// The state of the loop at one control instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlRow {
    pub t: f64,
    pub y_ref: f64,
    pub y: f64,
    pub v: f64,
    pub omega_p: f64,
    pub omega_comp: f64,
    pub omega_ref: f64,
    pub omega: f64,
    /// `y_ref - y`, m.
    pub error: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ControlStats {
    pub ticks: usize,
    pub updates: usize,
    /// Ticks where the model had no active rule and compensation fell back
    /// to zero.
    pub compensation_fallbacks: usize,
    /// Learning ticks skipped for the same reason.
    pub skipped_updates: usize,
}

/// A controller owning the inverse model it adapts.
#[derive(Debug, Clone)]
pub struct FelController {
    cfg: ControllerConfig,
    model: RuleBase,
    scratch: Scratch,
    stats: ControlStats,
    omega_limit: f64,
}

impl FelController {
    pub fn new(cfg: ControllerConfig, model: RuleBase) -> Result<Self> {
        cfg.validate()?;
        if model.dims() != CONDITION_ORDER.len() {
            return Err(Error::ModelMismatch(format!(
                "inverse model needs {} antecedents, found {}",
                CONDITION_ORDER.len(),
                model.dims()
            )));
        }
        Ok(Self {
            cfg,
            model,
            scratch: Scratch::default(),
            stats: ControlStats::default(),
            omega_limit: f64::INFINITY,
        })
    }

    /// Enables the divergence guard for a plant with speed limit `omega_max`.
    pub fn with_divergence_guard(mut self, omega_max: f64) -> Self {
        self.omega_limit = DIVERGENCE_FACTOR * omega_max;
        self
    }

    pub fn config(&self) -> &ControllerConfig {
        &self.cfg
    }

    pub fn model(&self) -> &RuleBase {
        &self.model
    }

    pub fn into_model(self) -> RuleBase {
        self.model
    }

    pub fn stats(&self) -> &ControlStats {
        &self.stats
    }

    /// Reads the sensors, commands the plant and adapts the model.
    pub fn step(&mut self, plant: &mut Plant, y_ref: f64) -> Result<ControlRow> {
        let tick = self.stats.ticks;
        self.stats.ticks += 1;

        let m = plant.measure();
        let t = plant.state().t;
        let omega = plant.state().omega;
        let x = [y_ref, m.y, m.v];

        let omega_p = p_controller(&self.cfg, y_ref, m.y);
        let learn = self.cfg.learning_enabled && tick.is_multiple_of(self.cfg.update_interval);
        let active = if self.cfg.compensation_enabled || learn {
            self.model.activate_into(&x, &mut self.scratch)?;
            self.scratch.activation().is_supported()
        } else {
            false
        };

        let omega_comp = if self.cfg.compensation_enabled {
            if active {
                self.model.output_for(&x, self.scratch.activation())?
            } else {
                self.stats.compensation_fallbacks += 1;
                0.0
            }
        } else {
            0.0
        };
        let omega_ref = omega_p + omega_comp;

        plant.advance(omega_ref);

        if learn {
            if active {
                self.adapt(omega_p)?;
            } else {
                self.stats.skipped_updates += 1;
            }
        }

        Ok(ControlRow {
            t,
            y_ref,
            y: m.y,
            v: m.v,
            omega_p,
            omega_comp,
            omega_ref,
            omega,
            error: y_ref - m.y,
        })
    }

    /// `w_l += sign * alpha * omega_p * d_l / sum(d)` with the activation
    /// left in the scratch buffer by the current tick.
    fn adapt(&mut self, omega_p: f64) -> Result<()> {
        self.stats.updates += 1;
        if omega_p == 0.0 || self.cfg.alpha == 0.0 {
            return Ok(());
        }
        let act = self.scratch.activation();
        let scale = f64::from(self.cfg.update_sign) * self.cfg.alpha * omega_p / act.total();
        for (l, (w, &d)) in self
            .model
            .conclusions_mut()
            .iter_mut()
            .zip(act.degrees())
            .enumerate()
        {
            *w += scale * d;
            if !(w.abs() <= self.omega_limit) {
                return Err(Error::Diverged { rule: l, value: *w });
            }
        }
        Ok(())
    }
}

/// Result of a closed-loop run.
#[derive(Debug, Clone)]
pub struct ControlRun {
    pub trace: Vec<ControlRow>,
    pub model: RuleBase,
    pub stats: ControlStats,
}

/// Runs the loop over a position reference sampled at `params.dt`.
pub fn run_control(
    params: &PlantParams,
    model: RuleBase,
    cfg: &ControllerConfig,
    y_ref: &[f64],
) -> Result<ControlRun> {
    if y_ref.is_empty() {
        return Err(Error::InvalidConfig("empty position reference".into()));
    }
    let mut plant = Plant::new(*params)?;
    let mut ctl = FelController::new(*cfg, model)?.with_divergence_guard(params.omega_max);
    let trace = y_ref
        .iter()
        .map(|&r| ctl.step(&mut plant, r))
        .collect::<Result<Vec<_>>>()?;
    let stats = *ctl.stats();
    Ok(ControlRun {
        trace,
        model: ctl.into_model(),
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{MembershipKind, Partition};

    fn structure() -> RuleBase {
        let g = MembershipKind::Gaussian;
        RuleBase::zeros(vec![
            Partition::uniform("y_ref", 0.0, 0.2, 5, g, 0.6).unwrap(),
            Partition::uniform("y", 0.0, 0.2, 5, g, 0.6).unwrap(),
            Partition::uniform("v", -0.12, 0.12, 3, g, 0.6).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn proportional_law() {
        let cfg = ControllerConfig::default();
        assert_eq!(p_controller(&cfg, 0.1, 0.1), 0.0);
        let a = p_controller(&cfg, 0.12, 0.1);
        let b = p_controller(&cfg, 0.14, 0.1);
        assert!((b - 2.0 * a).abs() < 1e-9);
        assert!((p_controller(&cfg, 0.11, 0.1) - 300.0).abs() < 1e-9);
    }

    #[test]
    fn compensation_of_trivial_models() {
        let rb = structure();
        assert_eq!(compensation(&rb, 0.1, 0.0, 0.05), Some(0.0));
        let c = RuleBase::constant(rb.antecedents().to_vec(), 450.0).unwrap();
        for (r, v, y) in [(0.0, 0.0, 0.0), (0.13, 0.05, 0.02), (0.2, -0.1, 0.2)] {
            assert!((compensation(&c, r, v, y).unwrap() - 450.0).abs() < 1e-9);
        }
    }

    #[test]
    fn single_update_matches_hand_computation() {
        let mut rb = structure();
        for (l, w) in rb.conclusions_mut().iter_mut().enumerate() {
            *w = 10.0 * l as f64;
        }
        let params = PlantParams::default();
        let mut plant = Plant::new(params).unwrap();
        let cfg = ControllerConfig {
            alpha: 0.02,
            learning_enabled: true,
            compensation_enabled: true,
            ..ControllerConfig::default()
        };
        let before = rb.clone();
        let mut ctl = FelController::new(cfg, rb).unwrap();
        let row = ctl.step(&mut plant, 0.15).unwrap();
        let act = before.activation(&[0.15, row.y, row.v]).unwrap();
        for l in 0..before.len() {
            let expected =
                before.conclusions()[l] + 0.02 * row.omega_p * act.degrees()[l] / act.total();
            assert!((ctl.model().conclusions()[l] - expected).abs() < 1e-9);
        }
        assert_eq!(row.omega_ref, row.omega_p + row.omega_comp);
    }

    #[test]
    fn negative_sign_flips_the_update() {
        let rb = structure();
        let mut plant = Plant::new(PlantParams::default()).unwrap();
        let cfg = ControllerConfig {
            alpha: 0.01,
            learning_enabled: true,
            update_sign: -1,
            ..ControllerConfig::default()
        };
        let mut ctl = FelController::new(cfg, rb).unwrap();
        ctl.step(&mut plant, 0.15).unwrap();
        assert!(ctl.model().conclusions().iter().all(|&w| w <= 0.0));
        assert!(ctl.model().conclusions().iter().any(|&w| w < 0.0));
    }

    #[test]
    fn zero_feedback_means_no_change() {
        let rb = RuleBase::constant(structure().antecedents().to_vec(), 100.0).unwrap();
        let params = PlantParams::default();
        let mut plant = Plant::new(params).unwrap();
        let cfg = ControllerConfig {
            alpha: 0.5,
            learning_enabled: true,
            compensation_enabled: true,
            ..ControllerConfig::default()
        };
        let mut ctl = FelController::new(cfg, rb.clone()).unwrap();
        // y_ref equals the initial position, so omega_p = 0 on the first tick.
        let row = ctl.step(&mut plant, params.initial_position).unwrap();
        assert_eq!(row.omega_p, 0.0);
        assert_eq!(ctl.model(), &rb);
    }

    #[test]
    fn learning_off_keeps_model() {
        let mut rb = structure();
        rb.conclusions_mut()[7] = 1234.5;
        let cfg = ControllerConfig {
            alpha: 0.02,
            compensation_enabled: true,
            ..ControllerConfig::default()
        };
        let reference: Vec<f64> = (0..2000)
            .map(|k| if k < 1000 { 0.15 } else { 0.05 })
            .collect();
        let run = run_control(&PlantParams::default(), rb.clone(), &cfg, &reference).unwrap();
        assert_eq!(run.model, rb);
        assert_eq!(run.stats.updates, 0);
    }

    #[test]
    fn update_interval_thins_updates() {
        let cfg = ControllerConfig {
            alpha: 0.001,
            learning_enabled: true,
            update_interval: 4,
            ..ControllerConfig::default()
        };
        let run = run_control(&PlantParams::default(), structure(), &cfg, &[0.15; 100]).unwrap();
        assert_eq!(run.stats.updates, 25);
    }

    #[test]
    fn divergence_is_detected() {
        let cfg = ControllerConfig {
            alpha: 1e4,
            learning_enabled: true,
            ..ControllerConfig::default()
        };
        let err = run_control(&PlantParams::default(), structure(), &cfg, &[0.2; 50]).unwrap_err();
        assert!(matches!(err, Error::Diverged { .. }));
    }

    #[test]
    fn rejects_wrong_model_shape() {
        let p = Partition::uniform("x", 0.0, 1.0, 3, MembershipKind::Gaussian, 0.6).unwrap();
        let rb = RuleBase::zeros(vec![p]).unwrap();
        assert!(FelController::new(ControllerConfig::default(), rb).is_err());
        let bad = ControllerConfig {
            update_sign: 2,
            ..ControllerConfig::default()
        };
        assert!(FelController::new(bad, structure()).is_err());
    }
}
