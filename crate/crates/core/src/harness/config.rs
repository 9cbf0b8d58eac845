//! Declarative experiment configuration, one TOML file per experiment.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::control::{ControllerConfig, CONDITION_ORDER};
use crate::error::{Error, Result};
use crate::fuzzy::{MembershipKind, Partition, RuleBase};
use crate::learning::TrainConfig;
use crate::plant::PlantParams;
use crate::signal::Reference;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Seeds plant noise and training shuffles.
    #[serde(default)]
    pub seed: u64,
    pub plant: PlantParams,
    pub controller: ControllerSection,
    pub model: ModelSection,
    pub train: TrainSection,
    pub excitation: Excitation,
    pub reference: Reference,
    pub open_loop: OpenLoopSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// The four closed-loop experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Proportional loop alone.
    POnly,
    /// Inverse-model compensation, no learning.
    Comp,
    /// Compensation with online learning at `alpha_slow`.
    CompLearnSlow,
    /// Compensation with online learning at `alpha_fast`.
    CompLearnFast,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::POnly,
        Mode::Comp,
        Mode::CompLearnSlow,
        Mode::CompLearnFast,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::POnly => "p-only",
            Mode::Comp => "comp",
            Mode::CompLearnSlow => "comp-learn-slow",
            Mode::CompLearnFast => "comp-learn-fast",
        }
    }

    pub fn uses_model(self) -> bool {
        self != Mode::POnly
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown control mode `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControllerSection {
    pub kp: f64,
    pub alpha_slow: f64,
    pub alpha_fast: f64,
    #[serde(default = "default_sign")]
    pub update_sign: i32,
    #[serde(default = "default_interval")]
    pub update_interval: usize,
}

fn default_sign() -> i32 {
    1
}

fn default_interval() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub output: OutputRange,
    pub inputs: Vec<InputSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRange {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
}

impl OutputRange {
    pub fn span(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub kind: MembershipKind,
    pub width_fraction: f64,
}

/// Training schedule. `epochs = 0` keeps the cluster-initialized model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSection {
    pub alpha: f64,
    pub epochs: usize,
    #[serde(default)]
    pub shuffle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One sinusoidal reference segment. `amplitude` is peak to peak, m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub amplitude: f64,
    pub frequency: f64,
    pub duration: f64,
    pub split: Split,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Excitation {
    /// Center of every sinusoid, m.
    pub offset: f64,
    pub segments: Vec<Segment>,
}

/// Zero-mean sinusoidal motor-speed reference. `amplitude` is the peak, rpm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpenLoopSection {
    pub amplitude: f64,
    pub frequency: f64,
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: "out".into() }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg = Self::from_toml(&text).map_err(|source| Error::Toml {
            path: path.to_path_buf(),
            source,
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.plant_params().validate()?;
        self.controller_for(Mode::CompLearnFast).validate()?;
        if !(self.controller.alpha_slow >= 0.0 && self.controller.alpha_fast >= 0.0) {
            return Err(Error::InvalidConfig(
                "learning rates must be non-negative".into(),
            ));
        }
        self.structure()?;
        if !(self.model.output.lo < self.model.output.hi) {
            return Err(Error::InvalidConfig(
                "model output range must satisfy lo < hi".into(),
            ));
        }
        if !(self.train.alpha > 0.0) {
            return Err(Error::InvalidConfig("train.alpha must be positive".into()));
        }
        self.validate_excitation()?;
        if !(self.open_loop.duration > 0.0) {
            return Err(Error::InvalidConfig(
                "open_loop.duration must be positive".into(),
            ));
        }
        Ok(())
    }

    fn validate_excitation(&self) -> Result<()> {
        let course = self.plant.course;
        let ex = &self.excitation;
        if ex.segments.is_empty() {
            return Err(Error::InvalidConfig("excitation has no segments".into()));
        }
        for (i, s) in ex.segments.iter().enumerate() {
            let fail = |msg: &str| {
                Err(Error::InvalidConfig(format!(
                    "excitation segment {i}: {msg}"
                )))
            };
            if !(0.0..=course).contains(&s.amplitude) {
                return fail("amplitude outside [0, course]");
            }
            if !(0.0..=1.0).contains(&s.frequency) {
                return fail("frequency outside [0, 1] Hz");
            }
            if !(s.duration > 0.0) {
                return fail("duration must be positive");
            }
            if ex.offset - 0.5 * s.amplitude < 0.0 || ex.offset + 0.5 * s.amplitude > course {
                return fail("sinusoid leaves the piston course");
            }
        }
        Ok(())
    }

    /// Plant parameters with the experiment seed applied.
    pub fn plant_params(&self) -> PlantParams {
        PlantParams {
            seed: self.seed,
            ..self.plant
        }
    }

    /// Controller settings for one of the four control experiments.
    pub fn controller_for(&self, mode: Mode) -> ControllerConfig {
        let (compensation, learning, alpha) = match mode {
            Mode::POnly => (false, false, 0.0),
            Mode::Comp => (true, false, 0.0),
            Mode::CompLearnSlow => (true, true, self.controller.alpha_slow),
            Mode::CompLearnFast => (true, true, self.controller.alpha_fast),
        };
        ControllerConfig {
            kp: self.controller.kp,
            alpha,
            learning_enabled: learning,
            compensation_enabled: compensation,
            update_sign: self.controller.update_sign,
            update_interval: self.controller.update_interval,
        }
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            alpha: self.train.alpha,
            epochs: self.train.epochs,
            shuffle: self.train.shuffle,
            seed: self.seed,
        }
    }

    /// The rule-base structure with every conclusion at zero.
    pub fn structure(&self) -> Result<RuleBase> {
        let partitions = self
            .model
            .inputs
            .iter()
            .map(|s| Partition::uniform(&s.name, s.lo, s.hi, s.count, s.kind, s.width_fraction))
            .collect::<Result<Vec<_>>>()?;
        RuleBase::zeros(partitions)
    }

    /// Checks that the model inputs are the inverse-model condition
    /// `(y_ref, y, v)` in that order.
    pub fn check_inverse_inputs(&self) -> Result<()> {
        let names: Vec<&str> = self.model.inputs.iter().map(|s| s.name.as_str()).collect();
        if names != CONDITION_ORDER {
            return Err(Error::ModelMismatch(format!(
                "inverse model inputs must be {CONDITION_ORDER:?}, config has {names:?}"
            )));
        }
        Ok(())
    }
}
