//! Neuro-fuzzy inverse modeling and feedback-error-learning position control
//! of an electro-hydraulic actuator with a pump dead-zone.
//!
//! - [`fuzzy`]: membership functions, grid rule bases, singleton inference
//!   and classical defuzzifiers.
//! - [`learning`]: cluster-based conclusion initialization and
//!   gradient-descent tuning.
//! - [`plant`]: the simulated actuator.
//! - [`control`]: proportional loop plus online-adapted fuzzy feedforward.
//! - [`harness`]: configs, CSV/JSON formats and experiment drivers.

// Validation is written as `!(x > 0.0)` and the like so that NaN fails it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod control;
pub mod error;
pub mod fuzzy;
pub mod harness;
pub mod learning;
pub mod plant;
pub mod signal;

pub use control::{ControlRow, ControllerConfig, FelController};
pub use error::{Error, Result};
pub use fuzzy::{MembershipFunction, MembershipKind, Partition, RuleBase};
pub use learning::{Dataset, ErrorReport, Sample, TrainConfig};
pub use plant::{Plant, PlantParams, PlantState};
