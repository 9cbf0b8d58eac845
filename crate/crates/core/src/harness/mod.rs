//! Configuration, file formats and the experiment pipeline behind the CLI.

pub mod analysis;
pub mod config;
pub mod experiments;
pub mod io;

pub use config::{ExperimentConfig, Mode, Split};
pub use experiments::*;
pub use io::{load_model, read_dataset, save_model, DataRow, ModelFile};
