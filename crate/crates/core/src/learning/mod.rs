//! Conclusion learning: cluster-based initialization followed by
//! gradient-descent tuning.

pub mod cluster;
pub mod dataset;
pub mod gradient;
pub mod metrics;

pub use cluster::{cluster_init, ClusterAccumulator, SUPPORT_THRESHOLD};
pub use dataset::{Dataset, DatasetMeta, Sample};
pub use gradient::{
    gradient, gradient_step, gradient_step_with, objective, train_epochs, EpochRecord, TrainConfig,
    TrainReport,
};
pub use metrics::{evaluate, ErrorReport};
