//! Shared fixtures for the criterion benchmarks.

use nfel_core::fuzzy::{MembershipKind, Partition, RuleBase};
use nfel_core::learning::{Dataset, Sample};

/// The 7 x 11 x 7 Gaussian inverse-model structure over `(y_ref, y, v)`.
pub fn inverse_structure() -> RuleBase {
    let g = MembershipKind::Gaussian;
    RuleBase::zeros(vec![
        Partition::uniform("y_ref", 0.0, 0.2, 7, g, 0.6).unwrap(),
        Partition::uniform("y", 0.0, 0.2, 11, g, 0.6).unwrap(),
        Partition::uniform("v", -0.12, 0.12, 7, g, 0.6).unwrap(),
    ])
    .unwrap()
}

/// A smooth synthetic inverse map sampled along a closed-loop-like path.
pub fn synthetic_dataset(n: usize) -> Dataset {
    (0..n)
        .map(|k| {
            let t = k as f64 * 0.01;
            let y_ref = 0.1 + 0.08 * (0.9 * t).sin();
            let y = 0.1 + 0.075 * (0.9 * t - 0.3).sin();
            let v = 0.06 * (0.9 * t - 0.3).cos();
            Sample::at(t, vec![y_ref, y, v], 30_000.0 * (y_ref - y) + 8_000.0 * v)
        })
        .collect()
}
