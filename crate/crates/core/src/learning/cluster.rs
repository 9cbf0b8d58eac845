//! Cluster-based initialization of rule conclusions.
//!
//! Every sample contributes its target to every rule, weighted by the rule's
//! activation at the sample. A rule's conclusion is the weighted mean of the
//! targets it saw.

use crate::error::{Error, Result};
use crate::fuzzy::{ActivationVector, RuleBase, Scratch};

use super::dataset::Dataset;

/// Rules whose accumulated activation stays below this are left at zero and
/// flagged as unsupported.
pub const SUPPORT_THRESHOLD: f64 = 1e-8;

/// Running weighted sums for every rule.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterAccumulator {
    numerator: Vec<f64>,
    denominator: Vec<f64>,
}

impl ClusterAccumulator {
    pub fn new(rules: usize) -> Self {
        Self {
            numerator: vec![0.0; rules],
            denominator: vec![0.0; rules],
        }
    }

    pub fn numerator(&self) -> &[f64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[f64] {
        &self.denominator
    }

    /// Folds in one sample with target `y` and activation `act`.
    pub fn add(&mut self, act: &ActivationVector, y: f64) {
        for ((num, den), &d) in self
            .numerator
            .iter_mut()
            .zip(self.denominator.iter_mut())
            .zip(act.degrees())
        {
            *num += y * d;
            *den += d;
        }
    }

    /// Writes `numerator / denominator` into each supported rule of `rb`.
    pub fn apply(&self, rb: &mut RuleBase) {
        debug_assert_eq!(rb.len(), self.numerator.len());
        for l in 0..rb.len() {
            let den = self.denominator[l];
            let supported = den >= SUPPORT_THRESHOLD;
            rb.conclusions_mut()[l] = if supported {
                self.numerator[l] / den
            } else {
                0.0
            };
            rb.set_support(l, supported);
        }
    }
}

/// Initializes every conclusion of `structure` from `data` in one pass.
///
/// Existing conclusions are ignored. The result does not depend on sample
/// order beyond floating-point summation order.
pub fn cluster_init(structure: &RuleBase, data: &Dataset) -> Result<RuleBase> {
    let acc = accumulate(structure, data)?;
    let mut rb = structure.clone();
    acc.apply(&mut rb);
    Ok(rb)
}

/// Accumulated sums for `data` against the antecedents of `structure`.
pub fn accumulate(structure: &RuleBase, data: &Dataset) -> Result<ClusterAccumulator> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut acc = ClusterAccumulator::new(structure.len());
    let mut scratch = Scratch::default();
    for s in data.iter() {
        structure.activate_into(&s.x, &mut scratch)?;
        acc.add(scratch.activation(), s.y);
    }
    Ok(acc)
}
