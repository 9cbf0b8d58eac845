//! Grid rule bases with singleton conclusions and product inference.
//!
//! Every combination of one fuzzy set per antecedent is a rule. Rules are
//! enumerated with the first antecedent varying fastest:
//! `l = i_1 + n_1 * (i_2 + n_2 * (i_3 + ...))`.

use crate::error::{Error, Result};

use super::partition::Partition;

/// Activation totals below this are treated as "no rule fires". Gaussian
/// degrees never reach zero analytically but do underflow.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// Per-rule activation degrees for one condition vector.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ActivationVector {
    degrees: Vec<f64>,
    total: f64,
}

impl ActivationVector {
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Sum of all degrees.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn is_supported(&self) -> bool {
        self.total >= UNDERFLOW_FLOOR
    }

    /// Normalized firing strength `d_l / sum(d)` of rule `l`.
    pub fn weight(&self, l: usize) -> f64 {
        self.degrees[l] / self.total
    }

    /// Index of the strongest rule. Ties go to the lowest index.
    pub fn dominant_rule(&self) -> usize {
        let mut best = 0;
        for (l, &d) in self.degrees.iter().enumerate() {
            if d > self.degrees[best] {
                best = l;
            }
        }
        best
    }
}

/// Reusable buffers for computing activations without reallocating.
#[derive(Debug, Clone, Default)]
pub struct Scratch {
    memberships: Vec<f64>,
    activation: ActivationVector,
}

impl Scratch {
    pub fn activation(&self) -> &ActivationVector {
        &self.activation
    }
}

/// Antecedent partitions plus one singleton conclusion per rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    antecedents: Vec<Partition>,
    conclusions: Vec<f64>,
    support_flags: Vec<bool>,
}

impl RuleBase {
    /// A rule base over `antecedents` with every conclusion at zero and
    /// every rule marked supported.
    pub fn zeros(antecedents: Vec<Partition>) -> Result<Self> {
        let c = Self::count_rules(&antecedents)?;
        Ok(Self {
            antecedents,
            conclusions: vec![0.0; c],
            support_flags: vec![true; c],
        })
    }

    pub fn constant(antecedents: Vec<Partition>, value: f64) -> Result<Self> {
        let mut rb = Self::zeros(antecedents)?;
        rb.conclusions.fill(value);
        Ok(rb)
    }

    pub fn from_parts(
        antecedents: Vec<Partition>,
        conclusions: Vec<f64>,
        support_flags: Vec<bool>,
    ) -> Result<Self> {
        let c = Self::count_rules(&antecedents)?;
        if conclusions.len() != c {
            return Err(Error::InvalidRuleBase(format!(
                "{} conclusions for {c} rules",
                conclusions.len()
            )));
        }
        if support_flags.len() != c {
            return Err(Error::InvalidRuleBase(format!(
                "{} support flags for {c} rules",
                support_flags.len()
            )));
        }
        Ok(Self {
            antecedents,
            conclusions,
            support_flags,
        })
    }

    fn count_rules(antecedents: &[Partition]) -> Result<usize> {
        if antecedents.is_empty() {
            return Err(Error::InvalidRuleBase("no antecedents".into()));
        }
        antecedents
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
            .ok_or_else(|| Error::InvalidRuleBase("rule count overflows".into()))
    }

    pub fn antecedents(&self) -> &[Partition] {
        &self.antecedents
    }

    /// Number of antecedent variables `m`.
    pub fn dims(&self) -> usize {
        self.antecedents.len()
    }

    /// Number of rules `c`.
    pub fn len(&self) -> usize {
        self.conclusions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conclusions.is_empty()
    }

    pub fn conclusions(&self) -> &[f64] {
        &self.conclusions
    }

    pub fn conclusions_mut(&mut self) -> &mut [f64] {
        &mut self.conclusions
    }

    pub fn support_flags(&self) -> &[bool] {
        &self.support_flags
    }

    pub fn set_support(&mut self, l: usize, supported: bool) {
        self.support_flags[l] = supported;
    }

    /// Flat rule index for one set index per antecedent.
    pub fn rule_index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.dims());
        coords
            .iter()
            .zip(&self.antecedents)
            .rev()
            .fold(0, |acc, (&i, p)| {
                debug_assert!(i < p.len());
                acc * p.len() + i
            })
    }

    /// Inverse of [`rule_index`](Self::rule_index).
    pub fn rule_coords(&self, mut l: usize) -> Vec<usize> {
        self.antecedents
            .iter()
            .map(|p| {
                let i = l % p.len();
                l /= p.len();
                i
            })
            .collect()
    }

    fn check_dims(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dims() {
            return Err(Error::DimensionMismatch {
                expected: self.dims(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Fills `scratch` with the activation degrees of every rule at `x`.
    pub fn activate_into(&self, x: &[f64], scratch: &mut Scratch) -> Result<()> {
        self.check_dims(x)?;
        let degrees = &mut scratch.activation.degrees;
        degrees.clear();
        degrees.reserve(self.len());
        degrees.push(1.0);
        // Each pass multiplies in one antecedent. The existing block is the
        // stride for the new coordinate, which keeps the first antecedent
        // varying fastest.
        for (p, &xj) in self.antecedents.iter().zip(x) {
            p.fuzzify_into(xj, &mut scratch.memberships);
            let stride = degrees.len();
            degrees.resize(stride * p.len(), 0.0);
            for i in (0..p.len()).rev() {
                let mu = scratch.memberships[i];
                for k in 0..stride {
                    degrees[i * stride + k] = degrees[k] * mu;
                }
            }
        }
        scratch.activation.total = degrees.iter().sum();
        Ok(())
    }

    /// Activation degrees of every rule at `x`.
    pub fn activation(&self, x: &[f64]) -> Result<ActivationVector> {
        let mut scratch = Scratch::default();
        self.activate_into(x, &mut scratch)?;
        Ok(scratch.activation)
    }

    /// Weighted-centroid output of the rule base at `x`, reusing `scratch`.
    pub fn infer_with(&self, x: &[f64], scratch: &mut Scratch) -> Result<f64> {
        self.activate_into(x, scratch)?;
        self.output_for(x, &scratch.activation)
    }

    /// Output for an activation already computed at `x`.
    pub fn output_for(&self, x: &[f64], act: &ActivationVector) -> Result<f64> {
        if !act.is_supported() {
            return Err(Error::UnsupportedRegion {
                x: x.to_vec(),
                total: act.total,
            });
        }
        let numerator: f64 = act
            .degrees
            .iter()
            .zip(&self.conclusions)
            .map(|(d, w)| d * w)
            .sum();
        Ok(numerator / act.total)
    }

    /// `Y(x) = sum_l d_l w_l / sum_l d_l`.
    pub fn infer(&self, x: &[f64]) -> Result<f64> {
        self.infer_with(x, &mut Scratch::default())
    }
}
