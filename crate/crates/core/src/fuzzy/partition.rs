use crate::error::{Error, Result};

use super::membership::{MembershipFunction, MembershipKind};

/// The fuzzy sets covering one input variable's universe of discourse.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    name: String,
    lo: f64,
    hi: f64,
    functions: Vec<MembershipFunction>,
}

impl Partition {
    /// `n` sets with centers evenly spaced from `lo` to `hi` inclusive and a
    /// width equal to `width_fraction` of the center spacing.
    pub fn uniform(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        n: usize,
        kind: MembershipKind,
        width_fraction: f64,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidPartition {
            name: name.clone(),
            reason,
        };
        if n < 2 {
            return Err(invalid(format!("need at least 2 sets, got {n}")));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(format!(
                "bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if !(width_fraction > 0.0 && width_fraction <= 2.0) {
            return Err(invalid(format!(
                "width fraction must lie in (0, 2], got {width_fraction}"
            )));
        }
        let spacing = (hi - lo) / (n - 1) as f64;
        let width = width_fraction * spacing;
        let functions = (0..n)
            .map(|k| {
                // Pin the last center so it lands on `hi` exactly.
                let center = if k == n - 1 {
                    hi
                } else {
                    lo + k as f64 * spacing
                };
                MembershipFunction::new(kind, center, width)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name,
            lo,
            hi,
            functions,
        })
    }

    /// Rebuilds a partition from explicit sets, e.g. when loading a model.
    ///
    /// Centers must be strictly increasing and lie inside `[lo, hi]`. A single
    /// set is accepted here; `uniform` always produces at least two.
    pub fn from_functions(
        name: impl Into<String>,
        lo: f64,
        hi: f64,
        functions: Vec<MembershipFunction>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidPartition {
            name: name.clone(),
            reason,
        };
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(invalid(format!(
                "bounds must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if functions.is_empty() {
            return Err(invalid("no membership functions".into()));
        }
        if functions.windows(2).any(|w| w[0].center() >= w[1].center()) {
            return Err(invalid("centers must be strictly increasing".into()));
        }
        if functions
            .iter()
            .any(|mf| mf.center() < lo || mf.center() > hi)
        {
            return Err(invalid("centers must lie inside the universe".into()));
        }
        Ok(Self {
            name,
            lo,
            hi,
            functions,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[MembershipFunction] {
        &self.functions
    }

    /// Degrees of `x` in every set of the partition, written into `out`.
    #[inline]
    pub fn fuzzify_into(&self, x: f64, out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.functions.iter().map(|mf| mf.degree(x)));
    }

    pub fn fuzzify(&self, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        self.fuzzify_into(x, &mut out);
        out
    }
}
