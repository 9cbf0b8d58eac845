//! Classical defuzzifiers over discrete fuzzy sets.
//!
//! The inference path uses singleton conclusions and never needs these; they
//! are provided as standalone utilities.

use crate::error::{Error, Result};

/// Degrees within this distance of the maximum count as maxima.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A fuzzy set sampled on a discrete output universe.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteFuzzySet {
    supports: Vec<f64>,
    degrees: Vec<f64>,
}

impl DiscreteFuzzySet {
    pub fn new(supports: Vec<f64>, degrees: Vec<f64>) -> Result<Self> {
        if supports.is_empty() {
            return Err(Error::InvalidFuzzySet("no entries".into()));
        }
        if supports.len() != degrees.len() {
            return Err(Error::InvalidFuzzySet(format!(
                "{} supports but {} degrees",
                supports.len(),
                degrees.len()
            )));
        }
        if let Some(d) = degrees.iter().find(|d| !(0.0..=1.0).contains(*d)) {
            return Err(Error::InvalidFuzzySet(format!("degree {d} outside [0, 1]")));
        }
        if supports.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidFuzzySet("non-finite support".into()));
        }
        Ok(Self { supports, degrees })
    }

    pub fn supports(&self) -> &[f64] {
        &self.supports
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    fn peak(&self) -> f64 {
        self.degrees
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn maxima(&self) -> impl Iterator<Item = f64> + '_ {
        let peak = self.peak();
        self.supports
            .iter()
            .zip(&self.degrees)
            .filter(move |(_, &d)| peak - d <= TIE_TOLERANCE)
            .map(|(&w, _)| w)
    }
}

/// Support at which the degree is maximal; the smallest such support on ties.
pub fn max_criterion(set: &DiscreteFuzzySet) -> f64 {
    let peak = set.peak();
    set.supports
        .iter()
        .zip(&set.degrees)
        .filter(|(_, &d)| d == peak)
        .map(|(&w, _)| w)
        .fold(f64::INFINITY, f64::min)
}

/// Mean of every support attaining the maximum degree.
pub fn mean_of_maximum(set: &DiscreteFuzzySet) -> f64 {
    let (sum, count) = set.maxima().fold((0.0, 0usize), |(s, n), w| (s + w, n + 1));
    sum / count as f64
}

/// Center of gravity `sum(mu w) / sum(mu)`.
pub fn center_of_area(set: &DiscreteFuzzySet) -> Result<f64> {
    let mass: f64 = set.degrees.iter().sum();
    if mass <= 0.0 {
        return Err(Error::ZeroMass);
    }
    let moment: f64 = set
        .supports
        .iter()
        .zip(&set.degrees)
        .map(|(w, d)| w * d)
        .sum();
    Ok(moment / mass)
}
