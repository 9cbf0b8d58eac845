use serde::Serialize;

use crate::fuzzy::{RuleBase, Scratch};

use super::dataset::Dataset;

/// Prediction error of a model over a dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    /// Root mean square of `Y(x) - y` over samples where inference is defined.
    pub rms: f64,
    pub max_abs: f64,
    /// `100 * max_abs / span`.
    pub percent_of_range: f64,
    /// Output universe span used for the percentages.
    pub span: f64,
    /// Samples at which no rule fired.
    pub unsupported: usize,
    /// Samples whose strongest rule received no training data.
    pub low_support: usize,
    /// Peak |error| restricted to samples whose strongest rule is supported.
    pub max_abs_supported: f64,
    #[serde(skip)]
    pub predictions: Vec<Option<f64>>,
    #[serde(skip)]
    pub per_sample_errors: Vec<Option<f64>>,
}

impl ErrorReport {
    pub fn rms_percent(&self) -> f64 {
        100.0 * self.rms / self.span
    }

    pub fn percent_supported(&self) -> f64 {
        100.0 * self.max_abs_supported / self.span
    }

    pub fn evaluated(&self) -> usize {
        self.per_sample_errors.iter().flatten().count()
    }
}

/// Evaluates `rb` on every sample of `data`. `span` is the width of the
/// output universe.
pub fn evaluate(rb: &RuleBase, data: &Dataset, span: f64) -> ErrorReport {
    let mut scratch = Scratch::default();
    let mut predictions = Vec::with_capacity(data.len());
    let mut errors = Vec::with_capacity(data.len());
    let mut sum_sq = 0.0;
    let mut max_abs: f64 = 0.0;
    let mut max_abs_supported: f64 = 0.0;
    let mut unsupported = 0;
    let mut low_support = 0;

    for s in data.iter() {
        let pred = rb
            .activate_into(&s.x, &mut scratch)
            .ok()
            .and_then(|()| rb.output_for(&s.x, scratch.activation()).ok());
        match pred {
            Some(p) => {
                let e = p - s.y;
                sum_sq += e * e;
                max_abs = max_abs.max(e.abs());
                if rb.support_flags()[scratch.activation().dominant_rule()] {
                    max_abs_supported = max_abs_supported.max(e.abs());
                } else {
                    low_support += 1;
                }
                predictions.push(Some(p));
                errors.push(Some(e));
            }
            None => {
                unsupported += 1;
                predictions.push(None);
                errors.push(None);
            }
        }
    }

    let n = data.len() - unsupported;
    let rms = if n == 0 {
        0.0
    } else {
        (sum_sq / n as f64).sqrt()
    };
    ErrorReport {
        rms,
        max_abs,
        percent_of_range: 100.0 * max_abs / span,
        span,
        unsupported,
        low_support,
        max_abs_supported,
        predictions,
        per_sample_errors: errors,
    }
}
