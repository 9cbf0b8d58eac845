//! Antecedent fuzzy sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Peak degree of every membership function. Learning never touches it.
pub const AMPLITUDE: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipKind {
    /// `exp(-((x - b) / c)^2 / 2)`.
    Gaussian,
    /// Symmetric triangle with peak at `b` and half-base `c`.
    Triangular,
}

/// One antecedent fuzzy set: a shape, a center and a width, with unit
/// amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction {
    kind: MembershipKind,
    center: f64,
    width: f64,
}

impl MembershipFunction {
    pub fn new(kind: MembershipKind, center: f64, width: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::InvalidMembership(format!(
                "center must be finite, got {center}"
            )));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidMembership(format!(
                "width must be positive and finite, got {width}"
            )));
        }
        Ok(Self {
            kind,
            center,
            width,
        })
    }

    pub fn gaussian(center: f64, width: f64) -> Result<Self> {
        Self::new(MembershipKind::Gaussian, center, width)
    }

    pub fn triangular(center: f64, half_base: f64) -> Result<Self> {
        Self::new(MembershipKind::Triangular, center, half_base)
    }

    pub fn kind(&self) -> MembershipKind {
        self.kind
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Degree of membership of `x`, in `[0, 1]`. Defined on the whole real
    /// line; no clamping to the universe of discourse.
    #[inline]
    pub fn degree(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.width;
        match self.kind {
            MembershipKind::Gaussian => AMPLITUDE * (-0.5 * u * u).exp(),
            MembershipKind::Triangular => AMPLITUDE * (1.0 - u.abs()).max(0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_peaks_at_center() {
        let mf = MembershipFunction::gaussian(0.0, 1.0).unwrap();
        assert_eq!(mf.degree(0.0), 1.0);
    }

    #[test]
    fn gaussian_one_width_out() {
        let mf = MembershipFunction::gaussian(0.0, 1.0).unwrap();
        assert!((mf.degree(1.0) - (-0.5f64).exp()).abs() < 1e-15);
        assert!((mf.degree(1.0) - 0.60653).abs() < 1e-5);
    }

    #[test]
    fn gaussian_is_symmetric() {
        let mf = MembershipFunction::gaussian(0.0, 1.0).unwrap();
        for delta in [0.1, 0.7, 2.5, 13.0] {
            assert_eq!(mf.degree(delta), mf.degree(-delta));
        }
    }

    #[test]
    fn triangle_vanishes_at_base_edge() {
        let mf = MembershipFunction::triangular(0.5, 0.5).unwrap();
        assert_eq!(mf.degree(1.0), 0.0);
        assert_eq!(mf.degree(0.5), 1.0);
        assert_eq!(mf.degree(0.75), 0.5);
        assert_eq!(mf.degree(-4.0), 0.0);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(MembershipFunction::gaussian(0.0, 0.0).is_err());
        assert!(MembershipFunction::gaussian(0.0, -1.0).is_err());
        assert!(MembershipFunction::triangular(0.0, f64::NAN).is_err());
        assert!(MembershipFunction::gaussian(f64::INFINITY, 1.0).is_err());
    }
}
