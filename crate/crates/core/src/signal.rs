//! Sampled reference signals.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of samples in `duration` seconds at period `dt`.
pub fn sample_count(duration: f64, dt: f64) -> usize {
    (duration / dt).round() as usize
}

/// Alternating two-level position reference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareWave {
    pub lo: f64,
    pub hi: f64,
    /// Full period, s. The first half sits at `hi` unless `start_low`.
    pub period: f64,
    pub duration: f64,
    #[serde(default)]
    pub start_low: bool,
}

impl SquareWave {
    /// Samples per half-period.
    pub fn half_period_samples(&self, dt: f64) -> usize {
        sample_count(0.5 * self.period, dt).max(1)
    }

    pub fn sample(&self, dt: f64) -> Result<Vec<f64>> {
        if !(self.period > 0.0 && self.duration > 0.0) {
            return Err(Error::InvalidConfig(
                "square wave needs positive period and duration".into(),
            ));
        }
        let half = self.half_period_samples(dt);
        let (first, second) = if self.start_low {
            (self.lo, self.hi)
        } else {
            (self.hi, self.lo)
        };
        Ok((0..sample_count(self.duration, dt))
            .map(|k| {
                if (k / half).is_multiple_of(2) {
                    first
                } else {
                    second
                }
            })
            .collect())
    }
}

/// `offset + amplitude / 2 * sin(2 pi f t)`; `amplitude` is peak to peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sinusoid {
    pub offset: f64,
    pub amplitude: f64,
    pub frequency: f64,
    pub duration: f64,
}

impl Sinusoid {
    pub fn sample(&self, dt: f64) -> Result<Vec<f64>> {
        if !(self.duration > 0.0) {
            return Err(Error::InvalidConfig(
                "sinusoid needs a positive duration".into(),
            ));
        }
        Ok(sine_samples(
            self.offset,
            0.5 * self.amplitude,
            self.frequency,
            sample_count(self.duration, dt),
            dt,
        ))
    }
}

/// Position reference program for a control run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Reference {
    Square(SquareWave),
    Sine(Sinusoid),
}

impl Reference {
    pub fn sample(&self, dt: f64) -> Result<Vec<f64>> {
        match self {
            Reference::Square(s) => s.sample(dt),
            Reference::Sine(s) => s.sample(dt),
        }
    }
}

pub(crate) fn sine_samples(offset: f64, peak: f64, frequency: f64, n: usize, dt: f64) -> Vec<f64> {
    (0..n)
        .map(|k| offset + peak * (TAU * frequency * k as f64 * dt).sin())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_wave_levels() {
        let sq = SquareWave {
            lo: 0.05,
            hi: 0.15,
            period: 1.0,
            duration: 2.0,
            start_low: false,
        };
        let s = sq.sample(0.01).unwrap();
        assert_eq!(s.len(), 200);
        assert!(s[..50].iter().all(|&v| v == 0.15));
        assert!(s[50..100].iter().all(|&v| v == 0.05));
        assert!(s[100..150].iter().all(|&v| v == 0.15));
        let low = SquareWave {
            start_low: true,
            ..sq
        };
        assert_eq!(low.sample(0.01).unwrap()[0], 0.05);
    }

    #[test]
    fn zero_amplitude_sine_is_flat() {
        let s = Sinusoid {
            offset: 0.1,
            amplitude: 0.0,
            frequency: 0.5,
            duration: 3.0,
        }
        .sample(0.01)
        .unwrap();
        assert_eq!(s.len(), 300);
        assert!(s.iter().all(|&v| v == 0.1));
    }

    #[test]
    fn sine_spans_peak_to_peak() {
        let s = Sinusoid {
            offset: 0.1,
            amplitude: 0.18,
            frequency: 1.0,
            duration: 1.0,
        }
        .sample(0.0025)
        .unwrap();
        let max = s.iter().copied().fold(f64::MIN, f64::max);
        let min = s.iter().copied().fold(f64::MAX, f64::min);
        assert!((max - 0.19).abs() < 1e-9);
        assert!((min - 0.01).abs() < 1e-9);
    }
}
