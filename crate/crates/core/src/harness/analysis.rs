//! Summary statistics over square-wave control traces.

use serde::Serialize;

use crate::control::ControlRow;

/// Tracking error over the last quarter of one reference half-period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPeriodStat {
    pub index: usize,
    pub level: f64,
    pub start_t: f64,
    pub end_t: f64,
    /// Mean of `|y_ref - y|` over the final quarter, m.
    pub settle_abs_error: f64,
    /// Mean signed `y_ref - y` over the final quarter, m.
    pub settle_error: f64,
}

/// Splits `trace` into complete half-periods of `half` samples.
pub fn half_period_stats(trace: &[ControlRow], half: usize, dt: f64) -> Vec<HalfPeriodStat> {
    let quarter = (half / 4).max(1);
    trace
        .chunks_exact(half)
        .enumerate()
        .map(|(index, chunk)| {
            let tail = &chunk[half - quarter..];
            let n = tail.len() as f64;
            HalfPeriodStat {
                index,
                level: chunk[0].y_ref,
                start_t: (index * half) as f64 * dt,
                end_t: ((index + 1) * half) as f64 * dt,
                settle_abs_error: tail.iter().map(|r| r.error.abs()).sum::<f64>() / n,
                settle_error: tail.iter().map(|r| r.error).sum::<f64>() / n,
            }
        })
        .collect()
}

/// Worst settle error of each full period (pairs of halves).
pub fn period_settle_errors(halves: &[HalfPeriodStat]) -> Vec<f64> {
    halves
        .chunks_exact(2)
        .map(|p| p[0].settle_abs_error.max(p[1].settle_abs_error))
        .collect()
}

/// Number of strict increases in `values`.
pub fn increases(values: &[f64]) -> usize {
    values.windows(2).filter(|w| w[1] > w[0]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: f64, y_ref: f64, y: f64) -> ControlRow {
        ControlRow {
            t,
            y_ref,
            y,
            v: 0.0,
            omega_p: 0.0,
            omega_comp: 0.0,
            omega_ref: 0.0,
            omega: 0.0,
            error: y_ref - y,
        }
    }

    #[test]
    fn settle_error_uses_the_final_quarter() {
        let trace: Vec<ControlRow> = (0..8)
            .map(|k| {
                let y_ref = if k < 4 { 1.0 } else { 0.0 };
                let y = if k == 3 {
                    0.5
                } else if k == 7 {
                    0.25
                } else {
                    9.0
                };
                row(k as f64, y_ref, y)
            })
            .collect();
        let h = half_period_stats(&trace, 4, 1.0);
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].settle_abs_error, 0.5);
        assert_eq!(h[1].settle_error, -0.25);
        assert_eq!(h[1].end_t, 8.0);
        assert_eq!(period_settle_errors(&h), vec![0.5]);
    }

    #[test]
    fn counts_increases() {
        assert_eq!(increases(&[3.0, 2.0, 2.0, 2.5, 1.0]), 1);
        assert_eq!(increases(&[]), 0);
    }
}
