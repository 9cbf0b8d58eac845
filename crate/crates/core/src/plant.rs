//! Discrete-time electro-hydraulic actuator.
//!
//! The motor speed follows its reference through a first-order lag. The pump
//! moves the piston only outside an asymmetric dead-zone, with a different
//! slope on each side, and the piston position integrates between hard
//! course limits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantParams {
    /// Lower dead-zone edge, rpm.
    pub dz_neg: f64,
    /// Upper dead-zone edge, rpm.
    pub dz_pos: f64,
    /// Piston speed per rpm above `dz_pos`, (m/s)/rpm.
    pub gain_pos: f64,
    /// Piston speed per rpm below `dz_neg`, (m/s)/rpm.
    pub gain_neg: f64,
    /// Motor speed time constant, s.
    pub motor_tau: f64,
    /// Motor speed limit, rpm.
    pub omega_max: f64,
    /// Piston stroke, m.
    pub course: f64,
    /// Sample period, s.
    pub dt: f64,
    /// Width of the backlash applied to the pump speed, rpm. Zero disables it.
    pub hysteresis_band: f64,
    /// Half-width of the uniform noise added to the y (m) and v (m/s)
    /// readings. Zero disables it.
    pub noise_amplitude: f64,
    pub seed: u64,
    /// Piston position at t = 0, m.
    pub initial_position: f64,
}

impl Default for PlantParams {
    fn default() -> Self {
        Self {
            dz_neg: -700.0,
            dz_pos: 900.0,
            gain_pos: 5.0e-5,
            gain_neg: 4.2e-5,
            motor_tau: 0.05,
            omega_max: 3000.0,
            course: 0.20,
            dt: 0.01,
            hysteresis_band: 0.0,
            noise_amplitude: 0.0,
            seed: 0,
            initial_position: 0.10,
        }
    }
}

impl PlantParams {
    /// Symmetric dead-zone `[-half_width, half_width]` and equal slopes.
    pub fn symmetric(half_width: f64, gain: f64) -> Self {
        Self {
            dz_neg: -half_width,
            dz_pos: half_width,
            gain_pos: gain,
            gain_neg: gain,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(format!("plant: {msg}")));
        if !(self.dz_neg < 0.0 && 0.0 < self.dz_pos) {
            return fail(format!(
                "dead-zone must bracket zero, got [{}, {}]",
                self.dz_neg, self.dz_pos
            ));
        }
        if !(self.gain_pos > 0.0 && self.gain_neg > 0.0) {
            return fail("pump gains must be positive".into());
        }
        if !(self.omega_max > 0.0) {
            return fail("omega_max must be positive".into());
        }
        if !(self.dt > 0.0 && self.motor_tau >= self.dt) {
            return fail(format!(
                "need 0 < dt <= motor_tau, got dt={} tau={}",
                self.dt, self.motor_tau
            ));
        }
        if !(self.course > 0.0) {
            return fail("course must be positive".into());
        }
        if !(0.0..=self.course).contains(&self.initial_position) {
            return fail("initial position outside the course".into());
        }
        if !(self.hysteresis_band >= 0.0 && self.noise_amplitude >= 0.0) {
            return fail("hysteresis band and noise amplitude must be non-negative".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantState {
    /// Motor (and pump) speed, rpm.
    pub omega: f64,
    /// Piston speed, m/s.
    pub v: f64,
    /// Piston position, m.
    pub y: f64,
    pub t: f64,
    /// Output of the backlash element, rpm.
    pub backlash: f64,
}

impl PlantState {
    pub fn at_rest(y: f64) -> Self {
        Self {
            omega: 0.0,
            v: 0.0,
            y,
            t: 0.0,
            backlash: 0.0,
        }
    }
}

/// Backlash of total width `band`: the output follows the input only once
/// the input leaves the band centered on the previous output.
#[inline]
pub fn backlash(band: f64, input: f64, memory: f64) -> f64 {
    let half = 0.5 * band;
    if input > memory + half {
        input - half
    } else if input < memory - half {
        input + half
    } else {
        memory
    }
}

/// Piston speed produced by pump speed `omega`, after the optional backlash.
/// Returns `(v, new_memory)`.
pub fn pump_characteristic(params: &PlantParams, omega: f64, memory: f64) -> (f64, f64) {
    let effective = if params.hysteresis_band > 0.0 {
        backlash(params.hysteresis_band, omega, memory)
    } else {
        omega
    };
    let v = if effective > params.dz_pos {
        params.gain_pos * (effective - params.dz_pos)
    } else if effective < params.dz_neg {
        params.gain_neg * (effective - params.dz_neg)
    } else {
        0.0
    };
    (v, effective)
}

/// Advances the noise-free plant by one sample period.
pub fn step(state: &PlantState, params: &PlantParams, omega_ref: f64) -> PlantState {
    let cmd = omega_ref.clamp(-params.omega_max, params.omega_max);
    let omega = (state.omega + params.dt / params.motor_tau * (cmd - state.omega))
        .clamp(-params.omega_max, params.omega_max);
    let (mut v, backlash) = pump_characteristic(params, omega, state.backlash);
    let mut y = state.y + v * params.dt;
    if y >= params.course {
        y = params.course;
        v = 0.0;
    } else if y <= 0.0 {
        y = 0.0;
        v = 0.0;
    }
    PlantState {
        omega,
        v,
        y,
        t: state.t + params.dt,
        backlash,
    }
}

/// Sensor readings of the piston.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub y: f64,
    pub v: f64,
}

/// A plant instance with its sensors. Noise, when enabled, is drawn once per
/// sample and never feeds back into the state.
#[derive(Debug, Clone)]
pub struct Plant {
    params: PlantParams,
    state: PlantState,
    rng: ChaCha8Rng,
    reading: Measurement,
    ticks: u64,
}

impl Plant {
    pub fn new(params: PlantParams) -> Result<Self> {
        params.validate()?;
        let state = PlantState::at_rest(params.initial_position);
        let mut plant = Self {
            params,
            state,
            rng: ChaCha8Rng::seed_from_u64(params.seed),
            reading: Measurement { y: 0.0, v: 0.0 },
            ticks: 0,
        };
        plant.sample_sensors();
        Ok(plant)
    }

    fn sample_sensors(&mut self) {
        let a = self.params.noise_amplitude;
        self.reading = if a > 0.0 {
            Measurement {
                y: self.state.y + self.rng.random_range(-a..=a),
                v: self.state.v + self.rng.random_range(-a..=a),
            }
        } else {
            Measurement {
                y: self.state.y,
                v: self.state.v,
            }
        };
    }

    pub fn params(&self) -> &PlantParams {
        &self.params
    }

    pub fn state(&self) -> &PlantState {
        &self.state
    }

    pub fn measure(&self) -> Measurement {
        self.reading
    }

    pub fn advance(&mut self, omega_ref: f64) -> &PlantState {
        self.state = step(&self.state, &self.params, omega_ref);
        // Sample times are k*dt exactly rather than a running sum.
        self.ticks += 1;
        self.state.t = self.ticks as f64 * self.params.dt;
        self.sample_sensors();
        &self.state
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpenLoopRow {
    pub t: f64,
    pub omega_ref: f64,
    pub omega: f64,
    pub v: f64,
    pub y: f64,
}

/// Drives the plant with a speed reference sampled at `params.dt`. Each row
/// holds the state at the instant its reference sample is applied.
pub fn run_open_loop(params: &PlantParams, omega_ref: &[f64]) -> Result<Vec<OpenLoopRow>> {
    if omega_ref.is_empty() {
        return Err(Error::InvalidConfig("empty speed reference".into()));
    }
    let mut plant = Plant::new(*params)?;
    let mut rows = Vec::with_capacity(omega_ref.len());
    for &r in omega_ref {
        let m = plant.measure();
        rows.push(OpenLoopRow {
            t: plant.state().t,
            omega_ref: r,
            omega: plant.state().omega,
            v: m.v,
            y: m.y,
        });
        plant.advance(r);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dead_zone_edges() {
        let p = PlantParams::default();
        assert_eq!(pump_characteristic(&p, 0.0, 0.0).0, 0.0);
        assert_eq!(pump_characteristic(&p, 900.0, 0.0).0, 0.0);
        assert!(pump_characteristic(&p, 901.0, 0.0).0 > 0.0);
        assert_eq!(pump_characteristic(&p, -700.0, 0.0).0, 0.0);
        assert!(pump_characteristic(&p, -701.0, 0.0).0 < 0.0);
    }

    #[test]
    fn full_speed_piston_velocity() {
        let p = PlantParams::default();
        let v = pump_characteristic(&p, 3000.0, 0.0).0;
        assert!((v - 0.105).abs() < 1e-12);
    }

    #[test]
    fn backlash_holds_inside_band() {
        assert_eq!(backlash(100.0, 30.0, 0.0), 0.0);
        assert_eq!(backlash(100.0, 80.0, 0.0), 30.0);
        assert_eq!(backlash(100.0, 60.0, 30.0), 30.0);
        assert_eq!(backlash(100.0, -40.0, 30.0), 10.0);
        assert_eq!(backlash(0.0, 12.0, 3.0), 12.0);
    }

    #[test]
    fn hysteresis_shifts_the_release_point() {
        let p = PlantParams {
            hysteresis_band: 200.0,
            ..PlantParams::default()
        };
        // Rising: the output lags the input by 100 rpm.
        let (v, m) = pump_characteristic(&p, 1000.0, 0.0);
        assert_eq!(m, 900.0);
        assert_eq!(v, 0.0);
        let (v, m) = pump_characteristic(&p, 1500.0, m);
        assert!(v > 0.0);
        // Falling back by less than the band keeps the pump where it was.
        let (v2, m2) = pump_characteristic(&p, 1350.0, m);
        assert_eq!(m2, m);
        assert_eq!(v2, v);
    }

    #[test]
    fn end_of_course_halts() {
        let p = PlantParams::default();
        let s = PlantState {
            omega: 3000.0,
            v: 0.1,
            y: 0.20,
            t: 0.0,
            backlash: 0.0,
        };
        let next = step(&s, &p, 3000.0);
        assert_eq!(next.y, 0.20);
        assert_eq!(next.v, 0.0);
        let s = PlantState {
            omega: -3000.0,
            y: 0.0,
            ..s
        };
        let next = step(&s, &p, -3000.0);
        assert_eq!(next.y, 0.0);
        assert_eq!(next.v, 0.0);
    }

    #[test]
    fn dead_zone_fixed_point() {
        let p = PlantParams::default();
        let s = PlantState {
            omega: 500.0,
            v: 0.0,
            y: 0.07,
            t: 0.0,
            backlash: 0.0,
        };
        let next = step(&s, &p, 500.0);
        assert_eq!(next.omega, s.omega);
        assert_eq!(next.y, s.y);
        assert_eq!(next.v, 0.0);
    }

    #[test]
    fn lag_converges_geometrically() {
        let p = PlantParams::default();
        let ratio = 1.0 - p.dt / p.motor_tau;
        let mut s = PlantState::at_rest(0.1);
        let target = 2000.0;
        let mut gap = (s.omega - target).abs();
        for _ in 0..30 {
            s = step(&s, &p, target);
            let next_gap = (s.omega - target).abs();
            assert!((next_gap - ratio * gap).abs() < 1e-9);
            gap = next_gap;
        }
    }

    #[test]
    fn reference_is_clamped() {
        let p = PlantParams::default();
        let mut s = PlantState::at_rest(0.1);
        for _ in 0..500 {
            s = step(&s, &p, 1e6);
            assert!(s.omega <= p.omega_max);
        }
        assert!((s.omega - p.omega_max).abs() < 1e-6);
    }

    #[test]
    fn noise_only_touches_readings() {
        let quiet = PlantParams::default();
        let noisy = PlantParams {
            noise_amplitude: 1e-3,
            seed: 5,
            ..quiet
        };
        let mut a = Plant::new(quiet).unwrap();
        let mut b = Plant::new(noisy).unwrap();
        for k in 0..200 {
            let r = 2500.0 * (k as f64 * 0.05).sin();
            a.advance(r);
            b.advance(r);
            assert_eq!(a.state(), b.state());
            let m = b.measure();
            assert!((m.y - b.state().y).abs() <= 1e-3);
            assert!((m.v - b.state().v).abs() <= 1e-3);
        }
        assert_ne!(b.measure().y, b.state().y);
    }

    #[test]
    fn zero_reference_keeps_position() {
        let rows = run_open_loop(&PlantParams::default(), &[0.0; 1000]).unwrap();
        assert!(rows.iter().all(|r| r.y == 0.10));
    }

    #[test]
    fn rejects_invalid_params() {
        let bad = [
            PlantParams {
                dz_neg: 10.0,
                ..PlantParams::default()
            },
            PlantParams {
                gain_neg: 0.0,
                ..PlantParams::default()
            },
            PlantParams {
                dt: 0.1,
                ..PlantParams::default()
            },
            PlantParams {
                initial_position: 0.3,
                ..PlantParams::default()
            },
        ];
        for p in bad {
            assert!(Plant::new(p).is_err());
        }
        assert!(run_open_loop(&PlantParams::default(), &[]).is_err());
    }
}
