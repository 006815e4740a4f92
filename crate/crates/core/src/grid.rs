//! Uniform time and frequency grids.

use crate::error::{invalid, Error, Result};

/// Largest admitted `dt * omega_q` for time grids.
pub const MAX_DT_OMEGA_Q: f64 = 0.1;

/// Symmetric uniform time grid on `[-t_max, t_max]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeGrid {
    t_max: f64,
    n_points: usize,
}

impl TimeGrid {
    /// Checks `dt * omega_q <= 0.1`.
    pub fn new(t_max: f64, n_points: usize, omega_q: f64) -> Result<Self> {
        let g = Self::unchecked(t_max, n_points)?;
        let ratio = g.dt() * omega_q;
        if ratio > MAX_DT_OMEGA_Q {
            return Err(Error::Resolution {
                detail: format!("dt * omega_q = {ratio:.4} exceeds {MAX_DT_OMEGA_Q}"),
                suggestion: format!("n_time >= {}", Self::points_for(t_max, MAX_DT_OMEGA_Q / omega_q)),
            });
        }
        Ok(g)
    }

    /// Validates only the shape of the grid.
    pub fn unchecked(t_max: f64, n_points: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(invalid("t_max", format!("must be > 0, got {t_max}")));
        }
        if n_points < 3 {
            return Err(invalid("n_time", format!("need at least 3 points, got {n_points}")));
        }
        Ok(TimeGrid { t_max, n_points })
    }

    /// Smallest point count giving spacing at most `dt_max` on `[-t_max, t_max]`.
    pub fn points_for(t_max: f64, dt_max: f64) -> usize {
        (2.0 * t_max / dt_max).ceil() as usize + 1
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dt(&self) -> f64 {
        2.0 * self.t_max / (self.n_points - 1) as f64
    }

    pub fn t(&self, i: usize) -> f64 {
        -self.t_max + i as f64 * self.dt()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.t(i)).collect()
    }

    /// Trapezoid weights.
    pub fn weights(&self) -> Vec<f64> {
        trapezoid_weights(self.n_points, self.dt())
    }
}

/// Uniform frequency grid centered on the carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyGrid {
    half_width: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid("omega_max", format!("must be > 0, got {half_width}")));
        }
        if n_points < 3 {
            return Err(invalid("n_omega", format!("need at least 3 points, got {n_points}")));
        }
        Ok(FrequencyGrid { half_width, n_points })
    }

    /// Checks that the three peak regions around `0, +-omega_q` fit.
    pub fn for_pulse(half_width: f64, n_points: usize, omega_q: f64, sigma_t: f64) -> Result<Self> {
        let g = Self::new(half_width, n_points)?;
        let needed = omega_q + 3.0 / sigma_t;
        if half_width < needed {
            return Err(Error::Resolution {
                detail: format!("frequency half-width {half_width:.4} does not cover the side peaks"),
                suggestion: format!("omega_max >= {needed:.4}"),
            });
        }
        Ok(g)
    }

    /// Half-width `max(omega_q + 4 / sigma_t, 8 omega_q)`, so that the slowly
    /// decaying wings of multi-photon and coherent spectra are captured, and
    /// at least eight points per spectral standard deviation.
    pub fn default_for(omega_q: f64, sigma_t: f64) -> Self {
        let half_width = (omega_q + 4.0 / sigma_t).max(8.0 * omega_q);
        let step = 0.5 / sigma_t / 8.0;
        let n = (2001usize).max(2 * (half_width / step).ceil() as usize + 1);
        FrequencyGrid { half_width, n_points: n }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.n_points - 1) as f64
    }

    pub fn omega(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.step()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.omega(i)).collect()
    }

    /// Index of the node nearest to `omega`.
    pub fn nearest(&self, omega: f64) -> usize {
        let x = ((omega + self.half_width) / self.step()).round();
        x.clamp(0.0, (self.n_points - 1) as f64) as usize
    }
}

pub fn trapezoid_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![h; n];
    w[0] = 0.5 * h;
    w[n - 1] = 0.5 * h;
    w
}
