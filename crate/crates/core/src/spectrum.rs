//! Spectral densities on frequency grids and the two-time to spectrum transform.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::exec;
use crate::grid::FrequencyGrid;

/// Real spectral density sampled on a frequency grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    omega: Vec<f64>,
    values: Vec<f64>,
}

impl Spectrum {
    pub fn new(omega: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(omega.len(), values.len());
        Spectrum { omega, values }
    }

    pub fn from_fn<F: Fn(f64) -> f64 + Sync + Send>(grid: &FrequencyGrid, f: F) -> Self {
        let omega = grid.points();
        let values = exec::map_slice(&omega, |&w| f(w));
        Spectrum { omega, values }
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn trapezoid(&self, g: impl Fn(f64, f64) -> f64) -> f64 {
        let n = self.len();
        let mut acc = 0.0;
        for i in 1..n {
            let h = self.omega[i] - self.omega[i - 1];
            acc += 0.5 * h * (g(self.omega[i - 1], self.values[i - 1]) + g(self.omega[i], self.values[i]));
        }
        acc
    }

    /// `int S d omega`.
    pub fn integral(&self) -> f64 {
        self.trapezoid(|_, s| s)
    }

    /// `int omega S d omega`.
    pub fn first_moment(&self) -> f64 {
        self.trapezoid(|w, s| w * s)
    }

    pub fn mean_frequency(&self) -> f64 {
        self.first_moment() / self.integral()
    }

    /// Index and value of the global maximum.
    pub fn peak(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |b, (i, &v)| if v > b.1 { (i, v) } else { b })
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Interior local maxima above `floor * peak`.
    pub fn local_maxima(&self, floor: f64) -> Vec<usize> {
        let (_, peak) = self.peak();
        let v = &self.values;
        (1..v.len().saturating_sub(1))
            .filter(|&i| v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > floor * peak)
            .collect()
    }

    pub fn scaled(&self, factor: f64) -> Spectrum {
        Spectrum {
            omega: self.omega.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Rescaled to unit integral.
    pub fn normalized(&self) -> Spectrum {
        self.scaled(1.0 / self.integral())
    }

    /// `S(-omega)`, assuming a grid symmetric about zero.
    pub fn mirrored(&self) -> Spectrum {
        let mut values = self.values.clone();
        values.reverse();
        Spectrum {
            omega: self.omega.clone(),
            values,
        }
    }

    /// `max |S(omega) - S(-omega)|`.
    pub fn asymmetry(&self) -> f64 {
        self.max_abs_diff(&self.mirrored())
    }

    pub fn max_abs_diff(&self, other: &Spectrum) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn ensure_same_grid(&self, other: &Spectrum) -> Result<()> {
        let same = self.omega.len() == other.omega.len()
            && self
                .omega
                .iter()
                .zip(&other.omega)
                .all(|(a, b)| (a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        if same {
            Ok(())
        } else {
            Err(Error::Contract("spectra are sampled on different frequency grids".into()))
        }
    }

    /// Pointwise weighted sum of spectra on a common grid.
    pub fn combine(parts: &[(f64, &Spectrum)]) -> Result<Spectrum> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Contract("no spectra to combine".into()))?
            .1;
        let mut values = vec![0.0; first.len()];
        for (w, s) in parts {
            first.ensure_same_grid(s)?;
            for (acc, v) in values.iter_mut().zip(&s.values) {
                *acc += w * v;
            }
        }
        Ok(Spectrum {
            omega: first.omega.clone(),
            values,
        })
    }
}

/// Lag sums `D(d) = sum_{i - j = d} w_i w_j K(t_i, t_j)` of a Hermitian
/// two-time kernel on a uniform grid, for `d = 0, 1, ..`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagSums {
    pub dt: f64,
    pub sums: Vec<C64>,
}

impl LagSums {
    pub fn zeros(n: usize, dt: f64) -> Self {
        LagSums {
            dt,
            sums: vec![C64::new(0.0, 0.0); n],
        }
    }

    /// From a dense row-major `n x n` kernel.
    pub fn from_dense(kernel: &[C64], weights: &[f64], dt: f64) -> Self {
        let n = weights.len();
        assert_eq!(kernel.len(), n * n);
        let sums = (0..n)
            .map(|d| {
                (d..n)
                    .map(|i| kernel[i * n + i - d] * (weights[i] * weights[i - d]))
                    .fold(C64::new(0.0, 0.0), |a, b| a + b)
            })
            .collect();
        LagSums { dt, sums }
    }

    pub fn add_scaled(&mut self, other: &LagSums, c: C64) {
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            *a += *b * c;
        }
    }

    /// `S(omega) = (1/2pi) sum_{ij} w_i w_j exp[i omega (t_i - t_j)] K(t_i, t_j)`.
    pub fn spectrum(&self, grid: &FrequencyGrid) -> Spectrum {
        let omega = grid.points();
        let values = exec::map_slice(&omega, |&w| self.evaluate(w));
        Spectrum { omega, values }
    }

    pub fn evaluate(&self, omega: f64) -> f64 {
        const RESYNC: usize = 256;
        let step = C64::from_polar(1.0, omega * self.dt);
        let mut acc = 0.0;
        let mut phase = C64::new(1.0, 0.0);
        for (d, s) in self.sums.iter().enumerate().skip(1) {
            phase = if d % RESYNC == 0 {
                C64::from_polar(1.0, omega * self.dt * d as f64)
            } else {
                phase * step
            };
            acc += (phase * s).re;
        }
        let d0 = self.sums.first().map_or(0.0, |z| z.re);
        (d0 + 2.0 * acc) / (2.0 * PI)
    }
}
