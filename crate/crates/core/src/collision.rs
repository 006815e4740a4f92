//! Discrete collision model of a coherent pulse: the pulse is cut into time
//! bins, each truncated to its vacuum and one-photon levels, and every bin
//! interacts once with the qubit through a pair of Kraus operators.

use num_complex::Complex64 as C64;

use crate::coherent::{apply_real, superoperator_matrix, Autocorrelation, Real4};
use crate::envelope::Envelope;
use crate::error::{invalid, Error, Result};
use crate::exec;
use crate::grid::FrequencyGrid;
use crate::params::{PulseSpec, QubitParams};
use crate::qubit::{Density, Mat2};
use crate::spectrum::{LagSums, Spectrum};

/// Largest admitted mean photon number per bin.
pub const MAX_BIN_WEIGHT: f64 = 0.1;

/// Half-width of the binned window in units of `sigma_t`.
pub const WINDOW_SIGMAS: f64 = 6.0;

/// Time bins covering `[-6 sigma_t, 6 sigma_t]` with amplitudes
/// `alpha_n = alpha(t_n) sqrt(dt)` sampled at bin centers.
#[derive(Clone, Debug, PartialEq)]
pub struct CollisionConfig {
    pub delta_t: f64,
    pub t_start: f64,
    pub alpha: Vec<f64>,
}

impl CollisionConfig {
    pub fn new(pulse: &PulseSpec, delta_t: f64) -> Result<Self> {
        Self::with_window(pulse, delta_t, WINDOW_SIGMAS * pulse.sigma_t())
    }

    /// Bins covering `[-half_width, half_width]`, rounded up to whole bins.
    pub fn with_window(pulse: &PulseSpec, delta_t: f64, half_width: f64) -> Result<Self> {
        let n_bar = pulse.require_coherent()?;
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(invalid("t_max", format!("must be > 0, got {half_width}")));
        }
        if !(delta_t.is_finite() && delta_t > 0.0) {
            return Err(invalid("delta_t", format!("must be > 0, got {delta_t}")));
        }
        let env = pulse.envelope();
        let n_bins = (2.0 * half_width / delta_t).ceil() as usize;
        let t_start = -0.5 * n_bins as f64 * delta_t;
        let alpha: Vec<f64> = (0..n_bins)
            .map(|n| n_bar.sqrt() * env.amplitude(t_start + (n as f64 + 0.5) * delta_t) * delta_t.sqrt())
            .collect();
        let weight = alpha.iter().map(|a| a * a).fold(0.0, f64::max);
        if weight >= MAX_BIN_WEIGHT {
            return Err(Error::BinTooCoarse {
                weight,
                limit: MAX_BIN_WEIGHT,
            });
        }
        Ok(CollisionConfig { delta_t, t_start, alpha })
    }

    pub fn n_bins(&self) -> usize {
        self.alpha.len()
    }

    /// Left edge of bin `n`; `edge(n_bins)` closes the window.
    pub fn edge(&self, n: usize) -> f64 {
        self.t_start + n as f64 * self.delta_t
    }

    pub fn center(&self, n: usize) -> f64 {
        self.edge(n) + 0.5 * self.delta_t
    }

    /// `sum_n |alpha_n|^2`.
    pub fn photons(&self) -> f64 {
        self.alpha.iter().map(|a| a * a).sum()
    }
}

/// Kraus operators `K_0 = exp(-i w dt sigma_theta / 2)` and
/// `K_1 = exp(-i w dt sigma_theta / 2 - i phi sigma_z / 2)`.
pub fn kraus_operators(params: &QubitParams, delta_t: f64) -> (Mat2, Mat2) {
    let h = 0.5 * params.omega_q() * delta_t;
    let (st, ct) = params.theta().sin_cos();
    let k0 = Mat2::exp_hermitian(0.0, [h * st, 0.0, h * ct]);
    let k1 = Mat2::exp_hermitian(0.0, [h * st, 0.0, h * ct + 0.5 * params.phi()]);
    (k0, k1)
}

/// One bin: `[K_0 rho K_0^+ + |a|^2 K_1 rho K_1^+] / (1 + |a|^2)`.
pub fn collision_step(rho: &Density, alpha_n: C64, params: &QubitParams, delta_t: f64) -> Result<Density> {
    let w = alpha_n.norm_sqr();
    if w >= MAX_BIN_WEIGHT {
        return Err(Error::BinTooCoarse {
            weight: w,
            limit: MAX_BIN_WEIGHT,
        });
    }
    let (k0, k1) = kraus_operators(params, delta_t);
    let out = rho.0.conjugate_by(&k0) + rho.0.conjugate_by(&k1) * w;
    Ok(Density(out * (1.0 / (1.0 + w))))
}

/// Collision model for one pulse, parameter set and bin width.
#[derive(Clone, Debug)]
pub struct CollisionModel {
    config: CollisionConfig,
    params: QubitParams,
    renormalize: bool,
    k0: Mat2,
    k1: Mat2,
    a0: Real4,
    a1: Real4,
}

impl CollisionModel {
    /// Per-bin trace renormalization is on.
    pub fn new(pulse: &PulseSpec, params: &QubitParams, delta_t: f64) -> Result<Self> {
        Ok(Self::from_config(CollisionConfig::new(pulse, delta_t)?, params))
    }

    pub fn from_config(config: CollisionConfig, params: &QubitParams) -> Self {
        let (k0, k1) = kraus_operators(params, config.delta_t);
        CollisionModel {
            config,
            params: *params,
            renormalize: true,
            k0,
            k1,
            a0: superoperator_matrix(|x| x.conjugate_by(&k0)),
            a1: superoperator_matrix(|x| x.conjugate_by(&k1)),
        }
    }

    /// With renormalization off each bin carries the factor `exp(-|alpha_n|^2)`.
    pub fn with_renormalization(mut self, on: bool) -> Self {
        self.renormalize = on;
        self
    }

    pub fn config(&self) -> &CollisionConfig {
        &self.config
    }

    fn norm_factor(&self, n: usize) -> f64 {
        let w = self.config.alpha[n].powi(2);
        if self.renormalize {
            1.0 / (1.0 + w)
        } else {
            (-w).exp()
        }
    }

    fn bin_map(&self, n: usize) -> Real4 {
        let w = self.config.alpha[n].powi(2);
        let f = self.norm_factor(n);
        std::array::from_fn(|i| std::array::from_fn(|j| f * (self.a0[i][j] + w * self.a1[i][j])))
    }

    /// Qubit states at every bin edge, as Pauli coefficients `(Tr, X, Y, Z)`.
    pub fn evolve(&self, rho0: &Density) -> Vec<[f64; 4]> {
        let c = rho0.0.to_pauli();
        let mut state = [c[0], c[1], c[2], c[3]];
        let mut out = Vec::with_capacity(self.config.n_bins() + 1);
        out.push(state.map(|z| z.re));
        for n in 0..self.config.n_bins() {
            state = apply_real(&self.bin_map(n), &state);
            out.push(state.map(|z| z.re));
        }
        out
    }

    /// `<a_m^+ a_n>` for `m = n, n+1, ..`, handed to `sink(m, value)`.
    fn correlations_from(&self, states: &[[f64; 4]], n: usize, mut sink: impl FnMut(usize, C64)) {
        let a = &self.config.alpha;
        let rho = Mat2::from_pauli(states[n].map(|v| C64::new(v, 0.0)));
        let fn_ = self.norm_factor(n);
        sink(n, rho.trace() * (a[n] * a[n] * fn_));
        let mut x = (self.k1 * rho * self.k0.adjoint()).to_pauli();
        let readout = self.k1.adjoint() * self.k0;
        let weights: [C64; 4] = Mat2::pauli_basis().map(|s| (readout * s).trace() * 0.5);
        for m in n + 1..self.config.n_bins() {
            let value: C64 = (0..4).map(|k| weights[k] * x[k]).sum();
            sink(m, value * (a[m] * a[n] * self.norm_factor(m) * fn_));
            x = apply_real(&self.bin_map(m), &x);
        }
    }

    /// Dense binned autocorrelation `g(s_m, t_n) = <a_m^+ a_n> / dt`.
    pub fn autocorrelation(&self, states: &[[f64; 4]]) -> Autocorrelation {
        let nb = self.config.n_bins();
        let dt = self.config.delta_t;
        let columns = exec::map_range(nb, |n| {
            let mut col = vec![C64::new(0.0, 0.0); nb - n];
            self.correlations_from(states, n, |m, v| col[m - n] = v / dt);
            col
        });
        let mut data = vec![C64::new(0.0, 0.0); nb * nb];
        for (n, col) in columns.iter().enumerate() {
            for (off, v) in col.iter().enumerate() {
                let m = n + off;
                data[m * nb + n] = *v;
                data[n * nb + m] = v.conj();
            }
        }
        Autocorrelation {
            times: (0..nb).map(|n| self.config.center(n)).collect(),
            dt,
            data,
        }
    }

    /// Lag sums of the binned autocorrelation, streamed.
    pub fn lag_sums(&self, states: &[[f64; 4]]) -> LagSums {
        let nb = self.config.n_bins();
        let dt = self.config.delta_t;
        let chunk = crate::exec::REDUCTION_CHUNK;
        let partials = exec::map_range(nb.div_ceil(chunk), |b| {
            let mut acc = vec![C64::new(0.0, 0.0); nb];
            for n in b * chunk..((b + 1) * chunk).min(nb) {
                // K(t_m, t_n) = conj(<a_m^+ a_n>) / dt, weights dt each
                self.correlations_from(states, n, |m, v| acc[m - n] += v.conj() * dt);
            }
            acc
        });
        let mut sums = vec![C64::new(0.0, 0.0); nb];
        for p in &partials {
            for (s, v) in sums.iter_mut().zip(p) {
                *s += v;
            }
        }
        LagSums { dt, sums }
    }

    pub fn spectrum(&self, states: &[[f64; 4]], freq: &FrequencyGrid) -> Spectrum {
        self.lag_sums(states).spectrum(freq)
    }

    pub fn params(&self) -> &QubitParams {
        &self.params
    }
}

/// Dense binned autocorrelation for a configuration and initial state at the
/// start of the binned window.
pub fn discrete_autocorrelation(pulse: &PulseSpec, params: &QubitParams, delta_t: f64, rho0: &Density) -> Result<Autocorrelation> {
    let model = CollisionModel::new(pulse, params, delta_t)?;
    let states = model.evolve(rho0);
    Ok(model.autocorrelation(&states))
}

/// Spectrum of a binned autocorrelation (one quadrature weight `dt` per bin).
pub fn discrete_spectrum(g: &Autocorrelation, freq: &FrequencyGrid) -> Result<Spectrum> {
    if g.hermiticity_defect() > 1e-12 {
        return Err(Error::Contract("binned autocorrelation is not Hermitian".into()));
    }
    let n = g.len();
    let w = vec![g.dt; n];
    let mut kernel = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            kernel[i * n + j] = g.get(j, i);
        }
    }
    Ok(LagSums::from_dense(&kernel, &w, g.dt).spectrum(freq))
}
