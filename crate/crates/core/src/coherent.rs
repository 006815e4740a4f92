//! Coherent pulses: qubit master equation, two-time autocorrelation of the
//! scattered field, its spectrum and the mean output amplitude.
//!
//! Operators are handled through their Pauli coefficients
//! `c_mu = Tr(sigma_mu X)` in the order `(I, x, y, z)`; for a density matrix
//! these are `(1, X, Y, Z)`. States are Schroedinger-picture states.

use num_complex::Complex64 as C64;

use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::exec;
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::params::{PulseSpec, QubitParams};
use crate::qubit::{sigma_theta, Density, Mat2, I};
use crate::spectrum::{LagSums, Spectrum};

/// Largest admitted `dt * max(omega_q, |alpha|^2_max)`.
pub const MAX_STEP_RATE: f64 = 0.05;

pub(crate) type Real4 = [[f64; 4]; 4];

fn mat_mul(a: &Real4, b: &Real4) -> Real4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

fn mat_add(a: &Real4, b: &Real4, s: f64) -> Real4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][j] + s * b[i][j]))
}

fn identity4() -> Real4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 }))
}

pub(crate) fn apply_real(m: &Real4, c: &[C64; 4]) -> [C64; 4] {
    std::array::from_fn(|i| c[0] * m[i][0] + c[1] * m[i][1] + c[2] * m[i][2] + c[3] * m[i][3])
}

/// Matrix of a linear, Hermiticity-preserving map on 2x2 operators in the
/// Pauli coefficient basis.
pub(crate) fn superoperator_matrix(map: impl Fn(&Mat2) -> Mat2) -> Real4 {
    let basis = Mat2::pauli_basis();
    let mut a = [[0.0; 4]; 4];
    for (nu, s_nu) in basis.iter().enumerate() {
        let image = map(s_nu).to_pauli();
        for mu in 0..4 {
            // image of sigma_nu has coefficients Tr(sigma_mu L(sigma_nu)); halve for the 1/2 in X.
            a[mu][nu] = 0.5 * image[mu].re;
        }
    }
    a
}

/// `exp(-i phi sigma_z / 2)`.
pub fn dispersive_kick(phi: f64) -> Mat2 {
    Mat2::exp_hermitian(0.0, [0.0, 0.0, 0.5 * phi])
}

/// Generator `A(t) = A_H + |alpha(t)|^2 A_D` of the master equation in the
/// Pauli basis.
#[derive(Clone, Copy, Debug)]
pub struct Generator {
    pub hamiltonian: Real4,
    pub dissipator: Real4,
}

impl Generator {
    pub fn new(params: &QubitParams) -> Self {
        let h = sigma_theta(params.theta()) * (0.5 * params.omega_q());
        let hamiltonian = superoperator_matrix(|x| (h * *x - *x * h).scale(-I));
        let u = dispersive_kick(params.phi());
        let dissipator = superoperator_matrix(|x| x.conjugate_by(&u) - *x);
        Generator {
            hamiltonian,
            dissipator,
        }
    }

    pub fn at(&self, rate: f64) -> Real4 {
        mat_add(&self.hamiltonian, &self.dissipator, rate)
    }
}

/// Master-equation solver for one pulse on one time grid.
#[derive(Clone, Debug)]
pub struct MasterEquation {
    params: QubitParams,
    grid: TimeGrid,
    alpha: Vec<f64>,
    steps: Vec<Real4>,
}

impl MasterEquation {
    pub fn new(pulse: &PulseSpec, params: &QubitParams, grid: TimeGrid) -> Result<Self> {
        let n_bar = pulse.require_coherent()?;
        let env = pulse.envelope();
        let peak_rate = n_bar * env.intensity(0.0);
        let rate = params.omega_q().max(peak_rate);
        if grid.dt() * rate > MAX_STEP_RATE * (1.0 + 1e-12) {
            return Err(Error::Resolution {
                detail: format!(
                    "dt * max(omega_q, |alpha|^2) = {:.4} exceeds {MAX_STEP_RATE}",
                    grid.dt() * rate
                ),
                suggestion: format!("n_time >= {}", TimeGrid::points_for(grid.t_max(), MAX_STEP_RATE / rate)),
            });
        }
        let gen = Generator::new(params);
        let h = grid.dt();
        let flux = |t: f64| n_bar * env.intensity(t);
        let alpha = grid.points().iter().map(|&t| n_bar.sqrt() * env.amplitude(t)).collect();
        let steps = (0..grid.len() - 1)
            .map(|k| {
                let t = grid.t(k);
                rk4_step(&gen.at(flux(t)), &gen.at(flux(t + 0.5 * h)), &gen.at(flux(t + h)), h)
            })
            .collect();
        Ok(MasterEquation {
            params: *params,
            grid,
            alpha,
            steps,
        })
    }

    /// Window `+-8 sigma_t` with the coarsest step meeting the resolution bound.
    pub fn default_grid(pulse: &PulseSpec, params: &QubitParams) -> Result<TimeGrid> {
        let n_bar = pulse.require_coherent()?;
        let rate = params.omega_q().max(n_bar * pulse.envelope().intensity(0.0));
        let t_max = 8.0 * pulse.sigma_t();
        TimeGrid::new(t_max, TimeGrid::points_for(t_max, MAX_STEP_RATE / rate), params.omega_q())
    }

    pub fn with_default_grid(pulse: &PulseSpec, params: &QubitParams) -> Result<Self> {
        Self::new(pulse, params, Self::default_grid(pulse, params)?)
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn params(&self) -> &QubitParams {
        &self.params
    }

    /// `alpha(t_i)` on the grid.
    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Integrates from `rho0` at the first grid point.
    pub fn evolve(&self, rho0: &Density) -> MasterEqTrajectory {
        let c0 = rho0.0.to_pauli();
        let mut c = [c0[0].re, c0[1].re, c0[2].re, c0[3].re];
        let mut states = Vec::with_capacity(self.grid.len());
        states.push(c);
        for step in &self.steps {
            c = std::array::from_fn(|i| (0..4).map(|k| step[i][k] * c[k]).sum());
            states.push(c);
        }
        MasterEqTrajectory {
            grid: self.grid.clone(),
            states,
        }
    }

    /// `Tr{e^{+i phi sz/2} E_{t_j -> t_k}[e^{-i phi sz/2} rho(t_j)]}` for
    /// `k = j, j+1, ..`, handed to `sink(k, value)`.
    fn conditional_traces(&self, rho_j: &[f64; 4], j: usize, mut sink: impl FnMut(usize, C64)) {
        let kick = dispersive_kick(self.params.phi());
        let rho = Mat2::from_pauli(rho_j.map(|v| C64::new(v, 0.0)));
        let mut c = (kick * rho).to_pauli();
        let (s, co) = (0.5 * self.params.phi()).sin_cos();
        let trace = |c: &[C64; 4]| c[0] * co + I * c[3] * s;
        sink(j, trace(&c));
        for k in j..self.steps.len() {
            c = apply_real(&self.steps[k], &c);
            sink(k + 1, trace(&c));
        }
    }

    /// Dense two-time autocorrelation `g(s_i, t_j)`; memory grows as `N^2`.
    pub fn autocorrelation(&self, traj: &MasterEqTrajectory) -> Autocorrelation {
        let n = self.grid.len();
        let mut data = vec![C64::new(0.0, 0.0); n * n];
        let columns = exec::map_range(n, |j| {
            let mut col = vec![C64::new(0.0, 0.0); n - j];
            self.conditional_traces(&traj.states[j], j, |k, v| col[k - j] = v * (self.alpha[k] * self.alpha[j]));
            col
        });
        for (j, col) in columns.iter().enumerate() {
            for (off, v) in col.iter().enumerate() {
                let k = j + off;
                data[k * n + j] = *v;
                data[j * n + k] = v.conj();
            }
        }
        Autocorrelation {
            times: self.grid.points(),
            dt: self.grid.dt(),
            data,
        }
    }

    /// Lag sums of the autocorrelation, streamed without storing `g`.
    pub fn lag_sums(&self, traj: &MasterEqTrajectory) -> LagSums {
        let n = self.grid.len();
        let w = self.grid.weights();
        let chunk = crate::exec::REDUCTION_CHUNK;
        let partials = exec::map_range(n.div_ceil(chunk), |b| {
            let mut acc = vec![C64::new(0.0, 0.0); n];
            for j in b * chunk..((b + 1) * chunk).min(n) {
                if self.alpha[j] == 0.0 {
                    continue;
                }
                self.conditional_traces(&traj.states[j], j, |k, v| {
                    // kernel K(t_k, t_j) = g(s = t_j, t = t_k) = conj(g(t_k, t_j))
                    acc[k - j] += v.conj() * (self.alpha[k] * self.alpha[j] * w[k] * w[j]);
                });
            }
            acc
        });
        let mut sums = vec![C64::new(0.0, 0.0); n];
        for p in &partials {
            for (s, v) in sums.iter_mut().zip(p) {
                *s += v;
            }
        }
        LagSums { dt: self.grid.dt(), sums }
    }

    /// Output spectrum `(1/2pi) int dt ds e^{-i omega (s - t)} g(s, t)`.
    pub fn spectrum(&self, traj: &MasterEqTrajectory, freq: &FrequencyGrid) -> Spectrum {
        self.lag_sums(traj).spectrum(freq)
    }

    /// Mean output amplitude `alpha(t)[cos(phi/2) - i sin(phi/2) Z(t)]`.
    pub fn mean_output_field(&self, traj: &MasterEqTrajectory) -> Vec<C64> {
        let (s, c) = (0.5 * self.params.phi()).sin_cos();
        self.alpha
            .iter()
            .zip(&traj.states)
            .map(|(&a, st)| C64::new(c, -s * st[3] / st[0]) * a)
            .collect()
    }
}

fn rk4_step(a0: &Real4, am: &Real4, a1: &Real4, h: f64) -> Real4 {
    let id = identity4();
    let k1 = *a0;
    let k2 = mat_mul(am, &mat_add(&id, &k1, 0.5 * h));
    let k3 = mat_mul(am, &mat_add(&id, &k2, 0.5 * h));
    let k4 = mat_mul(a1, &mat_add(&id, &k3, h));
    let mut sum = mat_add(&k1, &k4, 1.0);
    sum = mat_add(&sum, &k2, 2.0);
    sum = mat_add(&sum, &k3, 2.0);
    mat_add(&id, &sum, h / 6.0)
}

/// Qubit state sampled on the solver grid, as Pauli coefficients `(1, X, Y, Z)`.
#[derive(Clone, Debug)]
pub struct MasterEqTrajectory {
    pub grid: TimeGrid,
    pub states: Vec<[f64; 4]>,
}

impl MasterEqTrajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn bloch(&self, i: usize) -> [f64; 3] {
        let s = &self.states[i];
        [s[1], s[2], s[3]]
    }

    pub fn density(&self, i: usize) -> Density {
        Density(Mat2::from_pauli(self.states[i].map(|v| C64::new(v, 0.0))))
    }

    pub fn last(&self) -> Density {
        self.density(self.len() - 1)
    }

    pub fn max_bloch_norm(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s[1] * s[1] + s[2] * s[2] + s[3] * s[3]).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Dense two-time autocorrelation, row major in `(s, t)`.
#[derive(Clone, Debug)]
pub struct Autocorrelation {
    pub times: Vec<f64>,
    pub dt: f64,
    pub data: Vec<C64>,
}

impl Autocorrelation {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `g(s_i, t_j)`.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.len() + j]
    }

    /// `max |g(s, t)^* - g(t, s)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.get(i, j).conj() - self.get(j, i)).norm());
            }
        }
        worst
    }
}

/// Integrates the master equation from `rho0` at `-t_max`.
pub fn evolve_master_equation(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, grid: &TimeGrid) -> Result<MasterEqTrajectory> {
    Ok(MasterEquation::new(pulse, params, grid.clone())?.evolve(rho0))
}

/// Dense autocorrelation of the scattered field.
pub fn autocorrelation(traj: &MasterEqTrajectory, pulse: &PulseSpec, params: &QubitParams) -> Result<Autocorrelation> {
    Ok(MasterEquation::new(pulse, params, traj.grid.clone())?.autocorrelation(traj))
}

/// Spectrum of a dense autocorrelation.
pub fn output_spectrum_coherent(g: &Autocorrelation, freq: &FrequencyGrid) -> Spectrum {
    let n = g.len();
    let w = crate::grid::trapezoid_weights(n, g.dt);
    let mut kernel = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            kernel[i * n + j] = g.get(j, i);
        }
    }
    LagSums::from_dense(&kernel, &w, g.dt).spectrum(freq)
}

/// Mean output amplitude on the trajectory's grid.
pub fn mean_output_field(traj: &MasterEqTrajectory, pulse: &PulseSpec, params: &QubitParams) -> Result<Vec<C64>> {
    Ok(MasterEquation::new(pulse, params, traj.grid.clone())?.mean_output_field(traj))
}
