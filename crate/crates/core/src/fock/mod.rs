//! Exact scattering of `n <= 3` photon Fock pulses through the jump-trajectory
//! expansion.

mod qubit_state;
mod rdm;
mod trajectory;

use num_complex::Complex64 as C64;

pub use qubit_state::{qubit_reduced_state_fock, qubit_states_fock};
pub use rdm::{OnePhotonRdm, RdmKernel};
pub use trajectory::{enumerate_trajectories, trajectory_phase, Jump, Trajectory, MAX_PHOTONS};

use crate::error::Result;
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::params::{PulseSpec, QubitParams};
use crate::quadrature::PanelRule;
use crate::qubit::{Density, Level};
use crate::spectrum::{LagSums, Spectrum};
use rdm::Cumulants;

/// Gauss-Legendre nodes per grid interval for running integrals.
pub const PANEL_ORDER: usize = 8;

/// Uniform time grid plus a composite Gauss-Legendre rule with one panel per
/// grid interval.
#[derive(Clone, Debug)]
pub struct FockGrid {
    time: TimeGrid,
    rule: PanelRule,
}

impl FockGrid {
    pub fn new(t_max: f64, n_points: usize, omega_q: f64) -> Result<Self> {
        let time = TimeGrid::new(t_max, n_points, omega_q)?;
        let rule = PanelRule::new(-t_max, t_max, n_points - 1, PANEL_ORDER);
        Ok(FockGrid { time, rule })
    }

    /// Window `+-10 sigma_t`, `dt <= min(0.08 / omega_q, sigma_t / 4)`, at
    /// least 512 points.
    pub fn default_for(pulse: &PulseSpec, omega_q: f64) -> Self {
        let t_max = 10.0 * pulse.sigma_t();
        let dt = (0.08 / omega_q).min(0.25 * pulse.sigma_t());
        let n = TimeGrid::points_for(t_max, dt).max(512);
        Self::new(t_max, n, omega_q).expect("default grid satisfies the resolution bound")
    }

    pub fn time(&self) -> &TimeGrid {
        &self.time
    }

    pub fn rule(&self) -> &PanelRule {
        &self.rule
    }
}

/// Exact n-photon solver with running integrals cached for one pulse.
pub struct FockSolver {
    params: QubitParams,
    photons: usize,
    grid: FockGrid,
    cumulants: Cumulants,
}

impl FockSolver {
    pub fn new(pulse: &PulseSpec, params: &QubitParams, grid: FockGrid) -> Result<Self> {
        let photons = pulse.require_fock(MAX_PHOTONS)?;
        let cumulants = Cumulants::new(&grid, &pulse.envelope(), params.omega_q());
        Ok(FockSolver {
            params: *params,
            photons,
            grid,
            cumulants,
        })
    }

    pub fn with_default_grid(pulse: &PulseSpec, params: &QubitParams) -> Result<Self> {
        Self::new(pulse, params, FockGrid::default_for(pulse, params.omega_q()))
    }

    pub fn photons(&self) -> usize {
        self.photons
    }

    pub fn grid(&self) -> &FockGrid {
        &self.grid
    }

    pub fn trajectories(&self, initial: Level) -> Vec<Trajectory> {
        enumerate_trajectories(self.photons, initial, &self.params).expect("photon number validated")
    }

    /// Weighted sum of pair reduced density matrices.
    pub fn kernel(&self, pairs: &[(&Trajectory, &Trajectory, C64)]) -> Result<RdmKernel<'_>> {
        RdmKernel::new(&self.cumulants, pairs)
    }

    /// Single-photon reduced density matrix of one trajectory.
    pub fn trajectory_rdm(&self, traj: &Trajectory) -> Result<OnePhotonRdm> {
        let k = self.kernel(&[(traj, traj, C64::new(1.0, 0.0))])?;
        Ok(self.densify(&k))
    }

    /// Cross term `int F_P(t, ..) F_Q(t', ..)^*` of two trajectories.
    pub fn pair_rdm(&self, p: &Trajectory, q: &Trajectory) -> Result<OnePhotonRdm> {
        let k = self.kernel(&[(p, q, C64::new(1.0, 0.0))])?;
        Ok(self.densify(&k))
    }

    fn densify(&self, k: &RdmKernel<'_>) -> OnePhotonRdm {
        OnePhotonRdm {
            times: self.grid.time.points(),
            weights: self.grid.time.weights(),
            data: k.dense(),
        }
    }

    fn lags(&self, k: &RdmKernel<'_>) -> LagSums {
        k.lag_sums(&self.grid.time.weights(), self.grid.time.dt())
    }

    /// Spectrum of one trajectory wavefunction, normalized to one.
    pub fn trajectory_spectrum(&self, traj: &Trajectory, freq: &FrequencyGrid) -> Result<Spectrum> {
        let k = self.kernel(&[(traj, traj, C64::new(1.0, 0.0))])?;
        Ok(self.lags(&k).spectrum(freq))
    }

    /// Physical output spectrum (integrating to `n`) for an
    /// interaction-picture initial state.
    pub fn output_spectrum(&self, rho0: &Density, freq: &FrequencyGrid) -> Result<Spectrum> {
        let rho = rho0.in_theta_basis(self.params.theta());
        let all: Vec<Trajectory> = [Level::G, Level::E]
            .into_iter()
            .flat_map(|l| self.trajectories(l))
            .collect();
        let mut pairs = Vec::new();
        for p in &all {
            for q in &all {
                if p.final_level() != q.final_level() {
                    continue;
                }
                let w = rho.get(p.initial.index(), q.initial.index()) * p.coefficient * q.coefficient.conj();
                if w.norm() > 1e-15 {
                    pairs.push((p, q, w));
                }
            }
        }
        if pairs.is_empty() {
            return Ok(Spectrum::from_fn(freq, |_| 0.0));
        }
        let k = self.kernel(&pairs)?;
        Ok(self.lags(&k).spectrum(freq).scaled(self.photons as f64))
    }
}

/// Spectrum of a trajectory wavefunction on the default grid, normalized to one.
pub fn trajectory_spectrum(
    traj: &Trajectory,
    pulse: &PulseSpec,
    params: &QubitParams,
    freq: &FrequencyGrid,
) -> Result<Spectrum> {
    if pulse.require_fock(MAX_PHOTONS)? != traj.photons() {
        return Err(crate::Error::Contract("trajectory length differs from the photon number".into()));
    }
    FockSolver::with_default_grid(pulse, params)?.trajectory_spectrum(traj, freq)
}

/// Physical output spectrum on the default grid.
pub fn output_spectrum_fock(
    rho0: &Density,
    pulse: &PulseSpec,
    params: &QubitParams,
    freq: &FrequencyGrid,
) -> Result<Spectrum> {
    FockSolver::with_default_grid(pulse, params)?.output_spectrum(rho0, freq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::QubitState;
    use std::f64::consts::PI;

    #[test]
    fn coefficients_are_unitary() {
        let p = QubitParams::new(1.0, 0.9, 2.1).unwrap();
        for n in 1..=3 {
            for l in [Level::G, Level::E] {
                let s: f64 = enumerate_trajectories(n, l, &p)
                    .unwrap()
                    .iter()
                    .map(|t| t.coefficient.norm_sqr())
                    .sum();
                assert!((s - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn commuting_case_returns_input() {
        let p = QubitParams::new(1.0, 0.0, 1.2).unwrap();
        let pulse = PulseSpec::fock(2.0, 2).unwrap();
        let freq = FrequencyGrid::default_for(1.0, 2.0);
        let rho = QubitState::pure(C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap().density(0.0);
        let s = output_spectrum_fock(&rho, &pulse, &p, &freq).unwrap();
        let env = pulse.envelope();
        for (w, v) in s.omega().iter().zip(s.values()) {
            assert!((v - 2.0 * env.spectral_density(*w)).abs() < 1e-7);
        }
    }

    #[test]
    fn rdm_trace_and_hermiticity() {
        let p = QubitParams::new(1.0, PI / 3.0, 2.0).unwrap();
        let pulse = PulseSpec::fock(1.5, 3).unwrap();
        let solver = FockSolver::new(&pulse, &p, FockGrid::new(15.0, 301, 1.0).unwrap()).unwrap();
        let t = Trajectory::from_label("GNJN", &p).unwrap();
        let r = solver.trajectory_rdm(&t).unwrap();
        assert!((r.trace() - 1.0).norm() < 1e-8);
        assert!(r.hermiticity_defect() < 1e-10);
    }
}
