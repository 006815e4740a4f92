//! Closed-form scattering of a single-photon pulse.
//!
//! Qubit states are interaction-picture states: the state free evolution
//! would bring the qubit to at `t = 0`, the center of the pulse.

use num_complex::Complex64 as C64;

use crate::envelope::{Envelope, Gaussian};
use crate::error::{Error, Result};
use crate::grid::FrequencyGrid;
use crate::params::{PulseSpec, QubitParams};
use crate::quadrature::gauss_kronrod;
use crate::qubit::{Density, Level, Mat2, QubitState, ThetaBasis};
use crate::scattering::ScatteringCoefficients;
use crate::spectrum::Spectrum;

/// One term `amplitude |final> (x) psi(omega + shift)` of the scattered state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branch {
    pub initial: Level,
    pub final_level: Level,
    pub amplitude: C64,
    /// The field wavefunction is the input one evaluated at `omega + shift`.
    pub shift: f64,
}

/// Qubit-field state after the photon has passed, kept as branch amplitudes
/// and field wavefunctions sampled separately on a frequency grid.
#[derive(Clone, Debug)]
pub struct SinglePhotonFinalState {
    pub branches: [Branch; 4],
    pub omega: Vec<f64>,
    /// `fields[k][i]` is the field wavefunction of branch `k` at `omega[i]`.
    pub fields: [Vec<f64>; 4],
}

impl SinglePhotonFinalState {
    /// Squared norm of the joint state, `sum_k |amplitude_k|^2`.
    pub fn norm(&self) -> f64 {
        self.branches.iter().map(|b| b.amplitude.norm_sqr()).sum()
    }

    /// Joint amplitude with the qubit in `level`, sampled on the grid.
    pub fn sector(&self, level: Level) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.omega.len()];
        for (b, f) in self.branches.iter().zip(&self.fields) {
            if b.final_level == level {
                for (o, v) in out.iter_mut().zip(f) {
                    *o += b.amplitude * v;
                }
            }
        }
        out
    }
}

fn require_single(pulse: &PulseSpec) -> Result<Gaussian> {
    match pulse.require_fock(1) {
        Ok(1) => Ok(pulse.envelope()),
        Ok(n) | Err(Error::UnsupportedOrder(n)) => Err(Error::UnsupportedStatistics(format!(
            "single-photon path needs a one-photon Fock pulse, got n = {n}"
        ))),
        Err(e) => Err(e),
    }
}

fn branches(b_g: C64, b_e: C64, params: &QubitParams) -> [Branch; 4] {
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let w = params.omega_q();
    let mk = |initial: Level, final_level: Level, amp: C64, shift: f64| Branch {
        initial,
        final_level,
        amplitude: amp * c.amplitude(initial, final_level),
        shift,
    };
    [
        mk(Level::G, Level::G, b_g, 0.0),
        mk(Level::E, Level::E, b_e, 0.0),
        mk(Level::G, Level::E, b_g, w),
        mk(Level::E, Level::G, b_e, -w),
    ]
}

/// Branch decomposition of the final joint state for a pure initial state.
pub fn final_joint_state(
    qubit: &QubitState,
    pulse: &PulseSpec,
    params: &QubitParams,
    grid: &FrequencyGrid,
) -> Result<SinglePhotonFinalState> {
    let env = require_single(pulse)?;
    let (b_g, b_e) = match *qubit {
        QubitState::Pure { b_g, b_e } => (b_g, b_e),
        QubitState::Bloch { .. } => {
            return Err(Error::Contract("the joint final state needs a pure qubit state".into()))
        }
    };
    let branches = branches(b_g, b_e, params);
    let omega = grid.points();
    let fields = branches.map(|b| omega.iter().map(|w| env.spectral_amplitude(w + b.shift)).collect());
    Ok(SinglePhotonFinalState {
        branches,
        omega,
        fields,
    })
}

/// Output spectral density at `omega` for an initial density matrix given in
/// the `(g_theta, e_theta)` basis.
pub fn spectral_density(rho_theta: &Mat2, env: &Gaussian, params: &QubitParams, omega: f64) -> f64 {
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let w = params.omega_q();
    let p0 = env.spectral_amplitude(omega);
    let red = env.spectral_amplitude(omega + w);
    let blue = env.spectral_amplitude(omega - w);
    let rho_gg = rho_theta.get(0, 0).re;
    let rho_ee = rho_theta.get(1, 1).re;
    let stay = c.stay_probability();
    let jump = c.jump_probability();
    rho_gg * (stay * p0 * p0 + jump * red * red)
        + rho_ee * (stay * p0 * p0 + jump * blue * blue)
        + interference(rho_theta, &c, p0, red, blue)
}

fn interference(rho_theta: &Mat2, c: &ScatteringCoefficients, p0: f64, red: f64, blue: f64) -> f64 {
    // b_g^* b_e is the (e, g) element of the density matrix.
    let coherence = rho_theta.get(1, 0);
    2.0 * (coherence * c.eg * c.gg.conj() * (p0 * blue - red * p0)).re
}

/// Interference part of the output spectrum; vanishes when either level is unpopulated.
pub fn interference_term(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, omega: f64) -> Result<f64> {
    let env = require_single(pulse)?;
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let w = params.omega_q();
    let rho = rho0.in_theta_basis(params.theta());
    Ok(interference(
        &rho,
        &c,
        env.spectral_amplitude(omega),
        env.spectral_amplitude(omega + w),
        env.spectral_amplitude(omega - w),
    ))
}

/// Output spectrum for an arbitrary (possibly mixed) initial qubit state.
pub fn output_spectrum(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, grid: &FrequencyGrid) -> Result<Spectrum> {
    let env = require_single(pulse)?;
    let rho = rho0.in_theta_basis(params.theta());
    Ok(Spectrum::from_fn(grid, |w| spectral_density(&rho, &env, params, w)))
}

/// Output spectrum for a pure initial state.
pub fn output_spectrum_1ph(
    qubit: &QubitState,
    pulse: &PulseSpec,
    params: &QubitParams,
    grid: &FrequencyGrid,
) -> Result<Spectrum> {
    output_spectrum(&qubit.density(params.theta()), pulse, params, grid)
}

/// Input spectrum `|psi(omega)|^2`.
pub fn input_spectrum(pulse: &PulseSpec, grid: &FrequencyGrid) -> Spectrum {
    let env = pulse.envelope();
    Spectrum::from_fn(grid, |w| env.spectral_density(w))
}

/// Reduced qubit state at time `t` while the photon passes (interaction
/// picture, z basis), by adaptive quadrature over the collision time.
pub fn qubit_state_during_scattering(
    qubit0: &Density,
    pulse: &PulseSpec,
    params: &QubitParams,
    t: f64,
) -> Result<Density> {
    let env = require_single(pulse)?;
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let basis = ThetaBasis::new(params.theta());
    let rho0 = basis.from_z(&qubit0.0);
    let lo = -12.0 * env.sigma_t();
    let not_yet = 1.0 - env.cumulative_intensity(t);
    let mut rho = rho0.scale_re(not_yet);
    if t > lo {
        let w = params.omega_q();
        let v = gauss_kronrod(
            |u| {
                let m = c.collision_operator(w, u);
                let r = rho0.conjugate_by(&m).scale_re(env.intensity(u));
                pack(&r)
            },
            lo,
            t,
            1e-10,
        );
        rho += unpack(&v);
    }
    Ok(Density(basis.to_z(&rho)))
}

/// Qubit state after the photon has left.
pub fn final_qubit_state(qubit0: &Density, pulse: &PulseSpec, params: &QubitParams) -> Result<Density> {
    let t_end = 12.0 * pulse.sigma_t();
    qubit_state_during_scattering(qubit0, pulse, params, t_end)
}

fn pack(m: &Mat2) -> [f64; 8] {
    let a = &m.0;
    [
        a[0][0].re, a[0][0].im, a[0][1].re, a[0][1].im, a[1][0].re, a[1][0].im, a[1][1].re, a[1][1].im,
    ]
}

fn unpack(v: &[f64; 8]) -> Mat2 {
    Mat2::new(
        C64::new(v[0], v[1]),
        C64::new(v[2], v[3]),
        C64::new(v[4], v[5]),
        C64::new(v[6], v[7]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn setup(theta: f64, phi: f64, sigma: f64) -> (QubitParams, PulseSpec, FrequencyGrid) {
        let p = QubitParams::new(1.0, theta, phi).unwrap();
        let pulse = PulseSpec::fock(sigma, 1).unwrap();
        (p, pulse, FrequencyGrid::default_for(1.0, sigma))
    }

    #[test]
    fn branch_weights_at_tilt_pi_over_6() {
        let (p, pulse, grid) = setup(PI / 6.0, PI, 5.0);
        let st = final_joint_state(&QubitState::ground(), &pulse, &p, &grid).unwrap();
        assert!((st.branches[0].amplitude.norm_sqr() - 0.75).abs() < 1e-14);
        assert!((st.branches[2].amplitude.norm_sqr() - 0.25).abs() < 1e-14);
        assert!((st.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn full_flip_leaves_single_red_branch() {
        let (p, pulse, grid) = setup(PI / 2.0, PI, 5.0);
        let st = final_joint_state(&QubitState::ground(), &pulse, &p, &grid).unwrap();
        let live: Vec<_> = st.branches.iter().filter(|b| b.amplitude.norm() > 1e-14).collect();
        assert_eq!(live.len(), 1);
        assert_eq!(live[0].final_level, Level::E);
        assert!((live[0].amplitude - C64::new(0.0, 1.0)).norm() < 1e-14);
        assert_eq!(live[0].shift, 1.0);
    }

    #[test]
    fn rejects_other_statistics() {
        let (p, _, grid) = setup(0.3, 0.3, 5.0);
        let two = PulseSpec::fock(5.0, 2).unwrap();
        assert!(matches!(
            output_spectrum_1ph(&QubitState::ground(), &two, &p, &grid),
            Err(Error::UnsupportedStatistics(_))
        ));
        let coh = PulseSpec::coherent(5.0, 1.0).unwrap();
        assert!(output_spectrum_1ph(&QubitState::ground(), &coh, &p, &grid).is_err());
    }

    #[test]
    fn state_before_arrival_is_initial() {
        let (p, pulse, _) = setup(PI / 3.0, 2.0, 2.0);
        let rho0 = Density::from_bloch(0.3, 0.5, -0.6);
        let r = qubit_state_during_scattering(&rho0, &pulse, &p, -6.0 * 2.0).unwrap();
        assert!(r.0.approx_eq(&rho0.0, 1e-8));
    }
}
