//! Single-collision scattering amplitudes and pointer-state overlap.

use num_complex::Complex64 as C64;

use crate::qubit::{Level, Mat2};

/// Amplitudes `I_{from, to}` of the single-photon collision map in the
/// Hamiltonian eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScatteringCoefficients {
    pub gg: C64,
    pub ee: C64,
    pub ge: C64,
    pub eg: C64,
}

impl ScatteringCoefficients {
    pub fn new(theta: f64, phi: f64) -> Self {
        let (s, c) = (0.5 * phi).sin_cos();
        let gg = C64::new(c, theta.cos() * s);
        let ge = C64::new(0.0, theta.sin() * s);
        ScatteringCoefficients {
            gg,
            ee: gg.conj(),
            ge,
            eg: ge,
        }
    }

    /// Amplitude for a collision taking the qubit from `from` to `to`.
    pub fn amplitude(&self, from: Level, to: Level) -> C64 {
        match (from, to) {
            (Level::G, Level::G) => self.gg,
            (Level::E, Level::E) => self.ee,
            (Level::G, Level::E) => self.ge,
            (Level::E, Level::G) => self.eg,
        }
    }

    /// No-jump probability `|I_gg|^2`.
    pub fn stay_probability(&self) -> f64 {
        self.gg.norm_sqr()
    }

    /// Jump probability `|I_ge|^2`.
    pub fn jump_probability(&self) -> f64 {
        self.ge.norm_sqr()
    }

    /// Interaction-picture collision operator at time `t`, in the
    /// `(g_theta, e_theta)` basis with `m[to][from]`.
    pub fn collision_operator(&self, omega_q: f64, t: f64) -> Mat2 {
        let up = C64::from_polar(1.0, omega_q * t);
        Mat2::new(self.gg, self.eg * up.conj(), self.ge * up, self.ee)
    }
}

pub fn scattering_coefficients(theta: f64, phi: f64) -> ScatteringCoefficients {
    ScatteringCoefficients::new(theta, phi)
}

/// Squared overlap `exp[-2 n_bar (1 - cos phi)]` between the two coherent pointer states.
pub fn pointer_overlap(n_bar: f64, phi: f64) -> f64 {
    (-2.0 * n_bar.max(0.0) * (1.0 - phi.cos())).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::ThetaBasis;
    use std::f64::consts::PI;

    #[test]
    fn special_values() {
        let c = scattering_coefficients(PI / 2.0, PI);
        assert!(c.gg.norm() < 1e-15 && c.ee.norm() < 1e-15);
        assert!((c.ge - C64::new(0.0, 1.0)).norm() < 1e-15);
        let c = scattering_coefficients(0.0, 0.7);
        assert!((c.gg - C64::from_polar(1.0, 0.35)).norm() < 1e-15);
        assert_eq!(c.ge.norm(), 0.0);
        let c = scattering_coefficients(PI / 6.0, PI);
        assert!((c.gg - C64::new(0.0, 3f64.sqrt() / 2.0)).norm() < 1e-15);
        assert!((c.ge - C64::new(0.0, 0.5)).norm() < 1e-15);
    }

    #[test]
    fn matches_dispersive_unitary_in_eigenbasis() {
        for &(theta, phi) in &[(0.3, 1.1), (PI / 6.0, PI), (2.0, -0.4)] {
            let u = Mat2::exp_hermitian(0.0, [0.0, 0.0, 0.5 * phi]);
            let u_theta = ThetaBasis::new(theta).from_z(&u);
            let c = ScatteringCoefficients::new(theta, phi);
            let m = c.collision_operator(1.0, 0.0);
            assert!(m.approx_eq(&u_theta, 1e-14), "theta={theta} phi={phi}");
        }
    }

    #[test]
    fn overlap_values() {
        assert_eq!(pointer_overlap(3.0, 0.0), 1.0);
        assert!((pointer_overlap(4.0, PI) - (-16.0f64).exp()).abs() < 1e-20);
        assert!((pointer_overlap(20.0, PI / 3.0) - (-20.0f64).exp()).abs() < 1e-20);
    }
}
