//! Physical parameters of the qubit and the incoming pulse.

use std::f64::consts::PI;

use crate::envelope::Gaussian;
use crate::error::{invalid, Error, Result};

/// Qubit frequency, Hamiltonian tilt and dispersive phase per photon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitParams {
    omega_q: f64,
    theta: f64,
    phi: f64,
}

impl QubitParams {
    /// `phi` is wrapped into `(-pi, pi]`.
    pub fn new(omega_q: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(omega_q.is_finite() && omega_q > 0.0) {
            return Err(invalid("omega_q", format!("must be finite and > 0, got {omega_q}")));
        }
        if !(theta.is_finite() && (0.0..=PI).contains(&theta)) {
            return Err(invalid("theta", format!("must lie in [0, pi], got {theta}")));
        }
        if !phi.is_finite() {
            return Err(invalid("phi", "must be finite"));
        }
        Ok(QubitParams {
            omega_q,
            theta,
            phi: wrap_phase(phi),
        })
    }

    pub fn omega_q(&self) -> f64 {
        self.omega_q
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(phi: f64) -> f64 {
    let r = phi.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Dispersive phase `chi_0 L / v_0`, wrapped into `(-pi, pi]`.
pub fn phi_from_physical(chi_0: f64, length: f64, v_0: f64) -> Result<f64> {
    if !(v_0.is_finite() && v_0 > 0.0) {
        return Err(invalid("v_0", format!("must be > 0, got {v_0}")));
    }
    if !(length.is_finite() && length > 0.0) {
        return Err(invalid("L", format!("must be > 0, got {length}")));
    }
    if !chi_0.is_finite() {
        return Err(invalid("chi_0", "must be finite"));
    }
    Ok(wrap_phase(chi_0 * length / v_0))
}

/// Photon statistics of the pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Statistics {
    Fock(usize),
    Coherent(f64),
}

/// Gaussian pulse with a given duration and photon statistics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSpec {
    sigma_t: f64,
    statistics: Statistics,
}

impl PulseSpec {
    pub fn new(sigma_t: f64, statistics: Statistics) -> Result<Self> {
        if !(sigma_t.is_finite() && sigma_t > 0.0) {
            return Err(invalid("sigma_t", format!("must be > 0, got {sigma_t}")));
        }
        match statistics {
            Statistics::Fock(0) => return Err(invalid("photons", "Fock number must be positive")),
            Statistics::Coherent(n) if !(n.is_finite() && n >= 0.0) => {
                return Err(invalid("n_bar", format!("must be >= 0, got {n}")))
            }
            _ => {}
        }
        Ok(PulseSpec { sigma_t, statistics })
    }

    pub fn fock(sigma_t: f64, n: usize) -> Result<Self> {
        Self::new(sigma_t, Statistics::Fock(n))
    }

    pub fn coherent(sigma_t: f64, n_bar: f64) -> Result<Self> {
        Self::new(sigma_t, Statistics::Coherent(n_bar))
    }

    pub fn sigma_t(&self) -> f64 {
        self.sigma_t
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn envelope(&self) -> Gaussian {
        Gaussian::new_unchecked(self.sigma_t)
    }

    /// Mean photon number.
    pub fn mean_photons(&self) -> f64 {
        match self.statistics {
            Statistics::Fock(n) => n as f64,
            Statistics::Coherent(n) => n,
        }
    }

    pub(crate) fn require_fock(&self, max: usize) -> Result<usize> {
        match self.statistics {
            Statistics::Fock(n) if n <= max => Ok(n),
            Statistics::Fock(n) => Err(Error::UnsupportedOrder(n)),
            Statistics::Coherent(_) => Err(Error::UnsupportedStatistics(
                "a Fock pulse is required on this path".into(),
            )),
        }
    }

    pub(crate) fn require_coherent(&self) -> Result<f64> {
        match self.statistics {
            Statistics::Coherent(n) => Ok(n),
            Statistics::Fock(_) => Err(Error::UnsupportedStatistics(
                "a coherent pulse is required on this path".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_from_physical_constants() {
        assert!((phi_from_physical(PI, 1.0, 1.0).unwrap() - PI).abs() < 1e-15);
        assert_eq!(phi_from_physical(0.0, 1.0, 1.0).unwrap(), 0.0);
        let wrapped = phi_from_physical(3.0 * PI, 1.0, 1.0).unwrap();
        assert!((wrapped.abs() - PI).abs() < 1e-12);
        let kick = |phi: f64| crate::qubit::Mat2::exp_hermitian(0.0, [0.0, 0.0, 0.5 * phi]);
        let rho = crate::qubit::Density::from_bloch(0.3, -0.4, 0.5).0;
        let a = rho.conjugate_by(&kick(wrapped));
        let b = rho.conjugate_by(&kick(3.0 * PI));
        assert!(a.approx_eq(&b, 1e-12));
        assert!(phi_from_physical(1.0, 1.0, 0.0).is_err());
        assert!(phi_from_physical(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn wrap_is_half_open() {
        assert_eq!(wrap_phase(-PI), PI);
        assert!((wrap_phase(2.0 * PI + 0.5) - 0.5).abs() < 1e-12);
        assert!((wrap_phase(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range_tilt() {
        let err = QubitParams::new(1.0, 5.0 * PI, 0.0).unwrap_err();
        assert!(err.to_string().contains("theta"));
        assert!(QubitParams::new(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn pulse_validation() {
        assert!(PulseSpec::fock(0.0, 1).is_err());
        assert!(PulseSpec::fock(1.0, 0).is_err());
        assert!(PulseSpec::coherent(1.0, -1.0).is_err());
        assert_eq!(PulseSpec::fock(1.0, 4).unwrap().require_fock(3), Err(Error::UnsupportedOrder(4)));
    }
}
