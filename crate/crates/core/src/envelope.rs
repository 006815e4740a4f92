//! Pulse envelopes in time and frequency.
//!
//! Fourier convention: `psi(omega) = (2 pi)^(-1/2) int psi(t) exp(+i omega t) dt`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::params::PulseSpec;

/// Real, L2-normalized single-photon envelope.
pub trait Envelope: Send + Sync {
    /// Time-domain amplitude.
    fn amplitude(&self, t: f64) -> f64;

    /// Half-width of the window outside of which the envelope is negligible.
    fn support(&self) -> f64;

    fn intensity(&self, t: f64) -> f64 {
        let a = self.amplitude(t);
        a * a
    }
}

/// Gaussian envelope `(2 pi)^(-1/4) sigma^(-1/2) exp[-(t / 2 sigma)^2]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gaussian {
    sigma_t: f64,
}

impl Gaussian {
    pub fn new(sigma_t: f64) -> Result<Self> {
        if !(sigma_t.is_finite() && sigma_t > 0.0) {
            return Err(invalid("sigma_t", format!("must be > 0, got {sigma_t}")));
        }
        Ok(Gaussian { sigma_t })
    }

    pub(crate) fn new_unchecked(sigma_t: f64) -> Self {
        Gaussian { sigma_t }
    }

    pub fn sigma_t(&self) -> f64 {
        self.sigma_t
    }

    /// Frequency-domain amplitude `(2/pi)^(1/4) sqrt(sigma) exp(-sigma^2 omega^2)`.
    pub fn spectral_amplitude(&self, omega: f64) -> f64 {
        let s = self.sigma_t;
        (2.0 / PI).powf(0.25) * s.sqrt() * (-(s * omega).powi(2)).exp()
    }

    /// Input spectral density `|psi(omega)|^2`.
    pub fn spectral_density(&self, omega: f64) -> f64 {
        let a = self.spectral_amplitude(omega);
        a * a
    }

    /// Frequency dispersion `1 / (2 sigma_t)`.
    pub fn sigma_omega(&self) -> f64 {
        0.5 / self.sigma_t
    }

    /// `int_{-inf}^x |psi(t)|^2 dt`.
    pub fn cumulative_intensity(&self, x: f64) -> f64 {
        0.5 * erfc(-x / (std::f64::consts::SQRT_2 * self.sigma_t))
    }
}

impl Envelope for Gaussian {
    fn amplitude(&self, t: f64) -> f64 {
        let s = self.sigma_t;
        (2.0 * PI).powf(-0.25) / s.sqrt() * (-(t / (2.0 * s)).powi(2)).exp()
    }

    fn support(&self) -> f64 {
        8.0 * self.sigma_t
    }
}

pub fn gaussian_envelope(t: f64, sigma_t: f64) -> Result<f64> {
    Ok(Gaussian::new(sigma_t)?.amplitude(t))
}

pub fn gaussian_spectrum(omega: f64, sigma_t: f64) -> Result<f64> {
    Ok(Gaussian::new(sigma_t)?.spectral_amplitude(omega))
}

/// Coherent amplitude `alpha(t) = sqrt(n_bar) psi(t)`.
pub fn coherent_amplitude(t: f64, pulse: &PulseSpec) -> Result<f64> {
    let n_bar = pulse.require_coherent()?;
    Ok(n_bar.sqrt() * pulse.envelope().amplitude(t))
}

pub use libm::erfc;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn peak_value_and_ratio() {
        assert_relative_eq!(gaussian_envelope(0.0, 1.0).unwrap(), 0.631_618_777_746_065, epsilon = 1e-12);
        let g = Gaussian::new(1.7).unwrap();
        let r = g.intensity(2.0 * 1.7) / g.intensity(0.0);
        assert_relative_eq!(r, (-2.0f64).exp(), epsilon = 1e-14);
        assert!(gaussian_envelope(0.0, 0.0).is_err());
        assert!(gaussian_spectrum(0.0, -1.0).is_err());
    }

    #[test]
    fn erfc_reference_values() {
        assert_relative_eq!(erfc(0.0), 1.0, epsilon = 1e-16);
        assert_relative_eq!(erfc(0.5), 0.479_500_122_186_953_5, max_relative = 1e-14);
        assert_relative_eq!(erfc(1.0), 0.157_299_207_050_285_13, max_relative = 1e-14);
        assert_relative_eq!(erfc(2.5), 4.069_520_174_449_589_7e-4, max_relative = 1e-13);
        assert_relative_eq!(erfc(5.0), 1.537_459_794_428_034_8e-12, max_relative = 1e-12);
        assert_relative_eq!(erfc(-1.0), 1.842_700_792_949_715, max_relative = 1e-14);
    }

    #[test]
    fn heisenberg_limited() {
        let g = Gaussian::new(0.8).unwrap();
        assert_relative_eq!(g.sigma_t() * g.sigma_omega(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn coherent_amplitude_scaling() {
        let p = PulseSpec::coherent(1.0, 4.0).unwrap();
        assert_relative_eq!(coherent_amplitude(0.0, &p).unwrap(), 2.0 * (2.0 * PI).powf(-0.25), epsilon = 1e-14);
        let p0 = PulseSpec::coherent(1.0, 0.0).unwrap();
        assert_eq!(coherent_amplitude(0.3, &p0).unwrap(), 0.0);
        assert!(coherent_amplitude(0.0, &PulseSpec::fock(1.0, 1).unwrap()).is_err());
    }
}
