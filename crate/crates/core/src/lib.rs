//! Dispersive pre-measurement of a qubit by a traveling light pulse in a
//! chiral waveguide.
//!
//! Four computational paths share the parameter types in this crate:
//!
//! * [`single_photon`]: closed-form one-photon scattering,
//! * [`fock`]: exact jump-trajectory expansion for `n <= 3` photons,
//! * [`coherent`]: master equation and two-time autocorrelation for coherent pulses,
//! * [`collision`]: discrete time-bin collision model for coherent pulses.
//!
//! [`energetics`] ties them together with energy-balance and measurement
//! quality metrics. Units: `hbar = 1`, frequencies are offsets from the
//! pulse carrier.

pub mod cli;
pub mod coherent;
pub mod collision;
pub mod energetics;
pub mod envelope;
pub mod error;
pub mod exec;
pub mod fock;
pub mod grid;
pub mod params;
pub mod quadrature;
pub mod qubit;
pub mod scattering;
pub mod single_photon;
pub mod spectrum;

pub use envelope::{coherent_amplitude, gaussian_envelope, gaussian_spectrum, Envelope, Gaussian};
pub use error::{Error, Result};
pub use grid::{FrequencyGrid, TimeGrid};
pub use params::{phi_from_physical, PulseSpec, QubitParams, Statistics};
pub use qubit::{Density, InitialState, Level, Mat2, QubitState};
pub use scattering::{pointer_overlap, scattering_coefficients, ScatteringCoefficients};
pub use spectrum::Spectrum;
