//! Energy bookkeeping between qubit and field, and quality metrics of the
//! pre-measurement of `sigma_z`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::params::{PulseSpec, QubitParams, Statistics};
use crate::qubit::{Density, Level, ThetaBasis};
use crate::scattering::{pointer_overlap, ScatteringCoefficients};
use crate::spectrum::Spectrum;

/// `(omega_q / 2) Tr(sigma_theta rho)`.
pub fn qubit_energy(rho: &Density, params: &QubitParams) -> f64 {
    let [x, _, z] = rho.bloch();
    let (s, c) = params.theta().sin_cos();
    0.5 * params.omega_q() * (x * s + z * c)
}

/// Carrier-relative first-moment difference `int w S_out - int w S_in`.
pub fn field_energy_shift(spectrum_out: &Spectrum, spectrum_in: &Spectrum) -> Result<f64> {
    spectrum_out.ensure_same_grid(spectrum_in)?;
    Ok(spectrum_out.first_moment() - spectrum_in.first_moment())
}

/// Qubit and field energy changes of one scattering event.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub id: String,
    pub de_qubit: f64,
    pub de_field: f64,
    pub residual: f64,
    pub photon_number_in: f64,
    pub photon_number_out: f64,
    /// Admitted `|residual|`, recorded with the report.
    pub tolerance: f64,
}

impl EnergyReport {
    pub const CSV_HEADER: &'static str = "id,dE_qubit,dE_field,residual,n_in,n_out,tolerance,balanced";

    pub fn balanced(&self) -> bool {
        self.residual.abs() <= self.tolerance
    }

    pub fn photon_number_defect(&self) -> f64 {
        (self.photon_number_out - self.photon_number_in).abs() / self.photon_number_in
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
            self.id,
            self.de_qubit,
            self.de_field,
            self.residual,
            self.photon_number_in,
            self.photon_number_out,
            self.tolerance,
            self.balanced()
        )
    }
}

/// Default residual tolerance: `1e-3 omega_q` for one photon and
/// `1% max(|dE_Q|, 0.05 omega_q)` otherwise.
pub fn default_tolerance(statistics: Statistics, de_qubit: f64, omega_q: f64) -> f64 {
    match statistics {
        Statistics::Fock(1) => 1e-3 * omega_q,
        _ => 0.01 * de_qubit.abs().max(0.05 * omega_q),
    }
}

/// Energy balance between the qubit states before and after the pulse and
/// the input and output spectra.
pub fn energy_balance_report(
    id: &str,
    rho_before: &Density,
    rho_after: &Density,
    spectrum_in: &Spectrum,
    spectrum_out: &Spectrum,
    pulse: &PulseSpec,
    params: &QubitParams,
) -> Result<EnergyReport> {
    let de_field = field_energy_shift(spectrum_out, spectrum_in)?;
    let de_qubit = qubit_energy(rho_after, params) - qubit_energy(rho_before, params);
    Ok(EnergyReport {
        id: id.to_string(),
        de_qubit,
        de_field,
        residual: de_qubit + de_field,
        photon_number_in: spectrum_in.integral(),
        photon_number_out: spectrum_out.integral(),
        tolerance: default_tolerance(pulse.statistics(), de_qubit, params.omega_q()),
    })
}

/// Pre-measurement map of the `sigma_z` eigenstates `|+> = |e_z>`,
/// `|-> = |g_z>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementQuality {
    /// `|<psi_++|psi_-->|^2` between normalized pointer states.
    pub pointer_overlap: f64,
    /// Mean of `|c_+-|^2` and `|c_-+|^2`.
    pub flip_probability: f64,
    /// `weights[a][b] = |c_ab|^2`, index 0 for `+` and 1 for `-`.
    pub weights: [[f64; 2]; 2],
}

/// Field component of a single-photon branch as amplitudes on the three
/// spectral shifts `-omega_q, 0, +omega_q`.
type Shifted = [C64; 3];

fn shifted_overlap(u: &Shifted, v: &Shifted, omega_q: f64, sigma_t: f64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..3 {
        for l in 0..3 {
            let d = (k as f64 - l as f64) * omega_q * sigma_t;
            acc += u[k].conj() * v[l] * (-0.5 * d * d).exp();
        }
    }
    acc
}

/// Field left behind when the qubit enters in z level `from` and is found in
/// z level `to` (z index 0 for `e_z`, 1 for `g_z`).
fn single_photon_component(params: &QubitParams, from: usize, to: usize) -> Shifted {
    let basis = ThetaBasis::new(params.theta());
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let mut out = [C64::new(0.0, 0.0); 3];
    for i in [Level::G, Level::E] {
        let b = basis.ket(i)[from].conj();
        for f in [Level::G, Level::E] {
            let slot = match (i, f) {
                (Level::G, Level::E) => 2,
                (Level::E, Level::G) => 0,
                _ => 1,
            };
            out[slot] += basis.ket(f)[to] * c.amplitude(i, f) * b;
        }
    }
    out
}

/// Exact single-photon pre-measurement map.
pub fn measurement_quality_1ph(pulse: &PulseSpec, params: &QubitParams) -> Result<MeasurementQuality> {
    pulse.require_fock(1)?;
    let (w, s) = (params.omega_q(), pulse.sigma_t());
    let comp: [[Shifted; 2]; 2] = std::array::from_fn(|a| std::array::from_fn(|b| single_photon_component(params, a, b)));
    let weights = comp.map(|row| row.map(|u| shifted_overlap(&u, &u, w, s).re));
    let cross = shifted_overlap(&comp[0][0], &comp[1][1], w, s);
    let denom = weights[0][0] * weights[1][1];
    let overlap = if denom > 0.0 { (cross.norm_sqr() / denom).min(1.0) } else { 0.0 };
    Ok(MeasurementQuality {
        pointer_overlap: overlap,
        flip_probability: 0.5 * (weights[0][1] + weights[1][0]),
        weights,
    })
}

/// Closed-form map for a coherent pulse at `theta = 0`: no flips and
/// pointer overlap `exp[-2 n (1 - cos phi)]`.
pub fn measurement_quality_coherent(pulse: &PulseSpec, params: &QubitParams) -> Result<MeasurementQuality> {
    let n_bar = pulse.require_coherent()?;
    if params.theta() != 0.0 {
        return Err(Error::UnsupportedStatistics(
            "measurement quality of coherent pulses is available only for theta = 0".into(),
        ));
    }
    Ok(MeasurementQuality {
        pointer_overlap: pointer_overlap(n_bar, params.phi()),
        flip_probability: 0.0,
        weights: [[1.0, 0.0], [0.0, 1.0]],
    })
}

/// Dispatches on the pulse statistics.
pub fn measurement_quality(pulse: &PulseSpec, params: &QubitParams) -> Result<MeasurementQuality> {
    match pulse.statistics() {
        Statistics::Fock(1) => measurement_quality_1ph(pulse, params),
        Statistics::Coherent(_) => measurement_quality_coherent(pulse, params),
        Statistics::Fock(n) => Err(Error::UnsupportedStatistics(format!(
            "measurement quality for {n}-photon Fock pulses"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::FrequencyGrid;
    use crate::qubit::QubitState;
    use crate::single_photon::{final_qubit_state, input_spectrum, output_spectrum_1ph};
    use std::f64::consts::PI;

    #[test]
    fn qubit_energy_examples() {
        let p = QubitParams::new(1.0, PI / 3.0, 1.0).unwrap();
        let ground = QubitState::ground().density(p.theta());
        assert!((qubit_energy(&ground, &p) + 0.5).abs() < 1e-15);
        assert!(qubit_energy(&Density::maximally_mixed(), &p).abs() < 1e-15);
        let gz = Density::from_bloch(0.0, 0.0, -1.0);
        assert!((qubit_energy(&gz, &p) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn field_shift_needs_matching_grids() {
        let a = Spectrum::new(vec![0.0, 1.0], vec![1.0, 1.0]);
        let b = Spectrum::new(vec![0.0, 2.0], vec![1.0, 1.0]);
        assert_eq!(field_energy_shift(&a, &a).unwrap(), 0.0);
        assert!(matches!(field_energy_shift(&a, &b), Err(Error::Contract(_))));
    }

    fn single_photon_report(theta: f64, phi: f64) -> EnergyReport {
        let p = QubitParams::new(1.0, theta, phi).unwrap();
        let pulse = PulseSpec::fock(5.0, 1).unwrap();
        let grid = FrequencyGrid::default_for(1.0, 5.0);
        let q = QubitState::ground();
        let rho0 = q.density(theta);
        let out = output_spectrum_1ph(&q, &pulse, &p, &grid).unwrap();
        let after = final_qubit_state(&rho0, &pulse, &p).unwrap();
        energy_balance_report("t", &rho0, &after, &input_spectrum(&pulse, &grid), &out, &pulse, &p).unwrap()
    }

    #[test]
    fn deterministic_flip_moves_one_quantum() {
        let r = single_photon_report(PI / 2.0, PI);
        assert!((r.de_qubit - 1.0).abs() < 1e-8);
        assert!((r.de_field + 1.0).abs() < 1e-6);
        assert!(r.balanced());
    }

    #[test]
    fn partial_flip_moves_a_quarter() {
        let r = single_photon_report(PI / 6.0, PI);
        assert!((r.de_field + 0.25).abs() < 1e-6);
        assert!((r.de_qubit - 0.25).abs() < 1e-6);
    }

    #[test]
    fn qnd_exchanges_nothing() {
        let r = single_photon_report(0.0, 1.3);
        assert!(r.de_qubit.abs() < 1e-12 && r.de_field.abs() < 1e-6);
    }

    #[test]
    fn coherent_qnd_quality() {
        let pulse = PulseSpec::coherent(1.0, 3.0).unwrap();
        let q = measurement_quality(&pulse, &QubitParams::new(1.0, 0.0, 1.1).unwrap()).unwrap();
        assert_eq!(q.flip_probability, 0.0);
        assert!((q.pointer_overlap - (-6.0 * (1.0 - 1.1f64.cos())).exp()).abs() < 1e-15);
        let none = measurement_quality(&pulse, &QubitParams::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(none.pointer_overlap, 1.0);
        assert!(measurement_quality(&pulse, &QubitParams::new(1.0, 0.3, 1.0).unwrap()).is_err());
    }

    #[test]
    fn single_photon_map_weights() {
        let pulse = PulseSpec::fock(5.0, 1).unwrap();
        let p = QubitParams::new(1.0, PI / 6.0, PI).unwrap();
        let q = measurement_quality_1ph(&pulse, &p).unwrap();
        for row in q.weights {
            assert!((row[0] + row[1] - 1.0).abs() < 1e-12);
        }
        // agrees with the reduced qubit state after the pulse
        let after = final_qubit_state(&Density::from_bloch(0.0, 0.0, 1.0), &pulse, &p).unwrap();
        assert!((after.0.get(1, 1).re - q.weights[0][1]).abs() < 1e-8);
        assert!((0.0..=1.0).contains(&q.pointer_overlap));
    }
}
