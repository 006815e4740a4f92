//! Fast invariant suite behind `dscatter selfcheck`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::energetics::{energy_balance_report, measurement_quality_1ph};
use crate::fock::{enumerate_trajectories, FockSolver};
use crate::grid::FrequencyGrid;
use crate::params::{PulseSpec, QubitParams};
use crate::qubit::{Level, QubitState};
use crate::scattering::ScatteringCoefficients;
use crate::single_photon::{final_qubit_state, input_spectrum, output_spectrum_1ph};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, value: f64, limit: f64) -> Check {
    Check {
        name,
        passed: value <= limit,
        detail: format!("{value:.3e} <= {limit:.1e}"),
    }
}

fn run() -> crate::Result<Vec<Check>> {
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    for i in 0..50 {
        for j in 0..50 {
            let c = ScatteringCoefficients::new(PI * i as f64 / 49.0, 2.0 * PI * j as f64 / 49.0);
            worst = worst.max((c.gg.norm_sqr() + c.ge.norm_sqr() - 1.0).abs());
        }
    }
    out.push(check("scattering coefficients are unitary", worst, 1e-12));

    let sigma = 5.0;
    let freq = FrequencyGrid::default_for(1.0, sigma);
    let one = PulseSpec::fock(sigma, 1)?;
    let p = QubitParams::new(1.0, PI / 2.0, PI)?;
    let q = QubitState::pure(C64::new(0.6, 0.0), C64::new(0.0, 0.8))?;
    let s = output_spectrum_1ph(&q, &one, &p, &freq)?;
    let env = one.envelope();
    let worst = s
        .omega()
        .iter()
        .zip(s.values())
        .map(|(&w, &v)| (v - 0.36 * env.spectral_density(w + 1.0) - 0.64 * env.spectral_density(w - 1.0)).abs())
        .fold(0.0, f64::max);
    out.push(check("single photon at theta = pi/2, phi = pi splits exactly", worst, 1e-10));

    let p = QubitParams::new(1.0, PI / 6.0, PI / 2.0)?;
    let rho0 = QubitState::ground().density(p.theta());
    let out1 = output_spectrum_1ph(&QubitState::ground(), &one, &p, &freq)?;
    let solver = FockSolver::with_default_grid(&one, &p)?;
    let fock1 = solver.output_spectrum(&rho0, &freq)?;
    out.push(check("one-photon Fock path matches the closed form", fock1.max_abs_diff(&out1), 1e-6));

    let after = final_qubit_state(&rho0, &one, &p)?;
    let r = energy_balance_report("selfcheck", &rho0, &after, &input_spectrum(&one, &freq), &out1, &one, &p)?;
    out.push(check("single-photon energy balance", r.residual.abs(), 1e-3));

    let two = PulseSpec::fock(sigma, 2)?;
    let solver = FockSolver::with_default_grid(&two, &p)?;
    let mut worst: f64 = 0.0;
    for t in enumerate_trajectories(2, Level::G, &p)? {
        let a = solver.trajectory_spectrum(&t, &freq)?;
        let b = solver.trajectory_spectrum(&t.mirrored(&p), &freq)?;
        worst = worst.max(a.max_abs_diff(&b.mirrored()));
    }
    out.push(check("two-photon trajectory spectra mirror", worst, 1e-6));

    let mut prev = -1.0;
    let mut monotone = true;
    for s in [0.2, 1.0, 5.0] {
        let m = measurement_quality_1ph(&PulseSpec::fock(s, 1)?, &p)?;
        monotone &= m.flip_probability > prev;
        prev = m.flip_probability;
    }
    out.push(Check {
        name: "flip probability grows with pulse length",
        passed: monotone,
        detail: format!("last {prev:.4}"),
    });
    Ok(out)
}

/// Runs the suite; errors from the solvers count as failed checks.
pub fn selfcheck() -> Vec<Check> {
    run().unwrap_or_else(|e| {
        vec![Check {
            name: "solvers run",
            passed: false,
            detail: e.to_string(),
        }]
    })
}
