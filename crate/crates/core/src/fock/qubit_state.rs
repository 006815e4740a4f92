//! Reduced qubit state while an n-photon Fock pulse passes.
//!
//! With product photon wavefunctions the collision times are independent
//! with density `p(u) = |psi(u)|^2`; conditioning on `k` collisions before
//! `t` gives
//! `rho(t) = sum_k C(n, k) k! (1 - P(t))^(n - k) R_k(t)` with
//! `R_0 = rho_0` and `R_k(x) = int_{-T}^x p(u) M_u[R_{k-1}(u)] du`.

use super::{FockGrid, MAX_PHOTONS, PANEL_ORDER};
use crate::envelope::Envelope;
use crate::error::Result;
use crate::params::{PulseSpec, QubitParams};
use crate::quadrature::PanelRule;
use crate::qubit::{Density, Mat2, ThetaBasis};
use crate::scattering::ScatteringCoefficients;

/// Interaction-picture qubit states at every point of the grid's time axis.
pub fn qubit_states_fock(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, grid: &FockGrid) -> Result<Vec<Density>> {
    states_on_rule(rho0, pulse, params, grid.rule())
}

fn states_on_rule(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, rule: &PanelRule) -> Result<Vec<Density>> {
    let n = pulse.require_fock(MAX_PHOTONS)?;
    let env = pulse.envelope();
    let c = ScatteringCoefficients::new(params.theta(), params.phi());
    let basis = ThetaBasis::new(params.theta());
    let r0 = basis.from_z(&rho0.0);
    let nodes = rule.points();
    let ops: Vec<Mat2> = nodes.iter().map(|&u| c.collision_operator(params.omega_q(), u)).collect();
    let dens: Vec<f64> = nodes.iter().map(|&u| env.intensity(u)).collect();

    let mut levels_at_breaks = vec![vec![r0; rule.panels() + 1]];
    let mut prev_nodes = vec![r0; nodes.len()];
    for _ in 0..n {
        let f: Vec<Mat2> = (0..nodes.len())
            .map(|i| prev_nodes[i].conjugate_by(&ops[i]) * dens[i])
            .collect();
        let (breaks, at_nodes) = rule.cumulative(&f);
        levels_at_breaks.push(breaks);
        prev_nodes = at_nodes;
    }
    let (p_breaks, _) = rule.cumulative(&dens);

    let mut out = Vec::with_capacity(rule.panels() + 1);
    for (i, &p) in p_breaks.iter().enumerate() {
        let rest = 1.0 - p;
        let mut rho = Mat2::zero();
        for (k, level) in levels_at_breaks.iter().enumerate() {
            let w = binomial(n, k) * factorial(k) * rest.powi((n - k) as i32);
            rho += level[i] * w;
        }
        out.push(Density(basis.to_z(&rho)));
    }
    Ok(out)
}

/// Interaction-picture qubit state at a single time `t`.
pub fn qubit_reduced_state_fock(rho0: &Density, pulse: &PulseSpec, params: &QubitParams, t: f64) -> Result<Density> {
    let sigma = pulse.sigma_t();
    let t_max = 10.0 * sigma;
    if t <= -t_max {
        return Ok(*rho0);
    }
    let t_end = t.min(t_max);
    let h = (0.1 / params.omega_q()).min(0.25 * sigma);
    let panels = (((t_end + t_max) / h).ceil() as usize).max(8);
    let rule = PanelRule::new(-t_max, t_end, panels, PANEL_ORDER);
    let states = states_on_rule(rho0, pulse, params, &rule)?;
    Ok(*states.last().expect("rule has breakpoints"))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
