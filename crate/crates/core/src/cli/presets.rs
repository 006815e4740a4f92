//! One preset per figure: the scenarios whose artifacts reproduce it.

use std::f64::consts::PI;
use std::path::Path;

use super::runner::{run_scenario, RunOutput};
use super::scenario::{PathKind, Scenario};
use super::{CliError, CliResult};
use crate::qubit::InitialState;

#[derive(Clone, Debug)]
pub struct Preset {
    pub id: &'static str,
    pub description: &'static str,
    pub scenarios: Vec<Scenario>,
}

const TRAJ_2: [&str; 8] = ["GNN", "GNJ", "GJN", "GJJ", "ENN", "ENJ", "EJN", "EJJ"];
const TRAJ_3G: [&str; 8] = ["GNNN", "GNNJ", "GNJN", "GNJJ", "GJNN", "GJNJ", "GJJN", "GJJJ"];
const TRAJ_3E: [&str; 8] = ["ENNN", "ENNJ", "ENJN", "ENJJ", "EJNN", "EJNJ", "EJJN", "EJJJ"];

/// Angles for the component presets; component shapes do not depend on
/// them as long as no trajectory amplitude vanishes.
const COMPONENT_THETA: f64 = PI / 4.0;
const COMPONENT_PHI: f64 = PI / 2.0;

fn components(id: &str, path: PathKind, photons: usize, initial: InitialState, labels: &[&str]) -> Scenario {
    let mut all = vec!["input"];
    all.extend_from_slice(labels);
    Scenario::new(id, path, COMPONENT_THETA, COMPONENT_PHI, 5.0)
        .with_photons(photons)
        .with_initial(initial)
        .with_components(&all)
}

fn phi_scan(prefix: &str, theta: f64, initial: InitialState) -> Vec<Scenario> {
    [("pi3", PI / 3.0), ("pi2", PI / 2.0), ("pi", PI)]
        .into_iter()
        .map(|(tag, phi)| {
            Scenario::new(&format!("{prefix}_phi_{tag}"), PathKind::Coherent, theta, phi, 5.0)
                .with_n_bar(4.0)
                .with_initial(initial)
        })
        .collect()
}

/// The catalog, in figure order.
pub fn presets() -> Vec<Preset> {
    vec![
        Preset {
            id: "fig2",
            description: "single photon, sigma_t omega_q = 5: input, GJ and EJ components",
            scenarios: vec![components("fig2", PathKind::SinglePhoton, 1, InitialState::GroundTheta, &["GJ", "EJ"])],
        },
        Preset {
            id: "fig3",
            description: "two photons, sigma_t omega_q = 5: all trajectory components",
            scenarios: vec![components("fig3", PathKind::Fock, 2, InitialState::GroundTheta, &TRAJ_2)],
        },
        Preset {
            id: "fig4",
            description: "three photons from |g_theta>, sigma_t omega_q = 5: trajectory components",
            scenarios: vec![components("fig4", PathKind::Fock, 3, InitialState::GroundTheta, &TRAJ_3G)],
        },
        Preset {
            id: "fig5",
            description: "three photons from |e_theta>, sigma_t omega_q = 5: trajectory components",
            scenarios: vec![components("fig5", PathKind::Fock, 3, InitialState::ExcitedTheta, &TRAJ_3E)],
        },
        Preset {
            id: "fig6",
            description: "coherent n_bar = 20, theta = pi/2, phi = pi, sigma_t omega_q in {5, 10, 20, 40}",
            scenarios: [5.0, 10.0, 20.0, 40.0]
                .into_iter()
                .map(|s| {
                    Scenario::new(&format!("fig6_sigma{s}"), PathKind::Coherent, PI / 2.0, PI, s)
                        .with_n_bar(20.0)
                        .with_initial(InitialState::GroundZAtArrival)
                })
                .collect(),
        },
        Preset {
            id: "fig7",
            description: "coherent n_bar = 4, theta = pi/2, exp(i T H_Q)|g_z>, phi in {pi/3, pi/2, pi}",
            scenarios: phi_scan("fig7", PI / 2.0, InitialState::GroundZAtArrival),
        },
        Preset {
            id: "fig8",
            description: "coherent n_bar = 4, theta = pi/6, exp(i T H_Q)|g_z>, phi in {pi/3, pi/2, pi}",
            scenarios: phi_scan("fig8", PI / 6.0, InitialState::GroundZAtArrival),
        },
        Preset {
            id: "fig9",
            description: "coherent n_bar = 4, theta = pi/6, |g_theta>, phi in {pi/3, pi/2, pi}",
            scenarios: phi_scan("fig9", PI / 6.0, InitialState::GroundTheta),
        },
    ]
}

pub fn find(id: &str) -> CliResult<Preset> {
    presets()
        .into_iter()
        .find(|p| p.id == id)
        .ok_or_else(|| CliError::UnknownPreset(id.to_string()))
}

/// Runs every scenario of a preset into `out/<scenario id>`. All scenarios
/// run even if one breaches a tolerance; the first error is returned.
pub fn run_preset(preset: &Preset, out: &Path) -> CliResult<Vec<RunOutput>> {
    let mut results = Vec::new();
    let mut first_err = None;
    for s in &preset.scenarios {
        match run_scenario(s, Some(&out.join(&s.id))) {
            Ok(r) => results.push(r),
            Err(e @ CliError::Tolerance(_)) => {
                first_err.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(results),
    }
}
