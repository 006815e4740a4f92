//! Dispatch of a resolved scenario to its computational path and artifact
//! output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::csv::{bloch_csv, spectrum_csv, write_atomic};
use super::scenario::{PathKind, Scenario};
use super::{CliError, CliResult};
use crate::coherent::MasterEquation;
use crate::collision::{CollisionConfig, CollisionModel};
use crate::energetics::{energy_balance_report, EnergyReport};
use crate::fock::{qubit_states_fock, FockGrid, FockSolver, Trajectory};
use crate::grid::{FrequencyGrid, TimeGrid};
use crate::params::{PulseSpec, QubitParams};
use crate::qubit::{Density, Level};
use crate::single_photon::{final_qubit_state, input_spectrum, output_spectrum, qubit_state_during_scattering};
use crate::spectrum::Spectrum;

/// Most rows written to `bloch.csv`; longer trajectories are subsampled.
pub const MAX_BLOCH_ROWS: usize = 2001;

/// Relative photon-number defect above which a run counts as a breach.
pub const PHOTON_NUMBER_TOLERANCE: f64 = 5e-3;

/// Everything a scenario run produces.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub scenario: Scenario,
    pub spectrum: Spectrum,
    pub input: Spectrum,
    /// Lab-frame Bloch vectors.
    pub bloch: Vec<(f64, [f64; 3])>,
    pub energy: EnergyReport,
    /// Per-component spectra normalized to one.
    pub components: Vec<(String, Spectrum)>,
    pub time_step: f64,
}

impl RunOutput {
    /// Empty when the run meets its tolerances.
    pub fn breaches(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.energy.balanced() {
            out.push(format!(
                "energy residual {:.3e} exceeds {:.3e}",
                self.energy.residual, self.energy.tolerance
            ));
        }
        let d = self.energy.photon_number_defect();
        if !(d <= PHOTON_NUMBER_TOLERANCE) {
            out.push(format!("photon number defect {d:.3e} exceeds {PHOTON_NUMBER_TOLERANCE:.1e}"));
        }
        out
    }

    pub fn manifest(&self, freq: &FrequencyGrid) -> String {
        let mut m = self.scenario.to_string();
        let _ = writeln!(m, "# frequency_step = {:?}", freq.step());
        let _ = writeln!(m, "# time_step = {:?}", self.time_step);
        m
    }

    /// Writes `spectrum.csv`, `input.csv`, `bloch.csv`, `energy.csv`,
    /// `component_<label>.csv` and `manifest.txt` into `dir`.
    pub fn write(&self, dir: &Path, freq: &FrequencyGrid) -> CliResult<Vec<PathBuf>> {
        let mut files = vec![
            (dir.join("spectrum.csv"), spectrum_csv(&self.spectrum)),
            (dir.join("input.csv"), spectrum_csv(&self.input)),
            (dir.join("bloch.csv"), bloch_csv(&self.bloch)),
            (
                dir.join("energy.csv"),
                format!("{}\n{}\n", EnergyReport::CSV_HEADER, self.energy.csv_row()),
            ),
        ];
        for (label, s) in &self.components {
            files.push((dir.join(format!("component_{label}.csv")), spectrum_csv(s)));
        }
        files.push((dir.join("manifest.txt"), self.manifest(freq)));
        for (p, text) in &files {
            write_atomic(p, text)?;
        }
        Ok(files.into_iter().map(|(p, _)| p).collect())
    }
}

fn subsample<T: Copy>(items: &[T]) -> Vec<T> {
    if items.len() <= MAX_BLOCH_ROWS {
        return items.to_vec();
    }
    let stride = (items.len() - 1).div_ceil(MAX_BLOCH_ROWS - 1);
    let mut out: Vec<T> = items.iter().step_by(stride).copied().collect();
    if !(items.len() - 1).is_multiple_of(stride) {
        out.push(items[items.len() - 1]);
    }
    out
}

/// Lab-frame Bloch vector from an interaction-picture state at time `t`.
fn lab_bloch(rho: &Density, params: &QubitParams, t: f64) -> [f64; 3] {
    rho.evolve_free(params.theta(), params.omega_q(), t).bloch()
}

fn component_spectrum(
    label: &str,
    s: &Scenario,
    pulse: &PulseSpec,
    params: &QubitParams,
    freq: &FrequencyGrid,
    solver: Option<&FockSolver>,
) -> CliResult<Spectrum> {
    let env = pulse.envelope();
    if label == "input" {
        return Ok(Spectrum::from_fn(freq, |w| env.spectral_density(w)));
    }
    let traj = Trajectory::from_label(label, params)?;
    if Some(traj.photons()) != s.photons {
        return Err(crate::Error::Contract(format!(
            "component `{label}` has {} photons, the pulse {}",
            traj.photons(),
            s.photons.unwrap_or(0)
        ))
        .into());
    }
    match solver {
        Some(solver) => Ok(solver.trajectory_spectrum(&traj, freq)?),
        None => {
            let shift = match (traj.initial, traj.jumps()) {
                (_, 0) => 0.0,
                (Level::G, _) => params.omega_q(),
                (Level::E, _) => -params.omega_q(),
            };
            Ok(Spectrum::from_fn(freq, |w| env.spectral_density(w + shift)))
        }
    }
}

/// Runs one resolved scenario without touching the file system.
pub fn compute(scenario: &Scenario) -> CliResult<RunOutput> {
    let s = scenario.resolve()?;
    let params = s.params()?;
    let pulse = s.pulse()?;
    let freq = s.frequency_grid()?;
    let sigma = s.sigma_t_omega_q;
    let t_max = s.t_max.expect("resolved") * sigma;
    let n_time = s.n_time;
    let (theta, w) = (params.theta(), params.omega_q());
    let n_photons = pulse.mean_photons();
    let input = input_spectrum(&pulse, &freq).scaled(n_photons);

    let mut components = Vec::new();
    let (spectrum, bloch, before, after, time_step) = match s.path {
        PathKind::SinglePhoton => {
            let rho0 = s.initial.interaction(theta, w, t_max);
            let spectrum = output_spectrum(&rho0, &pulse, &params, &freq)?;
            let grid = TimeGrid::unchecked(t_max, n_time.expect("resolved"))?;
            let mut bloch = Vec::with_capacity(grid.len());
            for t in grid.points() {
                let rho = qubit_state_during_scattering(&rho0, &pulse, &params, t)?;
                bloch.push((t, lab_bloch(&rho, &params, t)));
            }
            let after = final_qubit_state(&rho0, &pulse, &params)?;
            for label in &s.components {
                components.push((label.clone(), component_spectrum(label, &s, &pulse, &params, &freq, None)?));
            }
            (spectrum, bloch, rho0, after, grid.dt())
        }
        PathKind::Fock => {
            let grid = FockGrid::new(t_max, n_time.expect("resolved"), w)?;
            let rho0 = s.initial.interaction(theta, w, t_max);
            let states = qubit_states_fock(&rho0, &pulse, &params, &grid)?;
            let times = grid.time().points();
            let dt = grid.time().dt();
            let solver = FockSolver::new(&pulse, &params, grid)?;
            let spectrum = solver.output_spectrum(&rho0, &freq)?;
            let rows: Vec<(f64, [f64; 3])> = times
                .iter()
                .zip(&states)
                .map(|(&t, rho)| (t, lab_bloch(rho, &params, t)))
                .collect();
            for label in &s.components {
                components.push((label.clone(), component_spectrum(label, &s, &pulse, &params, &freq, Some(&solver))?));
            }
            let after = *states.last().expect("non-empty grid");
            (spectrum, subsample(&rows), rho0, after, dt)
        }
        PathKind::Coherent => {
            let grid = TimeGrid::new(t_max, n_time.expect("resolved"), w)?;
            let dt = grid.dt();
            let me = MasterEquation::new(&pulse, &params, grid)?;
            let rho0 = s.initial.at_start(theta, w, t_max);
            let traj = me.evolve(&rho0);
            let spectrum = me.spectrum(&traj, &freq);
            let rows: Vec<(f64, [f64; 3])> = (0..traj.len()).map(|i| (traj.grid.t(i), traj.bloch(i))).collect();
            (spectrum, subsample(&rows), rho0, traj.last(), dt)
        }
        PathKind::Collision => {
            let dt = s.delta_t_omega_q.expect("resolved") / w;
            let config = CollisionConfig::with_window(&pulse, dt, t_max)?;
            let half = -config.t_start;
            let model = CollisionModel::from_config(config, &params).with_renormalization(s.renormalize);
            let rho0 = s.initial.at_start(theta, w, half);
            let states = model.evolve(&rho0);
            let spectrum = model.spectrum(&states, &freq);
            let rows: Vec<(f64, [f64; 3])> = states
                .iter()
                .enumerate()
                .map(|(n, c)| (model.config().edge(n), [c[1] / c[0], c[2] / c[0], c[3] / c[0]]))
                .collect();
            let last = states.last().expect("at least one bin");
            let after = Density::from_bloch(last[1] / last[0], last[2] / last[0], last[3] / last[0]);
            (spectrum, subsample(&rows), rho0, after, dt)
        }
    };
    let energy = energy_balance_report(&s.id, &before, &after, &input, &spectrum, &pulse, &params)?;
    Ok(RunOutput {
        scenario: s,
        spectrum,
        input,
        bloch,
        energy,
        components,
        time_step,
    })
}

/// Runs a scenario and writes its artifacts to `out` (or the scenario's own
/// output directory). Artifacts are written before tolerances are checked.
pub fn run_scenario(scenario: &Scenario, out: Option<&Path>) -> CliResult<RunOutput> {
    let mut s = scenario.clone();
    if let Some(dir) = out {
        s.out = Some(dir.to_path_buf());
    }
    let result = compute(&s)?;
    let dir = result.scenario.out.clone().expect("resolved");
    result.write(&dir, &result.scenario.frequency_grid()?)?;
    let breaches = result.breaches();
    if !breaches.is_empty() {
        return Err(CliError::Tolerance(format!("{}: {}", result.scenario.id, breaches.join("; "))));
    }
    Ok(result)
}

/// Reads a configuration file and runs it.
pub fn run_config_file(path: &Path, out: Option<&Path>) -> CliResult<RunOutput> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    run_scenario(&Scenario::parse(&text)?, out)
}
