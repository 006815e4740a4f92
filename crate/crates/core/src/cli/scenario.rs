//! Scenario configuration: a flat `key = value` text format.
//!
//! Frequencies are in units of `omega_q` and times in units of `sigma_t`,
//! except `delta_t_omega_q`, which is the collision bin width times
//! `omega_q`. Lines starting with `#` are comments.
//!
//! | key | meaning | default |
//! |-----|---------|---------|
//! | `id` | scenario name | `scenario` |
//! | `path` | `single_photon`, `fock`, `coherent` or `collision` | required |
//! | `theta`, `phi` | angles, plain numbers or `pi` expressions such as `2pi/3` | required |
//! | `sigma_t_omega_q` | pulse length | required |
//! | `photons` | Fock photon number | 1 on `single_photon` |
//! | `n_bar` | coherent mean photon number | |
//! | `initial` | `g_theta`, `e_theta`, `g_z`, `e_z`, `g_z_at_arrival`, `bloch:x,y,z` | `g_theta` |
//! | `t_max` | half-width of the time window | path dependent |
//! | `n_time` | time grid points | path dependent |
//! | `omega_max`, `n_omega` | frequency window half-width and points | pulse dependent |
//! | `delta_t_omega_q` | collision bin width | 0.01 |
//! | `renormalize` | per-bin trace renormalization | `true` |
//! | `components` | comma list of `input` and trajectory labels | empty |
//! | `out` | output directory | `out/<id>` |

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{CliError, CliResult};
use crate::coherent::MasterEquation;
use crate::fock::FockGrid;
use crate::grid::FrequencyGrid;
use crate::params::{PulseSpec, QubitParams, Statistics};
use crate::qubit::InitialState;

pub const DEFAULT_DELTA_T: f64 = 0.01;
pub const DEFAULT_BLOCH_POINTS: usize = 241;
pub const SINGLE_PHOTON_WINDOW: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    SinglePhoton,
    Fock,
    Coherent,
    Collision,
}

impl PathKind {
    pub fn name(self) -> &'static str {
        match self {
            PathKind::SinglePhoton => "single_photon",
            PathKind::Fock => "fock",
            PathKind::Coherent => "coherent",
            PathKind::Collision => "collision",
        }
    }
}

impl FromStr for PathKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single_photon" => Ok(PathKind::SinglePhoton),
            "fock" => Ok(PathKind::Fock),
            "coherent" => Ok(PathKind::Coherent),
            "collision" => Ok(PathKind::Collision),
            _ => Err(format!("unknown path `{s}` (single_photon, fock, coherent, collision)")),
        }
    }
}

pub fn parse_initial(s: &str) -> Result<InitialState, String> {
    match s {
        "g_theta" => Ok(InitialState::GroundTheta),
        "e_theta" => Ok(InitialState::ExcitedTheta),
        "g_z" => Ok(InitialState::GroundZ),
        "e_z" => Ok(InitialState::ExcitedZ),
        "g_z_at_arrival" => Ok(InitialState::GroundZAtArrival),
        _ => {
            let rest = s
                .strip_prefix("bloch:")
                .ok_or_else(|| format!("unknown initial state `{s}`"))?;
            let v: Vec<f64> = rest
                .split(',')
                .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bloch component `{x}`: {e}")))
                .collect::<Result<_, _>>()?;
            match v[..] {
                [x, y, z] => Ok(InitialState::Bloch { x, y, z }),
                _ => Err("bloch needs three components".into()),
            }
        }
    }
}

pub fn format_initial(s: &InitialState) -> String {
    match *s {
        InitialState::GroundTheta => "g_theta".into(),
        InitialState::ExcitedTheta => "e_theta".into(),
        InitialState::GroundZ => "g_z".into(),
        InitialState::ExcitedZ => "e_z".into(),
        InitialState::GroundZAtArrival => "g_z_at_arrival".into(),
        InitialState::Bloch { x, y, z } => format!("bloch:{x:?},{y:?},{z:?}"),
    }
}

/// Reads a number or a multiple of `pi`: `0.3`, `pi`, `pi/6`, `2pi/3`,
/// `2*pi/3`, `-pi/2`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let num = match num.strip_suffix("pi") {
        Some(c) => {
            let c = c.trim().trim_end_matches('*').trim();
            let coef = match c {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => c.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?,
            };
            coef * PI
        }
        None => num.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?,
    };
    match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|e| format!("`{s}`: {e}"))?;
            if d == 0.0 {
                return Err(format!("`{s}`: division by zero"));
            }
            Ok(num / d)
        }
        None => Ok(num),
    }
}

/// One run of one computational path.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub id: String,
    pub path: PathKind,
    pub theta: f64,
    pub phi: f64,
    pub sigma_t_omega_q: f64,
    pub photons: Option<usize>,
    pub n_bar: Option<f64>,
    pub initial: InitialState,
    pub t_max: Option<f64>,
    pub n_time: Option<usize>,
    pub omega_max: Option<f64>,
    pub n_omega: Option<usize>,
    pub delta_t_omega_q: Option<f64>,
    pub renormalize: bool,
    pub components: Vec<String>,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 16] = [
    "id",
    "path",
    "theta",
    "phi",
    "sigma_t_omega_q",
    "photons",
    "n_bar",
    "initial",
    "t_max",
    "n_time",
    "omega_max",
    "n_omega",
    "delta_t_omega_q",
    "renormalize",
    "components",
    "out",
];

impl Scenario {
    /// Minimal scenario with every optional field unset.
    pub fn new(id: &str, path: PathKind, theta: f64, phi: f64, sigma_t_omega_q: f64) -> Self {
        Scenario {
            id: id.to_string(),
            path,
            theta,
            phi,
            sigma_t_omega_q,
            photons: None,
            n_bar: None,
            initial: InitialState::GroundTheta,
            t_max: None,
            n_time: None,
            omega_max: None,
            n_omega: None,
            delta_t_omega_q: None,
            renormalize: true,
            components: Vec::new(),
            out: None,
        }
    }

    pub fn with_photons(mut self, n: usize) -> Self {
        self.photons = Some(n);
        self
    }

    pub fn with_n_bar(mut self, n_bar: f64) -> Self {
        self.n_bar = Some(n_bar);
        self
    }

    pub fn with_initial(mut self, initial: InitialState) -> Self {
        self.initial = initial;
        self
    }

    pub fn with_components(mut self, labels: &[&str]) -> Self {
        self.components = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut map: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CliError::Parse { line: k + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(err(format!("unknown key `{key}`")));
            }
            if map.insert(key, (k + 1, value.trim())).is_some() {
                return Err(err(format!("duplicate key `{key}`")));
            }
        }
        let field = |key: &'static str| map.get(key).copied();
        fn read<T>(
            entry: Option<(usize, &str)>,
            key: &str,
            f: impl Fn(&str) -> Result<T, String>,
        ) -> CliResult<Option<T>> {
            entry
                .map(|(line, v)| {
                    f(v).map_err(|e| CliError::Parse {
                        line,
                        message: format!("`{key}`: {e}"),
                    })
                })
                .transpose()
        }
        let missing = |key: &str| CliError::MissingKey(key.to_string());
        let num = |s: &str| s.parse::<f64>().map_err(|e| e.to_string());
        let int = |s: &str| s.parse::<usize>().map_err(|e| e.to_string());

        let path = read(field("path"), "path", PathKind::from_str)?;
        let theta = read(field("theta"), "theta", parse_angle)?;
        let phi = read(field("phi"), "phi", parse_angle)?;
        let sigma = read(field("sigma_t_omega_q"), "sigma_t_omega_q", num)?;
        let photons = read(field("photons"), "photons", int)?;
        let n_bar = read(field("n_bar"), "n_bar", num)?;
        let mut s = Scenario::new(
            field("id").map(|(_, v)| v).unwrap_or("scenario"),
            path.ok_or_else(|| missing("path"))?,
            theta.ok_or_else(|| missing("theta"))?,
            phi.ok_or_else(|| missing("phi"))?,
            sigma.ok_or_else(|| missing("sigma_t_omega_q"))?,
        );
        s.photons = photons;
        s.n_bar = n_bar;
        if let Some(init) = read(field("initial"), "initial", parse_initial)? {
            s.initial = init;
        }
        s.t_max = read(field("t_max"), "t_max", num)?;
        s.n_time = read(field("n_time"), "n_time", int)?;
        s.omega_max = read(field("omega_max"), "omega_max", num)?;
        s.n_omega = read(field("n_omega"), "n_omega", int)?;
        s.delta_t_omega_q = read(field("delta_t_omega_q"), "delta_t_omega_q", num)?;
        if let Some(r) = read(field("renormalize"), "renormalize", |v| v.parse::<bool>().map_err(|e| e.to_string()))? {
            s.renormalize = r;
        }
        if let Some((_, v)) = field("components") {
            s.components = v
                .split(',')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(String::from)
                .collect();
        }
        s.out = field("out").map(|(_, v)| PathBuf::from(v));
        Ok(s)
    }

    pub fn params(&self) -> crate::Result<QubitParams> {
        QubitParams::new(1.0, self.theta, self.phi)
    }

    pub fn pulse(&self) -> crate::Result<PulseSpec> {
        let stats = match self.path {
            PathKind::SinglePhoton => {
                let n = self.photons.unwrap_or(1);
                if n != 1 {
                    return Err(crate::Error::UnsupportedStatistics(format!(
                        "the single_photon path needs photons = 1, got {n}"
                    )));
                }
                Statistics::Fock(1)
            }
            PathKind::Fock => Statistics::Fock(self.photons.ok_or_else(|| {
                crate::Error::UnsupportedStatistics("the fock path needs `photons`".into())
            })?),
            PathKind::Coherent | PathKind::Collision => {
                if self.photons.is_some() {
                    return Err(crate::Error::UnsupportedStatistics(format!(
                        "the {} path takes `n_bar`, not `photons`",
                        self.path.name()
                    )));
                }
                Statistics::Coherent(self.n_bar.ok_or_else(|| {
                    crate::Error::UnsupportedStatistics(format!("the {} path needs `n_bar`", self.path.name()))
                })?)
            }
        };
        if matches!(self.path, PathKind::SinglePhoton | PathKind::Fock) && self.n_bar.is_some() {
            return Err(crate::Error::UnsupportedStatistics(format!(
                "the {} path takes `photons`, not `n_bar`",
                self.path.name()
            )));
        }
        PulseSpec::new(self.sigma_t_omega_q, stats)
    }

    /// Validates and fills every grid choice left unset, so that the result
    /// is a fixed point of `resolve`.
    pub fn resolve(&self) -> CliResult<Scenario> {
        let params = self.params()?;
        let pulse = self.pulse()?;
        let sigma = self.sigma_t_omega_q;
        let mut r = self.clone();
        if r.path == PathKind::SinglePhoton {
            r.photons = Some(1);
        }
        if !self.components.is_empty() && !matches!(self.path, PathKind::SinglePhoton | PathKind::Fock) {
            return Err(crate::Error::UnsupportedStatistics("spectral components need a Fock pulse".into()).into());
        }
        match self.path {
            PathKind::SinglePhoton => {
                r.t_max.get_or_insert(SINGLE_PHOTON_WINDOW);
                r.n_time.get_or_insert(DEFAULT_BLOCH_POINTS);
            }
            PathKind::Fock => {
                let g = FockGrid::default_for(&pulse, 1.0);
                r.t_max.get_or_insert(g.time().t_max() / sigma);
                r.n_time.get_or_insert(g.time().len());
            }
            PathKind::Coherent => {
                let g = MasterEquation::default_grid(&pulse, &params)?;
                r.t_max.get_or_insert(g.t_max() / sigma);
                if r.n_time.is_none() {
                    let dt = g.dt();
                    r.n_time = Some(crate::grid::TimeGrid::points_for(r.t_max.unwrap_or(0.0) * sigma, dt));
                }
            }
            PathKind::Collision => {
                r.t_max.get_or_insert(crate::collision::WINDOW_SIGMAS);
                r.delta_t_omega_q.get_or_insert(DEFAULT_DELTA_T);
            }
        }
        if r.omega_max.is_none() || r.n_omega.is_none() {
            let f = FrequencyGrid::default_for(1.0, sigma);
            r.omega_max.get_or_insert(f.half_width());
            r.n_omega.get_or_insert(f.len());
        }
        r.out.get_or_insert_with(|| PathBuf::from("out").join(&self.id));
        Ok(r)
    }

    pub fn frequency_grid(&self) -> crate::Result<FrequencyGrid> {
        let f = FrequencyGrid::default_for(1.0, self.sigma_t_omega_q);
        FrequencyGrid::new(self.omega_max.unwrap_or(f.half_width()), self.n_omega.unwrap_or(f.len()))
    }
}

impl fmt::Display for Scenario {
    /// Serializes in the configuration format; floats use the shortest
    /// representation that parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "id = {}", self.id)?;
        writeln!(f, "path = {}", self.path.name())?;
        writeln!(f, "theta = {:?}", self.theta)?;
        writeln!(f, "phi = {:?}", self.phi)?;
        writeln!(f, "sigma_t_omega_q = {:?}", self.sigma_t_omega_q)?;
        if let Some(n) = self.photons {
            writeln!(f, "photons = {n}")?;
        }
        if let Some(n) = self.n_bar {
            writeln!(f, "n_bar = {n:?}")?;
        }
        writeln!(f, "initial = {}", format_initial(&self.initial))?;
        if let Some(v) = self.t_max {
            writeln!(f, "t_max = {v:?}")?;
        }
        if let Some(v) = self.n_time {
            writeln!(f, "n_time = {v}")?;
        }
        if let Some(v) = self.omega_max {
            writeln!(f, "omega_max = {v:?}")?;
        }
        if let Some(v) = self.n_omega {
            writeln!(f, "n_omega = {v}")?;
        }
        if let Some(v) = self.delta_t_omega_q {
            writeln!(f, "delta_t_omega_q = {v:?}")?;
        }
        writeln!(f, "renormalize = {}", self.renormalize)?;
        if !self.components.is_empty() {
            writeln!(f, "components = {}", self.components.join(","))?;
        }
        if let Some(out) = &self.out {
            writeln!(f, "out = {}", out.display())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/6").unwrap(), PI / 6.0);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("-pi/2").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn parse_reports_line() {
        let err = Scenario::parse("path = fock\ntheta = x\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        let err = Scenario::parse("path = fock\nbogus = 1\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
    }

    #[test]
    fn theta_out_of_range_is_a_validation_error() {
        let s = Scenario::parse("path = single_photon\ntheta = 5pi\nphi = pi\nsigma_t_omega_q = 5\n").unwrap();
        let err = s.resolve().unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("theta"));
    }

    #[test]
    fn statistics_must_match_path() {
        let s = Scenario::new("x", PathKind::Fock, 0.3, 1.0, 5.0).with_n_bar(2.0);
        assert!(s.resolve().is_err());
        let s = Scenario::new("x", PathKind::Coherent, 0.3, 1.0, 5.0).with_photons(2);
        assert!(s.resolve().is_err());
    }

    #[test]
    fn resolved_scenario_round_trips() {
        for path in [PathKind::SinglePhoton, PathKind::Fock, PathKind::Coherent, PathKind::Collision] {
            let mut s = Scenario::new("rt", path, PI / 6.0, PI / 3.0, 5.0)
                .with_initial(InitialState::Bloch { x: 0.1, y: -0.2, z: 0.3 });
            s = match path {
                PathKind::Fock => s.with_photons(2).with_components(&["input", "GNJ"]),
                PathKind::SinglePhoton => s,
                _ => s.with_n_bar(4.0),
            };
            let r = s.resolve().unwrap();
            assert_eq!(Scenario::parse(&r.to_string()).unwrap(), r);
            assert_eq!(r.resolve().unwrap(), r);
        }
    }
}
