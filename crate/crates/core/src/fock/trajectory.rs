//! Jump trajectories: which collisions flip the qubit, their amplitudes and
//! the time-ordered phases they imprint on the photons.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::params::QubitParams;
use crate::qubit::Level;
use crate::scattering::ScatteringCoefficients;

/// Largest photon number handled exactly.
pub const MAX_PHOTONS: usize = 3;

/// Outcome of one collision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Jump {
    /// Qubit unchanged.
    N,
    /// Qubit flipped.
    J,
}

/// A branch of the n-photon scattering amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub initial: Level,
    pub pattern: Vec<Jump>,
    pub coefficient: C64,
}

impl Trajectory {
    pub fn new(initial: Level, pattern: Vec<Jump>, params: &QubitParams) -> Self {
        let c = ScatteringCoefficients::new(params.theta(), params.phi());
        let mut level = initial;
        let mut coefficient = C64::new(1.0, 0.0);
        for &j in &pattern {
            let next = if j == Jump::J { level.flipped() } else { level };
            coefficient *= c.amplitude(level, next);
            level = next;
        }
        Trajectory {
            initial,
            pattern,
            coefficient,
        }
    }

    /// Parses labels such as `GNJ`.
    pub fn from_label(label: &str, params: &QubitParams) -> Result<Self> {
        let mut chars = label.chars();
        let initial = match chars.next() {
            Some('G') => Level::G,
            Some('E') => Level::E,
            _ => return Err(Error::Contract(format!("trajectory label `{label}` must start with G or E"))),
        };
        let pattern = chars
            .map(|c| match c {
                'N' => Ok(Jump::N),
                'J' => Ok(Jump::J),
                _ => Err(Error::Contract(format!("bad pattern symbol `{c}` in `{label}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if pattern.is_empty() || pattern.len() > MAX_PHOTONS {
            return Err(Error::UnsupportedOrder(pattern.len()));
        }
        Ok(Trajectory::new(initial, pattern, params))
    }

    pub fn photons(&self) -> usize {
        self.pattern.len()
    }

    pub fn jumps(&self) -> usize {
        self.pattern.iter().filter(|&&j| j == Jump::J).count()
    }

    pub fn final_level(&self) -> Level {
        if self.jumps().is_multiple_of(2) {
            self.initial
        } else {
            self.initial.flipped()
        }
    }

    /// Per-collision frequency multipliers: `+1` for a `g -> e` jump, `-1`
    /// for `e -> g`, `0` otherwise.
    pub fn signs(&self) -> Vec<i32> {
        pattern_signs(self.initial, &self.pattern)
    }

    pub fn label(&self) -> String {
        let mut s = String::with_capacity(self.pattern.len() + 1);
        s.push(self.initial.letter());
        for j in &self.pattern {
            s.push(if *j == Jump::J { 'J' } else { 'N' });
        }
        s
    }

    /// Same jump positions from the other initial level.
    pub fn mirrored(&self, params: &QubitParams) -> Trajectory {
        Trajectory::new(self.initial.flipped(), self.pattern.clone(), params)
    }

    /// Trajectory wavefunction at arbitrary (unsorted) photon arrival times.
    pub fn wavefunction<E: Envelope + ?Sized>(&self, times: &[f64], env: &E, omega_q: f64) -> C64 {
        assert_eq!(times.len(), self.pattern.len());
        let mut sorted = times.to_vec();
        sorted.sort_by(f64::total_cmp);
        let amp: f64 = times.iter().map(|&t| env.amplitude(t)).product();
        phase_of_sorted(&self.signs(), &sorted, omega_q) * amp
    }
}

impl fmt::Display for Trajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn pattern_signs(initial: Level, pattern: &[Jump]) -> Vec<i32> {
    let mut level = initial;
    pattern
        .iter()
        .map(|&j| match (j, level) {
            (Jump::N, _) => 0,
            (Jump::J, Level::G) => {
                level = Level::E;
                1
            }
            (Jump::J, Level::E) => {
                level = Level::G;
                -1
            }
        })
        .collect()
}

fn phase_of_sorted(signs: &[i32], sorted: &[f64], omega_q: f64) -> C64 {
    let arg: f64 = signs.iter().zip(sorted).map(|(&s, &t)| s as f64 * t).sum();
    C64::from_polar(1.0, omega_q * arg)
}

/// All `2^n` trajectories from `initial`, patterns in lexicographic order
/// with `N < J`.
pub fn enumerate_trajectories(n: usize, initial: Level, params: &QubitParams) -> Result<Vec<Trajectory>> {
    if n == 0 || n > MAX_PHOTONS {
        return Err(Error::UnsupportedOrder(n));
    }
    Ok((0..1usize << n)
        .map(|bits| {
            let pattern = (0..n)
                .map(|k| if bits >> (n - 1 - k) & 1 == 1 { Jump::J } else { Jump::N })
                .collect();
            Trajectory::new(initial, pattern, params)
        })
        .collect())
}

/// Phase `exp[i omega_q sum_k s_k t_k]` imprinted by a pattern on ascending
/// arrival times.
pub fn trajectory_phase(initial: Level, pattern: &[Jump], ordered_times: &[f64], omega_q: f64) -> Result<C64> {
    if pattern.len() != ordered_times.len() {
        return Err(Error::Contract(format!(
            "{} times supplied for a pattern of length {}",
            ordered_times.len(),
            pattern.len()
        )));
    }
    if ordered_times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Contract("arrival times must be sorted ascending".into()));
    }
    Ok(phase_of_sorted(&pattern_signs(initial, pattern), ordered_times, omega_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use Jump::{J, N};

    fn params(theta: f64, phi: f64) -> QubitParams {
        QubitParams::new(1.0, theta, phi).unwrap()
    }

    #[test]
    fn two_photon_labels() {
        let t = enumerate_trajectories(2, Level::G, &params(0.4, 1.0)).unwrap();
        let labels: Vec<_> = t.iter().map(|t| t.label()).collect();
        assert_eq!(labels, ["GNN", "GNJ", "GJN", "GJJ"]);
        assert!(enumerate_trajectories(4, Level::G, &params(0.4, 1.0)).is_err());
        assert!(enumerate_trajectories(0, Level::G, &params(0.4, 1.0)).is_err());
    }

    #[test]
    fn full_flip_keeps_only_all_jump_branches() {
        let p = params(PI / 2.0, PI);
        for init in [Level::G, Level::E] {
            let live: Vec<_> = enumerate_trajectories(3, init, &p)
                .unwrap()
                .into_iter()
                .filter(|t| t.coefficient.norm() > 1e-12)
                .map(|t| t.label())
                .collect();
            assert_eq!(live, [format!("{}JJJ", init.letter())]);
        }
    }

    #[test]
    fn single_photon_coefficients() {
        let p = params(0.7, 1.3);
        let c = ScatteringCoefficients::new(0.7, 1.3);
        let t = enumerate_trajectories(1, Level::G, &p).unwrap();
        assert_eq!(t[0].coefficient, c.gg);
        assert_eq!(t[1].coefficient, c.ge);
    }

    #[test]
    fn alternating_phase_signs() {
        let times = [0.3, 1.1, 2.0, 2.9];
        let w = 1.7;
        let ph = trajectory_phase(Level::E, &[N, J, N, J], &times, w).unwrap();
        assert!((ph - C64::from_polar(1.0, w * (-1.1 + 2.9))).norm() < 1e-14);
        let ph = trajectory_phase(Level::G, &[N, N], &[0.1, 0.2], w).unwrap();
        assert_eq!(ph, C64::new(1.0, 0.0));
        let ph = trajectory_phase(Level::G, &[J], &[0.4], w).unwrap();
        assert!((ph - C64::from_polar(1.0, w * 0.4)).norm() < 1e-15);
        assert!(trajectory_phase(Level::G, &[J, N], &[0.4, 0.1], w).is_err());
    }

    #[test]
    fn label_round_trip() {
        let p = params(1.0, 2.0);
        let t = Trajectory::from_label("ENJ", &p).unwrap();
        assert_eq!(t.label(), "ENJ");
        assert_eq!(t.final_level(), Level::G);
        assert!(Trajectory::from_label("XJ", &p).is_err());
    }
}
