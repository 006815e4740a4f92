//! Single-photon reduced density matrix of trajectory wavefunctions.
//!
//! On each ordering sector of the photon arrival times the trajectory phase
//! factorizes into one-dimensional factors, so integrating out `n - 1`
//! photons reduces to products of running integrals
//! `P_k(x) = int_{-T}^x |psi|^2 e^{i k w y} dy` and
//! `Q_{kl}(x) = int_{-T}^x |psi(y)|^2 e^{i l w y} P_k(y) dy`.

use num_complex::Complex64 as C64;

use super::trajectory::Trajectory;
use super::FockGrid;
use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::exec;
use crate::spectrum::LagSums;

const KAPPAS: usize = 5;

fn slot(kappa: i32) -> usize {
    (kappa + 2) as usize
}

/// Running integrals of `|psi|^2 e^{i k w t}` for `k = -2..=2`, sampled on the
/// grid's breakpoints.
pub(crate) struct Cumulants {
    p: Vec<[C64; KAPPAS]>,
    q: Vec<[C64; KAPPAS * KAPPAS]>,
    psi: Vec<f64>,
    phase: Vec<[C64; 3]>,
}

impl Cumulants {
    pub(crate) fn new<E: Envelope + ?Sized>(grid: &FockGrid, env: &E, omega_q: f64) -> Self {
        let rule = grid.rule();
        let nodes = rule.points();
        let f: Vec<[C64; KAPPAS]> = nodes
            .iter()
            .map(|&x| {
                let w = env.intensity(x);
                std::array::from_fn(|k| C64::from_polar(w, (k as f64 - 2.0) * omega_q * x))
            })
            .collect();
        let mut p_breaks = vec![[C64::default(); KAPPAS]; rule.panels() + 1];
        let mut p_nodes = vec![[C64::default(); KAPPAS]; nodes.len()];
        for k in 0..KAPPAS {
            let col: Vec<C64> = f.iter().map(|v| v[k]).collect();
            let (b, n) = rule.cumulative(&col);
            for (dst, v) in p_breaks.iter_mut().zip(b) {
                dst[k] = v;
            }
            for (dst, v) in p_nodes.iter_mut().zip(n) {
                dst[k] = v;
            }
        }
        let mut q = vec![[C64::default(); KAPPAS * KAPPAS]; rule.panels() + 1];
        for k1 in 0..KAPPAS {
            for k2 in 0..KAPPAS {
                let col: Vec<C64> = f.iter().zip(&p_nodes).map(|(fv, pv)| fv[k2] * pv[k1]).collect();
                let (b, _) = rule.cumulative(&col);
                for (dst, v) in q.iter_mut().zip(b) {
                    dst[k1 * KAPPAS + k2] = v;
                }
            }
        }
        let times = grid.time().points();
        let psi = times.iter().map(|&t| env.amplitude(t)).collect();
        let phase = times
            .iter()
            .map(|&t| std::array::from_fn(|e| C64::from_polar(1.0, (e as f64 - 1.0) * omega_q * t)))
            .collect();
        Cumulants { p: p_breaks, q, psi, phase }
    }

    fn len(&self) -> usize {
        self.psi.len()
    }

    /// Ordered integral of `prod_k f_{kappa_k}(y_k)` over `lo < y_1 < .. < y_m < hi`.
    fn block(&self, kappas: &[i32], lo: usize, hi: usize) -> C64 {
        match *kappas {
            [] => C64::new(1.0, 0.0),
            [k] => self.p[hi][slot(k)] - self.p[lo][slot(k)],
            [k1, k2] => {
                let (a, b) = (slot(k1), slot(k2));
                let q = a * KAPPAS + b;
                self.q[hi][q] - self.q[lo][q] - self.p[lo][a] * (self.p[hi][b] - self.p[lo][b])
            }
            _ => unreachable!("at most two photons are integrated out"),
        }
    }
}

/// Block occupations `(m0, m1, m2)` of the integrated photons relative to
/// the two observed times, with precomputed phase multipliers.
#[derive(Clone, Debug)]
struct SectorTerm {
    counts: [usize; 3],
    kappas: Vec<i32>,
    sign_p: i32,
    sign_q: i32,
}

/// Precomputed sector structure of `rho_1^{PQ}(t, t')` for `t <= t'` and `t > t'`.
#[derive(Clone, Debug)]
struct PairPlan {
    weight: C64,
    before: Vec<SectorTerm>,
    after: Vec<SectorTerm>,
}

impl PairPlan {
    fn new(p: &Trajectory, q: &Trajectory, weight: C64) -> Self {
        let sp = p.signs();
        let sq = q.signs();
        let m = sp.len() - 1;
        let mut before = Vec::new();
        let mut after = Vec::new();
        for m0 in 0..=m {
            for m1 in 0..=(m - m0) {
                let counts = [m0, m1, m - m0 - m1];
                for (t_first, out) in [(true, &mut before), (false, &mut after)] {
                    let (rp, rq) = if t_first { (m0, m0 + m1) } else { (m0 + m1, m0) };
                    let pos = |k: usize, r: usize| if k < r { k } else { k + 1 };
                    let kappas = (0..m).map(|k| sp[pos(k, rp)] - sq[pos(k, rq)]).collect();
                    out.push(SectorTerm {
                        counts,
                        kappas,
                        sign_p: sp[rp],
                        sign_q: sq[rq],
                    });
                }
            }
        }
        PairPlan { weight, before, after }
    }

    fn eval(&self, c: &Cumulants, i: usize, j: usize) -> C64 {
        let (terms, a, b) = if i <= j { (&self.before, i, j) } else { (&self.after, j, i) };
        let end = c.len() - 1;
        let mut acc = C64::new(0.0, 0.0);
        for t in terms {
            let [m0, m1, _] = t.counts;
            let k = &t.kappas;
            let v = c.block(&k[..m0], 0, a) * c.block(&k[m0..m0 + m1], a, b) * c.block(&k[m0 + m1..], b, end);
            acc += v * c.phase[i][(t.sign_p + 1) as usize] * c.phase[j][(1 - t.sign_q) as usize];
        }
        acc
    }
}

/// A weighted sum `sum w_PQ rho_1^{PQ}(t, t')` of trajectory-pair reduced
/// density matrices, evaluated lazily on the grid.
pub struct RdmKernel<'a> {
    cumulants: &'a Cumulants,
    plans: Vec<PairPlan>,
    prefactor: f64,
}

impl<'a> RdmKernel<'a> {
    pub(crate) fn new(cumulants: &'a Cumulants, pairs: &[(&Trajectory, &Trajectory, C64)]) -> Result<Self> {
        let n = pairs.first().map_or(1, |p| p.0.photons());
        if pairs.iter().any(|(p, q, _)| p.photons() != n || q.photons() != n) {
            return Err(Error::Contract("trajectory pairs must share the photon number".into()));
        }
        let plans = pairs
            .iter()
            .filter(|(_, _, w)| w.norm() > 0.0)
            .map(|(p, q, w)| PairPlan::new(p, q, *w))
            .collect();
        let prefactor = (1..n).map(|k| k as f64).product();
        Ok(RdmKernel {
            cumulants,
            plans,
            prefactor,
        })
    }

    /// `sum w_PQ rho_1^{PQ}(t_i, t_j)`.
    pub fn get(&self, i: usize, j: usize) -> C64 {
        let c = self.cumulants;
        let mut acc = C64::new(0.0, 0.0);
        for plan in &self.plans {
            acc += plan.weight * plan.eval(c, i, j);
        }
        acc * (self.prefactor * c.psi[i] * c.psi[j])
    }

    /// Lag sums with trapezoid weights; the kernel must be Hermitian.
    pub fn lag_sums(&self, weights: &[f64], dt: f64) -> LagSums {
        let n = weights.len();
        let sums = exec::map_range(n, |d| {
            let mut acc = C64::new(0.0, 0.0);
            for i in d..n {
                acc += self.get(i, i - d) * (weights[i] * weights[i - d]);
            }
            acc
        });
        LagSums { dt, sums }
    }

    /// Dense matrix, row major.
    pub fn dense(&self) -> Vec<C64> {
        let n = self.cumulants.len();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        exec::fill_rows(&mut out, n, |i, row| {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.get(i, j);
            }
        });
        out
    }
}

/// Dense single-photon reduced density matrix on a time grid.
#[derive(Clone, Debug)]
pub struct OnePhotonRdm {
    pub times: Vec<f64>,
    pub weights: Vec<f64>,
    /// Row-major `rho_1(t_i, t_j)`.
    pub data: Vec<C64>,
}

impl OnePhotonRdm {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.len() + j]
    }

    /// `int rho_1(t, t) dt`.
    pub fn trace(&self) -> C64 {
        (0..self.len()).map(|i| self.get(i, i) * self.weights[i]).sum()
    }

    /// `max |rho_1(t, t') - rho_1(t', t)^*|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `v^dagger rho v` with quadrature weights.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        let n = self.len();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += v[i].conj() * self.get(i, j) * v[j] * (self.weights[i] * self.weights[j]);
            }
        }
        acc
    }
}
