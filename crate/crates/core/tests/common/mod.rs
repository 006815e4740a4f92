//! Independent reference computations used only by tests.
#![allow(dead_code)]

use dispersive_scatter::envelope::Envelope;
use dispersive_scatter::fock::Trajectory;
use dispersive_scatter::quadrature::gauss_legendre;
use num_complex::Complex64 as C64;

/// Gauss-Legendre nodes per piece of the brute-force tensor rule.
pub const BRUTE_NODES: usize = 48;

struct Rule {
    x: Vec<f64>,
    w: Vec<f64>,
}

fn mapped(lo: f64, hi: f64) -> Rule {
    let (x, w) = gauss_legendre(BRUTE_NODES);
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    Rule {
        x: x.iter().map(|v| c + h * v).collect(),
        w: w.iter().map(|v| h * v).collect(),
    }
}

fn breakpoints(lo: f64, hi: f64, cuts: &[f64]) -> Vec<f64> {
    let mut b = vec![lo, hi];
    for &c in cuts {
        if c > lo && c < hi {
            b.push(c);
        }
    }
    b.sort_by(f64::total_cmp);
    b.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    b
}

/// `int F_P(t, g) F_Q(t', g)^* dg` over `n - 1` integrated photons by direct
/// tensor Gauss-Legendre quadrature on `[-half, half]^(n-1)`, with the axes
/// split at `t`, `t'` and the diagonal boxes mapped onto triangles.
pub fn brute_rho1<E: Envelope>(p: &Trajectory, q: &Trajectory, env: &E, omega_q: f64, half: f64, t: f64, tp: f64) -> C64 {
    let n = p.photons();
    let pieces = breakpoints(-half, half, &[t, tp]);
    let integrand = |g: &[f64]| -> C64 {
        let mut a = vec![t];
        a.extend_from_slice(g);
        let mut b = vec![tp];
        b.extend_from_slice(g);
        p.wavefunction(&a, env, omega_q) * q.wavefunction(&b, env, omega_q).conj()
    };
    match n {
        1 => integrand(&[]),
        2 => {
            let mut acc = C64::new(0.0, 0.0);
            for w in pieces.windows(2) {
                let r = mapped(w[0], w[1]);
                for (x, wt) in r.x.iter().zip(&r.w) {
                    acc += integrand(&[*x]) * *wt;
                }
            }
            acc
        }
        3 => {
            let mut acc = C64::new(0.0, 0.0);
            for (ia, wa) in pieces.windows(2).enumerate() {
                for (ib, wb) in pieces.windows(2).enumerate() {
                    if ia < ib {
                        continue;
                    }
                    if ia == ib {
                        // Symmetric integrand: twice the triangle y1 < y2.
                        let (lo, hi) = (wa[0], wa[1]);
                        let outer = mapped(lo, hi);
                        for (y2, w2) in outer.x.iter().zip(&outer.w) {
                            let inner = mapped(lo, *y2);
                            for (y1, w1) in inner.x.iter().zip(&inner.w) {
                                acc += integrand(&[*y1, *y2]) * (2.0 * w1 * w2);
                            }
                        }
                    } else {
                        let ra = mapped(wa[0], wa[1]);
                        let rb = mapped(wb[0], wb[1]);
                        for (x, wx) in ra.x.iter().zip(&ra.w) {
                            for (y, wy) in rb.x.iter().zip(&rb.w) {
                                acc += integrand(&[*x, *y]) * (2.0 * wx * wy);
                            }
                        }
                    }
                }
            }
            acc
        }
        _ => panic!("brute force covers n <= 3"),
    }
}
