//! Gauss-Legendre rules, composite panel integration with cumulative values
//! at interior nodes, and adaptive Gauss-Kronrod integration.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, z);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Composite Gauss-Legendre rule with one panel per interval of a uniform
/// breakpoint grid.
///
/// Besides panel integrals it provides the spectral integration matrix
/// `S[q][r] = int_{-1}^{x_q} l_r(x) dx`, which yields running integrals at
/// the interior nodes; this makes nested cumulative integrals as accurate as
/// the panel rule itself.
#[derive(Clone, Debug)]
pub struct PanelRule {
    a: f64,
    h: f64,
    panels: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    integ: Vec<f64>,
}

impl PanelRule {
    /// `panels` intervals of `[a, b]`, `m` nodes each.
    pub fn new(a: f64, b: f64, panels: usize, m: usize) -> Self {
        assert!(panels >= 1 && m >= 1 && b > a);
        let (nodes, weights) = gauss_legendre(m);
        let integ = integration_matrix(&nodes);
        PanelRule {
            a,
            h: (b - a) / panels as f64,
            panels,
            nodes,
            weights,
            integ,
        }
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn len(&self) -> usize {
        self.panels * self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn breakpoint(&self, k: usize) -> f64 {
        self.a + k as f64 * self.h
    }

    /// All quadrature nodes, panel by panel.
    pub fn points(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len());
        for k in 0..self.panels {
            let mid = self.breakpoint(k) + 0.5 * self.h;
            for &x in &self.nodes {
                out.push(mid + 0.5 * self.h * x);
            }
        }
        out
    }

    /// Weight of the node at local position `q` in any panel.
    pub fn weight(&self, q: usize) -> f64 {
        0.5 * self.h * self.weights[q]
    }

    /// Running integral of `f` (sampled at [`points`](Self::points)):
    /// returns values at every breakpoint (length `panels + 1`) and at every
    /// node (length `len()`), both measured from the left end.
    pub fn cumulative<T>(&self, f: &[T]) -> (Vec<T>, Vec<T>)
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let m = self.order();
        assert_eq!(f.len(), self.len());
        let half = 0.5 * self.h;
        let mut at_breaks = Vec::with_capacity(self.panels + 1);
        let mut at_nodes = Vec::with_capacity(self.len());
        let mut acc = T::default();
        at_breaks.push(acc);
        for k in 0..self.panels {
            let fp = &f[k * m..(k + 1) * m];
            for q in 0..m {
                let mut s = T::default();
                for (r, &v) in fp.iter().enumerate() {
                    s = s + v * (self.integ[q * m + r] * half);
                }
                at_nodes.push(acc + s);
            }
            let mut total = T::default();
            for (r, &v) in fp.iter().enumerate() {
                total = total + v * (self.weights[r] * half);
            }
            acc = acc + total;
            at_breaks.push(acc);
        }
        (at_breaks, at_nodes)
    }

    /// Integral of `f` over the whole interval.
    pub fn integrate<T>(&self, f: &[T]) -> T
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let m = self.order();
        let mut acc = T::default();
        for (i, &v) in f.iter().enumerate() {
            acc = acc + v * self.weight(i % m);
        }
        acc
    }
}

fn integration_matrix(nodes: &[f64]) -> Vec<f64> {
    let m = nodes.len();
    let (gx, gw) = gauss_legendre(m);
    let lagrange = |r: usize, x: f64| -> f64 {
        let mut p = 1.0;
        for (j, &xj) in nodes.iter().enumerate() {
            if j != r {
                p *= (x - xj) / (nodes[r] - xj);
            }
        }
        p
    };
    let mut s = vec![0.0; m * m];
    for q in 0..m {
        let (lo, hi) = (-1.0, nodes[q]);
        let (c, r0) = (0.5 * (hi + lo), 0.5 * (hi - lo));
        for r in 0..m {
            s[q * m + r] = (0..m).map(|k| gw[k] * lagrange(r, c + r0 * gx[k])).sum::<f64>() * r0;
        }
    }
    s
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS_K: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const GK_WEIGHTS_G: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Globally adaptive 15-point Gauss-Kronrod integration of a vector-valued
/// function: the interval with the largest error estimate is bisected until
/// the summed estimate falls below `abs_tol`.
pub fn gauss_kronrod<const K: usize, F>(f: F, a: f64, b: f64, abs_tol: f64) -> [f64; K]
where
    F: Fn(f64) -> [f64; K],
{
    let mut parts = vec![(a, b, gk15(&f, a, b))];
    for _ in 0..5000 {
        let total: f64 = parts.iter().map(|p| p.2 .1).sum();
        if total <= abs_tol {
            break;
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.2 .1 > best.1 { (i, p.2 .1) } else { best });
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, gk15(&f, lo, mid)));
        parts.push((mid, hi, gk15(&f, mid, hi)));
    }
    parts.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out = [0.0; K];
    for p in &parts {
        for k in 0..K {
            out[k] += p.2 .0[k];
        }
    }
    out
}

fn gk15<const K: usize, F>(f: &F, a: f64, b: f64) -> ([f64; K], f64)
where
    F: Fn(f64) -> [f64; K],
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = [0.0; K];
    let mut gauss = [0.0; K];
    let fc = f(c);
    for k in 0..K {
        kron[k] = GK_WEIGHTS_K[7] * fc[k];
        gauss[k] = GK_WEIGHTS_G[3] * fc[k];
    }
    for j in 0..7 {
        let dx = h * GK_NODES[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        for k in 0..K {
            let s = f1[k] + f2[k];
            kron[k] += GK_WEIGHTS_K[j] * s;
            if j % 2 == 1 {
                gauss[k] += GK_WEIGHTS_G[j / 2] * s;
            }
        }
    }
    let mut err: f64 = 0.0;
    for k in 0..K {
        kron[k] *= h;
        gauss[k] *= h;
        err = err.max((kron[k] - gauss[k]).abs());
    }
    (kron, err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn legendre_rule_is_exact_for_polynomials() {
        for n in [1, 2, 5, 8, 17, 48] {
            let (x, w) = gauss_legendre(n);
            assert_relative_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-13);
            let deg = 2 * n - 1;
            let exact = if deg % 2 == 1 { 2.0 / (deg as f64) } else { 0.0 };
            let p = deg - 1;
            let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(p as i32)).sum();
            assert_relative_eq!(approx, exact, epsilon = 1e-12);
        }
    }

    #[test]
    fn cumulative_integral_of_exponential() {
        let rule = PanelRule::new(-2.0, 3.0, 10, 8);
        let pts = rule.points();
        let f: Vec<f64> = pts.iter().map(|x| x.exp()).collect();
        let (brk, nodes) = rule.cumulative(&f);
        for k in 0..=rule.panels() {
            assert_relative_eq!(brk[k], rule.breakpoint(k).exp() - (-2f64).exp(), epsilon = 1e-12);
        }
        for (x, v) in pts.iter().zip(&nodes) {
            assert_relative_eq!(*v, x.exp() - (-2f64).exp(), epsilon = 1e-12);
        }
    }

    #[test]
    fn kronrod_gaussian_integral() {
        let v = gauss_kronrod(|x| [(-x * x).exp(), x * x * (-x * x).exp()], -10.0, 10.0, 1e-13);
        assert_relative_eq!(v[0], PI.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(v[1], 0.5 * PI.sqrt(), epsilon = 1e-12);
    }
}
