//! Two-level algebra: 2x2 complex matrices, Pauli decomposition, the tilted
//! Hamiltonian eigenbasis and qubit states.
//!
//! Matrices act on the `sigma_z` basis ordered `(|e_z>, |g_z>)`, so that
//! `sigma_z = diag(+1, -1)`. The eigenbasis of `sigma_theta` is ordered
//! `(|g_theta>, |e_theta>)` and indexed by [`Level`].

use std::ops::{Add, AddAssign, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{invalid, Result};

pub(crate) const I: C64 = C64::new(0.0, 1.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense complex 2x2 matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn sigma_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn sigma_y() -> Self {
        Mat2([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn sigma_z() -> Self {
        Mat2([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]])
    }

    /// `{I, sigma_x, sigma_y, sigma_z}`.
    pub const fn pauli_basis() -> [Mat2; 4] {
        [
            Self::identity(),
            Self::sigma_x(),
            Self::sigma_y(),
            Self::sigma_z(),
        ]
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2([[a, ZERO], [ZERO, d]])
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.0[r][c]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// `A X A^dagger`.
    pub fn conjugate_by(&self, a: &Mat2) -> Self {
        *a * *self * a.adjoint()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Coefficients `c_mu = Tr(sigma_mu M)`, so that `M = (1/2) sum_mu c_mu sigma_mu`.
    pub fn to_pauli(&self) -> [C64; 4] {
        let m = &self.0;
        [
            m[0][0] + m[1][1],
            m[0][1] + m[1][0],
            I * (m[0][1] - m[1][0]),
            m[0][0] - m[1][1],
        ]
    }

    pub fn from_pauli(c: [C64; 4]) -> Self {
        let h = 0.5;
        Mat2([
            [(c[0] + c[3]) * h, (c[1] - I * c[2]) * h],
            [(c[1] + I * c[2]) * h, (c[0] - c[3]) * h],
        ])
    }

    /// `exp[-i (a0 I + a . sigma)]` for real `a0`, `a`.
    pub fn exp_hermitian(a0: f64, a: [f64; 3]) -> Self {
        let r = (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt();
        let (s, c) = r.sin_cos();
        let sinc = if r > 1e-300 { s / r } else { 1.0 };
        let n = [a[0] * sinc, a[1] * sinc, a[2] * sinc];
        // cos r I - i sin r (n . sigma)
        let m = Mat2([
            [C64::new(c, -n[2]), C64::new(-n[1], -n[0])],
            [C64::new(n[1], -n[0]), C64::new(c, n[2])],
        ]);
        m.scale(C64::from_polar(1.0, -a0))
    }

    pub fn approx_eq(&self, other: &Mat2, tol: f64) -> bool {
        (*self - *other).norm() <= tol
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Mat2::zero()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let mut r = self;
        r += o;
        r
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        for i in 0..2 {
            for j in 0..2 {
                self.0[i][j] += o.0[i][j];
            }
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale_re(-1.0)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale_re(s)
    }
}

/// Eigenstates of the tilted Hamiltonian `H_Q = (omega_q/2) sigma_theta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    G = 0,
    E = 1,
}

impl Level {
    pub fn flipped(self) -> Level {
        match self {
            Level::G => Level::E,
            Level::E => Level::G,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn letter(self) -> char {
        match self {
            Level::G => 'G',
            Level::E => 'E',
        }
    }
}

/// `sigma_theta = cos(theta) sigma_z + sin(theta) sigma_x`.
pub fn sigma_theta(theta: f64) -> Mat2 {
    Mat2::sigma_z() * theta.cos() + Mat2::sigma_x() * theta.sin()
}

/// Change of basis between the `sigma_z` basis and the `(g_theta, e_theta)` basis.
#[derive(Clone, Copy, Debug)]
pub struct ThetaBasis {
    /// Columns are `|g_theta>` and `|e_theta>` in z components.
    v: Mat2,
}

impl ThetaBasis {
    pub fn new(theta: f64) -> Self {
        let (s, c) = (0.5 * theta).sin_cos();
        let v = Mat2::new(
            C64::new(-s, 0.0),
            C64::new(c, 0.0),
            C64::new(c, 0.0),
            C64::new(s, 0.0),
        );
        ThetaBasis { v }
    }

    /// z-basis components of a Hamiltonian eigenstate.
    pub fn ket(&self, level: Level) -> [C64; 2] {
        let j = level.index();
        [self.v.0[0][j], self.v.0[1][j]]
    }

    /// Operator given in the eigenbasis, returned in the z basis.
    pub fn to_z(&self, m: &Mat2) -> Mat2 {
        self.v * *m * self.v.adjoint()
    }

    pub fn from_z(&self, m: &Mat2) -> Mat2 {
        self.v.adjoint() * *m * self.v
    }
}

/// Qubit density matrix in the z basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Density(pub Mat2);

impl Density {
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Self {
        Density(Mat2::from_pauli([
            ONE,
            C64::new(x, 0.0),
            C64::new(y, 0.0),
            C64::new(z, 0.0),
        ]))
    }

    pub fn from_ket(k: [C64; 2]) -> Self {
        Density(Mat2::new(
            k[0] * k[0].conj(),
            k[0] * k[1].conj(),
            k[1] * k[0].conj(),
            k[1] * k[1].conj(),
        ))
    }

    pub fn maximally_mixed() -> Self {
        Density::from_bloch(0.0, 0.0, 0.0)
    }

    /// `(X, Y, Z)` with `2 rho = I + X sigma_x + Y sigma_y + Z sigma_z`.
    pub fn bloch(&self) -> [f64; 3] {
        let c = self.0.to_pauli();
        [c[1].re, c[2].re, c[3].re]
    }

    pub fn bloch_norm(&self) -> f64 {
        let b = self.bloch();
        (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let c = self.0.to_pauli();
        let r = (c[1].re.powi(2) + c[2].re.powi(2) + c[3].re.powi(2)).sqrt();
        0.5 * (c[0].re - r)
    }

    /// Hermiticity defect `|rho - rho^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.0 - self.0.adjoint()).norm()
    }

    /// Matrix in the `(g_theta, e_theta)` basis.
    pub fn in_theta_basis(&self, theta: f64) -> Mat2 {
        ThetaBasis::new(theta).from_z(&self.0)
    }

    /// Population of a Hamiltonian eigenstate.
    pub fn population(&self, theta: f64, level: Level) -> f64 {
        let m = self.in_theta_basis(theta);
        m.0[level.index()][level.index()].re
    }

    /// Free evolution `exp(-i H_Q t) rho exp(+i H_Q t)`.
    pub fn evolve_free(&self, theta: f64, omega_q: f64, t: f64) -> Density {
        Density(self.0.conjugate_by(&free_propagator(theta, omega_q, t)))
    }
}

/// `exp(-i H_Q t)` with `H_Q = (omega_q/2) sigma_theta`.
pub fn free_propagator(theta: f64, omega_q: f64, t: f64) -> Mat2 {
    let h = 0.5 * omega_q * t;
    Mat2::exp_hermitian(0.0, [h * theta.sin(), 0.0, h * theta.cos()])
}

/// User-facing qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QubitState {
    /// `b_g |g_theta> + b_e |e_theta>`.
    Pure { b_g: C64, b_e: C64 },
    /// Bloch vector in the z basis.
    Bloch { x: f64, y: f64, z: f64 },
}

impl QubitState {
    pub fn ground() -> Self {
        QubitState::Pure { b_g: ONE, b_e: ZERO }
    }

    pub fn excited() -> Self {
        QubitState::Pure { b_g: ZERO, b_e: ONE }
    }

    pub fn pure(b_g: C64, b_e: C64) -> Result<Self> {
        let n = b_g.norm_sqr() + b_e.norm_sqr();
        if (n - 1.0).abs() > 1e-9 {
            return Err(invalid("b_g, b_e", format!("amplitudes must be normalized, |b|^2 = {n}")));
        }
        Ok(QubitState::Pure { b_g, b_e })
    }

    pub fn bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let r2 = x * x + y * y + z * z;
        if !(r2.is_finite()) || r2 > 1.0 + 1e-12 {
            return Err(invalid("bloch", format!("Bloch vector norm {} exceeds 1", r2.sqrt())));
        }
        Ok(QubitState::Bloch { x, y, z })
    }

    /// Density matrix in the z basis for a Hamiltonian tilted by `theta`.
    pub fn density(&self, theta: f64) -> Density {
        match *self {
            QubitState::Pure { b_g, b_e } => {
                let basis = ThetaBasis::new(theta);
                let g = basis.ket(Level::G);
                let e = basis.ket(Level::E);
                Density::from_ket([b_g * g[0] + b_e * e[0], b_g * g[1] + b_e * e[1]])
            }
            QubitState::Bloch { x, y, z } => Density::from_bloch(x, y, z),
        }
    }
}

/// Initial qubit preparations offered to scenario runs.
///
/// Apart from [`InitialState::GroundZAtArrival`], each is the state of the
/// qubit at the start of the simulation window `t = -T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialState {
    GroundTheta,
    ExcitedTheta,
    GroundZ,
    ExcitedZ,
    /// `exp(i T H_Q)|g_z>`: free evolution would bring it to `|g_z>` at `t = 0`.
    GroundZAtArrival,
    Bloch { x: f64, y: f64, z: f64 },
}

impl InitialState {
    /// Schroedinger-picture state at `t = -t_start`.
    pub fn at_start(&self, theta: f64, omega_q: f64, t_start: f64) -> Density {
        match *self {
            InitialState::GroundTheta => QubitState::ground().density(theta),
            InitialState::ExcitedTheta => QubitState::excited().density(theta),
            InitialState::GroundZ => Density::from_bloch(0.0, 0.0, -1.0),
            InitialState::ExcitedZ => Density::from_bloch(0.0, 0.0, 1.0),
            InitialState::GroundZAtArrival => {
                Density::from_bloch(0.0, 0.0, -1.0).evolve_free(theta, omega_q, -t_start)
            }
            InitialState::Bloch { x, y, z } => Density::from_bloch(x, y, z),
        }
    }

    /// Interaction-picture state, i.e. the free evolution of
    /// [`at_start`](Self::at_start) to `t = 0`.
    pub fn interaction(&self, theta: f64, omega_q: f64, t_start: f64) -> Density {
        self.at_start(theta, omega_q, t_start)
            .evolve_free(theta, omega_q, t_start)
    }

    /// Whether the state is an eigenstate of the qubit Hamiltonian.
    pub fn is_energy_eigenstate(&self) -> bool {
        matches!(self, InitialState::GroundTheta | InitialState::ExcitedTheta)
    }
}
