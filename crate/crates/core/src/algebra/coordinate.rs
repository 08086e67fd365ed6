//! Realisation of the generators as Weyl-ordered quadratic forms in the phase
//! space variables `z = (x, y, p_x, p_y)`.
//!
//! A quadratic operator is stored through its symbol `z^T S z` with `S`
//! symmetric. The ten generators span all symmetric 4x4 matrices, so the map to
//! [`AlgebraElement`] is a bijection. Operator commutators of quadratics are
//! exactly `i` times the Poisson bracket of their symbols (with hbar = 1).

use std::sync::OnceLock;

use super::{AlgebraElement, GeneratorId, DIM};
use crate::numerics::{CMatrix, Matrix4, C64, ZERO};

pub const X: usize = 0;
pub const Y: usize = 1;
pub const PX: usize = 2;
pub const PY: usize = 3;

/// Symmetric coefficient matrix of a quadratic symbol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticForm(pub Matrix4);

impl QuadraticForm {
    pub fn zero() -> Self {
        QuadraticForm(Matrix4::zeros())
    }

    /// Adds `c * z_u * z_v`.
    pub fn add_monomial(&mut self, u: usize, v: usize, c: C64) {
        if u == v {
            self.0[(u, u)] += c;
        } else {
            self.0[(u, v)] += c * 0.5;
            self.0[(v, u)] += c * 0.5;
        }
    }

    pub fn monomials(terms: &[(usize, usize, f64)]) -> Self {
        let mut q = Self::zero();
        for &(u, v, c) in terms {
            q.add_monomial(u, v, C64::new(c, 0.0));
        }
        q
    }

    pub fn generator(g: GeneratorId) -> Self {
        generator_forms()[g.index()]
    }

    pub fn from_element(e: &AlgebraElement) -> Self {
        let forms = generator_forms();
        let mut m = Matrix4::zeros();
        for (c, f) in e.coeffs.iter().zip(forms) {
            m += f.0 * *c;
        }
        QuadraticForm(m)
    }

    pub fn to_element(&self) -> AlgebraElement {
        let (_, solve) = coordinate_system();
        let mut rhs = [ZERO; DIM];
        for (k, &(u, v)) in UPPER.iter().enumerate() {
            rhs[k] = self.0[(u, v)];
        }
        AlgebraElement::new(solve.mul_vec(&rhs))
    }

    pub fn eval(&self, z: &[C64; 4]) -> C64 {
        let sz = self.0.mul_vec(z);
        z.iter().zip(sz).map(|(a, b)| a * b).sum()
    }

    /// Poisson bracket `{f, g}` with `{x, p_x} = {y, p_y} = 1`.
    pub fn poisson(&self, other: &Self) -> Self {
        let j = canonical_form();
        let a = self.0;
        let b = other.0;
        QuadraticForm((a * j * b - b * j * a) * 2.0)
    }

    /// Operator commutator `[f, g] = i {f, g}`.
    pub fn commutator(&self, other: &Self) -> Self {
        QuadraticForm(self.poisson(other).0 * C64::new(0.0, 1.0))
    }

    /// Symbol after the linear substitution `z_old = L z_new`.
    pub fn substitute(&self, l: &Matrix4) -> Self {
        QuadraticForm(l.transpose() * self.0 * *l)
    }
}

const UPPER: [(usize, usize); DIM] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

fn canonical_form() -> Matrix4 {
    Matrix4::from_real([
        [0., 0., 1., 0.],
        [0., 0., 0., 1.],
        [-1., 0., 0., 0.],
        [0., -1., 0., 0.],
    ])
}

fn generator_forms() -> &'static [QuadraticForm; DIM] {
    &coordinate_system().0
}

fn coordinate_system() -> &'static ([QuadraticForm; DIM], CMatrix<DIM>) {
    static SYSTEM: OnceLock<([QuadraticForm; DIM], CMatrix<DIM>)> = OnceLock::new();
    SYSTEM.get_or_init(|| {
        let q = QuadraticForm::monomials;
        let forms = [
            // J0 = (px^2 + py^2 + x^2 + y^2) / 4
            q(&[(PX, PX, 0.25), (PY, PY, 0.25), (X, X, 0.25), (Y, Y, 0.25)]),
            // J1 = (x y + px py) / 2
            q(&[(X, Y, 0.5), (PX, PY, 0.5)]),
            // J2 = (x py - y px) / 2
            q(&[(X, PY, 0.5), (Y, PX, -0.5)]),
            // J3 = (px^2 - py^2 + x^2 - y^2) / 4
            q(&[(PX, PX, 0.25), (PY, PY, -0.25), (X, X, 0.25), (Y, Y, -0.25)]),
            // Q1 = (y py - x px) / 2
            q(&[(Y, PY, 0.5), (X, PX, -0.5)]),
            // Q2 = (px^2 + py^2 - x^2 - y^2) / 4
            q(&[(PX, PX, 0.25), (PY, PY, 0.25), (X, X, -0.25), (Y, Y, -0.25)]),
            // Q3 = (x py + y px) / 2
            q(&[(X, PY, 0.5), (Y, PX, 0.5)]),
            // K1 = (px^2 - py^2 - x^2 + y^2) / 4
            q(&[(PX, PX, 0.25), (PY, PY, -0.25), (X, X, -0.25), (Y, Y, 0.25)]),
            // K2 = (x px + y py) / 2
            q(&[(X, PX, 0.5), (Y, PY, 0.5)]),
            // K3 = (x y - px py) / 2
            q(&[(X, Y, 0.5), (PX, PY, -0.5)]),
        ];
        let mut a = CMatrix::<DIM>::zeros();
        for (col, f) in forms.iter().enumerate() {
            for (row, &(u, v)) in UPPER.iter().enumerate() {
                a[(row, col)] = f.0[(u, v)];
            }
        }
        let solve = a
            .inverse()
            .expect("generator symbols span the symmetric matrices");
        (forms, solve)
    })
}
