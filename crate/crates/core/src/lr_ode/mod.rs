//! Lewis-Riesenfeld invariants from the ten-coefficient Ansatz: the linear ODE
//! for the coefficients, its solvers, the involution constraints and the
//! closed-form solution for proportional profiles.

mod closed_form;
mod evolve;
mod involution;
mod residual;

pub use closed_form::{
    closed_form_at_theta, closed_form_c, closed_form_trajectory, ClosedFormParams,
};
pub use evolve::{commutator_probe, evolve, evolve_fixed, EvolveMode, EvolveOptions, Trajectory};
pub use involution::{involution_residuals, BranchTracker, InvolutionResiduals};
pub use residual::{lr_residual, lr_residual_samples, lr_residual_samples_with_order};

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraElement, GeneratorId, GeneratorId::*, DIM};
use crate::error::Result;
use crate::hamiltonian::{CoupledOscillatorParams, OscillatorValues};
use crate::numerics::{Matrix10, Matrix4, C64, ZERO};

/// The coefficients `c1..c10` of the invariant Ansatz, stored zero-based.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CoefficientVector(pub [C64; DIM]);

impl CoefficientVector {
    pub fn zero() -> Self {
        CoefficientVector([ZERO; DIM])
    }

    /// `(0, 0, 1, 1, 0, 0, 0, 0, 0, 0)`: `I = 2 J2`, an involution.
    pub fn initial() -> Self {
        let mut c = Self::zero();
        c.0[2] = C64::new(1.0, 0.0);
        c.0[3] = C64::new(1.0, 0.0);
        c
    }

    /// One-based access matching the labels `c1..c10`.
    pub fn c(&self, k: usize) -> C64 {
        self.0[k - 1]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for CoefficientVector {
    type Output = C64;
    fn index(&self, k: usize) -> &C64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for CoefficientVector {
    fn index_mut(&mut self, k: usize) -> &mut C64 {
        &mut self.0[k]
    }
}

impl Serialize for CoefficientVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::numerics::pairs::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for CoefficientVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::numerics::pairs::deserialize(d).map(CoefficientVector)
    }
}

/// Generator combination multiplying each coefficient in the Ansatz.
pub const ANSATZ: [&[(GeneratorId, f64)]; DIM] = [
    &[(Q1, 1.0), (K2, -1.0)],
    &[(Q1, 1.0), (K2, 1.0)],
    &[(J2, 1.0), (Q3, 1.0)],
    &[(J2, 1.0), (Q3, -1.0)],
    &[(J1, 1.0), (K3, 1.0)],
    &[(J1, 1.0), (K3, -1.0)],
    &[(J0, 1.0), (J3, -1.0), (K1, 1.0), (Q2, -1.0)],
    &[(J0, 1.0), (J3, 1.0), (K1, -1.0), (Q2, -1.0)],
    &[(J0, 1.0), (J3, 1.0), (K1, 1.0), (Q2, 1.0)],
    &[(J0, 1.0), (J3, -1.0), (K1, -1.0), (Q2, 1.0)],
];

pub fn assemble_invariant(c: &CoefficientVector) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for (ck, combo) in c.0.iter().zip(ANSATZ) {
        for &(g, s) in combo {
            e[g] += ck * s;
        }
    }
    e
}

/// The 4x4 matrix of the invariant written directly in the coefficients.
pub fn invariant_matrix(c: &CoefficientVector) -> Matrix4 {
    let k = |n: usize| c.c(n);
    let rows = [
        [-k(1), -k(4), k(9) * 2.0, k(6)],
        [k(3), k(2), k(6), k(10) * 2.0],
        [-k(8) * 2.0, -k(5), k(1), -k(3)],
        [-k(5), -k(7) * 2.0, k(4), -k(2)],
    ];
    Matrix4::from_fn(|i, j| rows[i][j] * C64::new(0.0, 1.0))
}

/// `|I^2 - 1|_F` and `|det I - 1|` for the invariant matrix.
pub fn involution_errors(c: &CoefficientVector) -> (f64, f64) {
    let m = invariant_matrix(c);
    let sq = (m * m - Matrix4::identity()).frobenius_norm();
    let det = (m.determinant() - C64::new(1.0, 0.0)).norm();
    (sq, det)
}

/// Coefficient matrix of `dc/dt = M c` at fixed parameter values.
pub fn m_from_values(v: &OscillatorValues) -> Matrix10 {
    let a = C64::new(v.a, 0.0);
    let wx = C64::new(v.omega_x, 0.0);
    let wy = C64::new(v.omega_y, 0.0);
    let il = C64::new(0.0, v.lambda);
    let mut m = Matrix10::zeros();
    let mut set = |row: usize, col: usize, x: C64| m[(row - 1, col - 1)] = x;
    set(1, 8, a);
    set(1, 9, -wx * 2.0);
    set(1, 6, -il);
    set(2, 10, wy * 2.0);
    set(2, 7, -a);
    set(2, 6, il);
    set(3, 6, wx);
    set(3, 5, -a * 0.5);
    set(3, 10, il * 2.0);
    set(4, 5, a * 0.5);
    set(4, 6, -wy);
    set(4, 9, -il * 2.0);
    set(5, 3, wy);
    set(5, 4, -wx);
    set(5, 2, il);
    set(5, 1, -il);
    set(6, 4, a * 0.5);
    set(6, 3, -a * 0.5);
    set(7, 2, wy);
    set(7, 4, -il);
    set(8, 1, -wx);
    set(8, 3, il);
    set(9, 1, a * 0.5);
    set(10, 2, -a * 0.5);
    m
}

pub fn build_m(p: &CoupledOscillatorParams, t: f64) -> Result<Matrix10> {
    Ok(m_from_values(&p.at(t)?))
}
