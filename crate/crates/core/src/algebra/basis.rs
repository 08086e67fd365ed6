use std::sync::OnceLock;

use super::{AlgebraElement, GeneratorId, DIM};
use crate::numerics::{CMatrix, Matrix4, C64, ZERO};

// Real block patterns; each generator is (i/2) times its pattern, except K3
// which carries -(i/2).
const PATTERNS: [[[f64; 4]; 4]; DIM] = [
    // J0 = [[0, 1], [-1, 0]]
    [
        [0., 0., 1., 0.],
        [0., 0., 0., 1.],
        [-1., 0., 0., 0.],
        [0., -1., 0., 0.],
    ],
    // J1 = [[0, s1], [-s1, 0]]
    [
        [0., 0., 0., 1.],
        [0., 0., 1., 0.],
        [0., -1., 0., 0.],
        [-1., 0., 0., 0.],
    ],
    // J2 = [[e, 0], [0, e]] with e = [[0, -1], [1, 0]]
    [
        [0., -1., 0., 0.],
        [1., 0., 0., 0.],
        [0., 0., 0., -1.],
        [0., 0., 1., 0.],
    ],
    // J3 = [[0, s3], [-s3, 0]]
    [
        [0., 0., 1., 0.],
        [0., 0., 0., -1.],
        [-1., 0., 0., 0.],
        [0., 1., 0., 0.],
    ],
    // Q1 = [[-s3, 0], [0, s3]]
    [
        [-1., 0., 0., 0.],
        [0., 1., 0., 0.],
        [0., 0., 1., 0.],
        [0., 0., 0., -1.],
    ],
    // Q2 = [[0, 1], [1, 0]]
    [
        [0., 0., 1., 0.],
        [0., 0., 0., 1.],
        [1., 0., 0., 0.],
        [0., 1., 0., 0.],
    ],
    // Q3 = [[s1, 0], [0, -s1]]
    [
        [0., 1., 0., 0.],
        [1., 0., 0., 0.],
        [0., 0., 0., -1.],
        [0., 0., -1., 0.],
    ],
    // K1 = [[0, s3], [s3, 0]]
    [
        [0., 0., 1., 0.],
        [0., 0., 0., -1.],
        [1., 0., 0., 0.],
        [0., -1., 0., 0.],
    ],
    // K2 = [[1, 0], [0, -1]]
    [
        [1., 0., 0., 0.],
        [0., 1., 0., 0.],
        [0., 0., -1., 0.],
        [0., 0., 0., -1.],
    ],
    // K3 = -[[0, s1], [s1, 0]]
    [
        [0., 0., 0., -1.],
        [0., 0., -1., 0.],
        [0., -1., 0., 0.],
        [-1., 0., 0., 0.],
    ],
];

struct Basis {
    matrices: [Matrix4; DIM],
    gram_inverse: CMatrix<DIM>,
    gram: CMatrix<DIM>,
}

fn basis() -> &'static Basis {
    static BASIS: OnceLock<Basis> = OnceLock::new();
    BASIS.get_or_init(|| {
        let half_i = C64::new(0.0, 0.5);
        let matrices = PATTERNS.map(|p| Matrix4::from_real(p) * half_i);
        let gram = CMatrix::<DIM>::from_fn(|i, j| (matrices[i].dagger() * matrices[j]).trace());
        let gram_inverse = gram
            .inverse()
            .expect("generator matrices are linearly independent");
        Basis {
            matrices,
            gram_inverse,
            gram,
        }
    })
}

/// The symplectic form `[[0, 1], [-1, 0]]` in 2x2 blocks.
pub fn omega() -> Matrix4 {
    Matrix4::from_real([
        [0., 0., 1., 0.],
        [0., 0., 0., 1.],
        [-1., 0., 0., 0.],
        [0., -1., 0., 0.],
    ])
}

pub fn matrix_of(g: GeneratorId) -> Matrix4 {
    basis().matrices[g.index()]
}

/// Hilbert-Schmidt Gram matrix `trace(X_i^dagger X_j)` of the basis.
pub fn gram_matrix() -> CMatrix<DIM> {
    basis().gram
}

pub fn to_matrix(e: &AlgebraElement) -> Matrix4 {
    let b = basis();
    let mut m = Matrix4::zeros();
    for (c, x) in e.coeffs.iter().zip(&b.matrices) {
        if *c != ZERO {
            m += *x * *c;
        }
    }
    m
}

/// Least-squares projection of a 4x4 matrix onto sp(4).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projection {
    pub element: AlgebraElement,
    /// Frobenius norm of the part of the matrix outside the algebra.
    pub residual: f64,
}

pub fn from_matrix(m: &Matrix4) -> Projection {
    let b = basis();
    let mut rhs = [ZERO; DIM];
    for (r, x) in rhs.iter_mut().zip(&b.matrices) {
        *r = (x.dagger() * *m).trace();
    }
    let element = AlgebraElement::new(b.gram_inverse.mul_vec(&rhs));
    let residual = (*m - to_matrix(&element)).frobenius_norm();
    Projection { element, residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorId::*;

    #[test]
    fn printed_examples() {
        let i2 = C64::new(0.0, 0.5);
        let j0 = matrix_of(J0);
        assert_eq!(j0[(0, 2)], i2);
        assert_eq!(j0[(2, 0)], -i2);
        assert_eq!(j0[(0, 0)], ZERO);
        let k2 = matrix_of(K2);
        assert_eq!(Matrix4::diag(&[i2, i2, -i2, -i2]), k2);
    }

    #[test]
    fn identity_is_orthogonal_to_the_algebra() {
        let p = from_matrix(&Matrix4::identity());
        assert!(p.element.max_abs() < 1e-15);
        assert!((p.residual - 2.0).abs() < 1e-15);
    }

    #[test]
    fn generators_project_to_units() {
        for g in GeneratorId::ALL {
            let p = from_matrix(&matrix_of(g));
            assert!(p.element.max_abs_diff(&AlgebraElement::unit(g)) < 1e-15);
            assert!(p.residual < 1e-15);
        }
    }
}
