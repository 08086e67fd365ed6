use std::sync::OnceLock;

use super::basis::{from_matrix, matrix_of};
use super::{AlgebraElement, GeneratorId, DIM};
use crate::numerics::ZERO;

/// `table[i][j]` is the bracket `[X_i, X_j]` expanded in the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub table: [[AlgebraElement; DIM]; DIM],
}

impl StructureConstants {
    /// Derives the constants from the 4x4 generator matrices.
    pub fn from_matrices() -> Self {
        let mut table = [[AlgebraElement::zero(); DIM]; DIM];
        for a in GeneratorId::ALL {
            for b in GeneratorId::ALL {
                let m = matrix_of(a).commutator(&matrix_of(b));
                table[a.index()][b.index()] = from_matrix(&m).element;
            }
        }
        StructureConstants { table }
    }

    pub fn bracket(&self, a: GeneratorId, b: GeneratorId) -> AlgebraElement {
        self.table[a.index()][b.index()]
    }
}

pub fn structure_constants() -> &'static StructureConstants {
    static TABLE: OnceLock<StructureConstants> = OnceLock::new();
    TABLE.get_or_init(StructureConstants::from_matrices)
}

/// Lie bracket expanded bilinearly over the structure constants.
pub fn commutator(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let table = &structure_constants().table;
    let mut out = AlgebraElement::zero();
    for (i, &ai) in a.coeffs.iter().enumerate() {
        if ai == ZERO {
            continue;
        }
        for (j, &bj) in b.coeffs.iter().enumerate() {
            if bj == ZERO || i == j {
                continue;
            }
            let w = ai * bj;
            for (o, t) in out.coeffs.iter_mut().zip(&table[i][j].coeffs) {
                if *t != ZERO {
                    *o += w * t;
                }
            }
        }
    }
    out
}
