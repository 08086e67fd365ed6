//! The sp(4) Lie algebra over the frozen basis `[J0, J1, J2, J3, Q1, Q2, Q3, K1, K2, K3]`.

mod basis;
pub mod coordinate;
mod element;
mod maps;
mod relations;
mod structure;

pub use basis::{from_matrix, gram_matrix, matrix_of, omega, to_matrix, Projection};
pub use element::AlgebraElement;
pub use maps::{
    adjoint, group_conjugate, group_conjugate_with_tol, matrix_adjoint, parity_action,
    parity_action_with, parity_matrix, pt_map, ParityForm, PtVariant,
};
pub use relations::declared_bracket;
pub use structure::{commutator, structure_constants, StructureConstants};

use serde::{Deserialize, Serialize};
use std::fmt;

/// Number of generators.
pub const DIM: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorId {
    J0,
    J1,
    J2,
    J3,
    Q1,
    Q2,
    Q3,
    K1,
    K2,
    K3,
}

impl GeneratorId {
    pub const ALL: [GeneratorId; DIM] = [
        GeneratorId::J0,
        GeneratorId::J1,
        GeneratorId::J2,
        GeneratorId::J3,
        GeneratorId::Q1,
        GeneratorId::Q2,
        GeneratorId::Q3,
        GeneratorId::K1,
        GeneratorId::K2,
        GeneratorId::K3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(k: usize) -> Option<Self> {
        Self::ALL.get(k).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorId::J0 => "J0",
            GeneratorId::J1 => "J1",
            GeneratorId::J2 => "J2",
            GeneratorId::J3 => "J3",
            GeneratorId::Q1 => "Q1",
            GeneratorId::Q2 => "Q2",
            GeneratorId::Q3 => "Q3",
            GeneratorId::K1 => "K1",
            GeneratorId::K2 => "K2",
            GeneratorId::K3 => "K3",
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
