//! Lie-algebraic construction of Lewis-Riesenfeld invariants and Dyson maps for
//! time-dependent PT-symmetric coupled oscillators.
//!
//! Every operator is an [`AlgebraElement`]: ten complex coefficients over the
//! sp(4) basis `[J0, J1, J2, J3, Q1, Q2, Q3, K1, K2, K3]`. Products and group
//! actions are carried out in the 4x4 defining representation and projected
//! back onto the basis.

pub mod algebra;
pub mod error;
pub mod hamiltonian;
pub mod lr_ode;
pub mod numerics;
pub mod point_transform;

pub use algebra::{AlgebraElement, GeneratorId};
pub use error::{Result, Sp4Error};
pub use numerics::{Matrix10, Matrix4, TimeGrid, Tolerances, C64};
