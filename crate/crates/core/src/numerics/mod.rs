//! Small dense numerical kernels sized for the 4x4 and 10x10 problems.

pub mod diff;
pub mod eig;
pub mod expm;
pub mod grid;
pub mod matrix;
pub mod pairs;
pub mod quadrature;
pub mod special;

use serde::{Deserialize, Serialize};

pub use diff::{central_diff, central_diff_order};
pub use eig::{eig4, eigenvalues, sort_eigenvalues};
pub use expm::{expm, expm_apply, expm_with_tol};
pub use grid::TimeGrid;
pub use matrix::{CMatrix, CVector, Matrix10, Matrix4, C64, I, ONE, ZERO};
pub use quadrature::{cumulative_integral, cumulative_simpson_fixed, integrate};
pub use special::sinc;

use crate::error::{Result, Sp4Error};

/// Numerical tolerances shared by the kernels. `fd_step` of `None` means the
/// run grid's own spacing.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub expm_tol: f64,
    pub proj_tol: f64,
    pub fd_step: Option<f64>,
    pub quad_tol: f64,
    pub eig_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            expm_tol: expm::DEFAULT_EXPM_TOL,
            proj_tol: 1e-10,
            fd_step: None,
            quad_tol: quadrature::DEFAULT_QUAD_TOL,
            eig_tol: eig::DEFAULT_EIG_TOL,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("expm_tol", self.expm_tol),
            ("proj_tol", self.proj_tol),
            ("quad_tol", self.quad_tol),
            ("eig_tol", self.eig_tol),
            ("fd_step", self.fd_step.unwrap_or(1.0)),
        ];
        for (name, v) in named {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Sp4Error::InvalidParams(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
