use serde::Serialize;

use super::CoefficientVector;
use crate::error::{Result, Sp4Error};
use crate::numerics::C64;

const CHI_PLUS_TOL: f64 = 1e-12;

/// Residuals (lhs - rhs) of the four constraints that make the invariant an
/// involution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InvolutionResiduals {
    pub r1: C64,
    pub r2: C64,
    pub r7: C64,
    pub r10: C64,
    pub chi_plus: C64,
    pub chi_minus: C64,
    /// `4 c8 c9 + chi_plus - 1`, the square of the c1 constraint's right side.
    pub radicand: C64,
    /// The square root of the radicand used for `r1`.
    pub root: C64,
    /// `c1^2 - radicand`: the c1 constraint without the square root.
    pub squared_r1: C64,
}

impl InvolutionResiduals {
    pub fn max_abs(&self) -> f64 {
        [self.r1, self.r2, self.r7, self.r10]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest residual with the c1 constraint in squared form.
    pub fn max_abs_squared_form(&self) -> f64 {
        [self.squared_r1, self.r2, self.r7, self.r10]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Whether `c1` sits on the same branch as the chosen root (or both
    /// branches coincide within `tol`).
    pub fn branch_agrees(&self, c1: C64, tol: f64) -> bool {
        (c1 - self.root).norm() <= (c1 + self.root).norm() + tol
    }
}

fn evaluate(c: &CoefficientVector, pick: impl FnOnce(C64) -> C64) -> Result<InvolutionResiduals> {
    let k = |n: usize| c.c(n);
    let chi_plus = k(3) * k(4) + k(5) * k(6);
    let chi_minus = k(3) * k(4) - k(5) * k(6);
    if chi_plus.norm() < CHI_PLUS_TOL {
        return Err(Sp4Error::ChiPlusZero {
            magnitude: chi_plus.norm(),
        });
    }
    let radicand = k(8) * k(9) * 4.0 + chi_plus - 1.0;
    let root = pick(radicand.sqrt());
    let rhs2 =
        (k(4) * k(6) * k(8) - k(3) * k(5) * k(9)) * 2.0 / chi_plus + chi_minus / chi_plus * k(1);
    let rhs7 = (k(1) * k(4) * k(5) - k(8) * k(4) * k(4) - k(9) * k(5) * k(5)) / chi_plus;
    let rhs10 = (-k(1) * k(3) * k(6) - k(9) * k(3) * k(3) - k(8) * k(6) * k(6)) / chi_plus;
    Ok(InvolutionResiduals {
        r1: k(1) - root,
        r2: k(2) - rhs2,
        r7: k(7) - rhs7,
        r10: k(10) - rhs10,
        chi_plus,
        chi_minus,
        radicand,
        root,
        squared_r1: k(1) * k(1) - radicand,
    })
}

/// Residuals at a single point. With no history to follow, the sign of the
/// square root is the one closest to `c1` itself.
pub fn involution_residuals(c: &CoefficientVector) -> Result<InvolutionResiduals> {
    let c1 = c.c(1);
    evaluate(c, |q| {
        if (c1 - q).norm() <= (c1 + q).norm() {
            q
        } else {
            -q
        }
    })
}

/// Follows one continuous branch of the c1 square root along a trajectory by
/// quadratic extrapolation of the previous three roots, which also carries the
/// branch through double zeros where the root touches zero without crossing.
#[derive(Clone, Debug, Default)]
pub struct BranchTracker {
    history: Vec<C64>,
}

impl BranchTracker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn next(&mut self, c: &CoefficientVector) -> Result<InvolutionResiduals> {
        let predicted = match self.history.as_slice() {
            [] => None,
            [only] => Some(*only),
            [a, b] => Some(*b * 2.0 - *a),
            [.., a, b, c] => Some((*c - *b) * 3.0 + *a),
        };
        let res = match predicted {
            None => involution_residuals(c)?,
            Some(p) => evaluate(c, |q| {
                if (p - q).norm() <= (p + q).norm() {
                    q
                } else {
                    -q
                }
            })?,
        };
        self.history.push(res.root);
        if self.history.len() > 3 {
            self.history.remove(0);
        }
        Ok(res)
    }
}
