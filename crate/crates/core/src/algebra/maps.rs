use super::basis::{from_matrix, matrix_of, to_matrix};
use super::{AlgebraElement, GeneratorId, DIM};
use crate::error::{Result, Sp4Error};
use crate::numerics::{expm, Matrix4, C64};

/// The two antilinear symmetries of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtVariant {
    /// Flips J1, Q1, K2, K3.
    Pt,
    /// Flips J0, J3, Q1, Q2, K1, K2.
    PtTilde,
}

const PT_SIGNS: [f64; DIM] = [1., -1., 1., 1., -1., 1., 1., 1., -1., -1.];
const PT_TILDE_SIGNS: [f64; DIM] = [-1., 1., 1., -1., -1., -1., 1., -1., -1., 1.];
// J matrices are Hermitian, Q and K anti-Hermitian.
const DAGGER_SIGNS: [f64; DIM] = [1., 1., 1., 1., -1., -1., -1., -1., -1., -1.];

fn conj_with_signs(e: &AlgebraElement, signs: &[f64; DIM]) -> AlgebraElement {
    let mut out = *e;
    for (c, s) in out.coeffs.iter_mut().zip(signs) {
        *c = c.conj() * *s;
    }
    out
}

pub fn pt_map(e: &AlgebraElement, variant: PtVariant) -> AlgebraElement {
    match variant {
        PtVariant::Pt => conj_with_signs(e, &PT_SIGNS),
        PtVariant::PtTilde => conj_with_signs(e, &PT_TILDE_SIGNS),
    }
}

/// Operator adjoint in the coordinate representation, where every generator
/// is Hermitian: plain coefficient conjugation.
pub fn adjoint(e: &AlgebraElement) -> AlgebraElement {
    conj_with_signs(e, &[1.0; DIM])
}

/// Coefficients of the conjugate transpose of the 4x4 matrix of `e`.
pub fn matrix_adjoint(e: &AlgebraElement) -> AlgebraElement {
    conj_with_signs(e, &DAGGER_SIGNS)
}

fn check_leak(residual: f64, scale: f64, tol: f64) -> Result<()> {
    let tolerance = tol * scale.max(1.0);
    if residual > tolerance || !residual.is_finite() {
        return Err(Sp4Error::ProjectionLeak {
            residual,
            tolerance,
        });
    }
    Ok(())
}

/// Adjoint group action `exp(X) e exp(-X)`.
pub fn group_conjugate(exponent: &AlgebraElement, e: &AlgebraElement) -> Result<AlgebraElement> {
    group_conjugate_with_tol(exponent, e, 1e-10)
}

/// As [`group_conjugate`]; the projection residual must stay below
/// `tol * max(1, |G e G^-1|_F)`.
pub fn group_conjugate_with_tol(
    exponent: &AlgebraElement,
    e: &AlgebraElement,
    tol: f64,
) -> Result<AlgebraElement> {
    let x = to_matrix(exponent);
    let g = expm(&x);
    let g_inv = expm(&(-x));
    let m = g * to_matrix(e) * g_inv;
    let p = from_matrix(&m);
    check_leak(p.residual, m.frobenius_norm(), tol)?;
    Ok(p.element)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ParityForm {
    /// Conjugation by 2 J3, which squares to the identity.
    #[default]
    TwoJ3,
    /// Conjugation by exp(i pi J3).
    ExpIPiJ3,
}

pub fn parity_matrix(form: ParityForm) -> Matrix4 {
    let j3 = matrix_of(GeneratorId::J3);
    match form {
        ParityForm::TwoJ3 => j3 * 2.0,
        ParityForm::ExpIPiJ3 => expm(&(j3 * C64::new(0.0, std::f64::consts::PI))),
    }
}

pub fn parity_action(e: &AlgebraElement) -> Result<AlgebraElement> {
    parity_action_with(e, ParityForm::TwoJ3)
}

pub fn parity_action_with(e: &AlgebraElement, form: ParityForm) -> Result<AlgebraElement> {
    let p = parity_matrix(form);
    let p_inv = match form {
        ParityForm::TwoJ3 => p,
        ParityForm::ExpIPiJ3 => {
            expm(&(matrix_of(GeneratorId::J3) * C64::new(0.0, -std::f64::consts::PI)))
        }
    };
    let m = p * to_matrix(e) * p_inv;
    let proj = from_matrix(&m);
    check_leak(proj.residual, m.frobenius_norm(), 1e-10)?;
    Ok(proj.element)
}
