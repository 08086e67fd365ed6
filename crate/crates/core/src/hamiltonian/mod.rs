//! The PT-symmetric coupled-oscillator Hamiltonian, its instantaneous spectrum
//! and regime classification.

mod profile;

pub use profile::ScalarProfile;

use serde::{Deserialize, Serialize};

use crate::algebra::{to_matrix, AlgebraElement, GeneratorId::*};
use crate::error::Result;
use crate::numerics::{eig4, sort_eigenvalues, C64};

/// Time-dependent coefficients of the coupled-oscillator Hamiltonian.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoupledOscillatorParams {
    pub a: ScalarProfile,
    pub omega_x: ScalarProfile,
    pub omega_y: ScalarProfile,
    pub lambda: ScalarProfile,
}

/// The four profiles evaluated at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorValues {
    pub a: f64,
    pub omega_x: f64,
    pub omega_y: f64,
    pub lambda: f64,
}

impl OscillatorValues {
    pub fn omega_plus(&self) -> f64 {
        self.omega_x + self.omega_y
    }

    pub fn omega_minus(&self) -> f64 {
        self.omega_x - self.omega_y
    }
}

impl CoupledOscillatorParams {
    /// The commuting family `a = lambda`, `omega_x = alpha lambda`, `omega_y = lambda`.
    pub fn proportional(alpha: f64, lambda: ScalarProfile) -> Self {
        CoupledOscillatorParams {
            a: lambda.clone(),
            omega_x: lambda.scaled(alpha),
            omega_y: lambda.clone(),
            lambda,
        }
    }

    pub fn constant(a: f64, omega_x: f64, omega_y: f64, lambda: f64) -> Self {
        CoupledOscillatorParams {
            a: ScalarProfile::constant(a),
            omega_x: ScalarProfile::constant(omega_x),
            omega_y: ScalarProfile::constant(omega_y),
            lambda: ScalarProfile::constant(lambda),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate()?;
        self.omega_x.validate()?;
        self.omega_y.validate()?;
        self.lambda.validate()
    }

    pub fn at(&self, t: f64) -> Result<OscillatorValues> {
        Ok(OscillatorValues {
            a: self.a.eval(t)?,
            omega_x: self.omega_x.eval(t)?,
            omega_y: self.omega_y.eval(t)?,
            lambda: self.lambda.eval(t)?,
        })
    }
}

/// `a/2 (J0+Q2) + W+/2 (J0-Q2) + W-/2 (J3-K1) + i lambda (J1+K3)`.
pub fn hamiltonian_from_values(v: &OscillatorValues) -> AlgebraElement {
    let half_a = 0.5 * v.a;
    let half_p = 0.5 * v.omega_plus();
    let half_m = 0.5 * v.omega_minus();
    let il = C64::new(0.0, v.lambda);
    let mut h = AlgebraElement::from_real_terms(&[
        (J0, half_a + half_p),
        (Q2, half_a - half_p),
        (J3, half_m),
        (K1, -half_m),
    ]);
    h[J1] = il;
    h[K3] = il;
    h
}

pub fn build_h(p: &CoupledOscillatorParams, t: f64) -> Result<AlgebraElement> {
    Ok(hamiltonian_from_values(&p.at(t)?))
}

/// `a (J0+J3) + b (J0-J3) + i lambda (J1+K3)` from plain numbers.
pub fn modified_hamiltonian_from_values(a: f64, b: f64, lambda: f64) -> AlgebraElement {
    let il = C64::new(0.0, lambda);
    let mut h = AlgebraElement::from_real_terms(&[(J0, a + b), (J3, a - b)]);
    h[J1] = il;
    h[K3] = il;
    h
}

pub fn build_h_modified(
    a: &ScalarProfile,
    b: &ScalarProfile,
    lambda: &ScalarProfile,
    t: f64,
) -> Result<AlgebraElement> {
    Ok(modified_hamiltonian_from_values(
        a.eval(t)?,
        b.eval(t)?,
        lambda.eval(t)?,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    /// `+-1/2 [a W+^2 +- a sqrt(W+^2 - 4 lambda^2)]^(1/2)` as printed.
    Formula,
    /// `+-1/2 [a W+ +- a sqrt(W-^2 - 4 lambda^2)]^(1/2)`, the normal-mode
    /// frequencies of the 4x4 representation.
    NormalMode,
    /// Direct eigensolve of the 4x4 matrix.
    Numeric,
}

fn paired(inner_plus: C64, inner_minus: C64) -> [C64; 4] {
    let p = inner_plus.sqrt() * 0.5;
    let m = inner_minus.sqrt() * 0.5;
    [p, -p, m, -m]
}

pub fn eigenvalues_from_values(v: &OscillatorValues, method: EigenMethod) -> Result<[C64; 4]> {
    let a = C64::new(v.a, 0.0);
    let wp = v.omega_plus();
    let mut out = match method {
        EigenMethod::Formula => {
            let root = C64::new(wp * wp - 4.0 * v.lambda * v.lambda, 0.0).sqrt();
            paired(a * wp * wp + a * root, a * wp * wp - a * root)
        }
        EigenMethod::NormalMode => {
            let wm = v.omega_minus();
            let root = C64::new(wm * wm - 4.0 * v.lambda * v.lambda, 0.0).sqrt();
            paired(a * wp + a * root, a * wp - a * root)
        }
        EigenMethod::Numeric => eig4(&to_matrix(&hamiltonian_from_values(v)))?,
    };
    sort_eigenvalues(&mut out);
    Ok(out)
}

/// The four instantaneous eigenvalues, sorted by real then imaginary part.
pub fn instantaneous_eigenvalues(
    p: &CoupledOscillatorParams,
    t: f64,
    method: EigenMethod,
) -> Result<[C64; 4]> {
    eigenvalues_from_values(&p.at(t)?, method)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    PTSymmetric,
    ExceptionalPoint,
    SpontaneouslyBroken,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscriminantForm {
    /// `W+^2 - 4 lambda^2`.
    #[default]
    OmegaPlus,
    /// `W-^2 - 4 lambda^2`, whose sign decides reality of the 4x4 spectrum.
    NormalMode,
}

pub const DEFAULT_EP_TOL: f64 = 1e-9;

pub fn discriminant(v: &OscillatorValues, form: DiscriminantForm) -> f64 {
    let w = match form {
        DiscriminantForm::OmegaPlus => v.omega_plus(),
        DiscriminantForm::NormalMode => v.omega_minus(),
    };
    w * w - 4.0 * v.lambda * v.lambda
}

pub fn classify_discriminant(d: f64, tol: f64) -> Regime {
    if d.abs() <= tol {
        Regime::ExceptionalPoint
    } else if d > 0.0 {
        Regime::PTSymmetric
    } else {
        Regime::SpontaneouslyBroken
    }
}

pub fn classify_regime(p: &CoupledOscillatorParams, t: f64) -> Result<Regime> {
    classify_regime_with(p, t, DiscriminantForm::OmegaPlus, DEFAULT_EP_TOL)
}

pub fn classify_regime_with(
    p: &CoupledOscillatorParams,
    t: f64,
    form: DiscriminantForm,
    tol: f64,
) -> Result<Regime> {
    Ok(classify_discriminant(discriminant(&p.at(t)?, form), tol))
}
