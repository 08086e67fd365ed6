use serde::{Deserialize, Serialize};

use super::CoefficientVector;
use crate::error::{Result, Sp4Error};
use crate::hamiltonian::{CoupledOscillatorParams, ScalarProfile};
use crate::numerics::{sinc, TimeGrid, C64};

/// Proportional profiles `a = lambda`, `omega_x = alpha lambda`, `omega_y = lambda`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormParams {
    pub alpha: f64,
    pub lambda: ScalarProfile,
}

impl ClosedFormParams {
    pub fn new(alpha: f64, lambda: ScalarProfile) -> Self {
        ClosedFormParams { alpha, lambda }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -1.0) || !self.alpha.is_finite() {
            return Err(Sp4Error::DegenerateAlpha { alpha: self.alpha });
        }
        self.lambda.validate()
    }

    /// `a+- = sqrt(2) sqrt(1 + alpha +- 2 sqrt(1 + alpha))`. For
    /// `-1 < alpha < 3` the lower frequency is imaginary; the closed form is
    /// still regular.
    pub fn frequencies(&self) -> Result<(C64, C64)> {
        self.validate()?;
        Ok(frequencies(self.alpha))
    }

    pub fn oscillator_params(&self) -> CoupledOscillatorParams {
        CoupledOscillatorParams::proportional(self.alpha, self.lambda.clone())
    }
}

fn frequencies(alpha: f64) -> (C64, C64) {
    let s = (1.0 + alpha).sqrt();
    let root2 = std::f64::consts::SQRT_2;
    let plus = C64::new(1.0 + alpha + 2.0 * s, 0.0).sqrt() * root2;
    let minus = C64::new(1.0 + alpha - 2.0 * s, 0.0).sqrt() * root2;
    (plus, minus)
}

/// Closed-form coefficients as a function of `theta = int lambda`.
pub fn closed_form_at_theta(alpha: f64, theta: f64) -> Result<CoefficientVector> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Sp4Error::DegenerateAlpha { alpha });
    }
    let s = (1.0 + alpha).sqrt();
    let (ap, am) = frequencies(alpha);
    let half = 0.5 * theta;
    let cp = (ap * half).cos();
    let cm = (am * half).cos();
    // S+- / a+- written so that a vanishing frequency is harmless.
    let sp = sinc(ap * half) * half;
    let sm = sinc(am * half) * half;
    let i = C64::new(0.0, 1.0);

    let d = (cm - cp) / (2.0 * s);
    let mean = (cm + cp) * 0.5;
    let ssum = sp + sm;
    let c1 = i * d;
    let c5 = ssum * (1.0 - alpha);
    let c6 = (sp * (alpha - 1.0) + sm * (1.0 - alpha)) / (2.0 * s);
    let c8 = i * ssum;
    let c9 = i * (sm - sp) / (2.0 * s);
    Ok(CoefficientVector([
        c1,
        c1,
        mean + d * alpha,
        mean + d,
        c5,
        c6,
        -c8,
        c8,
        c9,
        -c9,
    ]))
}

pub fn closed_form_c(p: &ClosedFormParams, t: f64) -> Result<CoefficientVector> {
    closed_form_at_theta(p.alpha, p.lambda.antiderivative(t)?)
}

pub fn closed_form_trajectory(
    p: &ClosedFormParams,
    grid: &TimeGrid,
) -> Result<Vec<CoefficientVector>> {
    p.validate()?;
    p.lambda
        .antiderivative_on(grid.points())?
        .into_iter()
        .map(|theta| closed_form_at_theta(p.alpha, theta))
        .collect()
}
