//! Point transformation from a time-independent reference oscillator to the
//! time-dependent target: Ermakov-Pinney scale factors, the induced map on the
//! generators, invariants, Dyson maps and residual checks.
//!
//! Coordinates are related by `upsilon = sigma x`, `chi = mu y`, `tau = int r`,
//! where `sigma` solves the Ermakov-Pinney equation with frequency `beta` and
//! `mu` the one with frequency `alpha`.

mod dyson;
mod ermakov;
mod pde;
mod pushforward;

pub use dyson::{
    constraint_residuals, delta, dyson_params, dyson_static, dyson_time, dyson_time_at,
    dyson_time_exponent, hermitian_hamiltonian_h, hermitian_hamiltonian_h_at,
    hermitian_invariant_ih, hermitian_invariant_ih_at, metric, metric_at, metric_min_eigenvalue,
    printed_h0, printed_hermitian_invariant, tdde_residual, DysonParams, StaticDyson, TddeReport,
};
pub use ermakov::{ep_residuals, ep_state, ep_state_at_tau, ep_states_on, EPResiduals, EPState};
pub use pde::{pde_constraint_residuals, PdeResiduals};
pub use pushforward::{pushforward, pushforward_map, PushforwardMap};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, GeneratorId::*};
use crate::error::{Result, Sp4Error};
use crate::hamiltonian::{modified_hamiltonian_from_values, ScalarProfile};
use crate::lr_ode::lr_residual_samples_with_order;
use crate::numerics::{TimeGrid, C64};

/// Reference constants, the time reparametrisation `r` and the
/// Ermakov-Pinney integration constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointTransformParams {
    pub alpha: f64,
    pub beta: f64,
    /// Coupling of the reference Hamiltonian.
    #[serde(rename = "Lambda", alias = "coupling")]
    pub coupling: f64,
    pub r: ScalarProfile,
    pub c2: f64,
    pub c3: f64,
    /// Constant part of the prefactor phase.
    #[serde(default)]
    pub c1_phase: f64,
}

impl PointTransformParams {
    pub fn new(alpha: f64, beta: f64, coupling: f64, r: ScalarProfile, c2: f64, c3: f64) -> Self {
        PointTransformParams {
            alpha,
            beta,
            coupling,
            r,
            c2,
            c3,
            c1_phase: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("Lambda", self.coupling),
            ("c2", self.c2),
            ("c3", self.c3),
            ("c1_phase", self.c1_phase),
        ] {
            if !v.is_finite() {
                return Err(Sp4Error::InvalidParams(format!("{name} must be finite")));
            }
        }
        if self.alpha == 0.0 || self.beta == 0.0 {
            return Err(Sp4Error::InvalidParams(
                "alpha and beta must be nonzero".into(),
            ));
        }
        self.r.validate()
    }
}

/// `alpha (J0+J3) + beta (J0-J3) + i Lambda (J1+K3)` in the reference variables.
pub fn reference_h0(p: &PointTransformParams) -> AlgebraElement {
    let mut h = AlgebraElement::from_real_terms(&[(J0, p.alpha + p.beta), (J3, p.alpha - p.beta)]);
    h[J1] = C64::new(0.0, p.coupling);
    h[K3] = C64::new(0.0, p.coupling);
    h
}

/// Coefficients of the target Hamiltonian `a (J0+J3) + b (J0-J3) + i lambda (J1+K3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TargetCoefficients {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
}

pub fn target_coefficients_at(p: &PointTransformParams, s: &EPState) -> TargetCoefficients {
    TargetCoefficients {
        a: p.beta * s.r / (s.sigma * s.sigma),
        b: p.alpha * s.r / (s.mu * s.mu),
        lambda: p.coupling * s.r * s.sigma * s.mu,
    }
}

pub fn target_coefficients(p: &PointTransformParams, t: f64) -> Result<TargetCoefficients> {
    Ok(target_coefficients_at(p, &ep_state(p, t)?))
}

pub fn target_hamiltonian_at(p: &PointTransformParams, s: &EPState) -> AlgebraElement {
    let c = target_coefficients_at(p, s);
    modified_hamiltonian_from_values(c.a, c.b, c.lambda)
}

pub fn target_hamiltonian(p: &PointTransformParams, t: f64) -> Result<AlgebraElement> {
    Ok(target_hamiltonian_at(p, &ep_state(p, t)?))
}

/// The invariant of the target system: the image of the reference Hamiltonian.
pub fn invariant_ih_at(p: &PointTransformParams, s: &EPState) -> Result<AlgebraElement> {
    Ok(pushforward_map(p, s)?.apply(&reference_h0(p)))
}

pub fn invariant_ih(p: &PointTransformParams, t: f64) -> Result<AlgebraElement> {
    invariant_ih_at(p, &ep_state(p, t)?)
}

/// The invariant exactly as printed in closed form. Its first term carries
/// `J1` where the image of the reference Hamiltonian has `K1`; it is kept for
/// comparison only.
pub fn printed_invariant_ih_at(p: &PointTransformParams, s: &EPState) -> AlgebraElement {
    let (al, be) = (p.alpha, p.beta);
    let (sg, mu, st, mt, r) = (s.sigma, s.mu, s.sigma_t, s.mu_t, s.r);
    let e = AlgebraElement::from_real_terms;
    let mut out = e(&[(J3, 1.0), (J1, 1.0), (J0, 1.0), (Q2, 1.0)]) * (be / (2.0 * sg * sg))
        + e(&[(J0, 1.0), (Q2, 1.0), (J3, -1.0), (K1, -1.0)]) * (al / (2.0 * mu * mu))
        + e(&[(K2, 1.0), (Q1, -1.0)]) * (st / (r * sg))
        + e(&[(K2, 1.0), (Q1, 1.0)]) * (mt / (r * mu))
        + e(&[(J3, 1.0), (K1, -1.0), (J0, 1.0), (Q2, -1.0)])
            * (0.5 * (st * st / (be * r * r) + be * sg * sg))
        + e(&[(K1, 1.0), (J3, -1.0), (J0, 1.0), (Q2, -1.0)])
            * (0.5 * (mt * mt / (al * r * r) + al * mu * mu));
    let il = C64::new(0.0, p.coupling * sg * mu);
    out[J1] += il;
    out[K3] += il;
    out
}

pub fn printed_invariant_ih(p: &PointTransformParams, t: f64) -> Result<AlgebraElement> {
    Ok(printed_invariant_ih_at(p, &ep_state(p, t)?))
}

/// Stencil order for the LR check of the point-transformed invariant. Its
/// coefficients oscillate at twice the reference frequencies, so a fourth-order
/// stencil at step 1e-3 sits near 1e-8 for the faster scenarios.
pub const LR_STENCIL_ORDER: usize = 6;

/// LR residual of a family of invariants against the target Hamiltonian on a
/// uniform grid.
pub fn invariant_lr_residual<F>(
    p: &PointTransformParams,
    grid: &TimeGrid,
    hbar: f64,
    invariant: F,
) -> Result<f64>
where
    F: Fn(&EPState) -> Result<AlgebraElement>,
{
    let step = grid
        .uniform_step()
        .ok_or_else(|| Sp4Error::InvalidGrid("finite differences need a uniform grid".into()))?;
    let states = ep_states_on(p, grid)?;
    let inv: Vec<_> = states.iter().map(&invariant).collect::<Result<_>>()?;
    let ham: Vec<_> = states.iter().map(|s| target_hamiltonian_at(p, s)).collect();
    lr_residual_samples_with_order(&inv, &ham, step, hbar, LR_STENCIL_ORDER)
}
