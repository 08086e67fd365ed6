use serde::Serialize;

use super::PointTransformParams;
use crate::error::{Result, Sp4Error};
use crate::numerics::TimeGrid;

/// Scale factors and their time derivatives at one instant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EPState {
    pub t: f64,
    /// `int r`, the reference time.
    pub tau: f64,
    pub r: f64,
    pub r_t: f64,
    pub sigma: f64,
    pub mu: f64,
    pub sigma_t: f64,
    pub mu_t: f64,
    pub sigma_tt: f64,
    pub mu_tt: f64,
}

// sqrt(sqrt(1 + c^2) + c cos(2 w tau)) and its first two tau-derivatives.
fn scale_factor(c: f64, w: f64, tau: f64) -> (f64, f64, f64) {
    let phase = 2.0 * w * tau;
    let s = ((1.0 + c * c).sqrt() + c * phase.cos()).sqrt();
    let ds = -c * w * phase.sin() / s;
    let dds = (-2.0 * c * w * w * phase.cos() - ds * ds) / s;
    (s, ds, dds)
}

/// State at time `t` given the already integrated `tau`.
pub fn ep_state_at_tau(p: &PointTransformParams, t: f64, tau: f64) -> Result<EPState> {
    let r = p.r.eval(t)?;
    let r_t = p.r.derivative(t)?;
    if r == 0.0 {
        return Err(Sp4Error::InvalidParams(format!("r vanishes at t = {t}")));
    }
    let (sigma, ds, dds) = scale_factor(p.c2, p.beta, tau);
    let (mu, dm, ddm) = scale_factor(p.c3, p.alpha, tau);
    Ok(EPState {
        t,
        tau,
        r,
        r_t,
        sigma,
        mu,
        sigma_t: r * ds,
        mu_t: r * dm,
        sigma_tt: r_t * ds + r * r * dds,
        mu_tt: r_t * dm + r * r * ddm,
    })
}

pub fn ep_state(p: &PointTransformParams, t: f64) -> Result<EPState> {
    ep_state_at_tau(p, t, p.r.antiderivative(t)?)
}

/// States on every grid point with `tau` accumulated along the grid.
pub fn ep_states_on(p: &PointTransformParams, grid: &TimeGrid) -> Result<Vec<EPState>> {
    let taus = p.r.antiderivative_on(grid.points())?;
    grid.iter()
        .zip(taus)
        .map(|(t, tau)| ep_state_at_tau(p, t, tau))
        .collect()
}

/// Residuals of the dissipative Ermakov-Pinney equations for `sigma` and `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EPResiduals {
    /// `s_tt - (r_t/r) s_t + w^2 r^2 s - w^2 r^2 / s^3`.
    pub sigma: f64,
    pub mu: f64,
    /// Same with `w^2 r^2 s^2` in place of the linear term.
    pub sigma_printed: f64,
    pub mu_printed: f64,
}

pub fn ep_residuals(p: &PointTransformParams, s: &EPState) -> EPResiduals {
    let damp = s.r_t / s.r;
    let kb = p.beta * p.beta * s.r * s.r;
    let ka = p.alpha * p.alpha * s.r * s.r;
    let base_s = s.sigma_tt - damp * s.sigma_t - kb / s.sigma.powi(3);
    let base_m = s.mu_tt - damp * s.mu_t - ka / s.mu.powi(3);
    EPResiduals {
        sigma: base_s + kb * s.sigma,
        mu: base_m + ka * s.mu,
        sigma_printed: base_s + kb * s.sigma * s.sigma,
        mu_printed: base_m + ka * s.mu * s.mu,
    }
}
