use serde::{Deserialize, Serialize};

use super::{
    ep_state, ep_states_on, invariant_ih_at, reference_h0, target_hamiltonian_at, EPState,
    PointTransformParams,
};
use crate::algebra::{from_matrix, group_conjugate, to_matrix, AlgebraElement, GeneratorId::*};
use crate::error::{Result, Sp4Error};
use crate::numerics::{central_diff, eig4, expm, sinc, Matrix4, TimeGrid, C64};

/// Coefficients of the static Dyson map `exp[k1 (Q3-J2) + k2 (Q3+J2)]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DysonParams {
    pub kappa1: f64,
    pub kappa2: f64,
}

impl DysonParams {
    pub fn exponent(&self) -> AlgebraElement {
        AlgebraElement::from_real_terms(&[
            (Q3, self.kappa1 + self.kappa2),
            (J2, self.kappa2 - self.kappa1),
        ])
    }
}

const KAPPA_IMAG_TOL: f64 = 1e-12;

fn equal_frequencies(p: &PointTransformParams) -> bool {
    let (a2, b2) = (p.alpha * p.alpha, p.beta * p.beta);
    (a2 - b2).abs() <= 1e-12 * (a2 + b2)
}

/// Solves the two Hermiticity constraints for the static map. Evaluated in
/// complex arithmetic, so `alpha beta < 0` yields real kappas through an
/// imaginary arctanh argument.
pub fn dyson_params(p: &PointTransformParams) -> Result<DysonParams> {
    p.validate()?;
    if p.coupling == 0.0 {
        return Ok(DysonParams {
            kappa1: 0.0,
            kappa2: 0.0,
        });
    }
    if equal_frequencies(p) {
        return Err(Sp4Error::EqualFrequencies {
            alpha: p.alpha,
            beta: p.beta,
        });
    }
    let (al, be) = (C64::new(p.alpha, 0.0), C64::new(p.beta, 0.0));
    let arg = (al * be).sqrt() * (2.0 * p.coupling) / (p.alpha * p.alpha - p.beta * p.beta);
    if arg.im == 0.0 && arg.re.abs() >= 1.0 {
        return Err(Sp4Error::ArctanhDomain { argument: arg.re });
    }
    let at = arg.atanh();
    let k1 = (al / be).sqrt() * at * 0.5;
    let k2 = -(be / al).sqrt() * at * 0.5;
    let scale = k1.norm().max(k2.norm()).max(1.0);
    if k1.im.abs() > KAPPA_IMAG_TOL * scale || k2.im.abs() > KAPPA_IMAG_TOL * scale {
        return Err(Sp4Error::ArctanhDomain {
            argument: arg.norm(),
        });
    }
    Ok(DysonParams {
        kappa1: k1.re,
        kappa2: k2.re,
    })
}

/// Residuals of the two constraint equations, `2 L cos 2w - (a +- b)(k1 +- k2) sin(2w) / w`
/// with `w = sqrt(k1 k2)` taken complex.
pub fn constraint_residuals(p: &PointTransformParams, k: &DysonParams) -> [f64; 2] {
    let w = C64::new(k.kappa1 * k.kappa2, 0.0).sqrt();
    let lhs = (w * 2.0).cos() * (2.0 * p.coupling);
    let ratio = sinc(w * 2.0) * 2.0;
    let r1 = lhs - ratio * ((p.alpha + p.beta) * (k.kappa1 + k.kappa2));
    let r2 = lhs - ratio * ((p.alpha - p.beta) * (k.kappa1 - k.kappa2));
    [r1.norm(), r2.norm()]
}

/// `sgn(alpha^2 - beta^2) sqrt((alpha^2 - beta^2)^2 - 4 alpha beta Lambda^2)`;
/// the sign keeps the closed forms valid when `beta > alpha`.
pub fn delta(p: &PointTransformParams) -> C64 {
    let d = p.alpha * p.alpha - p.beta * p.beta;
    let root = C64::new(
        d * d - 4.0 * p.alpha * p.beta * p.coupling * p.coupling,
        0.0,
    )
    .sqrt();
    if d < 0.0 {
        -root
    } else {
        root
    }
}

/// The Hermitian reference Hamiltonian in closed form.
pub fn printed_h0(p: &PointTransformParams) -> AlgebraElement {
    let (al, be) = (p.alpha, p.beta);
    let dl = delta(p);
    let den = 4.0 * al * be;
    let j3 = (dl * (al + be) - (al - be).powi(3)) / den;
    let j0 = (dl * (be - al) + (al + be).powi(3)) / den;
    let f = (C64::new(al * al - be * be, 0.0) - dl) / den;
    AlgebraElement::from_terms(&[
        (J3, j3),
        (J0, j0),
        (K1, f * (al + be)),
        (Q2, -f * (al - be)),
    ])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StaticDyson {
    pub params: DysonParams,
    pub exponent: AlgebraElement,
    pub eta: Matrix4,
    /// Closed-form Hermitian Hamiltonian.
    pub h0: AlgebraElement,
    /// `eta H0 eta^-1` computed by conjugation.
    pub h0_conjugated: AlgebraElement,
    pub h0_mismatch: f64,
    pub constraint_residuals: [f64; 2],
    pub delta: C64,
    /// Set when the radicand of `delta` is negative.
    pub complex_delta: bool,
}

pub fn dyson_static(p: &PointTransformParams) -> Result<StaticDyson> {
    let params = dyson_params(p)?;
    let exponent = params.exponent();
    let h0_ref = reference_h0(p);
    let (eta, h0_conjugated) = if params.kappa1 == 0.0 && params.kappa2 == 0.0 {
        (Matrix4::identity(), h0_ref)
    } else {
        (
            expm(&to_matrix(&exponent)),
            group_conjugate(&exponent, &h0_ref)?,
        )
    };
    let dl = delta(p);
    let h0 = if p.coupling == 0.0 {
        h0_ref
    } else {
        printed_h0(p)
    };
    Ok(StaticDyson {
        params,
        exponent,
        eta,
        h0,
        h0_conjugated,
        h0_mismatch: h0.max_abs_diff(&h0_conjugated),
        constraint_residuals: constraint_residuals(p, &params),
        delta: dl,
        complex_delta: dl.im != 0.0,
    })
}

/// Exponent of the time-dependent Dyson map: the static exponent carried
/// through the point transformation.
pub fn dyson_time_exponent(
    p: &PointTransformParams,
    k: &DysonParams,
    s: &EPState,
) -> AlgebraElement {
    let (k1, k2) = (k.kappa1, k.kappa2);
    let a = k2 * s.mu / s.sigma;
    let b = k1 * s.sigma / s.mu;
    let c = (p.beta * k1 * s.sigma * s.mu_t + p.alpha * k2 * s.mu * s.sigma_t)
        / (p.alpha * p.beta * s.r);
    AlgebraElement::from_real_terms(&[(Q3, a + b), (J2, b - a), (K3, c), (J1, c)])
}

pub fn dyson_time_at(p: &PointTransformParams, k: &DysonParams, s: &EPState) -> Matrix4 {
    expm(&to_matrix(&dyson_time_exponent(p, k, s)))
}

pub fn dyson_time(p: &PointTransformParams, t: f64) -> Result<Matrix4> {
    let k = dyson_params(p)?;
    Ok(dyson_time_at(p, &k, &ep_state(p, t)?))
}

pub fn hermitian_invariant_ih_at(
    p: &PointTransformParams,
    k: &DysonParams,
    s: &EPState,
) -> Result<AlgebraElement> {
    group_conjugate(&dyson_time_exponent(p, k, s), &invariant_ih_at(p, s)?)
}

/// `eta(t) I_H(t) eta(t)^-1`.
pub fn hermitian_invariant_ih(p: &PointTransformParams, t: f64) -> Result<AlgebraElement> {
    let k = dyson_params(p)?;
    hermitian_invariant_ih_at(p, &k, &ep_state(p, t)?)
}

/// Closed form of the Hermitian invariant.
pub fn printed_hermitian_invariant(p: &PointTransformParams, s: &EPState) -> AlgebraElement {
    let (al, be) = (p.alpha, p.beta);
    let (sg, mu, st, mt, r) = (s.sigma, s.mu, s.sigma_t, s.mu_t, s.r);
    let dl = delta(p);
    let e = AlgebraElement::from_real_terms;
    let pyy = e(&[(J0, 1.0), (J3, -1.0), (K1, -1.0), (Q2, 1.0)]);
    let pxx = e(&[(J0, 1.0), (J3, 1.0), (K1, 1.0), (Q2, 1.0)]);
    let yy = e(&[(J0, 1.0), (J3, -1.0), (K1, 1.0), (Q2, -1.0)]);
    let xx = e(&[(J0, 1.0), (J3, 1.0), (K1, -1.0), (Q2, -1.0)]);
    let y_py = e(&[(K2, 1.0), (Q1, 1.0)]);
    let x_px = e(&[(K2, 1.0), (Q1, -1.0)]);
    let s2 = al * al + be * be;
    let cy = ((dl + s2) * mu * mu + 2.0 * mt * mt / (r * r)) / al;
    let cx = ((C64::new(s2, 0.0) - dl) * sg * sg + 2.0 * st * st / (r * r)) / be;
    (pyy * (2.0 * al / (mu * mu))
        + pxx * (2.0 * be / (sg * sg))
        + y_py * (4.0 * mt / (r * mu))
        + yy * cy
        + x_px * (4.0 * st / (r * sg))
        + xx * cx)
        * 0.25
}

pub fn hermitian_hamiltonian_h_at(p: &PointTransformParams, s: &EPState) -> AlgebraElement {
    let (al, be) = (p.alpha, p.beta);
    let (sg, mu, r) = (s.sigma, s.mu, s.r);
    let dl = delta(p);
    let e = AlgebraElement::from_real_terms;
    let yy = e(&[(J0, 1.0), (J3, -1.0), (K1, 1.0), (Q2, -1.0)]);
    let xx = e(&[(J0, 1.0), (J3, 1.0), (K1, -1.0), (Q2, -1.0)]);
    let d2 = al * al - be * be;
    e(&[(J0, 1.0), (J3, -1.0)]) * (r * al / (mu * mu))
        + e(&[(J0, 1.0), (J3, 1.0)]) * (r * be / (sg * sg))
        - yy * ((C64::new(d2, 0.0) - dl) * (r * mu * mu / (4.0 * al)))
        - xx * ((C64::new(-d2, 0.0) + dl) * (r * sg * sg / (4.0 * be)))
}

/// The Hermitian Hamiltonian of the target system in closed form.
pub fn hermitian_hamiltonian_h(p: &PointTransformParams, t: f64) -> Result<AlgebraElement> {
    p.validate()?;
    if p.coupling != 0.0 && equal_frequencies(p) {
        return Err(Sp4Error::EqualFrequencies {
            alpha: p.alpha,
            beta: p.beta,
        });
    }
    Ok(hermitian_hamiltonian_h_at(p, &ep_state(p, t)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TddeReport {
    /// `max |h - (eta H eta^-1 + i hbar eta_t eta^-1)|` over interior samples.
    pub residual: f64,
    /// Largest projection residual of the right-hand side, from the
    /// difference quotient of `eta`.
    pub projection_leak: f64,
    /// Largest imaginary coefficient of the right-hand side.
    pub max_imag: f64,
}

/// Checks the time-dependent Dyson equation with `eta_t` from fourth-order
/// central differences on a uniform grid.
pub fn tdde_residual(p: &PointTransformParams, grid: &TimeGrid, hbar: f64) -> Result<TddeReport> {
    let step = grid
        .uniform_step()
        .ok_or_else(|| Sp4Error::InvalidGrid("finite differences need a uniform grid".into()))?;
    let k = dyson_params(p)?;
    let states = ep_states_on(p, grid)?;
    let etas: Vec<Matrix4> = states.iter().map(|s| dyson_time_at(p, &k, s)).collect();
    let deta = central_diff(&etas, step)?;
    let ih = C64::new(0.0, hbar);
    let mut report = TddeReport {
        residual: 0.0,
        projection_leak: 0.0,
        max_imag: 0.0,
    };
    for (j, d) in deta.iter().enumerate() {
        let s = &states[j + 2];
        let eta = etas[j + 2];
        let eta_inv = expm(&(-to_matrix(&dyson_time_exponent(p, &k, s))));
        let h_mat = to_matrix(&target_hamiltonian_at(p, s));
        // The conjugation must stay in the algebra; the difference quotient
        // leaves it only at truncation order, which is reported, not fatal.
        let conj = eta * h_mat * eta_inv;
        let conj_proj = from_matrix(&conj);
        let tol = 1e-10 * conj.frobenius_norm().max(1.0);
        if conj_proj.residual > tol {
            return Err(Sp4Error::ProjectionLeak {
                residual: conj_proj.residual,
                tolerance: tol,
            });
        }
        let proj = from_matrix(&(conj + *d * eta_inv * ih));
        let h = hermitian_hamiltonian_h_at(p, s);
        report.residual = report.residual.max(h.max_abs_diff(&proj.element));
        report.projection_leak = report.projection_leak.max(proj.residual);
        report.max_imag = report.max_imag.max(proj.element.max_imag());
    }
    Ok(report)
}

pub fn metric_at(p: &PointTransformParams, k: &DysonParams, s: &EPState) -> Matrix4 {
    let eta = dyson_time_at(p, k, s);
    eta.dagger() * eta
}

/// `rho(t) = eta(t)^dagger eta(t)`.
pub fn metric(p: &PointTransformParams, t: f64) -> Result<Matrix4> {
    let k = dyson_params(p)?;
    Ok(metric_at(p, &k, &ep_state(p, t)?))
}

/// Smallest eigenvalue of the (Hermitian) metric.
pub fn metric_min_eigenvalue(rho: &Matrix4) -> Result<f64> {
    Ok(eig4(rho)?
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min))
}
