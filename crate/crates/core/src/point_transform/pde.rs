use serde::Serialize;

use super::{ep_state, target_coefficients_at, PointTransformParams};
use crate::error::Result;
use crate::numerics::C64;

/// Largest magnitudes of the first-derivative coefficients and of the
/// potential mismatch in the transformed Schroedinger equation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PdeResiduals {
    pub b0x: f64,
    pub b0y: f64,
    pub v0: f64,
}

/// Evaluates `B0x`, `B0y` and `V0 - (a x^2 + 2 i lambda x y + b y^2) / 2` at
/// each `(x, y)` with the coordinate maps `upsilon = sigma x`, `chi = mu y` and
/// the Gaussian prefactor
/// `A = exp{ i/(2 hbar r) [y^2 mu mu_t / alpha + x^2 sigma sigma_t / beta] + delta }`,
/// `delta = c1 - ln(mu sigma) / 2`. Derivatives of `A` enter only through
/// `A_x / A` and friends, which are taken analytically.
pub fn pde_constraint_residuals(
    p: &PointTransformParams,
    t: f64,
    samples: &[(f64, f64)],
    hbar: f64,
) -> Result<PdeResiduals> {
    let s = ep_state(p, t)?;
    let target = target_coefficients_at(p, &s);
    let (al, be, lam) = (p.alpha, p.beta, p.coupling);
    let (sg, mu, st, mt, r, rt) = (s.sigma, s.mu, s.sigma_t, s.mu_t, s.r, s.r_t);
    let i = C64::new(0.0, 1.0);
    let tau_t = r;

    // d/dt (s s_t / r) for either scale factor.
    let d_ratio = |f: f64, ft: f64, ftt: f64| (ft * ft + f * ftt) / r - f * ft * rt / (r * r);
    let gx = d_ratio(sg, st, s.sigma_tt) / be;
    let gy = d_ratio(mu, mt, s.mu_tt) / al;
    let delta_t = -0.5 * (mt / mu + st / sg);

    let mut out = PdeResiduals {
        b0x: 0.0,
        b0y: 0.0,
        v0: 0.0,
    };
    for &(x, y) in samples {
        // Coordinate maps and their partial derivatives.
        let ups = sg * x;
        let ups_x = sg;
        let ups_t = st * x;
        let (ups_xx, ups_yy) = (0.0, 0.0);
        let chi = mu * y;
        let chi_y = mu;
        let chi_t = mt * y;
        let (chi_xx, chi_yy) = (0.0, 0.0);

        // Logarithmic derivatives of the prefactor.
        let ax = i * (sg * st * x / (hbar * r * be));
        let ay = i * (mu * mt * y / (hbar * r * al));
        let axx = ax * ax + i * (sg * st / (hbar * r * be));
        let ayy = ay * ay + i * (mu * mt / (hbar * r * al));
        let at = i * (0.5 / hbar) * (y * y * gy + x * x * gx) + delta_t;

        let h2 = hbar * hbar;
        let b0x = -i * hbar * ups_t / ups_x
            + (ax * (2.0 * be) - be * ups_xx / ups_x - al * ups_x * ups_yy / (chi_y * chi_y))
                * (0.5 * h2 * tau_t / (ups_x * ups_x));
        let b0y = -i * hbar * chi_t / chi_y
            + (ay * (2.0 * al) - be * chi_y * chi_xx / (ups_x * ups_x) - al * chi_yy / chi_y)
                * (0.5 * h2 * tau_t / (chi_y * chi_y));
        let v0 = (C64::new(be * ups * ups + al * chi * chi, 0.0) + i * (2.0 * lam * chi * ups))
            * (0.5 * tau_t)
            - i * hbar * (at - ax * ups_t / ups_x - ay * chi_t / chi_y)
            - ((ayy - ax * ups_yy / ups_x - ay * chi_yy / chi_y) * (al / (chi_y * chi_y))
                + (axx - ax * ups_xx / ups_x - ay * chi_xx / chi_y) * (be / (ups_x * ups_x)))
                * (0.5 * h2 * tau_t);
        let v_target = C64::new(
            target.a * x * x + target.b * y * y,
            2.0 * target.lambda * x * y,
        ) * 0.5;

        out.b0x = out.b0x.max(b0x.norm());
        out.b0y = out.b0y.max(b0y.norm());
        out.v0 = out.v0.max((v0 - v_target).norm());
    }
    Ok(out)
}
