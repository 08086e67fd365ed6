use super::{ep_state, EPState, PointTransformParams};
use crate::algebra::{AlgebraElement, GeneratorId, GeneratorId::*, DIM};
use crate::error::Result;
use crate::numerics::CMatrix;

/// Linear action of the point transformation on the reference generators,
/// together with the inhomogeneous term that the time reparametrisation adds
/// to the Hamiltonian: `H(t) = r * apply(H0) - shift`.
#[derive(Clone, Debug, PartialEq)]
pub struct PushforwardMap {
    /// Image of each primed generator, in basis order.
    pub images: [AlgebraElement; DIM],
    pub shift: AlgebraElement,
    pub r: f64,
}

impl PushforwardMap {
    pub fn image(&self, g: GeneratorId) -> AlgebraElement {
        self.images[g.index()]
    }

    pub fn apply(&self, e: &AlgebraElement) -> AlgebraElement {
        e.coeffs
            .iter()
            .zip(&self.images)
            .map(|(c, img)| *img * *c)
            .sum()
    }

    /// Column `j` holds the image of generator `j`.
    pub fn matrix(&self) -> CMatrix<DIM> {
        CMatrix::from_fn(|i, j| self.images[j].coeffs[i])
    }

    /// The Hamiltonian generated in the target frame by a reference
    /// Hamiltonian.
    pub fn transform_hamiltonian(&self, h0: &AlgebraElement) -> AlgebraElement {
        self.apply(h0) * self.r - self.shift
    }
}

pub fn pushforward_map(p: &PointTransformParams, s: &EPState) -> Result<PushforwardMap> {
    let (al, be) = (p.alpha, p.beta);
    let (sg, mu, r) = (s.sigma, s.mu, s.r);
    // Momentum shifts: p_chi = p_y / mu + ma y, p_upsilon = p_x / sigma + sb x.
    let ma = s.mu_t / (al * r);
    let sb = s.sigma_t / (be * r);

    let e = AlgebraElement::from_real_terms;
    // Squares and products of the coordinates, in the unprimed generators.
    let pxx = e(&[(J0, 1.0), (J3, 1.0), (K1, 1.0), (Q2, 1.0)]);
    let pyy = e(&[(J0, 1.0), (J3, -1.0), (K1, -1.0), (Q2, 1.0)]);
    let xx = e(&[(J0, 1.0), (J3, 1.0), (K1, -1.0), (Q2, -1.0)]);
    let yy = e(&[(J0, 1.0), (J3, -1.0), (K1, 1.0), (Q2, -1.0)]);
    let y_py = e(&[(K2, 1.0), (Q1, 1.0)]);
    let x_px = e(&[(K2, 1.0), (Q1, -1.0)]);
    let x_y = e(&[(J1, 1.0), (K3, 1.0)]);
    let px_py = e(&[(J1, 1.0), (K3, -1.0)]);
    let x_py = e(&[(J2, 1.0), (Q3, 1.0)]);
    let y_px = e(&[(Q3, 1.0), (J2, -1.0)]);

    let mu2 = mu * mu;
    let sg2 = sg * sg;

    let j0 = (pyy * (1.0 / mu2)
        + pxx * (1.0 / sg2)
        + x_px * (2.0 * sb / sg)
        + xx * (sg2 + sb * sb)
        + y_py * (2.0 * ma / mu)
        + yy * (mu2 + ma * ma))
        * 0.25;
    let j1 = px_py * (0.5 / (mu * sg))
        + x_y * (0.5 * (mu * sg + ma * sb))
        + y_px * (0.5 * ma / sg)
        + x_py * (0.5 * sb / mu);
    let j2 = x_y * (0.5 * (mu * sb - sg * ma)) + y_px * (0.5 * mu / sg) - x_py * (0.5 * sg / mu);
    let j3 = (pyy * (1.0 / mu2) + y_py * (2.0 * ma / mu) - pxx * (1.0 / sg2)
        + yy * (mu2 + ma * ma)
        - x_px * (2.0 * sb / sg)
        - xx * (sg2 + sb * sb))
        * 0.25;
    let q1 = xx * (0.5 * sg * sb) - yy * (0.5 * mu * ma) - AlgebraElement::unit(Q1);
    let q2 =
        (pyy * (1.0 / mu2) + pxx * (1.0 / sg2) + y_py * (2.0 * ma / mu) + x_px * (2.0 * sb / sg)
            - yy * (mu2 - ma * ma)
            - xx * (sg2 - sb * sb))
            * 0.25;
    let q3 = x_y * (0.5 * (mu * sb + sg * ma)) + y_px * (0.5 * mu / sg) + x_py * (0.5 * sg / mu);
    let k1 = (pyy * (1.0 / mu2) - pxx * (1.0 / sg2) + y_py * (2.0 * ma / mu)
        - x_px * (2.0 * sb / sg)
        - yy * (mu2 - ma * ma)
        + xx * (sg2 - sb * sb))
        * 0.25;
    let k2 = yy * (0.5 * mu * ma) + xx * (0.5 * sg * sb) + AlgebraElement::unit(K2);
    let k3 = px_py * (-0.5 / (mu * sg)) + x_y * (0.5 * (mu * sg - ma * sb))
        - y_px * (0.5 * ma / sg)
        - x_py * (0.5 * sb / mu);

    let shift = yy
        * (r * (al * (mu2 * mu2 - 1.0) / (2.0 * mu2) + s.mu_t * s.mu_t / (2.0 * al * r * r)))
        + y_py * (s.mu_t / mu)
        + xx * (0.5 * r * (be * (sg2 * sg2 - 1.0) / sg2 + s.sigma_t * s.sigma_t / (be * r * r)))
        + x_px * (s.sigma_t / sg);

    Ok(PushforwardMap {
        images: [j0, j1, j2, j3, q1, q2, q3, k1, k2, k3],
        shift,
        r,
    })
}

/// Image of a reference-frame element at time `t`.
pub fn pushforward(
    p: &PointTransformParams,
    t: f64,
    e_primed: &AlgebraElement,
) -> Result<AlgebraElement> {
    Ok(pushforward_map(p, &ep_state(p, t)?)?.apply(e_primed))
}
