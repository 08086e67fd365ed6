use super::matrix::{CMatrix, Matrix4, C64, ZERO};
use crate::error::{Result, Sp4Error};

/// Default relative tolerance on the characteristic-polynomial residual.
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

const ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Reduces `m` to upper Hessenberg form by Householder similarity transforms.
pub fn hessenberg<const N: usize>(m: &CMatrix<N>) -> CMatrix<N> {
    let mut h = *m;
    for k in 0..N.saturating_sub(2) {
        let alpha_norm = (k + 1..N).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        let mut v = [ZERO; N];
        for i in k + 1..N {
            v[i] = h[(i, k)];
        }
        v[k + 1] += phase * alpha_norm;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // H <- (I - 2 v v^H / |v|^2) H (I - 2 v v^H / |v|^2)
        for j in 0..N {
            let dot: C64 = (k + 1..N).map(|i| v[i].conj() * h[(i, j)]).sum();
            let f = dot * (2.0 / vnorm2);
            for i in k + 1..N {
                h[(i, j)] -= v[i] * f;
            }
        }
        for i in 0..N {
            let dot: C64 = (k + 1..N).map(|j| h[(i, j)] * v[j]).sum();
            let f = dot * (2.0 / vnorm2);
            for j in k + 1..N {
                h[(i, j)] -= f * v[j].conj();
            }
        }
        for i in k + 2..N {
            h[(i, k)] = ZERO;
        }
    }
    h
}

// Rotation [[c, s], [-conj(s), c]] that zeroes the second component of (x, y).
fn givens(x: C64, y: C64) -> (f64, C64) {
    if y == ZERO {
        return (1.0, ZERO);
    }
    if x == ZERO {
        return (0.0, y.conj() / y.norm());
    }
    let norm = x.norm().hypot(y.norm());
    let c = x.norm() / norm;
    let s = (x / x.norm()) * y.conj() / norm;
    (c, s)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5 * ((a - d) * 0.5) + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues of a general complex matrix by Hessenberg reduction followed by
/// Wilkinson-shifted QR sweeps with deflation.
pub fn eigenvalues<const N: usize>(m: &CMatrix<N>) -> Result<[C64; N]> {
    let mut h = hessenberg(m);
    let mut out = [ZERO; N];
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let mut hi = N;
    let mut iter = 0usize;
    let mut since_deflation = 0usize;
    let cap = ITERATIONS_PER_EIGENVALUE * N;

    while hi > 0 {
        let last = hi - 1;
        // Find the start of the unreduced trailing block.
        let mut lo = last;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let local = if local == 0.0 { scale } else { local };
            if sub <= f64::EPSILON * local {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == last {
            out[last] = h[(last, last)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > cap {
            return Err(Sp4Error::NoConvergence {
                what: "shifted QR eigenvalue iteration",
                iterations: cap,
            });
        }

        let mu = if since_deflation % 11 == 10 {
            // Exceptional shift breaks cycles of the Wilkinson strategy.
            h[(last, last)] + C64::new(h[(last, last - 1)].norm() * 0.75, 0.0)
        } else {
            wilkinson_shift(
                h[(last - 1, last - 1)],
                h[(last - 1, last)],
                h[(last, last - 1)],
                h[(last, last)],
            )
        };

        for k in lo..=last {
            h[(k, k)] -= mu;
        }
        let mut rots = Vec::with_capacity(last - lo);
        for k in lo..last {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=last {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            rots.push((c, s));
        }
        for (offset, &(c, s)) in rots.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(last) {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
        }
        for k in lo..=last {
            h[(k, k)] += mu;
        }
    }
    Ok(out)
}

/// Largest `|det(m - lambda I)|` over the supplied eigenvalues.
pub fn characteristic_residual<const N: usize>(m: &CMatrix<N>, values: &[C64; N]) -> f64 {
    values
        .iter()
        .map(|&l| (*m - CMatrix::<N>::identity() * l).determinant().norm())
        .fold(0.0, f64::max)
}

/// Eigenvalues of a 4x4 matrix. The result is checked against the
/// characteristic polynomial: `|det(m - lambda I)| <= tol * |m|_F^4`.
pub fn eig4(m: &Matrix4) -> Result<[C64; 4]> {
    eig4_with_tol(m, DEFAULT_EIG_TOL)
}

pub fn eig4_with_tol(m: &Matrix4, tol: f64) -> Result<[C64; 4]> {
    let values = eigenvalues(m)?;
    let bound = tol * m.frobenius_norm().powi(4);
    let residual = characteristic_residual(m, &values);
    if residual > bound && residual > f64::MIN_POSITIVE {
        return Err(Sp4Error::NoConvergence {
            what: "eig4 characteristic residual",
            iterations: 0,
        });
    }
    Ok(values)
}

/// Sorts by real part, then imaginary part.
pub fn sort_eigenvalues(values: &mut [C64]) {
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_returns_its_diagonal() {
        let d = [
            C64::new(3.0, 0.0),
            C64::new(-1.0, 2.0),
            C64::new(0.5, 0.0),
            C64::new(0.0, -4.0),
        ];
        let mut got = eig4(&Matrix4::diag(&d)).unwrap();
        let mut want = d;
        sort_eigenvalues(&mut got);
        sort_eigenvalues(&mut want);
        for k in 0..4 {
            assert!((got[k] - want[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn jordan_block_gives_repeated_eigenvalue() {
        let mut m = Matrix4::identity() * C64::new(2.0, 0.0);
        m[(0, 1)] = C64::new(1.0, 0.0);
        m[(2, 3)] = C64::new(1.0, 0.0);
        let got = eig4(&m).unwrap();
        for z in got {
            assert!((z - C64::new(2.0, 0.0)).norm() < 1e-7);
        }
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let m = Matrix4::from_real([
            [10.0, -35.0, 50.0, -24.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ]);
        let mut got = eig4(&m).unwrap();
        sort_eigenvalues(&mut got);
        for (k, z) in got.iter().enumerate() {
            assert!((z - C64::new(k as f64 + 1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn hessenberg_preserves_spectrum_invariants() {
        let m =
            Matrix4::from_fn(|i, j| C64::new((i + 2 * j) as f64 * 0.3 - 1.0, (i * j) as f64 * 0.1));
        let h = hessenberg(&m);
        for i in 2..4 {
            for j in 0..i - 1 {
                assert_eq!(h[(i, j)], ZERO);
            }
        }
        assert!((h.trace() - m.trace()).norm() < 1e-12);
        assert!((h.determinant() - m.determinant()).norm() < 1e-10);
    }
}
