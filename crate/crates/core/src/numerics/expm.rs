use super::matrix::{CMatrix, CVector, ZERO};

/// Default bound on the Taylor truncation error of the scaled matrix.
pub const DEFAULT_EXPM_TOL: f64 = 1e-13;

// Scale until the one-norm is at most this, then square back up.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 60;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm<const N: usize>(m: &CMatrix<N>) -> CMatrix<N> {
    expm_with_tol(m, DEFAULT_EXPM_TOL)
}

/// As [`expm`], stopping the series once the tail bound drops below `tol`
/// relative to the partial sum. The bound is clamped at machine epsilon so a
/// loose `tol` never costs accuracy that squaring would then amplify.
pub fn expm_with_tol<const N: usize>(m: &CMatrix<N>, tol: f64) -> CMatrix<N> {
    let norm = m.norm_one();
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = *m * 0.5f64.powi(squarings);
    let theta = norm * 0.5f64.powi(squarings);
    let tol = tol.min(f64::EPSILON);

    let mut sum = CMatrix::<N>::identity();
    let mut term = CMatrix::<N>::identity();
    for k in 1..=MAX_TERMS {
        term = (term * a) * (1.0 / k as f64);
        sum += term;
        // Remaining terms are bounded by a geometric series in theta / (k + 1).
        let ratio = theta / (k + 1) as f64;
        let tail = term.norm_one() * ratio / (1.0 - ratio);
        if tail <= tol * sum.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Action `exp(m) v` without forming the exponential, by sub-stepping the
/// Taylor series of the vector.
pub fn expm_apply<const N: usize>(m: &CMatrix<N>, v: &CVector<N>) -> CVector<N> {
    let norm = m.norm_one();
    let steps = norm.ceil().max(1.0) as usize;
    let a = *m * (1.0 / steps as f64);
    let mut x = *v;
    for _ in 0..steps {
        let mut sum = x;
        let mut term = x;
        for k in 1..=MAX_TERMS {
            term = a.mul_vec(&term);
            for t in term.iter_mut() {
                *t /= k as f64;
            }
            let mut term_norm = 0.0;
            let mut sum_norm = 0.0;
            for i in 0..N {
                sum[i] += term[i];
                term_norm += term[i].norm();
                sum_norm += sum[i].norm();
            }
            if term_norm <= f64::EPSILON * sum_norm || term.iter().all(|z| *z == ZERO) {
                break;
            }
        }
        x = sum;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::matrix::{Matrix4, C64};

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(expm(&Matrix4::zeros()), Matrix4::identity());
        let d = [
            C64::new(1.0, 0.0),
            C64::new(-2.0, 0.5),
            C64::new(0.0, 3.0),
            C64::new(4.0, 0.0),
        ];
        let e = expm(&Matrix4::diag(&d));
        for k in 0..4 {
            assert!((e[(k, k)] - d[k].exp()).norm() < 1e-12 * d[k].exp().norm());
        }
    }

    #[test]
    fn nilpotent_series_terminates() {
        let mut n = Matrix4::zeros();
        n[(0, 1)] = C64::new(1.0, 0.0);
        n[(1, 2)] = C64::new(1.0, 0.0);
        let e = expm(&n);
        assert_eq!(e[(0, 2)], C64::new(0.5, 0.0));
        assert_eq!(e[(0, 1)], C64::new(1.0, 0.0));
    }

    #[test]
    fn apply_matches_full_exponential() {
        let m =
            Matrix4::from_fn(|i, j| C64::new((i as f64 - j as f64) * 0.7, 0.3 * (i * j) as f64));
        let v = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(-1.0, 2.0),
            C64::new(0.5, 0.0),
        ];
        let full = expm(&m).mul_vec(&v);
        let act = expm_apply(&m, &v);
        for k in 0..4 {
            assert!((full[k] - act[k]).norm() < 1e-11 * full[k].norm().max(1.0));
        }
    }
}
