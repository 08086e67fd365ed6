use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense complex N x N matrix stored row-major on the stack.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMatrix<const N: usize>(pub [[C64; N]; N]);

/// The defining 4x4 representation of sp(4).
pub type Matrix4 = CMatrix<4>;
/// Coefficient matrix of the 10-dimensional invariant ODE.
pub type Matrix10 = CMatrix<10>;

pub type CVector<const N: usize> = [C64; N];

impl<const N: usize> serde::Serialize for CMatrix<N> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .0
            .iter()
            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<const N: usize> Default for CMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> CMatrix<N> {
    pub fn zeros() -> Self {
        CMatrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = ONE;
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Self::from_fn(|i, j| C64::new(rows[i][j], 0.0))
    }

    pub fn diag(d: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for k in 0..N {
            m.0[k][k] = d[k];
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: &CVector<N>) -> CVector<N> {
        let mut out = [ZERO; N];
        for i in 0..N {
            let mut acc = ZERO;
            for j in 0..N {
                acc += self.0[i][j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// LU factorisation with partial pivoting. Returns the packed factors, the
    /// row permutation and the permutation sign, or `None` for an exactly
    /// singular pivot.
    fn lu(&self) -> Option<(Self, [usize; N], f64)> {
        let mut a = *self;
        let mut perm = [0usize; N];
        for (k, p) in perm.iter_mut().enumerate() {
            *p = k;
        }
        let mut sign = 1.0;
        for k in 0..N {
            let p = (k..N)
                .max_by(|&x, &y| a.0[x][k].norm().total_cmp(&a.0[y][k].norm()))
                .unwrap_or(k);
            if a.0[p][k] == ZERO {
                return None;
            }
            if p != k {
                a.0.swap(p, k);
                perm.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..N {
                let f = a.0[i][k] / a.0[k][k];
                a.0[i][k] = f;
                for j in k + 1..N {
                    let akj = a.0[k][j];
                    a.0[i][j] -= f * akj;
                }
            }
        }
        Some((a, perm, sign))
    }

    pub fn determinant(&self) -> C64 {
        match self.lu() {
            None => ZERO,
            Some((lu, _, sign)) => (0..N).fold(C64::new(sign, 0.0), |acc, k| acc * lu.0[k][k]),
        }
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &CVector<N>) -> Option<CVector<N>> {
        let (lu, perm, _) = self.lu()?;
        let mut x = [ZERO; N];
        for i in 0..N {
            let mut acc = b[perm[i]];
            for j in 0..i {
                acc -= lu.0[i][j] * x[j];
            }
            x[i] = acc;
        }
        for i in (0..N).rev() {
            let mut acc = x[i];
            for j in i + 1..N {
                acc -= lu.0[i][j] * x[j];
            }
            x[i] = acc / lu.0[i][i];
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        let mut inv = Self::zeros();
        for j in 0..N {
            let mut e = [ZERO; N];
            e[j] = ONE;
            let col = self.solve(&e)?;
            for i in 0..N {
                inv.0[i][j] = col[i];
            }
        }
        Some(inv)
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

impl<const N: usize> AddAssign for CMatrix<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> SubAssign for CMatrix<N> {
    fn sub_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> Neg for CMatrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_fn(|i, j| -self.0[i][j])
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<const N: usize> Mul<C64> for CMatrix<N> {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl<const N: usize> Mul<f64> for CMatrix<N> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }
}
