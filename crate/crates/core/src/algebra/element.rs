use std::iter::Sum;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GeneratorId, DIM};
use crate::numerics::{C64, ZERO};

/// Complex coefficients over the ordered generator basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    pub coeffs: [C64; DIM],
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self {
            coeffs: [ZERO; DIM],
        }
    }

    pub fn new(coeffs: [C64; DIM]) -> Self {
        Self { coeffs }
    }

    pub fn unit(g: GeneratorId) -> Self {
        let mut e = Self::zero();
        e.coeffs[g.index()] = C64::new(1.0, 0.0);
        e
    }

    pub fn from_real(coeffs: [f64; DIM]) -> Self {
        Self {
            coeffs: coeffs.map(|x| C64::new(x, 0.0)),
        }
    }

    /// Sum of `coefficient * generator` terms; repeated generators accumulate.
    pub fn from_terms(terms: &[(GeneratorId, C64)]) -> Self {
        let mut e = Self::zero();
        for &(g, c) in terms {
            e.coeffs[g.index()] += c;
        }
        e
    }

    /// As [`from_terms`](Self::from_terms) with real coefficients.
    pub fn from_real_terms(terms: &[(GeneratorId, f64)]) -> Self {
        let mut e = Self::zero();
        for &(g, c) in terms {
            e.coeffs[g.index()] += c;
        }
        e
    }

    pub fn get(&self, g: GeneratorId) -> C64 {
        self.coeffs[g.index()]
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c * s),
        }
    }

    /// Largest |Im c_k|: the anti-Hermitian content in the coordinate
    /// representation, where every generator is a Hermitian operator.
    pub fn max_imag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_imag() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn real_parts(&self) -> [f64; DIM] {
        self.coeffs.map(|c| c.re)
    }
}

impl Index<GeneratorId> for AlgebraElement {
    type Output = C64;
    fn index(&self, g: GeneratorId) -> &C64 {
        &self.coeffs[g.index()]
    }
}

impl IndexMut<GeneratorId> for AlgebraElement {
    fn index_mut(&mut self, g: GeneratorId) -> &mut C64 {
        &mut self.coeffs[g.index()]
    }
}

impl Add for AlgebraElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for AlgebraElement {
    fn add_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for AlgebraElement {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for AlgebraElement {
    fn sub_assign(&mut self, rhs: Self) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for AlgebraElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl Mul<C64> for AlgebraElement {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        self.scale(s)
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.map(|c| c * s),
        }
    }
}

impl Mul<AlgebraElement> for f64 {
    type Output = AlgebraElement;
    fn mul(self, e: AlgebraElement) -> AlgebraElement {
        e * self
    }
}

impl Mul<AlgebraElement> for C64 {
    type Output = AlgebraElement;
    fn mul(self, e: AlgebraElement) -> AlgebraElement {
        e * self
    }
}

impl Sum for AlgebraElement {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl From<GeneratorId> for AlgebraElement {
    fn from(g: GeneratorId) -> Self {
        Self::unit(g)
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::numerics::pairs::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::numerics::pairs::deserialize(d).map(|coeffs| Self { coeffs })
    }
}
