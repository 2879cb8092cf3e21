use std::ops::{Add, Mul, Neg, Sub};

use super::{QuadExt, Real};
use crate::error::{Error, Result};

/// `a + bi + cj + dk`, with `i² = j² = k² = ijk = −1`.
///
/// Multiplication is the Hamilton product and is not commutative. A complex
/// number is a quaternion with `c = d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Real> Quaternion<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Self { a, b, c, d }
    }

    pub fn complex(re: R, im: R) -> Self {
        Self::new(re, im, R::zero(), R::zero())
    }

    pub fn real(a: R) -> Self {
        Self::new(a, R::zero(), R::zero(), R::zero())
    }

    pub fn from_i64(v: i64) -> Self {
        Self::real(R::from_i64(v))
    }

    pub fn zero() -> Self {
        Self::real(R::zero())
    }

    pub fn one() -> Self {
        Self::real(R::one())
    }

    pub fn i() -> Self {
        Self::new(R::zero(), R::one(), R::zero(), R::zero())
    }

    pub fn j() -> Self {
        Self::new(R::zero(), R::zero(), R::one(), R::zero())
    }

    pub fn k() -> Self {
        Self::new(R::zero(), R::zero(), R::zero(), R::one())
    }

    pub fn components(&self) -> [&R; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|x| x.is_zero())
    }

    pub fn is_complex(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.is_complex() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    /// `x·conj(x) = a² + b² + c² + d²`.
    pub fn norm_sq(&self) -> R {
        self.components()
            .into_iter()
            .map(|x| x.clone() * x.clone())
            .fold(R::zero(), |acc, x| acc + x)
    }

    /// Multiplies every component by the real `s` (reals are central in ℍ).
    pub fn scale(&self, s: &R) -> Self {
        Self::new(
            self.a.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.c.clone() * s.clone(),
            self.d.clone() * s.clone(),
        )
    }

    /// `conj(x) / |x|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(&n.recip()?))
    }

    pub fn compatible(&self, other: &Self) -> bool {
        self.components()
            .into_iter()
            .flat_map(|x| other.components().into_iter().map(move |y| x.compatible(y)))
            .all(|ok| ok)
    }

    /// Hamilton product, failing instead of panicking on incompatible backends.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if !self.compatible(other) {
            return Err(Error::BackendMismatch(format!(
                "incompatible operands {self:?} and {other:?}"
            )));
        }
        Ok(self.clone() * other.clone())
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        Quaternion::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.d.to_f64())
    }

    /// Component-wise [`Real::approx_eq`] against the largest magnitude present.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        if R::EXACT {
            return self == other;
        }
        let x = self.to_f64();
        let y = other.to_f64();
        let scale = x.norm_sq().max(y.norm_sq()).sqrt();
        let diff = (x - y).norm_sq().sqrt();
        diff <= rel * scale
    }

    pub fn key(&self) -> [R::Key; 4] {
        [self.a.key(), self.b.key(), self.c.key(), self.d.key()]
    }
}

impl Quaternion<QuadExt> {
    pub fn parse_components(parts: &[&str], m: u32) -> Result<Self> {
        let mut vals = parts
            .iter()
            .map(|s| QuadExt::parse(s, m))
            .collect::<Result<Vec<_>>>()?;
        vals.resize(4, QuadExt::int(0));
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("four components");
        Ok(Self::new(next(), next(), next(), next()))
    }
}

impl<R: Real> Add for Quaternion<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl<R: Real> Sub for Quaternion<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl<R: Real> Neg for Quaternion<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<R: Real> Mul for Quaternion<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        let a = a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone();
        let b = a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone();
        let c = a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone();
        let d = a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2;
        Self::new(a, b, c, d)
    }
}
