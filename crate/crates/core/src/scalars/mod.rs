//! Field arithmetic for ℂ and ℍ.
//!
//! A [`Quaternion`] is generic over its component type. Two component types
//! implement [`Real`]:
//!
//! * [`QuadExt`], exact values `a + b√m` with `a, b ∈ ℚ`;
//! * `f64`, ordinary binary floating point.
//!
//! Complex numbers are quaternions whose `j` and `k` parts vanish; the field
//! tag lives on the dataset ([`ScalarField`]), not on individual values.

mod quadext;
mod quaternion;

pub use quadext::{is_square_free, parse_rational, QuadExt};
pub use quaternion::Quaternion;

use std::cmp::Ordering;
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A real component type: the coefficients of a quaternion.
///
/// Arithmetic operators never fail for `f64`. For [`QuadExt`] they panic when
/// two values carry different radicands; use [`Real::compatible`] (or the
/// `try_*` methods on [`Quaternion`]) to check first.
pub trait Real:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether equality and comparisons are exact.
    const EXACT: bool;

    /// Hashable identity of a value, used to group lines by exact key.
    type Key: Hash + Eq + Clone + Debug + Send + Sync;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `num / den`; `den` must be non-zero.
    fn from_ratio(num: i64, den: i64) -> Self;
    /// Exact conversion of a finite float (non-finite values map to zero).
    fn from_f64(v: f64) -> Self;
    fn is_zero(&self) -> bool;

    /// Total order. Exact values are compared without approximating radicals.
    fn compare(&self, other: &Self) -> Ordering;

    fn recip(&self) -> Result<Self>;
    fn to_f64(&self) -> f64;

    /// Whether `self` and `other` can be combined arithmetically.
    fn compatible(&self, other: &Self) -> bool;

    /// `√n` when it is representable in this backend.
    fn sqrt_int(n: u32) -> Option<Self>;

    fn key(&self) -> Self::Key;

    /// Equality up to relative error `rel` (exact backends ignore `rel`).
    fn approx_eq(&self, other: &Self, rel: f64) -> bool;

    fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.recip()?)
    }

    fn is_negative(&self) -> bool {
        self.compare(&Self::zero()) == Ordering::Less
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Real for f64 {
    const EXACT: bool = false;
    type Key = u64;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }

    fn recip(&self) -> Result<Self> {
        if *self == 0.0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(1.0 / self)
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn sqrt_int(n: u32) -> Option<Self> {
        Some((n as f64).sqrt())
    }

    fn key(&self) -> u64 {
        // +0.0 and -0.0 must share a key
        (self + 0.0).to_bits()
    }

    fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        let scale = self.abs().max(other.abs());
        (self - other).abs() <= rel * scale
    }
}

/// The two scalar fields of the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    C,
    H,
}

impl FieldTag {
    /// Number of real components per scalar.
    pub fn dim(self) -> usize {
        match self {
            FieldTag::C => 2,
            FieldTag::H => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::C => "C",
            FieldTag::H => "H",
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "C" | "c" => Ok(FieldTag::C),
            "H" | "h" => Ok(FieldTag::H),
            other => Err(Error::Parse(format!("unknown field tag {other:?} (expected C or H)"))),
        }
    }
}

/// Numeric backend of a dataset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Backend {
    /// Components in `ℚ(√m)`.
    Exact { m: u32 },
    /// `f64` components; `tol_rel` scales the incidence tolerance by the
    /// bounding-box diameter of the point set.
    Float { tol_rel: f64 },
}

impl Backend {
    pub const DEFAULT_TOL_REL: f64 = 1e-9;

    pub fn float() -> Self {
        Backend::Float { tol_rel: Self::DEFAULT_TOL_REL }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Backend::Exact { .. })
    }
}

/// Field tag plus backend; shared by every scalar of one dataset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarField {
    pub tag: FieldTag,
    pub backend: Backend,
}

impl ScalarField {
    pub fn new(tag: FieldTag, backend: Backend) -> Self {
        Self { tag, backend }
    }
}

/// A scalar whose backend is only known at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Quaternion<QuadExt>),
    Float(Quaternion<f64>),
}

impl Scalar {
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => x.try_mul(y).map(Scalar::Exact),
            (Scalar::Float(x), Scalar::Float(y)) => Ok(Scalar::Float(x.clone() * y.clone())),
            _ => Err(Error::BackendMismatch("cannot multiply exact and float scalars".into())),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(x.conj()),
            Scalar::Float(x) => Scalar::Float(x.conj()),
        }
    }

    pub fn to_f64(&self) -> Quaternion<f64> {
        match self {
            Scalar::Exact(x) => x.to_f64(),
            Scalar::Float(x) => x.clone(),
        }
    }
}
