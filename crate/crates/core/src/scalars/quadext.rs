//! Exact elements `a + b√m` of a real quadratic field `ℚ(√m)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::Real;
use crate::error::{Error, Result};

/// An exact real number `a + b√m`.
///
/// `m` is square-free. A value with `b = 0` is a plain rational and always
/// stores `m = 0`, so it combines with values over any radicand. Two values
/// with non-zero radical parts over different radicands cannot be combined;
/// the arithmetic operators panic in that case (see [`QuadExt::try_add`] and
/// [`QuadExt::try_mul`] for checked variants).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    m: u32,
}

pub fn is_square_free(m: u32) -> bool {
    if m < 4 {
        return true;
    }
    let mut p = 2u64;
    while p * p <= m as u64 {
        if (m as u64) % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational, m: u32) -> Result<Self> {
        if !is_square_free(m) {
            return Err(Error::InvalidSpec(format!("radicand {m} is not square-free")));
        }
        if m <= 1 && !b.is_zero() {
            return Err(Error::InvalidSpec(format!(
                "radical part must vanish when m = {m}"
            )));
        }
        Ok(Self::normalized(a, b, m))
    }

    fn normalized(a: BigRational, b: BigRational, m: u32) -> Self {
        let m = if b.is_zero() { 0 } else { m };
        Self { a, b, m }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), m: 0 }
    }

    pub fn int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `(a_num/a_den) + (b_num/b_den)·√m`; panics on a zero denominator or a
    /// radicand that is not square-free.
    pub fn from_parts(a: (i64, i64), b: (i64, i64), m: u32) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        Self::new(r(a), r(b), m).expect("valid quadratic-field element")
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, `0` for rational values.
    pub fn radicand(&self) -> u32 {
        self.m
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_m(&self, other: &Self) -> Option<u32> {
        match (self.m, other.m) {
            (x, y) if x == y => Some(x),
            (0, y) => Some(y),
            (x, 0) => Some(x),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::BackendMismatch(format!(
            "cannot combine elements of Q(sqrt {}) and Q(sqrt {})",
            self.m, other.m
        ))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other).ok_or_else(|| self.mismatch(other))?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, m))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other).ok_or_else(|| self.mismatch(other))?;
        Ok(Self::normalized(&self.a - &other.a, &self.b - &other.b, m))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other).ok_or_else(|| self.mismatch(other))?;
        if self.b.is_zero() {
            return Ok(Self::normalized(&self.a * &other.a, &self.a * &other.b, m));
        }
        if other.b.is_zero() {
            return Ok(Self::normalized(&self.a * &other.a, &self.b * &other.a, m));
        }
        let mq = BigRational::from_integer(BigInt::from(m));
        let a = &self.a * &other.a + &self.b * &other.b * mq;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, m))
    }

    /// Sign of `a + b√m`, decided by rational arithmetic alone.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (_, Ordering::Equal) => sa,
            (Ordering::Equal, _) => sb,
            _ if sa == sb => sa,
            _ => {
                // opposite signs: the larger of a² and b²m wins
                let a2 = &self.a * &self.a;
                let b2m = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.m));
                match a2.cmp(&b2m) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Parses the component grammar `rational | rational ("+"|"-") rational "r"`
    /// where `r` stands for `√m`.
    pub fn parse(s: &str, m: u32) -> Result<Self> {
        let err = |why: &str| Error::Parse(format!("invalid exact component {s:?}: {why}"));
        if let Some(body) = s.strip_suffix('r') {
            // the separator is the last sign that is not the leading one
            let sep = body
                .char_indices()
                .skip(1)
                .filter(|&(_, c)| c == '+' || c == '-')
                .map(|(i, _)| i)
                .last()
                .ok_or_else(|| err("missing sign before radical part"))?;
            let a = parse_rational(&body[..sep]).map_err(|_| err("bad rational part"))?;
            let tail = &body[sep + 1..];
            if !tail.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(err("bad radical part"));
            }
            let mut b = parse_rational(tail).map_err(|_| err("bad radical part"))?;
            if &body[sep..=sep] == "-" {
                b = -b;
            }
            if m <= 1 {
                return Err(err("radical part requires sqrt_m >= 2"));
            }
            Self::new(a, b, m).map_err(|e| err(&e.to_string()))
        } else {
            parse_rational(s).map(Self::rational).map_err(|_| err("bad rational"))
        }
    }
}

/// Parses `integer | integer "/" positive-integer`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("invalid rational {s:?}"));
    let int = |t: &str, signed: bool| -> Result<BigInt> {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        t.parse::<BigInt>().map_err(|_| err())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s, true)?)),
        Some((n, d)) => {
            let n = int(n, true)?;
            let d = int(d, false)?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `a`, `a+br` or `a-br`, where `r` stands for `√m`.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.a, f)?;
        if !self.b.is_zero() {
            f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
            fmt_rational(&self.b.abs(), f)?;
            f.write_str("r")?;
        }
        Ok(())
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, m: self.m }
    }
}

impl Real for QuadExt {
    const EXACT: bool = true;
    type Key = QuadExt;

    fn zero() -> Self {
        Self::int(0)
    }

    fn one() -> Self {
        Self::int(1)
    }

    fn from_i64(v: i64) -> Self {
        Self::int(v)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::ratio(num, den)
    }

    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).map(Self::rational).unwrap_or_else(|| Self::int(0))
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.try_sub(other).unwrap_or_else(|e| panic!("{e}")).signum()
    }

    fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (a + b√m)⁻¹ = (a − b√m) / (a² − b²m); the norm is non-zero because √m is irrational
        let mq = BigRational::from_integer(BigInt::from(self.m));
        let norm = &self.a * &self.a - &self.b * &self.b * mq;
        Ok(Self::normalized(&self.a / &norm, -(&self.b / &norm), self.m))
    }

    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a
        } else {
            a + self.b.to_f64().unwrap_or(f64::NAN) * (self.m as f64).sqrt()
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.common_m(other).is_some()
    }

    fn sqrt_int(n: u32) -> Option<Self> {
        // n = s²·f with f square-free
        let mut s = 1u32;
        let mut f = n;
        let mut p = 2u32;
        while p * p <= f {
            while f % (p * p) == 0 {
                f /= p * p;
                s *= p;
            }
            p += 1;
        }
        let s = BigRational::from_integer(BigInt::from(s));
        Some(if f <= 1 {
            Self::rational(s * BigRational::from_integer(BigInt::from(f)))
        } else {
            Self::normalized(BigRational::zero(), s, f)
        })
    }

    fn key(&self) -> Self {
        self.clone()
    }

    fn approx_eq(&self, other: &Self, _rel: f64) -> bool {
        self == other
    }
}

impl From<i64> for QuadExt {
    fn from(v: i64) -> Self {
        Self::int(v)
    }
}
