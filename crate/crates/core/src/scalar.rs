//! Exact field scalars.
//!
//! Everything above this module is generic over [`Scalar`], which is a thin
//! extension of [`num_traits::Num`] with multiplicative inverses and a few
//! constructors. Two families implement it: arbitrary-precision rationals
//! ([`Rational`]) and prime fields [`Fp<P>`] with the modulus fixed at compile
//! time.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Runtime description of a ground field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    #[default]
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

/// An exact commutative field.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn field() -> FieldSpec;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self;

    /// Parses the textual wire form (`"num/den"` for rationals, an integer for
    /// prime fields).
    fn parse(s: &str) -> Result<Self>;

    /// Inverse of an element that is known to be nonzero.
    fn inv(&self) -> Self {
        self.inverse().expect("inverse of zero")
    }
}

impl Scalar for BigRational {
    fn field() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let r = BigRational::from_str(t).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(r)
}

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integral(r: &Rational) -> bool {
    r.is_integer()
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

/// Element of the prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(&self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inverse().expect("division by zero in F_p")
    }
}

// Field: every division is exact.
impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    fn rem(self, _o: Self) -> Self {
        Fp(0)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        let v = i64::from_str_radix(s, radix)?;
        Ok(Fp::new(v))
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field() -> FieldSpec {
        FieldSpec::PrimeField(P)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            // Fermat; P is prime.
            Some(self.pow(P - 2))
        }
    }

    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }

    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(Fp::new(v));
        }
        // Accept "a/b" as a * b^{-1}.
        if let Some((a, b)) = t.split_once('/') {
            let a: i64 = a
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad F_{P} element {s:?}")))?;
            let b: i64 = b
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad F_{P} element {s:?}")))?;
            let b = Fp::<P>::new(b)
                .inverse()
                .ok_or_else(|| Error::Parse(format!("zero denominator in {s:?}")))?;
            return Ok(Fp::new(a) * b);
        }
        Err(Error::Parse(format!("bad F_{P} element {s:?}")))
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}
