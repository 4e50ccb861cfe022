//! Periodic coefficient rings `R(d) = R[q]/(q^d - 1)` and `R(inf) = R[q, q^-1]`.
//!
//! Rank values live here. Elements are kept canonical: for a finite period
//! every stored exponent is in `0..d`, and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Num;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of a periodic polynomial: an ordered ring with exact division
/// by two (in practice the rationals).
pub trait Coefficient:
    Num + Clone + PartialOrd + Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync
{
}

impl<T> Coefficient for T where
    T: Num + Clone + PartialOrd + Neg<Output = T> + fmt::Debug + fmt::Display + Send + Sync
{
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Period {
    Finite(u64),
    Infinite,
}

impl Period {
    pub fn finite(d: u64) -> Result<Period> {
        if d == 0 {
            return Err(Error::Parse("period must be at least 1".into()));
        }
        Ok(Period::Finite(d))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Period::Finite(_))
    }

    /// True when `target` is a quotient period of `self` (divides it, or self is infinite).
    pub fn reduces_to(&self, target: Period) -> bool {
        match (self, target) {
            (_, Period::Infinite) => *self == Period::Infinite,
            (Period::Infinite, Period::Finite(_)) => true,
            (Period::Finite(d), Period::Finite(t)) => d % t == 0,
        }
    }

    /// `d = inf` or `d` odd: the periods at which `1+q` can be cancelled.
    pub fn admits_division(&self) -> bool {
        match self {
            Period::Infinite => true,
            Period::Finite(d) => d % 2 == 1,
        }
    }

    fn canon(&self, e: i64) -> i64 {
        match self {
            Period::Infinite => e,
            Period::Finite(d) => e.rem_euclid(*d as i64),
        }
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(d) => write!(f, "{d}"),
            Period::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Period {
    type Err = Error;
    fn from_str(s: &str) -> Result<Period> {
        match s.trim() {
            "inf" | "infinite" | "∞" => Ok(Period::Infinite),
            t => {
                let d: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad period {s:?}")))?;
                Period::finite(d)
            }
        }
    }
}

impl Serialize for Period {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Period::Finite(d) => s.serialize_u64(*d),
            Period::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Period {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Period::finite(n).map_err(de::Error::custom),
            Raw::S(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffPoly<R> {
    period: Period,
    coeffs: BTreeMap<i64, R>,
}

impl<R: Coefficient> CoeffPoly<R> {
    /// Canonical form of a raw list of terms: exponents reduced, duplicates
    /// summed, zeros dropped.
    pub fn normalize<I>(raw: I, period: Period) -> Self
    where
        I: IntoIterator<Item = (i64, R)>,
    {
        let mut coeffs: BTreeMap<i64, R> = BTreeMap::new();
        for (e, c) in raw {
            let e = period.canon(e);
            let slot = coeffs.entry(e).or_insert_with(R::zero);
            *slot = slot.clone() + c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        CoeffPoly { period, coeffs }
    }

    pub fn zero(period: Period) -> Self {
        CoeffPoly {
            period,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: R, period: Period) -> Self {
        Self::monomial(c, 0, period)
    }

    pub fn one(period: Period) -> Self {
        Self::constant(R::one(), period)
    }

    pub fn monomial(c: R, e: i64, period: Period) -> Self {
        Self::normalize([(e, c)], period)
    }

    /// `1 + q`.
    pub fn one_plus_q(period: Period) -> Self {
        Self::normalize([(0, R::one()), (1, R::one())], period)
    }

    pub fn period(&self) -> Period {
        self.period
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> R {
        self.coeffs
            .get(&self.period.canon(e))
            .cloned()
            .unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// The constant polynomial's value, if `self` is constant.
    pub fn as_constant(&self) -> Option<R> {
        match self.coeffs.len() {
            0 => Some(R::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> R {
        self.coeffs.values().fold(R::zero(), |a, c| a + c.clone())
    }

    fn same_period(&self, other: &Self) -> Result<()> {
        if self.period != other.period {
            return Err(Error::PeriodMismatch(self.period, other.period));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_period(other)?;
        let raw = self
            .terms()
            .chain(other.terms())
            .map(|(e, c)| (e, c.clone()));
        Ok(Self::normalize(raw, self.period))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_period(other)?;
        let mut raw = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                raw.push((a + b, x.clone() * y.clone()));
            }
        }
        Ok(Self::normalize(raw, self.period))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::normalize(self.terms().map(|(e, c)| (e + k, c.clone())), self.period)
    }

    pub fn scale(&self, s: &R) -> Self {
        Self::normalize(
            self.terms().map(|(e, c)| (e, c.clone() * s.clone())),
            self.period,
        )
    }

    fn neg_ref(&self) -> Self {
        CoeffPoly {
            period: self.period,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    /// Membership in the positive cone `R_{>=0}(d)`. On canonical
    /// representatives this is coefficientwise nonnegativity.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.values().all(|c| *c >= R::zero())
    }

    /// Cone order: `self <= other` iff `other - self` is in the cone.
    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(other.checked_sub(self)?.is_nonneg())
    }

    /// Reduction map `R(d) -> R(d')` for `d' | d` or `d = inf`.
    pub fn reduce_period(&self, target: Period) -> Result<Self> {
        if !self.period.reduces_to(target) {
            return Err(Error::BadReduction {
                from: self.period,
                to: target,
            });
        }
        Ok(Self::normalize(
            self.terms().map(|(e, c)| (e, c.clone())),
            target,
        ))
    }

    /// Solves `(1+q) phi = self`. Returns `Ok(None)` when no such `phi`
    /// exists. At an odd finite period `1+q` is a unit and the answer always
    /// exists; at `d = inf` it is unique when it exists.
    pub fn divide_q_plus_1(&self) -> Result<Option<Self>> {
        match self.period {
            Period::Infinite => Ok(self.divide_laurent()),
            Period::Finite(d) if d % 2 == 1 => {
                // (1+q)^{-1} = (1 - q + q^2 - ... + q^{d-1}) / 2
                let two = R::one() + R::one();
                let half = R::one() / two;
                let inv = Self::normalize(
                    (0..d as i64).map(|i| {
                        let s = if i % 2 == 0 {
                            half.clone()
                        } else {
                            -half.clone()
                        };
                        (i, s)
                    }),
                    self.period,
                );
                Ok(Some(self.checked_mul(&inv)?))
            }
            p => Err(Error::EvenPeriod(p)),
        }
    }

    fn divide_laurent(&self) -> Option<Self> {
        let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Self::zero(self.period)),
        };
        // phi_n = a_n - phi_{n-1}, for n = lo .. hi-1; remainder must vanish at hi.
        let mut phi = Vec::with_capacity((hi - lo) as usize);
        let mut prev = R::zero();
        for n in lo..hi {
            let cur = self.coeff(n) - prev;
            phi.push((n, cur.clone()));
            prev = cur;
        }
        if !(self.coeff(hi) - prev).is_zero() {
            return None;
        }
        Some(Self::normalize(phi, self.period))
    }

    /// Whether `self = (1+q) phi` for some `phi` in the positive cone.
    ///
    /// At `d = inf` this evaluates the alternating tail sums
    /// `sum_{i>=0} (-1)^i a_{n+i}` for every `n`; below the support the tails
    /// alternate in sign, so two extra indices suffice. At odd `d` the unique
    /// quotient is tested directly.
    pub fn nonneg_witness(&self) -> Result<bool> {
        match self.period {
            Period::Infinite => {
                let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
                    (Some(lo), Some(hi)) => (lo, hi),
                    _ => return Ok(true),
                };
                let mut tail = R::zero();
                let mut ok = true;
                // tail(n) = a_n - tail(n+1)
                for n in (lo - 2..=hi).rev() {
                    tail = self.coeff(n) - tail;
                    if tail < R::zero() {
                        ok = false;
                    }
                }
                Ok(ok)
            }
            _ => Ok(self
                .divide_q_plus_1()?
                .map(|p| p.is_nonneg())
                .unwrap_or(false)),
        }
    }
}

impl<R: Coefficient> Add for &CoeffPoly<R> {
    type Output = CoeffPoly<R>;
    fn add(self, o: Self) -> CoeffPoly<R> {
        self.checked_add(o).expect("period mismatch in add")
    }
}

impl<R: Coefficient> Sub for &CoeffPoly<R> {
    type Output = CoeffPoly<R>;
    fn sub(self, o: Self) -> CoeffPoly<R> {
        self.checked_sub(o).expect("period mismatch in sub")
    }
}

impl<R: Coefficient> Mul for &CoeffPoly<R> {
    type Output = CoeffPoly<R>;
    fn mul(self, o: Self) -> CoeffPoly<R> {
        self.checked_mul(o).expect("period mismatch in mul")
    }
}

impl<R: Coefficient> Neg for &CoeffPoly<R> {
    type Output = CoeffPoly<R>;
    fn neg(self) -> CoeffPoly<R> {
        self.neg_ref()
    }
}

impl<R: Coefficient> fmt::Display for CoeffPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = *c < R::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct WirePoly {
    period: Period,
    coeffs: Vec<(i64, String)>,
}

impl<R: Coefficient> Serialize for CoeffPoly<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WirePoly {
            period: self.period,
            coeffs: self.terms().map(|(e, c)| (e, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, R: Coefficient + FromStr> Deserialize<'de> for CoeffPoly<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WirePoly::deserialize(d)?;
        let mut raw = Vec::with_capacity(w.coeffs.len());
        for (e, c) in w.coeffs {
            let v = R::from_str(c.trim())
                .map_err(|_| de::Error::custom(format!("bad coefficient {c:?}")))?;
            raw.push((e, v));
        }
        Ok(CoeffPoly::normalize(raw, w.period))
    }
}
