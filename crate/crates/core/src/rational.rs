//! Exact rational numbers for stretch factors and per-level epsilons.

use std::fmt;
use std::ops::{Add, Div, Mul};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Length, INF};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn integer(v: u128) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest integer not below the value (values are assumed nonnegative).
    pub fn ceil_u128(&self) -> u128 {
        self.0.ceil().to_integer().to_u128().unwrap_or(u128::MAX)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `observed <= self * reference + additive`, evaluated exactly.
    ///
    /// `INF` on the left only passes when the reference is `INF` too.
    pub fn bounds(&self, observed: Length, reference: Length, additive: Length) -> bool {
        if observed == INF {
            return reference == INF;
        }
        if reference == INF {
            return true;
        }
        let lhs = BigInt::from(observed) * self.denom();
        let rhs = self.numer() * BigInt::from(reference) + BigInt::from(additive) * self.denom();
        lhs <= rhs
    }

    /// Exact `observed / reference` when `reference > 0`.
    pub fn ratio(observed: Length, reference: Length) -> Option<Self> {
        if reference == 0 || observed == INF || reference == INF {
            return None;
        }
        Some(Rational(BigRational::new(
            BigInt::from(observed),
            BigInt::from(reference),
        )))
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::integer(v as u128)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Div for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        Rational(&self.0 / &rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b`, integers, and plain decimals such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((int, frac)) = s.split_once('.') {
            let digits = format!("{int}{frac}");
            let numer: BigInt = digits
                .parse()
                .map_err(|_| Error::domain(format!("invalid rational '{s}'")))?;
            let denom = num::pow(BigInt::from(10), frac.len());
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        BigRational::from_str(s)
            .map(Rational)
            .map_err(|_| Error::domain(format!("invalid rational '{s}'")))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
