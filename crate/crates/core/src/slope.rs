//! Slopes on a torus in meridian/longitude coordinates.
//!
//! A slope `m/n` is stored reduced with `n >= 0`; the meridian `∞` is `1/0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    m: BigInt,
    n: BigInt,
}

impl Slope {
    pub fn new(m: impl Into<BigInt>, n: impl Into<BigInt>) -> Result<Self> {
        let (mut m, mut n) = (m.into(), n.into());
        if m.is_zero() && n.is_zero() {
            return Err(Error::InvalidSlope);
        }
        let g = m.gcd(&n);
        m /= &g;
        n /= &g;
        if n.is_negative() || (n.is_zero() && m.is_negative()) {
            m = -m;
            n = -n;
        }
        Ok(Slope { m, n })
    }

    pub fn integer(m: impl Into<BigInt>) -> Self {
        Slope { m: m.into(), n: BigInt::one() }
    }

    pub fn infinity() -> Self {
        Slope { m: BigInt::one(), n: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Slope { m: BigInt::zero(), n: BigInt::one() }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.m
    }

    pub fn denominator(&self) -> &BigInt {
        &self.n
    }

    pub fn is_infinite(&self) -> bool {
        self.n.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.n.is_one()
    }

    pub fn negate(&self) -> Slope {
        if self.is_infinite() {
            return self.clone();
        }
        Slope { m: -&self.m, n: self.n.clone() }
    }

    /// Minimal geometric intersection number `|m n' - m' n|`.
    pub fn intersection_number(&self, other: &Slope) -> BigInt {
        (&self.m * &other.n - &other.m * &self.n).abs()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}/{}", self.m, self.n)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    /// Accepts `m/n`, `m`, and `inf` (also `∞`, `1/0`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Slope::infinity());
        }
        let bad = |_| Error::parse("slope", format!("`{s}` is not m/n, m, or inf"));
        match s.split_once('/') {
            Some((m, n)) => {
                let m: BigInt = m.trim().parse().map_err(bad)?;
                let n: BigInt = n.trim().parse().map_err(bad)?;
                Slope::new(m, n)
            }
            None => Ok(Slope::integer(s.parse::<BigInt>().map_err(bad)?)),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
