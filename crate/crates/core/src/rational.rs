//! Exact extended rationals: the totally ordered value codomain for
//! valuations and monotones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An exact rational extended with `-inf` and `+inf`.
///
/// The order is total: `-inf < p/q < +inf`. Arithmetic is only provided
/// where it is unambiguous; there is no `inf - inf`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ExtRational {
    NegInf,
    Finite(BigRational),
    PosInf,
}

pub use ExtRational::{NegInf, PosInf};

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Finite(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtRational::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

/// Renders finite values as `p` or `p/q` in lowest terms; infinities as
/// `-inf` / `inf`. This is the canonical on-disk form.
impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => write!(f, "-inf"),
            ExtRational::PosInf => write!(f, "inf"),
            ExtRational::Finite(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseExtRationalError(pub String);

impl fmt::Display for ParseExtRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid extended rational: {:?}", self.0)
    }
}

impl std::error::Error for ParseExtRationalError {}

impl FromStr for ExtRational {
    type Err = ParseExtRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "inf" | "+inf" => return Ok(ExtRational::PosInf),
            "-inf" => return Ok(ExtRational::NegInf),
            _ => {}
        }
        let bad = || ParseExtRationalError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExtRational::Finite(BigRational::new(num, den)))
    }
}

impl serde::Serialize for ExtRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ExtRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact convex combination `lambda*s + (1-lambda)*t` of finite rationals.
pub fn mix(lambda: &BigRational, s: &BigRational, t: &BigRational) -> BigRational {
    lambda * s + (BigRational::one() - lambda) * t
}

/// True iff `0 <= q <= 1`.
pub fn in_unit_interval(q: &BigRational) -> bool {
    !q.is_negative() && q <= &BigRational::one()
}
