//! Exact arithmetic on bivariate exponent vectors and their slopes.
//!
//! A monomial `x^a y^b` is identified with its exponent vector `(a, b)`.
//! Two flavours exist: [`Monomial`] allows any nonnegative coordinates and is
//! the support type of sparse polynomials in `R[x,y]`, while [`ExponentPair`]
//! additionally requires `a >= 1` and is the element type of generator
//! families. The [`Slope`] of a pair is the exact rational `b/a`; slopes are
//! compared by cross-multiplication on arbitrary-precision integers, never by
//! rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExponentError {
    #[error("x-exponent must be at least 1, got 0")]
    XExponentZero,
    #[error("slope denominator must be at least 1")]
    ZeroDenominator,
    #[error("invalid decimal integer {0:?}")]
    InvalidDecimal(String),
}

/// Parses a nonnegative integer written in plain decimal (ASCII digits only,
/// no sign, no radix prefixes). This is the integer format used by every
/// on-disk artifact, so that exponents survive arbitrary precision in any
/// consumer.
pub fn parse_decimal(text: &str) -> Result<BigUint, ExponentError> {
    if text.is_empty() || !text.bytes().all(|c| c.is_ascii_digit()) {
        return Err(ExponentError::InvalidDecimal(text.to_owned()));
    }
    BigUint::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| ExponentError::InvalidDecimal(text.to_owned()))
}

/// Exponent vector of a monomial in `R[x,y]`: both coordinates nonnegative,
/// either may be zero. `(0,0)` is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    a: BigUint,
    b: BigUint,
}

impl Monomial {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Self {
        Monomial {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn origin() -> Self {
        Monomial::new(0u32, 0u32)
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    pub fn is_origin(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Exponent vector `(a, b)` with `a >= 1`: the element type of the monomial
/// families and of generator sets. The positive x-exponent is what bounds
/// factorization length later on, so it is enforced at construction.
///
/// The derived ordering (by `a`, then `b`) is the canonical generator sort.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentPair {
    a: BigUint,
    b: BigUint,
}

impl ExponentPair {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>) -> Result<Self, ExponentError> {
        let a = a.into();
        if a.is_zero() {
            return Err(ExponentError::XExponentZero);
        }
        Ok(ExponentPair { a, b: b.into() })
    }

    pub fn a(&self) -> &BigUint {
        &self.a
    }

    pub fn b(&self) -> &BigUint {
        &self.b
    }

    /// The exact rational `b/a`, unreduced.
    pub fn slope(&self) -> Slope {
        Slope {
            num: self.b.clone(),
            den: self.a.clone(),
        }
    }

    /// Componentwise sum, the monoid operation on exponents: multiplying the
    /// monomials `x^a y^b` adds their exponent vectors.
    pub fn add(&self, other: &ExponentPair) -> ExponentPair {
        ExponentPair {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }
}

impl Add<&ExponentPair> for &ExponentPair {
    type Output = ExponentPair;

    fn add(self, rhs: &ExponentPair) -> ExponentPair {
        ExponentPair::add(self, rhs)
    }
}

impl From<ExponentPair> for Monomial {
    fn from(p: ExponentPair) -> Monomial {
        Monomial { a: p.a, b: p.b }
    }
}

impl From<&ExponentPair> for Monomial {
    fn from(p: &ExponentPair) -> Monomial {
        Monomial {
            a: p.a.clone(),
            b: p.b.clone(),
        }
    }
}

impl TryFrom<Monomial> for ExponentPair {
    type Error = ExponentError;

    fn try_from(m: Monomial) -> Result<Self, ExponentError> {
        ExponentPair::new(m.a, m.b)
    }
}

impl fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// On disk a pair is a two-element array of decimal strings, `["a","b"]`.
impl Serialize for ExponentPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        (self.a.to_string(), self.b.to_string()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExponentPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let (a, b) = <(String, String)>::deserialize(deserializer)?;
        let a = parse_decimal(&a).map_err(D::Error::custom)?;
        let b = parse_decimal(&b).map_err(D::Error::custom)?;
        ExponentPair::new(a, b).map_err(D::Error::custom)
    }
}

/// Exact rational slope `b/a`, kept unreduced: only cross-multiplication
/// comparisons are ever needed, so no gcd normalization invariant is carried.
/// Equality and ordering are by cross-products, so `3/2 == 6/4`.
#[derive(Clone, Debug)]
pub struct Slope {
    num: BigUint,
    den: BigUint,
}

impl Slope {
    pub fn new(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Result<Self, ExponentError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ExponentError::ZeroDenominator);
        }
        Ok(Slope {
            num: num.into(),
            den,
        })
    }

    pub fn zero() -> Self {
        Slope {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }
}

impl PartialEq for Slope {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Slope {}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SlopeWire {
            numerator: self.num.to_string(),
            denominator: self.den.to_string(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SlopeWire::deserialize(deserializer)?;
        let num = parse_decimal(&wire.numerator).map_err(D::Error::custom)?;
        let den = parse_decimal(&wire.denominator).map_err(D::Error::custom)?;
        Slope::new(num, den).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlopeWire {
    numerator: String,
    denominator: String,
}
