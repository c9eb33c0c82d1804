//! Exact rational quantities and integer-vs-rational comparisons.

use crate::error::{Error, Result};
use alloc::format;
use core::fmt;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

pub fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(num as i64, den as i64)
}

pub fn int(n: usize) -> Rational {
    Rational::from_integer(n as i64)
}

#[inline]
pub fn le(lhs: usize, rhs: &Rational) -> bool {
    (lhs as i128) * (*rhs.denom() as i128) <= *rhs.numer() as i128
}

#[inline]
pub fn lt(lhs: usize, rhs: &Rational) -> bool {
    (lhs as i128) * (*rhs.denom() as i128) < *rhs.numer() as i128
}

#[inline]
pub fn ge(lhs: usize, rhs: &Rational) -> bool {
    !lt(lhs, rhs)
}

/// Largest integer `k` with `k <= r` (for `r >= 0`).
pub fn floor(r: &Rational) -> i64 {
    r.floor().to_integer()
}

pub fn to_big(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// A nonnegative exact bound `N` (often `eps * |A|`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(Rational);

impl Threshold {
    pub fn new(value: Rational) -> Result<Self> {
        if value < Rational::zero() {
            return Err(Error::BadThreshold);
        }
        Ok(Threshold(value))
    }

    pub fn from_parts(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::BadThreshold);
        }
        Self::new(Rational::new(num, den))
    }

    pub fn integer(n: usize) -> Self {
        Threshold(int(n))
    }

    /// `eps * size`.
    pub fn scaled(eps: Epsilon, size: usize) -> Self {
        Threshold(eps.value() * int(size))
    }

    pub fn value(&self) -> Rational {
        self.0
    }

    /// `count <= N`
    #[inline]
    pub fn admits(&self, count: usize) -> bool {
        le(count, &self.0)
    }
}

impl fmt::Debug for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An error parameter restricted to the open interval (0, 1).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Epsilon(Rational);

impl Epsilon {
    pub fn new(value: Rational) -> Result<Self> {
        if value <= Rational::zero() || value >= Rational::one() {
            return Err(Error::EpsilonRange(format!("{value}")));
        }
        Ok(Epsilon(value))
    }

    pub fn from_parts(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::EpsilonRange(format!("{num}/0")));
        }
        Self::new(Rational::new(num, den))
    }

    pub fn value(&self) -> Rational {
        self.0
    }
}

impl fmt::Debug for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
