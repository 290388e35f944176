//! Scalar abstraction shared by the polynomial and semi-algebraic layers.
//!
//! Everything geometric in this crate is generic over an [`OrderedField`]:
//! exact rationals for the fast path and [`crate::RcfNumber`] for points with
//! real algebraic coordinates. There is deliberately no floating point
//! instantiation; every sign decision must be exact.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::MPoly;

/// Exact sign of a field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn of_bigint(v: &BigInt) -> Self {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

/// An ordered field with decidable, exact sign.
///
/// Arithmetic is by value; implementors are immutable values that may be
/// shared across threads.
pub trait OrderedField:
    Clone
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<BigRational>
{
    fn sign(&self) -> Sign;

    /// Multiplicative inverse, `None` for zero.
    fn try_inv(&self) -> Option<Self>;

    /// The value as a rational, when it is one.
    fn to_rational(&self) -> Option<BigRational>;

    fn compare(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign().to_ordering()
    }

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.clone() * inv)
    }

    /// Exact sign of `poly` at `point`. Implementors may override this with a
    /// cheaper certified procedure; the default evaluates exactly.
    fn sign_at(poly: &MPoly<Self>, point: &[Self]) -> Sign {
        poly.eval(point).sign()
    }

    fn from_i64(v: i64) -> Self {
        Self::from(BigRational::from_integer(BigInt::from(v)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl OrderedField for BigRational {
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn compare(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Convenience constructor for rationals.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for integers as rationals.
pub fn qi(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub(crate) fn is_one<C: OrderedField>(c: &C) -> bool {
    c.clone() - C::one() == C::zero()
}
