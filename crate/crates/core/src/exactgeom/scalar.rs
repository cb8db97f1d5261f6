//! The ring operations the division-free geometric kernel needs.

use num_traits::{One, Zero};

use super::number::Sign;
use super::poly::Poly;
use super::rational::{to_f64, Rational};
use crate::error::Result;

pub trait Scalar: Clone + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sign(&self) -> Result<Sign>;
    /// Cheap syntactic zero test; never true for a nonzero value.
    fn is_zero_struct(&self) -> bool;
    fn from_rational_like(&self, r: &Rational) -> Self;
    /// A floating-point enclosure of the value.
    fn ball(&self) -> Ball;
}

const ROUND: f64 = 1.0 / (1u64 << 50) as f64;

/// A floating-point value with an absolute error bound, for filtering exact
/// computations. Rounding errors are bounded generously at `2^-50` per operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub value: f64,
    pub err: f64,
}

impl Ball {
    pub fn of_f64(value: f64, roundings: u32) -> Ball {
        Ball { value, err: value.abs() * f64::from(roundings) * ROUND + f64::MIN_POSITIVE }
    }
}

impl Scalar for Ball {
    fn zero_like(&self) -> Self {
        Ball { value: 0.0, err: 0.0 }
    }
    fn one_like(&self) -> Self {
        Ball { value: 1.0, err: 0.0 }
    }
    fn add(&self, other: &Self) -> Self {
        let value = self.value + other.value;
        Ball { value, err: self.err + other.err + value.abs() * ROUND }
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let value = self.value * other.value;
        let err = self.value.abs() * other.err + other.value.abs() * self.err + self.err * other.err;
        Ball { value, err: err * (1.0 + 4.0 * ROUND) + value.abs() * ROUND + f64::MIN_POSITIVE }
    }
    fn neg(&self) -> Self {
        Ball { value: -self.value, err: self.err }
    }
    /// Fails with `PrecisionExhausted` when the ball straddles zero.
    fn sign(&self) -> Result<Sign> {
        if !self.value.is_finite() || !self.err.is_finite() {
            return Err(crate::Error::PrecisionExhausted { bits: 53 });
        }
        if self.value == 0.0 && self.err == 0.0 {
            Ok(Sign::Zero)
        } else if self.value > self.err * (1.0 + 4.0 * ROUND) {
            Ok(Sign::Positive)
        } else if -self.value > self.err * (1.0 + 4.0 * ROUND) {
            Ok(Sign::Negative)
        } else {
            Err(crate::Error::PrecisionExhausted { bits: 53 })
        }
    }
    fn is_zero_struct(&self) -> bool {
        self.value == 0.0 && self.err == 0.0
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.ball()
    }
    fn ball(&self) -> Ball {
        *self
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn sign(&self) -> Result<Sign> {
        Ok(Sign::of_rational(self))
    }
    fn is_zero_struct(&self) -> bool {
        self.is_zero()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn ball(&self) -> Ball {
        if self.is_zero() {
            return Ball { value: 0.0, err: 0.0 };
        }
        Ball::of_f64(to_f64(self), 1)
    }
}

/// Fixed-width integers for the search kernel. Callers bound coordinates so that
/// determinants fit; overflow panics rather than wrapping.
impl Scalar for i128 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i128 overflow")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("i128 overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i128 overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> Result<Sign> {
        Ok(match self.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        })
    }
    fn is_zero_struct(&self) -> bool {
        *self == 0
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        assert!(r.is_integer(), "non-integer value in integer kernel");
        i128::try_from(r.to_integer()).expect("value exceeds i128")
    }
    fn ball(&self) -> Ball {
        if self.unsigned_abs() < 1 << 53 {
            Ball { value: *self as f64, err: 0.0 }
        } else {
            Ball::of_f64(*self as f64, 1)
        }
    }
}

impl Scalar for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.basis())
    }
    fn one_like(&self) -> Self {
        Poly::constant(self.basis(), Rational::one())
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn sign(&self) -> Result<Sign> {
        Poly::sign(self)
    }
    fn is_zero_struct(&self) -> bool {
        self.is_structurally_zero()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        Poly::constant(self.basis(), r.clone())
    }
    fn ball(&self) -> Ball {
        Poly::ball(self)
    }
}
