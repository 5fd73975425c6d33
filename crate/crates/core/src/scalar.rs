//! Exact coefficient types for polynomials and generating functions.
//!
//! Everything in this crate is exact: the coefficient ring is either the
//! integers (fixed width or arbitrary precision) or the rationals. The
//! [`Coefficient`] trait collects the handful of operations the polynomial
//! code needs beyond plain ring arithmetic.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, Zero};

/// An exact ring element usable as a polynomial coefficient.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    /// `self / divisor` when the quotient exists in the ring.
    fn exact_div(&self, divisor: &Self) -> Option<Self>;

    /// A non-negative greatest common divisor. For rationals this is the
    /// fractional gcd `gcd(a, c) / lcm(b, d)` of `a/b` and `c/d`, so that
    /// dividing a polynomial by its content leaves coprime integers.
    fn gcd_with(&self, other: &Self) -> Self;

    fn is_negative(&self) -> bool;

    fn from_i64(value: i64) -> Self;
}

macro_rules! impl_fixed_int {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn exact_div(&self, divisor: &Self) -> Option<Self> {
                if *divisor == 0 {
                    return None;
                }
                let (q, r) = self.div_rem(divisor);
                (r == 0).then_some(q)
            }

            fn gcd_with(&self, other: &Self) -> Self {
                Integer::gcd(self, other)
            }

            fn is_negative(&self) -> bool {
                *self < 0
            }

            fn from_i64(value: i64) -> Self {
                <$t>::try_from(value).expect("coefficient literal out of range")
            }
        }
    )*};
}

impl_fixed_int!(i64, i128);

impl Coefficient for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }
}

impl<I> Coefficient for Ratio<I>
where
    I: Clone + Integer + Signed + FromPrimitive + Debug + Display + Send + Sync,
    Ratio<I>: Display,
{
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self.clone() / divisor.clone())
        }
    }

    fn gcd_with(&self, other: &Self) -> Self {
        Ratio::new(
            self.numer().gcd(other.numer()),
            self.denom().lcm(other.denom()),
        )
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(I::from_i64(value).expect("coefficient literal out of range"))
    }
}

/// Converts an exact rational to an integer, if it is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}
