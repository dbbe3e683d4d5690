//! Coefficient traits shared by the polynomial, Laurent and linear-algebra code.
//!
//! Everything in this crate is exact, so the traits describe commutative rings
//! and fields in the `num-traits` vocabulary rather than floating point types.
//! `BigInt` and `BigRational` are the workhorses; `i64` and `Rational64` are
//! handy in tests where overflow cannot happen.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
pub trait Ring:
    Clone
    + Debug
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
    /// The image of an integer under the canonical map `Z -> R`.
    fn from_int(k: i64) -> Self {
        // double-and-add keeps this generic without a `From<i64>` bound
        let mut acc = Self::zero();
        let mut base = Self::one();
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc + base.clone();
            }
            base = base.clone() + base;
            m >>= 1;
        }
        if k < 0 {
            -acc
        } else {
            acc
        }
    }

    /// True when the element is `1` or `-1`.
    fn is_sign_unit(&self) -> bool {
        self.is_one() || (-self.clone()).is_one()
    }
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Send
        + Sync
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}
