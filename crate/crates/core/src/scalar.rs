//! Scalar traits shared by the polynomial and matrix code.
//!
//! Everything in this crate is exact. [`Scalar`] covers any commutative ring
//! from `num-traits` (machine integers, `BigInt`, ratios); [`Field`] marks the
//! types where division is exact, which in practice means `Ratio<I>`.

use std::fmt::Debug;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact commutative ring element.
pub trait Scalar: Clone + Num + Debug {}

impl<T: Clone + Num + Debug> Scalar for T {}

/// A scalar type with exact division.
pub trait Field: Scalar + Signed {}

impl<I: Clone + Integer + Signed + Debug> Field for Ratio<I> {}

/// Lifts an integer into any scalar type by repeated doubling.
pub fn from_i64<T: Scalar>(value: i64) -> T {
    let mut acc = T::zero();
    let mut base = T::one();
    let mut mag = value.unsigned_abs();
    while mag > 0 {
        if mag & 1 == 1 {
            acc = acc + base.clone();
        }
        base = base.clone() + base;
        mag >>= 1;
    }
    if value < 0 {
        T::zero() - acc
    } else {
        acc
    }
}
