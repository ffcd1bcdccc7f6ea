//! Binomial coefficients and related helpers on big integers.

use num_traits::{One, Zero};

use crate::{BigCount, BigInt};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        // exact at every step: acc = C(n, i) * (n - i) / (i + 1) = C(n, i + 1)
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

pub fn binomial_signed(n: u64, k: u64) -> BigInt {
    BigInt::from(binomial(n, k))
}

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, i| acc * BigCount::from(i))
}

/// `(-1)^e` as a signed big integer.
pub fn sign(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

pub fn odd_pow(n: u64, k: u32) -> BigCount {
    BigCount::from(2 * n + 1).pow(k)
}
