//! Centered multinomial coefficients: the central coefficient of
//! `(1 + x + … + x^{2n})^k`, which is the `A_{k-1}` bulk count.

use num_traits::{One, Zero};

use crate::combinatorics::{binomial_signed, factorial, sign};
use crate::{BigCount, BigInt, Rational};

/// Signed terms `(-1)^j C(k, j) C(nk - j(2n+1) + k - 1, k - 1)` for
/// `0 ≤ j ≤ ⌊nk/(2n+1)⌋`.
pub fn centered_multinomial_terms(k: u32, n: u64) -> Vec<BigInt> {
    assert!(k >= 1, "at least one factor");
    let k = u64::from(k);
    let width = 2 * n + 1;
    (0..=n * k / width)
        .map(|j| {
            let top = n * k - j * width + k - 1;
            sign(j) * binomial_signed(k, j) * binomial_signed(top, k - 1)
        })
        .collect()
}

/// Central coefficient of `(1 + x + … + x^{2n})^k`.
pub fn centered_multinomial(k: u32, n: u64) -> BigCount {
    let s: BigInt = centered_multinomial_terms(k, n).into_iter().sum();
    s.try_into().expect("central coefficient is nonnegative")
}

fn gamma(m: u64) -> Rational {
    assert!(m >= 1, "gamma argument must be positive");
    Rational::from_integer(factorial(m - 1).into())
}

/// The same alternating sum written with Gamma functions,
/// `(-1)^j k/j! · Γ(k(n+1) - j(2n+1)) / (Γ(k-j+1) Γ(kn - j(2n+1) + 1))`,
/// with the summation limit `⌊k / (2 + 1/n)⌋`.
pub fn centered_multinomial_gamma_terms(k: u32, n: u64) -> Vec<Rational> {
    assert!(k >= 1, "at least one factor");
    let kq = Rational::from_integer(k.into());
    let upper = if n == 0 {
        BigInt::zero()
    } else {
        let two_plus = Rational::from_integer(2.into()) + Rational::new(BigInt::one(), n.into());
        (kq.clone() / two_plus).floor().to_integer()
    };
    let upper: u64 = upper.try_into().expect("nonnegative limit");
    let k = u64::from(k);
    (0..=upper)
        .map(|j| {
            let lead = kq.clone() / Rational::from_integer(factorial(j).into());
            let num = gamma(k * (n + 1) - j * (2 * n + 1));
            let den = gamma(k - j + 1) * gamma(k * n - j * (2 * n + 1) + 1);
            Rational::from_integer(sign(j)) * lead * num / den
        })
        .collect()
}
