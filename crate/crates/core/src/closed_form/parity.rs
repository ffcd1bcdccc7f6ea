//! Even/odd coordinate-sum counts in the cube `[-n, n]^k`.
//!
//! `v_even(k, n)` is also the `D_k` bulk count.

use num_traits::One;

use crate::combinatorics::odd_pow;
use crate::BigCount;

/// Integer points of `[-n, n]^k` with even coordinate sum.
pub fn v_even(k: u32, n: u64) -> BigCount {
    assert!(k >= 1, "dimension must be positive");
    let cube = odd_pow(n, k);
    // (2n+1)^k is odd, so adding ±1 keeps the halving exact
    if k.is_multiple_of(2) || n.is_multiple_of(2) {
        (cube + BigCount::one()) / 2_u32
    } else {
        (cube - BigCount::one()) / 2_u32
    }
}

/// Integer points of `[-n, n]^k` with odd coordinate sum.
pub fn v_odd(k: u32, n: u64) -> BigCount {
    odd_pow(n, k) - v_even(k, n)
}

/// `(even, odd)` counts along one axis.
fn axis_counts(n: u64) -> (BigCount, BigCount) {
    let even = n + u64::from(n.is_multiple_of(2));
    let odd = n + u64::from(n % 2 == 1);
    (even.into(), odd.into())
}

/// `(v_even, v_odd)` by adding one axis at a time:
/// `even_k = odd_{k-1}·odd_1 + even_{k-1}·even_1`,
/// `odd_k = odd_{k-1}·even_1 + even_{k-1}·odd_1`.
pub fn v_by_recurrence(k: u32, n: u64) -> (BigCount, BigCount) {
    assert!(k >= 1, "dimension must be positive");
    let (e1, o1) = axis_counts(n);
    let (mut even, mut odd) = (e1.clone(), o1.clone());
    for _ in 1..k {
        let next_even = &odd * &o1 + &even * &e1;
        let next_odd = &odd * &e1 + &even * &o1;
        even = next_even;
        odd = next_odd;
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn axis_sequences() {
        let even: Vec<u64> = (0..9).map(|n| n + u64::from(n % 2 == 0)).collect();
        assert_eq!(even, [1, 1, 3, 3, 5, 5, 7, 7, 9]);
        let odd: Vec<u64> = (0..9).map(|n| n + u64::from(n % 2 == 1)).collect();
        assert_eq!(odd, [0, 2, 2, 4, 4, 6, 6, 8, 8]);
    }

    #[test]
    fn low_dimensional_values() {
        for n in 0..10_u64 {
            assert_eq!(v_even(2, n), big(2 * n * n + 2 * n + 1));
            assert_eq!(v_odd(2, n), big(2 * n * (n + 1)));
            assert_eq!(v_odd(4, n), big(4 * n * (n + 1) * (2 * n * n + 2 * n + 1)));
        }
        assert_eq!(v_odd(4, 1), big(40));
        for k in 1..10 {
            assert_eq!(v_even(k, 0), big(1));
            assert_eq!(v_odd(k, 0), big(0));
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for k in 1..=16 {
            for n in 0..=50 {
                let (even, odd) = v_by_recurrence(k, n);
                assert_eq!(v_even(k, n), even, "k={k} n={n}");
                assert_eq!(v_odd(k, n), odd, "k={k} n={n}");
                assert_eq!(even + odd, odd_pow(n, k));
            }
        }
    }
}
