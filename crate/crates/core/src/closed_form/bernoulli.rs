//! Bernoulli numbers and Faulhaber power sums.
//!
//! Convention: `B_1 = -1/2`, i.e. the numbers generated by
//! `Σ_{i=0}^{m} C(m+1, i) B_i = 0`. With that convention
//! `(B_{k+1}(j+1) - B_{k+1}(0)) / (k+1) = Σ_{m=0}^{j} m^k`.

use num_traits::{One, Zero};

use crate::combinatorics::binomial;
use crate::{BigCount, BigInt, Rational, RationalPoly};

/// Bernoulli numbers `B_0 ..= B_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumTable {
    numbers: Vec<Rational>,
}

impl PowerSumTable {
    pub fn new(max: usize) -> Self {
        let mut numbers: Vec<Rational> = Vec::with_capacity(max + 1);
        numbers.push(Rational::one());
        for m in 1..=max {
            let s: Rational = numbers
                .iter()
                .enumerate()
                .map(|(i, b)| b * Rational::from_integer(binomial(m as u64 + 1, i as u64).into()))
                .sum();
            numbers.push(-s / Rational::from_integer(BigInt::from(m + 1)));
        }
        PowerSumTable { numbers }
    }

    pub fn max(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, m: usize) -> &Rational {
        &self.numbers[m]
    }

    /// `B_m(x) = Σ_i C(m, i) B_i x^{m-i}`
    pub fn polynomial(&self, m: usize) -> RationalPoly {
        RationalPoly::new(
            (0..=m)
                .map(|power| {
                    let i = m - power;
                    &self.numbers[i] * Rational::from_integer(binomial(m as u64, i as u64).into())
                })
                .collect(),
        )
    }
}

/// `Σ_{m=1}^{j} m^k`, evaluated through Bernoulli polynomials.
pub fn power_sum(j: u64, k: u32) -> BigCount {
    let k = k as usize;
    let table = PowerSumTable::new(k + 1);
    let b = table.polynomial(k + 1);
    let x = Rational::from_integer(BigInt::from(j) + 1);
    let mut s = (b.eval(&x) - b.eval(&Rational::zero())) / Rational::from_integer(BigInt::from(k + 1));
    // the Bernoulli form includes the m = 0 term, which is 0^0 = 1 when k = 0
    if k == 0 {
        s -= Rational::one();
    }
    debug_assert!(s.is_integer());
    s.to_integer().try_into().expect("power sums are nonnegative")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(j: u64, k: u32) -> BigCount {
        (1..=j).map(|m| BigCount::from(m).pow(k)).sum()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn first_bernoulli_numbers() {
        let t = PowerSumTable::new(12);
        assert_eq!(t.max(), 12);
        assert_eq!(*t.number(0), q(1, 1));
        assert_eq!(*t.number(1), q(-1, 2));
        assert_eq!(*t.number(2), q(1, 6));
        assert_eq!(*t.number(4), q(-1, 30));
        assert_eq!(*t.number(6), q(1, 42));
        assert_eq!(*t.number(12), q(-691, 2730));
        for j in 1..=5 {
            assert!(t.number(2 * j + 1).is_zero());
        }
    }

    #[test]
    fn examples() {
        assert_eq!(power_sum(10, 3), BigCount::from(3025_u32));
        assert_eq!(power_sum(5, 1), BigCount::from(15_u32));
        for k in 0..6 {
            assert_eq!(power_sum(0, k), BigCount::zero());
        }
        assert_eq!(power_sum(7, 0), BigCount::from(7_u32));
    }

    #[test]
    fn matches_direct_summation() {
        for j in 0..25 {
            for k in 0..10 {
                assert_eq!(power_sum(j, k), direct(j, k), "j={j} k={k}");
            }
        }
    }

    /// Summing the A_3 α-space slices in closed form reproduces the count:
    /// Σ_{a=-2n}^{0} (2n+1+a)² + Σ_{a=1}^{2n} (2n+1-a)².
    #[test]
    fn resums_a3_slices() {
        let expected = [1_u32, 19, 85, 231, 489, 891, 1469, 2255, 3281];
        for (n, &want) in expected.iter().enumerate() {
            let n = n as u64;
            let total = power_sum(2 * n + 1, 2) + power_sum(2 * n, 2);
            assert_eq!(total, BigCount::from(want));
        }
    }
}
