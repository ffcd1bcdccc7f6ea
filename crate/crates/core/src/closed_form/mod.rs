//! Closed-form bulk and surface counts for every supported family.
//!
//! Surface counts are first differences of bulk counts with `bulk(-1) = 0`,
//! so every surface sequence starts at 1.

mod bernoulli;
mod multinomial;
mod parity;
mod quasi;

pub use bernoulli::{power_sum, PowerSumTable};
pub use multinomial::{
    centered_multinomial, centered_multinomial_gamma_terms, centered_multinomial_terms,
};
pub use parity::{v_by_recurrence, v_even, v_odd};
pub use quasi::{fit_quasipolynomial, fit_sequence, Kind, QuasiPolynomial, Variable};

use crate::combinatorics::odd_pow;
use crate::error::{Error, Result};
use crate::lattice::{Family, LatticeSpec};
use crate::BigCount;

fn first_difference(n: u64, bulk: impl Fn(u64) -> BigCount) -> BigCount {
    if n == 0 {
        bulk(0)
    } else {
        bulk(n) - bulk(n - 1)
    }
}

/// `D_k` bulk count, `k ≥ 2`.
pub fn d_bulk(k: u32, n: u64) -> BigCount {
    assert!(k >= 2, "D_k needs k >= 2");
    v_even(k, n)
}

pub fn d_surface(k: u32, n: u64) -> BigCount {
    first_difference(n, |m| d_bulk(k, m))
}

/// `D*_k` bulk count: its integer points are all of `Z^k`.
pub fn dstar_bulk(k: u32, n: u64) -> BigCount {
    odd_pow(n, k)
}

/// `A_k` bulk count, the centered `(2n+1)`-nomial coefficient with `k+1` factors.
pub fn a_bulk(k: u32, n: u64) -> BigCount {
    assert!(k >= 1, "A_k needs k >= 1");
    centered_multinomial(k + 1, n)
}

pub fn a_surface(k: u32, n: u64) -> BigCount {
    first_difference(n, |m| a_bulk(k, m))
}

/// `E_6 = (2n+1)·A_5`, `E_7 = A_7`, `E_8 = V_8^even` (integer points only).
pub fn e_bulk(k: u32, n: u64) -> Result<BigCount> {
    match k {
        6 => Ok(BigCount::from(2 * n + 1) * a_bulk(5, n)),
        7 => Ok(a_bulk(7, n)),
        8 => Ok(v_even(8, n)),
        _ => Err(Error::InvalidSpec {
            family: Family::E,
            rank: k,
        }),
    }
}

pub fn e_surface(k: u32, n: u64) -> Result<BigCount> {
    let outer = e_bulk(k, n)?;
    if n == 0 {
        return Ok(outer);
    }
    Ok(outer - e_bulk(k, n - 1)?)
}

/// Bulk count for any valid spec.
pub fn bulk(spec: LatticeSpec, n: u64) -> BigCount {
    let k = spec.rank();
    match spec.family() {
        Family::A => a_bulk(k, n),
        Family::D => d_bulk(k, n),
        Family::Dstar => dstar_bulk(k, n),
        Family::E => e_bulk(k, n).expect("LatticeSpec validated E rank"),
        Family::Z => odd_pow(n, k),
    }
}

pub fn surface(spec: LatticeSpec, n: u64) -> BigCount {
    first_difference(n, |m| bulk(spec, m))
}

/// Bulk or surface, by kind.
pub fn count(spec: LatticeSpec, kind: Kind, n: u64) -> BigCount {
    match kind {
        Kind::Bulk => bulk(spec, n),
        Kind::Surface => surface(spec, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::BigInt;

    fn spec(f: Family, k: u32) -> LatticeSpec {
        LatticeSpec::new(f, k).unwrap()
    }

    fn seq(f: impl Fn(u64) -> BigCount, len: u64) -> Vec<BigCount> {
        (0..len).map(f).collect()
    }

    fn nums(v: &[u64]) -> Vec<BigCount> {
        v.iter().map(|&x| BigCount::from(x)).collect()
    }

    #[test]
    fn d_family_sequences() {
        assert_eq!(seq(|n| d_bulk(2, n), 4), nums(&[1, 5, 13, 25]));
        assert_eq!(seq(|n| d_bulk(3, n), 6), nums(&[1, 13, 63, 171, 365, 665]));
        assert_eq!(d_bulk(4, 2), BigCount::from(313_u32));
        assert_eq!(d_surface(3, 2), BigCount::from(50_u32));
        // 16 + 40 + 40 + 20 + 5 + (1 + (-1)^1)/2
        assert_eq!(bulk(spec(Family::D, 5), 1), BigCount::from(121_u32));
        assert_eq!(d_bulk(7, 1), BigCount::from(1093_u32));
    }

    /// `D_k^s(n) = ((2n+1)^k - (2n-1)^k)/2 (+ (-1)^n for odd k)` for n > 0.
    #[test]
    fn d_surface_corollary_form() {
        for k in 2..=10_u32 {
            for n in 1..=20_u64 {
                let outer = BigInt::from(odd_pow(n, k));
                let inner = BigInt::from(2 * n - 1).pow(k);
                let mut want = (outer - inner) / 2;
                if k % 2 == 1 {
                    want += if n % 2 == 0 { 1 } else { -1 };
                }
                assert_eq!(BigInt::from(d_surface(k, n)), want, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn dstar_examples() {
        assert_eq!(dstar_bulk(3, 1), BigCount::from(27_u32));
        assert_eq!(dstar_bulk(1, 5), BigCount::from(11_u32));
        assert_eq!(dstar_bulk(2, 2), BigCount::from(25_u32));
    }

    #[test]
    fn a_family_examples() {
        assert_eq!(a_bulk(7, 1), BigCount::from(1107_u32));
        assert_eq!(a_surface(5, 3), BigCount::from(7580_u32));
        assert_eq!(bulk(spec(Family::A, 4), 3), BigCount::from(1451_u32));
        for k in 1..10 {
            assert_eq!(a_bulk(k, 0), BigCount::from(1_u32));
            assert_eq!(a_surface(k, 0), BigCount::from(1_u32));
        }
    }

    #[test]
    fn e_family_examples() {
        assert_eq!(e_bulk(6, 2).unwrap(), BigCount::from(8755_u32));
        assert_eq!(e_bulk(8, 2).unwrap(), BigCount::from(195_313_u32));
        assert_eq!(e_surface(8, 1).unwrap(), BigCount::from(3280_u32));
        assert_eq!(bulk(spec(Family::E, 7), 2), BigCount::from(38165_u32));
        assert_eq!(e_surface(6, 0).unwrap(), BigCount::from(1_u32));
        assert!(e_bulk(5, 1).is_err());
        assert!(e_surface(9, 1).is_err());
    }

    /// `A_k(n) = Σ_{j=1}^{k+1} C(k+1, j) (-1)^{j+1} A_k(n-j)`.
    #[test]
    fn a_bulk_binomial_recurrence() {
        for k in 1..=8_u32 {
            for n in 9..=40_u64 {
                let rhs: BigInt = (1..=u64::from(k) + 1)
                    .map(|j| {
                        let term = BigInt::from(binomial(u64::from(k) + 1, j))
                            * BigInt::from(a_bulk(k, n - j));
                        if j % 2 == 1 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum();
                assert_eq!(BigInt::from(a_bulk(k, n)), rhs, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn surface_dispatch_is_first_difference() {
        for f in Family::ALL {
            for k in f.min_rank()..=8 {
                let Ok(s) = LatticeSpec::new(f, k) else { continue };
                assert_eq!(surface(s, 0), BigCount::from(1_u32));
                for n in 1..6 {
                    assert_eq!(surface(s, n) + bulk(s, n - 1), bulk(s, n));
                    assert_eq!(count(s, Kind::Surface, n), surface(s, n));
                }
            }
        }
    }
}
