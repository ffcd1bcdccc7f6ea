//! The two enumeration strategies against each other and against the closed
//! forms.

use proptest::prelude::*;
use rootlattice::closed_form::{bulk, surface};
use rootlattice::combinatorics::odd_pow;
use rootlattice::oracle::{count_bulk_alphaspace, count_bulk_pspace, count_surface, Mode, OracleConfig};
use rootlattice::verify::oracle_specs;
use rootlattice::{BigCount, Family, LatticeSpec};

fn spec(f: Family, k: u32) -> LatticeSpec {
    LatticeSpec::new(f, k).unwrap()
}

#[test]
fn coefficient_search_matches_closed_forms() {
    for s in oracle_specs() {
        for n in 0..=2 {
            let got = count_bulk_alphaspace(&OracleConfig::new(s, n)).unwrap();
            assert_eq!(got, bulk(s, n), "{s} n={n}");
        }
    }
}

#[test]
fn spec_examples() {
    let c = |f, k, n| count_bulk_pspace(&OracleConfig::new(spec(f, k), n)).unwrap();
    assert_eq!(c(Family::E, 8, 3), BigCount::from(2_882_401_u32));
    assert_eq!(c(Family::A, 6, 2), BigCount::from(8135_u32));
    assert_eq!(c(Family::Z, 4, 1), BigCount::from(81_u32));
    assert_eq!(c(Family::D, 7, 1), BigCount::from(1093_u32));
    assert_eq!(c(Family::D, 5, 1), BigCount::from(121_u32));
}

/// Half-integer points: every coordinate in `{±1/2, …, ±(n - 1/2)}` gives
/// `(2n)^k` candidates for `D*_k`; for `E_8` half of them have the right
/// coordinate-sum parity.
#[test]
fn full_lattice_counts() {
    for k in 2..=5 {
        for n in 0..=2_u64 {
            let cfg = OracleConfig::new(spec(Family::Dstar, k), n).with_mode(Mode::FullLattice);
            let want = odd_pow(n, k) + BigCount::from(2 * n).pow(k);
            assert_eq!(count_bulk_alphaspace(&cfg).unwrap(), want, "D*_{k} n={n}");
        }
    }
    for n in 0..=1_u64 {
        let cfg = OracleConfig::new(spec(Family::E, 8), n).with_mode(Mode::FullLattice);
        let want = bulk(spec(Family::E, 8), n) + BigCount::from(2 * n).pow(8) / 2_u32;
        assert_eq!(count_bulk_alphaspace(&cfg).unwrap(), want, "E_8 n={n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strategies_agree(idx in 0usize..32, n in 0u64..=2) {
        let s = oracle_specs()[idx];
        let cfg = OracleConfig::new(s, n);
        let p = count_bulk_pspace(&cfg).unwrap();
        prop_assert_eq!(&p, &count_bulk_alphaspace(&cfg).unwrap());
        prop_assert_eq!(p, bulk(s, n));
    }

    #[test]
    fn surface_matches_first_difference(idx in 0usize..32, n in 0u64..=2) {
        let s = oracle_specs()[idx];
        prop_assert_eq!(count_surface(&OracleConfig::new(s, n)).unwrap(), surface(s, n));
    }
}
