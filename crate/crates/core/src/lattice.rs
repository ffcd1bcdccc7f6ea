//! Lattice specifications, generator matrices and membership predicates.
//!
//! A lattice point is `p = G·α` for an integer coefficient vector `α`. All
//! generator entries are multiples of 1/2, so matrices are kept exact as
//! [`Rational`]s and the enumeration code works with the doubled integer
//! matrix `2G`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    Dstar,
    E,
    /// The cubic lattice `Z^k`.
    Z,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::A, Family::D, Family::Dstar, Family::E, Family::Z];

    /// Smallest rank accepted for the family.
    pub fn min_rank(self) -> u32 {
        match self {
            Family::A | Family::Z => 1,
            Family::D | Family::Dstar => 2,
            Family::E => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::D => "D",
            Family::Dstar => "Dstar",
            Family::E => "E",
            Family::Z => "Z",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "d" => Ok(Family::D),
            "dstar" | "d*" => Ok(Family::Dstar),
            "e" => Ok(Family::E),
            "z" => Ok(Family::Z),
            _ => Err(Error::InvalidInput(format!("unknown lattice family {s:?}"))),
        }
    }
}

/// Family plus rank, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeSpec {
    family: Family,
    rank: u32,
}

impl LatticeSpec {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::E => (6..=8).contains(&rank),
            _ => rank >= family.min_rank(),
        };
        if ok {
            Ok(LatticeSpec { family, rank })
        } else {
            Err(Error::InvalidSpec { family, rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    /// Dimension of the host space the points live in.
    pub fn ambient_dim(self) -> usize {
        let k = self.rank as usize;
        match self.family {
            Family::A => k + 1,
            Family::D | Family::Dstar | Family::Z => k,
            Family::E => 8,
        }
    }

    /// Index of the generator column carrying the ±1/2 entries, if any.
    pub fn half_integer_column(self) -> Option<usize> {
        match self.family {
            Family::Dstar | Family::E => Some(self.rank as usize - 1),
            _ => None,
        }
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

pub fn ambient_dim(spec: LatticeSpec) -> usize {
    spec.ambient_dim()
}

/// Generator matrix with `ambient_dim` rows and `rank` columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenMatrix {
    spec: LatticeSpec,
    matrix: RationalMatrix,
}

impl GenMatrix {
    pub fn spec(&self) -> LatticeSpec {
        self.spec
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// `2G` as machine integers.
    pub fn doubled(&self) -> Matrix<i64> {
        self.matrix.map(|q| {
            let d = q * Rational::from_integer(2.into());
            assert!(d.is_integer(), "generator entries are multiples of 1/2");
            i64::try_from(d.to_integer()).expect("small generator entry")
        })
    }

    /// The lattice point `G·α`.
    pub fn point(&self, alpha: &[i64]) -> Vec<Rational> {
        let alpha: Vec<Rational> = alpha.iter().map(|&a| Rational::from_integer(a.into())).collect();
        self.matrix.mul_vec(&alpha)
    }
}

fn from_doubled(rows: &[&[i64]]) -> RationalMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::new(v.into(), 2.into())).collect())
            .collect(),
    )
}

fn from_int_rows(rows: usize, cols: usize, entry: impl Fn(usize, usize) -> i64) -> RationalMatrix {
    Matrix::from_rows(
        (0..rows)
            .map(|i| (0..cols).map(|j| Rational::from_integer(entry(i, j).into())).collect())
            .collect(),
    )
}

const E6_DOUBLED: [&[i64]; 8] = [
    &[0, 0, 0, 0, 0, 1],
    &[-2, 0, 0, 0, 0, 1],
    &[2, -2, 0, 0, 0, 1],
    &[0, 2, -2, 0, 0, 1],
    &[0, 0, 2, -2, 0, -1],
    &[0, 0, 0, 2, -2, -1],
    &[0, 0, 0, 0, 2, -1],
    &[0, 0, 0, 0, 0, -1],
];

const E7_DOUBLED: [&[i64]; 8] = [
    &[-2, 0, 0, 0, 0, 0, 1],
    &[2, -2, 0, 0, 0, 0, 1],
    &[0, 2, -2, 0, 0, 0, 1],
    &[0, 0, 2, -2, 0, 0, 1],
    &[0, 0, 0, 2, -2, 0, -1],
    &[0, 0, 0, 0, 2, -2, -1],
    &[0, 0, 0, 0, 0, 2, -1],
    &[0, 0, 0, 0, 0, 0, -1],
];

const E8_DOUBLED: [&[i64]; 8] = [
    &[4, -2, 0, 0, 0, 0, 0, 1],
    &[0, 2, -2, 0, 0, 0, 0, 1],
    &[0, 0, 2, -2, 0, 0, 0, 1],
    &[0, 0, 0, 2, -2, 0, 0, 1],
    &[0, 0, 0, 0, 2, -2, 0, -1],
    &[0, 0, 0, 0, 0, 2, -2, -1],
    &[0, 0, 0, 0, 0, 0, 2, -1],
    &[0, 0, 0, 0, 0, 0, 0, -1],
];

pub fn generator_matrix(spec: LatticeSpec) -> GenMatrix {
    let k = spec.rank as usize;
    let matrix = match spec.family {
        // column j: +1 at row j, -1 at row j+1
        Family::A => from_int_rows(k + 1, k, |i, j| {
            if i == j {
                1
            } else if i == j + 1 {
                -1
            } else {
                0
            }
        }),
        // columns e1+e2, e1-e2, then e_{j-1} - e_j
        Family::D => from_int_rows(k, k, |i, j| match j {
            0 => i64::from(i < 2),
            1 => match i {
                0 => 1,
                1 => -1,
                _ => 0,
            },
            _ => {
                if i + 1 == j {
                    1
                } else if i == j {
                    -1
                } else {
                    0
                }
            }
        }),
        // unit columns e_1..e_{k-1}, last column all 1/2
        Family::Dstar => {
            let rows: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| if j == k - 1 { 1 } else { 2 * i64::from(i == j) }).collect())
                .collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            from_doubled(&refs)
        }
        Family::E => match spec.rank {
            6 => from_doubled(&E6_DOUBLED),
            7 => from_doubled(&E7_DOUBLED),
            8 => from_doubled(&E8_DOUBLED),
            _ => unreachable!("LatticeSpec validated E rank"),
        },
        Family::Z => Matrix::identity(k),
    };
    GenMatrix { spec, matrix }
}

/// Square generator obtained by appending unit vectors `e_{k+1}, …, e_m`
/// so that the lattice sits inside its full host space. The original lattice
/// is the slice where the appended coefficients vanish.
pub fn embedded_generator(spec: LatticeSpec) -> RationalMatrix {
    let g = generator_matrix(spec);
    let m = spec.ambient_dim();
    let extra: Vec<Vec<Rational>> = (g.matrix.cols()..m)
        .map(|c| {
            (0..m)
                .map(|r| if r == c { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    g.matrix.extend_columns(&extra)
}

/// Exact inverse of the (embedded) square generator.
pub fn invert_generator(spec: LatticeSpec) -> Result<RationalMatrix> {
    embedded_generator(spec)
        .inverse()
        .ok_or_else(|| Error::Internal(format!("generator of {spec} is singular")))
}

/// Which integer vectors `p` in the host space belong to the lattice.
///
/// Index subsets are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipPredicate {
    pub ambient_dim: usize,
    pub even_sum: bool,
    pub zero_sums: Vec<Vec<usize>>,
}

impl MembershipPredicate {
    pub fn contains(&self, p: &[i64]) -> bool {
        debug_assert_eq!(p.len(), self.ambient_dim);
        if self.even_sum && p.iter().sum::<i64>() % 2 != 0 {
            return false;
        }
        self.zero_sums
            .iter()
            .all(|set| set.iter().map(|&i| p[i]).sum::<i64>() == 0)
    }

    /// True when every integer vector qualifies.
    pub fn is_trivial(&self) -> bool {
        !self.even_sum && self.zero_sums.is_empty()
    }
}

pub fn membership_predicate(spec: LatticeSpec) -> MembershipPredicate {
    let m = spec.ambient_dim();
    let all: Vec<usize> = (0..m).collect();
    let (even_sum, zero_sums) = match (spec.family, spec.rank) {
        (Family::Z | Family::Dstar, _) => (false, vec![]),
        (Family::D, _) | (Family::E, 8) => (true, vec![]),
        (Family::A, _) | (Family::E, 7) => (false, vec![all]),
        // p2+…+p7 = 0 and p1+p8 = 0
        (Family::E, 6) => (false, vec![(1..7).collect(), vec![0, 7]]),
        (Family::E, _) => unreachable!("LatticeSpec validated E rank"),
    };
    MembershipPredicate {
        ambient_dim: m,
        even_sum,
        zero_sums,
    }
}

/// Membership decided directly from the inverse generator: `α = G⁻¹p` must be
/// integral on the lattice coordinates and zero on the embedding coordinates.
pub fn is_member_by_inverse(spec: LatticeSpec, inverse: &RationalMatrix, p: &[i64]) -> bool {
    let p: Vec<Rational> = p.iter().map(|&v| Rational::from_integer(v.into())).collect();
    let alpha = inverse.mul_vec(&p);
    let k = spec.rank as usize;
    alpha[..k].iter().all(Rational::is_integer) && alpha[k..].iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn spec(f: Family, k: u32) -> LatticeSpec {
        LatticeSpec::new(f, k).unwrap()
    }

    fn int_matrix(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    fn all_specs_upto8() -> Vec<LatticeSpec> {
        let mut out = vec![];
        for f in Family::ALL {
            for k in 1..=8 {
                if let Ok(s) = LatticeSpec::new(f, k) {
                    if s.ambient_dim() <= 8 {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn spec_validation() {
        assert!(LatticeSpec::new(Family::E, 5).is_err());
        assert!(LatticeSpec::new(Family::E, 9).is_err());
        assert!(LatticeSpec::new(Family::D, 1).is_err());
        assert!(LatticeSpec::new(Family::Dstar, 1).is_err());
        assert!(LatticeSpec::new(Family::A, 0).is_err());
        assert!(LatticeSpec::new(Family::A, 1).is_ok());
        assert_eq!(
            LatticeSpec::new(Family::E, 5),
            Err(Error::InvalidSpec { family: Family::E, rank: 5 })
        );
    }

    #[test]
    fn family_parsing() {
        assert_eq!("dstar".parse::<Family>().unwrap(), Family::Dstar);
        assert_eq!("D*".parse::<Family>().unwrap(), Family::Dstar);
        assert_eq!("e".parse::<Family>().unwrap(), Family::E);
        assert!("B".parse::<Family>().is_err());
    }

    #[test]
    fn ambient_dims() {
        assert_eq!(spec(Family::A, 5).ambient_dim(), 6);
        assert_eq!(ambient_dim(spec(Family::D, 4)), 4);
        assert_eq!(spec(Family::E, 6).ambient_dim(), 8);
        assert_eq!(spec(Family::Z, 3).ambient_dim(), 3);
    }

    #[test]
    fn printed_generators() {
        assert_eq!(*generator_matrix(spec(Family::D, 2)).matrix(), int_matrix(&[&[1, 1], &[1, -1]]));
        assert_eq!(
            *generator_matrix(spec(Family::A, 2)).matrix(),
            int_matrix(&[&[1, 0], &[-1, 1], &[0, -1]])
        );
        assert_eq!(
            *generator_matrix(spec(Family::D, 4)).matrix(),
            int_matrix(&[&[1, 1, 0, 0], &[1, -1, 1, 0], &[0, 0, -1, 1], &[0, 0, 0, -1]])
        );
        let e8 = generator_matrix(spec(Family::E, 8));
        let first = e8.matrix().column(0);
        assert_eq!(first[0], Rational::from_integer(2.into()));
        assert!(first[1..].iter().all(Zero::is_zero));
        let half = Rational::new(1.into(), 2.into());
        assert!(e8.matrix().column(7).iter().all(|v| *v == half || *v == -half.clone()));
    }

    #[test]
    fn d5_follows_band_pattern() {
        assert_eq!(
            *generator_matrix(spec(Family::D, 5)).matrix(),
            int_matrix(&[
                &[1, 1, 0, 0, 0],
                &[1, -1, 1, 0, 0],
                &[0, 0, -1, 1, 0],
                &[0, 0, 0, -1, 1],
                &[0, 0, 0, 0, -1],
            ])
        );
    }

    #[test]
    fn generator_entry_and_column_invariants() {
        let allowed: Vec<Rational> = [-2, -1, 0, 1, 2, 4]
            .iter()
            .map(|&v| Rational::new(v.into(), 2.into()))
            .collect();
        for s in all_specs_upto8() {
            let g = generator_matrix(s);
            assert_eq!(g.matrix().rows(), s.ambient_dim());
            assert_eq!(g.matrix().cols(), s.rank() as usize);
            assert!(g.matrix().entries().all(|e| allowed.contains(e)), "{s}");
            for j in 0..g.matrix().cols() {
                let sum: Rational = g.matrix().column(j).into_iter().sum();
                match s.family() {
                    Family::A => assert!(sum.is_zero(), "{s} column {j}"),
                    Family::D => assert!(sum.is_integer() && sum.to_integer() % 2 == 0.into()),
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn printed_inverses() {
        let h = |v: i64| Rational::new(v.into(), 2.into());
        let d3 = invert_generator(spec(Family::D, 3)).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![h(1), h(1), h(1)],
            vec![h(1), h(-1), h(-1)],
            vec![h(0), h(0), h(-2)],
        ]);
        assert_eq!(d3, expected);

        let e7 = invert_generator(spec(Family::E, 7)).unwrap();
        assert!(e7.row(7).iter().all(One::is_one));
        assert_eq!(
            e7,
            int_matrix(&[
                &[0, 1, 1, 1, 1, 1, 1, 0],
                &[1, 1, 2, 2, 2, 2, 2, 0],
                &[2, 2, 2, 3, 3, 3, 3, 0],
                &[3, 3, 3, 3, 4, 4, 4, 0],
                &[2, 2, 2, 2, 2, 3, 3, 0],
                &[1, 1, 1, 1, 1, 1, 2, 0],
                &[2, 2, 2, 2, 2, 2, 2, 0],
                &[1, 1, 1, 1, 1, 1, 1, 1],
            ])
        );

        let e6 = invert_generator(spec(Family::E, 6)).unwrap();
        assert_eq!(
            e6,
            int_matrix(&[
                &[1, -1, 0, 0, 0, 0, 0, 0],
                &[2, -1, -1, 0, 0, 0, 0, 0],
                &[3, -1, -1, -1, 0, 0, 0, 0],
                &[2, -1, -1, -1, -1, 0, 0, 0],
                &[1, -1, -1, -1, -1, -1, 0, 0],
                &[2, 0, 0, 0, 0, 0, 0, 0],
                &[0, 1, 1, 1, 1, 1, 1, 0],
                &[1, 0, 0, 0, 0, 0, 0, 1],
            ])
        );

        let a7 = invert_generator(spec(Family::A, 7)).unwrap();
        let lower = from_int_rows(8, 8, |i, j| i64::from(j <= i));
        assert_eq!(a7, lower);

        // exactly one row of 1/2s in the E8 inverse
        let e8 = invert_generator(spec(Family::E, 8)).unwrap();
        let half_rows = (0..8)
            .filter(|&i| e8.row(i).iter().all(|v| v.abs() == h(1)))
            .count();
        assert_eq!(half_rows, 1);
        assert!((0..8)
            .filter(|&i| !e8.row(i).iter().all(|v| v.abs() == h(1)))
            .all(|i| e8.row(i).iter().all(Rational::is_integer)));

        let dstar = invert_generator(spec(Family::Dstar, 4)).unwrap();
        assert_eq!(
            dstar,
            int_matrix(&[&[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1], &[0, 0, 0, 2]])
        );
    }

    #[test]
    fn inverse_times_generator_is_identity() {
        for s in all_specs_upto8() {
            let g = embedded_generator(s);
            let inv = invert_generator(s).unwrap();
            assert_eq!(inv.mul(&g), Matrix::identity(s.ambient_dim()), "{s}");
            assert_eq!(g.mul(&inv), Matrix::identity(s.ambient_dim()), "{s}");
        }
    }

    #[test]
    fn membership_examples() {
        let d3 = membership_predicate(spec(Family::D, 3));
        assert!(d3.contains(&[1, 1, 0]));
        assert!(!d3.contains(&[1, 0, 0]));
        let a2 = membership_predicate(spec(Family::A, 2));
        assert!(a2.contains(&[1, 0, -1]));
        assert!(!a2.contains(&[1, 1, -1]));
        let e6s = spec(Family::E, 6);
        let p = [2, 1, -1, 0, 0, 0, 0, -2];
        assert!(membership_predicate(e6s).contains(&p));
        let inv = invert_generator(e6s).unwrap();
        let alpha = inv.mul_vec(
            &p.iter().map(|&v| Rational::from_integer(v.into())).collect::<Vec<_>>(),
        );
        assert!(alpha.iter().all(Rational::is_integer));
        assert!(alpha[6].is_zero() && alpha[7].is_zero());
        assert!(membership_predicate(spec(Family::Dstar, 3)).is_trivial());
    }

    /// The hand-written predicates agree with the inverse-matrix criterion
    /// on every integer point of the cube [-1, 1]^m (and [-2, 2]^m for m ≤ 5).
    #[test]
    fn predicate_matches_inverse_exhaustively() {
        for s in all_specs_upto8() {
            let m = s.ambient_dim();
            let n: i64 = if m <= 5 { 2 } else { 1 };
            let pred = membership_predicate(s);
            let inv = invert_generator(s).unwrap();
            let side = (2 * n + 1) as usize;
            let mut p = vec![0_i64; m];
            for code in 0..side.pow(m as u32) {
                let mut c = code;
                for x in p.iter_mut() {
                    *x = (c % side) as i64 - n;
                    c /= side;
                }
                assert_eq!(pred.contains(&p), is_member_by_inverse(s, &inv, &p), "{s} {p:?}");
            }
        }
    }

    fn spec_strategy() -> impl Strategy<Value = LatticeSpec> {
        prop::sample::select(all_specs_upto8())
    }

    proptest! {
        #[test]
        fn generated_points_are_members(
            s in spec_strategy(),
            raw in prop::collection::vec(-6_i64..=6, 8),
        ) {
            let g = generator_matrix(s);
            let mut alpha: Vec<i64> = raw[..s.rank() as usize].to_vec();
            if let Some(h) = s.half_integer_column() {
                alpha[h] *= 2;
            }
            let p = g.point(&alpha);
            prop_assert!(p.iter().all(Rational::is_integer));
            let p: Vec<i64> = p.iter().map(|v| i64::try_from(v.to_integer()).unwrap()).collect();
            let pred = membership_predicate(s);
            prop_assert!(pred.contains(&p));
            let neg: Vec<i64> = p.iter().map(|v| -v).collect();
            prop_assert!(pred.contains(&neg));
        }

        #[test]
        fn predicate_is_negation_invariant(
            s in spec_strategy(),
            raw in prop::collection::vec(-4_i64..=4, 9),
        ) {
            let pred = membership_predicate(s);
            let p = &raw[..s.ambient_dim()];
            let neg: Vec<i64> = p.iter().map(|v| -v).collect();
            prop_assert_eq!(pred.contains(p), pred.contains(&neg));
        }
    }
}
