//! Rational generating functions `Σ c(n) xⁿ = P(x) / ((1-x)^a (1+x)^b)` of
//! bulk and surface counts.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::closed_form::{a_bulk, bulk, Kind};
use crate::combinatorics::{binomial_signed, sign};
use crate::error::{Error, Result};
use crate::lattice::{Family, LatticeSpec};
use crate::{BigCount, BigInt, IntPoly};

/// `numerator / ((1-x)^pow_one_minus_x (1+x)^pow_one_plus_x)`, kept with no
/// `(1±x)` factor shared between numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalGF {
    numerator: IntPoly,
    pow_one_minus_x: u32,
    pow_one_plus_x: u32,
}

fn ints(values: &[i64]) -> IntPoly {
    IntPoly::new(values.iter().map(|&v| BigInt::from(v)).collect())
}

impl RationalGF {
    pub fn new(numerator: IntPoly, pow_one_minus_x: u32, pow_one_plus_x: u32) -> Self {
        let mut gf = RationalGF {
            numerator,
            pow_one_minus_x,
            pow_one_plus_x,
        };
        gf.cancel();
        gf
    }

    fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.pow_one_minus_x = 0;
            self.pow_one_plus_x = 0;
            return;
        }
        while self.pow_one_minus_x > 0 {
            let (q, r) = self.numerator.div_linear(&BigInt::one());
            if !r.is_zero() {
                break;
            }
            // x - 1 = -(1 - x)
            self.numerator = q.map(|c| -c);
            self.pow_one_minus_x -= 1;
        }
        while self.pow_one_plus_x > 0 {
            let (q, r) = self.numerator.div_linear(&-BigInt::one());
            if !r.is_zero() {
                break;
            }
            self.numerator = q;
            self.pow_one_plus_x -= 1;
        }
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numerator
    }

    pub fn pow_one_minus_x(&self) -> u32 {
        self.pow_one_minus_x
    }

    pub fn pow_one_plus_x(&self) -> u32 {
        self.pow_one_plus_x
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> IntPoly {
        &ints(&[1, -1]).pow(self.pow_one_minus_x) * &ints(&[1, 1]).pow(self.pow_one_plus_x)
    }

    /// First `count` series coefficients, signed.
    ///
    /// Uses the recurrence `c_n = p_n - Σ_{i≥1} q_i c_{n-i}` read off the
    /// denominator `q` (which has `q_0 = 1`).
    pub fn expand_signed(&self, count: usize) -> Vec<BigInt> {
        let den = self.denominator();
        let q = den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(count);
        for n in 0..count {
            let mut c = self.numerator.coeff(n);
            for (i, qi) in q.iter().enumerate().skip(1).take(n) {
                c -= qi * &out[n - i];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.numerator.to_string_in("x"))?;
        let mut factors = Vec::new();
        for (base, exp) in [("1-x", self.pow_one_minus_x), ("1+x", self.pow_one_plus_x)] {
            match exp {
                0 => {}
                1 => factors.push(format!("({base})")),
                _ => factors.push(format!("({base})^{exp}")),
            }
        }
        if !factors.is_empty() {
            write!(f, " / ({})", factors.join(" "))?;
        }
        Ok(())
    }
}

/// Serializable view: numerator coefficients as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfRecord {
    pub numerator: Vec<String>,
    pub pow_one_minus_x: u32,
    pub pow_one_plus_x: u32,
}

impl From<&RationalGF> for GfRecord {
    fn from(gf: &RationalGF) -> Self {
        GfRecord {
            numerator: gf.numerator.coeffs().iter().map(|c| c.to_string()).collect(),
            pow_one_minus_x: gf.pow_one_minus_x,
            pow_one_plus_x: gf.pow_one_plus_x,
        }
    }
}

/// First `count` coefficients of the series; fails if any is negative.
pub fn gf_expand(gf: &RationalGF, count: usize) -> Result<Vec<BigCount>> {
    gf.expand_signed(count)
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            c.to_biguint().ok_or_else(|| {
                Error::InvalidInput(format!("series coefficient {n} of {gf} is negative"))
            })
        })
        .collect()
}

/// Same numerator with one factor `(1-x)` removed from the denominator: the
/// series of first differences.
pub fn gf_surface(gf: &RationalGF) -> Result<RationalGF> {
    if gf.pow_one_minus_x == 0 {
        return Err(Error::InvalidInput(format!(
            "{gf} has no (1-x) factor to remove"
        )));
    }
    Ok(RationalGF::new(
        gf.numerator.clone(),
        gf.pow_one_minus_x - 1,
        gf.pow_one_plus_x,
    ))
}

/// Recovers the numerator for the given denominator from the leading terms
/// of a sequence, and checks every supplied term against it.
pub fn gf_from_sequence(
    values: &[BigInt],
    pow_one_minus_x: u32,
    pow_one_plus_x: u32,
) -> Result<RationalGF> {
    let len = (pow_one_minus_x + pow_one_plus_x) as usize;
    if values.len() < len {
        return Err(Error::InvalidInput(format!(
            "need at least {len} terms, got {}",
            values.len()
        )));
    }
    let series = IntPoly::new(values.to_vec());
    let raw = RationalGF {
        numerator: IntPoly::zero(),
        pow_one_minus_x,
        pow_one_plus_x,
    };
    let numerator = (&series * &raw.denominator()).truncate(len);
    let gf = RationalGF::new(numerator, pow_one_minus_x, pow_one_plus_x);
    let check = gf.expand_signed(values.len());
    if let Some(n) = (0..values.len()).find(|&n| check[n] != values[n]) {
        return Err(Error::InvalidInput(format!(
            "sequence term {n} does not fit the denominator (1-x)^{pow_one_minus_x} (1+x)^{pow_one_plus_x}"
        )));
    }
    Ok(gf)
}

/// `2β_i^g = Σ_{t=0}^{i} ((2i-2t+1)^k + 1) C(k+1, t) (-1)^t`.
pub fn beta_even(k: u32, i: u32) -> BigInt {
    let twice: BigInt = (0..=i)
        .map(|t| {
            let base = BigInt::from(2 * (i - t) + 1).pow(k) + 1;
            base * binomial_signed(u64::from(k) + 1, t.into()) * sign(t.into())
        })
        .sum();
    halve(twice, "β^g")
}

/// `2β_i^u = Σ_{t=0}^{i} ((2i-2t+1)^k + (-1)^{i-t}) C(k+1, t) (-1)^t
///        + Σ_{t=0}^{i-1} ((2i-2t-1)^k - (-1)^{i-t}) C(k+1, t) (-1)^t`.
pub fn beta_odd(k: u32, i: u32) -> BigInt {
    let c = |t: u32| binomial_signed(u64::from(k) + 1, t.into()) * sign(t.into());
    let first: BigInt = (0..=i)
        .map(|t| (BigInt::from(2 * (i - t) + 1).pow(k) + sign((i - t).into())) * c(t))
        .sum();
    let second: BigInt = (0..i)
        .map(|t| (BigInt::from(2 * (i - t) - 1).pow(k) - sign((i - t).into())) * c(t))
        .sum();
    halve(first + second, "β^u")
}

fn halve(twice: BigInt, what: &str) -> BigInt {
    assert!(twice.is_even(), "{what} sum is odd");
    twice / 2
}

/// Generating function of `D_k` bulk counts, `k ≥ 2`.
///
/// Even `k`: `Σ_{i=0}^{k} β_i^g xⁱ / (1-x)^{k+1}`. Odd `k`:
/// `Σ_{i=0}^{k+1} β_i^u xⁱ / ((1+x)(1-x)^{k+1})`, where `β_0^u = 1`; the top
/// coefficient `β_{k+1}^u` is needed because the numerator has degree `k+1`.
pub fn gf_d_bulk(k: u32) -> Result<RationalGF> {
    if k < 2 {
        return Err(Error::InvalidSpec {
            family: Family::D,
            rank: k,
        });
    }
    Ok(if k.is_multiple_of(2) {
        RationalGF::new(IntPoly::new((0..=k).map(|i| beta_even(k, i)).collect()), k + 1, 0)
    } else {
        RationalGF::new(IntPoly::new((0..=k + 1).map(|i| beta_odd(k, i)).collect()), k + 1, 1)
    })
}

/// `η_{k,j} = ½ Σ_{l=0}^{j} (-1)^{j+l} C(j, l) A_k^b(l)`, the inverse binomial
/// transform of the `A_k` bulk counts.
pub fn eta(k: u32, j: u32) -> Result<BigInt> {
    if k < 1 || j < 1 || j > k {
        return Err(Error::InvalidInput(format!(
            "eta needs 1 <= j <= k, got k={k}, j={j}"
        )));
    }
    let twice: BigInt = (0..=j)
        .map(|l| {
            sign(u64::from(j + l))
                * binomial_signed(j.into(), l.into())
                * BigInt::from(a_bulk(k, l.into()))
        })
        .sum();
    if twice.is_odd() {
        return Err(Error::Internal(format!("eta({k}, {j}): odd sum {twice}")));
    }
    Ok(twice / 2)
}

/// `η_{k,1} ..= η_{k,k}`.
pub fn eta_row(k: u32) -> Result<Vec<BigInt>> {
    (1..=k).map(|j| eta(k, j)).collect()
}

/// `γ_{k,l} = Σ_{m=0}^{l} C(k+1, l-m) (-1)^{l-m} A_k^b(m)`.
pub fn gamma(k: u32, l: u32) -> Result<BigInt> {
    if k < 1 || l > k {
        return Err(Error::InvalidInput(format!(
            "gamma needs k >= 1 and 0 <= l <= k, got k={k}, l={l}"
        )));
    }
    Ok((0..=l)
        .map(|m| {
            binomial_signed(u64::from(k) + 1, (l - m).into())
                * sign((l - m).into())
                * BigInt::from(a_bulk(k, m.into()))
        })
        .sum())
}

/// `γ_{k,0} ..= γ_{k,k}`.
pub fn gamma_row(k: u32) -> Result<Vec<BigInt>> {
    (0..=k).map(|l| gamma(k, l)).collect()
}

/// Generating function of `A_k` bulk counts: `Σ_l γ_{k,l} x^l / (1-x)^{k+1}`.
pub fn gf_a_bulk(k: u32) -> Result<RationalGF> {
    if k < 1 {
        return Err(Error::InvalidSpec {
            family: Family::A,
            rank: k,
        });
    }
    Ok(RationalGF::new(IntPoly::new(gamma_row(k)?), k + 1, 0))
}

/// Numerator of `1/(1-x) + 2 Σ_j η_{k,j} x^j / (1-x)^{j+1}` over the common
/// denominator `(1-x)^{k+1}`.
pub fn eta_partial_fraction_numerator(k: u32) -> Result<IntPoly> {
    let one_minus_x = ints(&[1, -1]);
    let mut total = one_minus_x.pow(k);
    for (j, e) in (1..=k).zip(eta_row(k)?) {
        let term = &IntPoly::monomial(e * 2, j as usize) * &one_minus_x.pow(k - j);
        total = &total + &term;
    }
    Ok(total)
}

/// Printed numerator of the `E_6` bulk generating function over `(1-x)^7`.
pub const E6_NUMERATOR: [i64; 7] = [1, 416, 5815, 12880, 5815, 416, 1];

/// `E_6` from its numerator, `E_7 = A_7`, `E_8 = D_8`.
pub fn gf_e_bulk(k: u32) -> Result<RationalGF> {
    match k {
        6 => Ok(RationalGF::new(ints(&E6_NUMERATOR), 7, 0)),
        7 => gf_a_bulk(7),
        8 => gf_d_bulk(8),
        _ => Err(Error::InvalidSpec {
            family: Family::E,
            rank: k,
        }),
    }
}

/// `Σ (2n+1)^k xⁿ`, the bulk generating function of `Z^k` and of the integer
/// points of `D*_k`.
pub fn gf_cube(k: u32) -> RationalGF {
    let values: Vec<BigInt> = (0..=2 * u64::from(k) + 2)
        .map(|n| BigInt::from(2 * n + 1).pow(k))
        .collect();
    gf_from_sequence(&values, k + 1, 0).expect("odd powers are polynomial in n")
}

/// Bulk generating function for any valid spec.
pub fn gf_bulk(spec: LatticeSpec) -> RationalGF {
    let k = spec.rank();
    let gf = match spec.family() {
        Family::A => gf_a_bulk(k),
        Family::D => gf_d_bulk(k),
        Family::E => gf_e_bulk(k),
        Family::Dstar | Family::Z => Ok(gf_cube(k)),
    };
    gf.expect("LatticeSpec validated rank")
}

/// Bulk or surface generating function.
pub fn gf_for(spec: LatticeSpec, kind: Kind) -> RationalGF {
    let b = gf_bulk(spec);
    match kind {
        Kind::Bulk => b,
        Kind::Surface => gf_surface(&b).expect("bulk denominators contain (1-x)"),
    }
}

/// Fits the bulk closed form of `spec` directly: a cross-check for the
/// formula-based generating functions.
pub fn gf_from_closed_form(spec: LatticeSpec) -> Result<RationalGF> {
    let k = spec.rank();
    let odd_d = spec.family() == Family::D && k % 2 == 1;
    let (a, b) = (k + 1, u32::from(odd_d));
    let values: Vec<BigInt> = (0..u64::from(2 * (a + b) + 4))
        .map(|n| BigInt::from(bulk(spec, n)))
        .collect();
    gf_from_sequence(&values, a, b)
}
