//! Exact quasi-polynomial fits of bulk and surface counts.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use crate::{BigCount, BigInt, Rational, RationalPoly};

use super::count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Bulk,
    Surface,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Bulk => "bulk",
            Kind::Surface => "surface",
        })
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bulk" => Ok(Kind::Bulk),
            "surface" => Ok(Kind::Surface),
            _ => Err(Error::InvalidInput(format!("unknown count kind {s:?}"))),
        }
    }
}

/// Polynomial variable: the radius `n` or the edge length `L = 2n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variable {
    N,
    L,
}

impl Variable {
    pub fn symbol(self) -> &'static str {
        match self {
            Variable::N => "n",
            Variable::L => "L",
        }
    }
}

impl std::str::FromStr for Variable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" | "N" => Ok(Variable::N),
            "L" | "l" => Ok(Variable::L),
            _ => Err(Error::InvalidInput(format!("unknown variable {s:?}"))),
        }
    }
}

/// A count as one polynomial per residue of `n` modulo the period.
///
/// The first `leading.len()` values are listed explicitly; the components
/// apply from there on. Surface counts use this for `n = 0`, where the value
/// is 1 regardless of the polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub variable: Variable,
    /// Component `r` applies when `n ≡ r (mod components.len())`.
    pub components: Vec<RationalPoly>,
    pub leading: Vec<BigCount>,
}

impl QuasiPolynomial {
    pub fn period(&self) -> usize {
        self.components.len()
    }

    /// Value at radius `n` (the variable `L` is evaluated at `2n + 1`).
    pub fn eval(&self, n: u64) -> Rational {
        if let Some(v) = self.leading.get(n as usize) {
            return Rational::from_integer(v.clone().into());
        }
        let poly = &self.components[(n % self.period() as u64) as usize];
        let x = match self.variable {
            Variable::N => n,
            Variable::L => 2 * n + 1,
        };
        poly.eval(&Rational::from_integer(BigInt::from(x)))
    }

    /// Component for residue `r`.
    pub fn component(&self, residue: usize) -> &RationalPoly {
        &self.components[residue % self.period()]
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.variable.symbol();
        if self.period() == 1 {
            write!(f, "{}", self.components[0].to_string_in(var))?;
        } else {
            let labels = ["n even", "n odd"];
            for (i, c) in self.components.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write!(f, "{}: {}", labels[i], c.to_string_in(var))?;
            }
        }
        for (n, v) in self.leading.iter().enumerate() {
            write!(f, " (n = {n}: {v})")?;
        }
        Ok(())
    }
}

fn rational(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Interpolates the closed-form counts of `spec` exactly, one polynomial per
/// parity of `n`, and double-checks the fit on further points.
///
/// Bulk counts are fitted from `n = 0`; surface counts from `n = 1`, with the
/// value 1 at `n = 0` recorded separately.
pub fn fit_quasipolynomial(
    spec: LatticeSpec,
    kind: Kind,
    variable: Variable,
) -> Result<QuasiPolynomial> {
    fit_sequence(spec.rank(), kind, variable, |n| count(spec, kind, n)).map_err(|e| match e {
        Error::Internal(msg) => Error::Internal(format!("{kind} count of {spec}: {msg}")),
        other => other,
    })
}

/// Fits an arbitrary sequence that is a quasi-polynomial of period at most 2
/// and the given degree. `kind` only decides whether `n = 0` is fitted
/// (`Bulk`) or recorded separately (`Surface`).
pub fn fit_sequence(
    degree: u32,
    kind: Kind,
    variable: Variable,
    sequence: impl Fn(u64) -> BigCount,
) -> Result<QuasiPolynomial> {
    let degree = u64::from(degree);
    let start = match kind {
        Kind::Bulk => 0,
        Kind::Surface => 1,
    };
    let value = |n: u64| Rational::from_integer(sequence(n).into());

    let mut components = Vec::with_capacity(2);
    for residue in 0..2_u64 {
        let first = if start % 2 == residue { start } else { start + 1 };
        let sample: Vec<u64> = (0..=degree).map(|i| first + 2 * i).collect();
        let points: Vec<(Rational, Rational)> =
            sample.iter().map(|&n| (rational(n), value(n))).collect();
        let poly = RationalPoly::interpolate(&points);
        let last = *sample.last().unwrap();
        for i in 1..=degree + 2 {
            let n = last + 2 * i;
            if poly.eval(&rational(n)) != value(n) {
                return Err(Error::Internal(format!(
                    "not a polynomial of degree {degree} on n ≡ {residue} (mod 2); first mismatch at n = {n}"
                )));
            }
        }
        components.push(poly);
    }
    if components[0] == components[1] {
        components.truncate(1);
    }

    if variable == Variable::L {
        // n = (L - 1)/2
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let sub = RationalPoly::linear(-half.clone(), half);
        components = components.iter().map(|c| c.compose(&sub)).collect();
    }

    let leading = match kind {
        Kind::Bulk => Vec::new(),
        Kind::Surface => vec![sequence(0)],
    };
    Ok(QuasiPolynomial {
        variable,
        components,
        leading,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Family;

    fn spec(f: Family, k: u32) -> LatticeSpec {
        LatticeSpec::new(f, k).unwrap()
    }

    fn poly(coeffs: &[(i64, i64)]) -> RationalPoly {
        RationalPoly::new(coeffs.iter().map(|&(a, b)| Rational::new(a.into(), b.into())).collect())
    }

    #[test]
    fn a4_bulk_in_n_and_l() {
        let q = fit_quasipolynomial(spec(Family::A, 4), Kind::Bulk, Variable::N).unwrap();
        assert_eq!(q.period(), 1);
        // 1 + (5/12) n (n+1) (14 + 23 n + 23 n²)
        let n = RationalPoly::x();
        let inner = poly(&[(14, 1), (23, 1), (23, 1)]);
        let want = &RationalPoly::one()
            + &(&(&n * &(&n + &RationalPoly::one())) * &inner).scale(&Rational::new(5.into(), 12.into()));
        assert_eq!(q.components[0], want);

        let q = fit_quasipolynomial(spec(Family::A, 4), Kind::Bulk, Variable::L).unwrap();
        assert_eq!(q.components[0], poly(&[(9, 64), (0, 1), (25, 96), (0, 1), (115, 192)]));
    }

    #[test]
    fn d3_bulk_has_period_two() {
        let q = fit_quasipolynomial(spec(Family::D, 3), Kind::Bulk, Variable::N).unwrap();
        assert_eq!(q.period(), 2);
        assert_eq!(q.components[0], poly(&[(1, 1), (3, 1), (6, 1), (4, 1)]));
        assert_eq!(q.components[1], poly(&[(0, 1), (3, 1), (6, 1), (4, 1)]));
    }

    #[test]
    fn surface_fits_skip_origin() {
        let q = fit_quasipolynomial(spec(Family::A, 4), Kind::Surface, Variable::N).unwrap();
        // (5/3) n (7 + 23 n²), valid for n > 0
        assert_eq!(q.components, vec![poly(&[(0, 1), (35, 3), (0, 1), (115, 3)])]);
        assert_eq!(q.eval(0), Rational::one());
        assert_eq!(q.eval(2), Rational::from_integer(330.into()));
        let q = fit_quasipolynomial(spec(Family::D, 2), Kind::Surface, Variable::N).unwrap();
        assert_eq!(q.components, vec![poly(&[(0, 1), (4, 1)])]);
    }

    #[test]
    fn display() {
        let q = fit_quasipolynomial(spec(Family::A, 3), Kind::Bulk, Variable::N).unwrap();
        assert_eq!(q.to_string(), "1 + 14/3 n + 8 n² + 16/3 n³");
        let q = fit_quasipolynomial(spec(Family::D, 3), Kind::Bulk, Variable::N).unwrap();
        assert_eq!(q.to_string(), "n even: 1 + 3 n + 6 n² + 4 n³; n odd: 3 n + 6 n² + 4 n³");
        let q = fit_quasipolynomial(spec(Family::D, 2), Kind::Surface, Variable::N).unwrap();
        assert_eq!(q.to_string(), "4 n (n = 0: 1)");
    }

    #[test]
    fn fits_evaluate_back_to_integers() {
        for f in Family::ALL {
            for k in f.min_rank()..=8 {
                let Ok(s) = LatticeSpec::new(f, k) else { continue };
                for kind in [Kind::Bulk, Kind::Surface] {
                    for var in [Variable::N, Variable::L] {
                        let q = fit_quasipolynomial(s, kind, var).unwrap();
                        for n in 0..=3 * u64::from(k) {
                            let v = q.eval(n);
                            assert!(v.is_integer() && v >= Rational::from_integer(0.into()));
                            assert_eq!(v, Rational::from_integer(count(s, kind, n).into()), "{s} {kind} n={n}");
                        }
                    }
                }
            }
        }
    }
}
