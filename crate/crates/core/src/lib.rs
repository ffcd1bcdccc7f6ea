//! Exact point counts of the root lattices `A_k`, `D_k`, `D*_k`, `E_6`,
//! `E_7`, `E_8` (and the cubic lattice `Z^k`) inside the hypercube
//! `|p_i| ≤ n`.
//!
//! Closed forms live in [`closed_form`], rational generating functions in
//! [`genfunc`], and [`oracle`] provides the brute-force enumeration every
//! formula is checked against. [`verify`] bundles the cross-checks into
//! reports.

pub mod closed_form;
pub mod combinatorics;
pub mod error;
pub mod genfunc;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Family, LatticeSpec};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use scalar::{Field, Scalar};

/// Arbitrary-precision nonnegative count.
pub type BigCount = num_bigint::BigUint;
/// Arbitrary-precision signed integer.
pub type BigInt = num_bigint::BigInt;
/// Exact rational.
pub type Rational = num_rational::BigRational;
pub type RationalPoly = Polynomial<Rational>;
pub type IntPoly = Polynomial<BigInt>;
pub type RationalMatrix = Matrix<Rational>;
