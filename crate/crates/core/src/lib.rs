//! Exact computations around the Spin(16) hyperdeterminant on the even half of
//! the fermionic Fock space with eight modes.
//!
//! The crate is organised bottom-up:
//!
//! * [`polynomial`] and [`linear_form`]: sparse multivariate polynomials over
//!   arbitrary-precision integers or rationals, and the integer linear forms the
//!   hyperdeterminant factors into.
//! * [`roots`]: the E8 root system in x-coordinates and its image on the
//!   y-Cartan.
//! * [`invariants`]: the Weyl-invariant power sums and their orbit tables.
//! * [`hyperdet`]: the factored degree-240 invariant, its evaluation and its
//!   restrictions.
//! * [`geometry`]: the cube over GF(2), its planes and the Fano plane.
//! * [`cayley`]: the 2x2x2 hyperdeterminant.
//! * [`fock`]: creation/annihilation operators and the spin representation.
//! * [`verify`]: the aggregated self-checks behind `spinhdet verify-all`.
//!
//! Polynomial and tensor code is generic over the coefficient ring (see
//! [`scalar::Ring`]); the aliases below fix the concrete exact types used
//! throughout.

pub mod cayley;
pub mod error;
pub mod fixtures;
pub mod fock;
pub mod geometry;
pub mod hyperdet;
pub mod invariants;
pub mod linear_form;
pub mod matrix;
pub mod polynomial;
pub mod roots;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use linear_form::LinearForm;
pub use polynomial::{Monomial, Polynomial};
pub use scalar::Ring;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = num_rational::BigRational;
/// Polynomial with integer coefficients.
pub type IntPolynomial = Polynomial<Integer>;
/// Polynomial with rational coefficients.
pub type RatPolynomial = Polynomial<Rational>;
/// Dense matrix of rationals, row-major.
pub type RatMatrix = matrix::Matrix<Rational>;
/// Numbers of the form `a + b*sqrt(2)` with rational `a`, `b`.
pub type Sqrt2Scalar = fock::Sqrt2<Rational>;
/// A 2x2x2 tensor with rational entries.
pub type RatTensor222 = cayley::Tensor222<Rational>;

/// Number of variables of the y- and x-Cartan coordinates.
pub const RANK: usize = 8;
