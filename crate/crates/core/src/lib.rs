//! Exact stringy invariants of Calabi-Yau hypersurfaces in toric varieties.
//!
//! Lattice geometry and polynomial invariants use machine integers and
//! arbitrary-precision integer coefficients. The ring and complex labs run
//! their linear algebra over any [`Field`]; two backends are provided.

pub mod error;
pub mod exact;
pub mod koszul;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod poset;
pub mod scalar;
pub mod semigroup;
pub mod stringy;

pub use error::{Error, Result};
pub use scalar::{Field, FieldKind, Fp, MERSENNE_31};

use num_bigint::BigInt;

/// Polynomial in `t` with integer coefficients.
pub type UnivariatePolynomial = poly::UniPoly<BigInt>;
/// Laurent polynomial in `u, v` with integer coefficients.
pub type BivariateLaurentPolynomial = poly::LaurentPoly<BigInt>;
/// Exact rational scalars.
pub type Rational = num_rational::BigRational;
/// Residues modulo the default prime `2^31 - 1`.
pub type PrimeField = Fp<MERSENNE_31>;
