//! Exact computation with hypergeometric-type sequences: finite sums of
//! hypergeometric terms, each interlaced onto a residue class by an m-fold
//! indicator `χ_{n mod m = j}`.
//!
//! The crate provides evaluation, normalization, Hadamard products,
//! derivation of P-recursive recurrences, and a zero-equivalence decision
//! procedure. Everything is exact over ℚ.

pub mod arith;
pub mod error;
pub mod frontend;
pub mod hyperterm;
pub mod product;
pub mod recurrence;

use num_rational::BigRational;

pub use error::{Error, LowerError, ParseError, Result};
pub use hyperterm::{
    Component, FactorialAtom, HtsExpr, HypCoefficient, HypMonomial, IndicatorClass, PochhammerAtom, PowerAtom,
};
pub use product::hts_product;
pub use recurrence::{hts_equal, hts_is_zero, hts_to_recurrence, RecOperator};

/// Exact rational scalar used throughout.
pub type Rational = BigRational;
/// Polynomial in the index variable with rational coefficients.
pub type QPoly = arith::UniPoly<Rational>;
/// Rational function in the index variable over ℚ.
pub type QRatFun = arith::RatFun<Rational>;
/// Affine index map with rational slope and intercept.
pub type QAffine = arith::AffineMap<Rational>;
