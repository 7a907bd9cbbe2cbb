//! Exact coefficient arithmetic: univariate polynomials, rational functions
//! and affine index maps over a field, plus nonnegative-integer root
//! extraction for rational polynomials.
//!
//! The container types are generic over [`Scalar`], so they work equally
//! with `f64` (handy for quick numerical sketches) and with
//! [`BigRational`](num_rational::BigRational), which is what the rest of the
//! crate uses through the aliases in the crate root.

mod affine;
mod poly;
pub mod rational;
mod ratfun;
mod roots;
mod zpoly;

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::Num;

pub use affine::AffineMap;
pub use poly::UniPoly;
pub use ratfun::RatFun;
pub use zpoly::{common_factor, ZPoly};
pub use roots::{content_and_primitive, integer_part, nonneg_integer_roots, split_nonneg_root_part, split_nonneg_root_part_z};

/// Field-like scalar usable as a polynomial coefficient.
///
/// Exactness is only guaranteed for exact fields (rationals); floating-point
/// instantiations inherit the usual rounding behaviour.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> {}
