//! Data model for hypergeometric-type terms: indicator classes, atoms,
//! monomials, coefficients, components and whole expressions, with exact
//! evaluation, normalization, shifting and sectioning.

mod expr;
mod indicator;
mod monomial;
mod section;

pub use expr::{
    hts_add, hts_eval, hts_normalize, hts_scale, hts_shift, hts_sub, refine_component, Component, HtsExpr,
    HypCoefficient,
};
pub use indicator::{mfold_indicator, IndicatorClass};
pub use monomial::{AtomKey, FactorialAtom, HypMonomial, PochhammerAtom, PowerAtom};
pub use section::{section_ratio, SectionRatio};

pub(crate) use section::cancel_safe_common;

/// Canonical form of a single monomial; `None` if it is identically zero.
pub fn monomial_canonicalize(m: &HypMonomial) -> crate::Result<Option<HypMonomial>> {
    m.canonicalize()
}
