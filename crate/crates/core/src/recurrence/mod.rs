//! P-recursive operators for hypergeometric-type terms.
//!
//! Each monomial of a component is sectioned onto its residue class, giving
//! a first-order recurrence in the section index; these are summed with the
//! addition closure, dilated back to the original index, and the component
//! operators are summed again. Every operator produced here holds at every
//! `n ≥ 0`, which is what makes the zero test below a decision procedure.

mod closure;
mod operator;

pub use closure::rec_add_closure;
pub use operator::{
    first_order_from_ratio, leading_zero_bound, rec_dilate, rec_verify, rec_verify_range, rooted_content, RecOperator,
};

use num_traits::Zero;

use crate::arith::{nonneg_integer_roots, split_nonneg_root_part};
use crate::error::Result;
use crate::hyperterm::{section_ratio, Component, HtsExpr};

/// Roots beyond this are not checked when removing content.
const CONTENT_ROOT_LIMIT: u64 = 10_000;

/// Divides out content that vanishes at some `n ∈ ℕ` when the reduced
/// operator still annihilates `s` at those points. Away from the roots the
/// reduced relation holds because the original one does.
fn strip_checked_content(op: RecOperator, s: &HtsExpr) -> Result<RecOperator> {
    let g = op.content();
    if g.is_constant() {
        return Ok(op);
    }
    let (rooted, _) = split_nonneg_root_part(&g)?;
    let roots = nonneg_integer_roots(&rooted)?;
    if roots.last().is_some_and(|&r| r > CONTENT_ROOT_LIMIT) {
        return Ok(op);
    }
    let reduced = op.clone().strip_all_content();
    for &r in &roots {
        if !rec_verify_range(&reduced, s, r, r)? {
            return Ok(op);
        }
    }
    Ok(reduced)
}

/// Annihilator of a single interlaced component.
pub fn component_to_recurrence(c: &Component) -> Result<RecOperator> {
    let class = c.class();
    let mut acc: Option<RecOperator> = None;
    for m in &c.coefficient().monomials {
        let ratio = section_ratio(m, class)?;
        let op = first_order_from_ratio(&ratio.p, &ratio.q)?;
        acc = Some(match acc {
            None => op,
            Some(prev) => rec_add_closure(&prev, &op)?,
        });
    }
    match acc {
        Some(op) => strip_checked_content(rec_dilate(&op, class)?, &HtsExpr::from_component(c.clone())),
        None => Ok(RecOperator::difference()),
    }
}

/// A P-recursive operator annihilating `S` at every `n ≥ 0`.
///
/// The empty expression gets `s(n+1) − s(n)`.
pub fn hts_to_recurrence(s: &HtsExpr) -> Result<RecOperator> {
    let s = s.normalize()?;
    let mut acc: Option<RecOperator> = None;
    for c in s.components() {
        let op = component_to_recurrence(c)?;
        acc = Some(match acc {
            None => op,
            Some(prev) => rec_add_closure(&prev, &op)?,
        });
    }
    match acc {
        Some(op) => strip_checked_content(op, &s),
        None => Ok(RecOperator::difference()),
    }
}

/// Number of leading values checked before building an annihilator.
const PRECHECK: u64 = 8;

/// Decides whether `S` is the zero sequence.
///
/// With an annihilator of order `D` whose leading coefficient has no
/// nonnegative integer root beyond `K`, the values at `0..=K+D` determine
/// the whole sequence, so checking them exactly settles the question.
pub fn hts_is_zero(s: &HtsExpr) -> Result<bool> {
    let s = s.normalize()?;
    if s.is_empty() {
        return Ok(true);
    }
    for n in 0..PRECHECK {
        if !s.eval(n)?.is_zero() {
            return Ok(false);
        }
    }
    let op = hts_to_recurrence(&s)?;
    let bound = leading_zero_bound(&op) + op.order() as i64;
    for n in PRECHECK as i64..=bound {
        if !s.eval(n as u64)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decides whether two hypergeometric-type terms define the same sequence.
pub fn hts_equal(a: &HtsExpr, b: &HtsExpr) -> Result<bool> {
    hts_is_zero(&a.sub(b)?)
}
