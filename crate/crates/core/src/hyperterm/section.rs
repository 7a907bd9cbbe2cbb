//! Sectioning a monomial onto a residue class: for `v(k) = M(m·k + j)` the
//! shift quotient `v(k+1)/v(k)` as a pair of polynomials in `k`.

use num_rational::BigRational;
use num_traits::One;

use super::{HypMonomial, IndicatorClass};
use crate::arith::rational::pow_i64;
use crate::arith::split_nonneg_root_part;
use crate::error::Result;
use crate::{QAffine, QPoly, Rational};

/// `v(k+1)·q(k) = v(k)·p(k)` for all `k ≥ 0`, together with `v(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRatio {
    pub p: QPoly,
    pub q: QPoly,
    pub initial: Rational,
}

fn lin(a: i64, b: i64) -> QPoly {
    QPoly::linear(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
}

fn mul_pow(acc: &mut QPoly, f: &QPoly, e: u64) {
    for _ in 0..e {
        *acc = &*acc * f;
    }
}

/// Cancels the common factors of `p` and `q` that vanish at no `k ∈ ℕ`.
///
/// Factors with a root in ℕ are kept: cancelling them could break the
/// relation `v(k+1)q(k) = v(k)p(k)` at that root.
pub(crate) fn cancel_safe_common(p: &QPoly, q: &QPoly) -> Result<(QPoly, QPoly)> {
    let g = match p.gcd(q) {
        Ok(g) => g,
        Err(_) => return Ok((p.clone(), q.clone())),
    };
    if g.is_constant() {
        return Ok((p.clone(), q.clone()));
    }
    let (_, safe) = split_nonneg_root_part(&g)?;
    if safe.is_constant() {
        return Ok((p.clone(), q.clone()));
    }
    Ok((p.exact_div(&safe), q.exact_div(&safe)))
}

/// Shift quotient of `k ↦ M(m·k + j)`, built atom by atom.
pub fn section_ratio(mono: &HypMonomial, class: IndicatorClass) -> Result<SectionRatio> {
    mono.validate_on(class)?;
    let m = class.modulus() as i64;
    let j = class.residue() as i64;
    let mut p = QPoly::constant(BigRational::one());
    let mut q = QPoly::constant(BigRational::one());

    for f in mono.factorials() {
        // (A(k+1)+B)! / (Ak+B)! = Π_{i=1}^{A} (Ak+B+i)
        let (a, b) = HypMonomial::integer_on(&f.argument, class)?;
        let mut block = QPoly::one();
        for i in 1..=a {
            block = &block * &lin(a, b + i);
        }
        if f.exponent > 0 {
            mul_pow(&mut p, &block, f.exponent as u64);
        } else {
            mul_pow(&mut q, &block, f.exponent.unsigned_abs());
        }
    }

    for pc in mono.pochhammers() {
        // (x)_{A(k+1)+B} / (x)_{Ak+B} = Π_{i=0}^{A-1} (x + Ak + B + i)
        let (a, b) = HypMonomial::integer_on(&pc.argument, class)?;
        let mut block = QPoly::one();
        for i in 0..a {
            let c = &pc.parameter + BigRational::from_integer((b + i).into());
            block = &block * &QPoly::linear(BigRational::from_integer(a.into()), c);
        }
        if pc.exponent > 0 {
            mul_pow(&mut p, &block, pc.exponent as u64);
        } else {
            mul_pow(&mut q, &block, pc.exponent.unsigned_abs());
        }
    }

    let mut scalar = BigRational::one();
    for pw in mono.powers() {
        let (a, _) = HypMonomial::integer_on(&pw.exponent, class)?;
        scalar *= pow_i64(&pw.base, a);
    }
    p = p.scale(&scalar);

    let r = mono.ratfactor();
    let mq = BigRational::from_integer(m.into());
    let here = QAffine::new(mq.clone(), BigRational::from_integer(j.into()));
    let next = QAffine::new(mq, BigRational::from_integer((m + j).into()));
    if !r.num().is_constant() {
        p = &p * &r.num().subst_affine(&next);
        q = &q * &r.num().subst_affine(&here);
    }
    if !r.den().is_constant() {
        p = &p * &r.den().subst_affine(&here);
        q = &q * &r.den().subst_affine(&next);
    }

    let (p, q) = cancel_safe_common(&p, &q)?;
    let initial = mono.eval(class.residue())?;
    debug_assert!(!q.is_zero());
    Ok(SectionRatio { p, q, initial })
}
