//! Hadamard products of hypergeometric-type terms.
//!
//! Indicator products follow the Chinese remainder theorem: two classes
//! either meet in exactly one class modulo the lcm of their moduli, or are
//! disjoint. Monomials multiply structurally; since every atom argument is
//! affine, the product of two composed terms is again such a term on the
//! common class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::Result;
use crate::hyperterm::{Component, HtsExpr, HypCoefficient, HypMonomial, IndicatorClass};

/// The class of `χ[c1]·χ[c2]`, or `None` when the product is the zero sequence.
pub fn indicator_product(c1: IndicatorClass, c2: IndicatorClass) -> Option<IndicatorClass> {
    if c1.is_zero() || c2.is_zero() {
        return None;
    }
    let (m1, m2) = (c1.modulus(), c2.modulus());
    let (j1, j2) = (c1.residue(), c2.residue());
    let ext = BigInt::from(m1).extended_gcd(&BigInt::from(m2));
    let g = u64::try_from(&ext.gcd).expect("gcd of u64 moduli");
    if j1 % g != j2 % g {
        return None;
    }
    let mu = m1 / g * m2;
    // j0 = j1 + m1 · ((j2 - j1)/g · x mod m2/g), with m1·x + m2·y = g
    let m2g = BigInt::from(m2 / g);
    let diff = (BigInt::from(j2) - BigInt::from(j1)) / BigInt::from(g);
    let t = (diff * ext.x).mod_floor(&m2g);
    let j0 = (BigInt::from(j1) + BigInt::from(m1) * t).mod_floor(&BigInt::from(mu));
    let j0 = u64::try_from(j0).expect("residue below the lcm");
    Some(IndicatorClass::new(j0, mu).expect("CRT residue below modulus"))
}

/// Pointwise product of two monomials, canonicalized; `None` if it vanishes.
pub fn monomial_product(a: &HypMonomial, b: &HypMonomial) -> Result<Option<HypMonomial>> {
    a.raw_mul(b).canonicalize()
}

/// Hadamard product of two hypergeometric-type terms, normalized.
pub fn hts_product(s1: &HtsExpr, s2: &HtsExpr) -> Result<HtsExpr> {
    let mut by_class: BTreeMap<(u64, u64), (IndicatorClass, Vec<HypMonomial>)> = BTreeMap::new();
    for a in s1.components() {
        for b in s2.components() {
            let Some(class) = indicator_product(a.class(), b.class()) else { continue };
            let slot = by_class
                .entry((class.modulus(), class.residue()))
                .or_insert_with(|| (class, Vec::new()));
            for ma in &a.coefficient().monomials {
                for mb in &b.coefficient().monomials {
                    if let Some(m) = monomial_product(ma, mb)? {
                        slot.1.push(m);
                    }
                }
            }
        }
    }
    let components = by_class
        .into_values()
        .map(|(class, monomials)| Component::new(HypCoefficient::new(monomials), class))
        .collect::<Result<Vec<_>>>()?;
    HtsExpr::new(components).normalize()
}
