//! Shared helpers for the integration tests: seeded random expressions and
//! small constructors.
#![allow(dead_code)]

pub mod sessions;
pub mod suites;

use hypertype::arith::rational::{q, qq};
use hypertype::{Component, HtsExpr, HypCoefficient, HypMonomial, IndicatorClass, QAffine, QPoly, QRatFun, Rational};
use hypertype::{FactorialAtom, PochhammerAtom, PowerAtom};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn class(j: u64, m: u64) -> IndicatorClass {
    IndicatorClass::new(j, m).unwrap()
}

pub fn qp(cs: &[i64]) -> QPoly {
    QPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
}

/// Affine argument `n ↦ (k/m)·n + b` whose value at the class start `j` is `start`,
/// so it runs through ℕ on the class.
fn argument_on(k: i64, start: i64, j: u64, m: u64) -> QAffine {
    let slope = qq(k, m as i64);
    let intercept = q(start) - &slope * q(j as i64);
    QAffine::new(slope, intercept)
}

fn small_rational(r: &mut impl Rng) -> Rational {
    let num = loop {
        let x = r.gen_range(-6i64..=6);
        if x != 0 {
            break x;
        }
    };
    qq(num, r.gen_range(1i64..=3))
}

/// Random monomial valid on `(j, m)`: optional power, factorial and
/// Pochhammer atoms plus a small rational factor without poles on ℕ.
pub fn random_monomial(r: &mut impl Rng, j: u64, m: u64) -> HypMonomial {
    loop {
        let mut powers = Vec::new();
        let mut factorials = Vec::new();
        let mut pochhammers = Vec::new();
        if r.gen_bool(0.5) {
            let base = [q(2), q(3), q(-1), qq(1, 2), q(-2)].choose(r).unwrap().clone();
            powers.push(PowerAtom { base, exponent: argument_on(r.gen_range(1..=2), r.gen_range(0..=2), j, m) });
        }
        if r.gen_bool(0.4) {
            let exponent = if r.gen_bool(0.7) { 1 } else { -1 };
            factorials.push(FactorialAtom { argument: argument_on(r.gen_range(1..=2), r.gen_range(0..=2), j, m), exponent });
        }
        if r.gen_bool(0.25) {
            let parameter = [q(2), qq(1, 2), qq(3, 2), q(1)].choose(r).unwrap().clone();
            let exponent = if r.gen_bool(0.7) { 1 } else { -1 };
            pochhammers.push(PochhammerAtom { parameter, argument: argument_on(1, r.gen_range(0..=1), j, m), exponent });
        }
        let degree = r.gen_range(0..=2);
        let num = QPoly::from_coeffs((0..=degree).map(|_| q(r.gen_range(-4i64..=4))).collect());
        if num.is_zero() {
            continue;
        }
        let den = if r.gen_bool(0.2) { qp(&[r.gen_range(1i64..=4), 1]) } else { QPoly::one() };
        let ratfactor = QRatFun::new(num, den).unwrap();
        if let Some(mono) =
            HypMonomial::from_parts(small_rational(r), powers, factorials, pochhammers, ratfactor).unwrap()
        {
            return mono;
        }
    }
}

/// Random expression with at most `max_components` components, moduli at
/// most `max_modulus` and at most two monomials per component.
pub fn random_expr_with(r: &mut impl Rng, max_components: usize, max_modulus: u64) -> HtsExpr {
    let count = r.gen_range(1..=max_components);
    let mut components = Vec::new();
    for _ in 0..count {
        let m = r.gen_range(1..=max_modulus);
        let j = r.gen_range(0..m);
        let monomials = (0..r.gen_range(1..=2)).map(|_| random_monomial(r, j, m)).collect();
        components.push(Component::new(HypCoefficient::new(monomials), class(j, m)).unwrap());
    }
    HtsExpr::new(components)
}

pub fn random_expr(r: &mut impl Rng) -> HtsExpr {
    random_expr_with(r, 3, 5)
}

pub fn values(s: &HtsExpr, upto: u64) -> Vec<Rational> {
    (0..=upto).map(|n| s.eval(n).unwrap()).collect()
}
