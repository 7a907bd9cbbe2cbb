//! Randomized property suites shared by the property tests and the
//! acceptance report. Each returns the first violation as an error message.

use hypertype::arith::rational::q;
use hypertype::hyperterm::{hts_add, hts_shift, refine_component};
use hypertype::product::indicator_product;
use hypertype::recurrence::{rec_add_closure, rec_verify};
use hypertype::{hts_equal, hts_is_zero, hts_product, hts_to_recurrence, HtsExpr, IndicatorClass};

use super::{class, random_expr, random_expr_with, rng};

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub type Outcome = Result<(), String>;

/// CRT indicator products against pointwise products, moduli up to 8, over
/// four periods of the lcm.
pub fn crt_indicators() -> Outcome {
    for m1 in 1..=8u64 {
        for m2 in 1..=8u64 {
            for j1 in 0..m1 {
                for j2 in 0..m2 {
                    let (a, b) = (class(j1, m1), class(j2, m2));
                    let p = indicator_product(a, b);
                    let period = 4 * num_integer::lcm(m1, m2);
                    for n in 0..period {
                        let expected = a.contains(n) && b.contains(n);
                        ensure!(p.is_some_and(|c| c.contains(n)) == expected, "{a} * {b} wrong at n = {n}");
                    }
                }
            }
        }
    }
    Ok(())
}

/// Products evaluate to products of values on 50 random pairs, n = 0..60.
pub fn product_homomorphism() -> Outcome {
    let mut r = rng(4);
    for _ in 0..50 {
        let (a, b) = (random_expr(&mut r), random_expr(&mut r));
        let p = hts_product(&a, &b).map_err(|e| e.to_string())?;
        for n in 0..=60 {
            let (x, y, z) = (a.eval(n).unwrap(), b.eval(n).unwrap(), p.eval(n).unwrap());
            ensure!(z == x * y, "product of {a:?} and {b:?} differs at n = {n}");
        }
    }
    Ok(())
}

/// Derived operators annihilate 50 random expressions up to n = 200, are
/// primitive, and are reproduced identically on recomputation.
pub fn annihilation() -> Outcome {
    let mut r = rng(5);
    for i in 0..50 {
        let s = random_expr(&mut r);
        let op = hts_to_recurrence(&s).map_err(|e| e.to_string())?;
        ensure!(rec_verify(&op, &s, 200).unwrap(), "operator does not annihilate {s:?}");
        ensure!(op.is_primitive(), "operator for {s:?} has content {:?}", op.content());
        if i % 5 == 0 {
            ensure!(hts_to_recurrence(&s).unwrap() == op, "recomputation differs for {s:?}");
        }
    }
    Ok(())
}

/// Planted identities: each pair is equal as sequences.
fn identities() -> Vec<(HtsExpr, HtsExpr)> {
    let mut r = rng(8);
    let mut out = Vec::new();
    while out.len() < 20 {
        let s = random_expr_with(&mut r, 2, 4);
        match out.len() % 4 {
            0 => {
                let refined: Vec<_> = s
                    .components()
                    .iter()
                    .flat_map(|c| refine_component(c, c.class().modulus() * 2).unwrap())
                    .collect();
                out.push((s.clone(), HtsExpr::new(refined)));
            }
            1 => {
                // (S(n+1) − S(n)) + S(n) = S(n+1)
                let shifted = hts_shift(&s, 1).unwrap();
                let lhs = hts_add(&shifted.sub(&s).unwrap(), &s).unwrap();
                out.push((lhs, shifted));
            }
            2 => {
                let t = random_expr_with(&mut r, 2, 4);
                out.push((hts_product(&s, &t).unwrap(), hts_product(&t, &s).unwrap()));
            }
            _ => {
                let t = random_expr_with(&mut r, 2, 4);
                let one = HtsExpr::indicator(IndicatorClass::ONE);
                let lhs = hts_product(&s, &hts_add(&t, &one).unwrap()).unwrap();
                let rhs = hts_add(&hts_product(&s, &t).unwrap(), &s).unwrap();
                out.push((lhs, rhs));
            }
        }
    }
    out
}

/// The zero test accepts 20 planted identities and rejects 20 perturbed
/// ones, both cross-checked by evaluation up to n = 100.
pub fn zero_test() -> Outcome {
    for (a, b) in identities() {
        ensure!((0..=100).all(|n| a.eval(n).unwrap() == b.eval(n).unwrap()), "planted identity is false");
        ensure!(hts_is_zero(&a.sub(&b).unwrap()).unwrap(), "identity {a:?} = {b:?} not recognized");
    }
    for (i, (a, b)) in identities().into_iter().enumerate() {
        let k = q(1 + i as i64);
        let bump = match b.components().first() {
            Some(c) => HtsExpr::monomial(c.coefficient().monomials[0].scaled(&k), c.class()).unwrap(),
            None => HtsExpr::indicator(IndicatorClass::ONE).scale(&k).unwrap(),
        };
        let perturbed = hts_add(&b, &bump).unwrap();
        ensure!((0..=100).any(|n| a.eval(n).unwrap() != perturbed.eval(n).unwrap()), "perturbation is invisible");
        ensure!(!hts_is_zero(&a.sub(&perturbed).unwrap()).unwrap(), "non-identity accepted");
        ensure!(!hts_equal(&a, &perturbed).unwrap(), "non-identity accepted by hts_equal");
    }
    Ok(())
}

/// The addition closure never exceeds the sum of the input orders.
pub fn closure_order_bound() -> Outcome {
    let mut r = rng(6);
    for _ in 0..40 {
        let a = hts_to_recurrence(&random_expr_with(&mut r, 1, 5)).unwrap();
        let b = hts_to_recurrence(&random_expr_with(&mut r, 1, 5)).unwrap();
        let c = rec_add_closure(&a, &b).map_err(|e| e.to_string())?;
        ensure!(c.order() <= a.order() + b.order(), "order {} > {} + {}", c.order(), a.order(), b.order());
    }
    Ok(())
}
