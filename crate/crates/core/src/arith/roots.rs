//! Integer structure of rational polynomials: content, primitive parts and
//! exact nonnegative integer roots.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use super::ZPoly;
use crate::QPoly;

/// Splits `p = content · primitive` where `primitive` has coprime integer
/// coefficients and a positive leading coefficient. The zero polynomial gives
/// `(0, [])`.
pub fn content_and_primitive(p: &QPoly) -> (BigRational, Vec<BigInt>) {
    if p.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    let den = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if scaled.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let prim = scaled.iter().map(|c| c / &g).collect();
    (BigRational::new(g, den), prim)
}

/// The integer-coefficient primitive part of `p` as a rational polynomial.
pub fn integer_part(p: &QPoly) -> QPoly {
    let (_, prim) = content_and_primitive(p);
    QPoly::from_coeffs(prim.into_iter().map(BigRational::from_integer).collect())
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `q(a + w·y)` for integer polynomials.
fn compose_int(coeffs: &[BigInt], a: &BigInt, w: &BigInt) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = Vec::new();
    for c in coeffs.iter().rev() {
        // acc = acc * (a + w y) + c
        let mut next = vec![BigInt::zero(); acc.len() + 1];
        for (i, v) in acc.iter().enumerate() {
            next[i] += v * a;
            next[i + 1] += v * w;
        }
        next[0] += c;
        acc = next;
    }
    acc
}

fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut last = Sign::NoSign;
    let mut count = 0;
    for c in coeffs {
        let s = c.sign();
        if s == Sign::NoSign {
            continue;
        }
        if last != Sign::NoSign && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound on the number of roots of `coeffs` in the open interval `(a, b)`.
fn roots_in_interval_bound(coeffs: &[BigInt], a: &BigInt, b: &BigInt) -> usize {
    let scaled = compose_int(coeffs, a, &(b - a));
    let mut rev = scaled;
    rev.reverse();
    let moved = compose_int(&rev, &BigInt::one(), &BigInt::one());
    sign_variations(&moved)
}

fn isolate_integer_roots(coeffs: &[BigInt], a: BigInt, b: BigInt, out: &mut Vec<BigInt>) {
    if &b - &a <= BigInt::one() {
        return;
    }
    if roots_in_interval_bound(coeffs, &a, &b) == 0 {
        return;
    }
    let mid: BigInt = (&a + &b) / 2;
    isolate_integer_roots(coeffs, a, mid.clone(), out);
    if eval_int(coeffs, &mid).is_zero() {
        out.push(mid.clone());
    }
    isolate_integer_roots(coeffs, mid, b, out);
}

/// Largest root bound worth scanning point by point.
const SCAN_LIMIT: u64 = 2048;

/// `⌈x^(1/k)⌉` for `x ≥ 0`.
fn ceil_root(x: &BigInt, k: u32) -> BigInt {
    let r = x.nth_root(k);
    if Pow::pow(&r, k) < *x {
        r + 1
    } else {
        r
    }
}

/// Fujiwara-type bound on the absolute values of all roots.
fn root_bound(coeffs: &[BigInt]) -> BigInt {
    let d = coeffs.len() - 1;
    let lc = coeffs[d].abs();
    let mut m = BigInt::zero();
    for (i, c) in coeffs[..d].iter().rev().enumerate() {
        if c.is_zero() {
            continue;
        }
        let q = Integer::div_ceil(&c.abs(), &lc);
        let r = ceil_root(&q, (i + 1) as u32);
        if r > m {
            m = r;
        }
    }
    m * 2
}

/// All `n₀ ∈ ℕ` with `p(n₀) = 0`, ascending.
///
/// Exact: strips the factor `n^k`, passes to the squarefree part, bounds the
/// roots and then either scans the integers below the bound or isolates them
/// by Descartes-rule bisection.
pub fn nonneg_integer_roots(p: &QPoly) -> Result<Vec<u64>> {
    let Some(low) = p.low_order() else {
        return Err(Error::ZeroPolynomial("nonnegative roots of the zero polynomial"));
    };
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(0u64);
    }
    let (_, prim) = content_and_primitive(p);
    let z = ZPoly::from_coeffs(prim[low..].to_vec());
    if z.is_constant() {
        return Ok(roots);
    }
    let z = squarefree(&z);
    let coeffs = z.coeffs();
    let d = coeffs.len() - 1;
    let mut found = Vec::new();
    if d == 1 {
        let (q, r) = (-&coeffs[0]).div_rem(&coeffs[1]);
        if r.is_zero() && q.is_positive() {
            found.push(q);
        }
    } else {
        let bound = root_bound(coeffs);
        if bound <= BigInt::from(SCAN_LIMIT) {
            let b: u64 = (&bound).try_into().expect("small bound");
            found.extend((1..=b).map(BigInt::from).filter(|x| z.eval(x).is_zero()));
        } else {
            isolate_integer_roots(coeffs, BigInt::zero(), bound + 2, &mut found);
        }
    }
    for r in found {
        let r: u64 = r.try_into().map_err(|_| Error::Overflow("integer root exceeds u64"))?;
        roots.push(r);
    }
    Ok(roots)
}

fn squarefree(p: &ZPoly) -> ZPoly {
    let derivative = ZPoly::from_coeffs(
        p.coeffs().iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
    );
    let g = p.gcd(&derivative);
    if g.is_constant() {
        p.primitive()
    } else {
        p.exact_div(&g).primitive()
    }
}

/// Splits a nonzero `p` into `(rooted, rest)` with `p = rooted · rest`, where
/// `rooted = Π (n − r)^{mult}` over the nonnegative integer roots of `p` and
/// `rest` vanishes at no nonnegative integer.
pub fn split_nonneg_root_part(p: &QPoly) -> Result<(QPoly, QPoly)> {
    let (rooted, rest) = split_nonneg_root_part_z(&ZPoly::from_qpoly(p))?;
    let (c, _) = content_and_primitive(p);
    Ok((rooted.to_qpoly(), rest.to_qpoly().scale(&c)))
}

/// [`split_nonneg_root_part`] for a primitive integer polynomial; both parts
/// are primitive.
pub fn split_nonneg_root_part_z(p: &ZPoly) -> Result<(ZPoly, ZPoly)> {
    let roots = nonneg_integer_roots(&p.to_qpoly())?;
    let mut rooted = ZPoly::one();
    let mut rest = p.clone();
    for r in roots {
        let lin = ZPoly::from_coeffs(vec![-BigInt::from(r), BigInt::one()]);
        while let Some(q) = rest.try_div(&lin) {
            rest = q;
            rooted = &rooted * &lin;
        }
    }
    Ok((rooted, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    fn from_roots(rs: &[i64]) -> QPoly {
        rs.iter().fold(QPoly::one(), |acc, &r| &acc * &qp(&[-r, 1]))
    }

    #[test]
    fn factored_inputs() {
        // (n-7)(n+1)n
        let p = &from_roots(&[7, -1]) * &qp(&[0, 1]);
        assert_eq!(nonneg_integer_roots(&p).unwrap(), vec![0, 7]);
        assert!(nonneg_integer_roots(&qp(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(nonneg_integer_roots(&qp(&[-6, 1])).unwrap(), vec![6]);
        assert!(nonneg_integer_roots(&QPoly::zero()).is_err());
    }

    #[test]
    fn non_integer_and_large_roots() {
        // (2n - 3)(n - 1000003)(n^2 - 2)
        let p = &(&qp(&[-3, 2]) * &qp(&[-1000003, 1])) * &qp(&[-2, 0, 1]);
        assert_eq!(nonneg_integer_roots(&p).unwrap(), vec![1000003]);
        // repeated root
        let p = from_roots(&[4, 4, 4, 9]);
        assert_eq!(nonneg_integer_roots(&p).unwrap(), vec![4, 9]);
    }

    #[test]
    fn split_extracts_multiplicities() {
        let p = &from_roots(&[2, 2, -3]) * &qp(&[5, 0, 1]);
        let (rooted, rest) = split_nonneg_root_part(&p).unwrap();
        assert_eq!(rooted, from_roots(&[2, 2]));
        assert_eq!(&rooted * &rest, p);
    }

    #[test]
    fn content_is_signed_to_make_leading_positive() {
        let p = QPoly::from_coeffs(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into()),
        ]);
        let (c, prim) = content_and_primitive(&p);
        assert_eq!(c, BigRational::new((-1).into(), 4.into()));
        assert_eq!(prim, vec![BigInt::from(-2), BigInt::from(3)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn planted_roots_are_recovered(
                planted in prop::collection::vec(-12i64..30, 1..5),
                extra in prop::collection::vec(-9i64..9, 0..3),
                scale in 1i64..7,
            ) {
                let mut p = from_roots(&planted).scale(&BigRational::from_integer(scale.into()));
                let tail = qp(&extra);
                if !tail.is_zero() {
                    p = &p * &tail;
                }
                let got = nonneg_integer_roots(&p).unwrap();
                let brute: Vec<u64> = (0u64..200)
                    .filter(|&n| p.eval(&BigRational::from_integer(n.into())).is_zero())
                    .collect();
                prop_assert_eq!(got, brute);
            }
        }
    }
}
