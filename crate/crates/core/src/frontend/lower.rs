//! Lowering of parsed expressions to hypergeometric-type terms.
//!
//! Subexpressions lower to flat lists of `(class, monomial)` terms. Support
//! checks are deferred until the whole expression has been distributed, so
//! `(n/2)!*mfoldInd(n,2,0)` is accepted even though `(n/2)!` alone is not.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ast::{Function, SourceExpr};
use super::parser::parse_expr_in;
use crate::error::{Error, LowerError, Result};
use crate::hyperterm::{AtomKey, Component, HtsExpr, HypCoefficient, HypMonomial, IndicatorClass};
use crate::product::{indicator_product, monomial_product};
use crate::{QAffine, QPoly, QRatFun, Rational};

type Terms = Vec<(IndicatorClass, HypMonomial)>;

/// Largest integer exponent expanded by repeated multiplication.
const MAX_EXPONENT: u64 = 4096;

fn unsupported(msg: impl Into<String>) -> Error {
    LowerError::Unsupported(msg.into()).into()
}

/// Collects terms with equal class and atoms.
fn merge(terms: Terms) -> Terms {
    let mut groups: BTreeMap<((u64, u64), AtomKey), (IndicatorClass, QRatFun)> = BTreeMap::new();
    for (class, m) in terms {
        let r = m.ratfactor().scale(m.constant_factor());
        let slot = groups.entry((class.key(), m.key())).or_insert_with(|| (class, QRatFun::zero()));
        slot.1 = &slot.1 + &r;
    }
    groups
        .into_iter()
        .filter_map(|((_, key), (class, r))| HypMonomial::from_key(key, BigRational::one(), r).map(|m| (class, m)))
        .collect()
}

fn product(a: &Terms, b: &Terms) -> Result<Terms> {
    let mut out = Vec::new();
    for (c1, m1) in a {
        for (c2, m2) in b {
            let Some(class) = indicator_product(*c1, *c2) else { continue };
            if let Some(m) = monomial_product(m1, m2)? {
                out.push((class, m));
            }
        }
    }
    Ok(merge(out))
}

/// The value of a term list that is a rational constant.
fn as_constant(t: &Terms) -> Option<Rational> {
    match t.as_slice() {
        [] => Some(BigRational::zero()),
        [(class, m)] if *class == IndicatorClass::ONE && !m.has_atoms() && m.ratfactor().is_one() => {
            Some(m.constant_factor().clone())
        }
        _ => None,
    }
}

/// The affine map represented by a term list, if it is one.
fn as_affine(t: &Terms) -> Option<QAffine> {
    let mut acc = QPoly::zero();
    for (class, m) in t {
        if *class != IndicatorClass::ONE || m.has_atoms() || !m.ratfactor().is_polynomial() {
            return None;
        }
        acc = &acc + &m.ratfactor().num().scale(m.constant_factor());
    }
    match acc.degree() {
        None => Some(QAffine::constant(BigRational::zero())),
        Some(d) if d <= 1 => Some(QAffine::new(acc.coeff(1), acc.coeff(0))),
        _ => None,
    }
}

fn single_monomial(t: &Terms) -> Result<HypMonomial> {
    match t.as_slice() {
        [] => Err(unsupported("division by zero")),
        [(class, m)] if *class == IndicatorClass::ONE => Ok(m.clone()),
        _ => Err(LowerError::NonMonomialDivisor.into()),
    }
}

fn scaled(t: Terms, c: &Rational) -> Terms {
    if c.is_zero() {
        return Vec::new();
    }
    t.into_iter().map(|(class, m)| (class, m.scaled(c))).collect()
}

fn monomial_term(m: HypMonomial) -> Result<Terms> {
    Ok(m.canonicalize()?.map(|m| vec![(IndicatorClass::ONE, m)]).unwrap_or_default())
}

fn integer_pow(base: &Terms, k: &BigInt) -> Result<Terms> {
    let e = k.abs().to_u64().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| unsupported(format!("exponent {k} too large")))?;
    let b = if k.is_negative() {
        vec![(IndicatorClass::ONE, single_monomial(base)?.inverse()?)]
    } else {
        base.clone()
    };
    let mut acc = vec![(IndicatorClass::ONE, HypMonomial::one())];
    for _ in 0..e {
        acc = product(&acc, &b)?;
    }
    Ok(acc)
}

struct Lowerer;

impl Lowerer {
    fn affine(&self, e: &SourceExpr, what: &'static str) -> Result<QAffine> {
        as_affine(&self.lower(e)?).ok_or_else(|| LowerError::NonAffineArgument(what).into())
    }

    fn lower(&self, e: &SourceExpr) -> Result<Terms> {
        match e {
            SourceExpr::Num(c) => Ok(if c.is_zero() {
                Vec::new()
            } else {
                vec![(IndicatorClass::ONE, HypMonomial::scalar(c.clone()))]
            }),
            SourceExpr::Var => monomial_term(HypMonomial::poly(QPoly::var()).expect("nonzero")),
            SourceExpr::Neg(a) => Ok(scaled(self.lower(a)?, &-BigRational::one())),
            SourceExpr::Add(a, b) => {
                let mut t = self.lower(a)?;
                t.extend(self.lower(b)?);
                Ok(merge(t))
            }
            SourceExpr::Sub(a, b) => {
                let mut t = self.lower(a)?;
                t.extend(scaled(self.lower(b)?, &-BigRational::one()));
                Ok(merge(t))
            }
            SourceExpr::Mul(a, b) => product(&self.lower(a)?, &self.lower(b)?),
            SourceExpr::Div(a, b) => {
                let d = single_monomial(&self.lower(b)?)?;
                product(&self.lower(a)?, &vec![(IndicatorClass::ONE, d.inverse()?)])
            }
            SourceExpr::Pow(b, x) => self.power(b, x),
            SourceExpr::Factorial(a) => monomial_term(HypMonomial::factorial(self.affine(a, "factorial")?, 1)),
            SourceExpr::Call(f, args) => self.call(*f, args),
            SourceExpr::Sequence(name, _) => Err(unsupported(format!("sequence symbol '{name}' in an expression"))),
        }
    }

    fn power(&self, b: &SourceExpr, x: &SourceExpr) -> Result<Terms> {
        let base = self.lower(b)?;
        let exponent = self.lower(x)?;
        if let Some(k) = as_constant(&exponent) {
            if !k.is_integer() {
                return Err(unsupported(format!("non-integer exponent {k}")));
            }
            if k.is_zero() {
                // x^0 = 1, including 0^0
                return Ok(vec![(IndicatorClass::ONE, HypMonomial::one())]);
            }
            if base.is_empty() {
                if k.is_negative() {
                    return Err(unsupported("division by zero"));
                }
                return Ok(Vec::new());
            }
            return integer_pow(&base, &k.to_integer());
        }
        let Some(c) = as_constant(&base) else {
            return Err(unsupported("variable exponent on a non-constant base"));
        };
        if c.is_zero() {
            return Err(unsupported("zero raised to a variable exponent"));
        }
        let a = as_affine(&exponent).ok_or(LowerError::NonAffineArgument("power exponent"))?;
        monomial_term(HypMonomial::power(c, a))
    }

    fn call(&self, f: Function, args: &[SourceExpr]) -> Result<Terms> {
        match f {
            Function::Factorial => monomial_term(HypMonomial::factorial(self.affine(&args[0], "factorial")?, 1)),
            Function::Pochhammer => {
                let x = as_constant(&self.lower(&args[0])?)
                    .ok_or_else(|| unsupported("pochhammer parameter must be a constant"))?;
                let k = self.affine(&args[1], "pochhammer")?;
                monomial_term(HypMonomial::pochhammer(x, k, 1))
            }
            Function::Binomial => {
                let a = self.affine(&args[0], "binomial")?;
                let b = self.affine(&args[1], "binomial")?;
                let diff = a.add(&b.scale(&-BigRational::one()));
                let m = HypMonomial::factorial(a, 1)
                    .raw_mul(&HypMonomial::factorial(b, -1))
                    .raw_mul(&HypMonomial::factorial(diff, -1));
                monomial_term(m)
            }
            Function::MfoldInd => self.indicator(args),
        }
    }

    fn indicator(&self, args: &[SourceExpr]) -> Result<Terms> {
        let literal = |e: &SourceExpr| {
            e.integer_literal()
                .and_then(|x| x.to_u64())
                .ok_or_else(|| unsupported("mfoldInd modulus and residue must be nonnegative integer literals"))
        };
        let m = literal(&args[1])?;
        let j = literal(&args[2])?;
        let class = IndicatorClass::new(j, m)?;
        if class.is_zero() {
            return Ok(Vec::new());
        }
        let x = self.affine(&args[0], "mfoldInd")?;
        let one = vec![(IndicatorClass::ONE, HypMonomial::one())];
        if x.is_constant() {
            let v = x.intercept.to_integer();
            if !x.intercept.is_integer() || v.is_negative() {
                return Err(unsupported(format!("mfoldInd of {}", x.intercept)));
            }
            let hit = (v % BigInt::from(m)) == BigInt::from(j);
            return Ok(if hit { one } else { Vec::new() });
        }
        if !x.slope.is_one() || !x.intercept.is_integer() {
            return Err(unsupported("mfoldInd argument must be the index plus an integer"));
        }
        // χ[j mod m](n + b) = χ[(j − b) mod m](n)
        let b = x.intercept.to_integer();
        let r = (BigInt::from(j) - b).mod_floor(&BigInt::from(m)).to_u64().expect("residue below modulus");
        Ok(vec![(IndicatorClass::new(r, m)?, HypMonomial::one())])
    }
}

fn support_error(e: Error) -> Error {
    match e {
        Error::Domain(msg) => LowerError::SupportIntegrality(msg).into(),
        Error::Pole(msg) => LowerError::Pole(msg).into(),
        other => other,
    }
}

/// Lowers a parsed expression to a normalized hypergeometric-type term.
pub fn lower_expr(e: &SourceExpr) -> Result<HtsExpr> {
    let terms = Lowerer.lower(e).map_err(support_error)?;
    let mut by_class: BTreeMap<(u64, u64), (IndicatorClass, Vec<HypMonomial>)> = BTreeMap::new();
    for (class, m) in terms {
        m.validate_on(class).map_err(support_error)?;
        by_class.entry(class.key()).or_insert_with(|| (class, Vec::new())).1.push(m);
    }
    let components = by_class
        .into_values()
        .map(|(class, ms)| Component::new(HypCoefficient::new(ms), class))
        .collect::<Result<Vec<_>>>()
        .map_err(support_error)?;
    HtsExpr::new(components).normalize().map_err(support_error)
}

/// Parses and lowers in one step.
pub fn parse_hts(text: &str, var: &str) -> Result<HtsExpr> {
    lower_expr(&parse_expr_in(text, var)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{q, qq};

    fn lower(s: &str) -> Result<HtsExpr> {
        parse_hts(s, "n")
    }

    #[test]
    fn golden_lowerings() {
        let s = lower("1/2 + (-1)^(n/2)*mfoldInd(n,2,0)/2").unwrap();
        assert_eq!(s.components().len(), 2);
        let expected = [q(1), qq(1, 2), q(0), qq(1, 2)];
        for n in 0..24u64 {
            assert_eq!(s.eval(n).unwrap(), expected[(n % 4) as usize]);
        }

        let s = lower("4/9+31/12*n-3*n^2+67/36*n^3-1/4*n*mfoldInd(n,2,0)-4/9*mfoldInd(n,3,0)-8/9*mfoldInd(n,3,1)").unwrap();
        assert_eq!(s.components().len(), 4);
        assert_eq!(s.eval(1).unwrap(), q(1));
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(lower("factorial(n/2)"), Err(Error::Lower(LowerError::SupportIntegrality(_)))));
        assert!(lower("factorial(n/2)*mfoldInd(n,2,0)").is_ok());
        assert!(matches!(lower("(n^2)!"), Err(Error::Lower(LowerError::NonAffineArgument(_)))));
        assert!(matches!(lower("2^(n^2)"), Err(Error::Lower(LowerError::NonAffineArgument(_)))));
        assert!(matches!(lower("1/(n!+1)"), Err(Error::Lower(LowerError::NonMonomialDivisor))));
        assert!(matches!(lower("1/mfoldInd(n,2,0)"), Err(Error::Lower(LowerError::NonMonomialDivisor))));
        assert!(matches!(lower("1/n"), Err(Error::Lower(LowerError::Pole(_)))));
        assert!(matches!(lower("n^n"), Err(Error::Lower(LowerError::Unsupported(_)))));
        assert!(matches!(lower("mfoldInd(n,2,5)"), Err(Error::InvalidClass { .. })));
        assert!(matches!(lower("mfoldInd(n,1+1,0)"), Err(Error::Lower(LowerError::Unsupported(_)))));
    }

    #[test]
    fn sugar_and_constants() {
        let b = lower("binomial(n+2,2)").unwrap();
        for n in 0..10u64 {
            let v = (n + 2) * (n + 1) / 2;
            assert_eq!(b.eval(n).unwrap(), q(v as i64));
        }
        assert_eq!(lower("mfoldInd(7,3,1)").unwrap().eval(0).unwrap(), q(1));
        assert!(lower("mfoldInd(8,3,1)").unwrap().is_empty());
        assert!(lower("n - n").unwrap().is_empty());
        let shifted = lower("mfoldInd(n+1,3,1)").unwrap();
        assert_eq!(shifted, lower("mfoldInd(n,3,0)").unwrap());
        assert_eq!(lower("(n+1)/n!").unwrap().eval(3).unwrap(), qq(4, 6));
        assert_eq!(lower("2^(-n)").unwrap().eval(3).unwrap(), qq(1, 8));
        assert_eq!(lower("(n!)^-2").unwrap().eval(3).unwrap(), qq(1, 36));
    }
}
