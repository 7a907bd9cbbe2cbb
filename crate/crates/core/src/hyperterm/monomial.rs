use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IndicatorClass;
use crate::arith::rational::{as_i64, as_integer, as_u64, factorial, pow_i64, rising};
use crate::arith::nonneg_integer_roots;
use crate::error::{Error, Result};
use crate::{QAffine, QPoly, QRatFun, Rational};

/// `base^{exponent(n)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PowerAtom {
    pub base: Rational,
    pub exponent: QAffine,
}

/// `(argument(n))!^{exponent}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorialAtom {
    pub argument: QAffine,
    pub exponent: i64,
}

/// `(parameter)_{argument(n)}^{exponent}` (rising factorial).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PochhammerAtom {
    pub parameter: Rational,
    pub argument: QAffine,
    pub exponent: i64,
}

/// The hypergeometric part of a monomial, used as the merge key.
pub type AtomKey = (Vec<PowerAtom>, Vec<FactorialAtom>, Vec<PochhammerAtom>);

/// One hypergeometric term `c · Π powers · Π factorials · Π pochhammers · R(n)`.
///
/// The affine atom arguments carry the argument map, so the stored object
/// is the composition `H(σ(n))` directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypMonomial {
    constant: Rational,
    powers: Vec<PowerAtom>,
    factorials: Vec<FactorialAtom>,
    pochhammers: Vec<PochhammerAtom>,
    ratfactor: QRatFun,
}

fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

impl HypMonomial {
    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    /// A constant monomial. Panics on zero; zero is the empty coefficient.
    pub fn scalar(c: Rational) -> Self {
        assert!(!c.is_zero(), "monomial constant must be nonzero");
        HypMonomial {
            constant: c,
            powers: Vec::new(),
            factorials: Vec::new(),
            pochhammers: Vec::new(),
            ratfactor: QRatFun::one(),
        }
    }

    /// `c · r(n)` for a rational function `r`, or `None` when it is zero.
    pub fn ratfun(r: QRatFun) -> Option<Self> {
        if r.is_zero() {
            return None;
        }
        let mut m = Self::one();
        m.ratfactor = r;
        Some(m.normalize_ratfactor())
    }

    pub fn poly(p: QPoly) -> Option<Self> {
        Self::ratfun(QRatFun::from_poly(p))
    }

    pub fn power(base: Rational, exponent: QAffine) -> Self {
        let mut m = Self::one();
        m.powers.push(PowerAtom { base, exponent });
        m
    }

    pub fn factorial(argument: QAffine, exponent: i64) -> Self {
        let mut m = Self::one();
        m.factorials.push(FactorialAtom { argument, exponent });
        m
    }

    pub fn pochhammer(parameter: Rational, argument: QAffine, exponent: i64) -> Self {
        let mut m = Self::one();
        m.pochhammers.push(PochhammerAtom { parameter, argument, exponent });
        m
    }

    /// Assembles a monomial from parts and canonicalizes it; `None` when it is zero.
    pub fn from_parts(
        constant: Rational,
        powers: Vec<PowerAtom>,
        factorials: Vec<FactorialAtom>,
        pochhammers: Vec<PochhammerAtom>,
        ratfactor: QRatFun,
    ) -> Result<Option<Self>> {
        if constant.is_zero() || ratfactor.is_zero() {
            return Ok(None);
        }
        HypMonomial { constant, powers, factorials, pochhammers, ratfactor }.canonicalize()
    }

    pub fn constant_factor(&self) -> &Rational {
        &self.constant
    }

    pub fn powers(&self) -> &[PowerAtom] {
        &self.powers
    }

    pub fn factorials(&self) -> &[FactorialAtom] {
        &self.factorials
    }

    pub fn pochhammers(&self) -> &[PochhammerAtom] {
        &self.pochhammers
    }

    pub fn ratfactor(&self) -> &QRatFun {
        &self.ratfactor
    }

    pub fn has_atoms(&self) -> bool {
        !(self.powers.is_empty() && self.factorials.is_empty() && self.pochhammers.is_empty())
    }

    pub fn key(&self) -> AtomKey {
        (self.powers.clone(), self.factorials.clone(), self.pochhammers.clone())
    }

    pub(crate) fn from_key(key: AtomKey, constant: Rational, ratfactor: QRatFun) -> Option<Self> {
        if constant.is_zero() || ratfactor.is_zero() {
            return None;
        }
        let (powers, factorials, pochhammers) = key;
        Some(HypMonomial { constant, powers, factorials, pochhammers, ratfactor }.normalize_ratfactor())
    }

    /// Multiplies by a nonzero rational.
    pub fn scaled(&self, c: &Rational) -> Self {
        assert!(!c.is_zero(), "scaling a monomial by zero");
        let mut m = self.clone();
        m.constant *= c;
        m
    }

    /// Raw product: constants multiplied, atom lists concatenated. Not canonical.
    pub fn raw_mul(&self, other: &HypMonomial) -> Self {
        let mut m = self.clone();
        m.constant *= &other.constant;
        m.powers.extend(other.powers.iter().cloned());
        m.factorials.extend(other.factorials.iter().cloned());
        m.pochhammers.extend(other.pochhammers.iter().cloned());
        m.ratfactor = &m.ratfactor * &other.ratfactor;
        m
    }

    /// Multiplicative inverse (all exponents negated).
    pub fn inverse(&self) -> Result<Self> {
        Ok(HypMonomial {
            constant: self.constant.recip(),
            powers: self
                .powers
                .iter()
                .map(|p| PowerAtom { base: p.base.clone(), exponent: p.exponent.scale(&-BigRational::one()) })
                .collect(),
            factorials: self
                .factorials
                .iter()
                .map(|f| FactorialAtom { argument: f.argument.clone(), exponent: -f.exponent })
                .collect(),
            pochhammers: self
                .pochhammers
                .iter()
                .map(|p| PochhammerAtom { parameter: p.parameter.clone(), argument: p.argument.clone(), exponent: -p.exponent })
                .collect(),
            ratfactor: self.ratfactor.inv()?,
        })
    }

    /// The monomial at `n + t`, not yet canonical.
    pub fn raw_shift(&self, t: i64) -> Self {
        let tq = BigRational::from_integer(t.into());
        HypMonomial {
            constant: self.constant.clone(),
            powers: self
                .powers
                .iter()
                .map(|p| PowerAtom { base: p.base.clone(), exponent: p.exponent.shifted(&tq) })
                .collect(),
            factorials: self
                .factorials
                .iter()
                .map(|f| FactorialAtom { argument: f.argument.shifted(&tq), exponent: f.exponent })
                .collect(),
            pochhammers: self
                .pochhammers
                .iter()
                .map(|p| PochhammerAtom { parameter: p.parameter.clone(), argument: p.argument.shifted(&tq), exponent: p.exponent })
                .collect(),
            ratfactor: self.ratfactor.shift(t),
        }
    }

    fn normalize_ratfactor(mut self) -> Self {
        let lc = self.ratfactor.num().leading_coeff().expect("nonzero ratfactor").clone();
        if !lc.is_one() {
            self.constant *= &lc;
            self.ratfactor = self.ratfactor.scale(&lc.recip());
        }
        self
    }

    /// Sorts and merges atoms, folds constant-argument atoms into the
    /// constant, drops trivial atoms and makes the rational factor monic.
    /// Returns `None` when the monomial is identically zero (a Pochhammer
    /// factor with constant argument that vanishes).
    pub fn canonicalize(&self) -> Result<Option<Self>> {
        let mut constant = self.constant.clone();

        let mut facts: BTreeMap<QAffine, i64> = BTreeMap::new();
        for f in &self.factorials {
            if f.argument.is_constant() {
                let c = as_u64(&f.argument.intercept)
                    .ok_or_else(|| domain(format!("factorial of {}", f.argument.intercept)))?;
                constant *= pow_i64(&BigRational::from_integer(factorial(c)), f.exponent);
            } else {
                *facts.entry(f.argument.clone()).or_insert(0) += f.exponent;
            }
        }
        let factorials: Vec<FactorialAtom> = facts
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(argument, exponent)| FactorialAtom { argument, exponent })
            .collect();

        let mut pochs: BTreeMap<(Rational, QAffine), i64> = BTreeMap::new();
        for p in &self.pochhammers {
            if p.argument.is_constant() {
                let k = as_u64(&p.argument.intercept)
                    .ok_or_else(|| domain(format!("pochhammer length {}", p.argument.intercept)))?;
                let v = rising(&p.parameter, k);
                if v.is_zero() {
                    if p.exponent > 0 {
                        return Ok(None);
                    }
                    return Err(Error::Pole(format!("pochhammer({}, {k}) in a denominator", p.parameter)));
                }
                constant *= pow_i64(&v, p.exponent);
            } else {
                *pochs.entry((p.parameter.clone(), p.argument.clone())).or_insert(0) += p.exponent;
            }
        }
        let pochhammers: Vec<PochhammerAtom> = pochs
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|((parameter, argument), exponent)| PochhammerAtom { parameter, argument, exponent })
            .collect();

        let mut by_base: BTreeMap<Rational, QAffine> = BTreeMap::new();
        for p in &self.powers {
            if p.base.is_zero() {
                return Err(domain("power with zero base"));
            }
            if p.base.is_one() {
                continue;
            }
            let e = by_base.entry(p.base.clone()).or_insert_with(|| QAffine::constant(BigRational::zero()));
            *e = e.add(&p.exponent);
        }
        let mut by_exponent: BTreeMap<QAffine, Rational> = BTreeMap::new();
        for (base, mut exponent) in by_base {
            if let Some(c) = as_i64(&exponent.intercept) {
                constant *= pow_i64(&base, c);
                exponent.intercept = BigRational::zero();
            } else if exponent.is_constant() {
                return Err(domain(format!("{base} raised to non-integer power {}", exponent.intercept)));
            }
            if exponent.is_constant() {
                continue;
            }
            let b = by_exponent.entry(exponent).or_insert_with(BigRational::one);
            *b *= base;
        }
        let mut powers: Vec<PowerAtom> = by_exponent
            .into_iter()
            .filter(|(_, b)| !b.is_one())
            .map(|(exponent, base)| PowerAtom { base, exponent })
            .collect();
        powers.sort();

        Ok(Self::from_key((powers, factorials, pochhammers), constant, self.ratfactor.clone()))
    }

    /// Exact value at `n`.
    pub fn eval(&self, n: u64) -> Result<Rational> {
        let nq = BigRational::from_integer(n.into());
        let mut acc = self.constant.clone();
        for p in &self.powers {
            let e = p.exponent.eval(&nq);
            let e = as_i64(&e).ok_or_else(|| domain(format!("exponent {e} of {} at n = {n}", p.base)))?;
            acc *= pow_i64(&p.base, e);
        }
        for f in &self.factorials {
            let a = f.argument.eval(&nq);
            let a = as_u64(&a).ok_or_else(|| domain(format!("factorial of {a} at n = {n}")))?;
            acc *= pow_i64(&BigRational::from_integer(factorial(a)), f.exponent);
        }
        for p in &self.pochhammers {
            let a = p.argument.eval(&nq);
            let k = as_u64(&a).ok_or_else(|| domain(format!("pochhammer length {a} at n = {n}")))?;
            let v = rising(&p.parameter, k);
            if v.is_zero() && p.exponent < 0 {
                return Err(Error::Pole(format!("pochhammer({}, {k}) in a denominator at n = {n}", p.parameter)));
            }
            acc *= pow_i64(&v, p.exponent);
        }
        let r = self
            .ratfactor
            .eval(&nq)
            .ok_or_else(|| Error::Pole(format!("rational factor at n = {n}")))?;
        Ok(acc * r)
    }

    /// Checks that every atom is well defined on the residue class: arguments
    /// land in ℕ, exponents in ℤ, and the rational factor has no poles.
    pub fn validate_on(&self, class: IndicatorClass) -> Result<()> {
        if class.is_zero() {
            return Err(Error::InvalidClass { residue: 0, modulus: 0 });
        }
        let m = BigRational::from_integer(class.modulus().into());
        let j = BigRational::from_integer(class.residue().into());
        let on_class = |a: &QAffine| (&a.slope * &m, a.eval(&j));
        let natural = |x: &Rational| x.is_integer() && !x.is_negative();
        for p in &self.powers {
            let (a, b) = on_class(&p.exponent);
            if !(a.is_integer() && b.is_integer()) {
                return Err(domain(format!("exponent of {} is not integral on n ≡ {} mod {}", p.base, class.residue(), class.modulus())));
            }
        }
        let args = self
            .factorials
            .iter()
            .map(|f| ("factorial", &f.argument))
            .chain(self.pochhammers.iter().map(|p| ("pochhammer", &p.argument)));
        for (kind, arg) in args {
            let (a, b) = on_class(arg);
            if !(natural(&a) && natural(&b)) {
                return Err(domain(format!(
                    "{kind} argument is not a natural number on n ≡ {} mod {}",
                    class.residue(),
                    class.modulus()
                )));
            }
        }
        let den = self.ratfactor.den();
        if !den.is_constant() {
            let on_support = den.subst_affine(&QAffine::new(m, j));
            if let Some(k) = nonneg_integer_roots(&on_support)?.first() {
                let n = class.modulus() * k + class.residue();
                return Err(Error::Pole(format!("rational factor has a pole at n = {n}")));
            }
        }
        Ok(())
    }

    /// Integer value of an atom argument at the class representative, used by sectioning.
    pub(crate) fn integer_on(a: &QAffine, class: IndicatorClass) -> Result<(i64, i64)> {
        let m = BigRational::from_integer(class.modulus().into());
        let j = BigRational::from_integer(class.residue().into());
        let slope = as_integer(&(&a.slope * &m)).and_then(|x| i64::try_from(x).ok());
        let start = as_integer(&a.eval(&j)).and_then(|x| i64::try_from(x).ok());
        match (slope, start) {
            (Some(s), Some(b)) => Ok((s, b)),
            _ => Err(domain("atom argument is not integral on the class")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{q, qq};

    fn n_plus(c: i64) -> QAffine {
        QAffine::new(q(1), q(c))
    }

    #[test]
    fn eval_examples() {
        let fact = HypMonomial::factorial(QAffine::identity(), 1);
        assert_eq!(fact.eval(6).unwrap(), q(720));
        let poch = HypMonomial::pochhammer(q(2), QAffine::identity(), 1);
        assert_eq!(poch.eval(3).unwrap(), q(24));
        let alt = HypMonomial::power(q(-1), QAffine::new(qq(1, 2), q(0)));
        assert_eq!(alt.eval(6).unwrap(), q(-1));
        assert!(alt.eval(5).is_err());
        assert!(HypMonomial::factorial(n_plus(-3), 1).eval(1).is_err());
        let inv_poch = HypMonomial::pochhammer(q(-2), QAffine::identity(), -1);
        assert!(matches!(inv_poch.eval(4), Err(Error::Pole(_))));
    }

    #[test]
    fn canonicalize_merges_and_folds() {
        let f = HypMonomial::factorial(QAffine::identity(), 1);
        let sq = f.raw_mul(&f).canonicalize().unwrap().unwrap();
        assert_eq!(sq.factorials(), &[FactorialAtom { argument: QAffine::identity(), exponent: 2 }]);

        let eight = HypMonomial::power(q(2), QAffine::constant(q(3))).canonicalize().unwrap().unwrap();
        assert!(!eight.has_atoms());
        assert_eq!(eight.constant_factor(), &q(8));

        let cancel = f.raw_mul(&f.inverse().unwrap()).canonicalize().unwrap().unwrap();
        assert_eq!(cancel, HypMonomial::one());

        let p = HypMonomial::power(q(2), QAffine::identity());
        let unit = p.raw_mul(&p.inverse().unwrap()).canonicalize().unwrap().unwrap();
        assert_eq!(unit, HypMonomial::one());
    }

    #[test]
    fn canonicalize_errors_and_zero() {
        let bad = HypMonomial::factorial(QAffine::constant(qq(1, 2)), 1);
        assert!(bad.canonicalize().is_err());
        let vanishing = HypMonomial::pochhammer(q(-2), QAffine::constant(q(5)), 1);
        assert_eq!(vanishing.canonicalize().unwrap(), None);
    }

    #[test]
    fn integer_intercepts_move_to_the_constant() {
        let m = HypMonomial::power(q(3), n_plus(1)).canonicalize().unwrap().unwrap();
        assert_eq!(m.constant_factor(), &q(3));
        assert_eq!(m.powers()[0].exponent, QAffine::identity());
        // 2^n 3^n = 6^n
        let six = HypMonomial::power(q(2), QAffine::identity())
            .raw_mul(&HypMonomial::power(q(3), QAffine::identity()))
            .canonicalize()
            .unwrap()
            .unwrap();
        assert_eq!(six.powers(), &[PowerAtom { base: q(6), exponent: QAffine::identity() }]);
    }

    #[test]
    fn validation_depends_on_class() {
        let half = HypMonomial::factorial(QAffine::new(qq(1, 2), q(0)), 1);
        assert!(half.validate_on(IndicatorClass::new(0, 2).unwrap()).is_ok());
        assert!(half.validate_on(IndicatorClass::new(1, 2).unwrap()).is_err());
        assert!(half.validate_on(IndicatorClass::ONE).is_err());
        let inv_n = HypMonomial::ratfun(QRatFun::new(QPoly::one(), QPoly::var()).unwrap()).unwrap();
        assert!(inv_n.validate_on(IndicatorClass::ONE).is_err());
        assert!(inv_n.validate_on(IndicatorClass::new(1, 2).unwrap()).is_ok());
    }
}
