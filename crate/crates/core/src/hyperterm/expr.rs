use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::monomial::AtomKey;
use super::{HypMonomial, IndicatorClass};
use crate::error::{Error, Result};
use crate::{QRatFun, Rational};

/// A finite sum of hypergeometric monomials; empty means zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HypCoefficient {
    pub monomials: Vec<HypMonomial>,
}

impl HypCoefficient {
    pub fn new(monomials: Vec<HypMonomial>) -> Self {
        HypCoefficient { monomials }
    }

    pub fn single(m: HypMonomial) -> Self {
        HypCoefficient { monomials: vec![m] }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        let mut acc = BigRational::zero();
        for m in &self.monomials {
            acc += m.eval(n)?;
        }
        Ok(acc)
    }

    /// Canonicalizes every monomial and merges monomials sharing the same
    /// hypergeometric atoms by adding their rational parts.
    pub fn canonical(&self) -> Result<HypCoefficient> {
        let mut groups: BTreeMap<AtomKey, QRatFun> = BTreeMap::new();
        for m in &self.monomials {
            let Some(m) = m.canonicalize()? else { continue };
            let part = m.ratfactor().scale(m.constant_factor());
            let slot = groups.entry(m.key()).or_insert_with(QRatFun::zero);
            *slot = &*slot + &part;
        }
        let monomials = groups
            .into_iter()
            .filter_map(|(key, r)| HypMonomial::from_key(key, BigRational::from_integer(1.into()), r))
            .collect();
        Ok(HypCoefficient { monomials })
    }
}

/// One summand `H(n) · χ_{n mod m = j}` with `m ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    coefficient: HypCoefficient,
    class: IndicatorClass,
}

impl Component {
    /// Builds a component after checking that every monomial is well defined
    /// on the class.
    pub fn new(coefficient: HypCoefficient, class: IndicatorClass) -> Result<Self> {
        if class.is_zero() {
            return Err(Error::InvalidClass { residue: 0, modulus: 0 });
        }
        for m in &coefficient.monomials {
            m.validate_on(class)?;
        }
        Ok(Component { coefficient, class })
    }

    pub fn coefficient(&self) -> &HypCoefficient {
        &self.coefficient
    }

    pub fn class(&self) -> IndicatorClass {
        self.class
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        if self.class.contains(n) {
            self.coefficient.eval(n)
        } else {
            Ok(BigRational::zero())
        }
    }

    /// Splits the component over the finer modulus `mu`, using
    /// `χ[j mod m] = Σ_t χ[j + t·m mod mu]`.
    pub fn refine(&self, mu: u64) -> Result<Vec<Component>> {
        let m = self.class.modulus();
        if mu == 0 || !mu.is_multiple_of(m) {
            return Err(Error::NotMultiple { modulus: m, target: mu });
        }
        (0..mu / m)
            .map(|t| {
                let class = IndicatorClass::new(self.class.residue() + t * m, mu)?;
                Ok(Component { coefficient: self.coefficient.clone(), class })
            })
            .collect()
    }
}

/// Free-function form of [`Component::refine`].
pub fn refine_component(c: &Component, mu: u64) -> Result<Vec<Component>> {
    c.refine(mu)
}

/// A hypergeometric-type term: a finite sum of interlaced components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HtsExpr {
    components: Vec<Component>,
}

impl HtsExpr {
    pub fn new(components: Vec<Component>) -> Self {
        HtsExpr { components }
    }

    pub fn zero() -> Self {
        HtsExpr::default()
    }

    pub fn from_component(c: Component) -> Self {
        HtsExpr { components: vec![c] }
    }

    /// `m · χ[class]`.
    pub fn monomial(m: HypMonomial, class: IndicatorClass) -> Result<Self> {
        if class.is_zero() {
            return Ok(HtsExpr::zero());
        }
        Ok(Self::from_component(Component::new(HypCoefficient::single(m), class)?))
    }

    pub fn indicator(class: IndicatorClass) -> Self {
        Self::monomial(HypMonomial::one(), class).expect("constant monomials are valid everywhere")
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        let mut acc = BigRational::zero();
        for c in &self.components {
            acc += c.eval(n)?;
        }
        Ok(acc)
    }

    /// Merges components per class, canonicalizes coefficients, drops zero
    /// components and coarsens families of classes that carry identical
    /// coefficients on every residue above a smaller modulus.
    pub fn normalize(&self) -> Result<HtsExpr> {
        let mut by_class: BTreeMap<(u64, u64), Vec<HypMonomial>> = BTreeMap::new();
        for c in &self.components {
            by_class
                .entry(c.class.key())
                .or_default()
                .extend(c.coefficient.monomials.iter().cloned());
        }
        let mut merged: BTreeMap<(u64, u64), HypCoefficient> = BTreeMap::new();
        for (key, monomials) in by_class {
            let coeff = HypCoefficient::new(monomials).canonical()?;
            if !coeff.is_zero() {
                merged.insert(key, coeff);
            }
        }
        while coarsen_once(&mut merged)? {}
        let components = merged
            .into_iter()
            .map(|((m, j), coefficient)| Component::new(coefficient, IndicatorClass::new(j, m)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(HtsExpr { components })
    }

    pub fn add(&self, other: &HtsExpr) -> Result<HtsExpr> {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        HtsExpr { components }.normalize()
    }

    pub fn scale(&self, c: &Rational) -> Result<HtsExpr> {
        if c.is_zero() {
            return Ok(HtsExpr::zero());
        }
        let components = self
            .components
            .iter()
            .map(|comp| Component {
                coefficient: HypCoefficient::new(comp.coefficient.monomials.iter().map(|m| m.scaled(c)).collect()),
                class: comp.class,
            })
            .collect();
        HtsExpr { components }.normalize()
    }

    pub fn neg(&self) -> Result<HtsExpr> {
        self.scale(&-BigRational::from_integer(1.into()))
    }

    pub fn sub(&self, other: &HtsExpr) -> Result<HtsExpr> {
        self.add(&other.neg()?)
    }

    /// The expression at `n + t`.
    pub fn shift(&self, t: u64) -> Result<HtsExpr> {
        let ti = i64::try_from(t).map_err(|_| Error::Overflow("shift amount"))?;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let m = c.class.modulus();
            let j = (c.class.residue() + m - t % m) % m;
            let mut monomials = Vec::new();
            for mono in &c.coefficient.monomials {
                if let Some(s) = mono.raw_shift(ti).canonicalize()? {
                    monomials.push(s);
                }
            }
            components.push(Component::new(HypCoefficient::new(monomials), IndicatorClass::new(j, m)?)?);
        }
        HtsExpr { components }.normalize()
    }
}

fn divisors_below(mu: u64) -> Vec<u64> {
    (1..mu).filter(|d| mu.is_multiple_of(*d)).collect()
}

/// One coarsening step: finds the first modulus `mu` (largest first) and
/// proper divisor `d` (smallest first) such that every class `r + t·d mod mu`
/// carries the same coefficient, and replaces them by `r mod d`.
fn coarsen_once(merged: &mut BTreeMap<(u64, u64), HypCoefficient>) -> Result<bool> {
    let mut moduli: Vec<u64> = merged.keys().map(|(m, _)| *m).collect();
    moduli.dedup();
    for &mu in moduli.iter().rev() {
        for d in divisors_below(mu) {
            for r in 0..d {
                let first = match merged.get(&(mu, r)) {
                    Some(c) => c.clone(),
                    None => continue,
                };
                let all_equal = (1..mu / d).all(|t| merged.get(&(mu, r + t * d)) == Some(&first));
                if !all_equal {
                    continue;
                }
                for t in 0..mu / d {
                    merged.remove(&(mu, r + t * d));
                }
                let target = match merged.remove(&(d, r)) {
                    Some(existing) => {
                        let mut ms = existing.monomials;
                        ms.extend(first.monomials);
                        HypCoefficient::new(ms).canonical()?
                    }
                    None => first,
                };
                if !target.is_zero() {
                    merged.insert((d, r), target);
                }
                return Ok(true);
            }
        }
    }
    Ok(false)
}

pub fn hts_eval(s: &HtsExpr, n: u64) -> Result<Rational> {
    s.eval(n)
}

pub fn hts_normalize(s: &HtsExpr) -> Result<HtsExpr> {
    s.normalize()
}

pub fn hts_add(a: &HtsExpr, b: &HtsExpr) -> Result<HtsExpr> {
    a.add(b)
}

pub fn hts_sub(a: &HtsExpr, b: &HtsExpr) -> Result<HtsExpr> {
    a.sub(b)
}

pub fn hts_scale(s: &HtsExpr, c: &Rational) -> Result<HtsExpr> {
    s.scale(c)
}

pub fn hts_shift(s: &HtsExpr, t: u64) -> Result<HtsExpr> {
    s.shift(t)
}
