//! JSON documents for expressions and operators. Rationals are strings.

use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperterm::{
    Component, FactorialAtom, HtsExpr, HypCoefficient, HypMonomial, IndicatorClass, PochhammerAtom, PowerAtom,
};
use crate::recurrence::RecOperator;
use crate::{QAffine, QPoly, QRatFun, Rational};

use super::render::rational_text;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExprDoc {
    pub components: Vec<ComponentDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub j: u64,
    pub m: u64,
    pub monomials: Vec<MonomialDoc>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub constant: String,
    pub powers: Vec<PowerDoc>,
    pub factorials: Vec<FactorialDoc>,
    pub pochhammers: Vec<PochhammerDoc>,
    pub ratnum: Vec<String>,
    pub ratden: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PowerDoc {
    pub base: String,
    pub slope: String,
    pub intercept: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FactorialDoc {
    pub slope: String,
    pub intercept: String,
    pub exp: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PochhammerDoc {
    pub param: String,
    pub slope: String,
    pub intercept: String,
    pub exp: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub order: usize,
    pub coeffs: Vec<Vec<String>>,
}

fn poly_doc(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(rational_text).collect()
}

fn rational(s: &str) -> Result<Rational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Json(format!("not a rational number: {s:?}")))
}

fn poly(cs: &[String]) -> Result<QPoly> {
    Ok(QPoly::from_coeffs(cs.iter().map(|c| rational(c)).collect::<Result<_>>()?))
}

fn affine(slope: &str, intercept: &str) -> Result<QAffine> {
    Ok(QAffine::new(rational(slope)?, rational(intercept)?))
}

pub fn expr_doc(s: &HtsExpr) -> ExprDoc {
    let components = s
        .components()
        .iter()
        .map(|c| ComponentDoc {
            j: c.class().residue(),
            m: c.class().modulus(),
            monomials: c.coefficient().monomials.iter().map(monomial_doc).collect(),
        })
        .collect();
    ExprDoc { components }
}

fn monomial_doc(m: &HypMonomial) -> MonomialDoc {
    MonomialDoc {
        constant: rational_text(m.constant_factor()),
        powers: m
            .powers()
            .iter()
            .map(|p| PowerDoc {
                base: rational_text(&p.base),
                slope: rational_text(&p.exponent.slope),
                intercept: rational_text(&p.exponent.intercept),
            })
            .collect(),
        factorials: m
            .factorials()
            .iter()
            .map(|f| FactorialDoc {
                slope: rational_text(&f.argument.slope),
                intercept: rational_text(&f.argument.intercept),
                exp: f.exponent,
            })
            .collect(),
        pochhammers: m
            .pochhammers()
            .iter()
            .map(|p| PochhammerDoc {
                param: rational_text(&p.parameter),
                slope: rational_text(&p.argument.slope),
                intercept: rational_text(&p.argument.intercept),
                exp: p.exponent,
            })
            .collect(),
        ratnum: poly_doc(m.ratfactor().num()),
        ratden: poly_doc(m.ratfactor().den()),
    }
}

pub fn expr_from_doc(doc: &ExprDoc) -> Result<HtsExpr> {
    let mut components = Vec::new();
    for c in &doc.components {
        let class = IndicatorClass::new(c.j, c.m)?;
        let mut monomials = Vec::new();
        for m in &c.monomials {
            let powers = m
                .powers
                .iter()
                .map(|p| Ok(PowerAtom { base: rational(&p.base)?, exponent: affine(&p.slope, &p.intercept)? }))
                .collect::<Result<_>>()?;
            let factorials = m
                .factorials
                .iter()
                .map(|f| Ok(FactorialAtom { argument: affine(&f.slope, &f.intercept)?, exponent: f.exp }))
                .collect::<Result<_>>()?;
            let pochhammers = m
                .pochhammers
                .iter()
                .map(|p| {
                    Ok(PochhammerAtom {
                        parameter: rational(&p.param)?,
                        argument: affine(&p.slope, &p.intercept)?,
                        exponent: p.exp,
                    })
                })
                .collect::<Result<_>>()?;
            let den = if m.ratden.is_empty() { QPoly::one() } else { poly(&m.ratden)? };
            let ratfactor = QRatFun::new(poly(&m.ratnum)?, den).map_err(|_| Error::Json("zero denominator".into()))?;
            if let Some(mono) =
                HypMonomial::from_parts(rational(&m.constant)?, powers, factorials, pochhammers, ratfactor)?
            {
                monomials.push(mono);
            }
        }
        if class.is_zero() || monomials.is_empty() {
            continue;
        }
        components.push(Component::new(HypCoefficient::new(monomials), class)?);
    }
    Ok(HtsExpr::new(components))
}

pub fn operator_doc(op: &RecOperator) -> OperatorDoc {
    OperatorDoc { order: op.order(), coeffs: op.coeffs().iter().map(poly_doc).collect() }
}

pub fn operator_from_doc(doc: &OperatorDoc) -> Result<RecOperator> {
    let coeffs = doc.coeffs.iter().map(|c| poly(c)).collect::<Result<Vec<_>>>()?;
    let op = RecOperator::new(coeffs).map_err(|e| Error::Json(e.to_string()))?;
    if op.order() != doc.order {
        return Err(Error::Json(format!("order {} does not match {} coefficients", doc.order, doc.coeffs.len())));
    }
    Ok(op)
}

/// Compact JSON for an expression.
pub fn expr_json(s: &HtsExpr) -> String {
    serde_json::to_string(&expr_doc(s)).expect("documents serialize")
}

/// Compact JSON for an operator.
pub fn operator_json(op: &RecOperator) -> String {
    serde_json::to_string(&operator_doc(op)).expect("documents serialize")
}

pub fn expr_from_json(text: &str) -> Result<HtsExpr> {
    let doc: ExprDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    expr_from_doc(&doc)
}

pub fn operator_from_json(text: &str) -> Result<RecOperator> {
    let doc: OperatorDoc = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    operator_from_doc(&doc)
}
