//! Textual linear recurrences `Σ c_t(n)·a(n+t) = 0`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive};

use super::ast::SourceExpr;
use super::parser::parse_equation;
use crate::error::{Error, LowerError, Result};
use crate::recurrence::RecOperator;
use crate::QPoly;

fn unsupported(msg: impl Into<String>) -> Error {
    LowerError::Unsupported(msg.into()).into()
}

/// Either a coefficient polynomial or a linear form in the shifted sequence values.
enum Lin {
    Poly(QPoly),
    Form(BTreeMap<usize, QPoly>),
}

impl Lin {
    fn into_form(self) -> Result<BTreeMap<usize, QPoly>> {
        match self {
            Lin::Form(f) => Ok(f),
            Lin::Poly(p) if p.is_zero() => Ok(BTreeMap::new()),
            Lin::Poly(_) => Err(unsupported("inhomogeneous term in a recurrence")),
        }
    }
}

fn add_forms(mut a: BTreeMap<usize, QPoly>, b: BTreeMap<usize, QPoly>) -> BTreeMap<usize, QPoly> {
    for (t, p) in b {
        let slot = a.entry(t).or_insert_with(QPoly::zero);
        *slot = &*slot + &p;
    }
    a
}

fn scale_form(f: BTreeMap<usize, QPoly>, c: &QPoly) -> BTreeMap<usize, QPoly> {
    f.into_iter().map(|(t, p)| (t, &p * c)).collect()
}

struct Reader<'a> {
    sequence: Option<&'a str>,
}

impl<'a> Reader<'a> {
    fn poly(&mut self, e: &'a SourceExpr) -> Result<QPoly> {
        match self.read(e)? {
            Lin::Poly(p) => Ok(p),
            Lin::Form(_) => Err(unsupported("sequence value inside a coefficient")),
        }
    }

    fn read(&mut self, e: &'a SourceExpr) -> Result<Lin> {
        Ok(match e {
            SourceExpr::Num(c) => Lin::Poly(QPoly::constant(c.clone())),
            SourceExpr::Var => Lin::Poly(QPoly::var()),
            SourceExpr::Neg(a) => match self.read(a)? {
                Lin::Poly(p) => Lin::Poly(-&p),
                Lin::Form(f) => Lin::Form(scale_form(f, &-QPoly::one())),
            },
            SourceExpr::Add(a, b) | SourceExpr::Sub(a, b) => {
                let sign = if matches!(e, SourceExpr::Sub(..)) { -QPoly::one() } else { QPoly::one() };
                match (self.read(a)?, self.read(b)?) {
                    (Lin::Poly(p), Lin::Poly(q)) => Lin::Poly(&p + &(&q * &sign)),
                    (x, y) => Lin::Form(add_forms(x.into_form()?, scale_form(y.into_form()?, &sign))),
                }
            }
            SourceExpr::Mul(a, b) => match (self.read(a)?, self.read(b)?) {
                (Lin::Poly(p), Lin::Poly(q)) => Lin::Poly(&p * &q),
                (Lin::Poly(p), Lin::Form(f)) | (Lin::Form(f), Lin::Poly(p)) => Lin::Form(scale_form(f, &p)),
                _ => return Err(unsupported("product of two sequence values")),
            },
            SourceExpr::Div(a, b) => {
                let d = self.poly(b)?;
                let c = match d.degree() {
                    Some(0) => d.coeff(0),
                    _ => return Err(unsupported("division by a non-constant in a recurrence")),
                };
                let inv = QPoly::constant(c.recip());
                match self.read(a)? {
                    Lin::Poly(p) => Lin::Poly(&p * &inv),
                    Lin::Form(f) => Lin::Form(scale_form(f, &inv)),
                }
            }
            SourceExpr::Pow(b, x) => {
                let base = self.poly(b)?;
                let k = self.poly(x)?;
                let k = match k.degree() {
                    None => 0,
                    Some(0) if k.coeff(0).is_integer() && !k.coeff(0).is_negative() => {
                        k.coeff(0).to_integer().to_u32().ok_or_else(|| unsupported("exponent too large"))?
                    }
                    _ => return Err(unsupported("coefficient exponents must be nonnegative integers")),
                };
                Lin::Poly(base.pow(k))
            }
            SourceExpr::Factorial(_) | SourceExpr::Call(..) => {
                return Err(unsupported("recurrence coefficients must be polynomials"));
            }
            SourceExpr::Sequence(name, arg) => {
                match self.sequence {
                    None => self.sequence = Some(name),
                    Some(s) if s == name => {}
                    Some(s) => return Err(unsupported(format!("two sequence symbols '{s}' and '{name}'"))),
                }
                let a = self.poly(arg)?;
                let shift = (&a - &QPoly::var()).coeff(0);
                let offset_ok = a.degree() == Some(1) && a.coeff(1).is_one();
                if !offset_ok || !shift.is_integer() || shift.is_negative() {
                    return Err(unsupported(format!("sequence argument must be {{var}}+t with integer t ≥ 0, got {a}")));
                }
                let t = shift.to_integer().to_usize().ok_or_else(|| unsupported("shift too large"))?;
                Lin::Form(BTreeMap::from([(t, QPoly::one())]))
            }
        })
    }
}

/// Parses a linear recurrence in `var`, e.g. `(n+1)*a(n+1) - 2*a(n) = 0`.
/// Trailing `:` or `;` is ignored.
pub fn parse_recurrence(text: &str, var: &str) -> Result<RecOperator> {
    let text = text.trim().trim_end_matches([':', ';']);
    let (lhs, rhs) = parse_equation(text, var)?;
    let mut reader = Reader { sequence: None };
    let l = reader.read(&lhs)?.into_form()?;
    let r = reader.read(&rhs)?.into_form()?;
    let form = add_forms(l, scale_form(r, &-QPoly::one()));
    let top = form.iter().filter(|(_, p)| !p.is_zero()).map(|(t, _)| *t).max();
    let Some(top) = top else {
        return Err(unsupported("recurrence has no nonzero coefficient"));
    };
    let mut coeffs = vec![QPoly::zero(); top + 1];
    for (t, p) in form {
        coeffs[t] = p;
    }
    RecOperator::new(coeffs)
}
