//! Text and LaTeX printers.
//!
//! The text form is valid input for the parser: every factor is explicit,
//! indicators print as `mfoldInd(n,m,j)`, and a negative term is written
//! with a binary minus so no unary minus meets a power.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hyperterm::{HtsExpr, HypMonomial, IndicatorClass};
use crate::recurrence::RecOperator;
use crate::{QAffine, QPoly, Rational};

/// `p` or `p/q`.
pub fn rational_text(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rational_latex(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else if x.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -x.numer(), x.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

enum Factor {
    Power(Rational, QAffine),
    Factorial(QAffine, u64),
    Pochhammer(Rational, QAffine, u64),
    /// `n^k`
    VarPow(usize),
    /// A monic polynomial with nonzero constant term, printed in parentheses.
    Poly(QPoly),
}

/// A signed product `±coef · Π num / Π den`, optionally restricted to a class.
struct Term {
    negative: bool,
    coef: Rational,
    num: Vec<Factor>,
    den: Vec<Factor>,
    class: Option<IndicatorClass>,
}

struct Printer<'a> {
    var: &'a str,
    style: Style,
}

fn push_poly(out: &mut Vec<Factor>, p: &QPoly) {
    let k = p.low_order().unwrap_or(0);
    if k > 0 {
        out.push(Factor::VarPow(k));
    }
    if p.degree().unwrap_or(0) > k {
        let rest = QPoly::from_coeffs(p.coeffs()[k..].to_vec());
        out.push(Factor::Poly(rest));
    }
}

fn monomial_terms(m: &HypMonomial, class: IndicatorClass) -> Vec<Term> {
    let class = (class != IndicatorClass::ONE).then_some(class);
    let r = m.ratfactor();
    let lc_num = r.num().leading_coeff().cloned().unwrap_or_else(BigRational::one);
    let lc_den = r.den().leading_coeff().cloned().unwrap_or_else(BigRational::one);
    let c = m.constant_factor() * &lc_num / &lc_den;
    let num_poly = r.num().unscale(&lc_num);
    let den_poly = r.den().unscale(&lc_den);

    if class.is_none() && !m.has_atoms() && den_poly.is_constant() {
        // a bare polynomial prints expanded, lowest degree first
        return num_poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(k, a)| {
                let v = &c * a;
                Term {
                    negative: v.is_negative(),
                    coef: v.abs(),
                    num: if k > 0 { vec![Factor::VarPow(k)] } else { Vec::new() },
                    den: Vec::new(),
                    class: None,
                }
            })
            .collect();
    }

    let mut num = Vec::new();
    let mut den = Vec::new();
    for p in m.powers() {
        num.push(Factor::Power(p.base.clone(), p.exponent.clone()));
    }
    for f in m.factorials() {
        let target = if f.exponent > 0 { &mut num } else { &mut den };
        target.push(Factor::Factorial(f.argument.clone(), f.exponent.unsigned_abs()));
    }
    for p in m.pochhammers() {
        let target = if p.exponent > 0 { &mut num } else { &mut den };
        target.push(Factor::Pochhammer(p.parameter.clone(), p.argument.clone(), p.exponent.unsigned_abs()));
    }
    push_poly(&mut num, &num_poly);
    push_poly(&mut den, &den_poly);
    vec![Term { negative: c.is_negative(), coef: c.abs(), num, den, class }]
}

impl Printer<'_> {
    fn rational(&self, x: &Rational) -> String {
        match self.style {
            Style::Text => rational_text(x),
            Style::Latex => rational_latex(x),
        }
    }

    fn var_pow(&self, k: usize) -> String {
        match (k, self.style) {
            (1, _) => self.var.to_string(),
            (_, Style::Text) => format!("{}^{k}", self.var),
            (_, Style::Latex) => format!("{}^{{{k}}}", self.var),
        }
    }

    fn exponent(&self, base: String, e: u64) -> String {
        match (e, self.style) {
            (1, _) => base,
            (_, Style::Text) => format!("{base}^{e}"),
            (_, Style::Latex) => format!("{base}^{{{e}}}"),
        }
    }

    /// Signed `c·n^k` with the sign split off.
    fn scaled_var(&self, c: &Rational, k: usize) -> String {
        let a = c.abs();
        if k == 0 {
            return self.rational(&a);
        }
        let v = self.var_pow(k);
        if a.is_one() {
            return v;
        }
        match self.style {
            Style::Text => format!("{}*{v}", rational_text(&a)),
            Style::Latex => format!("{} {v}", rational_latex(&a)),
        }
    }

    /// Polynomial, highest degree first, without spaces around signs.
    fn poly(&self, p: &QPoly) -> String {
        let mut out = String::new();
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&self.scaled_var(c, k));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn affine(&self, a: &QAffine) -> String {
        let mut out = String::new();
        let s = &a.slope;
        if !s.is_zero() {
            if s.is_negative() {
                out.push('-');
            }
            let m = s.abs();
            let body = if m.is_integer() {
                self.scaled_var(&m, 1)
            } else if m.numer().is_one() {
                match self.style {
                    Style::Text => format!("{}/{}", self.var, m.denom()),
                    Style::Latex => format!("\\frac{{{}}}{{{}}}", self.var, m.denom()),
                }
            } else {
                self.scaled_var(&m, 1)
            };
            out.push_str(&body);
        }
        let b = &a.intercept;
        if !b.is_zero() || out.is_empty() {
            if b.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&self.rational(&b.abs()));
        }
        out
    }

    fn is_var(a: &QAffine) -> bool {
        a.slope.is_one() && a.intercept.is_zero()
    }

    fn factor(&self, f: &Factor) -> String {
        match (f, self.style) {
            (Factor::Power(base, e), _) => {
                let b = if base.is_integer() && !base.is_negative() {
                    base.numer().to_string()
                } else {
                    format!("({})", self.rational(base))
                };
                match self.style {
                    Style::Text if Self::is_var(e) => format!("{b}^{}", self.var),
                    Style::Text => format!("{b}^({})", self.affine(e)),
                    Style::Latex => format!("{b}^{{{}}}", self.affine(e)),
                }
            }
            (Factor::Factorial(a, e), _) => {
                let base = if Self::is_var(a) { format!("{}!", self.var) } else { format!("({})!", self.affine(a)) };
                self.exponent(base, *e)
            }
            (Factor::Pochhammer(x, a, e), Style::Text) => {
                self.exponent(format!("pochhammer({},{})", rational_text(x), self.affine(a)), *e)
            }
            (Factor::Pochhammer(x, a, e), Style::Latex) => {
                self.exponent(format!("({})_{{{}}}", rational_latex(x), self.affine(a)), *e)
            }
            (Factor::VarPow(k), _) => self.var_pow(*k),
            (Factor::Poly(p), _) => format!("({})", self.poly(p)),
        }
    }

    fn indicator(&self, c: IndicatorClass) -> String {
        match self.style {
            Style::Text => format!("mfoldInd({},{},{})", self.var, c.modulus(), c.residue()),
            Style::Latex => format!("\\chi_{{\\{{{} \\bmod {} = {}\\}}}}", self.var, c.modulus(), c.residue()),
        }
    }

    /// The unsigned body of a term.
    fn term(&self, t: &Term) -> String {
        let num: Vec<String> = t.num.iter().map(|f| self.factor(f)).collect();
        let den: Vec<String> = t.den.iter().map(|f| self.factor(f)).collect();
        let bare = t.coef.is_one() && num.is_empty() && den.is_empty();
        if bare {
            return match t.class {
                Some(c) => self.indicator(c),
                None => "1".to_string(),
            };
        }
        let body = match self.style {
            Style::Text => {
                let mut parts = Vec::new();
                if !t.coef.is_one() || num.is_empty() {
                    parts.push(rational_text(&t.coef));
                }
                parts.extend(num);
                let mut s = parts.join("*");
                for d in den {
                    s.push('/');
                    s.push_str(&d);
                }
                s
            }
            Style::Latex => {
                if den.is_empty() {
                    let mut parts = Vec::new();
                    if !t.coef.is_one() || num.is_empty() {
                        parts.push(rational_latex(&t.coef));
                    }
                    parts.extend(num);
                    parts.join(" ")
                } else {
                    let mut top = Vec::new();
                    if !t.coef.numer().is_one() || num.is_empty() {
                        top.push(t.coef.numer().to_string());
                    }
                    top.extend(num);
                    let mut bottom = Vec::new();
                    if !t.coef.denom().is_one() {
                        bottom.push(t.coef.denom().to_string());
                    }
                    bottom.extend(den);
                    format!("\\frac{{{}}}{{{}}}", top.join(" "), bottom.join(" "))
                }
            }
        };
        match (t.class, self.style) {
            (None, _) => body,
            (Some(c), Style::Text) => format!("{body}*{}", self.indicator(c)),
            (Some(c), Style::Latex) => format!("{body}\\,{}", self.indicator(c)),
        }
    }

    fn join(&self, terms: &[(bool, String)]) -> String {
        let mut out = String::new();
        for (i, (negative, body)) in terms.iter().enumerate() {
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn expr(&self, s: &HtsExpr) -> String {
        let mut terms = Vec::new();
        for c in s.components() {
            for m in &c.coefficient().monomials {
                for t in monomial_terms(m, c.class()) {
                    terms.push((t.negative, self.term(&t)));
                }
            }
        }
        self.join(&terms)
    }

    fn operator(&self, op: &RecOperator, seq: &str) -> String {
        let mut terms = Vec::new();
        for (t, c) in op.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let at = if t == 0 { format!("{seq}({})", self.var) } else { format!("{seq}({}+{t})", self.var) };
            let nonzero: Vec<usize> = (0..c.coeffs().len()).filter(|&k| !c.coeff(k).is_zero()).collect();
            let (negative, coef) = if let [k] = nonzero[..] {
                let a = c.coeff(k);
                let body = if a.abs().is_one() && k == 0 { None } else { Some(self.scaled_var(&a, k)) };
                (a.is_negative(), body)
            } else {
                (false, Some(format!("({})", self.poly(c))))
            };
            let body = match (coef, self.style) {
                (None, _) => at,
                (Some(k), Style::Text) => format!("{k}*{at}"),
                (Some(k), Style::Latex) => format!("{k} {at}"),
            };
            terms.push((negative, body));
        }
        format!("{} = 0", self.join(&terms))
    }
}

/// Parseable text form of an expression in the index variable `var`.
pub fn expr_text(s: &HtsExpr, var: &str) -> String {
    Printer { var, style: Style::Text }.expr(s)
}

/// LaTeX form of an expression.
pub fn expr_latex(s: &HtsExpr, var: &str) -> String {
    Printer { var, style: Style::Latex }.expr(s)
}

/// `c0*a(n) + c1*a(n+1) + … = 0`, accepted by the recurrence parser.
pub fn operator_text(op: &RecOperator, var: &str) -> String {
    Printer { var, style: Style::Text }.operator(op, "a")
}

pub fn operator_latex(op: &RecOperator, var: &str) -> String {
    Printer { var, style: Style::Latex }.operator(op, "a")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;
    use crate::frontend::parse_hts;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn text_examples() {
        let s = HtsExpr::indicator(IndicatorClass::new(1, 3).unwrap());
        assert_eq!(expr_text(&s, "n"), "mfoldInd(n,3,1)");
        assert_eq!(expr_text(&HtsExpr::zero(), "n"), "0");
        let s = parse_hts("n! - (n-7)*mfoldInd(n,5,1)", "n").unwrap();
        assert_eq!(expr_text(&s, "n"), "n! - (n-7)*mfoldInd(n,5,1)");
        assert_eq!(expr_latex(&s, "n"), "n! - (n-7)\\,\\chi_{\\{n \\bmod 5 = 1\\}}");
        let s = parse_hts("4/9+31/12*n-3*n^2+67/36*n^3", "n").unwrap();
        assert_eq!(expr_text(&s, "n"), "4/9 + 31/12*n - 3*n^2 + 67/36*n^3");
        let s = parse_hts("-2^n + 3/2*(-1)^(n/2)*mfoldInd(n,2,0)/(n+1)!", "k");
        assert!(s.is_err());
        let s = parse_hts("-2^k + 3/2*(-1)^(k/2)*mfoldInd(k,2,0)/(k+1)!", "k").unwrap();
        assert_eq!(expr_text(&s, "k"), "-2^k + 3/2*(-1)^(k/2)/(k+1)!*mfoldInd(k,2,0)");
    }

    #[test]
    fn operator_examples() {
        let op = RecOperator::new(vec![qp(&[-2]), qp(&[1])]).unwrap();
        assert_eq!(operator_text(&op, "n"), "-2*a(n) + a(n+1) = 0");
        let op = RecOperator::new(vec![qp(&[1, -3, 2]), QPoly::zero(), qp(&[0, 0, -4]), qp(&[-1])]).unwrap();
        assert_eq!(operator_text(&op, "n"), "(2*n^2-3*n+1)*a(n) - 4*n^2*a(n+2) - a(n+3) = 0");
    }
}
