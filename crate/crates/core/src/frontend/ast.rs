use std::fmt;

use crate::Rational;

/// Functions understood by the expression language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Function {
    Factorial,
    Pochhammer,
    Binomial,
    MfoldInd,
}

impl Function {
    pub fn lookup(name: &str) -> Option<Function> {
        match name {
            "factorial" => Some(Function::Factorial),
            "pochhammer" => Some(Function::Pochhammer),
            "binomial" => Some(Function::Binomial),
            "mfoldInd" => Some(Function::MfoldInd),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Function::Factorial => "factorial",
            Function::Pochhammer => "pochhammer",
            Function::Binomial => "binomial",
            Function::MfoldInd => "mfoldInd",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Function::Factorial => 1,
            Function::Pochhammer | Function::Binomial => 2,
            Function::MfoldInd => 3,
        }
    }
}

/// Abstract syntax of the expression language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceExpr {
    /// Integer literal; rational constants arise from division.
    Num(Rational),
    /// The index variable.
    Var,
    Neg(Box<SourceExpr>),
    Add(Box<SourceExpr>, Box<SourceExpr>),
    Sub(Box<SourceExpr>, Box<SourceExpr>),
    Mul(Box<SourceExpr>, Box<SourceExpr>),
    Div(Box<SourceExpr>, Box<SourceExpr>),
    Pow(Box<SourceExpr>, Box<SourceExpr>),
    /// Postfix `!`.
    Factorial(Box<SourceExpr>),
    Call(Function, Vec<SourceExpr>),
    /// `a(n+t)` in a recurrence; only produced when sequence calls are enabled.
    Sequence(String, Box<SourceExpr>),
}

impl SourceExpr {
    /// The literal as an integer, if this node is a (possibly negated) integer literal.
    pub fn integer_literal(&self) -> Option<num_bigint::BigInt> {
        match self {
            SourceExpr::Num(q) if q.is_integer() => Some(q.to_integer()),
            SourceExpr::Neg(inner) => inner.integer_literal().map(|x| -x),
            _ => None,
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
