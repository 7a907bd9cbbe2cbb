//! Tokenizer and recursive-descent parser.
//!
//! Precedence, loosest first: `+ -`, `* /` (left associative), unary minus,
//! `^` (right associative), postfix `!`. Unary minus sits below `^`, so
//! `-2^n` reads as `-(2^n)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::{Function, SourceExpr};
use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Bang,
    LParen,
    RParen,
    Comma,
    Equals,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(i) => format!("number {i}"),
        Tok::Name(s) => format!("name '{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Bang => "'!'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Equals => "'='".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            Tok::Int(s.parse().expect("ascii digits"))
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars));
            }
            Tok::Name(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' | '−' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '!' => Tok::Bang,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' => Tok::Equals,
                _ => {
                    return Err(ParseError { line: tl, column: tc, message: format!("unexpected character '{c}'") });
                }
            }
        };
        out.push(Token { tok, line: tl, column: tc });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    var: &'a str,
    allow_sequence: bool,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn expect(&mut self, tok: Tok) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(Self::error_at(&t, format!("expected {}, found {}", describe(&tok), describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<SourceExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    lhs = SourceExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = SourceExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<SourceExpr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.next();
                    lhs = SourceExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.next();
                    lhs = SourceExpr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<SourceExpr, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                Ok(SourceExpr::Neg(Box::new(self.unary()?)))
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SourceExpr, ParseError> {
        let base = self.postfix()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let exponent = self.unary()?;
            return Ok(SourceExpr::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn postfix(&mut self) -> Result<SourceExpr, ParseError> {
        let mut e = self.primary()?;
        while self.peek().tok == Tok::Bang {
            self.next();
            e = SourceExpr::Factorial(Box::new(e));
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<SourceExpr, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(i) => Ok(SourceExpr::Num(BigRational::from_integer(i))),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Name(ref name) => {
                if self.peek().tok != Tok::LParen {
                    if name == self.var {
                        return Ok(SourceExpr::Var);
                    }
                    return Err(Self::error_at(&t, format!("unknown identifier '{name}'")));
                }
                self.next();
                let mut args = vec![self.expr()?];
                while self.peek().tok == Tok::Comma {
                    self.next();
                    args.push(self.expr()?);
                }
                self.expect(Tok::RParen)?;
                if let Some(f) = Function::lookup(name) {
                    if args.len() != f.arity() {
                        return Err(Self::error_at(
                            &t,
                            format!("{f} expects {} argument(s), got {}", f.arity(), args.len()),
                        ));
                    }
                    return Ok(SourceExpr::Call(f, args));
                }
                if self.allow_sequence && name != self.var {
                    if args.len() != 1 {
                        return Err(Self::error_at(&t, format!("sequence {name} takes one argument")));
                    }
                    return Ok(SourceExpr::Sequence(name.clone(), Box::new(args.pop().expect("one argument"))));
                }
                Err(Self::error_at(&t, format!("unknown function '{name}'")))
            }
            ref other => Err(Self::error_at(&t, format!("unexpected {}", describe(other)))),
        }
    }
}

fn parser<'a>(text: &str, var: &'a str, allow_sequence: bool) -> Result<Parser<'a>, ParseError> {
    Ok(Parser { tokens: tokenize(text)?, pos: 0, var, allow_sequence })
}

fn finish(p: &mut Parser<'_>) -> Result<(), ParseError> {
    let t = p.next();
    if t.tok == Tok::End {
        Ok(())
    } else {
        Err(Parser::error_at(&t, format!("unexpected {}", describe(&t.tok))))
    }
}

/// Parses an expression in the index variable `var`.
pub fn parse_expr_in(text: &str, var: &str) -> Result<SourceExpr, ParseError> {
    let mut p = parser(text, var, false)?;
    let e = p.expr()?;
    finish(&mut p)?;
    Ok(e)
}

/// Parses an expression in the index variable `n`.
pub fn parse_expr(text: &str) -> Result<SourceExpr, ParseError> {
    parse_expr_in(text, "n")
}

/// Parses `lhs [= rhs]` where sequence calls such as `a(n+2)` are allowed.
/// A missing right-hand side means `0`.
pub(crate) fn parse_equation(text: &str, var: &str) -> Result<(SourceExpr, SourceExpr), ParseError> {
    let mut p = parser(text, var, true)?;
    let lhs = p.expr()?;
    let rhs = if p.peek().tok == Tok::Equals {
        p.next();
        p.expr()?
    } else {
        SourceExpr::Num(BigRational::from_integer(0.into()))
    };
    finish(&mut p)?;
    Ok((lhs, rhs))
}
