//! Parser, lowering, printers and the JSON interchange format.

mod common;

use hypertype::frontend::{
    expr_from_json, expr_json, expr_text, operator_from_json, operator_json, parse_expr, parse_expr_in, parse_hts,
    Function, SourceExpr,
};
use hypertype::{hts_equal, hts_to_recurrence, Error, LowerError, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde_json::Value;

use common::{random_expr_with, rng};

/// Direct numeric reading of the source tree. Undefined subterms are `None`
/// unless multiplied by an exact zero, which is how indicators guard the
/// terms they switch off.
fn interpret(e: &SourceExpr, n: i64) -> Option<Rational> {
    let int = |x: &Rational| x.is_integer().then(|| x.to_integer());
    let natural = |x: &Rational| int(x).filter(|k| !k.is_negative()).and_then(|k| k.to_u64());
    Some(match e {
        SourceExpr::Num(c) => c.clone(),
        SourceExpr::Var => Rational::from_integer(n.into()),
        SourceExpr::Neg(a) => -interpret(a, n)?,
        SourceExpr::Add(a, b) => interpret(a, n)? + interpret(b, n)?,
        SourceExpr::Sub(a, b) => interpret(a, n)? - interpret(b, n)?,
        SourceExpr::Mul(a, b) => {
            let (x, y) = (interpret(a, n), interpret(b, n));
            if x.as_ref().is_some_and(Zero::is_zero) || y.as_ref().is_some_and(Zero::is_zero) {
                Rational::zero()
            } else {
                x? * y?
            }
        }
        SourceExpr::Div(a, b) => {
            let d = interpret(b, n)?;
            if d.is_zero() {
                return None;
            }
            interpret(a, n)? / d
        }
        SourceExpr::Pow(a, b) => {
            let base = interpret(a, n)?;
            let k = int(&interpret(b, n)?)?.to_i32()?;
            if base.is_zero() && k < 0 {
                return None;
            }
            base.pow(k)
        }
        SourceExpr::Factorial(a) => factorial(natural(&interpret(a, n)?)?),
        SourceExpr::Call(f, args) => {
            let v: Vec<Rational> = args.iter().map(|a| interpret(a, n)).collect::<Option<_>>()?;
            match f {
                Function::Factorial => factorial(natural(&v[0])?),
                Function::Pochhammer => {
                    let k = natural(&v[1])?;
                    (0..k).fold(Rational::one(), |acc, i| acc * (&v[0] + Rational::from_integer(i.into())))
                }
                Function::Binomial => {
                    let (a, b) = (natural(&v[0])?, natural(&v[1])?);
                    if b > a {
                        return None;
                    }
                    factorial(a) / (factorial(b) * factorial(a - b))
                }
                Function::MfoldInd => {
                    let (x, m, j) = (int(&v[0])?, int(&v[1])?, int(&v[2])?);
                    if !m.is_positive() {
                        return None;
                    }
                    let hit = x.mod_floor(&m) == j;
                    Rational::from_integer(BigInt::from(hit as u8))
                }
            }
        }
        SourceExpr::Sequence(..) => return None,
    })
}

fn factorial(k: u64) -> Rational {
    Rational::from_integer((1..=k).fold(BigInt::one(), |acc, i| acc * i))
}

const CORPUS: [&str; 30] = [
    "n!*mfoldInd(n,4,2)+2^n*mfoldInd(n,2,1)",
    "1/2 + (-1)^(n/2)*mfoldInd(n,2,0)/2",
    "n! - (n-7)*mfoldInd(n,5,1)",
    "3^n*mfoldInd(n,3,1)+(2^n+n)*mfoldInd(n,2,0)",
    "n!*mfoldInd(n, 4, 3) + pochhammer(2, n)",
    "(n!)^2*mfoldInd(n, 3, 1) + n^3*mfoldInd(n, 2, 1)",
    "(n + 1)*mfoldInd(n, 4, 3)/n! + (n + 2)*mfoldInd(n, 2, 0)",
    "4/9+31/12*n-3*n^2+67/36*n^3-1/4*n*mfoldInd(n,2,0)-4/9*mfoldInd(n,3,0)-8/9*mfoldInd(n,3,1)",
    "binomial(n+2,2)",
    "binomial(2*n,n)",
    "factorial(2*n)/(n!)^2",
    "(n+1)^2*2^(n+1)/3^n",
    "pochhammer(1/2, n)/n!",
    "(n/2)!*mfoldInd(n,2,0)",
    "2^(n/3)*mfoldInd(n,3,0)",
    "(-1)^(n*3/2)*mfoldInd(n,4,2)",
    "mfoldInd(n+1,3,0)*n!",
    "mfoldInd(7,3,1)*n - mfoldInd(n,1,0)",
    "-2^n + (-2)^n",
    "(1/3)^(2*n+1) - n^3 + 2*n - 5",
    "(n+3)!/(n+1)!",
    "1/(n+1) + 2^n/(n+1)/(n+2)",
    "n!^2*(2*n+1)",
    "2^n*3^n",
    "(n+1)*mfoldInd(n,6,5) - mfoldInd(n,2,1)*n^2",
    "2^(2*n)*pochhammer(1/2,n)",
    "pochhammer(3/2,n/2)*mfoldInd(n,2,0)",
    "binomial(n/2+1,1)*mfoldInd(n,2,0)",
    "-(n - 1)*(n - 2)*((n+1)! - 3*n!) / 6",
    "+n − 4*mfoldInd(n - 2, 5, 0)",
];

#[test]
fn lowering_agrees_with_the_source_tree() {
    for text in CORPUS {
        let tree = parse_expr(text).unwrap();
        let lowered = parse_hts(text, "n").unwrap_or_else(|e| panic!("{text}: {e}"));
        for n in 0..=40u64 {
            let expected = interpret(&tree, n as i64).unwrap_or_else(|| panic!("{text} undefined at {n}"));
            assert_eq!(lowered.eval(n).unwrap(), expected, "{text} at n = {n}");
        }
    }
}

#[test]
fn text_rendering_round_trips() {
    let mut r = rng(11);
    for _ in 0..40 {
        let s = random_expr_with(&mut r, 2, 4).normalize().unwrap();
        let text = expr_text(&s, "n");
        let back = parse_hts(&text, "n").unwrap_or_else(|e| panic!("{text}: {e}"));
        assert!(hts_equal(&back, &s).unwrap(), "{text}");
        assert_eq!(expr_text(&back, "n"), text);
        // the variable name is only a spelling
        let k = parse_hts(&expr_text(&s, "k"), "k").unwrap();
        assert_eq!(expr_text(&k, "n"), text);
    }
    for text in CORPUS {
        let s = parse_hts(text, "n").unwrap();
        let printed = expr_text(&s, "n");
        assert_eq!(expr_text(&parse_hts(&printed, "n").unwrap(), "n"), printed, "{text}");
    }
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/hts.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

#[test]
fn json_documents_follow_the_schema() {
    let schema = schema();
    let mut r = rng(12);
    for _ in 0..40 {
        let s = random_expr_with(&mut r, 3, 4).normalize().unwrap();
        let json = expr_json(&s);
        let value: Value = serde_json::from_str(&json).unwrap();
        assert!(schema.is_valid(&value), "{json}");
        let back = expr_from_json(&json).unwrap();
        assert_eq!(expr_json(&back), json);
        assert!((0..=30).all(|n| back.eval(n).unwrap() == s.eval(n).unwrap()));
    }
    for _ in 0..20 {
        let op = hts_to_recurrence(&random_expr_with(&mut r, 1, 4)).unwrap();
        let json = operator_json(&op);
        assert!(schema.is_valid(&serde_json::from_str(&json).unwrap()), "{json}");
        assert_eq!(operator_from_json(&json).unwrap(), op);
    }
    for bad in [
        r#"{"components":7}"#,
        r#"{"order":1,"coeffs":[["1.5"],["1"]]}"#,
        r#"{"order":1,"coeffs":[["1"],["1"]],"extra":0}"#,
    ] {
        assert!(!schema.is_valid(&serde_json::from_str(bad).unwrap()), "{bad}");
        assert!(expr_from_json(bad).is_err() && operator_from_json(bad).is_err(), "{bad}");
    }
}

fn position(text: &str) -> (usize, usize) {
    let e = parse_expr(text).unwrap_err();
    (e.line, e.column)
}

#[test]
fn parse_errors_point_at_the_offending_token() {
    assert_eq!(position("n +"), (1, 4));
    assert_eq!(position("2^^n"), (1, 3));
    assert_eq!(position("(n + 1"), (1, 7));
    assert_eq!(position("n +\n  3 ) "), (2, 5));
    assert_eq!(position("n # 2"), (1, 3));
    assert_eq!(position("cos(n)"), (1, 1));
    assert_eq!(position("mfoldInd(n, 2)"), (1, 1));
    assert!(parse_expr_in("k + 1", "k").is_ok());
    assert_eq!(position("k + 1"), (1, 1));
}

#[test]
fn lowering_errors_are_classified() {
    let lower = |text: &str| match parse_hts(text, "n") {
        Err(Error::Lower(e)) => e,
        other => panic!("{text}: {other:?}"),
    };
    assert!(matches!(lower("2^(n^2)"), LowerError::NonAffineArgument(_)));
    assert!(matches!(lower("(n^2)!"), LowerError::NonAffineArgument(_)));
    assert!(matches!(lower("1/(n+2^n)"), LowerError::NonMonomialDivisor));
    assert!(matches!(lower("binomial(n,2)"), LowerError::SupportIntegrality(_)));
    assert!(matches!(lower("factorial(n/2)"), LowerError::SupportIntegrality(_)));
    assert!(matches!(lower("pochhammer(n+1,3)"), LowerError::Unsupported(_)));
}
