//! Expression language, printers and the command-line interface.

mod ast;
pub mod cli;
mod json;
mod lower;
mod parser;
mod recspec;
mod render;

pub use ast::{Function, SourceExpr};
pub use json::{
    expr_doc, expr_from_doc, expr_from_json, expr_json, operator_doc, operator_from_doc, operator_from_json,
    operator_json, ComponentDoc, ExprDoc, FactorialDoc, MonomialDoc, OperatorDoc, PochhammerDoc, PowerDoc,
};
pub use lower::{lower_expr, parse_hts};
pub use parser::{parse_expr, parse_expr_in};
pub use recspec::parse_recurrence;
pub use render::{expr_latex, expr_text, operator_latex, operator_text, rational_text};

use crate::hyperterm::HtsExpr;
use crate::recurrence::RecOperator;

/// Output format of the printers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

pub fn render_expr(s: &HtsExpr, format: Format, var: &str) -> String {
    match format {
        Format::Text => expr_text(s, var),
        Format::Latex => expr_latex(s, var),
        Format::Json => expr_json(s),
    }
}

pub fn render_operator(op: &RecOperator, format: Format, var: &str) -> String {
    match format {
        Format::Text => operator_text(op, var),
        Format::Latex => operator_latex(op, var),
        Format::Json => operator_json(op),
    }
}

/// Reads an expression given either as source text or as a JSON document.
pub fn read_expr(input: &str, var: &str) -> crate::Result<HtsExpr> {
    if input.trim_start().starts_with('{') {
        expr_from_json(input)?.normalize()
    } else {
        parse_hts(input, var)
    }
}

/// Reads an operator given either as a recurrence or as a JSON document.
pub fn read_operator(input: &str, var: &str) -> crate::Result<RecOperator> {
    if input.trim_start().starts_with('{') {
        operator_from_json(input)
    } else {
        parse_recurrence(input, var)
    }
}
