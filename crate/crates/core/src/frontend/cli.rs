//! The `hts` command line.

use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Parser, Subcommand};

use super::{read_expr, read_operator, render_expr, render_operator, Format, Function};
use crate::error::{Error, Result};
use crate::frontend::rational_text;
use crate::product::hts_product;
use crate::recurrence::{hts_equal, hts_to_recurrence, rec_verify_range};

#[derive(Parser, Debug)]
#[command(name = "hts", version, about = "Exact arithmetic on hypergeometric-type sequences")]
struct Cli {
    /// Name of the index variable.
    #[arg(long, global = true, default_value = "n", value_parser = parse_var)]
    var: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate at one index or over an inclusive range A..B.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, conflicts_with = "range", required_unless_present = "range")]
        at: Option<u64>,
        #[arg(long, value_parser = parse_range)]
        range: Option<RangeInclusive<u64>>,
    },
    /// Print a recurrence annihilating the expression.
    Rec {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Hadamard (termwise) product of two expressions.
    Prod {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Decide whether two expressions define the same sequence.
    Equal {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Print the normal form.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check a recurrence against an expression over an inclusive range A..B.
    VerifyRec {
        #[arg(long, allow_hyphen_values = true)]
        rec: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_range)]
        range: RangeInclusive<u64>,
    },
}

fn parse_var(s: &str) -> std::result::Result<String, String> {
    let mut chars = s.chars();
    let ok_start = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_');
    if !ok_start || !chars.all(|c| c.is_alphanumeric() || c == '_') {
        return Err(format!("'{s}' is not an identifier"));
    }
    if Function::lookup(s).is_some() {
        return Err(format!("'{s}' is a function name"));
    }
    Ok(s.to_string())
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<u64>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got '{s}'"))?;
    let a: u64 = a.trim().parse().map_err(|e| format!("bad range start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("bad range end: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Exit status of a command that ran to completion.
enum Verdict {
    Done,
    False,
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Verdict> {
    let var = cli.var.as_str();
    let io = |e: std::io::Error| Error::Domain(format!("write failed: {e}"));
    match &cli.command {
        Command::Eval { expr, at, range } => {
            let s = read_expr(expr, var)?;
            let indices = match (at, range) {
                (Some(n), _) => *n..=*n,
                (None, Some(r)) => r.clone(),
                (None, None) => unreachable!("clap requires one of --at and --range"),
            };
            for n in indices {
                writeln!(out, "{}", rational_text(&s.eval(n)?)).map_err(io)?;
            }
        }
        Command::Rec { expr } => {
            let op = hts_to_recurrence(&read_expr(expr, var)?)?;
            writeln!(out, "{}", render_operator(&op, cli.format, var)).map_err(io)?;
        }
        Command::Prod { first, second } => {
            let p = hts_product(&read_expr(first, var)?, &read_expr(second, var)?)?;
            writeln!(out, "{}", render_expr(&p, cli.format, var)).map_err(io)?;
        }
        Command::Equal { first, second } => {
            let eq = hts_equal(&read_expr(first, var)?, &read_expr(second, var)?)?;
            writeln!(out, "{eq}").map_err(io)?;
            if !eq {
                return Ok(Verdict::False);
            }
        }
        Command::Normalize { expr } => {
            let s = read_expr(expr, var)?;
            writeln!(out, "{}", render_expr(&s, cli.format, var)).map_err(io)?;
        }
        Command::VerifyRec { rec, expr, range } => {
            let op = read_operator(rec, var)?;
            let s = read_expr(expr, var)?;
            let ok = rec_verify_range(&op, &s, *range.start(), *range.end())?;
            writeln!(out, "{ok}").map_err(io)?;
            if !ok {
                return Ok(Verdict::False);
            }
        }
    }
    Ok(Verdict::Done)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code:
/// 0 success, 1 false verdict, 2 parse or lowering error, 3 evaluation error.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(Verdict::Done) => 0,
        Ok(Verdict::False) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                2
            } else {
                3
            }
        }
    }
}
