//! Line-oriented arrangement files.
//!
//! ```text
//! # comments start with '#'
//! dim 4
//! hyperplane 1 -1 0 0 mult 2
//! hyperplane 0 0 1 -1
//! ```

use std::fmt::Write;

use thiserror::Error;

use super::{Arrangement, Hyperplane, Multiplicity};
use crate::algebra::parse_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedArrangement {
    pub arrangement: Arrangement,
    pub multiplicity: Multiplicity,
    /// 1-based source line of each hyperplane.
    pub lines: Vec<usize>,
}

pub fn parse_arrangement(text: &str) -> Result<ParsedArrangement, ParseError> {
    let mut dim: Option<usize> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut mults = Vec::new();
    let mut lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("dim") => {
                if dim.is_some() {
                    return Err(err(lineno, "repeated 'dim' line"));
                }
                let value = tokens
                    .next()
                    .ok_or_else(|| err(lineno, "'dim' needs a value"))?;
                let d: usize = value
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid dimension '{value}'")))?;
                if let Some(extra) = tokens.next() {
                    return Err(err(lineno, format!("unexpected token '{extra}'")));
                }
                dim = Some(d);
            }
            Some("hyperplane") => {
                let d = dim.ok_or_else(|| err(lineno, "'hyperplane' before 'dim'"))?;
                let rest: Vec<&str> = tokens.collect();
                let (coeff_tokens, mult) = match rest.iter().position(|t| *t == "mult") {
                    Some(p) => {
                        if rest.len() != p + 2 {
                            return Err(err(lineno, "'mult' takes exactly one value"));
                        }
                        let k: u32 = rest[p + 1].parse().map_err(|_| {
                            err(lineno, format!("invalid multiplicity '{}'", rest[p + 1]))
                        })?;
                        if k == 0 {
                            return Err(err(lineno, "multiplicity must be positive"));
                        }
                        (&rest[..p], k)
                    }
                    None => (&rest[..], 1),
                };
                if coeff_tokens.len() != d {
                    return Err(err(
                        lineno,
                        format!("expected {d} coefficients, found {}", coeff_tokens.len()),
                    ));
                }
                let coeffs = coeff_tokens
                    .iter()
                    .map(|t| {
                        parse_rational(t)
                            .ok_or_else(|| err(lineno, format!("invalid coefficient '{t}'")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let h = Hyperplane::normalize(&coeffs)
                    .map_err(|_| err(lineno, "zero normal does not define a hyperplane"))?;
                if let Some(prev) = hyperplanes.iter().position(|g| *g == h) {
                    return Err(err(
                        lineno,
                        format!(
                            "duplicate hyperplane: line {lineno} defines the same hyperplane as line {}",
                            lines[prev]
                        ),
                    ));
                }
                hyperplanes.push(h);
                mults.push(mult);
                lines.push(lineno);
            }
            Some(other) => return Err(err(lineno, format!("unknown directive '{other}'"))),
            None => unreachable!(),
        }
    }

    let dim = dim.ok_or_else(|| err(text.lines().count().max(1), "missing 'dim' line"))?;
    let arrangement = Arrangement::new(dim, hyperplanes).map_err(|e| err(0, e.to_string()))?;
    let multiplicity = Multiplicity::new(mults).map_err(|e| err(0, e.to_string()))?;
    Ok(ParsedArrangement {
        arrangement,
        multiplicity,
        lines,
    })
}

/// Inverse of [`parse_arrangement`]; `mult` is written only when not 1.
pub fn format_arrangement(a: &Arrangement, m: Option<&Multiplicity>) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", a.dim()).unwrap();
    for (i, h) in a.hyperplanes().iter().enumerate() {
        out.push_str("hyperplane");
        for c in h.normal() {
            write!(out, " {c}").unwrap();
        }
        if let Some(k) = m.map(|m| m.values()[i]).filter(|&k| k != 1) {
            write!(out, " mult {k}").unwrap();
        }
        out.push('\n');
    }
    out
}
