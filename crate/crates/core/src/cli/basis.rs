//! Basis files: one derivation per block, blocks separated by blank lines.
//!
//! ```text
//! # theta_E
//! component 1: x1
//! component 2: x2
//!
//! component 1: x1^2
//! component 2: x2^2
//! ```
//!
//! Components are 1-based and default to zero. Polynomials use variables
//! `x1..xl`, integer or `p/q` coefficients, `+ - * ^` and parentheses, and
//! must be homogeneous.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::poly::Exponents;
use crate::algebra::{parse_rational, HomPoly, Rational};
use crate::arrangement::Derivation;

use super::CliError;

/// Inhomogeneous polynomial used while parsing.
type Sparse = BTreeMap<Exponents, Rational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    num_vars: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!(
                "expected '{}' at column {}",
                c as char,
                self.pos + 1
            ))
        }
    }

    fn expr(&mut self) -> Result<Sparse, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                negate(self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = add(acc, self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = add(acc, negate(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse, String> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = mul(&acc, &self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Sparse, String> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let k = self.digits()?;
        let k: u32 = k.parse().map_err(|_| format!("invalid exponent '{k}'"))?;
        let mut acc = constant(self.num_vars, Rational::one());
        for _ in 0..k {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Result<String, String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected a number at column {}", start + 1));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Sparse, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.digits()?;
                let i: usize = idx
                    .parse()
                    .map_err(|_| format!("invalid variable 'x{idx}'"))?;
                if i == 0 || i > self.num_vars {
                    return Err(format!("variable x{i} outside x1..x{}", self.num_vars));
                }
                let mut e = vec![0; self.num_vars];
                e[i - 1] = 1;
                Ok(BTreeMap::from([(e, Rational::one())]))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut text = self.digits()?;
                // A '/' directly after digits makes a rational literal.
                if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    text.push('/');
                    text.push_str(&self.digits()?);
                }
                let c = parse_rational(&text).ok_or_else(|| format!("invalid number '{text}'"))?;
                Ok(constant(self.num_vars, c))
            }
            Some(c) => Err(format!(
                "unexpected '{}' at column {}",
                c as char,
                self.pos + 1
            )),
            None => Err("unexpected end of polynomial".into()),
        }
    }
}

fn constant(num_vars: usize, c: Rational) -> Sparse {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(vec![0; num_vars], c);
    }
    m
}

fn negate(p: Sparse) -> Sparse {
    p.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn add(mut a: Sparse, b: Sparse) -> Sparse {
    for (e, c) in b {
        *a.entry(e).or_insert_with(Rational::zero) += c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Parses a homogeneous polynomial in `x1..x{num_vars}`.
pub fn parse_polynomial(text: &str, num_vars: usize) -> Result<HomPoly, String> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        num_vars,
    };
    let sparse = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(format!(
            "unexpected '{}' at column {}",
            c as char,
            p.pos + 1
        ));
    }
    HomPoly::from_terms(num_vars, sparse).map_err(|_| "polynomial is not homogeneous".to_string())
}

/// Parses a basis file for an ambient space of dimension `dim`.
pub fn parse_basis(text: &str, dim: usize) -> Result<Vec<Derivation>, CliError> {
    let bad = |line: usize, msg: String| CliError::Input(format!("basis file line {line}: {msg}"));
    let mut blocks: Vec<Vec<(usize, usize, HomPoly)>> = Vec::new();
    let mut current: Vec<(usize, usize, HomPoly)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
            continue;
        }
        let rest = content
            .strip_prefix("component")
            .ok_or_else(|| bad(lineno, "expected 'component i: <polynomial>'".into()))?;
        let (index, poly) = rest
            .split_once(':')
            .ok_or_else(|| bad(lineno, "missing ':'".into()))?;
        let i: usize = index.trim().parse().map_err(|_| {
            bad(
                lineno,
                format!("invalid component index '{}'", index.trim()),
            )
        })?;
        if i == 0 || i > dim {
            return Err(bad(lineno, format!("component {i} outside 1..{dim}")));
        }
        if current.iter().any(|(_, j, _)| *j == i) {
            return Err(bad(lineno, format!("component {i} given twice")));
        }
        let p = parse_polynomial(poly, dim).map_err(|e| bad(lineno, e))?;
        current.push((lineno, i, p));
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    blocks
        .into_iter()
        .map(|block| {
            let first_line = block[0].0;
            let mut comps = vec![HomPoly::zero(dim); dim];
            for (_, i, p) in block {
                comps[i - 1] = p;
            }
            Derivation::new(comps)
                .map_err(|e| bad(first_line, format!("derivation starting here: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn parses_polynomials() {
        let p = parse_polynomial("x1^2 - 3/2*x1*x2", 2).unwrap();
        assert_eq!(p.coeff(&[2, 0]), int(1));
        assert_eq!(p.coeff(&[1, 1]), Rational::new((-3).into(), 2.into()));

        let p = parse_polynomial("(x1 - x2)^2", 2).unwrap();
        assert_eq!(p.coeff(&[1, 1]), int(-2));

        let p = parse_polynomial("-x1*x2 + x2*x1", 2).unwrap();
        assert!(p.is_zero());
        assert!(parse_polynomial("0", 3).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(parse_polynomial("x1 + 1", 2).is_err());
        assert!(parse_polynomial("x3", 2).is_err());
        assert!(parse_polynomial("x0", 2).is_err());
        assert!(parse_polynomial("x1 +", 2).is_err());
        assert!(parse_polynomial("(x1", 2).is_err());
        assert!(parse_polynomial("x1 x2", 2).is_err());
        assert!(parse_polynomial("y", 2).is_err());
    }

    #[test]
    fn parses_blocks() {
        let text =
            "# euler\ncomponent 1: x1\ncomponent 2: x2\n\n\ncomponent 2: x2^2\ncomponent 1: x1^2\n";
        let b = parse_basis(text, 2).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0], Derivation::euler(2));
        assert_eq!(b[1].degree(), Some(2));
    }

    #[test]
    fn block_errors_name_lines() {
        let e = parse_basis("component 1: x1\ncomponent 2: x2^2\n", 2).unwrap_err();
        assert!(e.to_string().contains("line 1"), "{e}");
        let e = parse_basis("component 3: x1\n", 2).unwrap_err();
        assert!(e.to_string().contains("line 1"));
        let e = parse_basis("comp 1: x1\n", 2).unwrap_err();
        assert!(e.to_string().contains("expected"));
        let e = parse_basis("component 1: x1\ncomponent 1: x2\n", 2).unwrap_err();
        assert!(e.to_string().contains("twice"));
    }
}
