//! Named arrangement families for test corpora.
//!
//! ```text
//! family := boolean L | braid L | generic N L | product FAMILY FAMILY... | ( family )
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{boolean, braid, product, Arrangement, Hyperplane};

use super::CliError;

fn tokenize(args: &[String]) -> Vec<String> {
    let joined = args.join(" ");
    let spaced = joined.replace('(', " ( ").replace(')', " ) ");
    spaced.split_whitespace().map(str::to_string).collect()
}

struct FamilyParser<'a> {
    tokens: &'a [String],
    pos: usize,
    seed: Option<u64>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl FamilyParser<'_> {
    fn next(&mut self) -> Option<&str> {
        let t = self.tokens.get(self.pos).map(String::as_str);
        self.pos += 1;
        t
    }

    fn number(&mut self, what: &str) -> Result<usize, CliError> {
        let t = self
            .next()
            .ok_or_else(|| invalid(format!("missing {what}")))?;
        t.parse()
            .map_err(|_| invalid(format!("invalid {what} '{t}'")))
    }

    fn family(&mut self) -> Result<Arrangement, CliError> {
        let name = self
            .next()
            .ok_or_else(|| invalid("missing family name"))?
            .to_string();
        match name.as_str() {
            "(" => {
                let inner = self.family()?;
                match self.next() {
                    Some(")") => Ok(inner),
                    _ => Err(invalid("unbalanced parentheses")),
                }
            }
            "boolean" => Ok(boolean(self.number("dimension")?)),
            "braid" => Ok(braid(self.number("dimension")?)),
            "generic" => {
                let n = self.number("hyperplane count")?;
                let l = self.number("dimension")?;
                let seed = self
                    .seed
                    .ok_or_else(|| invalid("the generic family needs --seed"))?;
                generic(n, l, seed)
            }
            "product" => {
                let mut acc = self.family()?;
                while self.tokens.get(self.pos).is_some_and(|t| t != ")") {
                    acc = product(&acc, &self.family()?);
                }
                Ok(acc)
            }
            other => Err(invalid(format!("unknown family '{other}'"))),
        }
    }
}

/// Parses and builds a family description such as
/// `product (braid 3) (boolean 1)`.
pub fn generate(args: &[String], seed: Option<u64>) -> Result<Arrangement, CliError> {
    let tokens = tokenize(args);
    let mut parser = FamilyParser {
        tokens: &tokens,
        pos: 0,
        seed,
    };
    let a = parser.family()?;
    if parser.pos < tokens.len() {
        return Err(invalid(format!("unexpected '{}'", tokens[parser.pos])));
    }
    Ok(a)
}

/// `n` random integer hyperplanes in dimension `l` such that every pair has
/// rank `min(2, l)` and every triple rank `min(3, l)`.
pub fn generic(n: usize, l: usize, seed: u64) -> Result<Arrangement, CliError> {
    const ATTEMPTS: usize = 100_000;
    if l == 0 && n > 0 {
        return Err(invalid("no hyperplanes exist in dimension 0"));
    }
    if l == 1 && n > 1 {
        return Err(invalid("dimension 1 holds at most one hyperplane"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<Hyperplane> = Vec::with_capacity(n);
    let mut probe = Arrangement::empty(l);
    for _ in 0..ATTEMPTS {
        if chosen.len() == n {
            break;
        }
        let v: Vec<i64> = (0..l).map(|_| rng.gen_range(-5..=5)).collect();
        let Ok(h) = Hyperplane::from_ints(&v) else {
            continue;
        };
        if chosen.contains(&h) {
            continue;
        }
        let mut candidate = chosen.clone();
        candidate.push(h);
        let arr = Arrangement::new(l, candidate.clone()).expect("distinct");
        let last = candidate.len() - 1;
        let pairs_ok = (0..last).all(|i| arr.rank_of(&[i, last]) == l.min(2));
        let triples_ok = pairs_ok
            && (0..last).all(|i| (i + 1..last).all(|j| arr.rank_of(&[i, j, last]) == l.min(3)));
        if triples_ok {
            chosen = candidate;
            probe = arr;
        }
    }
    if chosen.len() < n {
        return Err(invalid(format!(
            "could not place {n} generic hyperplanes in dimension {l}"
        )));
    }
    Ok(probe)
}
