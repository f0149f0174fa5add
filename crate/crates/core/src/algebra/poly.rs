use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Sparse homogeneous polynomial with rational coefficients.
///
/// Every stored exponent vector sums to `degree`. The zero polynomial has no
/// terms; its `degree` field is only a marker and [`HomPoly::degree`] reports
/// `None` for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Exponents, Rational>,
}

impl HomPoly {
    pub fn zero(num_vars: usize) -> Self {
        HomPoly {
            num_vars,
            degree: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; num_vars], c);
        }
        p
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, Rational::one())
    }

    /// The variable `x_i` (zero-based).
    pub fn var(num_vars: usize, i: usize) -> Self {
        assert!(i < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Exponents, c: Rational) -> Self {
        let num_vars = exps.len();
        let degree = exps.iter().sum();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        HomPoly {
            num_vars,
            degree,
            terms,
        }
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                terms.insert(e, c.clone());
            }
        }
        HomPoly {
            num_vars: n,
            degree: 1,
            terms,
        }
    }

    /// Collects terms, merging repeated monomials. Fails if the surviving
    /// terms have different total degrees.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut map: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: e.len(),
                });
            }
            *map.entry(e).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(|e| e.iter().sum::<u32>());
        let degree = degrees.next().unwrap_or(0);
        if degrees.any(|d| d != degree) {
            return Err(Error::Inhomogeneous);
        }
        Ok(HomPoly {
            num_vars,
            degree,
            terms: map,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        (!self.is_zero()).then_some(self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Exponents, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Coefficient vector of a linear form; `None` if not linear.
    pub fn linear_coeffs(&self) -> Option<Vec<Rational>> {
        if self.is_zero() || self.degree != 1 {
            return None;
        }
        let mut out = vec![Rational::zero(); self.num_vars];
        for (e, c) in &self.terms {
            let i = e.iter().position(|&v| v == 1)?;
            out[i] = c.clone();
        }
        Some(out)
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        if c.is_zero() {
            return HomPoly::zero(self.num_vars);
        }
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> HomPoly {
        self.scale(&-Rational::one())
    }

    /// Sum, failing if both operands are nonzero with different degrees.
    pub fn try_add(&self, other: &HomPoly) -> Result<HomPoly> {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::Inhomogeneous);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(Rational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Ok(HomPoly {
            num_vars: self.num_vars,
            degree: self.degree,
            terms,
        })
    }

    pub fn try_sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.try_add(&other.neg())
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        if self.is_zero() || other.is_zero() {
            return HomPoly::zero(self.num_vars);
        }
        let mut terms: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomPoly {
            num_vars: self.num_vars,
            degree: self.degree + other.degree,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = HomPoly::one(self.num_vars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(
            point.len(),
            self.num_vars,
            "evaluation point has wrong length"
        );
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Substitutes `x_i := forms[i]`; the forms must be linear (or zero)
    /// in a common number of variables.
    pub fn substitute_linear(&self, forms: &[HomPoly]) -> HomPoly {
        assert_eq!(forms.len(), self.num_vars, "one form per variable required");
        let target_vars = forms.first().map_or(0, |f| f.num_vars);
        if self.is_zero() {
            return HomPoly::zero(target_vars);
        }
        let max_exp = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0);
        let powers: Vec<Vec<HomPoly>> = forms
            .iter()
            .map(|f| {
                let mut ps = vec![HomPoly::one(target_vars)];
                for k in 1..=max_exp as usize {
                    let next = ps[k - 1].mul(f);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc: BTreeMap<Exponents, Rational> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut prod = HomPoly::constant(target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    prod = prod.mul(&powers[i][k as usize]);
                }
            }
            for (pe, pc) in prod.terms {
                *acc.entry(pe).or_insert_with(Rational::zero) += pc;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        HomPoly {
            num_vars: target_vars,
            degree: self.degree,
            terms: acc,
        }
    }

    /// Coefficients that must vanish for `alpha^m` to divide `self`.
    ///
    /// Changes variables so that `alpha` becomes the coordinate at its first
    /// nonzero position `p` (`x_p := (y_p - sum_{q != p} a_q y_q) / a_p`,
    /// `x_q := y_q`), then returns every monomial whose `y_p` exponent is
    /// below `m`. The empty map means divisible.
    pub fn divisibility_residue(
        &self,
        alpha: &[Rational],
        m: u32,
    ) -> Result<BTreeMap<Exponents, Rational>> {
        if alpha.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: alpha.len(),
            });
        }
        let p = alpha
            .iter()
            .position(|a| !a.is_zero())
            .ok_or(Error::BadLinearForm)?;
        let forms = alpha_coordinate_forms(alpha, p);
        let moved = self.substitute_linear(&forms);
        Ok(moved.terms.into_iter().filter(|(e, _)| e[p] < m).collect())
    }

    /// Whether `alpha^m` divides `self`. The zero polynomial is divisible by
    /// everything.
    pub fn divisible_by_power(&self, alpha: &HomPoly, m: u32) -> Result<bool> {
        let coeffs = alpha.linear_coeffs().ok_or(Error::BadLinearForm)?;
        if self.is_zero() {
            return Ok(true);
        }
        if m > self.degree {
            return Ok(false);
        }
        Ok(self.divisibility_residue(&coeffs, m)?.is_empty())
    }

    /// Formats with variable names `x1, x2, ...`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", mag, mono.join("*")));
            }
        }
        out
    }
}

/// Linear substitution that turns `alpha` into the coordinate `y_p`.
fn alpha_coordinate_forms(alpha: &[Rational], p: usize) -> Vec<HomPoly> {
    let n = alpha.len();
    let inv = alpha[p].recip();
    (0..n)
        .map(|i| {
            if i != p {
                return HomPoly::var(n, i);
            }
            let coeffs: Vec<Rational> = (0..n)
                .map(|q| {
                    if q == p {
                        inv.clone()
                    } else {
                        -(&alpha[q] * &inv)
                    }
                })
                .collect();
            HomPoly::linear(&coeffs)
        })
        .collect()
}

pub fn default_var_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.num_vars)))
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly({self})")
    }
}

/// Determinant of a square matrix of homogeneous polynomials by cofactor
/// expansion along the first row. Fails if the expansion mixes degrees.
pub fn poly_det(m: &[Vec<HomPoly>], num_vars: usize) -> Result<HomPoly> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, num_vars)
}

fn det_rec(m: &[Vec<HomPoly>], row: usize, cols: &[usize], num_vars: usize) -> Result<HomPoly> {
    if cols.is_empty() {
        return Ok(HomPoly::one(num_vars));
    }
    let mut acc = HomPoly::zero(num_vars);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest, num_vars)?;
        let term = entry.mul(&minor);
        acc = if k % 2 == 0 {
            acc.try_add(&term)?
        } else {
            acc.try_sub(&term)?
        };
    }
    Ok(acc)
}
