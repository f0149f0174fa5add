use std::fmt;

use super::{Arrangement, Multiplicity};
use crate::algebra::{HomPoly, Rational};
use crate::error::{Error, Result};

/// A homogeneous polynomial vector field `sum_i components[i] * d/dx_i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    components: Vec<HomPoly>,
}

impl Derivation {
    /// All nonzero components must share one degree.
    pub fn new(components: Vec<HomPoly>) -> Result<Derivation> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.num_vars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.num_vars(),
            });
        }
        let mut degrees = components.iter().filter_map(|c| c.degree());
        if let Some(d) = degrees.next() {
            if degrees.any(|e| e != d) {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(Derivation { components })
    }

    /// `sum_i x_i d/dx_i`.
    pub fn euler(dim: usize) -> Derivation {
        Derivation {
            components: (0..dim).map(|i| HomPoly::var(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[HomPoly] {
        &self.components
    }

    /// Polynomial degree, `None` for the zero derivation.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().find_map(|c| c.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// `theta(alpha)` for the linear form with coefficient vector `alpha`.
    pub fn apply(&self, alpha: &[Rational]) -> Result<HomPoly> {
        if alpha.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: alpha.len(),
            });
        }
        let mut acc = HomPoly::zero(self.dim());
        for (a, c) in alpha.iter().zip(&self.components) {
            acc = acc.try_add(&c.scale(a))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})*d/dx{}", i + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

/// Whether `theta(alpha_H)` is divisible by `alpha_H^{m(H)}` for every `H`.
pub fn is_member(theta: &Derivation, a: &Arrangement, m: &Multiplicity) -> Result<bool> {
    if theta.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: theta.dim(),
        });
    }
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    for (h, &mult) in a.hyperplanes().iter().zip(m.values()) {
        let alpha = h.rational_normal();
        let image = theta.apply(&alpha)?;
        if !image.divisible_by_power(&HomPoly::linear(&alpha), mult)? {
            return Ok(false);
        }
    }
    Ok(true)
}
