//! Central hyperplane arrangements and multiarrangements over the rationals.

mod derivation;
mod flats;
mod text;

pub use derivation::{is_member, Derivation};
pub use flats::{localization, rank2_flats, Flat2};
pub use text::{format_arrangement, parse_arrangement, ParseError, ParsedArrangement};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rank_of_rows, Matrix, Rational};
use crate::error::{Error, Result};

/// A linear hyperplane `ker(alpha)` stored by its canonical normal: a
/// primitive integer covector whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
}

impl Hyperplane {
    /// Clears denominators, divides by the gcd and fixes the sign.
    pub fn normalize(coeffs: &[Rational]) -> Result<Hyperplane> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroNormal);
        }
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        Ok(Self::from_integers(ints))
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Hyperplane> {
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::ZeroNormal);
        }
        Ok(Self::from_integers(
            coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        ))
    }

    fn from_integers(mut ints: Vec<BigInt>) -> Hyperplane {
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let lead_negative = ints
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative());
        for v in ints.iter_mut() {
            *v = &*v / &g;
            if lead_negative {
                *v = -&*v;
            }
        }
        Hyperplane { normal: ints }
    }

    pub fn normal(&self) -> &[BigInt] {
        &self.normal
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn rational_normal(&self) -> Vec<Rational> {
        self.normal
            .iter()
            .map(|v| Rational::from_integer(v.clone()))
            .collect()
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.normal.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An ordered, duplicate-free list of hyperplanes in a space of dimension
/// `dim`. The empty arrangement and `dim == 0` are both legal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: h.dim(),
                });
            }
        }
        for (j, h) in hyperplanes.iter().enumerate() {
            if let Some(i) = hyperplanes[..j].iter().position(|g| g == h) {
                return Err(Error::DuplicateHyperplane {
                    first: i,
                    second: j,
                });
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn empty(dim: usize) -> Arrangement {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    /// Convenience constructor from integer normals.
    pub fn from_int_normals(dim: usize, normals: &[Vec<i64>]) -> Result<Arrangement> {
        let hs = normals
            .iter()
            .map(|n| Hyperplane::from_ints(n))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(dim, hs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn rational_normals(&self) -> Vec<Vec<Rational>> {
        self.hyperplanes
            .iter()
            .map(|h| h.rational_normal())
            .collect()
    }

    pub fn normal_matrix(&self) -> Matrix {
        Matrix::from_rows(self.dim, &self.rational_normals())
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.dim, &self.rational_normals())
    }

    /// Rank of the normals selected by `indices`.
    pub fn rank_of(&self, indices: &[usize]) -> usize {
        let rows: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| self.hyperplanes[i].rational_normal())
            .collect();
        rank_of_rows(self.dim, &rows)
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Sub-arrangement on the given indices, in the given order.
    pub fn subarrangement(&self, indices: &[usize]) -> Result<Arrangement> {
        let hs = indices
            .iter()
            .map(|&i| {
                self.hyperplanes
                    .get(i)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange {
                        index: i,
                        len: self.len(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hs)
    }

    /// Pulls every normal back along the coordinate change `x = T y`,
    /// i.e. replaces the covector `a` by `a T`.
    pub fn transform(&self, t: &Matrix) -> Result<Arrangement> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.rows(),
            });
        }
        let hs = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane::normalize(&t.left_apply(&h.rational_normal())))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.dim, hs)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }
}

/// Positive integer multiplicities aligned with an arrangement's order.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Multiplicity(Vec<u32>);

impl Multiplicity {
    pub fn new(values: Vec<u32>) -> Result<Multiplicity> {
        if let Some(index) = values.iter().position(|&v| v == 0) {
            return Err(Error::ZeroMultiplicity { index });
        }
        Ok(Multiplicity(values))
    }

    pub fn ones(n: usize) -> Multiplicity {
        Multiplicity(vec![1; n])
    }

    pub fn for_arrangement(a: &Arrangement, values: Vec<u32>) -> Result<Multiplicity> {
        if values.len() != a.len() {
            return Err(Error::MultiplicityLength {
                expected: a.len(),
                got: values.len(),
            });
        }
        Multiplicity::new(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&v| v as u64).sum()
    }

    pub fn restrict(&self, indices: &[usize]) -> Multiplicity {
        Multiplicity(indices.iter().map(|&i| self.0[i]).collect())
    }
}

/// An arrangement with a multiplicity on each hyperplane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiArrangement {
    pub arrangement: Arrangement,
    pub multiplicity: Multiplicity,
}

impl MultiArrangement {
    pub fn new(arrangement: Arrangement, multiplicity: Multiplicity) -> Result<Self> {
        if multiplicity.len() != arrangement.len() {
            return Err(Error::MultiplicityLength {
                expected: arrangement.len(),
                got: multiplicity.len(),
            });
        }
        Ok(MultiArrangement {
            arrangement,
            multiplicity,
        })
    }

    pub fn simple(arrangement: Arrangement) -> Self {
        let multiplicity = Multiplicity::ones(arrangement.len());
        MultiArrangement {
            arrangement,
            multiplicity,
        }
    }
}

/// Result of [`essentialize`].
#[derive(Clone, Debug)]
pub struct Essentialization {
    pub arrangement: Arrangement,
    /// `rank x dim` matrix; a covector `c` in the new coordinates corresponds
    /// to the covector `c * basis` in the old ones.
    pub basis: Matrix,
    /// Coordinates of the old space that carry the new ones.
    pub pivots: Vec<usize>,
    pub trivial_directions: usize,
}

/// Re-expresses the normals in a basis of their span.
///
/// The basis is the reduced row echelon form of the normal matrix, so a
/// normal's new coordinates are simply its entries at the pivot columns. An
/// essential arrangement comes back unchanged with the identity basis.
pub fn essentialize(a: &Arrangement) -> Essentialization {
    let ech = a.normal_matrix().echelon();
    let r = ech.pivots.len();
    let basis_rows: Vec<Vec<Rational>> = (0..r).map(|i| ech.matrix.row(i).to_vec()).collect();
    let basis = Matrix::from_rows(a.dim(), &basis_rows);
    let hyperplanes = a
        .hyperplanes()
        .iter()
        .map(|h| {
            let coords: Vec<Rational> = ech
                .pivots
                .iter()
                .map(|&p| Rational::from_integer(h.normal()[p].clone()))
                .collect();
            Hyperplane::normalize(&coords).expect("projection of a nonzero normal onto pivots")
        })
        .collect();
    Essentialization {
        arrangement: Arrangement {
            dim: r,
            hyperplanes,
        },
        basis,
        pivots: ech.pivots,
        trivial_directions: a.dim() - r,
    }
}

/// Removes hyperplane `h`.
pub fn deletion(a: &Arrangement, h: usize) -> Result<Arrangement> {
    a.check_index(h)?;
    let mut hs = a.hyperplanes.clone();
    hs.remove(h);
    Ok(Arrangement {
        dim: a.dim,
        hyperplanes: hs,
    })
}

/// Result of [`restriction`].
#[derive(Clone, Debug)]
pub struct Restriction {
    pub arrangement: Arrangement,
    /// Integer basis of the hyperplane, as vectors of the ambient space.
    pub basis: Vec<Vec<BigInt>>,
    /// Image index of each original hyperplane; `None` for the one
    /// restricted to.
    pub index_map: Vec<Option<usize>>,
}

impl Restriction {
    /// Original indices mapping to image `j`, ascending.
    pub fn preimages(&self, j: usize) -> Vec<usize> {
        self.index_map
            .iter()
            .enumerate()
            .filter(|(_, img)| **img == Some(j))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Integer basis of `ker(normal)`: with `p` the first nonzero position,
/// the vectors `normal[p] e_j - normal[j] e_p` for `j != p`, made primitive.
pub fn hyperplane_basis(normal: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = normal.len();
    let Some(p) = normal.iter().position(|v| !v.is_zero()) else {
        return Vec::new();
    };
    (0..n)
        .filter(|&j| j != p)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = normal[p].clone();
            v[p] = -normal[j].clone();
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            v.iter().map(|x| x / &g).collect()
        })
        .collect()
}

/// Restricts every other hyperplane to `H_{h0}` and merges equal images.
/// Images are numbered in order of their smallest preimage.
pub fn restriction(a: &Arrangement, h0: usize) -> Result<Restriction> {
    a.check_index(h0)?;
    let basis = hyperplane_basis(a.hyperplanes[h0].normal());
    let mut images: Vec<Hyperplane> = Vec::new();
    let mut index_map = vec![None; a.len()];
    for (i, h) in a.hyperplanes.iter().enumerate() {
        if i == h0 {
            continue;
        }
        let coords: Vec<Rational> = basis
            .iter()
            .map(|b| {
                let dot: BigInt = h.normal().iter().zip(b).map(|(x, y)| x * y).sum();
                Rational::from_integer(dot)
            })
            .collect();
        // Nonzero because h is not parallel to H_{h0}.
        let img = Hyperplane::normalize(&coords)
            .map_err(|_| Error::InternalInvariant(format!("hyperplane {i} is parallel to {h0}")))?;
        let j = match images.iter().position(|g| *g == img) {
            Some(j) => j,
            None => {
                images.push(img);
                images.len() - 1
            }
        };
        index_map[i] = Some(j);
    }
    Ok(Restriction {
        arrangement: Arrangement {
            dim: a.dim.saturating_sub(1),
            hyperplanes: images,
        },
        basis,
        index_map,
    })
}

/// `A1 x A2` in the direct sum of the two ambient spaces.
pub fn product(a1: &Arrangement, a2: &Arrangement) -> Arrangement {
    let dim = a1.dim + a2.dim;
    let pad = |h: &Hyperplane, left: usize, right: usize| {
        let mut v = vec![BigInt::zero(); left];
        v.extend(h.normal().iter().cloned());
        v.extend(std::iter::repeat_n(BigInt::zero(), right));
        Hyperplane { normal: v }
    };
    let mut hs: Vec<Hyperplane> = a1.hyperplanes.iter().map(|h| pad(h, 0, a2.dim)).collect();
    hs.extend(a2.hyperplanes.iter().map(|h| pad(h, a1.dim, 0)));
    Arrangement {
        dim,
        hyperplanes: hs,
    }
}

/// Hyperplanes `x_i - x_j`, `i < j`, in dimension `l`.
pub fn braid(l: usize) -> Arrangement {
    let mut hs = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            let mut v = vec![BigInt::zero(); l];
            v[i] = BigInt::one();
            v[j] = -BigInt::one();
            hs.push(Hyperplane { normal: v });
        }
    }
    Arrangement {
        dim: l,
        hyperplanes: hs,
    }
}

/// Coordinate hyperplanes `x_1, ..., x_l`.
pub fn boolean(l: usize) -> Arrangement {
    let hs = (0..l)
        .map(|i| {
            let mut v = vec![BigInt::zero(); l];
            v[i] = BigInt::one();
            Hyperplane { normal: v }
        })
        .collect();
    Arrangement {
        dim: l,
        hyperplanes: hs,
    }
}
