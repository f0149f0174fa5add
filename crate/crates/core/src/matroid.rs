//! Irreducible decomposition through connectivity of the linear matroid of
//! normals.
//!
//! Two hyperplanes lie in the same factor iff some circuit contains both.
//! Components are computed from fundamental circuits against a greedy
//! basis, using rank queries only: a basis element `b` lies in the
//! fundamental circuit of `e` iff swapping `b` for `e` keeps full rank.

use num_traits::Zero;

use crate::algebra::{rank_of_rows, Matrix, Rational};
use crate::arrangement::{Arrangement, Hyperplane};

/// Union-find over hyperplane indices.
struct Blocks {
    parent: Vec<usize>,
}

impl Blocks {
    fn new(n: usize) -> Self {
        Blocks {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = i;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Finest partition of the hyperplane indices along which rank is additive.
/// Blocks are sorted internally and ordered by smallest index.
pub fn connected_components(a: &Arrangement) -> Vec<Vec<usize>> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let normals = a.rational_normals();
    let dim = a.dim();
    let rank_of = |idx: &[usize]| {
        let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| normals[i].clone()).collect();
        rank_of_rows(dim, &rows)
    };

    let mut basis: Vec<usize> = Vec::new();
    for i in 0..n {
        basis.push(i);
        if rank_of(&basis) < basis.len() {
            basis.pop();
        }
    }
    let r = basis.len();

    let mut blocks = Blocks::new(n);
    for e in (0..n).filter(|e| !basis.contains(e)) {
        for pos in 0..r {
            let mut swapped = basis.clone();
            swapped[pos] = e;
            if rank_of(&swapped) == r {
                blocks.union(e, basis[pos]);
            }
        }
    }

    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let root = blocks.find(i);
        match root_slot[root] {
            Some(s) => out[s].push(i),
            None => {
                root_slot[root] = Some(out.len());
                out.push(vec![i]);
            }
        }
    }
    out
}

/// Irreducible means essential, nonempty and connected.
pub fn is_irreducible(a: &Arrangement) -> bool {
    !a.is_empty() && a.is_essential() && connected_components(a).len() == 1
}

/// One irreducible factor of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// The factor in its own coordinates; essential and irreducible.
    pub arrangement: Arrangement,
    /// Original hyperplane indices, ascending, aligned with `arrangement`.
    pub indices: Vec<usize>,
}

impl Factor {
    pub fn rank(&self) -> usize {
        self.arrangement.dim()
    }
}

/// `A ~ A_1 x ... x A_s x (empty arrangement in trivial_directions coordinates)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    pub trivial_directions: usize,
    /// Invertible `dim x dim` matrix. Rows are grouped by factor, then the
    /// trivial directions. A covector `c` of the product corresponds to
    /// `c * change_of_basis` in the original coordinates.
    pub change_of_basis: Matrix,
}

impl Decomposition {
    pub fn dim(&self) -> usize {
        self.change_of_basis.rows()
    }

    pub fn factor_ranks(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::rank).collect()
    }

    /// Number of hyperplanes in the decomposed arrangement.
    pub fn len(&self) -> usize {
        self.factors.iter().map(|f| f.indices.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Builds the product of the factors and the trivial directions, maps
    /// it back through `change_of_basis`, and returns the hyperplanes in
    /// original index order.
    pub fn reassemble(&self) -> Vec<Hyperplane> {
        let mut out: Vec<Option<Hyperplane>> = vec![None; self.len()];
        let mut offset = 0;
        for f in &self.factors {
            for (h, &orig) in f.arrangement.hyperplanes().iter().zip(&f.indices) {
                let mut c = vec![Rational::zero(); self.dim()];
                for (k, v) in h.rational_normal().into_iter().enumerate() {
                    c[offset + k] = v;
                }
                let back = self.change_of_basis.left_apply(&c);
                out[orig] = Some(Hyperplane::normalize(&back).expect("invertible change of basis"));
            }
            offset += f.rank();
        }
        out.into_iter()
            .map(|h| h.expect("factors cover all indices"))
            .collect()
    }
}

/// Splits `a` into irreducible factors ordered by smallest original index.
///
/// Each factor's coordinates come from the reduced echelon form of its
/// block's normals, so they are deterministic. Unit covectors complete the
/// change of basis over the trivial directions.
pub fn decompose(a: &Arrangement) -> Decomposition {
    let dim = a.dim();
    let mut factors = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for block in connected_components(a) {
        let sub = a.subarrangement(&block).expect("block indices are valid");
        let ech = sub.normal_matrix().echelon();
        let hyperplanes = sub
            .hyperplanes()
            .iter()
            .map(|h| {
                let coords: Vec<Rational> = ech
                    .pivots
                    .iter()
                    .map(|&p| Rational::from_integer(h.normal()[p].clone()))
                    .collect();
                Hyperplane::normalize(&coords).expect("nonzero on its own span")
            })
            .collect();
        for i in 0..ech.pivots.len() {
            rows.push(ech.matrix.row(i).to_vec());
        }
        factors.push(Factor {
            arrangement: Arrangement::new(ech.pivots.len(), hyperplanes)
                .expect("distinct normals stay distinct on their span"),
            indices: block,
        });
    }
    let factor_rank = rows.len();
    for j in 0..dim {
        if rows.len() == dim {
            break;
        }
        let mut unit = vec![Rational::zero(); dim];
        unit[j] = Rational::from_integer(1.into());
        rows.push(unit);
        if rank_of_rows(dim, &rows) < rows.len() {
            rows.pop();
        }
    }
    Decomposition {
        factors,
        trivial_directions: dim - factor_rank,
        change_of_basis: Matrix::from_rows(dim, &rows),
    }
}
