use num_traits::Zero;

use super::{Arrangement, Hyperplane, MultiArrangement, Multiplicity};
use crate::algebra::{rank_of_rows, Rational};
use crate::error::{Error, Result};

/// A codimension-2 flat, recorded as the set of hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat2 {
    /// Ascending hyperplane indices.
    pub members: Vec<usize>,
    /// Two member normals spanning the flat's conormal plane.
    pub span_basis: [Vec<Rational>; 2],
}

fn in_span(a: &[Rational], b: &[Rational], c: &[Rational]) -> bool {
    rank_of_rows(a.len(), &[a.to_vec(), b.to_vec(), c.to_vec()]) <= 2
}

/// All closed rank-2 flats, ordered by their two smallest members.
///
/// Each pair of hyperplanes with independent normals belongs to exactly
/// one flat.
pub fn rank2_flats(a: &Arrangement) -> Vec<Flat2> {
    let n = a.len();
    let normals = a.rational_normals();
    let mut covered = vec![vec![false; n]; n];
    let mut flats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i][j] {
                continue;
            }
            // Distinct normalized hyperplanes are never parallel.
            let members: Vec<usize> = (0..n)
                .filter(|&k| k == i || k == j || in_span(&normals[i], &normals[j], &normals[k]))
                .collect();
            for (x, &p) in members.iter().enumerate() {
                for &q in &members[x + 1..] {
                    covered[p][q] = true;
                }
            }
            flats.push(Flat2 {
                members,
                span_basis: [normals[i].clone(), normals[j].clone()],
            });
        }
    }
    flats
}

/// Coordinates `(s, t)` with `v = s * b0 + t * b1`, if they exist.
fn plane_coordinates(b0: &[Rational], b1: &[Rational], v: &[Rational]) -> Option<[Rational; 2]> {
    let n = b0.len();
    let (c0, c1) = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .find(|&(p, q)| !(&b0[p] * &b1[q] - &b0[q] * &b1[p]).is_zero())?;
    let det = &b0[c0] * &b1[c1] - &b0[c1] * &b1[c0];
    let s = (&v[c0] * &b1[c1] - &v[c1] * &b1[c0]) / &det;
    let t = (&b0[c0] * &v[c1] - &b0[c1] * &v[c0]) / &det;
    let ok = (0..n).all(|k| &s * &b0[k] + &t * &b1[k] == v[k]);
    ok.then_some([s, t])
}

/// The rank-2 multiarrangement obtained by localizing at `x`, written in
/// coordinates of the conormal plane spanned by `x.span_basis`.
pub fn localization(a: &Arrangement, m: &Multiplicity, x: &Flat2) -> Result<MultiArrangement> {
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    if x.members.len() < 2 {
        return Err(Error::MalformedFlat("fewer than two members".into()));
    }
    let [b0, b1] = &x.span_basis;
    if b0.len() != a.dim() || b1.len() != a.dim() {
        return Err(Error::MalformedFlat(
            "span basis has the wrong length".into(),
        ));
    }
    if rank_of_rows(a.dim(), &[b0.clone(), b1.clone()]) != 2 {
        return Err(Error::MalformedFlat("span basis is not independent".into()));
    }
    let normals = a.rational_normals();
    let mut hyperplanes = Vec::with_capacity(x.members.len());
    for &k in &x.members {
        a.check_index(k)?;
        let coords = plane_coordinates(b0, b1, &normals[k])
            .ok_or_else(|| Error::MalformedFlat(format!("hyperplane {k} is not in the flat")))?;
        hyperplanes.push(Hyperplane::normalize(&coords)?);
    }
    for (k, nk) in normals.iter().enumerate() {
        if !x.members.contains(&k) && plane_coordinates(b0, b1, nk).is_some() {
            return Err(Error::MalformedFlat(format!(
                "flat is not closed: hyperplane {k} is missing"
            )));
        }
    }
    let arrangement = Arrangement::new(2, hyperplanes)
        .map_err(|e| Error::MalformedFlat(format!("members collapse: {e}")))?;
    MultiArrangement::new(arrangement, m.restrict(&x.members))
}
