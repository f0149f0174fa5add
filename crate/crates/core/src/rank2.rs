//! Free multiarrangements of rank at most two.
//!
//! Every multiarrangement of lines in the plane is free. Its exponents are
//! found by searching degree by degree for the smallest nonzero logarithmic
//! derivation; the homogeneous linear system at degree `d` has the
//! `2(d+1)` coefficients of `p d/dx + q d/dy` as unknowns and one equation
//! per low-order coefficient of `alpha_i^{m_i} | p a_i + q b_i`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::poly::Exponents;
use crate::algebra::{kernel_basis, poly_det, HomPoly, Matrix, Rational};
use crate::arrangement::{is_member, Arrangement, Derivation, MultiArrangement, Multiplicity};
use crate::error::{Error, Result};
use crate::matroid::decompose;

/// Exponents `(d1, d2)` of a rank-2 multiarrangement, `d1 <= d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    pub d1: u32,
    pub d2: u32,
}

impl ExponentPair {
    pub fn product(&self) -> u64 {
        self.d1 as u64 * self.d2 as u64
    }
}

/// Sorted exponents, one per ambient coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentMultiset(Vec<u32>);

impl ExponentMultiset {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        ExponentMultiset(values)
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }
}

fn check_plane(ma: &MultiArrangement) -> Result<()> {
    if ma.arrangement.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: ma.arrangement.dim(),
        });
    }
    Ok(())
}

/// Kernel of the membership system at degree `d`, in coefficient order
/// `p_0..p_d, q_0..q_d` where index `j` is the monomial `x^{d-j} y^j`.
fn solutions_at_degree(ma: &MultiArrangement, d: u32) -> Vec<Vec<Rational>> {
    let width = d as usize + 1;
    let mut rows: BTreeMap<(usize, Exponents), Vec<Rational>> = BTreeMap::new();
    for (line, (h, &mult)) in ma
        .arrangement
        .hyperplanes()
        .iter()
        .zip(ma.multiplicity.values())
        .enumerate()
    {
        let alpha = h.rational_normal();
        if let Some(axis) = (0..2).find(|&k| alpha[1 - k].is_zero()) {
            // x_axis^m divides the axis component: its low-order
            // coefficients vanish, one unit row each.
            for j in 0..width {
                let exp_on_axis = if axis == 0 { d as usize - j } else { j };
                if (exp_on_axis as u64) < mult as u64 {
                    let mut row = vec![Rational::zero(); 2 * width];
                    row[axis * width + j] = Rational::one();
                    rows.insert((line, vec![j as u32]), row);
                }
            }
            continue;
        }
        let (pivot, forms) = alpha_coordinates(&alpha);
        let px = truncated_powers(&forms[0], pivot, mult, d);
        let py = truncated_powers(&forms[1], pivot, mult, d);
        for j in 0..width {
            let moved = truncated_mul(&px[width - 1 - j], &py[j], mult);
            for (e, c) in moved.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let row = rows
                    .entry((line, vec![e as u32]))
                    .or_insert_with(|| vec![Rational::zero(); 2 * width]);
                for (slot, coeff) in [(j, &alpha[0]), (width + j, &alpha[1])] {
                    if !coeff.is_zero() {
                        row[slot] += c * coeff;
                    }
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_values().collect();
    kernel_basis(&Matrix::from_rows(2 * width, &rows))
}

/// Images of `x, y` under the change of variables that turns `alpha` into
/// the coordinate at its first nonzero position.
fn alpha_coordinates(alpha: &[Rational]) -> (usize, [HomPoly; 2]) {
    let pivot = if alpha[0].is_zero() { 1 } else { 0 };
    let other = 1 - pivot;
    let inv = alpha[pivot].recip();
    let mut coeffs = vec![Rational::zero(); 2];
    coeffs[pivot] = inv.clone();
    coeffs[other] = -(&alpha[other] * &inv);
    let mut forms = [HomPoly::var(2, 0), HomPoly::var(2, 1)];
    forms[pivot] = HomPoly::linear(&coeffs);
    (pivot, forms)
}

/// Powers `f^0..f^d` of a linear form modulo `u^m`, where `u` is the
/// variable at `pivot`; entry `e` of `f^k` is the coefficient of
/// `u^e v^(k-e)`.
fn truncated_powers(f: &HomPoly, pivot: usize, m: u32, d: u32) -> Vec<Vec<Rational>> {
    let mut on_u = [0, 0];
    on_u[pivot] = 1;
    let mut on_v = [1, 1];
    on_v[pivot] = 0;
    let (a, b) = (f.coeff(&on_u), f.coeff(&on_v));
    let mut out = vec![vec![Rational::one()]];
    for k in 1..=d as usize {
        let prev = &out[k - 1];
        let len = (k + 1).min(m as usize);
        let next: Vec<Rational> = (0..len)
            .map(|e| {
                let mut c = prev.get(e).map_or_else(Rational::zero, |p| p * &b);
                if e > 0 {
                    c += &prev[e - 1] * &a;
                }
                c
            })
            .collect();
        out.push(next);
    }
    out
}

fn truncated_mul(f: &[Rational], g: &[Rational], m: u32) -> Vec<Rational> {
    let len = (f.len() + g.len() - 1).min(m as usize);
    let mut out = vec![Rational::zero(); len];
    for (i, a) in f.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in g.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Scales to a primitive integer vector with positive leading entry.
fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = if ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

fn derivation_from(d: u32, v: &[Rational]) -> Derivation {
    let width = d as usize + 1;
    let v = primitive(v);
    let component = |offset: usize| {
        let terms = (0..width).map(|j| (vec![d - j as u32, j as u32], v[offset + j].clone()));
        HomPoly::from_terms(2, terms).expect("terms share degree d")
    };
    Derivation::new(vec![component(0), component(width)]).expect("components share degree d")
}

/// Smallest `d <= |m|/2` admitting a nonzero logarithmic derivation, with
/// the solution space there.
///
/// Solvability is monotone in `d` (multiply by `x`), so the search bisects.
fn minimal_degree(ma: &MultiArrangement) -> Result<(u32, Vec<Vec<Rational>>)> {
    let total = ma.multiplicity.total();
    let bound = u32::try_from(total / 2)
        .map_err(|_| Error::InternalInvariant("multiplicity too large".into()))?;
    let mut best = solutions_at_degree(ma, bound);
    if best.is_empty() {
        return Err(Error::InternalInvariant(format!(
            "no logarithmic derivation of degree <= {bound}"
        )));
    }
    // Invariant: solutions exist at `hi`, none below `lo`.
    let (mut lo, mut hi) = (0, bound);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let sols = solutions_at_degree(ma, mid);
        if sols.is_empty() {
            lo = mid + 1;
        } else {
            hi = mid;
            best = sols;
        }
    }
    Ok((hi, best))
}

/// Coordinates in which the two heaviest lines are the axes, so their
/// membership equations become single-coefficient conditions.
struct Frame {
    framed: MultiArrangement,
    /// `(T, T^-1)` with `u = T x`; `None` when the frame is the identity.
    change: Option<(Matrix, Matrix)>,
}

fn frame(ma: &MultiArrangement) -> Result<Frame> {
    let a = &ma.arrangement;
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(ma.multiplicity.values()[i]), i));
    let rows: Vec<Vec<Rational>> = match order.as_slice() {
        [] => {
            return Ok(Frame {
                framed: ma.clone(),
                change: None,
            })
        }
        [i] => {
            let n = a.hyperplane(*i).rational_normal();
            let unit = if n[0].is_zero() { [1, 0] } else { [0, 1] };
            vec![
                n,
                unit.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect(),
            ]
        }
        [i, j, ..] => vec![
            a.hyperplane(*i).rational_normal(),
            a.hyperplane(*j).rational_normal(),
        ],
    };
    let t = Matrix::from_rows(2, &rows);
    if t == Matrix::identity(2) {
        return Ok(Frame {
            framed: ma.clone(),
            change: None,
        });
    }
    let det = t.det();
    let inv = Matrix::from_rows(
        2,
        &[
            vec![&t[(1, 1)] / &det, -&t[(0, 1)] / &det],
            vec![-&t[(1, 0)] / &det, &t[(0, 0)] / &det],
        ],
    );
    let framed = MultiArrangement::new(a.transform(&inv)?, ma.multiplicity.clone())?;
    Ok(Frame {
        framed,
        change: Some((t, inv)),
    })
}

impl Frame {
    /// Pulls a framed derivation `sum_k q_k(u) d/du_k` back to
    /// `sum_l (sum_k Tinv[l][k] q_k(T x)) d/dx_l`.
    fn pull_back(&self, d: u32, theta: Derivation) -> Derivation {
        let Some((t, inv)) = &self.change else {
            return theta;
        };
        let forms: Vec<HomPoly> = (0..2).map(|k| HomPoly::linear(t.row(k))).collect();
        let moved: Vec<HomPoly> = theta
            .components()
            .iter()
            .map(|q| q.substitute_linear(&forms))
            .collect();
        let width = d as usize + 1;
        let mut v = vec![Rational::zero(); 2 * width];
        for l in 0..2 {
            for (k, q) in moved.iter().enumerate() {
                for j in 0..width {
                    v[l * width + j] += &inv[(l, k)] * q.coeff(&[d - j as u32, j as u32]);
                }
            }
        }
        derivation_from(d, &v)
    }
}

/// Exponents of a multiarrangement of lines in the plane.
///
/// A single line gives `(0, m)`; the empty arrangement gives `(0, 0)`.
pub fn rank2_exponents(ma: &MultiArrangement) -> Result<ExponentPair> {
    check_plane(ma)?;
    let total = ma.multiplicity.total();
    let (d1, _) = minimal_degree(&frame(ma)?.framed)?;
    let d2 = u32::try_from(total - d1 as u64)
        .map_err(|_| Error::InternalInvariant("multiplicity too large".into()))?;
    Ok(ExponentPair { d1, d2 })
}

/// Homogeneous basis `(theta1, theta2)` of degrees `(d1, d2)`.
///
/// The search runs in coordinates where the two heaviest lines are the
/// axes. `theta1` is the first kernel vector at degree `d1`; `theta2` is
/// the first kernel vector at degree `d2` with nonzero determinant against
/// it. Both are pulled back and scaled to primitive integer coefficients.
pub fn rank2_basis(ma: &MultiArrangement) -> Result<(Derivation, Derivation)> {
    check_plane(ma)?;
    let f = frame(ma)?;
    let (d1, sols) = minimal_degree(&f.framed)?;
    let d2 = u32::try_from(ma.multiplicity.total() - d1 as u64)
        .map_err(|_| Error::InternalInvariant("multiplicity too large".into()))?;
    let theta1 = derivation_from(d1, &sols[0]);
    for v in solutions_at_degree(&f.framed, d2) {
        let theta2 = derivation_from(d2, &v);
        if !coefficient_det(&[theta1.clone(), theta2.clone()])?.is_zero() {
            return Ok((f.pull_back(d1, theta1), f.pull_back(d2, theta2)));
        }
    }
    Err(Error::InternalInvariant(format!(
        "no derivation of degree {d2} independent of the degree-{d1} generator"
    )))
}

fn coefficient_det(thetas: &[Derivation]) -> Result<HomPoly> {
    let dim = thetas.first().map_or(0, Derivation::dim);
    let rows: Vec<Vec<HomPoly>> = thetas.iter().map(|t| t.components().to_vec()).collect();
    poly_det(&rows, dim)
}

/// Product of `alpha_H^{m(H)}` over the arrangement.
pub fn defining_product(a: &Arrangement, m: &Multiplicity) -> HomPoly {
    a.hyperplanes()
        .iter()
        .zip(m.values())
        .fold(HomPoly::one(a.dim()), |acc, (h, &k)| {
            acc.mul(&HomPoly::linear(&h.rational_normal()).pow(k))
        })
}

/// Outcome of the Saito check, with enough detail for reporting.
#[derive(Clone, Debug)]
pub struct SaitoReport {
    /// `membership[i][h]`: whether `alpha_h^{m(h)}` divides `theta_i(alpha_h)`.
    pub membership: Vec<Vec<bool>>,
    pub determinant: HomPoly,
    pub defining_product: HomPoly,
    /// `c` with `determinant = c * defining_product`, if such a nonzero `c`
    /// exists.
    pub constant: Option<Rational>,
}

impl SaitoReport {
    pub fn all_members(&self) -> bool {
        self.membership.iter().all(|r| r.iter().all(|&b| b))
    }

    pub fn verified(&self) -> bool {
        self.all_members() && self.constant.is_some()
    }
}

pub fn saito_check(
    a: &Arrangement,
    m: &Multiplicity,
    thetas: &[Derivation],
) -> Result<SaitoReport> {
    if thetas.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: thetas.len(),
        });
    }
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    let mut membership = Vec::with_capacity(thetas.len());
    for theta in thetas {
        if theta.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: theta.dim(),
            });
        }
        let mut row = Vec::with_capacity(a.len());
        for (i, h) in a.hyperplanes().iter().enumerate() {
            let single = Arrangement::new(a.dim(), vec![h.clone()])?;
            row.push(is_member(theta, &single, &m.restrict(&[i]))?);
        }
        membership.push(row);
    }
    let determinant = coefficient_det(thetas).unwrap_or_else(|_| HomPoly::zero(a.dim()));
    let product = defining_product(a, m);
    let constant = proportionality(&determinant, &product);
    Ok(SaitoReport {
        membership,
        determinant,
        defining_product: product,
        constant,
    })
}

/// Nonzero `c` with `f = c * g`, if any.
fn proportionality(f: &HomPoly, g: &HomPoly) -> Option<Rational> {
    let (mono, gc) = g.leading()?;
    let c = f.coeff(mono) / gc;
    (!c.is_zero() && *f == g.scale(&c)).then_some(c)
}

/// Saito's criterion: every `theta_i` is logarithmic and the coefficient
/// determinant is a nonzero multiple of the defining product.
pub fn saito_verify(a: &Arrangement, m: &Multiplicity, thetas: &[Derivation]) -> Result<bool> {
    Ok(saito_check(a, m, thetas)?.verified())
}

/// Exponents contributed by each irreducible factor, in factor order.
#[derive(Clone, Debug)]
pub struct FactorExponents {
    pub indices: Vec<usize>,
    pub rank: usize,
    pub exponents: Vec<u32>,
}

/// Per-factor exponents of an arrangement whose factors all have rank
/// at most 2; `NotTotallyFree` otherwise.
pub fn factor_exponents(
    a: &Arrangement,
    m: &Multiplicity,
) -> Result<(Vec<FactorExponents>, usize)> {
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    let d = decompose(a);
    if d.factors.iter().any(|f| f.rank() > 2) {
        return Err(Error::NotTotallyFree);
    }
    let mut out = Vec::with_capacity(d.factors.len());
    for f in &d.factors {
        let fm = m.restrict(&f.indices);
        let exponents = match f.rank() {
            1 => vec![fm.values()[0]],
            _ => {
                let p = rank2_exponents(&MultiArrangement::new(f.arrangement.clone(), fm)?)?;
                vec![p.d1, p.d2]
            }
        };
        out.push(FactorExponents {
            indices: f.indices.clone(),
            rank: f.rank(),
            exponents,
        });
    }
    Ok((out, d.trivial_directions))
}

/// Exponents of `(A, m)` for a totally free `A`: the concatenation of the
/// factor exponents and a zero per trivial direction, sorted.
pub fn exponents_totally_free(a: &Arrangement, m: &Multiplicity) -> Result<ExponentMultiset> {
    let (factors, trivial) = factor_exponents(a, m)?;
    let mut values: Vec<u32> = factors.into_iter().flat_map(|f| f.exponents).collect();
    values.extend(std::iter::repeat_n(0, trivial));
    Ok(ExponentMultiset::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::arrangement::{boolean, braid, product};

    fn plane(normals: &[Vec<i64>], m: &[u32]) -> MultiArrangement {
        let a = Arrangement::from_int_normals(2, normals).unwrap();
        MultiArrangement::new(a, Multiplicity::new(m.to_vec()).unwrap()).unwrap()
    }

    fn triangle(m: &[u32]) -> MultiArrangement {
        plane(&[vec![1, 0], vec![0, 1], vec![1, -1]], m)
    }

    fn x() -> HomPoly {
        HomPoly::var(2, 0)
    }
    fn y() -> HomPoly {
        HomPoly::var(2, 1)
    }

    #[test]
    fn exponent_examples() {
        let bool2 = plane(&[vec![1, 0], vec![0, 1]], &[3, 5]);
        assert_eq!(
            rank2_exponents(&bool2).unwrap(),
            ExponentPair { d1: 3, d2: 5 }
        );
        assert_eq!(
            rank2_exponents(&triangle(&[1, 1, 1])).unwrap(),
            ExponentPair { d1: 1, d2: 2 }
        );
        assert_eq!(
            rank2_exponents(&triangle(&[2, 2, 2])).unwrap(),
            ExponentPair { d1: 3, d2: 3 }
        );
    }

    #[test]
    fn no_solution_below_minimal_degree() {
        let t = triangle(&[2, 2, 2]);
        for d in 0..3 {
            assert!(solutions_at_degree(&t, d).is_empty(), "degree {d}");
        }
        assert!(!solutions_at_degree(&t, 3).is_empty());
    }

    #[test]
    fn degenerate_inputs() {
        let one = plane(&[vec![1, 2]], &[4]);
        assert_eq!(
            rank2_exponents(&one).unwrap(),
            ExponentPair { d1: 0, d2: 4 }
        );
        let empty = MultiArrangement::simple(Arrangement::empty(2));
        assert_eq!(
            rank2_exponents(&empty).unwrap(),
            ExponentPair { d1: 0, d2: 0 }
        );
        let wrong = MultiArrangement::simple(boolean(3));
        assert!(matches!(
            rank2_exponents(&wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn basis_examples() {
        let bool2 = plane(&[vec![1, 0], vec![0, 1]], &[1, 1]);
        let (t1, t2) = rank2_basis(&bool2).unwrap();
        assert_eq!(t1, Derivation::new(vec![x(), HomPoly::zero(2)]).unwrap());
        assert_eq!(t2, Derivation::new(vec![HomPoly::zero(2), y()]).unwrap());

        let t = triangle(&[1, 1, 1]);
        let (t1, t2) = rank2_basis(&t).unwrap();
        assert_eq!(t1, Derivation::euler(2));
        assert_eq!((t1.degree(), t2.degree()), (Some(1), Some(2)));
        assert!(saito_verify(&t.arrangement, &t.multiplicity, &[t1, t2]).unwrap());

        let t = triangle(&[2, 2, 2]);
        let (t1, t2) = rank2_basis(&t).unwrap();
        let report = saito_check(&t.arrangement, &t.multiplicity, &[t1, t2]).unwrap();
        assert!(report.verified());
        let xmy = HomPoly::linear(&[int(1), int(-1)]);
        let expected = x().pow(2).mul(&y().pow(2)).mul(&xmy.pow(2));
        assert_eq!(report.defining_product, expected);
    }

    #[test]
    fn saito_examples() {
        let a = boolean(2);
        let m = Multiplicity::ones(2);
        let xdx = Derivation::new(vec![x(), HomPoly::zero(2)]).unwrap();
        let ydy = Derivation::new(vec![HomPoly::zero(2), y()]).unwrap();
        assert!(saito_verify(&a, &m, &[xdx.clone(), ydy]).unwrap());
        let r = saito_check(&a, &m, &[xdx.clone(), xdx]).unwrap();
        assert!(r.determinant.is_zero());
        assert!(!r.verified());

        let t = triangle(&[1, 1, 1]);
        let sq = Derivation::new(vec![x().pow(2), y().pow(2)]).unwrap();
        let r = saito_check(&t.arrangement, &t.multiplicity, &[Derivation::euler(2), sq]).unwrap();
        assert!(r.verified());
        // det = x y^2 - y x^2 = -x y (x - y)
        assert_eq!(r.constant, Some(int(-1)));
    }

    #[test]
    fn saito_rejects_nonmembers_with_right_determinant() {
        // det(dx, dy) = 1 = defining product of the empty arrangement, but
        // with a line present the constant fields are not logarithmic.
        let a = Arrangement::from_int_normals(2, &[vec![1, 0]]).unwrap();
        let dx = Derivation::new(vec![HomPoly::one(2), HomPoly::zero(2)]).unwrap();
        let dy = Derivation::new(vec![HomPoly::zero(2), HomPoly::one(2)]).unwrap();
        let r = saito_check(&a, &Multiplicity::ones(1), &[dx.clone(), dy.clone()]).unwrap();
        assert!(!r.all_members());
        assert!(!r.verified());
        assert!(saito_verify(&Arrangement::empty(2), &Multiplicity::ones(0), &[dx, dy]).unwrap());
        assert!(saito_verify(&a, &Multiplicity::ones(1), &[Derivation::euler(2)]).is_err());
    }

    #[test]
    fn totally_free_exponents() {
        let m = Multiplicity::new(vec![4, 2, 3]).unwrap();
        assert_eq!(
            exponents_totally_free(&boolean(3), &m).unwrap().values(),
            &[2, 3, 4]
        );

        let tri = Arrangement::from_int_normals(2, &[vec![1, 0], vec![0, 1], vec![1, -1]]).unwrap();
        let line = Arrangement::from_int_normals(1, &[vec![1]]).unwrap();
        let p = product(&tri, &line);
        assert_eq!(
            exponents_totally_free(&p, &Multiplicity::ones(4))
                .unwrap()
                .values(),
            &[1, 1, 2]
        );

        let p = product(&p, &Arrangement::empty(2));
        assert_eq!(
            exponents_totally_free(&p, &Multiplicity::ones(4))
                .unwrap()
                .values(),
            &[0, 0, 1, 1, 2]
        );

        assert_eq!(
            exponents_totally_free(&braid(4), &Multiplicity::ones(6)),
            Err(Error::NotTotallyFree)
        );
    }

    /// Plane arrangements with up to six lines; normals are primitive and pairwise
    /// independent.
    fn line_pool() -> Vec<Vec<i64>> {
        vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, -1],
            vec![1, 1],
            vec![1, 2],
            vec![2, -1],
        ]
    }

    #[test]
    fn sweep_bases_pass_saito_and_exponents_are_monotone() {
        let pool = line_pool();
        let mut rng_state: u64 = 0x5eed;
        let mut next = || {
            rng_state = rng_state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (rng_state >> 33) as u32
        };
        for n in 1..=6 {
            for _ in 0..6 {
                let m: Vec<u32> = (0..n).map(|_| 1 + next() % 4).collect();
                let ma = plane(&pool[..n], &m);
                let pair = rank2_exponents(&ma).unwrap();
                assert_eq!(pair.d1 as u64 + pair.d2 as u64, ma.multiplicity.total());
                assert!(pair.d1 <= pair.d2);
                if n >= 2 {
                    let (t1, t2) = rank2_basis(&ma).unwrap();
                    assert!(is_member(&t1, &ma.arrangement, &ma.multiplicity).unwrap());
                    assert!(is_member(&t2, &ma.arrangement, &ma.multiplicity).unwrap());
                    assert!(saito_verify(&ma.arrangement, &ma.multiplicity, &[t1, t2]).unwrap());
                }
                for bump in 0..n {
                    let mut m2 = m.clone();
                    m2[bump] += 1;
                    let p2 = rank2_exponents(&plane(&pool[..n], &m2)).unwrap();
                    assert_eq!(p2.d1 + p2.d2, pair.d1 + pair.d2 + 1);
                    assert!(p2.d1 == pair.d1 || p2.d1 == pair.d1 + 1, "{m:?} -> {m2:?}");
                }
            }
        }
    }
}
