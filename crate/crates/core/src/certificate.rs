//! Mixed-product invariants, non-freeness certificates and the total
//! freeness verdict.
//!
//! A free multiarrangement has equal second local and global mixed
//! products. The global one is bounded above by the most balanced split of
//! `|m|` into `rank` exponents, so a local mixed product strictly above that
//! bound certifies non-freeness. An irreducible arrangement of rank `l >= 3`
//! always contains `l + 1` hyperplanes with every three independent, and
//! putting a large multiplicity `k` on them produces such a certificate.

use itertools::Itertools;
use num_traits::Zero;

use crate::algebra::{int, Rational};
use crate::arrangement::{
    deletion, localization, rank2_flats, restriction, Arrangement, Multiplicity,
};
use crate::error::{Error, Result};
use crate::matroid::{decompose, is_irreducible, Decomposition, Factor};
use crate::rank2::{rank2_basis, rank2_exponents, saito_verify, ExponentMultiset, ExponentPair};

pub const LMP_GMP_THEOREM: &str = "LMP2>GMP2max";

/// Exponents of one rank-2 flat and its contribution `d1 * d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatContribution {
    pub members: Vec<usize>,
    pub exponents: ExponentPair,
}

/// Local exponents of every rank-2 flat.
pub fn lmp2_breakdown(a: &Arrangement, m: &Multiplicity) -> Result<Vec<FlatContribution>> {
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    rank2_flats(a)
        .into_iter()
        .map(|flat| {
            let local = localization(a, m, &flat)?;
            Ok(FlatContribution {
                exponents: rank2_exponents(&local)?,
                members: flat.members,
            })
        })
        .collect()
}

/// Second local mixed product: `sum over rank-2 flats X of d1^X d2^X`.
pub fn lmp2(a: &Arrangement, m: &Multiplicity) -> Result<u64> {
    Ok(lmp2_breakdown(a, m)?
        .iter()
        .map(|c| c.exponents.product())
        .sum())
}

/// Elementary symmetric `e2` of the exponents.
pub fn gmp2_from_exponents(e: &ExponentMultiset) -> u64 {
    e2(e.values())
}

fn e2(values: &[u32]) -> u64 {
    let mut sum = 0u64;
    let mut acc = 0u64;
    for &d in values {
        acc += sum * d as u64;
        sum += d as u64;
    }
    acc
}

/// Largest `e2` over nonnegative integer `rank`-tuples summing to `total`,
/// attained by the balanced split.
pub fn gmp2_max(rank: usize, total: u64) -> u64 {
    if rank == 0 {
        return 0;
    }
    let l = rank as u64;
    let (q, r) = (total / l, total % l);
    // r parts equal to q + 1, l - r parts equal to q.
    let squares = r * (q + 1) * (q + 1) + (l - r) * q * q;
    (total * total - squares) / 2
}

/// Real relaxation `C(l, 2) (total / l)^2` of [`gmp2_max`].
pub fn gmp2_real_bound(rank: usize, total: u64) -> Rational {
    if rank == 0 {
        return Rational::zero();
    }
    let l = rank as i64;
    let t = Rational::new((total as i64).into(), l.into());
    int(l * (l - 1) / 2) * &t * &t
}

/// Values reported for a generic circuit of rank `l >= 3`: its local mixed
/// product `C(l+1, 2)`, the real global bound `C(l, 2) ((l+1)/l)^2` and
/// their positive difference `(l+1)/(2l)`.
pub fn circuit_is_nonfree_check(l: usize) -> (u64, Rational, Rational) {
    let lmp = ((l + 1) * l / 2) as u64;
    let bound = gmp2_real_bound(l, l as u64 + 1);
    let gap = int(lmp as i64) - &bound;
    (lmp, bound, gap)
}

/// `l + 1` hyperplanes of a rank-`l` arrangement, every three independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCircuit {
    pub indices: Vec<usize>,
}

/// Every three of the selected normals are linearly independent.
pub fn triples_independent(a: &Arrangement, indices: &[usize]) -> bool {
    indices
        .iter()
        .copied()
        .tuple_combinations()
        .all(|(i, j, k)| a.rank_of(&[i, j, k]) == 3)
}

fn is_generic_circuit(a: &Arrangement, indices: &[usize]) -> bool {
    indices.len() == a.rank() + 1 && triples_independent(a, indices)
}

fn check_irreducible_rank3(a: &Arrangement) -> Result<()> {
    if a.dim() < 3 {
        return Err(Error::ReducibleInput(format!(
            "rank {} is below 3",
            a.rank()
        )));
    }
    if !is_irreducible(a) {
        return Err(Error::ReducibleInput(
            "arrangement is reducible or not essential".into(),
        ));
    }
    Ok(())
}

/// Generic circuit by the deletion/restriction induction.
///
/// With `H0` the first hyperplane: if the deletion is irreducible, recurse
/// into it. Otherwise the restriction to `H0` is irreducible; in rank 3 a
/// direct case analysis on collisions of restricted hyperplanes finishes,
/// and in higher rank the circuit of the restriction is lifted (smallest
/// preimage of each image) and `H0` is added.
pub fn find_generic_circuit(a: &Arrangement) -> Result<GenericCircuit> {
    check_irreducible_rank3(a)?;
    let ids: Vec<usize> = (0..a.len()).collect();
    let mut indices = circuit_by_induction(a, &ids)?;
    indices.sort_unstable();
    Ok(GenericCircuit { indices })
}

fn circuit_by_induction(a: &Arrangement, ids: &[usize]) -> Result<Vec<usize>> {
    let l = a.dim();
    let n = a.len();
    let finish = |local: Vec<usize>| -> Result<Vec<usize>> {
        if local.len() != l + 1 || !triples_independent(a, &local) {
            return Err(Error::InternalInvariant(format!(
                "candidate {local:?} of rank-{l} arrangement has a dependent triple"
            )));
        }
        Ok(local.iter().map(|&i| ids[i]).collect())
    };

    if n == l + 1 {
        return finish((0..n).collect());
    }
    if n < l + 1 {
        return Err(Error::InternalInvariant(format!(
            "irreducible rank-{l} arrangement with only {n} hyperplanes"
        )));
    }

    let del = deletion(a, 0)?;
    if is_irreducible(&del) {
        return circuit_by_induction(&del, &ids[1..]);
    }

    let res = restriction(a, 0)?;
    let image = |i: usize| res.index_map[i].expect("only H0 has no image");
    if l == 3 {
        let images = res.arrangement.len();
        if images < 3 {
            return Err(Error::InternalInvariant(
                "neither the deletion nor the restriction is irreducible".into(),
            ));
        }
        if images == n - 1 {
            // Distinct images: any independent triple of the others works.
            let triple = (1..n)
                .tuple_combinations()
                .find(|&(i, j, k)| a.rank_of(&[i, j, k]) == 3)
                .ok_or_else(|| Error::InternalInvariant("no independent triple".into()))?;
            return finish(vec![0, triple.0, triple.1, triple.2]);
        }
        // Two hyperplanes h3, h4 share an image; h1, h2 have two further
        // distinct images. One of {h1,h2,h3}, {h1,h2,h4} is independent.
        let collision = (0..images)
            .map(|j| res.preimages(j))
            .find(|p| p.len() >= 2)
            .expect("fewer images than hyperplanes");
        let (h3, h4) = (collision[0], collision[1]);
        let mut seen = vec![image(h3)];
        let mut picked = Vec::new();
        for i in 1..n {
            if picked.len() == 2 {
                break;
            }
            if !seen.contains(&image(i)) {
                seen.push(image(i));
                picked.push(i);
            }
        }
        let (h1, h2) = (picked[0], picked[1]);
        for last in [h3, h4] {
            let cand = vec![0, h1, h2, last];
            if triples_independent(a, &cand) {
                return finish(cand);
            }
        }
        return Err(Error::InternalInvariant(format!(
            "neither {{0,{h1},{h2},{h3}}} nor {{0,{h1},{h2},{h4}}} is a generic circuit"
        )));
    }

    if !is_irreducible(&res.arrangement) {
        return Err(Error::InternalInvariant(
            "neither the deletion nor the restriction is irreducible".into(),
        ));
    }
    let image_ids: Vec<usize> = (0..res.arrangement.len()).collect();
    let sub = circuit_by_induction(&res.arrangement, &image_ids)?;
    let mut local = vec![0];
    local.extend(sub.iter().map(|&j| res.preimages(j)[0]));
    finish(local)
}

/// Generic circuit by scanning `(l+1)`-subsets in lexicographic order.
pub fn find_generic_circuit_brute_force(a: &Arrangement) -> Result<GenericCircuit> {
    check_irreducible_rank3(a)?;
    let l = a.dim();
    (0..a.len())
        .combinations(l + 1)
        .find(|c| triples_independent(a, c))
        .map(|indices| GenericCircuit { indices })
        .ok_or_else(|| Error::InternalInvariant("no generic circuit exists".into()))
}

/// Multiplicity that is `k` on the circuit and 1 elsewhere.
pub fn circuit_multiplicity(n: usize, circuit: &GenericCircuit, k: u32) -> Multiplicity {
    let values = (0..n)
        .map(|i| if circuit.indices.contains(&i) { k } else { 1 })
        .collect();
    Multiplicity::new(values).expect("k >= 1")
}

/// Whether the circuit lower bound `C(l+1, 2) k^2` beats
/// `gmp2_max(l, (k-1)(l+1) + n)`.
pub fn circuit_bound_holds(l: usize, n: usize, k: u32) -> bool {
    let k = k as u64;
    let (l64, n64) = (l as u64, n as u64);
    let lower = (l64 + 1) * l64 / 2 * k * k;
    lower > gmp2_max(l, (k - 1) * (l64 + 1) + n64)
}

/// Smallest `k >= 1` for which [`circuit_bound_holds`].
pub fn threshold_k0(l: usize, n: usize) -> Result<u32> {
    // The quadratic coefficients differ by (l+1)/(2l) > 0, so the search
    // ends well before this cap for any realistic n.
    const CAP: u32 = 10_000_000;
    (1..=CAP)
        .find(|&k| circuit_bound_holds(l, n, k))
        .ok_or_else(|| Error::InternalInvariant("threshold search exceeded its cap".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFreeFamily {
    pub circuit: GenericCircuit,
    pub k0: u32,
    pub multiplicity: Multiplicity,
}

/// Circuit, threshold `k0` and the multiplicity `m_{k0}`; for every
/// `k >= k0` the circuit multiplicity is not free.
pub fn nonfree_multiplicity_family(a: &Arrangement) -> Result<NonFreeFamily> {
    let circuit = find_generic_circuit(a)?;
    let k0 = threshold_k0(a.dim(), a.len())?;
    let multiplicity = circuit_multiplicity(a.len(), &circuit, k0);
    Ok(NonFreeFamily {
        circuit,
        k0,
        multiplicity,
    })
}

/// Proof that `(A, m)` is not free: `LMP2 >= lmp2_lower > gmp2_upper >= GMP2`
/// would hold for any free multiplicity with the same rank and total.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonFreenessCertificate {
    pub theorem: &'static str,
    /// Exact LMP2 when `lmp2_exact`, otherwise a lower bound.
    pub lmp2_lower: u64,
    pub lmp2_exact: bool,
    pub gmp2_upper: u64,
    pub gmp2_real_bound: Rational,
    pub total_multiplicity: u64,
    pub rank: usize,
    pub multiplicity: Multiplicity,
    pub circuit_indices: Option<Vec<usize>>,
    pub k0: Option<u32>,
}

impl NonFreenessCertificate {
    pub fn explanation(&self) -> String {
        format!(
            "free multiarrangements have LMP2 = GMP2, and GMP2 <= {} for {} exponents summing to {}; \
             here LMP2 {} {}",
            self.gmp2_upper,
            self.rank,
            self.total_multiplicity,
            if self.lmp2_exact { "=" } else { ">=" },
            self.lmp2_lower
        )
    }

    /// Recomputes every claim from scratch along a separate route:
    /// the balanced maximum by greedy unit allocation, exact LMP2 from
    /// Saito-verified local bases, the circuit bound from pairwise
    /// products on a re-validated circuit.
    pub fn verify(&self, a: &Arrangement) -> bool {
        if self.multiplicity.len() != a.len()
            || self.rank != a.rank()
            || self.total_multiplicity != self.multiplicity.total()
        {
            return false;
        }
        if greedy_gmp2_max(self.rank, self.total_multiplicity) != self.gmp2_upper {
            return false;
        }
        let lower = if self.lmp2_exact {
            match lmp2_via_saito(a, &self.multiplicity) {
                Some(v) => v,
                None => return false,
            }
        } else {
            let Some(circuit) = &self.circuit_indices else {
                return false;
            };
            if !is_generic_circuit(a, circuit) {
                return false;
            }
            pairwise_circuit_bound(&self.multiplicity, circuit)
        };
        lower == self.lmp2_lower && self.lmp2_lower > self.gmp2_upper
    }
}

/// Maximum `e2` by adding units one at a time to a smallest part.
fn greedy_gmp2_max(rank: usize, total: u64) -> u64 {
    if rank == 0 {
        return 0;
    }
    let mut parts = vec![0u64; rank];
    let full = total / rank as u64;
    for p in parts.iter_mut() {
        *p = full;
    }
    let extra = (total - full * rank as u64) as usize;
    for p in parts.iter_mut().take(extra) {
        *p += 1;
    }
    let squares: u64 = parts.iter().map(|p| p * p).sum();
    let sum: u64 = parts.iter().sum();
    debug_assert_eq!(sum, total);
    (sum * sum - squares) / 2
}

/// Each pair of circuit members spans its own flat, whose local product is
/// at least the product of the two multiplicities.
fn pairwise_circuit_bound(m: &Multiplicity, circuit: &[usize]) -> u64 {
    circuit
        .iter()
        .tuple_combinations()
        .map(|(&i, &j)| m.values()[i] as u64 * m.values()[j] as u64)
        .sum()
}

/// Exact LMP2 where each flat's exponents are the degrees of an explicit
/// basis that passes Saito's criterion.
fn lmp2_via_saito(a: &Arrangement, m: &Multiplicity) -> Option<u64> {
    let mut total = 0u64;
    for flat in rank2_flats(a) {
        let local = localization(a, m, &flat).ok()?;
        let (t1, t2) = rank2_basis(&local).ok()?;
        if !saito_verify(
            &local.arrangement,
            &local.multiplicity,
            &[t1.clone(), t2.clone()],
        )
        .ok()?
        {
            return None;
        }
        total += t1.degree()? as u64 * t2.degree()? as u64;
    }
    Some(total)
}

fn build_certificate(
    a: &Arrangement,
    m: &Multiplicity,
    circuit: Option<&GenericCircuit>,
    k0: Option<u32>,
) -> Result<Option<NonFreenessCertificate>> {
    let lmp = lmp2(a, m)?;
    let rank = a.rank();
    let total = m.total();
    let bound = gmp2_max(rank, total);
    if lmp <= bound {
        return Ok(None);
    }
    let cert = NonFreenessCertificate {
        theorem: LMP_GMP_THEOREM,
        lmp2_lower: lmp,
        lmp2_exact: true,
        gmp2_upper: bound,
        gmp2_real_bound: gmp2_real_bound(rank, total),
        total_multiplicity: total,
        rank,
        multiplicity: m.clone(),
        circuit_indices: circuit.map(|c| c.indices.clone()),
        k0,
    };
    if !cert.verify(a) {
        return Err(Error::InternalInvariant(
            "certificate failed independent recomputation".into(),
        ));
    }
    Ok(Some(cert))
}

/// Certificate of non-freeness when exact LMP2 exceeds
/// `gmp2_max(rank, |m|)`. `None` is inconclusive, never a proof of freeness.
pub fn nonfree_by_lmp_gmp(
    a: &Arrangement,
    m: &Multiplicity,
) -> Result<Option<NonFreenessCertificate>> {
    if m.len() != a.len() {
        return Err(Error::MultiplicityLength {
            expected: a.len(),
            got: m.len(),
        });
    }
    build_certificate(a, m, None, None)
}

/// Evidence that an arrangement is not totally free.
#[derive(Clone, Debug)]
pub struct NonFreeWitness {
    /// Position of the offending factor in `decomposition.factors`.
    pub factor_position: usize,
    pub decomposition: Decomposition,
    /// Circuit in original hyperplane indices.
    pub circuit: GenericCircuit,
    pub k0: u32,
    /// Non-free multiplicity on the whole arrangement.
    pub multiplicity: Multiplicity,
    /// Certificate for the factor, in the factor's own indexing.
    pub certificate: NonFreenessCertificate,
}

impl NonFreeWitness {
    pub fn factor(&self) -> &Factor {
        &self.decomposition.factors[self.factor_position]
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    TotallyFree(Decomposition),
    NotTotallyFree(Box<NonFreeWitness>),
}

impl Verdict {
    pub fn is_totally_free(&self) -> bool {
        matches!(self, Verdict::TotallyFree(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::TotallyFree(_) => "TotallyFree",
            Verdict::NotTotallyFree(_) => "NotTotallyFree",
        }
    }

    /// Which criterion decided the verdict.
    pub fn criterion(&self) -> &'static str {
        match self {
            Verdict::TotallyFree(_) => "product of rank <= 2 factors",
            Verdict::NotTotallyFree(_) => "LMP2>GMP2max certificate",
        }
    }

    pub fn decomposition(&self) -> &Decomposition {
        match self {
            Verdict::TotallyFree(d) => d,
            Verdict::NotTotallyFree(w) => &w.decomposition,
        }
    }
}

/// Witness for the first factor of rank at least 3.
pub fn witness_for_factor(decomposition: Decomposition, position: usize) -> Result<NonFreeWitness> {
    let factor = &decomposition.factors[position];
    let family = nonfree_multiplicity_family(&factor.arrangement)?;
    let certificate = build_certificate(
        &factor.arrangement,
        &family.multiplicity,
        Some(&family.circuit),
        Some(family.k0),
    )?
    .ok_or_else(|| {
        Error::InternalInvariant("threshold multiplicity yields no certificate".into())
    })?;
    let n: usize = decomposition.len();
    let circuit = GenericCircuit {
        indices: family
            .circuit
            .indices
            .iter()
            .map(|&i| factor.indices[i])
            .collect(),
    };
    let multiplicity = circuit_multiplicity(n, &circuit, family.k0);
    Ok(NonFreeWitness {
        factor_position: position,
        circuit,
        k0: family.k0,
        multiplicity,
        certificate,
        decomposition,
    })
}

/// Totally free iff every irreducible factor has rank at most 2.
pub fn decide_totally_free(a: &Arrangement) -> Result<Verdict> {
    let d = decompose(a);
    match d.factors.iter().position(|f| f.rank() >= 3) {
        None => Ok(Verdict::TotallyFree(d)),
        Some(pos) => Ok(Verdict::NotTotallyFree(Box::new(witness_for_factor(
            d, pos,
        )?))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, braid, essentialize, product};
    use crate::rank2::exponents_totally_free;

    fn arr(dim: usize, normals: &[Vec<i64>]) -> Arrangement {
        Arrangement::from_int_normals(dim, normals).unwrap()
    }

    fn mult(v: &[u32]) -> Multiplicity {
        Multiplicity::new(v.to_vec()).unwrap()
    }

    fn triangle() -> Arrangement {
        arr(2, &[vec![1, 0], vec![0, 1], vec![1, -1]])
    }

    /// Brute-force maximum of e2 over compositions of `total` into `rank`
    /// nonnegative parts.
    fn gmp2_max_oracle(rank: usize, total: u64) -> u64 {
        fn rec(rank: usize, total: u64, acc: &mut Vec<u32>, best: &mut u64) {
            if rank == 1 {
                acc.push(total as u32);
                *best = (*best).max(e2(acc));
                acc.pop();
                return;
            }
            for first in 0..=total {
                acc.push(first as u32);
                rec(rank - 1, total - first, acc, best);
                acc.pop();
            }
        }
        let mut best = 0;
        rec(rank, total, &mut Vec::new(), &mut best);
        best
    }

    // braid(4) index order: x1-x2, x1-x3, x1-x4, x2-x3, x2-x4, x3-x4.
    const BRAID4_CIRCUIT: [usize; 4] = [0, 5, 1, 4];

    #[test]
    fn lmp2_examples() {
        assert_eq!(lmp2(&braid(4), &Multiplicity::ones(6)).unwrap(), 11);
        assert_eq!(lmp2(&boolean(3), &mult(&[1, 2, 3])).unwrap(), 11);
        assert_eq!(lmp2(&triangle(), &mult(&[2, 2, 2])).unwrap(), 9);
    }

    #[test]
    fn gmp2_examples() {
        assert_eq!(
            gmp2_from_exponents(&ExponentMultiset::new(vec![1, 2, 3])),
            11
        );
        assert_eq!(
            gmp2_from_exponents(&ExponentMultiset::new(vec![7, 0, 0, 0])),
            0
        );
        assert_eq!(gmp2_from_exponents(&ExponentMultiset::new(vec![3, 3])), 9);
        assert_eq!(gmp2_max(3, 3), 3);
        assert_eq!(gmp2_max(2, 5), 6);
        assert_eq!(gmp2_max(3, 38), 481);
        assert_eq!(gmp2_max_oracle(3, 38), 481);
        assert_eq!(gmp2_max(0, 5), 0);
        assert_eq!(gmp2_real_bound(3, 6), int(12));
    }

    #[test]
    fn gmp2_max_matches_exhaustive_search() {
        for rank in 1..=4 {
            for total in 0..=20 {
                let expect = gmp2_max_oracle(rank, total);
                assert_eq!(gmp2_max(rank, total), expect, "rank {rank} total {total}");
                assert_eq!(greedy_gmp2_max(rank, total), expect);
                assert!(gmp2_real_bound(rank, total) >= int(expect as i64));
            }
        }
    }

    #[test]
    fn circuit_gap_closed_forms() {
        let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
        assert_eq!(circuit_is_nonfree_check(3), (6, r(16, 3), r(2, 3)));
        assert_eq!(circuit_is_nonfree_check(4), (10, r(75, 8), r(5, 8)));
        assert_eq!(circuit_is_nonfree_check(5), (15, r(72, 5), r(3, 5)));
        for l in 3..10 {
            assert_eq!(circuit_is_nonfree_check(l).2, r(l as i64 + 1, 2 * l as i64));
        }
    }

    #[test]
    fn lmp_gmp_test_examples() {
        assert_eq!(
            nonfree_by_lmp_gmp(&braid(4), &Multiplicity::ones(6)).unwrap(),
            None
        );
        for m in [[1, 1, 1], [3, 1, 2], [5, 5, 1]] {
            assert_eq!(nonfree_by_lmp_gmp(&triangle(), &mult(&m)).unwrap(), None);
        }
        let mut m = vec![1; 6];
        for i in BRAID4_CIRCUIT {
            m[i] = 9;
        }
        let cert = nonfree_by_lmp_gmp(&braid(4), &mult(&m)).unwrap().unwrap();
        assert!(cert.lmp2_lower >= 486);
        assert_eq!(cert.gmp2_upper, 481);
        assert_eq!(cert.rank, 3);
        assert_eq!(cert.total_multiplicity, 38);
        assert!(cert.verify(&braid(4)));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let b = essentialize(&braid(4)).arrangement;
        let fam = nonfree_multiplicity_family(&b).unwrap();
        let cert = build_certificate(&b, &fam.multiplicity, Some(&fam.circuit), Some(fam.k0))
            .unwrap()
            .unwrap();
        let mut bad = cert.clone();
        bad.lmp2_lower += 1;
        assert!(!bad.verify(&b));
        let mut bad = cert.clone();
        bad.gmp2_upper -= 1;
        assert!(!bad.verify(&b));
        let mut bound_only = cert.clone();
        bound_only.lmp2_exact = false;
        bound_only.lmp2_lower = 6 * 81;
        assert!(bound_only.verify(&b));
        bound_only.circuit_indices = Some(vec![0, 1, 3, 5]);
        assert!(!bound_only.verify(&b));
    }

    #[test]
    fn circuits_on_braid4() {
        let b = essentialize(&braid(4)).arrangement;
        let proof = find_generic_circuit(&b).unwrap();
        let brute = find_generic_circuit_brute_force(&b).unwrap();
        for c in [&proof, &brute] {
            assert_eq!(c.indices.len(), 4);
            assert!(triples_independent(&b, &c.indices));
        }
        let mut expected = BRAID4_CIRCUIT.to_vec();
        expected.sort_unstable();
        assert!(is_generic_circuit(&b, &expected));
    }

    #[test]
    fn circuits_on_braid5() {
        let b = essentialize(&braid(5)).arrangement;
        for c in [
            find_generic_circuit(&b).unwrap(),
            find_generic_circuit_brute_force(&b).unwrap(),
        ] {
            assert_eq!(c.indices.len(), 5);
            assert!(triples_independent(&b, &c.indices));
        }
    }

    #[test]
    fn circuit_rejects_reducible() {
        assert!(matches!(
            find_generic_circuit(&boolean(3)),
            Err(Error::ReducibleInput(_))
        ));
        assert!(matches!(
            find_generic_circuit_brute_force(&boolean(3)),
            Err(Error::ReducibleInput(_))
        ));
        assert!(matches!(
            find_generic_circuit(&triangle()),
            Err(Error::ReducibleInput(_))
        ));
        // braid(4) itself is not essential.
        assert!(matches!(
            find_generic_circuit(&braid(4)),
            Err(Error::ReducibleInput(_))
        ));
    }

    #[test]
    fn rank3_case_analysis_branches() {
        // Deletion of the first plane is reducible (a pencil plus a line),
        // so the rank-3 case analysis runs. Images on x = 0 of y, z, y-z are
        // distinct: the no-collision case.
        let a = arr(
            3,
            &[
                vec![1, 1, 1],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, 1, -1],
                vec![1, 0, 0],
            ],
        );
        assert!(is_irreducible(&a));
        assert!(!is_irreducible(&deletion(&a, 0).unwrap()));
        let c = find_generic_circuit(&a).unwrap();
        assert!(is_generic_circuit(&a, &c.indices));

        // braid(4) essentialized: deletion of x1-x2 is irreducible, so we
        // recurse; its deletion in turn hits the collision case.
        let b = essentialize(&braid(4)).arrangement;
        let d = deletion(&b, 0).unwrap();
        assert!(is_irreducible(&d));
        let r = restriction(&d, 0).unwrap();
        assert!(r.arrangement.len() < d.len() - 1);
        let c = find_generic_circuit(&d).unwrap();
        assert!(is_generic_circuit(&d, &c.indices));
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_k0(3, 6).unwrap(), 9);
        assert_eq!(gmp2_max(3, 34), 385);
        assert!(!circuit_bound_holds(3, 6, 8));
        assert_eq!(threshold_k0(4, 10).unwrap(), 31);
        assert_eq!(gmp2_max(4, 160), 9600);
        assert_eq!(gmp2_max(4, 155), 9009);
        assert!(!circuit_bound_holds(4, 10, 30));
        // The circuit alone: the bound holds from k = 1 on.
        assert_eq!(threshold_k0(3, 4).unwrap(), 1);
    }

    #[test]
    fn threshold_tail_holds() {
        for (l, n) in [(3, 6), (4, 10), (5, 15), (3, 4), (3, 9), (4, 7)] {
            let k0 = threshold_k0(l, n).unwrap();
            for k in k0..k0 + 200 {
                assert!(circuit_bound_holds(l, n, k), "l={l} n={n} k={k}");
            }
        }
    }

    #[test]
    fn family_on_braid4() {
        let b = essentialize(&braid(4)).arrangement;
        let fam = nonfree_multiplicity_family(&b).unwrap();
        assert_eq!(fam.k0, 9);
        assert_eq!(fam.multiplicity.total(), 38);
        assert!(matches!(
            nonfree_multiplicity_family(&triangle()),
            Err(Error::ReducibleInput(_))
        ));
    }

    #[test]
    fn verdict_examples() {
        let line = arr(1, &[vec![1]]);
        let p = product(&product(&triangle(), &line), &line);
        let v = decide_totally_free(&p).unwrap();
        assert!(v.is_totally_free());
        assert_eq!(v.decomposition().factor_ranks(), vec![2, 1, 1]);

        let v = decide_totally_free(&Arrangement::empty(3)).unwrap();
        assert!(v.is_totally_free());
        assert!(v.decomposition().factors.is_empty());

        match decide_totally_free(&braid(4)).unwrap() {
            Verdict::NotTotallyFree(w) => {
                assert_eq!(w.k0, 9);
                assert_eq!(w.circuit.indices.len(), 4);
                assert!(triples_independent(&braid(4), &w.circuit.indices));
                assert!(w.certificate.lmp2_lower > w.certificate.gmp2_upper);
                assert!(w.certificate.verify(&w.factor().arrangement));
                assert_eq!(w.multiplicity.total(), 38);
            }
            Verdict::TotallyFree(_) => panic!("braid(4) is not totally free"),
        }
    }

    #[test]
    fn verdict_on_reducible_with_big_factor() {
        let line = arr(1, &[vec![1]]);
        let p = product(&line, &braid(4));
        match decide_totally_free(&p).unwrap() {
            Verdict::NotTotallyFree(w) => {
                assert_eq!(w.factor_position, 1);
                assert_eq!(w.factor().indices, (1..7).collect::<Vec<_>>());
                assert!(w.circuit.indices.iter().all(|&i| i >= 1));
                assert_eq!(w.multiplicity.len(), 7);
                assert_eq!(w.multiplicity.values()[0], 1);
            }
            Verdict::TotallyFree(_) => panic!(),
        }
    }

    #[test]
    fn lmp_equals_gmp_on_small_totally_free() {
        let a = product(&triangle(), &arr(1, &[vec![1]]));
        for m in [[1, 1, 1, 1], [2, 3, 1, 4], [5, 5, 5, 2], [1, 4, 2, 3]] {
            let m = mult(&m);
            let e = exponents_totally_free(&a, &m).unwrap();
            assert_eq!(lmp2(&a, &m).unwrap(), gmp2_from_exponents(&e));
        }
    }
}
