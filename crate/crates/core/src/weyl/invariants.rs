//! Orbit-sum bases of invariant polynomials.
//!
//! A monomial `prod x_i^{a_i} y_i^{b_i}` is recorded as its list of
//! exponent pairs `(a_i, b_i)`. Permutation orbits are multisets of pairs,
//! represented by the list sorted descending.

use rustc_hash::FxHashMap;

use super::group::{GroupFamily, GroupSpec};
use crate::error::Result;
use crate::linalg::echelon::{eliminate, Rationals};
use crate::poly::{Context, SparsePolynomial, VariableContext};
use crate::scalar::ExactScalar;

pub type Pair = (u16, u16);

/// Orbit key order: larger total degree first, then larger `x` exponent.
pub fn pair_key(p: Pair) -> (u16, u16) {
    (p.0 + p.1, p.0)
}

/// Every multiset of `n` exponent pairs of total degree `degree`, each as a
/// list sorted descending by [`pair_key`]; deterministic order.
pub fn pair_multisets(n: usize, degree: usize) -> Vec<Vec<Pair>> {
    let mut pairs: Vec<Pair> = Vec::new();
    for t in 0..=degree as u16 {
        for a in 0..=t {
            pairs.push((a, t - a));
        }
    }
    pairs.sort_by_key(|p| std::cmp::Reverse(pair_key(*p)));
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(pairs: &[Pair], start: usize, left: usize, slots: usize, cur: &mut Vec<Pair>, out: &mut Vec<Vec<Pair>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (k, &p) in pairs.iter().enumerate().skip(start) {
            let d = (p.0 + p.1) as usize;
            if d > left || d * slots < left {
                continue;
            }
            cur.push(p);
            rec(pairs, k, left - d, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, degree, n, &mut cur, &mut out);
    out
}

/// Whether the orbit sum of a monomial with these pairs is a nonzero
/// invariant of a monomially acting group.
pub fn admissible(family: GroupFamily, pairs: &[Pair]) -> bool {
    match family {
        GroupFamily::SymmetricFull | GroupFamily::SymmetricReflection => true,
        GroupFamily::Hyperoctahedral => pairs.iter().all(|p| (p.0 + p.1) % 2 == 0),
        GroupFamily::Demihyperoctahedral => {
            let odd = pairs.iter().filter(|p| (p.0 + p.1) % 2 == 1).count();
            odd == 0 || odd == pairs.len()
        }
    }
}

/// Distinct orderings of a multiset of pairs.
pub fn distinct_permutations(rep: &[Pair]) -> Vec<Vec<Pair>> {
    let mut cur = rep.to_vec();
    cur.sort();
    let n = cur.len();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Exponent vector of a pair list in a context laid out as
/// `x_1..x_m, y_1..y_m`.
pub fn pairs_to_exponents(pairs: &[Pair]) -> Vec<i16> {
    let m = pairs.len();
    let mut e = vec![0i16; 2 * m];
    for (i, p) in pairs.iter().enumerate() {
        e[i] = p.0 as i16;
        e[m + i] = p.1 as i16;
    }
    e
}

pub fn exponents_to_pairs(e: &[i16]) -> Vec<Pair> {
    let m = e.len() / 2;
    (0..m).map(|i| (e[i] as u16, e[m + i] as u16)).collect()
}

/// Sorted-descending representative of a pair list.
pub fn canonical(pairs: &[Pair]) -> Vec<Pair> {
    let mut v = pairs.to_vec();
    v.sort_by_key(|p| std::cmp::Reverse(pair_key(*p)));
    v
}

/// Sum of the distinct monomials in the permutation orbit of `rep`.
pub fn orbit_sum(ctx: &Context, rep: &[Pair]) -> SparsePolynomial {
    let terms = distinct_permutations(rep).into_iter().map(|p| (pairs_to_exponents(&p), ExactScalar::one()));
    SparsePolynomial::from_terms(ctx, terms.collect::<Vec<_>>()).expect("valid exponents")
}

/// Orbit representatives spanning the degree-`degree` invariants of a
/// monomially acting group.
pub fn invariant_orbits(spec: &GroupSpec, degree: usize) -> Vec<Vec<Pair>> {
    pair_multisets(spec.n, degree).into_iter().filter(|r| admissible(spec.family, r)).collect()
}

/// Basis of `O^G` in one degree: orbit sums, one per orbit, for monomial
/// actions. For the reflection representation, the images of the `S_n`
/// orbit sums of `C^{2n}` under elimination, keeping the first linearly
/// independent ones.
pub fn invariant_basis(spec: &GroupSpec, degree: usize) -> Vec<SparsePolynomial> {
    let ctx = spec.context();
    if spec.is_monomial() {
        return invariant_orbits(spec, degree).iter().map(|r| orbit_sum(&ctx, r)).collect();
    }
    let images = spec.structure().coordinate_forms();
    let subst: Vec<SparsePolynomial> = images.0.into_iter().chain(images.1).collect();
    let darboux = VariableContext::darboux(spec.n);
    let candidates: Vec<SparsePolynomial> = pair_multisets(spec.n, degree)
        .iter()
        .map(|r| orbit_sum(&darboux, r).substitute(&subst).expect("linear substitution"))
        .collect();
    independent_subset(candidates)
}

/// Basis of the `S_{n-1}`-invariants (stabilizer of the last point) in the
/// reflection ring of `S_n`: plain orbit sums over the `n - 1` surviving
/// coordinate pairs.
pub fn stabilizer_basis(n: usize, degree: usize) -> Vec<SparsePolynomial> {
    let ctx = VariableContext::reflection(n);
    pair_multisets(n - 1, degree).iter().map(|r| orbit_sum(&ctx, r)).collect()
}

/// Greedy linearly independent sub-list, in order.
pub fn independent_subset(polys: Vec<SparsePolynomial>) -> Vec<SparsePolynomial> {
    let mut cols: FxHashMap<Vec<i16>, u32> = FxHashMap::default();
    let rows: Vec<Vec<(u32, ExactScalar)>> = polys
        .iter()
        .map(|p| {
            let mut r: Vec<(u32, ExactScalar)> = p
                .terms()
                .map(|(m, c)| {
                    let next = cols.len() as u32;
                    (*cols.entry(m.exponents().to_vec()).or_insert(next), c.clone())
                })
                .collect();
            r.sort_by_key(|e| e.0);
            r
        })
        .collect();
    let ech = eliminate(&Rationals, cols.len(), rows.iter().enumerate().map(|(i, r)| (i, r.as_slice())));
    let mut keep: Vec<usize> = ech.source.iter().flatten().copied().collect();
    keep.sort_unstable();
    let mut polys: Vec<Option<SparsePolynomial>> = polys.into_iter().map(Some).collect();
    keep.into_iter().map(|i| polys[i].take().expect("unique")).collect()
}

/// Group average `|G|^{-1} sum_g g.f`; enumerates the group.
pub fn reynolds(spec: &GroupSpec, f: &SparsePolynomial) -> Result<SparsePolynomial> {
    let elems = spec.elements();
    let mut acc = SparsePolynomial::zero(f.context());
    for g in &elems {
        acc = acc.add(&super::group::act(g, f, spec)?)?;
    }
    Ok(acc.scale(&ExactScalar::ratio(1, elems.len() as i64)))
}

/// Whether `f` is fixed by every generator.
pub fn is_invariant(spec: &GroupSpec, f: &SparsePolynomial) -> Result<bool> {
    for g in spec.generators() {
        if super::group::act(&g, f, spec)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: GroupFamily, n: usize) -> GroupSpec {
        GroupSpec::new(f, n).unwrap()
    }

    #[test]
    fn hyperoctahedral_one() {
        let b1 = spec(GroupFamily::Hyperoctahedral, 1);
        let mut d2: Vec<String> = invariant_basis(&b1, 2).iter().map(|p| p.to_string()).collect();
        d2.sort();
        assert_eq!(d2, vec!["x1*y1", "x1^2", "y1^2"]);
        assert!(invariant_basis(&b1, 1).is_empty());
    }

    #[test]
    fn demihyperoctahedral_two_degree_two() {
        let d2 = spec(GroupFamily::Demihyperoctahedral, 2);
        let basis = invariant_basis(&d2, 2);
        assert_eq!(basis.len(), 6);
        let orbits = pair_multisets(2, 2);
        assert_eq!(orbits.len(), 6);
        assert_eq!(orbits.iter().map(|r| distinct_permutations(r).len()).sum::<usize>(), 10);
        for b in &basis {
            assert!(is_invariant(&d2, b).unwrap());
        }
        let names: Vec<String> = basis.iter().map(|p| p.to_string()).collect();
        assert!(names.contains(&"x1*y2 + x2*y1".to_string()));
        assert!(names.contains(&"x1*x2".to_string()));
    }

    #[test]
    fn reynolds_lands_in_span() {
        let b2 = spec(GroupFamily::Hyperoctahedral, 2);
        let ctx = b2.context();
        let f = SparsePolynomial::monomial(&ctx, &[2, 0, 1, 1], ExactScalar::one()).unwrap();
        let r = reynolds(&b2, &f).unwrap();
        let mut basis = invariant_basis(&b2, 4);
        let n = basis.len();
        basis.push(r);
        assert_eq!(independent_subset(basis).len(), n);
    }

    #[test]
    fn reflection_invariant_dimensions() {
        // Compare with the rank of group averages of all monomials.
        let s3 = spec(GroupFamily::SymmetricReflection, 3);
        let ctx = s3.context();
        let dims: Vec<usize> = (0..=4).map(|d| invariant_basis(&s3, d).len()).collect();
        for (d, &want) in dims.iter().enumerate() {
            let mut avgs = Vec::new();
            for r in pair_multisets(2, d) {
                for p in distinct_permutations(&r) {
                    let m = SparsePolynomial::monomial(&ctx, &pairs_to_exponents(&p), ExactScalar::one()).unwrap();
                    avgs.push(reynolds(&s3, &m).unwrap());
                }
            }
            assert_eq!(independent_subset(avgs).len(), want, "degree {d}");
        }
        assert_eq!(&dims[..4], &[1, 0, 3, 4]);
        for d in 0..=3 {
            for b in invariant_basis(&s3, d) {
                assert!(is_invariant(&s3, &b).unwrap());
            }
        }
    }

    #[test]
    fn multiset_counts() {
        let mut brute = std::collections::BTreeSet::new();
        for a in 0..=2u16 {
            for b in 0..=2u16 {
                for c in 0..=2u16 {
                    for d in 0..=2u16 {
                        for e in 0..=2u16 {
                            for f in 0..=2u16 {
                                if a + b + c + d + e + f == 2 {
                                    brute.insert(canonical(&[(a, b), (c, d), (e, f)]));
                                }
                            }
                        }
                    }
                }
            }
        }
        assert_eq!(pair_multisets(3, 2).len(), brute.len());
    }
}
