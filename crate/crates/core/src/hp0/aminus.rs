//! The odd sector of the `D_n` invariants.
//!
//! `T = diag(-1, 1, ..., 1)` normalizes `D_n` and splits `A = O^{D_n}` into
//! eigenspaces `A_+ = O^{B_n}` (orbit sums with every pair of even degree)
//! and `A_-` (every pair of odd degree). The identity `A_- = {A_+, A_-}`
//! is checked degree by degree as a rank equality.

use std::cmp::Ordering;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::orbit::{orbit_bracket_row, ExpandedOrbit, OrbitSpace};
use crate::error::{Error, Result};
use crate::linalg::{certified_rank, RankOptions, SparseMatrix};
use crate::poisson::PoissonStructure;
use crate::poly::VariableContext;
use crate::scalar::ExactScalar;
use crate::weyl::invariants::{
    canonical, distinct_permutations, exponents_to_pairs, orbit_sum, pair_key, pair_multisets, Pair,
};

/// Orbit representatives of `A_-` in one degree.
pub fn odd_sector_orbits(n: usize, degree: usize) -> Vec<Vec<Pair>> {
    pair_multisets(n, degree).into_iter().filter(|r| r.iter().all(|p| (p.0 + p.1) % 2 == 1)).collect()
}

/// Orbit representatives of `A_+` in one degree.
pub fn even_sector_orbits(n: usize, degree: usize) -> Vec<Vec<Pair>> {
    pair_multisets(n, degree).into_iter().filter(|r| r.iter().all(|p| (p.0 + p.1) % 2 == 0)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AminusDegree {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub pass: bool,
}

/// `dim (A_-)_d = rank {A_+, A_-}_d` for `d = 0..=max_degree`; degrees
/// where `A_-` vanishes pass vacuously.
pub fn check_aminus_identity(n: usize, max_degree: usize) -> Result<Vec<AminusDegree>> {
    if n < 2 {
        return Err(Error::invalid("the odd sector needs n >= 2"));
    }
    let mut out = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let target = OrbitSpace::new(odd_sector_orbits(n, d));
        let mut m = SparseMatrix::new(target.len());
        if !target.is_empty() {
            for a in 1..=d + 1 {
                let b = d + 2 - a;
                let vs = odd_sector_orbits(n, b);
                if vs.is_empty() {
                    continue;
                }
                for u in even_sector_orbits(n, a) {
                    let eu = ExpandedOrbit::new(u);
                    for v in &vs {
                        m.push_row(orbit_bracket_row(&eu, v, &target));
                    }
                }
            }
        }
        let rank = certified_rank(&m, RankOptions::default(), false).rank;
        out.push(AminusDegree { degree: d, dim: target.len(), rank, pass: rank == target.len() });
    }
    Ok(out)
}

/// Pair order: larger total degree wins, then larger `x` exponent.
pub fn pair_cmp(p: Pair, q: Pair) -> Ordering {
    pair_key(p).cmp(&pair_key(q))
}

/// Order on symmetrized monomials: lexicographic over their descending pair
/// lists.
pub fn orbit_cmp(a: &[Pair], b: &[Pair]) -> Ordering {
    for (p, q) in a.iter().zip(b) {
        match pair_cmp(*p, *q) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct LeadingTermReport {
    pub pairs: Vec<Pair>,
    pub expected: ExactScalar,
    pub found: ExactScalar,
    /// Orbits below the target that appear with nonzero coefficient.
    pub lower_terms: Vec<Vec<Pair>>,
    pub pass: bool,
}

/// Expands `{symm(x_1^{a_1+1} y_1^{b_1}), symm(y_1 x_2^{a_2} y_2^{b_2} ... x_n^{a_n} y_n^{b_n})}`
/// with `symm = (1/n!) sum_sigma sigma` and compares it with
/// `((1 + c)/n)(a_1 + 1) symm(prod x_i^{a_i} y_i^{b_i})` plus terms above it,
/// where `c` counts `i >= 2` with `(a_i, b_i) = (0, 1)`.
///
/// `pairs` must be sorted descending and every `a_i + b_i` odd.
pub fn leading_term_identity(pairs: &[Pair]) -> Result<LeadingTermReport> {
    let n = pairs.len();
    if n < 2 {
        return Err(Error::invalid("need n >= 2"));
    }
    if canonical(pairs) != pairs {
        return Err(Error::invalid("pairs must be sorted descending"));
    }
    if pairs.iter().any(|p| (p.0 + p.1) % 2 == 0) {
        return Err(Error::invalid("every pair must have odd degree"));
    }
    let ctx = VariableContext::darboux(n);
    let poisson = PoissonStructure::darboux(n);
    let symm = |rep: &[Pair]| {
        let size = distinct_permutations(rep).len() as i64;
        orbit_sum(&ctx, &canonical(rep)).scale(&ExactScalar::ratio(1, size))
    };
    let mut first = vec![(0u16, 0u16); n];
    first[0] = (pairs[0].0 + 1, pairs[0].1);
    let mut second = pairs.to_vec();
    second[0] = (0, 1);
    let br = poisson.bracket(&symm(&first), &symm(&second))?;

    // Coefficient of symm(t) in an invariant is coef(t) * |orbit(t)|.
    let mut coeffs: FxHashMap<Vec<Pair>, ExactScalar> = FxHashMap::default();
    for (m, c) in br.terms() {
        let rep = canonical(&exponents_to_pairs(m.exponents()));
        coeffs.entry(rep).or_insert_with(|| c.clone());
    }
    let target = pairs.to_vec();
    let size = |r: &[Pair]| ExactScalar::from_int(distinct_permutations(r).len() as i64);
    let found = coeffs.get(&target).map(|c| c * &size(&target)).unwrap_or_default();
    let c = pairs[1..].iter().filter(|&&p| p == (0, 1)).count() as i64;
    let expected = ExactScalar::ratio((1 + c) * (i64::from(pairs[0].0) + 1), n as i64);
    let mut lower_terms: Vec<Vec<Pair>> =
        coeffs.keys().filter(|r| orbit_cmp(r, &target) == Ordering::Less).cloned().collect();
    lower_terms.sort();
    let pass = found == expected && lower_terms.is_empty();
    Ok(LeadingTermReport { pairs: target, expected, found, lower_terms, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        for r in check_aminus_identity(2, 6).unwrap() {
            assert!(r.pass, "{r:?}");
        }
        let r = check_aminus_identity(3, 2).unwrap();
        assert!(r.iter().all(|x| x.dim == 0 && x.pass));
    }

    #[test]
    fn leading_term_by_hand() {
        let r = leading_term_identity(&[(1, 0), (0, 1)]).unwrap();
        assert_eq!(r.expected, ExactScalar::from_int(2));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn leading_term_three() {
        for pairs in [vec![(2, 1), (1, 0), (0, 1)], vec![(1, 0), (1, 0), (1, 0)], vec![(0, 3), (0, 1), (0, 1)]] {
            let r = leading_term_identity(&pairs).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn order() {
        assert_eq!(pair_cmp((0, 3), (2, 0)), Ordering::Greater);
        assert_eq!(pair_cmp((2, 0), (1, 1)), Ordering::Greater);
        assert_eq!(orbit_cmp(&[(2, 1), (0, 1)], &[(2, 1), (1, 0)]), Ordering::Less);
    }
}
