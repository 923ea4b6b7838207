//! Brackets of orbit sums for groups acting by signed permutations of
//! Darboux pairs, computed directly in orbit coordinates.
//!
//! For `u` invariant and `v` the orbit sum of a monomial `m`,
//! `{u, v} = |Stab m|^{-1} sum_{sigma in S_n} sigma {u, m}`, so the
//! coefficient of an orbit representative `t` in `{u, v}` is
//! `|Stab t| / |Stab m|` times the sum of the coefficients of `{u, m}` over
//! the orbit of `t`. Rows are scaled by `|Stab m|`, which keeps every entry
//! an integer and leaves the span unchanged.

use rustc_hash::FxHashMap;

use crate::scalar::ExactScalar;
use crate::weyl::invariants::{canonical, distinct_permutations, Pair};

/// `prod mult!` over repeated pairs: the order of the `S_n` stabilizer.
pub fn stabilizer_order(rep: &[Pair]) -> i128 {
    let mut counts: FxHashMap<Pair, i128> = FxHashMap::default();
    for p in rep {
        *counts.entry(*p).or_insert(0) += 1;
    }
    counts.values().map(|&c| (1..=c).product::<i128>()).product()
}

/// Indexed set of orbit representatives used as matrix columns.
#[derive(Clone, Debug, Default)]
pub struct OrbitSpace {
    reps: Vec<Vec<Pair>>,
    index: FxHashMap<Vec<Pair>, u32>,
}

impl OrbitSpace {
    pub fn new(reps: Vec<Vec<Pair>>) -> Self {
        let index = reps.iter().enumerate().map(|(i, r)| (r.clone(), i as u32)).collect();
        Self { reps, index }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Vec<Pair>] {
        &self.reps
    }

    pub fn index_of(&self, rep: &[Pair]) -> Option<u32> {
        self.index.get(rep).copied()
    }
}

/// An orbit sum held as the list of its distinct monomials.
#[derive(Clone, Debug)]
pub struct ExpandedOrbit {
    pub rep: Vec<Pair>,
    pub members: Vec<Vec<Pair>>,
}

impl ExpandedOrbit {
    pub fn new(rep: Vec<Pair>) -> Self {
        let members = distinct_permutations(&rep);
        Self { rep, members }
    }
}

/// `{x^a y^b, x^c y^d}` for single monomials given as pair lists, as
/// `(coefficient, result)` terms.
pub fn monomial_bracket(u: &[Pair], m: &[Pair], mut emit: impl FnMut(i128, &[Pair])) {
    let n = u.len();
    let mut base: Vec<Pair> = u.iter().zip(m).map(|(p, q)| (p.0 + q.0, p.1 + q.1)).collect();
    for i in 0..n {
        let (a, b) = (i128::from(u[i].0), i128::from(u[i].1));
        let (c, d) = (i128::from(m[i].0), i128::from(m[i].1));
        let coef = a * d - b * c;
        if coef == 0 {
            continue;
        }
        let saved = base[i];
        base[i] = (saved.0 - 1, saved.1 - 1);
        emit(coef, &base);
        base[i] = saved;
    }
}

/// Row of `{orbit sum of u, orbit sum of m}` in the coordinates of
/// `target`, scaled by `|Stab m|`. Terms on orbits outside `target` must
/// cancel; in debug builds this is asserted.
pub fn orbit_bracket_row(u: &ExpandedOrbit, m: &[Pair], target: &OrbitSpace) -> Vec<(u32, ExactScalar)> {
    let mut acc: FxHashMap<Vec<Pair>, i128> = FxHashMap::default();
    for member in &u.members {
        monomial_bracket(member, m, |c, t| {
            *acc.entry(canonical(t)).or_insert(0) += c;
        });
    }
    let mut row = Vec::with_capacity(acc.len());
    for (rep, c) in acc {
        if c == 0 {
            continue;
        }
        match target.index_of(&rep) {
            Some(col) => row.push((col, ExactScalar::from_bigint((c * stabilizer_order(&rep)).into()))),
            None => debug_assert!(false, "bracket left the invariant subspace"),
        }
    }
    row.sort_by_key(|e| e.0);
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::PoissonStructure;
    use crate::weyl::invariants::{orbit_sum, pair_multisets};

    #[test]
    fn stabilizers() {
        assert_eq!(stabilizer_order(&[(1, 0), (1, 0), (0, 1)]), 2);
        assert_eq!(stabilizer_order(&[(0, 0), (0, 0), (0, 0)]), 6);
    }

    #[test]
    fn orbit_rows_match_polynomial_brackets() {
        let n = 3;
        let p = PoissonStructure::darboux(n);
        let ctx = p.context().clone();
        let degree = 4;
        let target = OrbitSpace::new(pair_multisets(n, degree));
        for ru in pair_multisets(n, 2) {
            for rv in pair_multisets(n, 4) {
                let u = orbit_sum(&ctx, &ru);
                let v = orbit_sum(&ctx, &rv);
                let br = p.bracket(&u, &v).unwrap();
                let row = orbit_bracket_row(&ExpandedOrbit::new(ru.clone()), &rv, &target);
                let scale = ExactScalar::from_bigint(stabilizer_order(&rv).into());
                for (i, rep) in target.reps().iter().enumerate() {
                    let e = crate::weyl::invariants::pairs_to_exponents(rep);
                    let want = &br.coefficient_of(&e) * &scale;
                    let got = row.iter().find(|x| x.0 == i as u32).map(|x| x.1.clone()).unwrap_or_default();
                    assert_eq!(got, want, "u={ru:?} v={rv:?} t={rep:?}");
                }
            }
        }
    }
}
