//! Two explicit families of solutions, and where the kernel goes beyond
//! them.
//!
//! Every multiple of `s_1^2` is a solution. So is
//! `P - s_1 xi_1(P)` for `P = s_2^k s_{k+1} g` with `g` a monomial in
//! `s_2, ..., s_{k+1}`; the restriction on `g` keeps it a polynomial.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::constraints::{assemble, component_columns, Parts, QTable};
use super::solve::ComponentKernel;
use super::xi::xi_field;
use crate::error::{Error, Result};
use crate::linalg::canonical_basis;
use crate::partitions::partitions;
use crate::poly::{SparsePolynomial, VariableContext};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `s_1^2 * m`, with `m` given by its parts.
    SquareMultiple { m: Parts },
    /// `P - s_1 xi_1(P)`, `P = s_2^k s_{k+1} g`.
    Corrected { k: usize, g: Parts },
}

#[derive(Clone, Debug)]
pub struct FamilyElement {
    pub kind: FamilyKind,
    pub poly: SparsePolynomial,
}

/// `(k, g)` with `g` a partition into parts in `2..=k+1` and
/// `3k + 1 + |g| = n`.
pub fn admissible_pairs(n: usize) -> Vec<(usize, Parts)> {
    let mut out = Vec::new();
    for k in 1.. {
        if 3 * k + 1 > n {
            break;
        }
        for g in partitions(n - 3 * k - 1) {
            if g.iter().all(|&p| (2..=k + 1).contains(&p)) {
                out.push((k, g.iter().map(|&p| p as u8).collect()));
            }
        }
    }
    out
}

/// The same pairs found by scanning every partition of `n` for a
/// decomposition `2^k (k+1) g`.
pub fn admissible_pairs_brute(n: usize) -> Vec<(usize, Parts)> {
    let mut out = Vec::new();
    for lam in partitions(n) {
        for k in 1..=n {
            let mut rest = lam.clone();
            let mut ok = true;
            for part in std::iter::repeat_n(2, k).chain([k + 1]) {
                match rest.iter().position(|&p| p == part) {
                    Some(i) => {
                        rest.remove(i);
                    }
                    None => ok = false,
                }
            }
            if ok && rest.iter().all(|&p| (2..=k + 1).contains(&p)) {
                out.push((k, rest.iter().map(|&p| p as u8).collect()));
            }
        }
    }
    out.sort();
    out
}

fn monomial(n: usize, parts: &[u8]) -> SparsePolynomial {
    let ctx = VariableContext::s_variables(n);
    let mut e = vec![0i16; n];
    for &p in parts {
        e[p as usize - 1] += 1;
    }
    SparsePolynomial::monomial(&ctx, &e, ExactScalar::one()).expect("parts at most n")
}

/// Both families in degree `n`, as polynomials in `s_1..s_n`.
pub fn family_generators(n: usize) -> Result<Vec<FamilyElement>> {
    if n < 2 {
        return Err(Error::invalid("the families start in degree 2"));
    }
    let ctx = VariableContext::s_variables(n);
    let mut out = Vec::new();
    for m in partitions(n - 2) {
        let mut parts: Parts = m.iter().map(|&p| p as u8).collect();
        let kind = FamilyKind::SquareMultiple { m: parts.clone() };
        parts.extend([1, 1]);
        out.push(FamilyElement { kind, poly: monomial(n, &parts) });
    }
    let xi1 = xi_field(1, n)?;
    let back: Vec<usize> = (0..xi1.context().arity()).map(|i| i.min(n - 1)).collect();
    for (k, g) in admissible_pairs(n) {
        let mut parts = g.clone();
        parts.extend(std::iter::repeat_n(2, k));
        parts.push(k as u8 + 1);
        let p = monomial(n, &parts);
        let s1 = SparsePolynomial::var(xi1.context(), 0);
        let corr = s1.mul(&xi1.apply(&p)?)?;
        if corr.terms().any(|(m, _)| m.exponents().iter().any(|&e| e < 0)) {
            return Err(Error::invalid(format!("correction for k = {k}, g = {g:?} is not a polynomial")));
        }
        if corr.terms().any(|(m, _)| m.exponents()[n..].iter().any(|&e| e != 0)) {
            return Err(Error::invalid("correction leaves s_1..s_n"));
        }
        let corr = SparsePolynomial::from_terms(
            &ctx,
            corr.terms().map(|(m, c)| {
                let mut e = vec![0i16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[back[i]] += x;
                }
                (e, c.clone())
            }),
        )?;
        out.push(FamilyElement { kind: FamilyKind::Corrected { k, g }, poly: p.sub(&corr)? });
    }
    Ok(out)
}

/// Splits a polynomial in `s_1, s_2, ...` of weighted degree `n` into
/// coordinate vectors over [`component_columns`], keyed by length.
pub fn component_coordinates(f: &SparsePolynomial, n: usize) -> Result<BTreeMap<usize, Vec<(u32, ExactScalar)>>> {
    let mut index: FxHashMap<usize, FxHashMap<Parts, u32>> = FxHashMap::default();
    let mut out: BTreeMap<usize, Vec<(u32, ExactScalar)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut parts: Parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e < 0 {
                return Err(Error::invalid("Laurent input"));
            }
            parts.extend(std::iter::repeat_n(i as u8 + 1, e as usize));
        }
        if parts.iter().map(|&p| p as usize).sum::<usize>() != n {
            return Err(Error::NotHomogeneous);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let len = parts.len();
        let cols = index.entry(len).or_insert_with(|| {
            component_columns(n, len).into_iter().enumerate().map(|(i, p)| (p, i as u32)).collect()
        });
        out.entry(len).or_default().push((cols[&parts], c.clone()));
    }
    for v in out.values_mut() {
        v.sort_by_key(|e| e.0);
    }
    Ok(out)
}

/// Whether `f` (weighted degree `n`) satisfies every constraint `xi_k`,
/// `k = 1..=n`.
pub fn satisfies_constraints(f: &SparsePolynomial, n: usize, q: &QTable) -> Result<bool> {
    for (len, v) in component_coordinates(f, n)? {
        let sys = assemble(n, len, 1..=n, q);
        let dense: FxHashMap<u32, &ExactScalar> = v.iter().map(|(c, x)| (*c, x)).collect();
        for r in sys.exact_rows(q) {
            let mut acc = ExactScalar::zero();
            for (c, x) in &r {
                if let Some(y) = dense.get(c) {
                    acc += &(x * *y);
                }
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Per component: dimension spanned by the families versus the kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyComparison {
    pub n: usize,
    pub len: usize,
    pub weight: i32,
    pub family_dim: usize,
    pub kernel_dim: usize,
    /// Kernel vectors outside the family span, reduced against it.
    #[serde(skip)]
    pub extra: Vec<Vec<(u32, ExactScalar)>>,
}

impl FamilyComparison {
    pub fn has_extra(&self) -> bool {
        self.kernel_dim > self.family_dim
    }
}

/// Compares the family span with each solved component of degree `n`.
pub fn compare_families(n: usize, kernels: &[ComponentKernel]) -> Result<Vec<FamilyComparison>> {
    let mut by_len: BTreeMap<usize, Vec<Vec<(u32, ExactScalar)>>> = BTreeMap::new();
    for e in family_generators(n)? {
        for (len, v) in component_coordinates(&e.poly, n)? {
            by_len.entry(len).or_default().push(v);
        }
    }
    let mut out = Vec::new();
    for k in kernels {
        let fam = by_len.remove(&k.len).unwrap_or_default();
        let ncols = k.columns.len();
        let span = canonical_basis(ncols, &fam);
        let mut extra = Vec::new();
        let mut joint = span.clone();
        for v in &k.kernel {
            let before = joint.len();
            joint.push(v.clone());
            joint = canonical_basis(ncols, &joint);
            if joint.len() > before {
                extra.push(v.clone());
            }
        }
        out.push(FamilyComparison {
            n,
            len: k.len,
            weight: k.weight(),
            family_dim: span.len(),
            kernel_dim: k.dim(),
            extra,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::typed::solve::{solve_degree, SolveOptions};

    #[test]
    fn small_degrees() {
        let f2 = family_generators(2).unwrap();
        assert_eq!(f2.len(), 1);
        assert_eq!(f2[0].poly.to_string(), "s1^2");
        assert_eq!(family_generators(3).unwrap().len(), 1);
        assert!(admissible_pairs(5).is_empty());
        assert_eq!(family_generators(5).unwrap().len(), 3);
        let f4 = family_generators(4).unwrap();
        let ctx = VariableContext::s_variables(4);
        let want = parse_polynomial(&ctx, "s2^2 - 3*s1*s3").unwrap();
        assert!(f4.iter().any(|e| e.poly == want));
    }

    #[test]
    fn enumeration_matches_brute() {
        for n in 2..=24 {
            let mut a = admissible_pairs(n);
            a.sort();
            assert_eq!(a, admissible_pairs_brute(n), "n={n}");
        }
    }

    #[test]
    fn families_solve_constraints() {
        for n in 2..=9 {
            let q = QTable::new(n);
            for e in family_generators(n).unwrap() {
                assert!(satisfies_constraints(&e.poly, n, &q).unwrap(), "{:?}", e.kind);
            }
        }
    }

    #[test]
    fn extra_solution_in_degree_eight() {
        let q = QTable::new(8);
        let ks = solve_degree(8, &q, &SolveOptions::default());
        let cmp = compare_families(8, &ks).unwrap();
        let extra: Vec<i32> = cmp.iter().filter(|c| c.has_extra()).map(|c| c.weight).collect();
        assert_eq!(extra, vec![-20]);
        for n in 2..=7 {
            let q = QTable::new(n);
            let ks = solve_degree(n, &q, &SolveOptions::default());
            assert!(compare_families(n, &ks).unwrap().iter().all(|c| !c.has_extra()), "n={n}");
        }
    }
}
