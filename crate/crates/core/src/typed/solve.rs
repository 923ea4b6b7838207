//! Exact kernels of the constraint systems.
//!
//! Each component is solved modulo a few large primes: the rows are
//! compressed by a random projection to a square-ish dense matrix, reduced,
//! and the canonical kernel basis (identity on the free columns) is lifted
//! to the rationals by Chinese remaindering and rational reconstruction.
//! The lift is accepted only after a multi-modular check that it kills every
//! original row, with enough primes to exceed the height bound of the
//! integerized products. That check makes the result exact: the rank over a
//! prime never exceeds the rank over `Q`, so a verified kernel of the
//! modular dimension is the whole rational kernel.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::constraints::{assemble, modular_entries, reduce_table, ConstraintSystem, Parts, QTable};
use crate::linalg::crt::{crt_combine, large_primes, rational_reconstruct};
use crate::linalg::modp::{add_mod, inv_mod, mul_mod, sub_mod};
use crate::linalg::{rational_rref, ColumnOrder, SparseMatrix};
use crate::poly::{Context, SparsePolynomial};
use crate::scalar::ExactScalar;

/// How a component kernel was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMethod {
    /// No constraint touches the component.
    Unconstrained,
    /// Lifted from `primes` reductions, verified with `check_primes` more.
    MultiModular { primes: usize, check_primes: usize },
    /// Exact rational elimination.
    Rational,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Highest `k` whose constraint is assembled; `None` means `n`.
    pub k_max: Option<usize>,
    /// Reductions to try before falling back to rational elimination.
    pub max_primes: usize,
    /// Use rational elimination directly.
    pub rational_only: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { k_max: None, max_primes: 24, rational_only: false }
    }
}

/// Kernel of one bigraded component `(n, l)`.
#[derive(Clone, Debug)]
pub struct ComponentKernel {
    pub n: usize,
    pub len: usize,
    pub columns: Vec<Parts>,
    /// Canonical basis: each vector has a 1 in its own free column and 0 in
    /// every other free column.
    pub kernel: Vec<Vec<(u32, ExactScalar)>>,
    pub rows: usize,
    pub method: KernelMethod,
}

impl ComponentKernel {
    pub fn weight(&self) -> i32 {
        4 * (self.len as i32 - self.n as i32)
    }

    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// Kernel vectors as polynomials in `s_1, s_2, ...`.
    pub fn polynomials(&self, ctx: &Context) -> Vec<SparsePolynomial> {
        self.kernel.iter().map(|v| vector_polynomial(ctx, &self.columns, v)).collect()
    }
}

/// `sum v_c s_{lambda_c}`.
pub fn vector_polynomial(ctx: &Context, columns: &[Parts], v: &[(u32, ExactScalar)]) -> SparsePolynomial {
    let arity = ctx.arity();
    let terms: Vec<(Vec<i16>, ExactScalar)> = v
        .iter()
        .map(|(c, x)| {
            let mut e = vec![0i16; arity];
            for &p in &columns[*c as usize] {
                e[p as usize - 1] += 1;
            }
            (e, x.clone())
        })
        .collect();
    SparsePolynomial::from_terms(ctx, terms).expect("parts fit the context")
}

/// In-place reduced row echelon form mod `p`; returns the pivot column of
/// each nonzero row, in order.
fn dense_rref(m: &mut Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(r) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, r);
        let inv = inv_mod(m[rank][col], p).expect("nonzero");
        for x in m[rank][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    pivots
}

/// Canonical kernel mod `p` of the active-column system: pivot columns and,
/// per free column, the values at the pivots.
struct ModularKernel {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// `values[f][i]`: entry at `pivots[i]` of the vector for `free[f]`.
    values: Vec<Vec<u64>>,
}

fn modular_kernel(rows: &[Vec<(u32, u64)>], ncols: usize, p: u64, seed: u64) -> ModularKernel {
    let target = ncols + 8;
    let mut dense: Vec<Vec<u64>> = if rows.len() <= target {
        rows.iter()
            .map(|r| {
                let mut d = vec![0u64; ncols];
                for (c, v) in r {
                    d[*c as usize] = *v;
                }
                d
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut d = vec![vec![0u64; ncols]; target];
        let mut g = vec![0u64; target];
        for r in rows {
            for x in g.iter_mut() {
                *x = rng.gen_range(1..p);
            }
            for (c, v) in r {
                for (row, &gi) in d.iter_mut().zip(&g) {
                    let slot = &mut row[*c as usize];
                    *slot = add_mod(*slot, mul_mod(gi, *v, p), p);
                }
            }
        }
        d
    };
    let pivots = dense_rref(&mut dense, ncols, p);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
    let values = free
        .iter()
        .map(|&f| dense.iter().map(|row| if row[f] == 0 { 0 } else { p - row[f] }).collect())
        .collect();
    ModularKernel { pivots, free, values }
}

/// Integerized rows and vectors for the multi-modular check.
fn height_bits(v: &[(u32, ExactScalar)]) -> (BigInt, u64) {
    let mut l = BigInt::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let mut h = BigInt::zero();
    for (_, x) in v {
        let y = (x.numer() * (&l / x.denom())).abs();
        if y > h {
            h = y;
        }
    }
    (l, h.bits())
}

/// Checks `rows * v = 0` exactly for every `v`, using enough primes that a
/// nonzero integerized product could not vanish modulo all of them.
fn verify_kernel(rows: &[Vec<(u32, ExactScalar)>], vectors: &[Vec<(u32, ExactScalar)>], ncols: usize) -> Option<usize> {
    let row_bits = rows
        .iter()
        .map(|r| height_bits(r).1 + (64 - (r.len() as u64).leading_zeros() as u64))
        .max()
        .unwrap_or(0);
    let vec_bits = vectors.iter().map(|v| height_bits(v).1).max().unwrap_or(0);
    let needed = row_bits + vec_bits + 2;
    // Disjoint from the primes used for lifting.
    let primes: Vec<u64> = large_primes(64 + (needed as usize / 61) + 1).split_off(64);
    let mut have = 0u64;
    let mut used = 0;
    for &p in &primes {
        if have > needed {
            break;
        }
        let rp: Vec<Vec<(u32, u64)>> = rows
            .iter()
            .map(|r| r.iter().map(|(c, x)| (*c, x.mod_prime(p).expect("coprime"))).collect())
            .collect();
        for v in vectors {
            let mut dense = vec![0u64; ncols];
            for (c, x) in v {
                dense[*c as usize] = x.mod_prime(p).expect("coprime");
            }
            for r in &rp {
                let mut acc = 0u64;
                for (c, x) in r {
                    acc = add_mod(acc, mul_mod(*x, dense[*c as usize], p), p);
                }
                if acc != 0 {
                    return None;
                }
            }
        }
        have += 61;
        used += 1;
    }
    Some(used)
}

/// Restricts a system to its active columns, renumbered `0..`.
struct ActiveSystem {
    active: Vec<u32>,
    local: FxHashMap<u32, u32>,
}

impl ActiveSystem {
    fn new(sys: &ConstraintSystem) -> Self {
        let active = sys.active_columns();
        let local = active.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        Self { active, local }
    }

    fn relabel<E: Clone>(&self, row: &[(u32, E)]) -> Vec<(u32, E)> {
        row.iter().map(|(c, v)| (self.local[c], v.clone())).collect()
    }
}

/// Kernel of the component `(n, len)`.
pub fn component_kernel(n: usize, len: usize, q: &QTable, opts: &SolveOptions) -> ComponentKernel {
    let k_max = opts.k_max.unwrap_or(n);
    let sys = assemble(n, len, 1..=k_max, q);
    solve_system(&sys, q, opts)
}

pub fn solve_system(sys: &ConstraintSystem, q: &QTable, opts: &SolveOptions) -> ComponentKernel {
    let act = ActiveSystem::new(sys);
    let width = act.active.len();
    let mut kernel: Vec<(u32, Vec<(u32, ExactScalar)>)> = (0..sys.ncols() as u32)
        .filter(|c| !act.local.contains_key(c))
        .map(|c| (c, vec![(c, ExactScalar::one())]))
        .collect();
    let finish = |mut kernel: Vec<(u32, Vec<(u32, ExactScalar)>)>, method| {
        kernel.sort_by_key(|e| e.0);
        ComponentKernel {
            n: sys.n,
            len: sys.len,
            columns: sys.columns.clone(),
            kernel: kernel.into_iter().map(|e| e.1).collect(),
            rows: sys.rows.len(),
            method,
        }
    };
    if sys.rows.is_empty() || width == 0 {
        for &c in &act.active {
            kernel.push((c, vec![(c, ExactScalar::one())]));
        }
        return finish(kernel, KernelMethod::Unconstrained);
    }
    let exact: Vec<Vec<(u32, ExactScalar)>> = sys.exact_rows(q).iter().map(|r| act.relabel(r)).collect();
    let to_global = |v: Vec<(u32, ExactScalar)>| -> (u32, Vec<(u32, ExactScalar)>) {
        let mut g: Vec<(u32, ExactScalar)> = v.into_iter().map(|(c, x)| (act.active[c as usize], x)).collect();
        g.sort_by_key(|e| e.0);
        // The free column is the last one: every other entry sits on an earlier pivot.
        let lead = g.last().map(|e| e.0).unwrap_or(0);
        (lead, g)
    };
    if !opts.rational_only {
        if let Some((vectors, primes, checks)) = lift_kernel(sys, q, &act, &exact, width, opts.max_primes) {
            for (f, v) in vectors {
                let (_, g) = to_global(v);
                kernel.push((act.active[f], g));
            }
            return finish(kernel, KernelMethod::MultiModular { primes, check_primes: checks });
        }
    }
    let mut m = SparseMatrix::new(width);
    for r in &exact {
        m.push_row(r.clone());
    }
    for v in rational_rref(&m, ColumnOrder::Natural).kernel() {
        let (lead, g) = to_global(v);
        kernel.push((lead, g));
    }
    finish(kernel, KernelMethod::Rational)
}

/// All components of degree `n`, indexed by length `1..=n`.
pub fn solve_degree(n: usize, q: &QTable, opts: &SolveOptions) -> Vec<ComponentKernel> {
    use rayon::prelude::*;
    (1..=n).into_par_iter().map(|l| component_kernel(n, l, q, opts)).collect()
}

type Lifted = (Vec<(usize, Vec<(u32, ExactScalar)>)>, usize, usize);

fn lift_kernel(
    sys: &ConstraintSystem,
    q: &QTable,
    act: &ActiveSystem,
    exact: &[Vec<(u32, ExactScalar)>],
    width: usize,
    max_primes: usize,
) -> Option<Lifted> {
    let primes = large_primes(max_primes);
    let seed = (sys.n as u64) << 32 | sys.len as u64;
    let mut scratch = FxHashMap::default();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut used = 0;
    for (t, &p) in primes.iter().enumerate() {
        let table = reduce_table(q, p);
        let rows: Vec<Vec<(u32, u64)>> = sys
            .rows
            .iter()
            .map(|r| act.relabel(&modular_entries(r, &table, p, &mut scratch)))
            .filter(|r| !r.is_empty())
            .collect();
        let mk = modular_kernel(&rows, width, p, seed ^ t as u64);
        match &best {
            Some((piv, _)) if mk.pivots.len() < piv.len() => continue,
            Some((piv, _)) if mk.pivots == *piv => {}
            _ => {
                best = Some((mk.pivots.clone(), mk.free.clone()));
                residues = mk.values.iter().map(|v| vec![BigInt::zero(); v.len()]).collect();
                modulus = BigInt::one();
                used = 0;
            }
        }
        for (res, vals) in residues.iter_mut().zip(&mk.values) {
            for (r, &a) in res.iter_mut().zip(vals) {
                *r = crt_combine(r, &modulus, a, p);
            }
        }
        modulus *= BigInt::from(p);
        used += 1;
        let (pivots, free) = best.as_ref().expect("set above");
        if free.is_empty() {
            return Some((Vec::new(), used, 0));
        }
        let mut vectors = Vec::with_capacity(free.len());
        let mut ok = true;
        'lift: for (fi, &f) in free.iter().enumerate() {
            let mut v = vec![(f as u32, ExactScalar::one())];
            for (i, r) in residues[fi].iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                match rational_reconstruct(r, &modulus) {
                    Some(x) => v.push((pivots[i] as u32, x)),
                    None => {
                        ok = false;
                        break 'lift;
                    }
                }
            }
            v.sort_by_key(|e| e.0);
            vectors.push((f, v));
        }
        if !ok {
            continue;
        }
        let plain: Vec<Vec<(u32, ExactScalar)>> = vectors.iter().map(|e| e.1.clone()).collect();
        if let Some(checks) = verify_kernel(exact, &plain, width) {
            return Some((vectors, used, checks));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dims(n: usize, opts: &SolveOptions) -> Vec<usize> {
        let q = QTable::new(n);
        (1..=n).map(|l| component_kernel(n, l, &q, opts).dim()).collect()
    }

    #[test]
    fn small_kernels() {
        let q = QTable::new(4);
        assert_eq!(component_kernel(1, 1, &q, &SolveOptions::default()).dim(), 0);
        let k2 = component_kernel(2, 2, &q, &SolveOptions::default());
        assert_eq!(k2.dim(), 1);
        assert_eq!(component_kernel(2, 1, &q, &SolveOptions::default()).dim(), 0);
        let ctx = crate::poly::VariableContext::s_variables(2);
        assert_eq!(k2.polynomials(&ctx)[0].to_string(), "s1^2");
    }

    #[test]
    fn modular_lift_matches_rational() {
        let rational = SolveOptions { rational_only: true, ..SolveOptions::default() };
        for n in 2..=9 {
            let q = QTable::new(n);
            for l in 1..=n {
                let a = component_kernel(n, l, &q, &SolveOptions::default());
                let b = component_kernel(n, l, &q, &rational);
                assert_eq!(a.kernel, b.kernel, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn total_dimensions() {
        let totals: Vec<usize> = (2..=8).map(|n| dims(n, &SolveOptions::default()).iter().sum()).collect();
        assert_eq!(&totals[..5], &[1, 1, 3, 3, 6]);
        assert!(totals[5] > 7 && totals[6] > 12);
    }
}
