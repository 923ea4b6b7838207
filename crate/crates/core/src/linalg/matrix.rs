//! Sparse rational matrices and certified rank / kernel computation.
//!
//! The fast path finds a candidate pivot set modulo a word-sized prime,
//! re-eliminates just those rows over the rationals, and then proves that
//! every input row lies in their span. A modular rank never exceeds the
//! rational one and the span check bounds it from above, so a passing check
//! certifies the rank exactly. Any failure falls back to eliminating all rows
//! over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::echelon::{back_substitute, eliminate, Echelon, PrimeField, Rationals};
use super::modp::DEFAULT_PRIME;
use crate::scalar::ExactScalar;

/// Row-sparse matrix over the rationals. Rows are sorted by column and hold
/// no explicit zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, ExactScalar)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn from_dense(rows: &[Vec<ExactScalar>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(ncols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, v)| (c as u32, v.clone())).collect());
        }
        m
    }

    /// Adds a row given as `(column, value)` pairs in any order; duplicate
    /// columns are summed. All-zero rows are dropped.
    pub fn push_row(&mut self, mut entries: Vec<(u32, ExactScalar)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(u32, ExactScalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!((c as usize) < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += &v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| !e.1.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(u32, ExactScalar)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// `M * v` for a sparse column vector.
    pub fn apply(&self, v: &[(u32, ExactScalar)]) -> Vec<ExactScalar> {
        let mut dense = vec![ExactScalar::zero(); self.ncols];
        for (c, x) in v {
            dense[*c as usize] = x.clone();
        }
        self.rows
            .iter()
            .map(|r| {
                let mut acc = ExactScalar::zero();
                for (c, a) in r {
                    let x = &dense[*c as usize];
                    if !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }
}

/// How ranks are certified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertifyMode {
    /// Modular candidate, rational re-elimination of its pivots, span check.
    #[default]
    Fast,
    /// Eliminate every row over the rationals.
    Always,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOptions {
    pub prime: u64,
    pub certify: CertifyMode,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { prime: DEFAULT_PRIME, certify: CertifyMode::Fast }
    }
}

/// Which path produced a certified result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    /// Modular rank reached full column rank; no further work needed.
    FullColumnRank,
    ModularCertified,
    RationalFallback,
    Rational,
}

/// Column visiting order for pivot selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnOrder {
    /// Column `0` first: pivots are the smallest column indices.
    Natural,
    /// Sparsest columns first.
    Markowitz,
}

/// Reduced row echelon form of the row space, in original column indices.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    /// `(pivot column, row)`, each row starting with `(pivot, 1)` and zero
    /// in every other pivot column. Sorted by pivot position in the chosen
    /// column order.
    rows: Vec<(u32, Vec<(u32, ExactScalar)>)>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn rows(&self) -> &[(u32, Vec<(u32, ExactScalar)>)] {
        &self.rows
    }

    fn pivot_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.ncols];
        for (i, (c, _)) in self.rows.iter().enumerate() {
            idx[*c as usize] = Some(i);
        }
        idx
    }

    /// `v - sum_c v[c] * R_c` over the pivot columns `c` of `v`: zero exactly
    /// when `v` lies in the row space.
    pub fn residual(&self, v: &[(u32, ExactScalar)]) -> Vec<(u32, ExactScalar)> {
        self.residual_with(&self.pivot_index(), v)
    }

    fn residual_with(&self, idx: &[Option<usize>], v: &[(u32, ExactScalar)]) -> Vec<(u32, ExactScalar)> {
        let mut out: rustc_hash::FxHashMap<u32, ExactScalar> = Default::default();
        for (c, a) in v {
            match idx[*c as usize] {
                Some(i) => {
                    for (c2, b) in &self.rows[i].1[1..] {
                        *out.entry(*c2).or_insert_with(ExactScalar::zero) -= &(a * b);
                    }
                }
                None => *out.entry(*c).or_insert_with(ExactScalar::zero) += a,
            }
        }
        let mut res: Vec<_> = out.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        res.sort_by_key(|e| e.0);
        res
    }

    pub fn contains(&self, v: &[(u32, ExactScalar)]) -> bool {
        self.residual(v).is_empty()
    }

    /// Kernel basis of the matrix whose row space this is: one vector per
    /// free column `f`, with `v[f] = 1` and `v[pivot] = -R[pivot][f]`.
    pub fn kernel(&self) -> Vec<Vec<(u32, ExactScalar)>> {
        let idx = self.pivot_index();
        let mut by_free: Vec<Vec<(u32, ExactScalar)>> = vec![Vec::new(); self.ncols];
        for (c, row) in &self.rows {
            for (f, v) in &row[1..] {
                by_free[*f as usize].push((*c, -v));
            }
        }
        let mut out = Vec::with_capacity(self.ncols - self.rank());
        for f in 0..self.ncols {
            if idx[f].is_some() {
                continue;
            }
            let mut v = std::mem::take(&mut by_free[f]);
            v.push((f as u32, ExactScalar::one()));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

/// Certified rank and reduced row space.
#[derive(Clone, Debug)]
pub struct RankResult {
    pub rank: usize,
    pub modular_rank: Option<usize>,
    pub method: RankMethod,
    pub rref: Option<Rref>,
}

fn column_order(m: &SparseMatrix, order: ColumnOrder) -> (Vec<u32>, Vec<u32>) {
    let n = m.ncols;
    let cols: Vec<u32> = match order {
        ColumnOrder::Natural => (0..n as u32).collect(),
        ColumnOrder::Markowitz => {
            let mut count = vec![0usize; n];
            for r in &m.rows {
                for (c, _) in r {
                    count[*c as usize] += 1;
                }
            }
            let mut cols: Vec<u32> = (0..n as u32).collect();
            cols.sort_by_key(|&c| (count[c as usize], c));
            cols
        }
    };
    let mut pos_of = vec![0u32; n];
    for (p, &c) in cols.iter().enumerate() {
        pos_of[c as usize] = p as u32;
    }
    (cols, pos_of)
}

fn to_positions<E: Clone>(row: &[(u32, E)], pos_of: &[u32]) -> Vec<(u32, E)> {
    let mut r: Vec<(u32, E)> = row.iter().map(|(c, v)| (pos_of[*c as usize], v.clone())).collect();
    r.sort_by_key(|e| e.0);
    r
}

fn row_order(m: &SparseMatrix, order: ColumnOrder) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..m.rows.len()).collect();
    if order == ColumnOrder::Markowitz {
        idx.sort_by_key(|&i| (m.rows[i].len(), i));
    }
    idx
}

fn into_rref(ech: Echelon<ExactScalar>, cols: &[u32]) -> Rref {
    let ncols = cols.len();
    let rows = ech
        .pivots
        .into_iter()
        .flatten()
        .map(|r| {
            let pivot = cols[r[0].0 as usize];
            let mut row: Vec<(u32, ExactScalar)> = r.into_iter().map(|(p, v)| (cols[p as usize], v)).collect();
            row[1..].sort_by_key(|e| e.0);
            (pivot, row)
        })
        .collect();
    Rref { ncols, rows }
}

/// Exact reduced row echelon form over the rationals.
pub fn rational_rref(m: &SparseMatrix, order: ColumnOrder) -> Rref {
    let (cols, pos_of) = column_order(m, order);
    let rows: Vec<Vec<(u32, ExactScalar)>> =
        row_order(m, order).into_iter().map(|i| to_positions(&m.rows[i], &pos_of)).collect();
    let mut ech = eliminate(&Rationals, m.ncols, rows.iter().enumerate().map(|(i, r)| (i, r.as_slice())));
    back_substitute(&Rationals, &mut ech);
    into_rref(ech, &cols)
}

/// Row scaled to integer entries, then reduced mod `p`.
pub fn modular_row(row: &[(u32, ExactScalar)], p: u64) -> Vec<(u32, u64)> {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    let scale = ExactScalar::from_bigint(l);
    row.iter()
        .filter_map(|(c, v)| {
            let r = (v * &scale).mod_prime(p).expect("integer entry");
            (r != 0).then_some((*c, r))
        })
        .collect()
}

/// Modular rank, the pivot rows it used (original indices), in one pass.
pub fn modular_rank(m: &SparseMatrix, prime: u64) -> (usize, Vec<usize>) {
    let (_, pos_of) = column_order(m, ColumnOrder::Markowitz);
    let order = row_order(m, ColumnOrder::Markowitz);
    let rows: Vec<Vec<(u32, u64)>> =
        order.iter().map(|&i| to_positions(&modular_row(&m.rows[i], prime), &pos_of)).collect();
    let ech = eliminate(&PrimeField(prime), m.ncols, rows.iter().enumerate().map(|(i, r)| (i, r.as_slice())));
    let mut used: Vec<usize> = ech.source.iter().flatten().map(|&k| order[k]).collect();
    used.sort_unstable();
    (ech.rank, used)
}

/// Certified rank; keeps the reduced row space when `keep_rref` is set or
/// when it had to be computed anyway.
pub fn certified_rank(m: &SparseMatrix, opts: RankOptions, keep_rref: bool) -> RankResult {
    if m.ncols == 0 || m.rows.is_empty() {
        let rref = Rref { ncols: m.ncols, rows: Vec::new() };
        return RankResult { rank: 0, modular_rank: Some(0), method: RankMethod::Rational, rref: Some(rref) };
    }
    if opts.certify == CertifyMode::Always {
        let rref = rational_rref(m, ColumnOrder::Markowitz);
        return RankResult { rank: rref.rank(), modular_rank: None, method: RankMethod::Rational, rref: Some(rref) };
    }
    let (mrank, used) = modular_rank(m, opts.prime);
    if mrank == m.ncols && !keep_rref {
        return RankResult { rank: mrank, modular_rank: Some(mrank), method: RankMethod::FullColumnRank, rref: None };
    }
    let mut sub = SparseMatrix::new(m.ncols);
    for &i in &used {
        sub.rows.push(m.rows[i].clone());
    }
    let rref = rational_rref(&sub, ColumnOrder::Markowitz);
    if rref.rank() == mrank {
        let idx = rref.pivot_index();
        let all_in = mrank == m.ncols || m.rows.iter().all(|r| rref.residual_with(&idx, r).is_empty());
        if all_in {
            return RankResult { rank: mrank, modular_rank: Some(mrank), method: RankMethod::ModularCertified, rref: Some(rref) };
        }
    }
    let rref = rational_rref(m, ColumnOrder::Markowitz);
    RankResult { rank: rref.rank(), modular_rank: Some(mrank), method: RankMethod::RationalFallback, rref: Some(rref) }
}

/// Kernel of `m` (vectors `v` with `M v = 0`) together with the certified rank.
pub fn certified_kernel(m: &SparseMatrix, opts: RankOptions) -> (RankResult, Vec<Vec<(u32, ExactScalar)>>) {
    let res = certified_rank(m, opts, true);
    let kernel = res.rref.as_ref().expect("kept").kernel();
    (res, kernel)
}

/// Canonical basis of the span of `vectors`: their reduced row echelon form
/// with pivots at the smallest column indices.
pub fn canonical_basis(ncols: usize, vectors: &[Vec<(u32, ExactScalar)>]) -> Vec<Vec<(u32, ExactScalar)>> {
    let mut m = SparseMatrix::new(ncols);
    for v in vectors {
        m.push_row(v.clone());
    }
    rational_rref(&m, ColumnOrder::Natural).rows.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_rank_two() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        for certify in [CertifyMode::Fast, CertifyMode::Always] {
            let (res, ker) = certified_kernel(&m, RankOptions { certify, ..Default::default() });
            assert_eq!(res.rank, 2);
            assert_eq!(ker.len(), 1);
            assert!(m.apply(&ker[0]).iter().all(ExactScalar::is_zero));
        }
    }

    #[test]
    fn small_prime_undercount_is_caught() {
        // Rank 2 over Q but rank 1 mod 7.
        let m = dense(&[&[1, 1], &[1, 8]]);
        let res = certified_rank(&m, RankOptions { prime: 7, certify: CertifyMode::Fast }, false);
        assert_eq!(res.modular_rank, Some(1));
        assert_eq!(res.rank, 2);
        assert_eq!(res.method, RankMethod::RationalFallback);
    }

    #[test]
    fn full_column_rank_short_circuit() {
        let m = dense(&[&[1, 0], &[0, 1], &[1, 1]]);
        let res = certified_rank(&m, RankOptions::default(), false);
        assert_eq!(res.rank, 2);
        assert_eq!(res.method, RankMethod::FullColumnRank);
    }

    #[test]
    fn rational_entries() {
        let m = SparseMatrix::from_dense(&[
            vec![ExactScalar::ratio(1, 2), ExactScalar::ratio(1, 3)],
            vec![ExactScalar::from_int(3), ExactScalar::from_int(2)],
        ]);
        assert_eq!(certified_rank(&m, RankOptions::default(), false).rank, 1);
    }

    #[test]
    fn canonical_basis_is_order_independent() {
        let a = vec![vec![(0, q(1)), (1, q(1))], vec![(1, q(1)), (2, q(1))]];
        let b = vec![vec![(0, q(1)), (2, q(-1))], vec![(0, q(2)), (1, q(1)), (2, q(-1))]];
        assert_eq!(canonical_basis(3, &a), canonical_basis(3, &b));
    }

    #[test]
    fn residual_and_membership() {
        let m = dense(&[&[1, 1, 0], &[0, 1, 1]]);
        let r = rational_rref(&m, ColumnOrder::Natural);
        assert!(r.contains(&[(0, q(1)), (2, q(-1))]));
        assert!(!r.contains(&[(2, q(1))]));
        assert_eq!(r.residual(&[(2, q(1))]), vec![(2, q(1))]);
    }
}
