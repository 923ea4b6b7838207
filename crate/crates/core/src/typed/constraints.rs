//! Linear constraints on one bigraded component of `C[s_1, s_2, ...]`.
//!
//! Write `xi_k = sum_{j >= k} c_{k,j} d/ds_j` with
//! `c_{k,j} = (2j - 1) q_{j-k}(s_{2k+1}/s_{2k}, s_{2k+2}/s_{2k}, ...)`, where
//! `q_m(t)` is the `X^m` coefficient of `sqrt(1 + sum_i t_i X^i)`. Its
//! `t^nu` coefficient is `binom(1/2, l) * l! / prod mult!` for `nu` of length
//! `l`.
//!
//! Columns are partitions `lambda |- n` standing for `s_lambda`. Applying
//! `d/ds_j` and restricting to `s_1 = ... = s_{2k-1} = 0` leaves
//! `mult_j(lambda) s_{lambda - j}` when every remaining part is at least
//! `2k`, and zero otherwise. Each resulting Laurent monomial in
//! `s_{2k}, s_{2k+1}, ...` gives one row. Rows never mix partitions of
//! different lengths, so components are indexed by `(n, l)` and have dual
//! weight `4(l - n)`.

use rustc_hash::FxHashMap;

use crate::linalg::modp::mul_mod;
use crate::partitions::partitions;
use crate::scalar::{binom_half, ExactScalar};

/// A partition as descending parts.
pub type Parts = Vec<u8>;

/// `t^nu` terms of `q_m` for one `m`.
#[derive(Clone, Debug)]
pub struct NuTerm {
    pub parts: Parts,
    pub coefficient: ExactScalar,
}

/// The coefficients of `q_m` for `m = 0..=max`.
#[derive(Clone, Debug)]
pub struct QTable {
    pub by_m: Vec<Vec<NuTerm>>,
}

impl QTable {
    pub fn new(max: usize) -> Self {
        let mut fact = vec![ExactScalar::one()];
        for i in 1..=max {
            fact.push(&fact[i - 1] * &ExactScalar::from_int(i as i64));
        }
        let by_m = (0..=max)
            .map(|m| {
                partitions(m)
                    .into_iter()
                    .map(|nu| {
                        let l = nu.len();
                        let mut c = &binom_half(l) * &fact[l];
                        let mut run = 1usize;
                        for w in 1..=nu.len() {
                            if w < nu.len() && nu[w] == nu[w - 1] {
                                run += 1;
                            } else {
                                c = &c / &fact[run];
                                run = 1;
                            }
                        }
                        NuTerm { parts: nu.iter().map(|&p| p as u8).collect(), coefficient: c }
                    })
                    .collect()
            })
            .collect();
        Self { by_m }
    }

    pub fn max(&self) -> usize {
        self.by_m.len() - 1
    }

    /// Flat list of all coefficients, indexed as in [`QTable::ids`].
    pub fn flat(&self) -> Vec<&ExactScalar> {
        self.by_m.iter().flatten().map(|t| &t.coefficient).collect()
    }

    /// Offset of the first term of each `q_m` in the flat list.
    pub fn ids(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.by_m.len());
        let mut acc = 0u32;
        for v in &self.by_m {
            out.push(acc);
            acc += v.len() as u32;
        }
        out
    }
}

/// One constraint entry before reduction: `factor * q-coefficient[nu_id]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawEntry {
    pub column: u32,
    pub factor: u32,
    pub nu_id: u32,
}

/// Which Laurent monomial a row collects: `xi_k`, the exponent of `s_{2k}`
/// and the remaining parts (all above `2k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowLabel {
    pub k: u16,
    pub s2k_exponent: i16,
    pub parts: Parts,
}

/// A bigraded component `(n, l)` and its constraints.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub n: usize,
    pub len: usize,
    /// Partitions of `n` with `len` parts, in column order.
    pub columns: Vec<Parts>,
    pub labels: Vec<RowLabel>,
    pub rows: Vec<Vec<RawEntry>>,
}

impl ConstraintSystem {
    /// Dual weight `4(l - n)`.
    pub fn weight(&self) -> i32 {
        4 * (self.len as i32 - self.n as i32)
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Columns that can appear in some row: at most one part equal to 1.
    /// The others are multiples of `s_1^2` and lie in every kernel.
    pub fn active_columns(&self) -> Vec<u32> {
        (0..self.columns.len() as u32).filter(|&c| self.columns[c as usize].iter().filter(|&&p| p == 1).count() <= 1).collect()
    }

    /// Entries reduced to exact rationals, duplicates merged.
    pub fn exact_rows(&self, q: &QTable) -> Vec<Vec<(u32, ExactScalar)>> {
        let flat = q.flat();
        self.rows
            .iter()
            .map(|r| {
                let mut acc: FxHashMap<u32, ExactScalar> = FxHashMap::default();
                for e in r {
                    *acc.entry(e.column).or_default() += &(&ExactScalar::from_int(i64::from(e.factor)) * flat[e.nu_id as usize]);
                }
                let mut v: Vec<(u32, ExactScalar)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

/// Flat `q`-coefficients reduced mod `p`.
pub fn reduce_table(q: &QTable, p: u64) -> Vec<u64> {
    q.flat().iter().map(|c| c.mod_prime(p).expect("denominators are coprime to p")).collect()
}

/// Entries of a row mod `p`, duplicates merged, zeros dropped.
pub fn modular_entries(row: &[RawEntry], table: &[u64], p: u64, scratch: &mut FxHashMap<u32, u64>) -> Vec<(u32, u64)> {
    scratch.clear();
    for e in row {
        let v = mul_mod(u64::from(e.factor) % p, table[e.nu_id as usize], p);
        let slot = scratch.entry(e.column).or_insert(0);
        *slot = (*slot + v) % p;
    }
    let mut out: Vec<(u32, u64)> = scratch.iter().filter(|(_, &v)| v != 0).map(|(&c, &v)| (c, v)).collect();
    out.sort_unstable_by_key(|e| e.0);
    out
}

/// Column order: exponent vectors `(m_1, m_2, ...)` descending, i.e.
/// graded-lex with `s_1` the most significant variable.
pub fn column_key(parts: &[u8], n: usize) -> Vec<u8> {
    let mut e = vec![0u8; n + 1];
    for &p in parts {
        e[p as usize] += 1;
    }
    e[1..].to_vec()
}

/// Partitions of `n` with `len` parts in column order.
pub fn component_columns(n: usize, len: usize) -> Vec<Parts> {
    let mut cols: Vec<Parts> =
        partitions(n).into_iter().filter(|p| p.len() == len).map(|p| p.iter().map(|&x| x as u8).collect()).collect();
    cols.sort_by_cached_key(|c| std::cmp::Reverse(column_key(c, n)));
    cols
}

/// Assembles the constraints of `xi_k`, `k = k_min..=k_max`, on the
/// component `(n, len)`.
pub fn assemble(n: usize, len: usize, k_range: std::ops::RangeInclusive<usize>, q: &QTable) -> ConstraintSystem {
    assert!(q.max() + 1 >= n, "q table too short");
    let columns = component_columns(n, len);
    let ids = q.ids();
    let mut index: FxHashMap<RowLabel, u32> = FxHashMap::default();
    let mut labels: Vec<RowLabel> = Vec::new();
    let mut rows: Vec<Vec<RawEntry>> = Vec::new();
    let mut rest: Vec<u8> = Vec::with_capacity(len + n);
    for k in k_range {
        let two_k = (2 * k) as u8;
        for (col, lam) in columns.iter().enumerate() {
            let small = lam.iter().filter(|&&p| p < two_k).count();
            if small > 1 {
                continue;
            }
            let mut prev = 0u8;
            for (i, &j) in lam.iter().enumerate() {
                if j == prev || (j as usize) < k {
                    prev = j;
                    continue;
                }
                prev = j;
                if small == 1 && j >= two_k {
                    continue;
                }
                let mult = lam.iter().filter(|&&p| p == j).count() as u32;
                let base: Vec<u8> = lam.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &p)| p).collect();
                let base_2k = base.iter().filter(|&&p| p == two_k).count() as i16;
                let m = j as usize - k;
                let factor = (2 * j as u32 - 1) * mult;
                for (t, nu) in q.by_m[m].iter().enumerate() {
                    rest.clear();
                    rest.extend(base.iter().copied().filter(|&p| p != two_k));
                    rest.extend(nu.parts.iter().map(|&x| x + two_k));
                    rest.sort_unstable_by(|a, b| b.cmp(a));
                    let label = RowLabel {
                        k: k as u16,
                        s2k_exponent: base_2k - nu.parts.len() as i16,
                        parts: rest.clone(),
                    };
                    let r = *index.entry(label.clone()).or_insert_with(|| {
                        labels.push(label);
                        rows.push(Vec::new());
                        (rows.len() - 1) as u32
                    });
                    rows[r as usize].push(RawEntry { column: col as u32, factor, nu_id: ids[m] + t as u32 });
                }
            }
        }
    }
    ConstraintSystem { n, len, columns, labels, rows }
}
