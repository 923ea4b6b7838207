//! Partition and multipartition counts, each available both from a
//! truncated generating function and from direct enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{GradedDimensionTable, GradingLabel};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn all_even(&self) -> bool {
        self.0.iter().all(|p| p % 2 == 0)
    }

    pub fn min_part(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `(part, multiplicity)` pairs, parts descending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered tuple of partitions; empty components allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionTuple(pub Vec<Partition>);

impl PartitionTuple {
    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }
}

/// All partitions of `n` as descending part lists, in reverse lexicographic
/// order (`(n)` first).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

fn checked(v: Option<u64>) -> u64 {
    v.expect("partition count overflows 64 bits")
}

/// Coefficients of `prod_{m >= 1} (1 - t^m)^{-i}` through `t^n`.
pub fn multipartition_series(n: usize, i: usize) -> Vec<u64> {
    let mut c = vec![0u64; n + 1];
    c[0] = 1;
    for _ in 0..i {
        for m in 1..=n {
            for k in m..=n {
                c[k] = checked(c[k].checked_add(c[k - m]));
            }
        }
    }
    c
}

/// `a_n(i)`: the number of `i`-tuples of partitions of total size `n`.
pub fn multipartition_count(n: usize, i: usize) -> u64 {
    multipartition_series(n, i)[n]
}

/// `p(n)` from the generating function.
pub fn partition_count(n: usize) -> u64 {
    multipartition_count(n, 1)
}

/// Direct enumeration of `i`-multipartitions of `n`.
pub fn enumerate_multipartitions(n: usize, i: usize) -> Vec<PartitionTuple> {
    if i == 0 {
        return if n == 0 { vec![PartitionTuple(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for lam in partitions(first) {
            for mut rest in enumerate_multipartitions(n - first, i - 1) {
                rest.0.insert(0, Partition(lam.clone()));
                out.push(rest);
            }
        }
    }
    out
}

/// Bivariate table `c[n][i]` of `prod_{parts in allowed} 1/(1 - s^{m-1} t^m)`.
fn part_count_table(nmax: usize, allowed: impl Fn(usize) -> bool) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; nmax + 1]; nmax + 1];
    c[0][0] = 1;
    for m in (1..=nmax).filter(|&m| allowed(m)) {
        for n in m..=nmax {
            for i in (m - 1)..=n {
                let add = c[n - m][i - (m - 1)];
                c[n][i] = checked(c[n][i].checked_add(add));
            }
        }
    }
    c
}

fn check_range(n: usize, i: usize) -> Result<()> {
    if i > n {
        return Err(Error::invalid(format!("need 0 <= i <= n, got n={n}, i={i}")));
    }
    Ok(())
}

/// `p_{n,i}`: partitions of `n` with `n - i` parts, from the generating
/// function `prod_{m >= 0} 1/(1 - s^m t^{m+1})`.
pub fn p_count(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    Ok(part_count_table(n, |_| true)[n][i])
}

pub fn p_count_direct(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    Ok(partitions(n).iter().filter(|p| p.len() == n - i).count() as u64)
}

/// `p'_{n,i}`: partitions of `n` into `n - i` parts, all parts even.
pub fn p_prime_count(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    Ok(part_count_table(n, |m| m % 2 == 0)[n][i])
}

pub fn p_prime_count_direct(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    Ok(partitions(n).iter().filter(|p| p.len() == n - i && p.iter().all(|x| x % 2 == 0)).count() as u64)
}

/// The multipartition reading of `p'_{n,i}`: ordered `(n - i)`-tuples of
/// nonempty partitions, each of even size, with total size `n`.
pub fn p_prime_multipartition_count(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    let k = n - i;
    let mut cell = vec![0u64; n + 1];
    for (m, c) in cell.iter_mut().enumerate().skip(2).step_by(2) {
        *c = partition_count(m);
    }
    let mut acc = vec![0u64; n + 1];
    acc[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u64; n + 1];
        for (a, &x) in acc.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (b, &y) in cell.iter().enumerate().take(n + 1 - a) {
                next[a + b] = checked(next[a + b].checked_add(checked(x.checked_mul(y))));
            }
        }
        acc = next;
    }
    Ok(acc[n])
}

pub fn p_prime_multipartition_count_direct(n: usize, i: usize) -> Result<u64> {
    check_range(n, i)?;
    let k = n - i;
    Ok(enumerate_multipartitions(n, k)
        .iter()
        .filter(|t| t.0.iter().all(|p| !p.is_empty() && p.size() % 2 == 0))
        .count() as u64)
}

/// Partitions of `n` with an even number of parts.
pub fn even_length_partition_count(n: usize) -> u64 {
    partitions(n).iter().filter(|p| p.len() % 2 == 0).count() as u64
}

/// All-even partitions of `n`.
pub fn all_even_partitions(n: usize) -> Vec<Vec<usize>> {
    partitions(n).into_iter().filter(|p| p.iter().all(|x| x % 2 == 0)).collect()
}

/// `sum_{lambda |- n} t^{4(n - l(lambda))}` as a polynomial-degree table.
pub fn bn_hilbert(n: usize) -> GradedDimensionTable {
    let mut t = GradedDimensionTable::new("hyperoctahedral", n, GradingLabel::PolynomialDegree);
    for p in partitions(n) {
        t.add(4 * (n - p.len()) as i32, 1);
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeBoundFamily {
    /// `Sym^n` of a surface: `p_{n,i}`.
    TypeASym { n: usize, i: usize },
    /// The reflection quotient of `S_{n+1}`: `p_{n+1,i}`.
    TypeAQuot { n: usize, i: usize },
    /// `C^{2n}/D_n`: `p'_{n,i} + sum_{j=0}^{i} d_j p_{n-j,i-j}`.
    TypeD { n: usize, i: usize, d: Vec<u64> },
}

pub fn prime_bound(family: &PrimeBoundFamily) -> Result<u64> {
    match family {
        PrimeBoundFamily::TypeASym { n, i } => p_count(*n, *i),
        PrimeBoundFamily::TypeAQuot { n, i } => p_count(n + 1, *i),
        PrimeBoundFamily::TypeD { n, i, d } => {
            if d.len() <= *i {
                return Err(Error::invalid(format!("need d_0..d_{i}, got {} entries", d.len())));
            }
            let mut total = p_prime_count(*n, *i)?;
            for (j, dj) in d.iter().enumerate().take(i + 1) {
                total += dj * p_count(n - j, i - j)?;
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(multipartition_count(5, 1), 7);
        assert_eq!(multipartition_count(2, 2), 5);
        assert_eq!(multipartition_count(0, 3), 1);
        assert_eq!(multipartition_count(4, 0), 0);
        assert_eq!(p_count(4, 2).unwrap(), 2);
        assert_eq!(p_count(7, 0).unwrap(), 1);
        assert_eq!(p_count(3, 1).unwrap(), 1);
        assert_eq!(p_prime_count(8, 5).unwrap(), 1);
        assert_eq!(p_prime_count(7, 3).unwrap(), 0);
        assert_eq!(p_prime_count(4, 2).unwrap(), 1);
    }

    #[test]
    fn bn_tables() {
        assert_eq!(bn_hilbert(2).display_series(), "1 + t");
        assert_eq!(bn_hilbert(3).display_series(), "1 + t + t^2");
        assert_eq!(bn_hilbert(0).display_series(), "1");
    }

    #[test]
    fn bounds() {
        assert_eq!(prime_bound(&PrimeBoundFamily::TypeASym { n: 4, i: 1 }).unwrap(), 1);
        assert_eq!(prime_bound(&PrimeBoundFamily::TypeAQuot { n: 5, i: 0 }).unwrap(), 1);
        let d = PrimeBoundFamily::TypeD { n: 4, i: 2, d: vec![1, 0, 1] };
        assert_eq!(prime_bound(&d).unwrap(), 4);
        assert!(prime_bound(&PrimeBoundFamily::TypeD { n: 4, i: 2, d: vec![1] }).is_err());
    }

    #[test]
    fn even_length_counts() {
        let v: Vec<u64> = (2..=8).map(even_length_partition_count).collect();
        assert_eq!(v, vec![1, 1, 3, 3, 6, 7, 12]);
    }

    #[test]
    fn multipartition_reading() {
        // n = 4, i = 2: pairs of even-size nonempty partitions: (2)(2) style, 2*2.
        assert_eq!(p_prime_multipartition_count(4, 2).unwrap(), 4);
        assert_eq!(p_prime_multipartition_count_direct(4, 2).unwrap(), 4);
    }

    #[test]
    fn partition_object() {
        let p = Partition::new(vec![2, 4, 2]).unwrap();
        assert_eq!(p.parts(), &[4, 2, 2]);
        assert!(p.all_even());
        assert_eq!(p.multiplicities(), vec![(4, 1), (2, 2)]);
        assert_eq!(p.to_string(), "(4,2,2)");
        assert!(Partition::new(vec![0]).is_err());
    }
}
