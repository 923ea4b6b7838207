//! Conjugacy classes acting without fixed vectors, which count `HH_0` of
//! invariant differential operators.
//!
//! Closed forms come from signed cycle types. The brute-force scans
//! enumerate the group, test `det(g - 1) != 0` exactly, and merge
//! conjugates with a union-find over conjugation by generators.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::group::{GroupFamily, GroupSpec};
use super::signed::SignedPermutation;
use crate::error::{Error, Result};
use crate::partitions::{partition_count, partitions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HH0Family {
    /// `S_{n+1}` on its `n`-dimensional reflection representation.
    TypeA(usize),
    TypeB(usize),
    TypeD(usize),
}

/// Number of conjugacy classes acting on `h` without eigenvalue 1.
///
/// Type `A_n`: only the `(n+1)`-cycle. Types `B_n` and `D_n`: classes whose
/// signed cycles are all negative; for `D_n` the number of negative cycles
/// must be even, and such classes never split.
pub fn hh0_dimension(family: HH0Family) -> Result<u64> {
    match family {
        HH0Family::TypeA(n) if n >= 1 => Ok(1),
        HH0Family::TypeB(n) if n >= 1 => Ok(partition_count(n)),
        HH0Family::TypeD(n) if n >= 2 => Ok(partitions(n).iter().filter(|p| p.len() % 2 == 0).count() as u64),
        _ => Err(Error::invalid("rank out of range")),
    }
}

/// Exact determinant of a small integer matrix (Bareiss).
pub fn det(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// `det(g - 1) != 0` for the matrix of `g` on `C^n`.
pub fn acts_without_fixed_vectors(g: &SignedPermutation) -> bool {
    let mut m = g.matrix();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= 1;
    }
    det(m) != 0
}

/// Matrix of a permutation of `n + 1` points on the zero-sum hyperplane, in
/// the coordinates `x_1..x_n` with `x_{n+1} = -(x_1 + ... + x_n)`.
pub fn reflection_matrix(g: &SignedPermutation) -> Vec<Vec<i64>> {
    let n = g.rank() - 1;
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        let j = g.perm()[i];
        if j < n {
            m[j][i] = 1;
        } else {
            for row in m.iter_mut() {
                row[i] = -1;
            }
        }
    }
    m
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Conjugacy classes of `G` whose elements satisfy `keep`, by brute force.
pub fn count_classes_where(spec: &GroupSpec, keep: impl Fn(&SignedPermutation) -> bool) -> usize {
    let elems: Vec<SignedPermutation> = spec.elements().into_iter().filter(|g| keep(g)).collect();
    let index: HashMap<&SignedPermutation, usize> = elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut parent: Vec<usize> = (0..elems.len()).collect();
    let gens: Vec<(SignedPermutation, SignedPermutation)> =
        spec.generators().into_iter().map(|s| { let inv = s.inverse(); (s, inv) }).collect();
    for (i, g) in elems.iter().enumerate() {
        for (s, s_inv) in &gens {
            let c = s.compose(g).compose(s_inv);
            let j = *index.get(&c).expect("filter is conjugation invariant");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..elems.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// Brute-force `HH_0` count for `B_n` or `D_n` (feasible for `n <= 7`).
pub fn hh0_brute_force(family: HH0Family) -> Result<u64> {
    let spec = match family {
        HH0Family::TypeB(n) => GroupSpec::new(GroupFamily::Hyperoctahedral, n)?,
        HH0Family::TypeD(n) if n >= 2 => GroupSpec::new(GroupFamily::Demihyperoctahedral, n)?,
        HH0Family::TypeA(n) if n >= 1 => {
            let spec = GroupSpec::new(GroupFamily::SymmetricFull, n + 1)?;
            return Ok(count_classes_where(&spec, |g| {
                let mut m = reflection_matrix(g);
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] -= 1;
                }
                det(m) != 0
            }) as u64);
        }
        _ => return Err(Error::invalid("rank out of range")),
    };
    Ok(count_classes_where(&spec, acts_without_fixed_vectors) as u64)
}

/// Number of conjugacy classes of `D_n` from signed cycle types: pairs of
/// partitions `(pos, neg)` with an even number of negative cycles, the
/// all-positive all-even classes counted twice.
pub fn dn_class_count(n: usize) -> u64 {
    let mut total = 0;
    for k in 0..=n {
        for pos in partitions(k) {
            for neg in partitions(n - k) {
                if neg.len() % 2 != 0 {
                    continue;
                }
                let split = neg.is_empty() && pos.iter().all(|&c| c % 2 == 0);
                total += if split { 2 } else { 1 };
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(hh0_dimension(HH0Family::TypeA(5)).unwrap(), 1);
        assert_eq!(hh0_dimension(HH0Family::TypeD(6)).unwrap(), 6);
        assert_eq!(hh0_dimension(HH0Family::TypeB(3)).unwrap(), 3);
        assert!(hh0_dimension(HH0Family::TypeD(1)).is_err());
    }

    #[test]
    fn determinant() {
        assert_eq!(det(vec![vec![2, 1], vec![1, 3]]), 5);
        assert_eq!(det(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn brute_force_small() {
        for n in 2..=4 {
            assert_eq!(hh0_brute_force(HH0Family::TypeD(n)).unwrap(), hh0_dimension(HH0Family::TypeD(n)).unwrap());
            assert_eq!(hh0_brute_force(HH0Family::TypeB(n)).unwrap(), hh0_dimension(HH0Family::TypeB(n)).unwrap());
        }
        assert_eq!(hh0_brute_force(HH0Family::TypeA(3)).unwrap(), 1);
    }

    #[test]
    fn class_splitting() {
        for n in 2..=4 {
            let spec = GroupSpec::new(GroupFamily::Demihyperoctahedral, n).unwrap();
            assert_eq!(count_classes_where(&spec, |_| true) as u64, dn_class_count(n));
        }
    }
}
