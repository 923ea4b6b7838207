//! Signed permutations: the hyperoctahedral group `B_n` and its subgroups
//! `S_n` and `D_n`.

use std::fmt;

use crate::error::{Error, Result};

/// `x_i -> signs[i] * x_{perm[i]}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::invalid("sign vector length differs from permutation length"));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("signs must be +1 or -1"));
        }
        Ok(Self { perm, signs })
    }

    /// Unsigned permutation.
    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![1; n])
    }

    /// Diagonal sign change.
    pub fn diagonal(signs: Vec<i8>) -> Result<Self> {
        Self::new((0..signs.len()).collect(), signs)
    }

    /// Transposition of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Self { perm, signs: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_unsigned(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }

    /// Even number of sign flips.
    pub fn is_in_dn(&self) -> bool {
        self.signs.iter().filter(|&&s| s == -1).count() % 2 == 0
    }

    /// `self * other`, acting as `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let signs = (0..self.rank()).map(|i| other.signs[i] * self.signs[other.perm[i]]).collect();
        Self { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        Self { perm, signs }
    }

    /// Signed cycle type as `(positive cycle lengths, negative cycle
    /// lengths)`, each sorted descending. A cycle is negative when the
    /// product of signs along it is `-1`.
    pub fn signed_cycle_type(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.rank();
        let mut seen = vec![false; n];
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut i) = (0, 1i8, start);
            while !seen[i] {
                seen[i] = true;
                sign *= self.signs[i];
                i = self.perm[i];
                len += 1;
            }
            if sign == 1 {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        pos.sort_unstable_by(|a, b| b.cmp(a));
        neg.sort_unstable_by(|a, b| b.cmp(a));
        (pos, neg)
    }

    /// Signed permutation matrix `M` with `M e_i = s_i e_{perm(i)}`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            m[self.perm[i]][i] = i64::from(self.signs[i]);
        }
        m
    }

    /// All elements of `B_n`, permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Self> {
        let perms = permutations(n);
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in &perms {
            for mask in 0..(1u32 << n) {
                let signs = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                out.push(Self { perm: p.clone(), signs });
            }
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perm
            .iter()
            .zip(&self.signs)
            .map(|(p, s)| format!("{}{}", if *s < 0 { "-" } else { "" }, p + 1))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}
