//! Symplectic leaves of symmetric powers and of `C^{2n}/D_n`, with the
//! multiplicities of the corresponding summands.
//!
//! Only indexing sets, codimensions and multiplicities are represented.
//! Stabilizers are carried as text.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{multipartition_count, partitions};

/// A partition as `(part, multiplicity)` pairs with distinct ascending parts.
pub type PartMultiset = Vec<(usize, usize)>;

pub fn to_multiset(parts: &[usize]) -> PartMultiset {
    let mut out: PartMultiset = Vec::new();
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    for p in sorted {
        match out.last_mut() {
            Some((q, r)) if *q == p => *r += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LeafLabel {
    /// Points of `Sym^n Y` with `r_j` clusters of size `i_j`.
    SymmetricPower { parts: PartMultiset },
    /// `r` points at the singular point, the rest clustered by `parts`.
    Kleinian { r: usize, parts: PartMultiset },
    /// `C^{2n}/D_n`: `r` coordinates at the origin, the rest clustered by
    /// `parts`.
    TypeDFirst { r: usize, parts: PartMultiset },
    /// `C^{2n}/D_n`: every cluster of even size, one of them twisted.
    TypeDSecond { parts: PartMultiset },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafDescriptor {
    pub label: LeafLabel,
    /// Codimension in units of `dim Y` (`2` for the surface cases).
    pub codim_units: usize,
    pub codim: usize,
    pub multiplicity: u64,
    pub stabilizer: String,
}

fn wreath_label(parts: &PartMultiset, factor: &str) -> String {
    parts
        .iter()
        .map(|(i, r)| {
            let base = format!("{factor}S_{i}");
            let power = if *r == 1 { base } else { format!("({base})^{r}") };
            if *r == 1 {
                power
            } else {
                format!("{power} x| S_{r}")
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

fn clusters(parts: &PartMultiset) -> usize {
    parts.iter().map(|(_, r)| r).sum()
}

/// One leaf per partition of `n`; codimension `(n - #parts) dim Y`.
pub fn leaves_symmetric_power(n: usize, dim_y: usize) -> Result<Vec<LeafDescriptor>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if dim_y < 2 || !dim_y.is_multiple_of(2) {
        return Err(Error::invalid("dim Y must be even and at least 2"));
    }
    Ok(partitions(n)
        .into_iter()
        .rev()
        .map(|lam| {
            let parts = to_multiset(&lam);
            let units = n - clusters(&parts);
            LeafDescriptor {
                stabilizer: wreath_label(&parts, ""),
                label: LeafLabel::SymmetricPower { parts },
                codim_units: units,
                codim: units * dim_y,
                multiplicity: 1,
            }
        })
        .collect())
}

/// Leaves of `Sym^n(C^2/G)` for `G` with `m` nontrivial irreducibles:
/// `(r; lambda)` with `r + |lambda| = n`, multiplicity `a_r(m)`.
pub fn leaves_kleinian(n: usize, m: usize) -> Result<Vec<LeafDescriptor>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let mut out = Vec::new();
    for r in 0..=n {
        let mult = multipartition_count(r, m);
        if mult == 0 {
            continue;
        }
        for lam in partitions(n - r).into_iter().rev() {
            let parts = to_multiset(&lam);
            let units = n - clusters(&parts);
            let mut stab = if r == 0 { String::new() } else { format!("G wr S_{r}") };
            let rest = wreath_label(&parts, "G x ");
            if !rest.is_empty() {
                if !stab.is_empty() {
                    stab.push_str(" x ");
                }
                stab.push_str(&rest);
            }
            out.push(LeafDescriptor {
                label: LeafLabel::Kleinian { r, parts },
                codim_units: units,
                codim: 2 * units,
                multiplicity: mult,
                stabilizer: stab,
            });
        }
    }
    Ok(out)
}

/// Leaves of `C^{2n}/D_n`. `d[r]` is the dimension of the `D_r` trace space
/// for `r = 0..=n`, with `d[0] = 1`, `d[1] = 0`.
pub fn leaves_type_d(n: usize, d: &[u64]) -> Result<Vec<LeafDescriptor>> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if d.len() <= n {
        return Err(Error::invalid(format!("need d_0..d_{n}, got {} entries", d.len())));
    }
    let mut out = Vec::new();
    for (r, &mult) in d.iter().enumerate().take(n + 1) {
        if mult == 0 {
            continue;
        }
        for lam in partitions(n - r).into_iter().rev() {
            let parts = to_multiset(&lam);
            let units = n - clusters(&parts);
            let rest = wreath_label(&parts, "+-");
            let stab = match (r, rest.is_empty()) {
                (0, _) => format!("D_{n} n ({rest})"),
                (_, true) => format!("D_{n} n B_{r}"),
                _ => format!("D_{n} n (B_{r} x {rest})"),
            };
            out.push(LeafDescriptor {
                label: LeafLabel::TypeDFirst { r, parts },
                codim_units: units,
                codim: 2 * units,
                multiplicity: mult,
                stabilizer: stab,
            });
        }
    }
    for lam in partitions(n).into_iter().rev().filter(|l| l.iter().all(|p| p % 2 == 0)) {
        let parts = to_multiset(&lam);
        let units = n - clusters(&parts);
        out.push(LeafDescriptor {
            stabilizer: format!("{} (first factor twisted)", wreath_label(&parts, "+-")),
            label: LeafLabel::TypeDSecond { parts },
            codim_units: units,
            codim: 2 * units,
            multiplicity: 1,
        });
    }
    Ok(out)
}

/// Total multiplicity per codimension (in units), index `i = 0..=n`.
pub fn multiplicity_by_codim(leaves: &[LeafDescriptor], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    for l in leaves {
        out[l.codim_units] += l.multiplicity;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{p_count, partition_count, prime_bound, PrimeBoundFamily};

    #[test]
    fn symmetric_power() {
        let l = leaves_symmetric_power(3, 4).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.iter().map(|x| x.codim).collect::<Vec<_>>(), [0, 4, 8]);
        assert_eq!(l[0].label, LeafLabel::SymmetricPower { parts: vec![(1, 3)] });
        assert_eq!(leaves_symmetric_power(1, 2).unwrap().len(), 1);
        assert_eq!(leaves_symmetric_power(5, 2).unwrap().len(), 7);
        for n in 1..=10 {
            let l = leaves_symmetric_power(n, 2).unwrap();
            assert_eq!(l.len() as u64, partition_count(n));
            let by = multiplicity_by_codim(&l, n);
            for (i, c) in by.iter().enumerate() {
                assert_eq!(*c, p_count(n, i).unwrap());
            }
        }
        assert!(leaves_symmetric_power(2, 3).is_err());
    }

    #[test]
    fn kleinian() {
        let l = leaves_kleinian(2, 1).unwrap();
        let got: Vec<(usize, PartMultiset, u64)> = l
            .iter()
            .map(|x| match &x.label {
                LeafLabel::Kleinian { r, parts } => (*r, parts.clone(), x.multiplicity),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(got, vec![(0, vec![(1, 2)], 1), (0, vec![(2, 1)], 1), (1, vec![(1, 1)], 1), (2, vec![], 2)]);
        let l = leaves_kleinian(1, 2).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[1].multiplicity, 2);
        for n in 1..=8 {
            let slice: Vec<PartMultiset> = leaves_kleinian(n, 1)
                .unwrap()
                .into_iter()
                .filter_map(|x| match x.label {
                    LeafLabel::Kleinian { r: 0, parts } => Some(parts),
                    _ => None,
                })
                .collect();
            let sym: Vec<PartMultiset> = leaves_symmetric_power(n, 2)
                .unwrap()
                .into_iter()
                .map(|x| match x.label {
                    LeafLabel::SymmetricPower { parts } => parts,
                    _ => unreachable!(),
                })
                .collect();
            assert_eq!(slice, sym);
        }
    }

    #[test]
    fn type_d() {
        let l = leaves_type_d(2, &[1, 0, 1]).unwrap();
        assert_eq!(l.len(), 4);
        assert!(l.iter().all(|x| !matches!(x.label, LeafLabel::TypeDFirst { r: 1, .. })));
        assert_eq!(l.iter().filter(|x| matches!(x.label, LeafLabel::TypeDSecond { .. })).count(), 1);
        let d3 = leaves_type_d(3, &[1, 0, 1, 1]).unwrap();
        assert!(d3.iter().all(|x| !matches!(x.label, LeafLabel::TypeDSecond { .. })));
        let d4 = leaves_type_d(4, &[1, 0, 1, 1, 3]).unwrap();
        assert_eq!(d4.iter().filter(|x| matches!(x.label, LeafLabel::TypeDSecond { .. })).count(), 2);
        assert!(leaves_type_d(4, &[1, 0, 1]).is_err());
        let d = [1u64, 0, 1, 1, 3, 3, 6];
        for n in 2..=6 {
            let by = multiplicity_by_codim(&leaves_type_d(n, &d).unwrap(), n);
            for (i, c) in by.iter().enumerate() {
                let want = prime_bound(&PrimeBoundFamily::TypeD { n, i, d: d.to_vec() }).unwrap();
                assert_eq!(*c, want, "n={n} i={i}");
            }
        }
    }
}
