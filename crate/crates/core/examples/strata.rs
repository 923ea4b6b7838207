//! Symplectic leaves of `C^{2n}/D_n` with their multiplicities, and the
//! per-codimension totals against the counting bound.

use ptl::partitions::{prime_bound, PrimeBoundFamily};
use ptl::strata::{leaves_type_d, multiplicity_by_codim};
use ptl::typed::{kernel_basis, SolveOptions};

fn main() -> ptl::Result<()> {
    let n = 5;
    let mut d = vec![1, 0];
    for r in 2..=n {
        d.push(kernel_basis(r, None, &SolveOptions::default())?.dim() as u64);
    }
    let leaves = leaves_type_d(n, &d)?;
    for l in &leaves {
        println!("codim {:>2}  x{}  {:?}  [{}]", l.codim, l.multiplicity, l.label, l.stabilizer);
    }
    for (i, total) in multiplicity_by_codim(&leaves, n).iter().enumerate() {
        let bound = prime_bound(&PrimeBoundFamily::TypeD { n, i, d: d.clone() })?;
        println!("codim {:>2}: {total} (bound {bound})", 2 * i);
    }
    Ok(())
}
