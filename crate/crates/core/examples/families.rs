//! Compares the explicit solution families with the solved kernel, one
//! line per dual weight. At `n = 8` one kernel vector is not reached.

use ptl::typed::constraints::QTable;
use ptl::typed::{compare_families, family_generators, solve_degree, SolveOptions};

fn main() -> ptl::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(8, |s| s.parse().expect("degree"));
    for e in family_generators(n)? {
        println!("{:?}: {}", e.kind, e.poly);
    }
    let kernels = solve_degree(n, &QTable::new(n), &SolveOptions::default());
    for c in compare_families(n, &kernels)? {
        let mark = if c.has_extra() { "  <- beyond the families" } else { "" };
        println!("weight {:>4}: families {} kernel {}{mark}", c.weight, c.family_dim, c.kernel_dim);
    }
    Ok(())
}
