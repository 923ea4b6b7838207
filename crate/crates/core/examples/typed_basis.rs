//! Solves the type-D constraints for one degree and prints the kernel
//! basis as polynomials in the `s_j`.
//!
//! `cargo run --release --example typed_basis -- 8`

use ptl::typed::{kernel_basis, SolveOptions};
use ptl::poly::VariableContext;

fn main() -> ptl::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(6, |s| s.parse().expect("degree"));
    let basis = kernel_basis(n, None, &SolveOptions::default())?;
    println!("n = {n}: {}", basis.table().display_series());
    let ctx = VariableContext::s_variables(n);
    for c in &basis.components {
        for p in c.polynomials(&ctx) {
            println!("  weight {:>4} ({:?}): {p}", c.weight(), c.method);
        }
    }
    Ok(())
}
