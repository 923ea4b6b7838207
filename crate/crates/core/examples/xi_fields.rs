//! The vector fields `xi_k` applied to a solution and to a non-solution,
//! restricted to their strata.

use ptl::poly::parse_polynomial;
use ptl::typed::xi::{xi_context, xi_field};

fn main() -> ptl::Result<()> {
    let ctx = xi_context(4);
    for k in 1..=4 {
        println!("xi_{k}: {:?}", xi_field(k, 4)?.coefficients().map(|(j, c)| format!("d/ds{j}: {c}")).collect::<Vec<_>>());
    }
    for text in ["s1^2*s2", "s2^2"] {
        let f = parse_polynomial(&ctx, text)?;
        for k in 1..=2 {
            println!("{text}: xi_{k} on its stratum = {}", xi_field(k, 4)?.restricted(&f)?);
        }
    }
    Ok(())
}
