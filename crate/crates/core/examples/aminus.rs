//! Checks that the odd sector is spanned by brackets with the even sector,
//! degree by degree, and tests one leading-term expansion.

use ptl::hp0::{check_aminus_identity, leading_term_identity};

fn main() -> ptl::Result<()> {
    for row in check_aminus_identity(3, 5)? {
        println!("degree {}: dim {} rank {} {}", row.degree, row.dim, row.rank, if row.pass { "ok" } else { "FAIL" });
    }
    let r = leading_term_identity(&[(2, 1), (0, 1)])?;
    println!("leading coefficient {} (expected {}), lower terms {:?}", r.found, r.expected, r.lower_terms);
    Ok(())
}
