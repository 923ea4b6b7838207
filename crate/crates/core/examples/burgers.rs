//! Inviscid Burgers equation: the closed-form root and a series solution
//! from initial data, both with vanishing residual.

use ptl::poly::TruncatedEvenSeries;
use ptl::typed::{burgers_residual, burgers_residual_of, closed_form_witness};
use ptl::ExactScalar;

fn main() -> ptl::Result<()> {
    let u = closed_form_witness(&ExactScalar::from_int(3), 5)?;
    println!("u = {u}");
    println!("residual through order 4: {}", burgers_residual_of(&u, 4)?);

    let h0: Vec<ExactScalar> = [0, 4, 3].iter().map(|&c| ExactScalar::from_int(c)).collect();
    let sol = burgers_residual(&TruncatedEvenSeries::from_scalars(&h0, 4), 3)?;
    println!("from h0: u = {}", sol.u);
    println!("residual: {}", sol.residual);
    Ok(())
}
