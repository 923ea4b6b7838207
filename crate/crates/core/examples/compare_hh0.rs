//! Type-D trace dimensions against the Hochschild count of conjugacy
//! classes without fixed vectors.

use ptl::partitions::even_length_partition_count;
use ptl::typed::{kernel_basis, SolveOptions};
use ptl::weyl::{hh0_dimension, HH0Family};

fn main() -> ptl::Result<()> {
    for n in 2..=9 {
        let hp0 = kernel_basis(n, None, &SolveOptions::default())?.dim() as u64;
        let hh0 = hh0_dimension(HH0Family::TypeD(n))?;
        let rel = if hp0 == hh0 { "equal" } else { "proper" };
        println!("n = {n}: hp0 {hp0}, hh0 {hh0}, even-length partitions {}: {rel}", even_length_partition_count(n));
    }
    Ok(())
}
