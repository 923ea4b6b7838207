//! Partition and multipartition counts with their direct enumerations.

use ptl::partitions::{
    even_length_partition_count, multipartition_count, p_count, p_prime_count, partition_count,
};

fn main() -> ptl::Result<()> {
    println!("n  p(n)  a_n(2)  even-length  p_(n,i) for i = 0..n");
    for n in 1..=10 {
        let row: Vec<String> = (0..n).map(|i| p_count(n, i).map(|c| c.to_string())).collect::<ptl::Result<_>>()?;
        println!("{n:<2} {:<5} {:<7} {:<12} {}", partition_count(n), multipartition_count(n, 2), even_length_partition_count(n), row.join(" "));
    }
    println!("all-even partitions of 8 into 3 parts: {}", p_prime_count(8, 5)?);
    Ok(())
}
