//! Weyl groups of types `A`, `B`, `D` acting on polynomial rings: signed
//! permutations, orbit-sum invariant bases, and conjugacy-class counts.

pub mod conjugacy;
pub mod group;
pub mod invariants;
pub mod signed;

pub use conjugacy::{hh0_dimension, HH0Family};
pub use group::{act, GroupFamily, GroupSpec};
pub use invariants::invariant_basis;
pub use signed::SignedPermutation;
