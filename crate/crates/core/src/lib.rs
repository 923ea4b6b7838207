//! Zeroth Poisson homology of Weyl-group quotient singularities, computed by
//! exact sparse linear algebra.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`], [`poly`] and [`linalg`]: exact rationals, sparse Laurent
//!   polynomials, truncated series, and certified sparse rank.
//! * [`poisson`] and [`weyl`]: the two symplectic structures and the actions
//!   of `S_n`, `B_n`, `D_n` on them.
//! * [`hp0`]: brute-force `HP_0` tables as quotients by bracket spans.
//! * [`typed`]: the `xi_k` constraint solver for type `D`.
//! * [`partitions`] and [`strata`]: counting and leaf bookkeeping.
//! * [`cli`]: the `ptl` command line.

pub mod cli;
pub mod error;
pub mod hp0;
pub mod linalg;
pub mod partitions;
pub mod poisson;
pub mod poly;
pub mod scalar;
pub mod strata;
pub mod table;
pub mod typed;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::ExactScalar;
pub use table::GradedDimensionTable;
