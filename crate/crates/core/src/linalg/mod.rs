//! Exact sparse linear algebra: prime-field arithmetic, a generic sparse
//! elimination engine, and certified rank / kernel computation.

pub mod crt;
pub mod echelon;
pub mod matrix;
pub mod modp;

pub use matrix::{
    canonical_basis, certified_kernel, certified_rank, modular_rank, modular_row, rational_rref, CertifyMode, ColumnOrder,
    RankMethod, RankOptions, RankResult, Rref, SparseMatrix,
};
