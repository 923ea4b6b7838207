//! `HP_0(O^G, O^H) = O^H / {O^G, O^H}` by exact sparse rank.
//!
//! For monomial actions with `H = G` brackets of orbit sums are computed in
//! orbit coordinates. Everything else goes through polynomial brackets in
//! monomial coordinates.

pub mod aminus;
pub mod membership;
pub mod orbit;
pub mod span;

pub use aminus::{check_aminus_identity, leading_term_identity, AminusDegree, LeadingTermReport};
pub use membership::{bracket_membership, BracketCertificate, Membership, Residue};
pub use span::{
    algebra_generator_indices, hp0_graded_dims, span_dimension, BracketSpanProblem, DegreeResult, Hp0Options,
    MonomialSpace, SubgroupKind,
};
