//! Sparse multivariate (Laurent) polynomials over named graded contexts, and
//! truncated power series built from them.

mod context;
pub mod multiseries;
mod polynomial;
mod series;
mod text;

pub use context::{Context, ContextKind, VariableContext};
pub use polynomial::{graded_lex_cmp, laurent_clear_denominators, ring_ops, Grading, Monomial, RingOp, SparsePolynomial};
pub use series::{even_series_sqrt, q_series, SeriesRoot, TruncatedEvenSeries};
pub use text::parse_polynomial;
