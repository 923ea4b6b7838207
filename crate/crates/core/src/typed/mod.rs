//! The type-D trace space as the common kernel of the `xi_k` constraints.
//!
//! Degree-`n` polynomials in `s_1, s_2, ...` (with `deg s_i = i` and dual
//! weight `4(1 - i)`) are the dual of the `B_n` trace space. The `D_n` part
//! is cut out by `xi_k(f) = 0` on `s_1 = ... = s_{2k-1} = 0`, `k >= 1`.

pub mod burgers;
pub mod constraints;
pub mod families;
pub mod solve;
pub mod xi;

use serde_json::{json, Value};

pub use burgers::{burgers_residual, burgers_residual_of, closed_form_witness, BurgersSolution};
pub use families::{compare_families, family_generators, FamilyComparison, FamilyElement, FamilyKind};
pub use solve::{component_kernel, solve_degree, ComponentKernel, KernelMethod, SolveOptions};
pub use xi::{xi_field, xi_pointwise_check, XiField};

use crate::error::{Error, Result};
use crate::poly::{SparsePolynomial, VariableContext};
use crate::table::{GradedDimensionTable, GradingLabel};
use constraints::QTable;

/// Kernels of the requested components of degree `n`.
#[derive(Clone, Debug)]
pub struct SolutionBasis {
    pub n: usize,
    pub components: Vec<ComponentKernel>,
}

impl SolutionBasis {
    /// Dual weight to dimension, zeros included.
    pub fn table(&self) -> GradedDimensionTable {
        let mut t = GradedDimensionTable::new("D", self.n, GradingLabel::DualWeight);
        for c in &self.components {
            t.set(c.weight(), c.dim() as u64);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(ComponentKernel::dim).sum()
    }

    /// All basis vectors as polynomials in `s_1..s_n`.
    pub fn vectors(&self) -> Vec<SparsePolynomial> {
        let ctx = VariableContext::s_variables(self.n.max(1));
        self.components.iter().flat_map(|c| c.polynomials(&ctx)).collect()
    }

    /// `{"family": "D", "n", "dual_weights", "display_series"}`.
    pub fn to_json(&self) -> Value {
        let t = self.table();
        json!({
            "family": "D",
            "n": self.n,
            "dual_weights": t.dims_json(),
            "display_series": t.display_series(),
        })
    }
}

/// Dual weight of the component of `n` with `len` parts.
pub fn component_weight(n: usize, len: usize) -> i32 {
    4 * (len as i32 - n as i32)
}

/// Kernel of degree `n`, either every component or the one of dual weight
/// `weight`.
pub fn kernel_basis(n: usize, weight: Option<i32>, opts: &SolveOptions) -> Result<SolutionBasis> {
    if n == 0 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    let q = QTable::new(n);
    let components = match weight {
        None => solve_degree(n, &q, opts),
        Some(w) => {
            if w > 0 || w % 4 != 0 || w <= -4 * n as i32 {
                return Err(Error::invalid(format!(
                    "dual weight {w} is not 4(l - n) for a length 1 <= l <= n = {n}"
                )));
            }
            let len = (n as i32 + w / 4) as usize;
            vec![component_kernel(n, len, &q, opts)]
        }
    };
    Ok(SolutionBasis { n, components })
}
