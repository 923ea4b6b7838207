//! The vector fields `xi_k` as explicit derivations with Laurent
//! coefficients in `s_{2k}`.
//!
//! `xi_k` is read off from `d/dx (x^{2k-1} Q(z))` with `Q(z) = sqrt(1 + z)`
//! and `z = sum_{i > 2k} (s_i / s_{2k}) x^{2(i - 2k)}`: the `x^{2(j-1)}`
//! coefficient is the coefficient of `d/ds_j`. Only `j <= nmax` is kept;
//! those coefficients involve `s_i` for `i <= k + nmax` and are exact.

use std::collections::BTreeMap;

use super::constraints::{component_columns, QTable};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::poly::{Context, SparsePolynomial, VariableContext};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug)]
pub struct XiField {
    pub k: usize,
    pub nmax: usize,
    ctx: Context,
    /// `j -> coefficient of d/ds_j`, for `k <= j <= nmax`.
    coefficients: BTreeMap<usize, SparsePolynomial>,
}

/// Context wide enough for every field with `k <= nmax`.
pub fn xi_context(nmax: usize) -> Context {
    VariableContext::s_variables(2 * nmax.max(1))
}

pub fn xi_field(k: usize, nmax: usize) -> Result<XiField> {
    if k == 0 || k > nmax {
        return Err(Error::invalid(format!("xi_k needs 1 <= k <= nmax, got k = {k}, nmax = {nmax}")));
    }
    let ctx = xi_context(nmax);
    let q = QTable::new(nmax - k);
    let s2k = 2 * k - 1;
    let mut coefficients = BTreeMap::new();
    for j in k..=nmax {
        let m = j - k;
        let terms = q.by_m[m].iter().map(|nu| {
            let mut e = vec![0i16; ctx.arity()];
            e[s2k] = -(nu.parts.len() as i16);
            for &p in &nu.parts {
                e[2 * k + p as usize - 1] += 1;
            }
            (e, &nu.coefficient * &ExactScalar::from_int(2 * j as i64 - 1))
        });
        let c = SparsePolynomial::from_terms(&ctx, terms.collect::<Vec<_>>())?.localized_at(s2k)?;
        coefficients.insert(j, c);
    }
    Ok(XiField { k, nmax, ctx, coefficients })
}

impl XiField {
    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coefficient(&self, j: usize) -> Option<&SparsePolynomial> {
        self.coefficients.get(&j)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (usize, &SparsePolynomial)> {
        self.coefficients.iter().map(|(j, c)| (*j, c))
    }

    /// Moves an s-variable polynomial into the field's context.
    pub fn embed(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let arity = f.context().arity();
        if f.context().names().iter().enumerate().any(|(i, n)| *n != format!("s{}", i + 1)) {
            return Err(Error::invalid("expected a polynomial in s1, s2, ..."));
        }
        if arity > self.nmax {
            let extra = f.terms().any(|(m, _)| m.exponents()[self.nmax..].iter().any(|&e| e != 0));
            if extra {
                return Err(Error::invalid(format!("polynomial involves s_j with j > nmax = {}", self.nmax)));
            }
        }
        let map: Vec<usize> = (0..arity).map(|i| i.min(self.ctx.arity() - 1)).collect();
        f.reindex(&self.ctx, &map)
    }

    /// `d/ds_j`-components `c_{k,j} * dF/ds_j`, keyed by `j`.
    pub fn components(&self, f: &SparsePolynomial) -> Result<Vec<(usize, SparsePolynomial)>> {
        let f = self.embed(f)?;
        self.coefficients
            .iter()
            .map(|(&j, c)| Ok((j, c.mul(&f.partial_derivative(j - 1)?)?)))
            .collect()
    }

    /// `xi_k(F)` as a Laurent polynomial.
    pub fn apply(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let mut acc = SparsePolynomial::zero(&self.ctx).localized_at(2 * self.k - 1)?;
        for (_, t) in self.components(f)? {
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `xi_k(F)` on the locus `s_1 = ... = s_{2k-1} = 0`, times the smallest
    /// power of `s_{2k}` that makes it a polynomial.
    pub fn restricted(&self, f: &SparsePolynomial) -> Result<SparsePolynomial> {
        let zeros: Vec<usize> = (0..2 * self.k - 1).collect();
        let r = self.apply(f)?.restrict_to_zero(&zeros)?;
        Ok(r.clear_denominators(2 * self.k - 1).0)
    }
}

/// Evaluates each component `c_{k,j} dF/ds_j` of `xi_k(F)` at a point of the
/// stratum `s_1 = ... = s_{2k-1} = 0`, `s_{2k} != 0`. `point[i]` is the
/// value of `s_{i+1}`; missing coordinates are zero. The components sum to
/// `xi_k(F)` there.
pub fn xi_pointwise_check(f: &SparsePolynomial, k: usize, point: &[ExactScalar]) -> Result<Vec<(usize, ExactScalar)>> {
    if f.homogeneous_total_degree().is_none() && !f.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let nmax = f.context().arity().max(k);
    let field = xi_field(k, nmax)?;
    let arity = field.context().arity();
    let mut full = vec![ExactScalar::zero(); arity];
    for (i, v) in point.iter().enumerate() {
        if i >= arity {
            if !v.is_zero() {
                return Err(Error::invalid(format!("coordinate s{} is outside the field's variables", i + 1)));
            }
            continue;
        }
        full[i] = v.clone();
    }
    if full[..2 * k - 1].iter().any(|v| !v.is_zero()) {
        return Err(Error::invalid(format!("point is off the stratum: s1..s{} must vanish", 2 * k - 1)));
    }
    if full[2 * k - 1].is_zero() {
        return Err(Error::invalid(format!("point is off the stratum: s{} must be nonzero", 2 * k)));
    }
    field.components(f)?.into_iter().map(|(j, t)| Ok((j, t.eval(&full)?))).collect()
}

/// Constraint matrix of the component `(n, len)` built directly from the
/// fields: apply `xi_k`, restrict, clear denominators, then one row per
/// resulting monomial. Columns follow [`component_columns`].
pub fn generic_constraints(n: usize, len: usize, k_range: std::ops::RangeInclusive<usize>) -> Result<SparseMatrix> {
    let columns = component_columns(n, len);
    let ctx = xi_context(n);
    let polys: Vec<SparsePolynomial> = columns
        .iter()
        .map(|lam| {
            let mut e = vec![0i16; ctx.arity()];
            for &p in lam {
                e[p as usize - 1] += 1;
            }
            SparsePolynomial::monomial(&ctx, &e, ExactScalar::one())
        })
        .collect::<Result<_>>()?;
    let mut m = SparseMatrix::new(columns.len());
    for k in k_range {
        if k > n {
            // Every d/ds_j with j >= k kills a polynomial in s_1..s_n.
            continue;
        }
        let field = xi_field(k, n)?;
        let mut rows: BTreeMap<Vec<i16>, Vec<(u32, ExactScalar)>> = BTreeMap::new();
        for (c, p) in polys.iter().enumerate() {
            // Grouping by Laurent monomial is the same as clearing one
            // common power of s_{2k}.
            let zeros: Vec<usize> = (0..2 * k - 1).collect();
            let r = field.apply(p)?.restrict_to_zero(&zeros)?;
            for (mono, v) in r.terms() {
                rows.entry(mono.exponents().to_vec()).or_default().push((c as u32, v.clone()));
            }
        }
        for (_, r) in rows {
            m.push_row(r);
        }
    }
    Ok(m)
}
