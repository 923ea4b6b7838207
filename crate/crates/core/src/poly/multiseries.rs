//! Multivariate power series truncated by total degree, stored as ordinary
//! [`SparsePolynomial`]s. Used by the Burgers spot-checks.

use super::polynomial::SparsePolynomial;
use super::series::q_series;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// `a * b` with every term of total degree above `order` dropped.
pub fn mul_trunc(a: &SparsePolynomial, b: &SparsePolynomial, order: i32) -> Result<SparsePolynomial> {
    let ctx = a.context();
    if b.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let mut out = SparsePolynomial::zero(ctx);
    for (ma, ca) in a.terms() {
        let da = ma.total_degree();
        if da > order {
            continue;
        }
        for (mb, cb) in b.terms() {
            if da + mb.total_degree() <= order {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
    }
    Ok(out)
}

/// `sum_i coeffs[i] * w^i` truncated at `order`; `w` must have no constant term.
pub fn compose_univariate(coeffs: &[ExactScalar], w: &SparsePolynomial, order: i32) -> Result<SparsePolynomial> {
    if !w.constant_term().is_zero() {
        return Err(Error::invalid("inner series of a composition must vanish at the origin"));
    }
    let ctx = w.context();
    let mut out = SparsePolynomial::zero(ctx);
    let mut power = SparsePolynomial::one(ctx);
    for (i, c) in coeffs.iter().enumerate() {
        if i as i32 > order {
            break;
        }
        out.add_scaled_assign(&power, c)?;
        power = mul_trunc(&power, w, order)?;
        if power.is_zero() {
            break;
        }
    }
    Ok(out)
}

fn split_constant(f: &SparsePolynomial) -> (ExactScalar, SparsePolynomial) {
    let c0 = f.constant_term();
    let rest = f.sub(&SparsePolynomial::constant(f.context(), c0.clone())).expect("same context");
    (c0, rest)
}

/// Square root with positive constant term; the constant term of `f` must
/// be a nonzero rational square.
pub fn sqrt_trunc(f: &SparsePolynomial, order: i32) -> Result<SparsePolynomial> {
    let (c0, rest) = split_constant(f);
    if c0.is_zero() {
        return Err(Error::BranchPoint("constant term is zero".into()));
    }
    let r0 = c0
        .sqrt_exact()
        .ok_or_else(|| Error::BranchPoint(format!("constant term {c0} is not a rational square")))?;
    let z = rest.scale(&c0.inv().expect("nonzero"));
    let q = q_series(order.max(0) as usize).scalar_coefficients().expect("scalar series");
    Ok(compose_univariate(&q, &z, order)?.scale(&r0))
}

/// Multiplicative inverse; the constant term must be nonzero.
pub fn inv_trunc(f: &SparsePolynomial, order: i32) -> Result<SparsePolynomial> {
    let (c0, rest) = split_constant(f);
    let inv0 = c0.inv().ok_or_else(|| Error::invalid("series with zero constant term is not invertible"))?;
    let z = rest.scale(&inv0);
    let geometric: Vec<ExactScalar> =
        (0..=order.max(0)).map(|i| if i % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() }).collect();
    Ok(compose_univariate(&geometric, &z, order)?.scale(&inv0))
}

/// Univariate helpers over plain coefficient vectors `c[i]` of `X^i`.
pub mod univariate {
    use super::*;

    pub fn mul(a: &[ExactScalar], b: &[ExactScalar], order: usize) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); order + 1];
        for (i, x) in a.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(order + 1 - i) {
                out[i + j] += &(x * y);
            }
        }
        out
    }

    pub fn compose(outer: &[ExactScalar], inner: &[ExactScalar], order: usize) -> Result<Vec<ExactScalar>> {
        if inner.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::invalid("inner series must vanish at the origin"));
        }
        let mut out = vec![ExactScalar::zero(); order + 1];
        let mut power = vec![ExactScalar::zero(); order + 1];
        power[0] = ExactScalar::one();
        for c in outer.iter().take(order + 1) {
            for (o, p) in out.iter_mut().zip(power.iter()) {
                *o += &(c * p);
            }
            power = mul(&power, inner, order);
        }
        Ok(out)
    }

    /// Compositional inverse of `w` with `w(0) = 0`, `w'(0) != 0`.
    pub fn revert(w: &[ExactScalar], order: usize) -> Result<Vec<ExactScalar>> {
        let w1 = w.get(1).cloned().unwrap_or_else(ExactScalar::zero);
        let w1_inv = w1.inv().ok_or_else(|| Error::invalid("series is not locally invertible"))?;
        if w.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::invalid("series must vanish at the origin"));
        }
        // Fixed point X = (W - (w(X) - w1 X)) / w1, one new coefficient per pass.
        let mut x = vec![ExactScalar::zero(); order + 1];
        if order >= 1 {
            x[1] = w1_inv.clone();
        }
        let mut higher = w.to_vec();
        higher.resize(order + 1, ExactScalar::zero());
        higher[1] = ExactScalar::zero();
        for _ in 1..order {
            let h = compose(&higher, &x, order)?;
            let mut next = vec![ExactScalar::zero(); order + 1];
            if order >= 1 {
                next[1] = w1_inv.clone();
            }
            for i in 2..=order {
                next[i] = -(&h[i] * &w1_inv);
            }
            x = next;
        }
        Ok(x)
    }

    pub fn derivative(a: &[ExactScalar]) -> Vec<ExactScalar> {
        a.iter().enumerate().skip(1).map(|(i, c)| c * &ExactScalar::from_int(i as i64)).collect()
    }
}
