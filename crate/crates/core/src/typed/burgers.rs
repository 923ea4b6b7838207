//! Spot-checks of the inviscid Burgers equation `u_x + u u_t = 0` for
//! `u = 2 sqrt(h)`, `h` a curve invariant under the `xi` flow.
//!
//! Two routes. The closed-form witness `u = (x + sqrt(x^2 - 4t)) / 2` is
//! expanded as a power series in `(X, t)` around `x = x_0`, `X = x - x_0`.
//! From an initial curve `h(0)` instead, `u` is obtained by solving the
//! implicit relation `G(u^2) + u x - t = 0` order by order in `t`, with
//! coefficients Laurent in `x`. Here `g` is fixed by `u(x, 0)^2 = g(-x u(x, 0))`
//! and `G` is its inverse.
//!
//! In the Laurent route every term `t^m x^e` has weight `e + 2m >= 1`, and
//! truncating by weight is compatible with all the operations involved.

use crate::error::{Error, Result};
use crate::poly::multiseries::{mul_trunc, sqrt_trunc, univariate};
use crate::poly::{even_series_sqrt, Context, SparsePolynomial, TruncatedEvenSeries, VariableContext};
use crate::scalar::ExactScalar;

/// `u_x + u u_t` for `u` in variables `(x, t)` (in that order), dropping
/// terms of total degree above `order`.
pub fn burgers_residual_of(u: &SparsePolynomial, order: i32) -> Result<SparsePolynomial> {
    if u.context().arity() != 2 {
        return Err(Error::invalid("expected a series in two variables (x, t)"));
    }
    let ux = u.partial_derivative(0)?;
    let ut = u.partial_derivative(1)?;
    Ok(ux.add(&mul_trunc(u, &ut, order)?)?.truncate_total_degree(order))
}

pub fn xt_context(space: &str) -> Context {
    VariableContext::named(&[space, "t"]).expect("two distinct names")
}

/// `(x + sqrt(x^2 - 4t)) / 2` around `x = x0`, in `(X, t)` through total
/// order `order`.
pub fn closed_form_witness(x0: &ExactScalar, order: usize) -> Result<SparsePolynomial> {
    if x0.is_zero() {
        return Err(Error::BranchPoint("the closed form branches at x = 0".into()));
    }
    let ctx = xt_context("X");
    let x = SparsePolynomial::var(&ctx, 0).add(&SparsePolynomial::constant(&ctx, x0.clone()))?;
    let disc = x.mul(&x)?.sub(&SparsePolynomial::var(&ctx, 1).scale(&ExactScalar::from_int(4)))?;
    let mut root = sqrt_trunc(&disc, order as i32)?;
    if x0.is_negative() {
        // Keep the branch with u(x, 0) = x.
        root = root.neg();
    }
    Ok(x.add(&root)?.scale(&ExactScalar::ratio(1, 2)).truncate_total_degree(order as i32))
}

/// `u` and its residual, both truncated to `t^m` with `m <= t_order` and
/// weight `e + 2m <= weight_order` (one less of each for the residual).
#[derive(Clone, Debug)]
pub struct BurgersSolution {
    pub u: SparsePolynomial,
    pub residual: SparsePolynomial,
    pub t_order: usize,
    pub weight_order: i32,
}

fn weight(m: &crate::poly::Monomial) -> i32 {
    i32::from(m.get(0)) + 2 * i32::from(m.get(1))
}

fn truncate(p: &SparsePolynomial, t_order: usize, w: i32) -> SparsePolynomial {
    let terms: Vec<(Vec<i16>, ExactScalar)> = p
        .terms()
        .filter(|(m, _)| m.get(1) as usize <= t_order && weight(m) <= w)
        .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
        .collect();
    SparsePolynomial::from_terms(p.context(), terms).expect("same arity").localized_at(0).expect("x only")
}

fn mul_w(a: &SparsePolynomial, b: &SparsePolynomial, t_order: usize, w: i32) -> Result<SparsePolynomial> {
    Ok(truncate(&a.mul(b)?, t_order, w))
}

/// `sum c_i x^{2i + shift}` as a Laurent polynomial in `(x, t)`.
fn even_in_x(ctx: &Context, c: &[ExactScalar], shift: i16) -> SparsePolynomial {
    let terms: Vec<(Vec<i16>, ExactScalar)> =
        c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (vec![2 * i as i16 + shift, 0], v.clone())).collect();
    SparsePolynomial::from_terms(ctx, terms).expect("arity 2").localized_at(0).expect("x only")
}

fn series_inverse(a: &[ExactScalar], order: usize) -> Result<Vec<ExactScalar>> {
    let a0 = a.first().and_then(ExactScalar::inv).ok_or_else(|| Error::invalid("series is not invertible"))?;
    let mut out = vec![ExactScalar::zero(); order + 1];
    out[0] = a0.clone();
    for i in 1..=order {
        let mut acc = ExactScalar::zero();
        for j in 1..=i.min(a.len() - 1) {
            acc += &(&a[j] * &out[i - j]);
        }
        out[i] = -(&acc * &a0);
    }
    Ok(out)
}

/// Solves the implicit relation from the initial curve `h0 = h(0)` and
/// returns `u` with the Burgers residual.
///
/// `h0` needs scalar coefficients, no constant term and a nonzero `x^2`
/// coefficient that is a rational square. If `h0` is known through
/// `x^{2N}` the weight order is `2N - 1`.
pub fn burgers_residual(h0: &TruncatedEvenSeries, t_order: usize) -> Result<BurgersSolution> {
    let h = h0.scalar_coefficients().ok_or_else(|| Error::invalid("h(0) must have scalar coefficients"))?;
    let n = h0.order();
    if n < 1 || !h[0].is_zero() || h[1].is_zero() {
        return Err(Error::BranchPoint("h(0) must lie in C^x * x^2 + x^4 C[[x^2]]".into()));
    }
    let root = even_series_sqrt(h0, n)?;
    debug_assert_eq!(root.shift, 1);
    // u(x, 0) = x rho(x^2).
    let rho: Vec<ExactScalar> = root
        .series
        .scalar_coefficients()
        .expect("scalar root")
        .iter()
        .take(n)
        .map(|c| c * &ExactScalar::from_int(2))
        .collect();
    let mut phi = vec![ExactScalar::zero(); n + 1];
    for (i, r) in rho.iter().enumerate() {
        phi[i + 1] = -r.clone();
    }
    let rho2 = univariate::mul(&rho, &rho, n - 1);
    let mut psi = vec![ExactScalar::zero(); n + 1];
    for (i, r) in rho2.iter().enumerate() {
        psi[i + 1] = r.clone();
    }
    // g(phi) = psi, so G = phi o psi^{-1}.
    let big_g = univariate::compose(&phi, &univariate::revert(&psi, n)?, n)?;
    let dg = univariate::derivative(&big_g);
    let dg_psi = univariate::compose(&dg, &psi, n - 1)?;
    let mut e = univariate::mul(&rho, &dg_psi, n - 1);
    for c in e.iter_mut() {
        *c = &*c * &ExactScalar::from_int(2);
    }
    e[0] += &ExactScalar::one();
    let dinv_coeffs = series_inverse(&e, n - 1)?;

    let ctx = xt_context("x");
    let w = 2 * n as i32 - 1;
    let mut u = truncate(&even_in_x(&ctx, &rho, 1), t_order, w);
    let dinv = even_in_x(&ctx, &dinv_coeffs, -1);
    let x = SparsePolynomial::var(&ctx, 0);
    let t = SparsePolynomial::var(&ctx, 1);
    let relation = |u: &SparsePolynomial| -> Result<SparsePolynomial> {
        let u2 = mul_w(u, u, t_order, w + 1)?;
        let mut acc = mul_w(u, &x, t_order, w + 1)?.sub(&t)?;
        let mut power = SparsePolynomial::one(&ctx).localized_at(0)?;
        for gi in big_g.iter().skip(1) {
            power = mul_w(&power, &u2, t_order, w + 1)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power.scale(gi))?;
        }
        Ok(truncate(&acc, t_order, w + 1))
    };
    for _ in 0..=t_order {
        let f = relation(&u)?;
        if f.is_zero() {
            break;
        }
        u = truncate(&u.sub(&mul_w(&dinv, &f, t_order, w)?)?, t_order, w);
    }
    if !relation(&u)?.is_zero() {
        return Err(Error::invalid("implicit relation did not converge"));
    }
    let r_t = t_order.saturating_sub(1);
    let ux = u.partial_derivative(0)?;
    let ut = u.partial_derivative(1)?;
    let residual = truncate(&ux.add(&mul_w(&u, &ut, r_t, w - 1)?)?, r_t, w - 1);
    Ok(BurgersSolution { u, residual, t_order, weight_order: w })
}
