//! Sparse multivariate (Laurent) polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::context::{Context, VariableContext};
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Dense exponent vector, one entry per context variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Box<[i16]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Self(vec![0; arity].into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<i16>) -> Self {
        Self(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[i16] {
        &self.0
    }

    pub fn exponents_mut(&mut self) -> &mut [i16] {
        &mut self.0
    }

    pub fn get(&self, var: usize) -> i16 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn graded_degree(&self, ctx: &VariableContext) -> i32 {
        self.0.iter().enumerate().map(|(i, &e)| e as i32 * ctx.degree(i)).sum()
    }

    pub fn graded_weight(&self, ctx: &VariableContext) -> i32 {
        self.0.iter().enumerate().map(|(i, &e)| e as i32 * ctx.weight(i)).sum()
    }
}

/// Graded-lex comparison: grading degree first, then lexicographic on the
/// exponent vector (larger exponent of an earlier variable is larger).
pub fn graded_lex_cmp(ctx: &VariableContext, a: &Monomial, b: &Monomial) -> Ordering {
    a.graded_degree(ctx)
        .cmp(&b.graded_degree(ctx))
        .then_with(|| a.0.cmp(&b.0))
}

/// Which grading a homogeneous-component extraction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Degree(i32),
    Weight(i32),
}

/// A finitely supported map from exponent vectors to nonzero exact scalars.
///
/// Negative exponents are allowed only in the declared `localized` variable.
#[derive(Clone, Debug)]
pub struct SparsePolynomial {
    ctx: Context,
    localized: Option<usize>,
    terms: FxHashMap<Monomial, ExactScalar>,
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for SparsePolynomial {}

fn same_context(a: &Context, b: &Context) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SparsePolynomial {
    pub fn zero(ctx: &Context) -> Self {
        Self { ctx: ctx.clone(), localized: None, terms: FxHashMap::default() }
    }

    pub fn constant(ctx: &Context, c: ExactScalar) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ctx.arity()), c);
        }
        p
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, ExactScalar::one())
    }

    pub fn var(ctx: &Context, var: usize) -> Self {
        let mut m = Monomial::one(ctx.arity());
        m.0[var] = 1;
        let mut p = Self::zero(ctx);
        p.terms.insert(m, ExactScalar::one());
        p
    }

    pub fn var_named(ctx: &Context, name: &str) -> Result<Self> {
        Ok(Self::var(ctx, ctx.index_of(name)?))
    }

    /// Single term `c * x^exps`; negative exponents become a localization.
    pub fn monomial(ctx: &Context, exps: &[i16], c: ExactScalar) -> Result<Self> {
        Self::from_terms(ctx, [(exps.to_vec(), c)])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates. At most one variable may carry negative exponents.
    pub fn from_terms<I>(ctx: &Context, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i16>, ExactScalar)>,
    {
        let mut p = Self::zero(ctx);
        for (exps, c) in terms {
            if exps.len() != ctx.arity() {
                return Err(Error::invalid(format!(
                    "exponent vector of length {} in a context of arity {}",
                    exps.len(),
                    ctx.arity()
                )));
            }
            for (i, &e) in exps.iter().enumerate() {
                if e < 0 {
                    match p.localized {
                        None => p.localized = Some(i),
                        Some(l) if l == i => {}
                        Some(_) => return Err(Error::NegativeExponent(ctx.name(i).to_string())),
                    }
                }
            }
            p.add_term(Monomial(exps.into_boxed_slice()), c);
        }
        Ok(p)
    }

    /// Declares `var` as the localization variable (allowing negative
    /// exponents in it under later products).
    pub fn localized_at(mut self, var: usize) -> Result<Self> {
        match self.localized {
            Some(l) if l != var => Err(Error::NegativeExponent(self.ctx.name(l).to_string())),
            _ => {
                self.localized = Some(var);
                Ok(self)
            }
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn localized(&self) -> Option<usize> {
        self.localized
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &ExactScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| graded_lex_cmp(&self.ctx, b.0, a.0));
        v
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn coefficient_of(&self, exps: &[i16]) -> ExactScalar {
        self.coefficient(&Monomial(exps.to_vec().into_boxed_slice()))
    }

    /// Constant term (coefficient of the unit monomial).
    pub fn constant_term(&self) -> ExactScalar {
        self.coefficient(&Monomial::one(self.ctx.arity()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<Option<usize>> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        match (self.localized, other.localized) {
            (Some(a), Some(b)) if a != b => Err(Error::NegativeExponent(self.ctx.name(b).to_string())),
            (a, b) => Ok(a.or(b)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let loc = self.check_compatible(other)?;
        let mut out = self.clone();
        out.localized = loc;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-ExactScalar::one())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Self, c: &ExactScalar) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled_assign(other, c)?;
        Ok(out)
    }

    pub fn add_scaled_assign(&mut self, other: &Self, c: &ExactScalar) -> Result<()> {
        self.localized = self.check_compatible(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let loc = self.check_compatible(other)?;
        let mut out = Self::zero(&self.ctx);
        out.localized = loc;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// `c * m * self` for a monomial `m` given by exponents.
    pub fn mul_term(&self, exps: &[i16], c: &ExactScalar) -> Result<Self> {
        let t = Self::monomial(&self.ctx, exps, c.clone())?;
        self.mul(&t)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-ExactScalar::one())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        acc.localized = self.localized;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: usize) -> Result<Self> {
        if var >= self.ctx.arity() {
            return Err(Error::UnknownVariable(format!("#{var}")));
        }
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, c * &ExactScalar::from_int(e as i64));
        }
        Ok(out)
    }

    pub fn partial_derivative_by_name(&self, name: &str) -> Result<Self> {
        self.partial_derivative(self.ctx.index_of(name)?)
    }

    pub fn homogeneous_component(&self, g: Grading) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        for (m, c) in &self.terms {
            let keep = match g {
                Grading::Degree(d) => m.graded_degree(&self.ctx) == d,
                Grading::Weight(w) => m.graded_weight(&self.ctx) == w,
            };
            if keep {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The set of grading values (degree or weight) the terms occupy.
    pub fn grading_support(&self, by_weight: bool) -> BTreeSet<i32> {
        self.terms
            .keys()
            .map(|m| if by_weight { m.graded_weight(&self.ctx) } else { m.graded_degree(&self.ctx) })
            .collect()
    }

    /// Homogeneous in total (unweighted) degree; returns the degree.
    pub fn homogeneous_total_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_total_degree(&self) -> Option<i32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Sets every listed variable to zero. Errors if one of them carries a
    /// negative exponent.
    pub fn restrict_to_zero(&self, vars: &[usize]) -> Result<Self> {
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        'terms: for (m, c) in &self.terms {
            for &v in vars {
                let e = m.0[v];
                if e < 0 {
                    return Err(Error::NegativeExponent(self.ctx.name(v).to_string()));
                }
                if e > 0 {
                    continue 'terms;
                }
            }
            out.terms.insert(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Evaluates at a full point (one value per variable).
    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        if point.len() != self.ctx.arity() {
            return Err(Error::invalid("point has the wrong number of coordinates"));
        }
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && point[i].is_zero() {
                    return Err(Error::invalid(format!("{} = 0 in a denominator", self.ctx.name(i))));
                }
                t *= &point[i].pow(e as i32);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Ring homomorphism substituting `images[i]` for variable `i`. Images
    /// may live in another context. Requires nonnegative exponents.
    pub fn substitute(&self, images: &[SparsePolynomial]) -> Result<Self> {
        if images.len() != self.ctx.arity() {
            return Err(Error::invalid("substitution needs one image per variable"));
        }
        let target = match images.first() {
            Some(p) => p.ctx.clone(),
            None => self.ctx.clone(),
        };
        let mut cache: Vec<Vec<SparsePolynomial>> =
            images.iter().map(|p| vec![SparsePolynomial::one(&p.ctx), p.clone()]).collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e < 0 {
                    return Err(Error::NegativeExponent(self.ctx.name(i).to_string()));
                }
                let e = e as usize;
                while cache[i].len() <= e {
                    let next = cache[i].last().unwrap().mul(&images[i])?;
                    cache[i].push(next);
                }
                if e > 0 {
                    t = t.mul(&cache[i][e])?;
                }
            }
            out.add_scaled_assign(&t, &ExactScalar::one())?;
        }
        Ok(out)
    }

    /// Minimal `m >= 0` with `self * var^m` polynomial; returns the product
    /// and `m`.
    pub fn clear_denominators(&self, var: usize) -> (SparsePolynomial, i32) {
        let min = self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0);
        let shift = (-min).max(0);
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[var] += shift;
            out.terms.insert(m2, c.clone());
        }
        out.localized = if out.terms.keys().any(|m| m.0.iter().any(|&e| e < 0)) { self.localized } else { None };
        (out, i32::from(shift))
    }

    /// Drops terms of total degree above `order`.
    pub fn truncate_total_degree(&self, order: i32) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        out.terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.total_degree() <= order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&ExactScalar) -> ExactScalar) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.localized = self.localized;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Moves the polynomial into another context of the same arity layout
    /// via an index map `var -> new var`.
    pub fn reindex(&self, target: &Context, map: &[usize]) -> Result<Self> {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0i16; target.arity()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            (e, c.clone())
        });
        Self::from_terms(target, terms.collect::<Vec<_>>())
    }
}

/// Binary/unary ring operations with explicit error reporting.
#[derive(Clone, Copy, Debug)]
pub enum RingOp {
    Add,
    Mul,
    PartialDerivative(usize),
    HomogeneousComponent(Grading),
}

pub fn ring_ops(p: &SparsePolynomial, q: Option<&SparsePolynomial>, op: RingOp) -> Result<SparsePolynomial> {
    match op {
        RingOp::Add => p.add(q.ok_or_else(|| Error::invalid("add needs two operands"))?),
        RingOp::Mul => p.mul(q.ok_or_else(|| Error::invalid("mul needs two operands"))?),
        RingOp::PartialDerivative(v) => p.partial_derivative(v),
        RingOp::HomogeneousComponent(g) => Ok(p.homogeneous_component(g)),
    }
}

/// `laurent_clear_denominators` as a free function.
pub fn laurent_clear_denominators(p: &SparsePolynomial, var: usize) -> (SparsePolynomial, i32) {
    p.clear_denominators(var)
}
