//! Truncated power series in `x^2` with polynomial coefficients, plus the
//! square-root machinery built on top of them.

use super::context::{Context, VariableContext};
use super::polynomial::SparsePolynomial;
use crate::error::{Error, Result};
use crate::scalar::{binom_half, ExactScalar};

/// `sum_{i=0}^{order} c_i x^{2i}`, exact through `x^{2 order}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEvenSeries {
    ctx: Context,
    coefficients: Vec<SparsePolynomial>,
}

impl TruncatedEvenSeries {
    pub fn zero(ctx: &Context, order: usize) -> Self {
        Self { ctx: ctx.clone(), coefficients: vec![SparsePolynomial::zero(ctx); order + 1] }
    }

    /// Series with the given coefficients (padded or truncated to `order`).
    pub fn new(ctx: &Context, mut coefficients: Vec<SparsePolynomial>, order: usize) -> Result<Self> {
        if coefficients.iter().any(|c| c.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        coefficients.resize(order + 1, SparsePolynomial::zero(ctx));
        Ok(Self { ctx: ctx.clone(), coefficients })
    }

    /// Scalar-coefficient series from rationals.
    pub fn from_scalars(values: &[ExactScalar], order: usize) -> Self {
        let ctx = VariableContext::scalars();
        let coeffs = values.iter().map(|v| SparsePolynomial::constant(&ctx, v.clone())).collect();
        Self::new(&ctx, coeffs, order).expect("scalar context")
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficient of `x^{2i}` (zero beyond the truncation order).
    pub fn coefficient(&self, i: usize) -> SparsePolynomial {
        self.coefficients.get(i).cloned().unwrap_or_else(|| SparsePolynomial::zero(&self.ctx))
    }

    pub fn coefficients(&self) -> &[SparsePolynomial] {
        &self.coefficients
    }

    /// Constant values of the coefficients, when all are scalars.
    pub fn scalar_coefficients(&self) -> Option<Vec<ExactScalar>> {
        self.coefficients
            .iter()
            .map(|c| c.is_constant().then(|| c.constant_term()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coefficients.clone();
        c.resize(order + 1, SparsePolynomial::zero(&self.ctx));
        Self { ctx: self.ctx.clone(), coefficients: c }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coefficients[i].add(&other.coefficients[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ctx: self.ctx.clone(), coefficients: coeffs })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = self.order().min(other.order());
        let mut coeffs = vec![SparsePolynomial::zero(&self.ctx); order + 1];
        for i in 0..=order {
            if self.coefficients[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coefficients[j].is_zero() {
                    continue;
                }
                let prod = self.coefficients[i].mul(&other.coefficients[j])?;
                coeffs[i + j].add_scaled_assign(&prod, &ExactScalar::one())?;
            }
        }
        Ok(Self { ctx: self.ctx.clone(), coefficients: coeffs })
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        Self { ctx: self.ctx.clone(), coefficients: self.coefficients.iter().map(|p| p.scale(c)).collect() }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }
}

/// `x^shift * series`: the square root of an even series whose leading term
/// sits at `x^{2 shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesRoot {
    pub shift: usize,
    pub series: TruncatedEvenSeries,
}

/// Taylor coefficients of `Q(z) = sqrt(1 + z)` through `z^order`, returned as
/// a scalar series with `z = x^2`.
pub fn q_series(order: usize) -> TruncatedEvenSeries {
    let coeffs: Vec<ExactScalar> = (0..=order).map(binom_half).collect();
    TruncatedEvenSeries::from_scalars(&coeffs, order)
}

/// Principal square root of `f` through `x^{2 order}` of `g^2`.
///
/// The leading coefficient must be a constant with an exact rational square
/// root; the positive root is chosen. Other coefficients may be arbitrary
/// polynomials, since only the leading one is ever inverted.
pub fn even_series_sqrt(f: &TruncatedEvenSeries, order: usize) -> Result<SeriesRoot> {
    let order = order.min(f.order());
    let k = match f.valuation() {
        Some(k) if k <= order => k,
        _ => return Err(Error::BranchPoint("series vanishes to the truncation order".into())),
    };
    let lead = &f.coefficients[k];
    if !lead.is_constant() {
        return Err(Error::BranchPoint("leading coefficient is not a scalar".into()));
    }
    let lead = lead.constant_term();
    let root0 = lead
        .sqrt_exact()
        .ok_or_else(|| Error::BranchPoint(format!("leading coefficient {lead} is not a rational square")))?;
    let ctx = f.context().clone();
    let len = order - k;
    let shifted: Vec<SparsePolynomial> = (0..=len).map(|i| f.coefficient(i + k)).collect();
    let two_root_inv = (&ExactScalar::from_int(2) * &root0).inv().expect("nonzero root");
    let mut g = vec![SparsePolynomial::constant(&ctx, root0)];
    for i in 1..=len {
        let mut acc = shifted[i].clone();
        for j in 1..i {
            let prod = g[j].mul(&g[i - j])?;
            acc.add_scaled_assign(&prod, &-ExactScalar::one())?;
        }
        g.push(acc.scale(&two_root_inv));
    }
    Ok(SeriesRoot { shift: k, series: TruncatedEvenSeries::new(&ctx, g, len)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn scalars(v: &[(i64, i64)], order: usize) -> TruncatedEvenSeries {
        let vals: Vec<ExactScalar> = v.iter().map(|&(a, b)| ExactScalar::ratio(a, b)).collect();
        TruncatedEvenSeries::from_scalars(&vals, order)
    }

    #[test]
    fn q_series_examples() {
        let q3 = q_series(3).scalar_coefficients().unwrap();
        let want: Vec<ExactScalar> = [(1, 1), (1, 2), (-1, 8), (1, 16)].iter().map(|&(a, b)| ExactScalar::ratio(a, b)).collect();
        assert_eq!(q3, want);
        assert_eq!(q_series(0).scalar_coefficients().unwrap(), vec![ExactScalar::one()]);
        assert_eq!(q_series(4).scalar_coefficients().unwrap()[4], ExactScalar::ratio(-5, 128));
    }

    #[test]
    fn q_series_recurrence() {
        let c = q_series(12).scalar_coefficients().unwrap();
        for m in 0..12 {
            let expect = &c[m] * &(ExactScalar::ratio(1, 2) - ExactScalar::from_int(m as i64))
                / ExactScalar::from_int(m as i64 + 1);
            assert_eq!(c[m + 1], expect);
        }
    }

    #[test]
    fn sqrt_one_plus_x2_is_q() {
        let f = scalars(&[(1, 1), (1, 1)], 3);
        let g = even_series_sqrt(&f, 3).unwrap();
        assert_eq!(g.shift, 0);
        assert_eq!(g.series, q_series(3));
    }

    #[test]
    fn sqrt_of_four_x2() {
        let f = scalars(&[(0, 1), (4, 1)], 2);
        let g = even_series_sqrt(&f, 2).unwrap();
        assert_eq!(g.shift, 1);
        let c = g.series.scalar_coefficients().unwrap();
        assert_eq!(c[0], ExactScalar::from_int(2));
        assert!(c[1..].iter().all(ExactScalar::is_zero));
    }

    #[test]
    fn sqrt_perfect_square() {
        let f = scalars(&[(1, 1), (2, 1), (1, 1)], 2);
        let g = even_series_sqrt(&f, 2).unwrap();
        let c = g.series.scalar_coefficients().unwrap();
        assert_eq!(c, vec![ExactScalar::one(), ExactScalar::one(), ExactScalar::zero()]);
    }

    #[test]
    fn sqrt_errors() {
        assert!(matches!(even_series_sqrt(&scalars(&[(0, 1)], 3), 3), Err(Error::BranchPoint(_))));
        assert!(even_series_sqrt(&scalars(&[(2, 1)], 3), 3).is_err());
    }

    #[test]
    fn sqrt_with_polynomial_coefficients() {
        let ctx = VariableContext::s_variables(3);
        let coeffs = vec![SparsePolynomial::one(&ctx), parse_polynomial(&ctx, "s2").unwrap(), parse_polynomial(&ctx, "s3").unwrap()];
        let f = TruncatedEvenSeries::new(&ctx, coeffs, 4).unwrap();
        let g = even_series_sqrt(&f, 4).unwrap();
        let sq = g.series.mul(&g.series).unwrap();
        assert_eq!(sq, f);
    }
}
