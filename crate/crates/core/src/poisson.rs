//! Constant-coefficient Poisson brackets on Darboux space and on the
//! reflection representation of `S_n`.

use crate::error::{Error, Result};
use crate::poly::{Context, ContextKind, SparsePolynomial, VariableContext};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Darboux(usize),
    Reflection(usize),
}

/// A symplectic structure `{v_a, v_b} = P[a][b]` on the variables of a context.
#[derive(Clone, Debug)]
pub struct PoissonStructure {
    kind: StructureKind,
    ctx: Context,
    /// Nonzero `(a, b, P[a][b])`, both orders included.
    entries: Vec<(usize, usize, ExactScalar)>,
    matrix: Vec<Vec<ExactScalar>>,
}

impl PoissonStructure {
    /// `{x_i, y_j} = delta_ij` on `C^{2n}`.
    pub fn darboux(n: usize) -> Self {
        let ctx = VariableContext::darboux(n);
        let mut m = vec![vec![ExactScalar::zero(); 2 * n]; 2 * n];
        for i in 1..=n {
            m[ctx.x(i)][ctx.y(i)] = ExactScalar::one();
            m[ctx.y(i)][ctx.x(i)] = -ExactScalar::one();
        }
        Self::from_matrix(StructureKind::Darboux(n), ctx, m)
    }

    /// `{x_i, y_j} = delta_ij - 1/n` on the `2(n-1)` surviving coordinates.
    pub fn reflection(n: usize) -> Self {
        assert!(n >= 1, "reflection structure needs n >= 1");
        let ctx = VariableContext::reflection(n);
        let m = n - 1;
        let mut p = vec![vec![ExactScalar::zero(); 2 * m]; 2 * m];
        let inv_n = ExactScalar::ratio(1, n as i64);
        for i in 1..=m {
            for j in 1..=m {
                let v = if i == j { ExactScalar::one() - inv_n.clone() } else { -inv_n.clone() };
                p[ctx.y(j)][ctx.x(i)] = -v.clone();
                p[ctx.x(i)][ctx.y(j)] = v;
            }
        }
        Self::from_matrix(StructureKind::Reflection(n), ctx, p)
    }

    fn from_matrix(kind: StructureKind, ctx: Context, matrix: Vec<Vec<ExactScalar>>) -> Self {
        let mut entries = Vec::new();
        for (a, row) in matrix.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    entries.push((a, b, v.clone()));
                }
            }
        }
        Self { kind, ctx, entries, matrix }
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Structure constant `{v_a, v_b}`.
    pub fn constant(&self, a: usize, b: usize) -> &ExactScalar {
        &self.matrix[a][b]
    }

    /// Nonzero structure constants as `(a, b, value)`.
    pub fn entries(&self) -> &[(usize, usize, ExactScalar)] {
        &self.entries
    }

    /// `{f, g} = sum_{a,b} P[a][b] * d_a f * d_b g`.
    pub fn bracket(&self, f: &SparsePolynomial, g: &SparsePolynomial) -> Result<SparsePolynomial> {
        if f.context() != &self.ctx || g.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let arity = self.ctx.arity();
        let df: Vec<SparsePolynomial> = (0..arity).map(|a| f.partial_derivative(a)).collect::<Result<_>>()?;
        let dg: Vec<SparsePolynomial> = (0..arity).map(|b| g.partial_derivative(b)).collect::<Result<_>>()?;
        let mut out = SparsePolynomial::zero(&self.ctx);
        for (a, b, v) in &self.entries {
            if df[*a].is_zero() || dg[*b].is_zero() {
                continue;
            }
            out.add_scaled_assign(&df[*a].mul(&dg[*b])?, v)?;
        }
        Ok(out)
    }

    /// `(E, F, H) = (sum x_i^2, sum y_i^2, sum x_i y_i)` over all `n` original
    /// coordinates, written in this structure's variables.
    pub fn sl2_generators(&self) -> (SparsePolynomial, SparsePolynomial, SparsePolynomial) {
        let (xs, ys) = self.coordinate_forms();
        let sum_products = |a: &[SparsePolynomial], b: &[SparsePolynomial]| {
            let mut acc = SparsePolynomial::zero(&self.ctx);
            for (p, q) in a.iter().zip(b) {
                acc = acc.add(&p.mul(q).expect("same context")).expect("same context");
            }
            acc
        };
        (sum_products(&xs, &xs), sum_products(&ys, &ys), sum_products(&xs, &ys))
    }

    /// The linear forms `x_1..x_n`, `y_1..y_n` of the original coordinates;
    /// for the reflection structure `x_n = -(x_1 + ... + x_{n-1})`.
    pub fn coordinate_forms(&self) -> (Vec<SparsePolynomial>, Vec<SparsePolynomial>) {
        let ctx = &self.ctx;
        match self.kind {
            StructureKind::Darboux(n) => (
                (1..=n).map(|i| SparsePolynomial::var(ctx, ctx.x(i))).collect(),
                (1..=n).map(|i| SparsePolynomial::var(ctx, ctx.y(i))).collect(),
            ),
            StructureKind::Reflection(n) => {
                let mut xs: Vec<SparsePolynomial> = (1..n).map(|i| SparsePolynomial::var(ctx, ctx.x(i))).collect();
                let mut ys: Vec<SparsePolynomial> = (1..n).map(|i| SparsePolynomial::var(ctx, ctx.y(i))).collect();
                let neg_sum = |v: &[SparsePolynomial]| {
                    v.iter().fold(SparsePolynomial::zero(ctx), |a, b| a.sub(b).expect("same context"))
                };
                let xn = neg_sum(&xs);
                let yn = neg_sum(&ys);
                xs.push(xn);
                ys.push(yn);
                (xs, ys)
            }
        }
    }
}

/// Structure matching a coordinate context.
pub fn structure_for(ctx: &Context) -> Result<PoissonStructure> {
    match ctx.kind() {
        ContextKind::Darboux(n) => Ok(PoissonStructure::darboux(*n)),
        ContextKind::Reflection(n) => Ok(PoissonStructure::reflection(*n)),
        _ => Err(Error::invalid("context carries no symplectic structure")),
    }
}

/// `{f, g}` in the structure determined by the shared context.
pub fn poisson_bracket(f: &SparsePolynomial, g: &SparsePolynomial, p: &PoissonStructure) -> Result<SparsePolynomial> {
    p.bracket(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn darboux_examples() {
        let p = PoissonStructure::darboux(1);
        let c = p.context().clone();
        let f = parse_polynomial(&c, "x1^2").unwrap();
        let g = parse_polynomial(&c, "y1^2").unwrap();
        assert_eq!(p.bracket(&f, &g).unwrap().to_string(), "4*x1*y1");
        let x = parse_polynomial(&c, "x1").unwrap();
        let y = parse_polynomial(&c, "y1").unwrap();
        assert_eq!(p.bracket(&x, &y).unwrap().to_string(), "1");
        assert_eq!(p.bracket(&y, &x).unwrap().to_string(), "-1");
    }

    #[test]
    fn reflection_two() {
        let p = PoissonStructure::reflection(2);
        let c = p.context().clone();
        let x = parse_polynomial(&c, "x1").unwrap();
        let y = parse_polynomial(&c, "y1").unwrap();
        assert_eq!(p.bracket(&x, &y).unwrap().to_string(), "1/2");
    }

    #[test]
    fn sl2_relations() {
        for n in 1..=3 {
            let p = PoissonStructure::darboux(n);
            let (e, f, h) = p.sl2_generators();
            assert_eq!(p.bracket(&h, &e).unwrap(), e.scale(&ExactScalar::from_int(-2)));
            assert_eq!(p.bracket(&h, &f).unwrap(), f.scale(&ExactScalar::from_int(2)));
            assert_eq!(p.bracket(&e, &f).unwrap(), h.scale(&ExactScalar::from_int(4)));
        }
        let p = PoissonStructure::darboux(2);
        let (e, f, h) = p.sl2_generators();
        assert_eq!(e.to_string(), "x1^2 + x2^2");
        assert_eq!(f.to_string(), "y1^2 + y2^2");
        assert_eq!(h.to_string(), "x1*y1 + x2*y2");
    }

    #[test]
    fn reflection_sl2_and_sums() {
        for n in 2..=4 {
            let p = PoissonStructure::reflection(n);
            let (xs, ys) = p.coordinate_forms();
            let sx = xs.iter().fold(SparsePolynomial::zero(p.context()), |a, b| a.add(b).unwrap());
            let sy = ys.iter().fold(SparsePolynomial::zero(p.context()), |a, b| a.add(b).unwrap());
            assert!(sx.is_zero() && sy.is_zero());
            let (e, f, h) = p.sl2_generators();
            assert_eq!(p.bracket(&h, &e).unwrap(), e.scale(&ExactScalar::from_int(-2)));
            assert_eq!(p.bracket(&e, &f).unwrap(), h.scale(&ExactScalar::from_int(4)));
        }
    }

    #[test]
    fn context_mismatch() {
        let p = PoissonStructure::darboux(1);
        let other = VariableContext::darboux(2);
        let f = SparsePolynomial::var(&other, 0);
        assert!(matches!(p.bracket(&f, &f), Err(Error::ContextMismatch)));
    }
}
