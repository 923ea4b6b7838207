//! Bracket spans `{O^G_a, O^H_b}` inside `O^H_d`, `a + b = d + 2`, and the
//! graded dimensions of the quotient.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::orbit::{orbit_bracket_row, ExpandedOrbit, OrbitSpace};
use crate::error::{Error, Result};
use crate::linalg::echelon::{Incremental, PrimeField, Rationals};
use crate::linalg::{certified_rank, modular_row, CertifyMode, RankMethod, RankOptions, SparseMatrix};
use crate::poisson::PoissonStructure;
use crate::poly::{graded_lex_cmp, Context, Monomial, SparsePolynomial};
use crate::scalar::ExactScalar;
use crate::table::{GradedDimensionTable, GradingLabel, Truncation};
use crate::weyl::invariants::{
    invariant_basis, invariant_orbits, orbit_sum, stabilizer_basis, Pair,
};
use crate::weyl::{GroupFamily, GroupSpec};

/// Which subalgebra `O^H` the brackets land in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupKind {
    /// `H = G`.
    Full,
    /// `H = S_{n-1}` fixing the last point, inside the reflection action of `S_n`.
    LastPointStabilizer,
    /// `H` trivial: the target is all of `O_V`.
    Ambient,
}

/// One graded piece of `HP_0(O^G, O^H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketSpanProblem {
    pub spec: GroupSpec,
    pub subgroup: SubgroupKind,
    pub target_degree: usize,
}

impl BracketSpanProblem {
    pub fn new(spec: GroupSpec, subgroup: SubgroupKind, target_degree: usize) -> Result<Self> {
        if subgroup == SubgroupKind::LastPointStabilizer && spec.family != GroupFamily::SymmetricReflection {
            return Err(Error::invalid("the last-point stabilizer is only defined for symmetric-reflection"));
        }
        Ok(Self { spec, subgroup, target_degree })
    }

    /// Degree pairs `(a, b)` with `a + b = d + 2`, `a, b >= 1`. Constants
    /// bracket to zero, so `b = 0` contributes nothing. With `H = G` the
    /// bracket is antisymmetric and `a <= b` suffices.
    pub fn degree_pairs(&self) -> Vec<(usize, usize)> {
        let total = self.target_degree + 2;
        (1..total)
            .map(|a| (a, total - a))
            .filter(|&(a, b)| self.subgroup != SubgroupKind::Full || a <= b)
            .collect()
    }

    /// Basis of `O^H` in degree `degree`.
    pub fn target_basis(&self, degree: usize) -> Vec<SparsePolynomial> {
        match self.subgroup {
            SubgroupKind::Full => invariant_basis(&self.spec, degree),
            SubgroupKind::LastPointStabilizer => stabilizer_basis(self.spec.n, degree),
            SubgroupKind::Ambient => {
                let ctx = self.spec.context();
                MonomialSpace::new(&ctx, degree)
                    .monomials()
                    .iter()
                    .map(|m| SparsePolynomial::monomial(&ctx, m.exponents(), ExactScalar::one()).expect("valid"))
                    .collect()
            }
        }
    }

    fn uses_orbit_path(&self, opts: &Hp0Options) -> bool {
        !opts.force_generic && self.subgroup == SubgroupKind::Full && self.spec.is_monomial()
    }
}

/// Tuning and guardrails for span computations.
#[derive(Clone, Copy, Debug)]
pub struct Hp0Options {
    pub rank: RankOptions,
    /// Refuse a degree whose coordinate space is wider than this.
    pub max_columns: usize,
    /// Restrict `u` to algebra generators of `O^G`.
    pub generator_reduction: bool,
    /// Use polynomial brackets even where orbit coordinates are available.
    pub force_generic: bool,
}

impl Default for Hp0Options {
    fn default() -> Self {
        Self { rank: RankOptions::default(), max_columns: 200_000, generator_reduction: false, force_generic: false }
    }
}

/// Outcome for one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeResult {
    pub degree: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub method: RankMethod,
}

impl DegreeResult {
    pub fn quotient_dim(&self) -> usize {
        self.target_dim - self.rank
    }
}

/// Monomials of one total degree, indexed in graded-lex descending order so
/// that position `0` is the largest monomial.
#[derive(Clone, Debug)]
pub struct MonomialSpace {
    monomials: Vec<Monomial>,
    index: FxHashMap<Monomial, u32>,
}

impl MonomialSpace {
    pub fn new(ctx: &Context, degree: usize) -> Self {
        let arity = ctx.arity();
        let mut monomials = Vec::new();
        let mut cur = vec![0i16; arity];
        fn rec(i: usize, left: i16, cur: &mut Vec<i16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial::from_exponents(cur.clone()));
                cur[i] = 0;
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if arity == 0 {
            if degree == 0 {
                monomials.push(Monomial::one(0));
            }
        } else {
            rec(0, degree as i16, &mut cur, &mut monomials);
        }
        monomials.sort_by(|a, b| graded_lex_cmp(ctx, b, a));
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
        Self { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn coordinates(&self, f: &SparsePolynomial) -> Result<Vec<(u32, ExactScalar)>> {
        let mut row = Vec::with_capacity(f.len());
        for (m, c) in f.terms() {
            let col = self.index.get(m).ok_or(Error::NotHomogeneous)?;
            row.push((*col, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        Ok(row)
    }

    pub fn polynomial(&self, ctx: &Context, row: &[(u32, ExactScalar)]) -> SparsePolynomial {
        let terms: Vec<(Vec<i16>, ExactScalar)> =
            row.iter().map(|(c, v)| (self.monomials[*c as usize].exponents().to_vec(), v.clone())).collect();
        SparsePolynomial::from_terms(ctx, terms).expect("valid exponents")
    }
}

/// A polynomial with its gradient and Hamiltonian vector field cached, so
/// that `{u, v} = sum_a d_a u * X_v^a` costs one product per variable.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    pub poly: SparsePolynomial,
    grad: Vec<SparsePolynomial>,
    ham: Vec<SparsePolynomial>,
}

impl Prepared {
    pub fn new(p: &PoissonStructure, poly: SparsePolynomial) -> Self {
        let ctx = p.context();
        let arity = ctx.arity();
        let grad: Vec<SparsePolynomial> =
            (0..arity).map(|a| poly.partial_derivative(a).expect("polynomial")).collect();
        let mut ham = vec![SparsePolynomial::zero(ctx); arity];
        for (a, b, v) in p.entries() {
            if !grad[*b].is_zero() {
                ham[*a].add_scaled_assign(&grad[*b], v).expect("same context");
            }
        }
        Self { poly, grad, ham }
    }

    pub fn bracket(&self, other: &Prepared) -> SparsePolynomial {
        let ctx = self.poly.context();
        let mut out = SparsePolynomial::zero(ctx);
        for (du, xv) in self.grad.iter().zip(&other.ham) {
            if du.is_zero() || xv.is_zero() {
                continue;
            }
            out = out.add(&du.mul(xv).expect("same context")).expect("same context");
        }
        out
    }
}

/// Indices of basis elements in each degree `1..=max_degree` that are not
/// products of lower-degree invariants: a generating set of `O^G` as an
/// algebra, hence as a Poisson algebra.
pub fn algebra_generator_indices(spec: &GroupSpec, max_degree: usize) -> Vec<Vec<usize>> {
    let ctx = spec.context();
    let bases: Vec<Vec<SparsePolynomial>> = (0..=max_degree).map(|d| invariant_basis(spec, d)).collect();
    let mut out = vec![Vec::new(); max_degree + 1];
    for a in 1..=max_degree {
        let space = MonomialSpace::new(&ctx, a);
        let mut inc = Incremental::new(Rationals, space.len());
        for b in 1..=a / 2 {
            for f in &bases[b] {
                for g in &bases[a - b] {
                    let p = f.mul(g).expect("same context");
                    inc.push(&space.coordinates(&p).expect("homogeneous"));
                }
            }
        }
        for (i, f) in bases[a].iter().enumerate() {
            if inc.push(&space.coordinates(f).expect("homogeneous")).is_some() {
                out[a].push(i);
            }
        }
    }
    out
}

/// Streams rows into a modular echelon and stops once the modular rank
/// reaches `target_dim`, which certifies the rank since the span lies in a
/// `target_dim`-dimensional space. Otherwise certifies the collected rows.
fn stream_rank<I>(width: usize, target_dim: usize, rows: I, opts: &RankOptions) -> (usize, RankMethod)
where
    I: Iterator<Item = Vec<(u32, ExactScalar)>>,
{
    if target_dim == 0 {
        return (0, RankMethod::FullColumnRank);
    }
    let mut inc = Incremental::new(PrimeField(opts.prime), width);
    let mut kept = SparseMatrix::new(width);
    for row in rows {
        if row.is_empty() {
            continue;
        }
        if opts.certify == CertifyMode::Fast {
            inc.push(&modular_row(&row, opts.prime));
            if inc.rank() == target_dim {
                return (target_dim, RankMethod::FullColumnRank);
            }
        }
        kept.push_row(row);
    }
    let res = certified_rank(&kept, *opts, false);
    (res.rank, res.method)
}

/// Rank of the bracket span in one degree.
pub fn span_dimension(problem: &BracketSpanProblem, opts: &Hp0Options) -> Result<DegreeResult> {
    let d = problem.target_degree;
    let spec = &problem.spec;
    if problem.uses_orbit_path(opts) {
        let target = OrbitSpace::new(invariant_orbits(spec, d));
        guard(target.len(), opts, d)?;
        let mut cells: Vec<(ExpandedOrbit, Vec<Pair>)> = Vec::new();
        let gens = opts.generator_reduction.then(|| algebra_generator_indices(spec, d + 1));
        for (a, b) in problem.degree_pairs() {
            let us = invariant_orbits(spec, a);
            let vs = invariant_orbits(spec, b);
            for (i, u) in us.iter().enumerate() {
                if let Some(g) = &gens {
                    if !g[a].contains(&i) {
                        continue;
                    }
                }
                let eu = ExpandedOrbit::new(u.clone());
                for v in &vs {
                    cells.push((eu.clone(), v.clone()));
                }
            }
        }
        let rows = cells.iter().map(|(u, v)| orbit_bracket_row(u, v, &target));
        let (rank, method) = stream_rank(target.len(), target.len(), rows, &opts.rank);
        return Ok(DegreeResult { degree: d, target_dim: target.len(), rank, method });
    }
    let ctx = spec.context();
    let space = MonomialSpace::new(&ctx, d);
    guard(space.len(), opts, d)?;
    let target_dim = problem.target_basis(d).len();
    let rows = GenericRows::new(problem, opts)?;
    let iter = rows.pairs.iter().map(|(i, j)| {
        let f = rows.us[*i].bracket(&rows.vs[*j]);
        space.coordinates(&f).expect("bracket is homogeneous")
    });
    let (rank, method) = stream_rank(space.len(), target_dim, iter, &opts.rank);
    Ok(DegreeResult { degree: d, target_dim, rank, method })
}

fn guard(width: usize, opts: &Hp0Options, d: usize) -> Result<()> {
    if width > opts.max_columns {
        return Err(Error::Guardrail {
            message: format!("degree {d} needs {width} columns, limit is {}", opts.max_columns),
            partial: None,
        });
    }
    Ok(())
}

/// Polynomial bracket generators for one degree: all `(u, v)` with `u` in
/// `O^G_a`, `v` in `O^H_b`.
pub(crate) struct GenericRows {
    pub us: Vec<Prepared>,
    pub vs: Vec<Prepared>,
    pub pairs: Vec<(usize, usize)>,
}

impl GenericRows {
    pub fn new(problem: &BracketSpanProblem, opts: &Hp0Options) -> Result<Self> {
        let spec = &problem.spec;
        let structure = spec.structure();
        let d = problem.target_degree;
        let gens = opts.generator_reduction.then(|| algebra_generator_indices(spec, d + 1));
        let mut us = Vec::new();
        let mut vs = Vec::new();
        let mut pairs = Vec::new();
        let mut v_cache: FxHashMap<usize, (usize, usize)> = FxHashMap::default();
        for (a, b) in problem.degree_pairs() {
            let (v0, v1) = *v_cache.entry(b).or_insert_with(|| {
                let start = vs.len();
                vs.extend(problem.target_basis(b).into_iter().map(|f| Prepared::new(&structure, f)));
                (start, vs.len())
            });
            for (i, f) in invariant_basis(spec, a).into_iter().enumerate() {
                if let Some(g) = &gens {
                    if !g[a].contains(&i) {
                        continue;
                    }
                }
                let ui = us.len();
                us.push(Prepared::new(&structure, f));
                pairs.extend((v0..v1).map(|j| (ui, j)));
            }
        }
        Ok(Self { us, vs, pairs })
    }
}

/// `HP_0(O^G, O^H)` in degrees `0..=max_degree`. Degrees run in parallel;
/// if a degree trips the guardrail the error carries the table for the
/// degrees below it.
pub fn hp0_graded_dims(
    spec: GroupSpec,
    subgroup: SubgroupKind,
    max_degree: usize,
    opts: &Hp0Options,
) -> Result<GradedDimensionTable> {
    let problems: Vec<BracketSpanProblem> =
        (0..=max_degree).map(|d| BracketSpanProblem::new(spec, subgroup, d)).collect::<Result<_>>()?;
    let results: Vec<Result<DegreeResult>> = problems.par_iter().map(|p| span_dimension(p, opts)).collect();
    let mut table = GradedDimensionTable::new(table_label(&spec, subgroup), spec.n, GradingLabel::PolynomialDegree)
        .with_bound(max_degree as i32);
    for (d, r) in results.into_iter().enumerate() {
        match r {
            Ok(r) => table.set(d as i32, r.quotient_dim() as u64),
            Err(Error::Guardrail { message, .. }) => {
                let completed = d.checked_sub(1).map(|c| c as i32);
                table.truncated = Some(Truncation { completed_through: completed, reason: message.clone() });
                table.bound = completed;
                return Err(Error::Guardrail { message, partial: Some(Box::new(table)) });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(table)
}

fn table_label(spec: &GroupSpec, subgroup: SubgroupKind) -> String {
    match subgroup {
        SubgroupKind::Full => spec.family.name().to_string(),
        SubgroupKind::LastPointStabilizer => format!("{}/stabilizer", spec.family.name()),
        SubgroupKind::Ambient => format!("{}/ambient", spec.family.name()),
    }
}

/// Orbit sum of a pair list in the group's own context.
pub fn orbit_polynomial(spec: &GroupSpec, rep: &[Pair]) -> SparsePolynomial {
    orbit_sum(&spec.context(), rep)
}
