//! Deciding whether a homogeneous element of `O^H` is a sum of brackets,
//! with an explicit certificate or its class modulo the bracket span.

use super::span::{BracketSpanProblem, GenericRows, Hp0Options, MonomialSpace};
use crate::error::{Error, Result};
use crate::linalg::{canonical_basis, rational_rref, ColumnOrder, SparseMatrix};
use crate::poisson::PoissonStructure;
use crate::poly::SparsePolynomial;
use crate::scalar::ExactScalar;
use crate::weyl::invariants::is_invariant;
use crate::weyl::{act, GroupSpec, SignedPermutation};

/// `sum coefficient * {u, v}` for `u` in `O^G` and `v` in `O^H`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketCertificate {
    pub pairs: Vec<(SparsePolynomial, SparsePolynomial, ExactScalar)>,
}

impl BracketCertificate {
    pub fn expand(&self, structure: &PoissonStructure) -> Result<SparsePolynomial> {
        let mut acc = SparsePolynomial::zero(structure.context());
        for (u, v, c) in &self.pairs {
            acc.add_scaled_assign(&structure.bracket(u, v)?, c)?;
        }
        Ok(acc)
    }

    /// Re-expands the brackets and compares with `target` exactly.
    pub fn verify(&self, structure: &PoissonStructure, target: &SparsePolynomial) -> Result<bool> {
        Ok(self.expand(structure)? == *target)
    }
}

/// The class of `f` in `O^H_d / {O^G, O^H}_d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Residue {
    /// `f` reduced modulo the bracket span: no monomial of it is a leading
    /// monomial of the span in graded-lex order.
    pub normal_form: SparsePolynomial,
    /// Coordinates of the normal form in `basis`.
    pub coordinates: Vec<ExactScalar>,
    /// Reduced normal forms of `O^H_d`, a basis of the quotient.
    pub basis: Vec<SparsePolynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Certificate(BracketCertificate),
    Residue(Residue),
}

fn in_target(problem: &BracketSpanProblem, f: &SparsePolynomial) -> Result<bool> {
    use super::span::SubgroupKind;
    match problem.subgroup {
        SubgroupKind::Full => is_invariant(&problem.spec, f),
        SubgroupKind::Ambient => Ok(true),
        SubgroupKind::LastPointStabilizer => {
            let n = problem.spec.n;
            let spec: &GroupSpec = &problem.spec;
            for i in 0..n.saturating_sub(2) {
                let g = SignedPermutation::transposition(n, i, i + 1);
                if act(&g, f, spec)? != *f {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Certificate or residue for a homogeneous `f` in `O^H` of degree
/// `problem.target_degree`.
pub fn bracket_membership(f: &SparsePolynomial, problem: &BracketSpanProblem) -> Result<Membership> {
    let ctx = problem.spec.context();
    if **f.context() != *ctx {
        return Err(Error::ContextMismatch);
    }
    let d = problem.target_degree;
    if !f.is_zero() && f.homogeneous_total_degree() != Some(d as i32) {
        return Err(Error::NotHomogeneous);
    }
    if !in_target(problem, f)? {
        return Err(Error::invalid("input is not invariant under the target subgroup"));
    }
    let space = MonomialSpace::new(&ctx, d);
    let width = space.len();
    let rows = GenericRows::new(problem, &Hp0Options::default())?;
    // Each bracket row is tagged with an identity block so the reduced form
    // records which combination of brackets produced it. Tags run in reverse
    // so that dependencies pivot on the latest row and certificates prefer
    // the earliest brackets.
    let k = rows.pairs.len();
    let mut aug = SparseMatrix::new(width + k);
    for (idx, (i, j)) in rows.pairs.iter().enumerate() {
        let b = rows.us[*i].bracket(&rows.vs[*j]);
        let mut r = space.coordinates(&b)?;
        r.push(((width + k - 1 - idx) as u32, ExactScalar::one()));
        aug.push_row(r);
    }
    let rref = rational_rref(&aug, ColumnOrder::Natural);
    let fv = space.coordinates(f)?;
    let res = rref.residual(&fv);
    let nf: Vec<(u32, ExactScalar)> = res.iter().filter(|(c, _)| (*c as usize) < width).cloned().collect();
    if nf.is_empty() {
        let mut pairs = Vec::new();
        for (c, v) in res.iter().filter(|(c, _)| (*c as usize) >= width) {
            let (i, j) = rows.pairs[width + k - 1 - *c as usize];
            pairs.push((rows.us[i].poly.clone(), rows.vs[j].poly.clone(), -v));
        }
        return Ok(Membership::Certificate(BracketCertificate { pairs }));
    }
    let span_rows: Vec<Vec<(u32, ExactScalar)>> = problem
        .target_basis(d)
        .iter()
        .map(|b| {
            let r = rref.residual(&space.coordinates(b).expect("homogeneous"));
            r.into_iter().filter(|(c, _)| (*c as usize) < width).collect()
        })
        .collect();
    let quotient = canonical_basis(width, &span_rows);
    let mut coordinates = Vec::with_capacity(quotient.len());
    let mut rebuilt: Vec<(u32, ExactScalar)> = Vec::new();
    for q in &quotient {
        let lead = q[0].0;
        let c = nf.iter().find(|e| e.0 == lead).map(|e| e.1.clone()).unwrap_or_default();
        for (col, v) in q {
            rebuilt.push((*col, &c * v));
        }
        coordinates.push(c);
    }
    let mut check = SparseMatrix::new(width);
    check.push_row(rebuilt);
    if check.rows().first().map(Vec::as_slice).unwrap_or(&[]) != nf.as_slice() {
        return Err(Error::invalid("input is not in the target subalgebra"));
    }
    Ok(Membership::Residue(Residue {
        normal_form: space.polynomial(&ctx, &nf),
        coordinates,
        basis: quotient.iter().map(|q| space.polynomial(&ctx, q)).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::super::span::SubgroupKind;
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::weyl::GroupFamily;

    fn problem(f: GroupFamily, n: usize, sub: SubgroupKind, d: usize) -> BracketSpanProblem {
        BracketSpanProblem::new(GroupSpec::new(f, n).unwrap(), sub, d).unwrap()
    }

    #[test]
    fn hyperoctahedral_one_certificate() {
        let p = problem(GroupFamily::Hyperoctahedral, 1, SubgroupKind::Full, 2);
        let ctx = p.spec.context();
        let f = parse_polynomial(&ctx, "4*x1*y1").unwrap();
        let Membership::Certificate(c) = bracket_membership(&f, &p).unwrap() else { panic!("expected certificate") };
        assert!(c.verify(&p.spec.structure(), &f).unwrap());
    }

    #[test]
    fn unit_in_darboux_one() {
        let p = problem(GroupFamily::SymmetricFull, 1, SubgroupKind::Ambient, 0);
        let ctx = p.spec.context();
        let f = SparsePolynomial::one(&ctx);
        let Membership::Certificate(c) = bracket_membership(&f, &p).unwrap() else { panic!("expected certificate") };
        assert_eq!(c.pairs.len(), 1);
        assert_eq!(c.pairs[0].0.to_string(), "x1");
        assert_eq!(c.pairs[0].1.to_string(), "y1");
        assert!(c.pairs[0].2.is_one());
        assert!(c.verify(&p.spec.structure(), &f).unwrap());
    }

    #[test]
    fn quartic_is_a_bracket() {
        let p = problem(GroupFamily::Hyperoctahedral, 1, SubgroupKind::Full, 4);
        let ctx = p.spec.context();
        let f = parse_polynomial(&ctx, "x1^4").unwrap();
        let m = bracket_membership(&f, &p).unwrap();
        let Membership::Certificate(c) = m else { panic!("expected certificate") };
        assert!(c.verify(&p.spec.structure(), &f).unwrap());
    }

    #[test]
    fn residue_basis_is_idempotent() {
        let p = problem(GroupFamily::Hyperoctahedral, 2, SubgroupKind::Full, 4);
        let ctx = p.spec.context();
        let f = parse_polynomial(&ctx, "x1^2*y2^2 + x2^2*y1^2").unwrap();
        let Membership::Residue(r) = bracket_membership(&f, &p).unwrap() else { panic!("expected residue") };
        assert_eq!(r.basis.len(), 1);
        for (i, b) in r.basis.iter().enumerate() {
            let Membership::Residue(rb) = bracket_membership(b, &p).unwrap() else { panic!("expected residue") };
            assert_eq!(&rb.normal_form, b);
            for (j, c) in rb.coordinates.iter().enumerate() {
                assert_eq!(c.is_one(), i == j);
                assert_eq!(c.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p = problem(GroupFamily::Hyperoctahedral, 1, SubgroupKind::Full, 2);
        let ctx = p.spec.context();
        assert!(matches!(
            bracket_membership(&parse_polynomial(&ctx, "x1^2 + x1^4").unwrap(), &p),
            Err(Error::NotHomogeneous)
        ));
        assert!(bracket_membership(&parse_polynomial(&ctx, "x1^2 + x1*y1").unwrap(), &p).is_ok());
        let q = problem(GroupFamily::Hyperoctahedral, 2, SubgroupKind::Full, 2);
        let c2 = q.spec.context();
        assert!(bracket_membership(&parse_polynomial(&c2, "x1^2").unwrap(), &q).is_err());
    }
}
