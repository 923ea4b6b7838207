//! Randomized checks shared by the property and acceptance targets.
//!
//! Every suite draws from a ChaCha stream with a fixed seed, overridable
//! through `PTL_SEED`, and returns the first counterexample as an error.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};

use ptl::linalg::{canonical_basis, rational_rref, ColumnOrder, SparseMatrix};
use ptl::partitions::partitions;
use ptl::poisson::PoissonStructure;
use ptl::poly::{Context, SparsePolynomial, VariableContext};
use ptl::typed::constraints::{assemble, component_columns, QTable};
use ptl::typed::families::{component_coordinates, satisfies_constraints};
use ptl::typed::solve::solve_system;
use ptl::typed::xi::{xi_context, xi_field};
use ptl::typed::{burgers_residual_of, closed_form_witness, family_generators, solve_degree, ComponentKernel, SolveOptions};
use ptl::weyl::{act, GroupFamily, GroupSpec};
use ptl::ExactScalar;

pub const DEFAULT_SEED: u64 = 0x5eed_0d15_7ace;

static SEED: OnceLock<u64> = OnceLock::new();

/// Sets the seed before any suite runs; later calls are ignored.
pub fn set_seed(seed: u64) {
    let _ = SEED.set(seed);
}

pub fn seed() -> u64 {
    *SEED.get_or_init(|| std::env::var("PTL_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED))
}

fn runner(cases: u32, salt: u64) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    bytes[8..16].copy_from_slice(&salt.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let salt = name.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(u64::from(b)));
    runner(cases, salt).run(&strategy, test).map_err(|e| match e {
        TestError::Fail(why, input) => format!("{name}: {why} for input {input:?}"),
        TestError::Abort(why) => format!("{name}: aborted: {why}"),
    })
}

fn ok(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn lib<T>(r: ptl::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

// ---------------------------------------------------------------- strategies

pub type Terms = Vec<(Vec<i16>, i64)>;

/// Up to `max_terms` terms, exponents `0..=max_exp`, coefficients in `-4..=4`.
pub fn terms(arity: usize, max_terms: usize, max_exp: i16) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, arity), -4i64..=4), 0..=max_terms)
}

pub fn poly(ctx: &Context, t: &Terms) -> SparsePolynomial {
    SparsePolynomial::from_terms(ctx, t.iter().map(|(e, c)| (e.clone(), ExactScalar::from_int(*c)))).expect("arity")
}

pub fn nonzero_rational() -> impl Strategy<Value = ExactScalar> {
    ((1i64..=9), (1i64..=5), any::<bool>()).prop_map(|(a, b, neg)| ExactScalar::ratio(if neg { -a } else { a }, b))
}

// ---------------------------------------------------------------- caches

fn kernels(n: usize) -> &'static Vec<ComponentKernel> {
    static CACHE: OnceLock<Vec<Vec<ComponentKernel>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| (0..=12).map(|n| if n == 0 { Vec::new() } else { solve_degree(n, &QTable::new(n), &SolveOptions::default()) }).collect());
    &all[n]
}

fn random_kernel_element(n: usize, coeffs: &[i64], ctx: &Context) -> SparsePolynomial {
    let mut f = SparsePolynomial::zero(ctx);
    let mut i = 0;
    for k in kernels(n) {
        for p in k.polynomials(ctx) {
            let c = coeffs[i % coeffs.len()];
            i += 1;
            f = f.add(&p.scale(&ExactScalar::from_int(c))).expect("same context");
        }
    }
    f
}

// ---------------------------------------------------------------- suites

/// Jacobi, antisymmetry and Leibniz on random triples, for both structures.
pub fn jacobi_leibniz() -> Result<(), String> {
    for (label, p) in [("darboux(2)", PoissonStructure::darboux(2)), ("reflection(3)", PoissonStructure::reflection(3))] {
        let ctx = p.context().clone();
        let a = ctx.arity();
        run(&format!("jacobi-leibniz {label}"), 100, (terms(a, 4, 2), terms(a, 4, 2), terms(a, 4, 2)), |(f, g, h)| {
            let (f, g, h) = (poly(&ctx, &f), poly(&ctx, &g), poly(&ctx, &h));
            let br = |u: &SparsePolynomial, v: &SparsePolynomial| p.bracket(u, v).expect("context");
            let jac = br(&f, &br(&g, &h)).add(&br(&g, &br(&h, &f))).unwrap().add(&br(&h, &br(&f, &g))).unwrap();
            ok(jac.is_zero(), || format!("Jacobi sum {jac}"))?;
            ok(br(&f, &g).add(&br(&g, &f)).unwrap().is_zero(), || "antisymmetry".into())?;
            let lhs = br(&f.mul(&g).unwrap(), &h);
            let rhs = f.mul(&br(&g, &h)).unwrap().add(&g.mul(&br(&f, &h)).unwrap()).unwrap();
            ok(lhs == rhs, || "Leibniz".into())
        })?;
    }
    Ok(())
}

/// `g.{f, h} = {g.f, g.h}` and `(gh).f = g.(h.f)` for random group elements.
pub fn equivariance() -> Result<(), String> {
    let specs = [
        GroupSpec::new(GroupFamily::SymmetricFull, 3).unwrap(),
        GroupSpec::new(GroupFamily::SymmetricReflection, 3).unwrap(),
        GroupSpec::new(GroupFamily::Hyperoctahedral, 2).unwrap(),
        GroupSpec::new(GroupFamily::Demihyperoctahedral, 3).unwrap(),
    ];
    for spec in specs {
        let ctx = spec.context();
        let p = spec.structure();
        let elements = spec.elements();
        let a = ctx.arity();
        let m = elements.len();
        run(
            &format!("equivariance {}({})", spec.family, spec.n),
            50,
            (0..m, 0..m, terms(a, 3, 2), terms(a, 3, 2)),
            |(i, j, f, h)| {
                let (g, k) = (&elements[i], &elements[j]);
                let (f, h) = (poly(&ctx, &f), poly(&ctx, &h));
                let lhs = lib(act(g, &lib(p.bracket(&f, &h))?, &spec))?;
                let rhs = lib(p.bracket(&lib(act(g, &f, &spec))?, &lib(act(g, &h, &spec))?))?;
                ok(lhs == rhs, || format!("bracket not equivariant under {g:?}"))?;
                let gk = lib(act(&g.compose(k), &f, &spec))?;
                let g_k = lib(act(g, &lib(act(k, &f, &spec))?, &spec))?;
                ok(gk == g_k, || format!("not an action for {g:?}, {k:?}"))
            },
        )?;
    }
    Ok(())
}

/// Every family generator of degree `n <= n_max` lies in the solved kernel.
pub fn family_membership(n_max: usize) -> Result<(), String> {
    for n in 2..=n_max {
        let ks = kernels(n);
        for e in family_generators(n).map_err(|e| e.to_string())? {
            let coords = component_coordinates(&e.poly, n).map_err(|e| e.to_string())?;
            for (len, v) in coords {
                let k = &ks[len - 1];
                let before = canonical_basis(k.columns.len(), &k.kernel).len();
                let mut joint = k.kernel.clone();
                joint.push(v);
                if canonical_basis(k.columns.len(), &joint).len() != before {
                    return Err(format!("family element {:?} of degree {n} is outside the kernel", e.kind));
                }
            }
        }
    }
    Ok(())
}

/// Products of random kernel elements of degrees `m + n <= 10` satisfy the
/// degree-`(m + n)` constraints.
pub fn product_closure() -> Result<(), String> {
    let ctx = VariableContext::s_variables(10);
    let pairs: Vec<(usize, usize)> = (2..=8).flat_map(|m| (2..=10 - m).map(move |n| (m, n))).filter(|(m, n)| m <= n).collect();
    let q = QTable::new(10);
    run("product closure", 40, (prop::sample::select(pairs), prop::collection::vec(-3i64..=3, 1..8), prop::collection::vec(-3i64..=3, 1..8)), |((m, n), a, b)| {
        let f = random_kernel_element(m, &a, &ctx);
        let g = random_kernel_element(n, &b, &ctx);
        let fg = f.mul(&g).unwrap();
        if fg.is_zero() {
            return Ok(());
        }
        ok(lib(satisfies_constraints(&fg, m + n, &q))?, || format!("product of degrees {m} and {n} leaves the kernel"))
    })
}

/// Adding `xi_k` for `k = n+1..=2n` changes nothing in degree `n <= 8`:
/// those fields vanish on the stratum for random kernel elements and for
/// every monomial, and the kernels assembled with `k <= 2n` are the same.
pub fn k_range_stability() -> Result<(), String> {
    run("k-range stability", 24, (2usize..=8, prop::collection::vec(-3i64..=3, 1..6)), |(n, coeffs)| {
        let ctx = xi_context(2 * n);
        let f = random_kernel_element(n, &coeffs, &ctx);
        for k in 1..=2 * n {
            let r = lib(lib(xi_field(k, 2 * n))?.restricted(&f))?;
            ok(r.is_zero(), || format!("xi_{k} does not vanish on a kernel element of degree {n}"))?;
        }
        for lam in partitions(n) {
            let mut e = vec![0i16; ctx.arity()];
            for p in &lam {
                e[p - 1] += 1;
            }
            let mono = SparsePolynomial::monomial(&ctx, &e, ExactScalar::one()).unwrap();
            for k in n + 1..=2 * n {
                let r = lib(lib(xi_field(k, 2 * n))?.restricted(&mono))?;
                ok(r.is_zero(), || format!("xi_{k} moves s^{lam:?} on its stratum"))?;
            }
        }
        let q = QTable::new(2 * n);
        for k in kernels(n) {
            let wide = solve_system(&assemble(n, k.len, 1..=2 * n, &q), &q, &SolveOptions::default());
            ok(wide.kernel == k.kernel, || format!("component ({n}, {}) changes with k <= 2n", k.len))?;
        }
        Ok(())
    })
}

/// Random admissible exponent lists for `n in {2, 3}`.
pub fn leading_term() -> Result<(), String> {
    use ptl::hp0::leading_term_identity;
    use ptl::weyl::invariants::canonical;
    let pair = (0u16..=3, 0u16..=3).prop_filter("odd degree", |(a, b)| (a + b) % 2 == 1);
    run("leading-term identity", 60, prop::collection::vec(pair, 2..=3), |pairs| {
        let pairs = canonical(&pairs);
        let r = lib(leading_term_identity(&pairs))?;
        ok(r.pass, || format!("expected {} found {} lower {:?}", r.expected, r.found, r.lower_terms))
    })
}

pub fn burgers_closed_form() -> Result<(), String> {
    run("burgers closed form", 12, nonzero_rational(), |x0| {
        let u = lib(closed_form_witness(&x0, 7))?;
        let r = lib(burgers_residual_of(&u, 6))?;
        ok(r.is_zero(), || format!("residual {r}"))
    })
}

/// Kernel of the constraints on the whole degree-`n` space, built from the
/// fields without splitting by length, has the dimension of the
/// per-component kernels combined.
pub fn full_space_kernel(n: usize) -> Result<(), String> {
    let columns: Vec<Vec<u8>> = (1..=n).flat_map(|l| component_columns(n, l)).collect();
    let ctx = xi_context(n);
    let mut m = SparseMatrix::new(columns.len());
    for k in 1..=n {
        let field = xi_field(k, n).map_err(|e| e.to_string())?;
        let zeros: Vec<usize> = (0..2 * k - 1).collect();
        let mut rows: BTreeMap<Vec<i16>, Vec<(u32, ExactScalar)>> = BTreeMap::new();
        for (c, lam) in columns.iter().enumerate() {
            let mut e = vec![0i16; ctx.arity()];
            for &p in lam {
                e[p as usize - 1] += 1;
            }
            let f = SparsePolynomial::monomial(&ctx, &e, ExactScalar::one()).unwrap();
            let r = field.apply(&f).and_then(|g| g.restrict_to_zero(&zeros)).map_err(|e| e.to_string())?;
            for (mono, v) in r.terms() {
                rows.entry(mono.exponents().to_vec()).or_default().push((c as u32, v.clone()));
            }
        }
        for (_, r) in rows {
            m.push_row(r);
        }
    }
    let full = columns.len() - rational_rref(&m, ColumnOrder::Natural).rank();
    let split: usize = kernels(n).iter().map(ComponentKernel::dim).sum();
    if full != split {
        return Err(format!("degree {n}: full-space kernel {full}, components {split}"));
    }
    Ok(())
}

/// Associativity and distributivity on random Laurent-free polynomials.
pub fn ring_axioms() -> Result<(), String> {
    let ctx = VariableContext::darboux(2);
    run("ring axioms", 100, (terms(4, 4, 3), terms(4, 4, 3), terms(4, 4, 3)), |(f, g, h)| {
        let (f, g, h) = (poly(&ctx, &f), poly(&ctx, &g), poly(&ctx, &h));
        ok(f.mul(&g).unwrap().mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap(), || "associativity".into())?;
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        ok(lhs == f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap(), || "distributivity".into())?;
        ok(f.mul(&g).unwrap() == g.mul(&f).unwrap(), || "commutativity".into())
    })
}

/// `sqrt(f)^2 = f` to the truncation order for scalar series with a square
/// leading coefficient.
pub fn series_sqrt() -> Result<(), String> {
    use ptl::poly::{even_series_sqrt, TruncatedEvenSeries};
    run("series sqrt", 60, (1i64..=6, 1i64..=4, prop::collection::vec(-5i64..=5, 0..6)), |(a, b, rest)| {
        let order = 6;
        let mut vals = vec![ExactScalar::ratio(a * a, b * b)];
        vals.extend(rest.iter().map(|&c| ExactScalar::from_int(c)));
        let f = TruncatedEvenSeries::from_scalars(&vals, order);
        let root = lib(even_series_sqrt(&f, order))?;
        ok(root.shift == 0, || "unexpected shift".into())?;
        let sq = lib(root.series.mul(&root.series))?.truncate(order);
        ok(sq == f, || format!("square of root differs: {sq:?}"))
    })
}

/// `Q(z)^2 = 1 + z` coefficientwise.
pub fn q_series_square() -> Result<(), String> {
    use ptl::poly::q_series;
    for order in 1..=12 {
        let q = q_series(order);
        let sq = q.mul(&q).map_err(|e| e.to_string())?.truncate(order);
        let expect: Vec<ExactScalar> =
            (0..=order).map(|i| if i <= 1 { ExactScalar::one() } else { ExactScalar::zero() }).collect();
        if sq.scalar_coefficients().as_deref() != Some(expect.as_slice()) {
            return Err(format!("Q^2 through z^{order} is not 1 + z"));
        }
    }
    Ok(())
}

/// Homogeneous components by degree and by weight each reassemble `f`.
pub fn homogeneous_decomposition() -> Result<(), String> {
    use ptl::poly::Grading;
    let ctx = VariableContext::darboux(2);
    run("homogeneous decomposition", 100, terms(4, 8, 3), |t| {
        let f = poly(&ctx, &t);
        for by_weight in [false, true] {
            let mut sum = SparsePolynomial::zero(&ctx);
            for g in f.grading_support(by_weight) {
                let part = f.homogeneous_component(if by_weight { Grading::Weight(g) } else { Grading::Degree(g) });
                ok(!part.is_zero(), || format!("empty component at {g}"))?;
                sum = sum.add(&part).unwrap();
            }
            ok(sum == f, || "components do not sum to f".into())?;
        }
        Ok(())
    })
}

/// The Darboux bracket of homogeneous polynomials of degrees `a`, `b` is
/// zero or homogeneous of degree `a + b - 2`.
pub fn bracket_degree() -> Result<(), String> {
    use ptl::poly::Grading;
    let p = PoissonStructure::darboux(2);
    let ctx = p.context().clone();
    run("bracket degree", 100, (1i32..=4, 1i32..=4, terms(4, 5, 4), terms(4, 5, 4)), |(a, b, f, g)| {
        let f = poly(&ctx, &f).homogeneous_component(Grading::Degree(a));
        let g = poly(&ctx, &g).homogeneous_component(Grading::Degree(b));
        let h = lib(p.bracket(&f, &g))?;
        ok(h.is_zero() || h.homogeneous_total_degree() == Some(a + b - 2), || format!("degree of {h}"))
    })
}

/// Invariant bases are fixed by every generator of the group.
pub fn invariant_bases() -> Result<(), String> {
    use ptl::weyl::invariant_basis;
    for family in GroupFamily::ALL {
        for n in 2..=3 {
            let spec = GroupSpec::new(family, n).map_err(|e| e.to_string())?;
            for d in 0..=4 {
                for f in invariant_basis(&spec, d) {
                    for g in spec.generators() {
                        if act(&g, &f, &spec).map_err(|e| e.to_string())? != f {
                            return Err(format!("{family}({n}) degree {d}: {f} moved by {g:?}"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Rank modulo a prime never exceeds the rational rank.
pub fn modular_rank_bound() -> Result<(), String> {
    use ptl::linalg::modular_rank;
    let entries = prop::collection::vec(prop::collection::vec((0u32..6, -10i64..=10), 0..5), 1..7);
    run("modular rank bound", 200, (prop::sample::select(vec![2u64, 3, 5, 7, 2_305_843_009_213_693_951]), entries), |(p, rows)| {
        let mut m = SparseMatrix::new(6);
        for r in rows {
            let mut dedup: BTreeMap<u32, i64> = BTreeMap::new();
            for (c, v) in r {
                *dedup.entry(c).or_default() += v;
            }
            m.push_row(dedup.into_iter().filter(|e| e.1 != 0).map(|(c, v)| (c, ExactScalar::from_int(v))).collect());
        }
        let exact = rational_rref(&m, ColumnOrder::Natural).rank();
        let (modp, _) = modular_rank(&m, p);
        ok(modp <= exact, || format!("rank mod {p} is {modp}, rational rank {exact}"))
    })
}

/// Counting identities: `a_n(1) = p(n)`, `a_n(i)` grows with `i`, and
/// `p(n)` grows with `n`.
pub fn counting_monotonicity() -> Result<(), String> {
    use ptl::partitions::{multipartition_count, partition_count};
    for n in 0..=30 {
        if multipartition_count(n, 1) != partition_count(n) {
            return Err(format!("a_{n}(1) != p({n})"));
        }
        for i in 1..6 {
            if multipartition_count(n, i + 1) < multipartition_count(n, i) {
                return Err(format!("a_{n}({}) < a_{n}({i})", i + 1));
            }
        }
        if n > 0 && partition_count(n) < partition_count(n - 1) {
            return Err(format!("p({n}) < p({})", n - 1));
        }
    }
    Ok(())
}
