//! Command implementations. Each returns the full stdout text so that
//! nothing is printed before the command has succeeded.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cache::{code_version, Cache};
use super::output::{json_line, render_tables, Rows};
use super::*;
use crate::error::Result;
use crate::hp0::{check_aminus_identity, hp0_graded_dims, Hp0Options, SubgroupKind};
use crate::linalg::modp::DEFAULT_PRIME;
use crate::linalg::{CertifyMode, RankOptions};
use crate::partitions::{
    bn_hilbert, even_length_partition_count, multipartition_count, p_count, p_prime_count,
    p_prime_multipartition_count, prime_bound, PrimeBoundFamily,
};
use crate::poly::TruncatedEvenSeries;
use crate::strata::{leaves_kleinian, leaves_symmetric_power, leaves_type_d, LeafDescriptor, LeafLabel, PartMultiset};
use crate::table::GradedDimensionTable;
use crate::typed::constraints::{assemble, QTable};
use crate::typed::{
    burgers_residual, burgers_residual_of, closed_form_witness, compare_families, component_kernel, component_weight,
    family_generators, ComponentKernel, KernelMethod, SolutionBasis, SolveOptions,
};
use crate::weyl::conjugacy::hh0_brute_force;
use crate::weyl::{hh0_dimension, GroupSpec, HH0Family};

pub struct Ctx {
    pub global: GlobalArgs,
    pub cache: Cache,
}

pub struct Report {
    pub stdout: String,
    /// Set when a check ran to completion and failed.
    pub failure: Option<String>,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Self { stdout, failure: None }
    }
}

fn no_latex(ctx: &Ctx, what: &str) -> Result<()> {
    if ctx.global.format == Format::Latex {
        return Err(Error::invalid(format!("latex output is not available for {what}")));
    }
    Ok(())
}

pub fn dispatch(ctx: &Ctx, cmd: Command) -> Result<Report> {
    match cmd {
        Command::Typed(TypedCmd::Solve(a)) => typed_solve(ctx, a),
        Command::Typed(TypedCmd::Families(a)) => typed_families(ctx, a.n),
        Command::Hp0(Hp0Cmd::Brute(a)) => hp0_brute(ctx, a),
        Command::Hp0(Hp0Cmd::Aminus(a)) => hp0_aminus(ctx, a),
        Command::Counts(c) => counts(ctx, c),
        Command::Strata(s) => strata(ctx, s),
        Command::Series(SeriesCmd::Burgers(a)) => burgers(ctx, a),
        Command::Compare(CompareCmd::Hp0Hh0 { family, n_max }) => compare(ctx, family, n_max),
        Command::Cache(c) => cache_cmd(ctx, c),
    }
}

// ---------------------------------------------------------------- typed

#[derive(Serialize, Deserialize)]
struct StoredKernel {
    rows: usize,
    method: KernelMethod,
    kernel: Vec<Vec<(u32, ExactScalar)>>,
}

fn typed_key(n: usize, len: usize) -> Value {
    json!({"module": "typed", "family": "D", "n": n, "len": len, "code_version": code_version()})
}

/// Rebuilds a cached kernel and checks it against freshly assembled
/// constraints: right shape, canonical free columns, annihilated by every row.
fn load_kernel(n: usize, len: usize, payload: Value, q: &QTable) -> Result<ComponentKernel> {
    let bad = |m: &str| Error::CacheCorrupt(format!("typed component (n={n}, len={len}): {m}"));
    let stored: StoredKernel = serde_json::from_value(payload).map_err(|e| bad(&e.to_string()))?;
    let sys = assemble(n, len, 1..=n, q);
    if stored.rows != sys.rows.len() {
        return Err(bad("row count differs from the assembled system"));
    }
    let ncols = sys.ncols() as u32;
    let mut leads = Vec::new();
    for v in &stored.kernel {
        let Some((lead, one)) = v.last() else { return Err(bad("empty kernel vector")) };
        if !one.is_one() || v.windows(2).any(|w| w[0].0 >= w[1].0) || *lead >= ncols {
            return Err(bad("kernel vector is not in canonical form"));
        }
        leads.push(*lead);
    }
    if leads.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("free columns are not distinct"));
    }
    let exact = sys.exact_rows(q);
    for v in &stored.kernel {
        let dense: FxHashMap<u32, &ExactScalar> = v.iter().map(|(c, x)| (*c, x)).collect();
        for r in &exact {
            let mut acc = ExactScalar::zero();
            for (c, x) in r {
                if let Some(y) = dense.get(c) {
                    acc += &(x * *y);
                }
            }
            if !acc.is_zero() {
                return Err(bad("kernel vector violates a constraint"));
            }
        }
    }
    Ok(ComponentKernel {
        n,
        len,
        columns: sys.columns,
        kernel: stored.kernel,
        rows: stored.rows,
        method: stored.method,
    })
}

fn solve_options(ctx: &Ctx) -> SolveOptions {
    SolveOptions { rational_only: ctx.global.certify == Certify::Always, ..SolveOptions::default() }
}

/// Components `(n, len)` for the given lengths, through the cache.
fn typed_components(ctx: &Ctx, n: usize, lens: &[usize]) -> Result<Vec<ComponentKernel>> {
    let q = QTable::new(n);
    let opts = solve_options(ctx);
    lens.par_iter()
        .map(|&len| {
            let key = typed_key(n, len);
            if let Some(p) = ctx.cache.get("typed", &key)? {
                return load_kernel(n, len, p, &q);
            }
            let k = component_kernel(n, len, &q, &opts);
            let stored = StoredKernel { rows: k.rows, method: k.method, kernel: k.kernel.clone() };
            ctx.cache.put("typed", &key, &serde_json::to_value(&stored)?)?;
            Ok(k)
        })
        .collect()
}

fn typed_basis(ctx: &Ctx, n: usize, weight: Option<i32>) -> Result<SolutionBasis> {
    let lens: Vec<usize> = match weight {
        None => (1..=n).collect(),
        Some(w) => {
            let len = (1..=n).find(|&l| component_weight(n, l) == w).ok_or_else(|| {
                Error::invalid(format!("dual weight {w} is not 4(l - n) for a length 1 <= l <= n = {n}"))
            })?;
            vec![len]
        }
    };
    Ok(SolutionBasis { n, components: typed_components(ctx, n, &lens)? })
}

/// Total dimension of the type-D trace space in degree `n`.
fn typed_total(ctx: &Ctx, n: usize) -> Result<u64> {
    Ok(typed_basis(ctx, n, None)?.dim() as u64)
}

fn typed_solve(ctx: &Ctx, a: TypedSolveArgs) -> Result<Report> {
    let (ns, single): (Vec<usize>, bool) = match (a.n, a.n_max) {
        (Some(n), _) => (vec![n as usize], true),
        (None, Some(m)) => ((2..=m as usize).collect(), false),
        _ => unreachable!("clap requires one of --n, --n-max"),
    };
    let bases: Vec<SolutionBasis> = ns.iter().map(|&n| typed_basis(ctx, n, a.weight)).collect::<Result<_>>()?;
    let out = match ctx.global.format {
        Format::Json if single => json_line(&bases[0].to_json()),
        Format::Json => json_line(&Value::Array(bases.iter().map(SolutionBasis::to_json).collect())),
        f => render_tables(f, &bases.iter().map(SolutionBasis::table).collect::<Vec<_>>()),
    };
    Ok(Report::ok(out))
}

fn typed_families(ctx: &Ctx, n: usize) -> Result<Report> {
    no_latex(ctx, "typed families")?;
    let gens = family_generators(n)?;
    let lens: Vec<usize> = (1..=n).collect();
    let kernels = typed_components(ctx, n, &lens)?;
    let cmp = compare_families(n, &kernels)?;
    let extra: Vec<i32> = cmp.iter().filter(|c| c.has_extra()).map(|c| c.weight).collect();
    let mut rows = Rows::new(&["n", "dual_weight", "family_dim", "kernel_dim"]);
    for c in &cmp {
        rows.push(vec![json!(n), json!(c.weight), json!(c.family_dim), json!(c.kernel_dim)]);
    }
    let out = match ctx.global.format {
        Format::Json => {
            let generators: Vec<Value> = gens
                .iter()
                .map(|g| {
                    let mut v = serde_json::to_value(&g.kind).expect("kind");
                    v["polynomial"] = json!(g.poly.to_string());
                    v
                })
                .collect();
            json_line(&json!({
                "n": n,
                "generators": generators,
                "components": rows.objects(),
                "extra_weights": extra,
            }))
        }
        Format::Csv => rows.csv(),
        _ => {
            let mut s = format!("family generators in degree {n}: {}\n", gens.len());
            for g in &gens {
                s.push_str(&format!("  {}\n", g.poly));
            }
            s.push('\n');
            s.push_str(&rows.text());
            let list: Vec<String> = extra.iter().map(i32::to_string).collect();
            s.push_str(&format!("extra weights: {}\n", if list.is_empty() { "none".into() } else { list.join(", ") }));
            s
        }
    };
    Ok(Report::ok(out))
}

// ---------------------------------------------------------------- hp0

fn hp0_brute(ctx: &Ctx, a: Hp0BruteArgs) -> Result<Report> {
    let spec = GroupSpec::new(a.group, a.n)?;
    let subgroup = match a.subgroup {
        Subgroup::Full => SubgroupKind::Full,
        Subgroup::LastPointStabilizer => SubgroupKind::LastPointStabilizer,
        Subgroup::Ambient => SubgroupKind::Ambient,
    };
    let opts = Hp0Options {
        rank: RankOptions {
            prime: ctx.global.prime.unwrap_or(DEFAULT_PRIME),
            certify: match ctx.global.certify {
                Certify::Fast => CertifyMode::Fast,
                Certify::Always => CertifyMode::Always,
            },
        },
        max_columns: a.max_columns,
        generator_reduction: a.generator_reduction,
        force_generic: a.force_generic,
    };
    let key = json!({
        "module": "hp0",
        "group": a.group.name(),
        "n": a.n,
        "subgroup": subgroup,
        "max_degree": a.max_degree,
        "generator_reduction": a.generator_reduction,
        "code_version": code_version(),
    });
    let table: GradedDimensionTable = match ctx.cache.get("hp0", &key)? {
        Some(p) => serde_json::from_value(p).map_err(|e| Error::CacheCorrupt(format!("hp0 table: {e}")))?,
        None => {
            let t = hp0_graded_dims(spec, subgroup, a.max_degree, &opts)?;
            ctx.cache.put("hp0", &key, &serde_json::to_value(&t)?)?;
            t
        }
    };
    Ok(Report::ok(render_tables(ctx.global.format, &[table])))
}

fn hp0_aminus(ctx: &Ctx, a: AminusArgs) -> Result<Report> {
    no_latex(ctx, "hp0 aminus")?;
    let degrees = check_aminus_identity(a.n, a.max_degree)?;
    let pass = degrees.iter().all(|d| d.pass);
    let mut rows = Rows::new(&["degree", "dim", "rank", "pass"]);
    for d in &degrees {
        rows.push(vec![json!(d.degree), json!(d.dim), json!(d.rank), json!(d.pass)]);
    }
    let out = match ctx.global.format {
        Format::Json => json_line(&json!({"n": a.n, "max_degree": a.max_degree, "degrees": rows.objects(), "pass": pass})),
        Format::Csv => rows.csv(),
        _ => format!("odd sector, n={}\n{}overall: {}\n", a.n, rows.text(), if pass { "pass" } else { "FAIL" }),
    };
    let failure = (!pass).then(|| "the odd sector is not spanned by brackets in every degree".to_string());
    Ok(Report { stdout: out, failure })
}

// ---------------------------------------------------------------- counts

fn n_values(range: &NRange, min: usize) -> Result<(Vec<usize>, bool)> {
    match (range.n, range.n_max) {
        (Some(n), _) if n < min => Err(Error::invalid(format!("n must be at least {min}"))),
        (Some(n), _) => Ok((vec![n], true)),
        (None, Some(m)) => Ok(((min..=m).collect(), false)),
        _ => unreachable!("clap requires one of --n, --n-max"),
    }
}

fn render_rows(ctx: &Ctx, rows: &Rows, single: bool) -> String {
    match ctx.global.format {
        Format::Json if single => json_line(&rows.objects()[0]),
        Format::Json => json_line(&Value::Array(rows.objects())),
        Format::Csv => rows.csv(),
        _ if single => format!("{}\n", rows.rows[0].last().expect("value column")),
        _ => rows.text(),
    }
}

fn counts(ctx: &Ctx, c: CountsCmd) -> Result<Report> {
    if let CountsCmd::BnHilbert { n } = c {
        return Ok(Report::ok(render_tables(ctx.global.format, &[bn_hilbert(n)])));
    }
    no_latex(ctx, "counts")?;
    let (rows, single) = match c {
        CountsCmd::Multipartitions { range, i } => {
            let (ns, single) = n_values(&range, 0)?;
            let mut rows = Rows::new(&["n", "i", "value"]);
            for n in ns {
                rows.push(vec![json!(n), json!(i), json!(multipartition_count(n, i))]);
            }
            (rows, single)
        }
        CountsCmd::P { range, i } => {
            let (ns, single) = n_values(&range, i)?;
            let mut rows = Rows::new(&["n", "i", "value"]);
            for n in ns {
                rows.push(vec![json!(n), json!(i), json!(p_count(n, i)?)]);
            }
            (rows, single)
        }
        CountsCmd::PPrime { range, i, multipartition } => {
            let (ns, single) = n_values(&range, i)?;
            let mut rows = Rows::new(&["n", "i", "reading", "value"]);
            for n in ns {
                let (reading, v) = if multipartition {
                    ("multipartition", p_prime_multipartition_count(n, i)?)
                } else {
                    ("even-parts", p_prime_count(n, i)?)
                };
                rows.push(vec![json!(n), json!(i), json!(reading), json!(v)]);
            }
            (rows, single)
        }
        CountsCmd::EvenLength { range } => {
            let (ns, single) = n_values(&range, 0)?;
            let mut rows = Rows::new(&["n", "value"]);
            for n in ns {
                rows.push(vec![json!(n), json!(even_length_partition_count(n))]);
            }
            (rows, single)
        }
        CountsCmd::Hh0 { family, range, brute } => {
            let min = if family == Family::D { 2 } else { 1 };
            let (ns, single) = n_values(&range, min)?;
            let mut rows = Rows::new(&["family", "n", "method", "value"]);
            for n in ns {
                let f = match family {
                    Family::A => HH0Family::TypeA(n),
                    Family::B => HH0Family::TypeB(n),
                    Family::D => HH0Family::TypeD(n),
                };
                let (method, v) = if brute { ("brute-force", hh0_brute_force(f)?) } else { ("closed-form", hh0_dimension(f)?) };
                rows.push(vec![json!(family_name(family)), json!(n), json!(method), json!(v)]);
            }
            (rows, single)
        }
        CountsCmd::PrimeBound { family, range, i, d } => {
            let (ns, single) = n_values(&range, i)?;
            let top = *ns.last().expect("nonempty range");
            let d = match (family, d) {
                (BoundFamily::TypeD, None) => Some(type_d_multiplicities(ctx, top)?),
                (_, d) => d,
            };
            let mut rows = Rows::new(&["family", "n", "i", "value"]);
            for n in ns {
                let f = match family {
                    BoundFamily::TypeASym => PrimeBoundFamily::TypeASym { n, i },
                    BoundFamily::TypeAQuot => PrimeBoundFamily::TypeAQuot { n, i },
                    BoundFamily::TypeD => PrimeBoundFamily::TypeD { n, i, d: d.clone().unwrap_or_default() },
                };
                let name = match family {
                    BoundFamily::TypeASym => "type-a-sym",
                    BoundFamily::TypeAQuot => "type-a-quot",
                    BoundFamily::TypeD => "type-d",
                };
                rows.push(vec![json!(name), json!(n), json!(i), json!(prime_bound(&f)?)]);
            }
            (rows, single)
        }
        CountsCmd::BnHilbert { .. } => unreachable!("handled above"),
    };
    Ok(Report::ok(render_rows(ctx, &rows, single)))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::A => "A",
        Family::B => "B",
        Family::D => "D",
    }
}

/// `d_0, ..., d_n`: `d_0 = 1`, `d_1 = 0`, then the solver totals.
fn type_d_multiplicities(ctx: &Ctx, n: usize) -> Result<Vec<u64>> {
    let mut d = vec![1, 0];
    for r in 2..=n {
        d.push(typed_total(ctx, r)?);
    }
    d.truncate(n + 1);
    Ok(d)
}

// ---------------------------------------------------------------- strata

fn multiset_text(parts: &PartMultiset) -> String {
    if parts.is_empty() {
        return "-".into();
    }
    parts
        .iter()
        .map(|(p, r)| if *r == 1 { p.to_string() } else { format!("{p}^{r}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn label_text(l: &LeafLabel) -> String {
    match l {
        LeafLabel::SymmetricPower { parts } => multiset_text(parts),
        LeafLabel::Kleinian { r, parts } | LeafLabel::TypeDFirst { r, parts } => {
            format!("r={r}; {}", multiset_text(parts))
        }
        LeafLabel::TypeDSecond { parts } => format!("twisted; {}", multiset_text(parts)),
    }
}

fn strata(ctx: &Ctx, s: StrataCmd) -> Result<Report> {
    no_latex(ctx, "strata")?;
    let leaves: Vec<LeafDescriptor> = match s {
        StrataCmd::SymmetricPower { n, dim_y } => leaves_symmetric_power(n, dim_y)?,
        StrataCmd::Kleinian { n, m } => leaves_kleinian(n, m)?,
        StrataCmd::TypeD { n, d } => {
            if n < 2 {
                return Err(Error::invalid("n must be at least 2"));
            }
            let d = match d {
                Some(d) => d,
                None => type_d_multiplicities(ctx, n)?,
            };
            leaves_type_d(n, &d)?
        }
    };
    let mut rows = Rows::new(&["leaf", "codim", "multiplicity", "stabilizer"]);
    for l in &leaves {
        rows.push(vec![json!(label_text(&l.label)), json!(l.codim), json!(l.multiplicity), json!(l.stabilizer)]);
    }
    let out = match ctx.global.format {
        Format::Json => json_line(&serde_json::to_value(&leaves)?),
        Format::Csv => rows.csv(),
        _ => rows.text(),
    };
    Ok(Report::ok(out))
}

// ---------------------------------------------------------------- series

fn burgers(ctx: &Ctx, a: BurgersArgs) -> Result<Report> {
    no_latex(ctx, "series burgers")?;
    let (fields, pass) = match (a.x0, a.h0) {
        (Some(x0), _) => {
            let u = closed_form_witness(&x0, a.order + 1)?;
            let r = burgers_residual_of(&u, a.order as i32)?;
            let pass = r.is_zero();
            (
                vec![
                    ("route", json!("closed-form")),
                    ("x0", json!(x0.to_string())),
                    ("order", json!(a.order)),
                    ("u", json!(u.to_string())),
                    ("residual", json!(r.to_string())),
                    ("pass", json!(pass)),
                ],
                pass,
            )
        }
        (None, Some(h0)) => {
            if a.order == 0 {
                return Err(Error::invalid("--order must be at least 1"));
            }
            let series = TruncatedEvenSeries::from_scalars(&h0, a.order);
            let sol = burgers_residual(&series, a.t_order)?;
            let pass = sol.residual.is_zero();
            (
                vec![
                    ("route", json!("initial-curve")),
                    ("h0", json!(h0.iter().map(ExactScalar::to_string).collect::<Vec<_>>())),
                    ("order", json!(a.order)),
                    ("t_order", json!(sol.t_order)),
                    ("weight_order", json!(sol.weight_order)),
                    ("u", json!(sol.u.to_string())),
                    ("residual", json!(sol.residual.to_string())),
                    ("pass", json!(pass)),
                ],
                pass,
            )
        }
        _ => unreachable!("clap requires one of --x0, --h0"),
    };
    let out = match ctx.global.format {
        Format::Json => json_line(&Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect())),
        Format::Csv => {
            let scalar: Vec<(&str, Value)> = fields.into_iter().filter(|(k, _)| *k != "h0").collect();
            let mut rows = Rows { headers: scalar.iter().map(|(k, _)| *k).collect(), rows: Vec::new() };
            rows.push(scalar.into_iter().map(|(_, v)| v).collect());
            rows.csv()
        }
        _ => {
            let mut s = String::new();
            for (k, v) in fields {
                let text = match v {
                    Value::String(s) => s,
                    Value::Array(items) => items.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect::<Vec<_>>().join(", "),
                    other => other.to_string(),
                };
                s.push_str(&format!("{k}: {text}\n"));
            }
            s
        }
    };
    let failure = (!pass).then(|| "nonzero Burgers residual".to_string());
    Ok(Report { stdout: out, failure })
}

// ---------------------------------------------------------------- compare

fn compare(ctx: &Ctx, family: Family, n_max: usize) -> Result<Report> {
    no_latex(ctx, "compare")?;
    let min = if family == Family::D { 2 } else { 1 };
    if n_max < min {
        return Err(Error::invalid(format!("--n-max must be at least {min}")));
    }
    let mut rows = Rows::new(&["n", "hp0", "hh0", "relation", "source"]);
    let mut any_proper = false;
    let mut inconsistent = Vec::new();
    for n in min..=n_max {
        let (hp0, hh0, source) = match family {
            Family::D => (typed_total(ctx, n)?, hh0_dimension(HH0Family::TypeD(n))?, "solver"),
            Family::B => (bn_hilbert(n).total(), hh0_dimension(HH0Family::TypeB(n))?, "closed-form"),
            Family::A => (1, hh0_dimension(HH0Family::TypeA(n))?, "closed-form"),
        };
        let relation = match hp0.cmp(&hh0) {
            std::cmp::Ordering::Equal => "equal",
            // HH_0 embeds in the trace space, so only a strictly larger
            // trace space is consistent.
            std::cmp::Ordering::Greater => {
                any_proper = true;
                "proper"
            }
            std::cmp::Ordering::Less => {
                inconsistent.push(n);
                "smaller"
            }
        };
        rows.push(vec![json!(n), json!(hp0), json!(hh0), json!(relation), json!(source)]);
    }
    let verdict = if !inconsistent.is_empty() {
        "inconsistent"
    } else if any_proper {
        "proper"
    } else {
        "equal"
    };
    let out = match ctx.global.format {
        Format::Json => json_line(&json!({
            "family": family_name(family),
            "rows": rows.objects(),
            "verdict": verdict,
        })),
        Format::Csv => rows.csv(),
        _ => format!("{}verdict: {verdict}\n", rows.text()),
    };
    let failure = (!inconsistent.is_empty())
        .then(|| format!("trace space smaller than the HH_0 count for n in {inconsistent:?}"));
    Ok(Report { stdout: out, failure })
}

// ---------------------------------------------------------------- cache

fn cache_cmd(ctx: &Ctx, c: CacheCmd) -> Result<Report> {
    no_latex(ctx, "cache")?;
    let out = match c {
        CacheCmd::Path => match ctx.cache.dir() {
            Some(d) => format!("{}\n", d.display()),
            None => "cache disabled\n".into(),
        },
        CacheCmd::List => {
            let keys = ctx.cache.keys()?;
            match ctx.global.format {
                Format::Json => {
                    json_line(&Value::Array(keys.into_iter().map(|(m, k)| json!({"module": m, "key": k})).collect()))
                }
                _ => {
                    let mut rows = Rows::new(&["module", "key"]);
                    for (m, k) in keys {
                        rows.push(vec![json!(m), json!(k.to_string())]);
                    }
                    if ctx.global.format == Format::Csv {
                        rows.csv()
                    } else {
                        rows.text()
                    }
                }
            }
        }
        CacheCmd::Clear => format!("removed {} records\n", ctx.cache.clear()?),
        CacheCmd::Verify => format!("verified {} records\n", ctx.cache.verify()?),
    };
    Ok(Report::ok(out))
}
