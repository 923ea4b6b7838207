//! The `ptl` command line.
//!
//! [`run`] parses arguments, runs one command inside a bounded worker pool
//! and writes the result to `out`. Exit codes: 0 success, 1 a failed check
//! or an I/O error, 2 invalid usage, 3 a resource guardrail (the partial
//! table is still written), 4 a corrupt cache.

pub mod cache;
mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::linalg::modp::is_prime;
use crate::scalar::ExactScalar;
pub use cache::Cache;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Certify {
    /// Modular rank, rational re-elimination of the pivots only.
    Fast,
    /// Full rational elimination.
    Always,
}

#[derive(Parser, Debug)]
#[command(name = "ptl", version, about = "Poisson traces of Weyl-group quotient singularities")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Size of the worker pool (default: available cores).
    #[arg(long, global = true, value_parser = parse_workers)]
    workers: Option<usize>,
    /// Result cache directory.
    #[arg(long, global = true, env = "PTL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Word-sized prime for the modular rank pass.
    #[arg(long, global = true, value_parser = parse_prime)]
    prime: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "fast")]
    certify: Certify,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The type-D constraint solver.
    #[command(subcommand)]
    Typed(TypedCmd),
    /// Brute-force bracket-span tables.
    #[command(subcommand)]
    Hp0(Hp0Cmd),
    /// Partition and conjugacy-class counts.
    #[command(subcommand)]
    Counts(CountsCmd),
    /// Symplectic leaves and multiplicities.
    #[command(subcommand)]
    Strata(StrataCmd),
    /// Series spot-checks.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Cross-checks between computations.
    #[command(subcommand)]
    Compare(CompareCmd),
    /// Inspect or clear the result cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Subcommand, Debug)]
enum TypedCmd {
    /// Graded dimensions of the type-D trace space.
    Solve(TypedSolveArgs),
    /// Compare the kernel with the two explicit solution families.
    Families(NArg),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("range").required(true).args(["n", "n_max"])))]
struct TypedSolveArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=200))]
    n: Option<u64>,
    /// Solve every n from 2 through this bound.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=200))]
    n_max: Option<u64>,
    /// Only the component of this dual weight.
    #[arg(long, requires = "n", allow_negative_numbers = true)]
    weight: Option<i32>,
}

#[derive(Args, Debug)]
struct NArg {
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Subgroup {
    Full,
    LastPointStabilizer,
    Ambient,
}

#[derive(Subcommand, Debug)]
enum Hp0Cmd {
    /// `O^H / {O^G, O^H}` degree by degree.
    Brute(Hp0BruteArgs),
    /// The odd-sector vanishing check.
    Aminus(AminusArgs),
}

#[derive(Args, Debug)]
struct Hp0BruteArgs {
    /// symmetric-full, symmetric-reflection, hyperoctahedral or demihyperoctahedral.
    #[arg(long)]
    group: crate::weyl::GroupFamily,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_degree: usize,
    #[arg(long, value_enum, default_value = "full")]
    subgroup: Subgroup,
    /// Refuse a degree wider than this many columns.
    #[arg(long, default_value_t = 200_000)]
    max_columns: usize,
    /// Bracket only with algebra generators of the invariants.
    #[arg(long)]
    generator_reduction: bool,
    /// Polynomial brackets even where orbit coordinates apply.
    #[arg(long)]
    force_generic: bool,
}

#[derive(Args, Debug)]
struct AminusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_degree: usize,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("range").required(true).args(["n", "n_max"])))]
struct NRange {
    #[arg(long)]
    n: Option<usize>,
    /// Sweep n from 0 (or the smallest valid n) through this bound.
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum CountsCmd {
    /// `a_n(i)`: i-multipartitions of n.
    Multipartitions {
        #[command(flatten)]
        range: NRange,
        #[arg(long)]
        i: usize,
    },
    /// `p_{n,i}`: partitions of n into n - i parts.
    P {
        #[command(flatten)]
        range: NRange,
        #[arg(long)]
        i: usize,
    },
    /// `p'_{n,i}`: the all-even-parts count, or the multipartition reading.
    PPrime {
        #[command(flatten)]
        range: NRange,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        multipartition: bool,
    },
    /// Partitions of n with an even number of parts.
    EvenLength {
        #[command(flatten)]
        range: NRange,
    },
    /// Conjugacy classes without eigenvalue 1.
    Hh0 {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        range: NRange,
        /// Enumerate the group instead of using the closed form.
        #[arg(long)]
        brute: bool,
    },
    /// Hilbert series of the type-B trace space.
    BnHilbert {
        #[arg(long)]
        n: usize,
    },
    /// Upper bound on the codimension-i multiplicity.
    PrimeBound {
        #[arg(long, value_enum)]
        family: BoundFamily,
        #[command(flatten)]
        range: NRange,
        #[arg(long)]
        i: usize,
        /// `d_0,d_1,...` for the type-D bound (default: solver totals).
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u64>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundFamily {
    TypeASym,
    TypeAQuot,
    TypeD,
}

#[derive(Subcommand, Debug)]
enum StrataCmd {
    /// Leaves of `Sym^n Y`.
    SymmetricPower {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim_y: usize,
    },
    /// Leaves of `Sym^n(C^2/G)`, G with m nontrivial irreducibles.
    Kleinian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Leaves of `C^{2n}/D_n`.
    TypeD {
        #[arg(long)]
        n: usize,
        /// `d_0,...,d_n` (default: solver totals with `d_0 = 1`).
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u64>>,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// Check `u_x + u u_t = 0`.
    Burgers(BurgersArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("route").required(true).args(["x0", "h0"])))]
struct BurgersArgs {
    /// Expand the closed-form witness around this point.
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<ExactScalar>,
    /// Residual order (closed form) or truncation order of h(0) in x^2.
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Coefficients of `x^0, x^2, x^4, ...` in h(0).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    h0: Option<Vec<ExactScalar>>,
    /// Highest power of t kept on the h(0) route.
    #[arg(long, default_value_t = 4)]
    t_order: usize,
}

#[derive(Subcommand, Debug)]
enum CompareCmd {
    /// Total trace-space dimension versus the `HH_0` count.
    Hp0Hh0 {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    /// Print the cache directory.
    Path,
    /// List cached keys.
    List,
    /// Remove every record.
    Clear,
    /// Re-check every record's checksum.
    Verify,
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(w) if w >= 1 => Ok(w),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|_| format!("`{s}` is not an unsigned integer"))?;
    if p >= 1 << 62 || !is_prime(p) {
        return Err(format!("{p} is not a prime below 2^62"));
    }
    Ok(p)
}

/// Default cache location: `$XDG_CACHE_HOME/ptl`, else `~/.cache/ptl`.
pub fn default_cache_dir() -> Option<PathBuf> {
    let nonempty = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty());
    nonempty("XDG_CACHE_HOME")
        .map(|d| PathBuf::from(d).join("ptl"))
        .or_else(|| nonempty("HOME").map(|h| PathBuf::from(h).join(".cache").join("ptl")))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Guardrail { .. } => 3,
        Error::CacheCorrupt(_) => 4,
        Error::Io(_) | Error::Json(_) => 1,
        _ => 2,
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    let cache = if cli.global.no_cache {
        Cache::disabled()
    } else {
        match cli.global.cache_dir.clone().or_else(default_cache_dir) {
            Some(d) => Cache::at(d),
            None => Cache::disabled(),
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.global.workers {
        pool = pool.num_threads(w);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 1;
        }
    };
    let ctx = commands::Ctx { global: cli.global, cache };
    let result = pool.install(|| commands::dispatch(&ctx, cli.command));
    match result {
        Ok(report) => {
            if out.write_all(report.stdout.as_bytes()).is_err() {
                return 1;
            }
            if let Some(note) = report.failure {
                let _ = writeln!(err, "check failed: {note}");
                return 1;
            }
            0
        }
        Err(e) => {
            if let Error::Guardrail { message, partial } = &e {
                if let Some(t) = partial {
                    let _ = out.write_all(output::render_tables(ctx.global.format, std::slice::from_ref(t)).as_bytes());
                    let _ = writeln!(err, "guardrail: {message}; the partial table above stops early");
                } else {
                    let _ = writeln!(err, "guardrail: {message}");
                }
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            exit_code(&e)
        }
    }
}
