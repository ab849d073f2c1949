//! The `jetquiver` command line.
//!
//! [`run`] parses arguments, dispatches to the library and renders a report
//! as text or JSON. It never touches the process streams, so tests can call
//! it directly; the binary only forwards its [`Outcome`].
//!
//! JSON reports have the top-level keys `command`, `params`, `result` and
//! `cert`. Partitions are arrays of integers and rationals are
//! `{"num": "..", "den": ".."}` with decimal strings. Wall-clock timing is
//! written to stderr so that stdout is byte-identical across runs.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{value_parser, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bott::cohomology_sym_omega;
use crate::diffop::{random_laurent_monomial, verify_lemma};
use crate::error::{invalid, Result};
use crate::jetbundles::{
    cross_check_kernel, fiber_ranks, q_rank_identity, splitting_type, sweep, truncation_grid,
    truncation_rank, verify_self_adjoint, Certification, SplittingCase, SweepRow,
};
use crate::linalg::RankPolicy;
use crate::partitions::{horizontal_strips, partitions_of, Partition};
use crate::quiver::{
    q_slope_chain, quiver_pp, quiver_q, quiver_schur, stability_q, IrreducibleSummand, QuiverRep,
};
use crate::schur::{schur_dim, GModuleSum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;

const MAX_N: u64 = 16;
const MAX_ORDER: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "jetquiver",
    version,
    about = "Principal parts bundles on projective space: splitting, truncation ranks, Bott cohomology and quiver stability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random points, monomials and modular primes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prime to use first for modular rank certificates.
    #[arg(long, global = true)]
    prime: Option<u64>,
}

#[derive(Debug, Args)]
struct Dim {
    /// Dimension of the projective space.
    #[arg(long = "n", visible_alias = "dim", value_parser = value_parser!(u64).range(1..=MAX_N))]
    n: u64,
}

#[derive(Debug, Args)]
struct Bundle {
    #[command(flatten)]
    dim: Dim,
    /// Jet order k.
    #[arg(long = "k", visible_alias = "order", value_parser = value_parser!(u32).range(0..=MAX_ORDER as i64))]
    k: u32,
    /// Twist d of O(d).
    #[arg(long = "d", visible_alias = "twist", allow_hyphen_values = true)]
    d: i64,
}

#[derive(Debug, Args)]
struct Truncation {
    #[command(flatten)]
    bundle: Bundle,
    /// Target jet order h <= k.
    #[arg(long = "h", visible_alias = "trunc-to", value_parser = value_parser!(u32).range(0..=MAX_ORDER as i64))]
    h: u32,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Splitting type of P^kO(d).
    Split(Bundle),
    /// Rank of the truncation H^0 P^kO(d) → H^0 P^hO(d).
    TruncRank(Truncation),
    /// Fiber ranks of η^(k−d) at seeded random points, 0 <= d < k.
    FiberRank {
        #[command(flatten)]
        bundle: Bundle,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Kernel of the truncation map against H^0 Q_(k,h)(d−h).
    CrossCheck(Truncation),
    /// H^0 and H^1 of S^iΩ(l).
    Bott {
        #[command(flatten)]
        dim: Dim,
        #[arg(long, value_parser = value_parser!(u32).range(0..=MAX_ORDER as i64))]
        i: u32,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Quiver representation of P^kO(d) and Q_(k,d), or of S_μΩ with --mu.
    Quiver {
        #[command(flatten)]
        dim: Dim,
        #[arg(long = "k", visible_alias = "order", value_parser = value_parser!(u32).range(0..=MAX_ORDER as i64))]
        k: Option<u32>,
        #[arg(long = "d", visible_alias = "twist", allow_hyphen_values = true)]
        d: Option<i64>,
        /// Comma-separated partition, e.g. 2,1.
        #[arg(long, conflicts_with_all = ["k", "d"])]
        mu: Option<String>,
    },
    /// King stability of Q_(k,d), n >= 2 and 0 <= d < k.
    Stability(Bundle),
    /// Checks η(ξ^k f) = k(deg f − k + 1) ξ^(k−1) f on random Laurent monomials.
    VerifyLemma {
        #[command(flatten)]
        dim: Dim,
        #[arg(long = "k", visible_alias = "order", value_parser = value_parser!(u32).range(1..=MAX_ORDER as i64))]
        k: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Fixed degree; drawn from [-5, 8] per sample when absent.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Runs every check over the full grid.
    Sweep {
        #[arg(long, default_value_t = 3, value_parser = value_parser!(u64).range(1..=MAX_N))]
        max_n: u64,
        #[arg(long, default_value_t = 8, value_parser = value_parser!(u32).range(1..=MAX_ORDER as i64))]
        max_d: u32,
    },
}

/// What [`run`] produced: an exit code and the two stream contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    params: Value,
    result: Value,
    cert: Value,
    text: String,
    /// A claimed property failed.
    counterexample: bool,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    let start = Instant::now();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let stdout = match cli.format {
        Format::Text => report.text,
        Format::Json => {
            let doc = json!({
                "command": report.command,
                "params": report.params,
                "result": report.result,
                "cert": report.cert,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    };
    let mut stderr = format!("elapsed: {:.3} ms\n", start.elapsed().as_secs_f64() * 1e3);
    let code = if report.counterexample {
        stderr.push_str("counterexample found\n");
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let policy = RankPolicy {
        seed: cli.seed,
        prime: cli.prime,
        ..RankPolicy::default()
    };
    let seed = cli.seed;
    match &cli.command {
        Command::Split(b) => split(b, seed),
        Command::TruncRank(t) => trunc_rank(t, &policy),
        Command::FiberRank { bundle, samples } => fiber_rank(bundle, *samples, seed),
        Command::CrossCheck(t) => cross_check(t, &policy),
        Command::Bott { dim, i, l } => bott(dim.n as usize, *i, *l, seed),
        Command::Quiver { dim, k, d, mu } => quiver(dim.n as usize, *k, *d, mu.as_deref(), seed),
        Command::Stability(b) => stability(b, seed),
        Command::VerifyLemma {
            dim,
            k,
            samples,
            degree,
        } => lemma(dim.n as usize, *k, *samples, *degree, seed),
        Command::Sweep { max_n, max_d } => run_sweep(*max_n as usize, *max_d, &policy),
    }
}

fn rational(q: &BigRational) -> Value {
    json!({ "num": q.numer().to_string(), "den": q.denom().to_string() })
}

fn exact_cert(seed: u64) -> Value {
    json!({ "method": "exact", "seed": seed })
}

fn rank_cert(c: &Certification, seed: u64) -> Value {
    let mut v = serde_json::to_value(c).expect("certificate serializes");
    v["seed"] = json!(seed);
    v
}

fn method_name(c: &Certification) -> String {
    match c {
        Certification::Exact => "exact".into(),
        Certification::Modular { primes } => format!("modular mod {primes:?}"),
        Certification::Vanishing => "vanishing".into(),
    }
}

fn module_terms(m: &GModuleSum) -> Value {
    let terms: Vec<Value> = m
        .terms()
        .iter()
        .map(|(p, mult)| {
            let dim = schur_dim(p, m.ambient()).expect("parts bounded by ambient");
            if *mult == 1 {
                json!({ "partition": p, "dim": dim })
            } else {
                json!({ "partition": p, "dim": dim, "multiplicity": mult })
            }
        })
        .collect();
    Value::Array(terms)
}

fn module_text(m: &GModuleSum) -> String {
    if m.is_empty() {
        "0".into()
    } else {
        format!("{m}  [dim {}]", m.dimension())
    }
}

fn summand_json(s: &IrreducibleSummand) -> Value {
    json!({
        "label": s.to_string(),
        "mu": s.mu,
        "twist": s.twist,
        "rank": s.rank(),
        "slope": rational(&s.slope()),
    })
}

fn join_summands(list: &[IrreducibleSummand]) -> String {
    let parts: Vec<String> = list.iter().map(ToString::to_string).collect();
    parts.join(" ⊕ ")
}

fn bundle_params(b: &Bundle) -> Value {
    json!({ "n": b.dim.n, "k": b.k, "d": b.d })
}

fn truncation_params(t: &Truncation) -> Value {
    json!({ "n": t.bundle.dim.n, "d": t.bundle.d, "k": t.bundle.k, "h": t.h })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn split(b: &Bundle, seed: u64) -> Result<Report> {
    let (n, k, d) = (b.dim.n as usize, b.k, b.d);
    let r = splitting_type(n, k, d)?;
    let case = match r.case {
        SplittingCase::Trivializing => "trivializing",
        SplittingCase::Split => "split",
    };
    let mut text = format!("P^{k}O({d}) on P^{n}: {case}\n");
    let _ = writeln!(text, "  ≅ {}", r.summands.join(" ⊕ "));
    match r.q_rank {
        Some(q) => {
            let _ = writeln!(
                text,
                "  rank {} = {} + {}",
                r.total_rank,
                q,
                r.total_rank - q
            );
        }
        None => {
            let _ = writeln!(text, "  rank {}", r.total_rank);
        }
    }
    let _ = writeln!(text, "  gr: {}", join_summands(&r.graded));
    if !r.q_graded.is_empty() {
        let _ = writeln!(text, "  gr Q: {}", join_summands(&r.q_graded));
    }
    if let Some(s) = &r.stability {
        let _ = writeln!(text, "  Q stable: {}", yes(s.stable));
    }
    let result = json!({
        "case": case,
        "summands": r.summands,
        "total_rank": r.total_rank,
        "graded": r.graded.iter().map(summand_json).collect::<Vec<_>>(),
        "q_rank": r.q_rank,
        "q_graded": r.q_graded.iter().map(summand_json).collect::<Vec<_>>(),
        "stability": r.stability,
    });
    Ok(Report {
        command: "split",
        params: bundle_params(b),
        result,
        cert: exact_cert(seed),
        counterexample: r.stability.as_ref().is_some_and(|s| !s.stable),
        text,
    })
}

fn trunc_rank(t: &Truncation, policy: &RankPolicy) -> Result<Report> {
    let (n, d, k, h) = (t.bundle.dim.n as usize, t.bundle.d, t.bundle.k, t.h);
    let r = truncation_rank(n, d, k, h, policy)?;
    let mut result = serde_json::to_value(&r).expect("report serializes");
    if let Value::Object(map) = &mut result {
        map.remove("certificate");
    }
    let mut text = format!("H^0 P^{k}O({d}) → H^0 P^{h}O({d}) on P^{n}\n");
    let _ = writeln!(
        text,
        "  dim {} → {}, rank {} ({})",
        r.dim_domain,
        r.dim_codomain,
        r.rank,
        method_name(&r.certificate)
    );
    let _ = writeln!(
        text,
        "  maximal: {}, injective: {}, surjective: {}, kernel {}",
        yes(r.maximal),
        yes(r.injective),
        yes(r.surjective),
        r.kernel_dim
    );
    Ok(Report {
        command: "trunc-rank",
        params: truncation_params(t),
        result,
        cert: rank_cert(&r.certificate, policy.seed),
        counterexample: !r.maximal,
        text,
    })
}

fn fiber_rank(b: &Bundle, samples: usize, seed: u64) -> Result<Report> {
    let (n, k, d) = (b.dim.n as usize, b.k, b.d);
    if !(0..k as i64).contains(&d) {
        return invalid(format!("fiber-rank needs 0 <= d < k, got d={d} k={k}"));
    }
    let r = fiber_ranks(n, k, d as u32, samples, seed)?;
    let mut text = format!(
        "fibers of η^{} : S^{k}V → S^{d}V on P^{n}, expected rank {}\n",
        k as i64 - d,
        r.expected_rank
    );
    for (p, rank) in r.points.iter().zip(&r.ranks) {
        let _ = writeln!(text, "  {p:?}: {rank}");
    }
    let _ = writeln!(
        text,
        "  surjective everywhere: {}",
        yes(r.surjective_everywhere)
    );
    let mut params = bundle_params(b);
    params["samples"] = json!(samples);
    Ok(Report {
        command: "fiber-rank",
        params,
        result: serde_json::to_value(&r).expect("report serializes"),
        cert: exact_cert(seed),
        counterexample: !r.surjective_everywhere,
        text,
    })
}

fn cross_check(t: &Truncation, policy: &RankPolicy) -> Result<Report> {
    let (n, d, k, h) = (t.bundle.dim.n as usize, t.bundle.d, t.bundle.k, t.h);
    let c = cross_check_kernel(n, d, k, h, policy)?;
    let mut text = format!("kernel of H^0 P^{k}O({d}) → H^0 P^{h}O({d}) on P^{n}\n");
    let _ = writeln!(text, "  rank computation: {}", c.kernel_dim);
    let _ = writeln!(
        text,
        "  H^0 Q_({k},{h})({}): {}",
        d - h as i64,
        module_text(&c.bott_module)
    );
    let _ = writeln!(text, "  agree: {}", yes(c.agrees));
    Ok(Report {
        command: "cross-check",
        params: truncation_params(t),
        result: json!({
            "kernel_dim": c.kernel_dim,
            "bott_dim": c.bott_dim,
            "bott_module": module_terms(&c.bott_module),
            "agrees": c.agrees,
        }),
        cert: rank_cert(&c.certificate, policy.seed),
        counterexample: !c.agrees,
        text,
    })
}

fn bott(n: usize, i: u32, l: i64, seed: u64) -> Result<Report> {
    let c = cohomology_sym_omega(n, i, l)?;
    let mut text = format!("S^{i}Ω({l}) on P^{n}\n");
    let _ = writeln!(text, "  H^0 = {}", module_text(&c.h0));
    let _ = writeln!(text, "  H^1 = {}", module_text(&c.h1));
    if c.higher_possible {
        let _ = writeln!(text, "  higher cohomology may be nonzero");
    }
    Ok(Report {
        command: "bott",
        params: json!({ "n": n, "i": i, "l": l }),
        result: json!({
            "h0": module_terms(&c.h0),
            "h1": module_terms(&c.h1),
            "higher_possible": c.higher_possible,
        }),
        cert: exact_cert(seed),
        counterexample: false,
        text,
    })
}

fn rep_json(rep: &QuiverRep) -> Value {
    let vertices: Vec<Value> = rep
        .vertices
        .iter()
        .map(|v| {
            let mut s = summand_json(&v.summand);
            s["multiplicity"] = json!(v.multiplicity);
            s
        })
        .collect();
    json!({
        "vertices": vertices,
        "arrows": rep.arrows,
        "rank": rep.rank(),
        "components": rep.components().len(),
        "connected": rep.is_connected(),
    })
}

fn parse_partition(s: &str) -> Result<Partition> {
    let parts = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u32>())
        .collect::<std::result::Result<Vec<_>, _>>();
    match parts {
        Ok(p) => Partition::new(p),
        Err(_) => invalid(format!("cannot parse partition {s:?}")),
    }
}

fn quiver(n: usize, k: Option<u32>, d: Option<i64>, mu: Option<&str>, seed: u64) -> Result<Report> {
    let (params, result, text) = match (mu, k, d) {
        (Some(mu), _, _) => {
            let mu = parse_partition(mu)?;
            let rep = quiver_schur(n, &mu)?;
            let text = format!("S_{mu}Ω on P^{n}, rank {}\n  {rep}\n", rep.rank());
            (
                json!({ "n": n, "mu": mu }),
                json!({ "schur": rep_json(&rep) }),
                text,
            )
        }
        (None, Some(k), Some(d)) => {
            let pp = quiver_pp(n, k, d)?;
            let mut text = format!("P^{k}O({d}) on P^{n}, rank {}\n  {pp}\n", pp.rank());
            let q = if k as i64 > d && d >= 0 {
                let q = quiver_q(n, k, d)?;
                let _ = writeln!(text, "Q_({k},{d}), rank {}\n  {q}", q.rank());
                Some(rep_json(&q))
            } else {
                None
            };
            (
                json!({ "n": n, "k": k, "d": d }),
                json!({ "pp": rep_json(&pp), "q": q }),
                text,
            )
        }
        _ => return invalid("quiver needs either --mu or both --k and --d"),
    };
    Ok(Report {
        command: "quiver",
        params,
        result,
        cert: exact_cert(seed),
        counterexample: false,
        text,
    })
}

fn slopes_decreasing(chain: &[(u32, BigRational)]) -> bool {
    chain.windows(2).all(|w| w[0].1 > w[1].1)
}

fn stability(b: &Bundle, seed: u64) -> Result<Report> {
    let (n, k, d) = (b.dim.n as usize, b.k, b.d);
    let v = stability_q(n, k, d)?;
    let chain = q_slope_chain(n, k, d)?;
    let decreasing = slopes_decreasing(&chain);
    let mut text = format!(
        "Q_({k},{d}) on P^{n}: {}\n",
        if v.stable { "stable" } else { "not stable" }
    );
    for row in &v.table {
        let _ = writeln!(text, "  suffix from S^{}Ω({d}): μ_F = {}", row.i, row.mu_f);
    }
    let slopes: Vec<String> = chain.iter().map(|(_, s)| s.to_string()).collect();
    let _ = writeln!(text, "  slopes: {}", slopes.join(" > "));
    let result = json!({
        "stable": v.stable,
        "table": v.table,
        "slopes": chain.iter().map(|(i, s)| json!({ "i": i, "slope": rational(s) })).collect::<Vec<_>>(),
        "slopes_decreasing": decreasing,
    });
    Ok(Report {
        command: "stability",
        params: bundle_params(b),
        result,
        cert: exact_cert(seed),
        counterexample: !(v.stable && decreasing),
        text,
    })
}

struct LemmaTrials {
    samples: usize,
    failures: usize,
    first_failure: Option<Value>,
}

fn lemma_trials<R: Rng>(
    rng: &mut R,
    n: usize,
    k: u32,
    samples: usize,
    degree: Option<i64>,
) -> Result<LemmaTrials> {
    let mut out = LemmaTrials {
        samples,
        failures: 0,
        first_failure: None,
    };
    for _ in 0..samples {
        let deg = degree.unwrap_or_else(|| rng.gen_range(-5..=8));
        let f = random_laurent_monomial(rng, n, deg, 4);
        let report = verify_lemma(k, &f)?;
        if !report.holds {
            out.failures += 1;
            if out.first_failure.is_none() {
                let (exp, coeff) = f.terms().iter().next().expect("monomial has a term");
                out.first_failure = Some(json!({
                    "exponent": exp,
                    "coefficient": rational(coeff),
                    "report": report,
                }));
            }
        }
    }
    Ok(out)
}

fn lemma(n: usize, k: u32, samples: usize, degree: Option<i64>, seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = lemma_trials(&mut rng, n, k, samples, degree)?;
    let text = format!(
        "η(ξ^{k} f) = {k}(deg f − {}) ξ^{} f on {} monomials in {} variables: {} failures\n",
        k as i64 - 1,
        k - 1,
        t.samples,
        n + 1,
        t.failures
    );
    Ok(Report {
        command: "verify-lemma",
        params: json!({ "n": n, "k": k, "samples": samples, "degree": degree }),
        result: json!({
            "samples": t.samples,
            "failures": t.failures,
            "holds": t.failures == 0,
            "first_failure": t.first_failure,
        }),
        cert: exact_cert(seed),
        counterexample: t.failures > 0,
        text,
    })
}

#[derive(Default)]
struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            ..Check::default()
        }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.record_batch(1, ok, label);
    }

    fn record_batch(&mut self, cases: usize, ok: bool, label: impl FnOnce() -> String) {
        self.cases += cases;
        if !ok {
            self.failures.push(label());
        }
    }
}

fn grid_checks(rows: &[SweepRow]) -> Vec<Check> {
    let mut checks = [
        Check::new("maximal_rank"),
        Check::new("kernel_matches_bott"),
        Check::new("injectivity_boundary"),
        Check::new("dimension_criterion"),
    ];
    for row in rows {
        let p = row.point;
        let label = || format!("n={} d={} k={} h={}", p.n, p.d, p.k, p.h);
        checks[0].record(row.maximal_rank, label);
        checks[1].record(row.kernel_matches_bott, label);
        checks[2].record(row.injectivity_boundary, label);
        checks[3].record(row.dimension_criterion, label);
    }
    checks.into()
}

fn run_sweep(max_n: usize, max_d: u32, policy: &RankPolicy) -> Result<Report> {
    let points = truncation_grid(max_n, max_d);
    let rows = sweep(&points, policy)?;
    let mut checks = grid_checks(&rows);

    let mut identity = Check::new("rank_identity");
    for n in 1..=4 {
        for k in 1..=10 {
            for d in 0..k {
                let (a, b) = q_rank_identity(n, k, d);
                identity.record(a == b, || format!("n={n} k={k} d={d}"));
            }
        }
    }
    checks.push(identity);

    let mut stable = Check::new("stability");
    for n in 2..=3 {
        for k in 1..=5u32 {
            for d in 0..k as i64 {
                let v = stability_q(n, k, d)?;
                let ok = v.stable && slopes_decreasing(&q_slope_chain(n, k, d)?);
                stable.record(ok, || format!("n={n} k={k} d={d}"));
            }
        }
    }
    checks.push(stable);

    let mut fibers = Check::new("fiber_exactness");
    for n in 1..=3 {
        for k in 1..=5 {
            for d in 0..k {
                let r = fiber_ranks(n, k, d, 20, policy.seed)?;
                fibers.record(r.surjective_everywhere, || format!("n={n} k={k} d={d}"));
            }
        }
    }
    checks.push(fibers);

    let mut lemma_check = Check::new("euler_lemma");
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    for n in 1..=3 {
        for k in 1..=5 {
            let t = lemma_trials(&mut rng, n, k, 100, None)?;
            lemma_check.record_batch(t.samples, t.failures == 0, || {
                format!("n={n} k={k}: {} failures", t.failures)
            });
        }
    }
    checks.push(lemma_check);

    let mut restriction = Check::new("restriction");
    for n in 1..=4 {
        for size in 0..=5 {
            for mu in partitions_of(size, n + 1) {
                let lhs: u128 = horizontal_strips(&mu, n)
                    .iter()
                    .map(|nu| schur_dim(nu, n))
                    .sum::<Result<u128>>()?;
                let rhs = schur_dim(&mu, n + 1)?;
                restriction.record(lhs == rhs, || format!("n={n} mu={mu}"));
            }
        }
    }
    checks.push(restriction);

    let mut adjoint = Check::new("self_adjoint");
    for n in 1..=3 {
        for d in 0..=5i64 {
            for k in 0..=d as u32 {
                for h in 0..=k {
                    adjoint.record(verify_self_adjoint(n, d, k, h)?, || {
                        format!("n={n} d={d} k={k} h={h}")
                    });
                }
            }
        }
    }
    checks.push(adjoint);

    let all_passed = checks.iter().all(|c| c.failures.is_empty());
    let mut text = String::new();
    for c in &checks {
        let status = if c.failures.is_empty() {
            "ok".to_string()
        } else {
            format!("{} FAILED", c.failures.len())
        };
        let _ = writeln!(text, "{:<22} {:>6} cases  {status}", c.name, c.cases);
        for f in c.failures.iter().take(5) {
            let _ = writeln!(text, "    {f}");
        }
    }
    let _ = writeln!(
        text,
        "{}",
        if all_passed {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );

    let (mut exact, mut modular, mut vanishing) = (0usize, 0usize, 0usize);
    for row in &rows {
        match row.report.certificate {
            Certification::Exact => exact += 1,
            Certification::Modular { .. } => modular += 1,
            Certification::Vanishing => vanishing += 1,
        }
    }
    let checks_json: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "cases": c.cases,
                "passed": c.failures.is_empty(),
                "failures": c.failures,
            })
        })
        .collect();
    Ok(Report {
        command: "sweep",
        params: json!({ "max_n": max_n, "max_d": max_d }),
        result: json!({ "checks": checks_json, "all_passed": all_passed }),
        cert: json!({
            "method": "mixed",
            "exact": exact,
            "modular": modular,
            "vanishing": vanishing,
            "seed": policy.seed,
            "prime": policy.prime,
        }),
        counterexample: !all_passed,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn json_of(args: &[&str]) -> Value {
        let mut argv = vec!["jetquiver"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["--format", "json"]);
        let out = run(argv);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn trunc_rank_payload() {
        let v = json_of(&["trunc-rank", "--n", "2", "--d", "6", "--k", "3", "--h", "1"]);
        let r = &v["result"];
        assert_eq!(r["dim_domain"], 100);
        assert_eq!(r["dim_codomain"], 63);
        assert_eq!(r["rank"], 63);
        assert_eq!(r["maximal"], true);
        assert_eq!(r["kernel_dim"], 37);
        assert_eq!(v["cert"]["method"], "exact");
        assert_eq!(v["command"], "trunc-rank");
    }

    #[test]
    fn canonical_long_names() {
        let a = json_of(&[
            "trunc-rank",
            "--dim",
            "2",
            "--twist",
            "6",
            "--order",
            "3",
            "--trunc-to",
            "1",
        ]);
        let b = json_of(&["trunc-rank", "--n", "2", "--d", "6", "--k", "3", "--h", "1"]);
        assert_eq!(a, b);
    }

    #[test]
    fn bott_payload() {
        let v = json_of(&["bott", "--n", "2", "--i", "1", "--l", "2"]);
        assert_eq!(
            v["result"]["h0"],
            json!([{ "partition": [1, 1], "dim": 3 }])
        );
        assert_eq!(v["result"]["h1"], json!([]));
    }

    #[test]
    fn stability_payload() {
        let v = json_of(&["stability", "--n", "2", "--k", "2", "--d", "0"]);
        assert_eq!(v["result"]["stable"], true);
        assert_eq!(
            v["result"]["table"],
            json!([{ "i": 1, "muF": 0 }, { "i": 2, "muF": 9 }])
        );
        assert_eq!(
            v["result"]["slopes"][0]["slope"],
            json!({ "num": "-3", "den": "2" })
        );
    }

    #[test]
    fn negative_twists_parse() {
        let v = json_of(&["split", "--n", "2", "--k", "2", "--d", "-3"]);
        assert_eq!(v["result"]["case"], "trivializing");
        let v = json_of(&["bott", "--n", "1", "--i", "2", "--l", "-1"]);
        assert_eq!(v["result"]["h0"], json!([]));
    }

    #[test]
    fn argument_errors_exit_one() {
        for argv in [
            vec!["jetquiver"],
            vec!["jetquiver", "frobnicate"],
            vec![
                "jetquiver",
                "trunc-rank",
                "--n",
                "2",
                "--d",
                "6",
                "--k",
                "3",
            ],
            vec![
                "jetquiver",
                "trunc-rank",
                "--n",
                "0",
                "--d",
                "6",
                "--k",
                "3",
                "--h",
                "1",
            ],
            vec![
                "jetquiver",
                "trunc-rank",
                "--n",
                "2",
                "--d",
                "6",
                "--k",
                "1",
                "--h",
                "3",
            ],
            vec!["jetquiver", "stability", "--n", "1", "--k", "2", "--d", "0"],
            vec![
                "jetquiver",
                "fiber-rank",
                "--n",
                "2",
                "--k",
                "2",
                "--d",
                "2",
            ],
            vec![
                "jetquiver",
                "bott",
                "--n",
                "2",
                "--i",
                "1",
                "--l",
                "2",
                "--bogus",
            ],
            vec!["jetquiver", "quiver", "--n", "2", "--k", "2"],
            vec!["jetquiver", "verify-lemma", "--n", "2", "--k", "0"],
        ] {
            let out = run(argv.clone());
            assert_eq!(out.code, EXIT_USAGE, "{argv:?}");
            assert!(out.stdout.is_empty());
            assert!(!out.stderr.is_empty());
        }
    }

    #[test]
    fn help_exits_zero() {
        let out = run(["jetquiver", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("trunc-rank"));
    }

    #[test]
    fn text_output() {
        let out = run([
            "jetquiver",
            "trunc-rank",
            "--n",
            "2",
            "--d",
            "6",
            "--k",
            "3",
            "--h",
            "1",
        ]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("rank 63"));
        assert!(out.stdout.contains("kernel 37"));
        let out = run(["jetquiver", "quiver", "--n", "2", "--mu", "2,1"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    }

    #[test]
    fn lemma_and_fibers_run_clean() {
        let v = json_of(&[
            "verify-lemma",
            "--n",
            "2",
            "--k",
            "3",
            "--samples",
            "25",
            "--seed",
            "7",
        ]);
        assert_eq!(v["result"]["failures"], 0);
        let v = json_of(&[
            "fiber-rank",
            "--n",
            "3",
            "--k",
            "4",
            "--d",
            "1",
            "--samples",
            "5",
        ]);
        assert_eq!(v["result"]["surjective_everywhere"], true);
        let v = json_of(&[
            "cross-check",
            "--n",
            "2",
            "--d",
            "6",
            "--k",
            "3",
            "--h",
            "1",
        ]);
        assert_eq!(v["result"]["bott_dim"], 37);
    }

    #[test]
    fn small_sweep_passes() {
        let v = json_of(&["sweep", "--max-n", "2", "--max-d", "4"]);
        assert_eq!(v["result"]["all_passed"], true);
    }
}
