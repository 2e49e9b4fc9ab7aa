//! `freeinv`: injectivity and inverses of free noncommutative polynomial maps.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use freeinv::bipartite::{hypo_jacobian, InjectivityOptions};
use freeinv::deriv::{free_derivative, scion};
use freeinv::inverter::{invert, pmid_bound, verify_inverse, InversionOutcome, InvertOptions};
use freeinv::jacobian::{auxiliary_inverse, jacobian_extract, poly_matrix_inverse_with};
use freeinv::mateval::{eval_map, eval_poly_float, MatrixTuple};
use freeinv::matrix::SeriesInverseLimits;
use freeinv::registry::{Registry, Verdict};
use freeinv::sysolve::{iterate_split, solve_truncated, ProperAlgebraicSystem};
use freeinv::{parse_poly, FreePoly, FreePolyMap, Kind, Matrix};
use num_bigint::BigUint;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "freeinv", version, about = "Exact inverses of free noncommutative polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized certificates.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MapArgs {
    /// Number of variables; inferred from the component count when omitted.
    #[arg(short = 'g')]
    g: Option<usize>,
    /// Components, one polynomial per argument.
    #[arg(required = true)]
    components: Vec<String>,
}

#[derive(Args)]
struct CapArgs {
    /// Working-degree cap.
    #[arg(long, default_value_t = 64)]
    cap: usize,
    /// Run with the full degree bound instead of the cap.
    #[arg(long)]
    rigorous: bool,
}

impl CapArgs {
    fn options(&self, seed: u64) -> InvertOptions {
        InvertOptions {
            cap: (!self.rigorous).then_some(self.cap),
            seed,
            ..InvertOptions::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide injectivity and return the polynomial inverse.
    Invert {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Constant part and left Jacobian: p = p(0) + x J.
    Jacobian {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Iterates of the auxiliary inverse split into head and tail.
    AuxIterate {
        #[command(flatten)]
        map: MapArgs,
        /// Number of iterations.
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        /// Truncation length.
        #[arg(long, default_value_t = 16)]
        trunc: usize,
    },
    /// Solve a proper algebraic system z = a(x, z) modulo long words.
    SolveSystem {
        #[command(flatten)]
        map: MapArgs,
        /// Truncation length.
        #[arg(long, default_value_t = 8)]
        trunc: usize,
    },
    /// Free derivative Df(x)[y] of each polynomial.
    Derive {
        #[arg(required = true)]
        polys: Vec<String>,
    },
    /// The scion (Dp(y)[x], y).
    Scion {
        #[command(flatten)]
        map: MapArgs,
    },
    /// The hypo-Jacobian over the bipartite algebra.
    Hypojac {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Decide injectivity with a named method.
    CheckInjective {
        #[command(flatten)]
        map: MapArgs,
        #[command(flatten)]
        cap: CapArgs,
        /// aux-inverse or hypo-jacobian.
        #[arg(long, default_value = "aux-inverse")]
        method: String,
    },
    /// Evaluate at a tuple of matrices.
    Eval {
        #[command(flatten)]
        map: MapArgs,
        /// JSON matrix tuple, or @FILE.
        #[arg(long)]
        at: String,
        /// Print floating-point values.
        #[arg(long)]
        float: bool,
    },
    /// Check p o q = x = q o p exactly.
    Verify {
        #[arg(short = 'p', num_args = 1.., required = true)]
        p: Vec<String>,
        #[arg(short = 'q', num_args = 1.., required = true)]
        q: Vec<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Success,
    Negative,
    Indeterminate,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Negative => 1,
            Status::Indeterminate => 3,
        }
    }
}

struct Report {
    status: Status,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            status: Status::Success,
            text,
            json,
        }
    }
}

fn parse_component(i: usize, src: &str) -> Result<FreePoly> {
    parse_poly(src).with_context(|| format!("component {}: {src:?}", i + 1))
}

fn parse_components(srcs: &[String]) -> Result<Vec<FreePoly>> {
    srcs.iter().enumerate().map(|(i, s)| parse_component(i, s)).collect()
}

/// Parses the components and checks they only use `x1..xg` and `extra`.
fn parse_checked(args: &MapArgs, extra: &[(Kind, usize)]) -> Result<FreePolyMap> {
    let comps = parse_components(&args.components)?;
    let g = args.g.unwrap_or(comps.len());
    let mut allowed = vec![(Kind::X, g)];
    allowed.extend_from_slice(extra);
    for (i, c) in comps.iter().enumerate() {
        c.check_letters(&allowed).with_context(|| format!("component {}", i + 1))?;
    }
    Ok(FreePolyMap::new(comps))
}

/// A square map in `g` variables.
fn parse_square(args: &MapArgs) -> Result<FreePolyMap> {
    let p = parse_checked(args, &[])?;
    if let Some(g) = args.g {
        if g != p.arity() {
            bail!("-g {g} given but {} components supplied", p.arity());
        }
    }
    Ok(p)
}

fn strings(m: &FreePolyMap) -> Vec<String> {
    m.iter().map(ToString::to_string).collect()
}

fn map_text(m: &FreePolyMap) -> String {
    format!("({})", strings(m).join(", "))
}

fn matrix_strings<R: freeinv::ring::Ring + std::fmt::Display>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn big_json(b: &BigUint) -> Value {
    match u64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

fn run_invert(p: &FreePolyMap, options: &InvertOptions) -> Result<Report> {
    let inv = invert(p, options)?;
    let bound = inv.bound_b.as_ref().map_or(Value::Null, big_json);
    let bound_text = inv.bound_b.as_ref().map_or("-".to_string(), ToString::to_string);
    Ok(match inv.outcome {
        InversionOutcome::PolynomialInverse { q, iterations } => Report::ok(
            format!("inverse\nq = {}\niterations {iterations}, B = {bound_text}, cap used {}", map_text(&q), inv.cap_used),
            json!({"outcome": "inverse", "q": strings(&q), "iterations": iterations, "bound_B": bound, "cap_used": inv.cap_used}),
        ),
        InversionOutcome::NotInjective(reason) => Report {
            status: Status::Negative,
            text: format!("not injective ({reason})\nB = {bound_text}, cap used {}", inv.cap_used),
            json: json!({"outcome": "not-injective", "reason": reason.to_string(), "bound_B": bound, "cap_used": inv.cap_used}),
        },
        InversionOutcome::Indeterminate { cap_used } => Report {
            status: Status::Indeterminate,
            text: format!("indeterminate at cap {cap_used}; rerun with a larger --cap or --rigorous\nB = {bound_text}"),
            json: json!({"outcome": "indeterminate", "reason": "cap-reached", "bound_B": bound, "cap_used": cap_used}),
        },
    })
}

fn run_jacobian(p: &FreePolyMap) -> Result<Report> {
    let d = jacobian_extract(p)?;
    let rows = matrix_strings(&d.jacobian);
    let constant: Vec<String> = d.constant.iter().map(ToString::to_string).collect();
    let mut text = matrix_text(&rows);
    if d.constant.iter().any(|c| !c.is_zero()) {
        text = format!("constant ({})\n{text}", constant.join(", "));
    }
    Ok(Report::ok(text, json!({"constant": constant, "jacobian": rows})))
}

fn run_aux_iterate(p: &FreePolyMap, k: usize, trunc: usize) -> Result<Report> {
    let p0 = p.without_constants();
    let jac = jacobian_extract(&p0)?.jacobian;
    let cap = pmid_bound(p.arity(), jac.degree().unwrap_or(0)).bound_usize().unwrap_or(usize::MAX / 4);
    let limits = SeriesInverseLimits {
        degree_cap: cap,
        term_budget: InvertOptions::default().term_budget,
    };
    let jinv = match poly_matrix_inverse_with(&jac, limits) {
        Ok(m) => m,
        Err(e) => {
            return Ok(Report {
                status: Status::Negative,
                text: format!("Jacobian has no polynomial inverse ({})", e.reason),
                json: json!({"outcome": "no-jacobian-inverse", "reason": e.reason.to_string()}),
            })
        }
    };
    let aux = auxiliary_inverse(&jinv);
    let mut text = format!("auxiliary inverse {aux}\n");
    let mut steps = Vec::new();
    for i in 1..=k {
        let s = iterate_split(&aux, i, trunc)?;
        text += &format!("k={i} dz={} head={}\n", s.dz, map_text(&s.head));
        steps.push(json!({
            "k": i,
            "head": strings(&s.head),
            "tail": strings(&s.tail),
            "dz": s.dz.to_string(),
            "exact": s.exact,
        }));
    }
    Ok(Report::ok(
        text.trim_end().to_string(),
        json!({"auxiliary": strings(aux.as_map()), "iterates": steps}),
    ))
}

fn run_solve_system(args: &MapArgs, trunc: usize) -> Result<Report> {
    let h = args.components.len();
    let a = parse_checked(args, &[(Kind::Z, h)])?;
    let s = ProperAlgebraicSystem::from_map(a);
    let sol = solve_truncated(&s, trunc)?;
    let text = sol
        .iter()
        .enumerate()
        .map(|(i, c)| format!("z{} = {c} + O({})", i + 1, trunc + 1))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::ok(text, json!({"solution": strings(&sol), "truncation": trunc})))
}

fn run_derive(polys: &[String]) -> Result<Report> {
    let ds: Vec<String> = parse_components(polys)?.iter().map(|f| free_derivative(f).to_string()).collect();
    Ok(Report::ok(ds.join("\n"), json!(ds)))
}

fn run_scion(p: &FreePolyMap) -> Result<Report> {
    let s = scion(p, p.arity())?;
    Ok(Report::ok(map_text(&s), json!(strings(&s))))
}

fn run_hypojac(p: &FreePolyMap) -> Result<Report> {
    let rows = matrix_strings(&hypo_jacobian(p)?);
    Ok(Report::ok(matrix_text(&rows), json!(rows)))
}

fn run_check(p: &FreePolyMap, method: &str, cap: &CapArgs, seed: u64) -> Result<Report> {
    let inj = InjectivityOptions {
        seed,
        ..InjectivityOptions::default()
    };
    let registry = Registry::with_defaults(cap.options(seed), inj);
    let Some(decider) = registry.get(method) else {
        let known: Vec<_> = registry.names().collect();
        bail!("unknown method {method:?}; available: {}", known.join(", "));
    };
    let verdict = decider.decide(p)?;
    let mut out = json!({"method": method, "verdict": verdict.to_string()});
    let mut text = format!("{verdict} [{method}]");
    let status = match &verdict {
        Verdict::Injective(q) => {
            out["outcome"] = json!("injective");
            if let Some(q) = q {
                out["q"] = json!(strings(q));
                text += &format!("\nq = {}", map_text(q));
            }
            Status::Success
        }
        Verdict::NotInjective(reason) => {
            out["outcome"] = json!("not-injective");
            out["reason"] = json!(reason);
            Status::Negative
        }
        Verdict::Indeterminate => {
            out["outcome"] = json!("indeterminate");
            Status::Indeterminate
        }
    };
    Ok(Report { status, text, json: out })
}

fn run_eval(args: &MapArgs, at: &str, float: bool) -> Result<Report> {
    let src = match at.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => at.to_string(),
    };
    let value: Value = serde_json::from_str(&src).context("matrix tuple is not valid JSON")?;
    let x = MatrixTuple::from_json(&value)?;
    // the tuple fixes the alphabet unless -g does
    let g = args.g.unwrap_or(x.arity());
    if g != x.arity() {
        bail!("-g {g} given but the tuple has {} matrices", x.arity());
    }
    let p = FreePolyMap::new(parse_components(&args.components)?);
    let comps = p.components();
    for (i, c) in comps.iter().enumerate() {
        c.check_letters(&[(Kind::X, g)]).with_context(|| format!("component {}", i + 1))?;
    }
    if float {
        let vals = comps.iter().map(|c| eval_poly_float(c, &x)).collect::<Result<Vec<_>, _>>()?;
        let fmt = |(re, im): (f64, f64)| if im == 0.0 { format!("{re}") } else { format!("{re}{im:+}i") };
        let text = vals
            .iter()
            .map(|m| {
                let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|&z| fmt(z)).collect()).collect();
                matrix_text(&rows)
            })
            .collect::<Vec<_>>()
            .join("\n");
        let json = json!(vals
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|&(re, im)| json!([re, im])).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        return Ok(Report::ok(text, json));
    }
    let y = eval_map(&p, &x)?;
    let text = y
        .matrices()
        .iter()
        .map(|m| {
            let rows: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.to_json_string()).collect()).collect();
            matrix_text(&rows)
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::ok(text, y.to_json()))
}

fn run_verify(p: &[String], q: &[String]) -> Result<Report> {
    let p = FreePolyMap::new(parse_components(p)?);
    let q = FreePolyMap::new(parse_components(q)?);
    if p.arity() != q.arity() {
        bail!("p has {} components but q has {}", p.arity(), q.arity());
    }
    let ok = verify_inverse(&p, &q);
    Ok(Report {
        status: if ok { Status::Success } else { Status::Negative },
        text: ok.to_string(),
        json: json!({"inverse": ok}),
    })
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Invert { map, cap } => run_invert(&parse_square(map)?, &cap.options(cli.seed)),
        Command::Jacobian { map } => run_jacobian(&parse_square(map)?),
        Command::AuxIterate { map, k, trunc } => run_aux_iterate(&parse_square(map)?, *k, *trunc),
        Command::SolveSystem { map, trunc } => run_solve_system(map, *trunc),
        Command::Derive { polys } => run_derive(polys),
        Command::Scion { map } => run_scion(&parse_square(map)?),
        Command::Hypojac { map } => run_hypojac(&parse_square(map)?),
        Command::CheckInjective { map, cap, method } => run_check(&parse_square(map)?, method, cap, cli.seed),
        Command::Eval { map, at, float } => run_eval(map, at, *float),
        Command::Verify { p, q } => run_verify(p, q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        serde_json::to_string_pretty(&report.json).expect("serializable")
    } else {
        report.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, body + "\n") {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{body}"),
    }
    ExitCode::from(report.status.code())
}
