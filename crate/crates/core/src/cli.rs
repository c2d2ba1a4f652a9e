//! Command-line surface of the `stolarsky` binary.
//!
//! Every subcommand prints to `out` in one of three formats: `plain` (the
//! default), `csv` with a header row, or `json` as an object with keys
//! `command`, `inputs`, `results`, `diagnostics`. Diagnostics and errors go
//! to `err`. Numbers are printed in shortest round-trip form.
//!
//! Exit codes: 0 success; 1 a check failed; 2 bad input (domain errors,
//! expression syntax, malformed CSV); 3 no root / target out of range;
//! 4 degenerate abscissa problem; 5 precision floor before k = 10;
//! 6 parameter outside the proof checks.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::abscissa::{abscissa_report, mean_value_abscissas, AbscissaError, DEFAULT_GRID, DEFAULT_TOL};
use crate::expr::{parse, DifferentiableFn};
use crate::means::{invert_alpha_with, stolarsky_mean, Alpha, AlphaSearch, Interval, MeanError};
use crate::proofcheck::{run_proofcheck, ProofError, Thresholds, DEFAULT_KMAX};
use crate::solutions::SolutionFamily;
use crate::sweep::{verify_sweep, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "stolarsky", version, about = "Stolarsky means, mean-value abscissas and proof checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate S_alpha(a, b).
    Mean(MeanArgs),
    /// Find every c in (a, b) with f'(c) equal to the secant slope.
    Abscissa(AbscissaArgs),
    /// Seeded sweep of FDE and ODE residuals over random solution families.
    Verify(VerifyArgs),
    /// Implicit-function and asymptotic checks for one alpha.
    Proofcheck(ProofcheckArgs),
    /// Recover alpha from rows "a,b,c" with c = S_alpha(a, b).
    FitAlpha(FitAlphaArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MeanArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long = "a")]
    pub a: f64,
    #[arg(long = "b")]
    pub b: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct AbscissaArgs {
    /// Expression in x, e.g. "1/x + 3*x".
    #[arg(short = 'f', long = "function")]
    pub function: String,
    #[arg(long = "a")]
    pub a: f64,
    #[arg(long = "b")]
    pub b: f64,
    /// Compare the abscissas with S_alpha(a, b).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(long, default_value = "-3,-1,0,0.5,1,2,3", allow_hyphen_values = true)]
    pub alpha_grid: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProofcheckArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    /// Coefficients "c1,c2,c3" of the solution family.
    #[arg(long, default_value = "1,1,1", allow_hyphen_values = true)]
    pub family: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FitAlphaArgs {
    /// CSV file of "a,b,c" rows; '#' starts a comment.
    #[arg(long)]
    pub input: std::path::PathBuf,
    /// Relative tolerance on |S_alpha(a, b) - c| / c.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Shortest decimal that round-trips, switching to exponent form outside
/// `[1e-5, 1e16)`.
pub fn num(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn csv_line(cells: &[String]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(cells).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
}

struct Output {
    command: &'static str,
    inputs: Value,
    results: Value,
    diagnostics: Vec<String>,
    plain: String,
    csv: String,
}

impl Output {
    fn new(command: &'static str, inputs: Value) -> Self {
        Output { command, inputs, results: Value::Null, diagnostics: Vec::new(), plain: String::new(), csv: String::new() }
    }

    fn emit(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Plain => write!(out, "{}", self.plain),
            Format::Csv => write!(out, "{}", self.csv),
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "inputs": self.inputs,
                    "results": self.results,
                    "diagnostics": self.diagnostics,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serialisable"))
            }
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable")
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return e.exit_code();
        }
    };
    let (format, result) = match &cli.command {
        Command::Mean(a) => (a.format, cmd_mean(a)),
        Command::Abscissa(a) => (a.format, cmd_abscissa(a)),
        Command::Verify(a) => (a.format, cmd_verify(a)),
        Command::Proofcheck(a) => (a.format, cmd_proofcheck(a)),
        Command::FitAlpha(a) => (a.format, cmd_fit_alpha(a)),
    };
    match result {
        Ok((output, code)) => {
            for d in &output.diagnostics {
                let _ = writeln!(err, "{d}");
            }
            if output.emit(format, out).is_err() {
                return 1;
            }
            code
        }
        Err((msg, code)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

type CmdResult = Result<(Output, i32), (String, i32)>;

fn bad<E: std::fmt::Display>(e: E) -> (String, i32) {
    (e.to_string(), 2)
}

fn cmd_mean(args: &MeanArgs) -> CmdResult {
    let alpha = Alpha::new(args.alpha).map_err(bad)?;
    let iv = Interval::new(args.a, args.b).map_err(bad)?;
    let m = stolarsky_mean(alpha, &iv).map_err(bad)?;
    let mut o = Output::new("mean", json!({ "alpha": args.alpha, "a": args.a, "b": args.b }));
    o.results = json!({ "mean": m, "branch": alpha.branch() });
    o.plain = format!("{}\n", num(m));
    o.csv = csv_line(&["alpha".into(), "a".into(), "b".into(), "mean".into()])
        + &csv_line(&[num(args.alpha), num(args.a), num(args.b), num(m)]);
    Ok((o, 0))
}

fn cmd_abscissa(args: &AbscissaArgs) -> CmdResult {
    let expr = parse(&args.function).map_err(|e| (format!("{e} in {:?}", args.function), 2))?;
    let f = DifferentiableFn::from_expr(expr.clone());
    let iv = Interval::new(args.a, args.b).map_err(bad)?;
    let mut o = Output::new(
        "abscissa",
        json!({ "function": args.function, "parsed": expr.to_string(), "a": args.a, "b": args.b,
                "alpha": args.alpha, "grid": args.grid, "tol": args.tol }),
    );
    let code_of = |e: &AbscissaError| match e {
        AbscissaError::NoRootFound { .. } => 3,
        AbscissaError::Degenerate { .. } => 4,
        _ => 2,
    };
    match args.alpha {
        Some(al) => {
            let alpha = Alpha::new(al).map_err(bad)?;
            let rep = abscissa_report(&f, alpha, &iv, args.grid, args.tol).map_err(|e| (e.to_string(), code_of(&e)))?;
            o.results = to_value(&rep);
            let list: Vec<String> = rep.abscissas.iter().map(|c| num(*c)).collect();
            o.plain = format!(
                "slope {}\nabscissas {}\nmean {}\nmin_distance {}\nmatches {}\ndegenerate {}\n",
                num(rep.slope),
                list.join(" "),
                num(rep.mean),
                num(rep.min_distance),
                rep.matches,
                rep.degenerate
            );
            o.csv = csv_line(&["abscissa", "slope", "mean", "distance", "matches", "degenerate"].map(String::from));
            for c in &rep.abscissas {
                o.csv += &csv_line(&[num(*c), num(rep.slope), num(rep.mean), num((c - rep.mean).abs()), rep.matches.to_string(), "false".into()]);
            }
            if rep.degenerate {
                o.csv += &csv_line(&[String::new(), num(rep.slope), num(rep.mean), "0".into(), "true".into(), "true".into()]);
                o.diagnostics.push("degenerate: f' equals the secant slope across the interval".into());
                return Ok((o, 4));
            }
            Ok((o, 0))
        }
        None => {
            let slope = crate::abscissa::secant_slope(&f, &iv).map_err(bad)?;
            let roots = mean_value_abscissas(&f, &iv, args.grid, args.tol).map_err(|e| (e.to_string(), code_of(&e)))?;
            o.results = json!({ "slope": slope, "abscissas": roots });
            let list: Vec<String> = roots.iter().map(|c| num(*c)).collect();
            o.plain = format!("slope {}\nabscissas {}\n", num(slope), list.join(" "));
            o.csv = csv_line(&["abscissa".into(), "slope".into()]);
            for c in &roots {
                o.csv += &csv_line(&[num(*c), num(slope)]);
            }
            Ok((o, 0))
        }
    }
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, (String, i32)> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| (format!("{what}: cannot parse {p:?} as a number"), 2)))
        .collect()
}

fn cmd_verify(args: &VerifyArgs) -> CmdResult {
    let grid = parse_list(&args.alpha_grid, "--alpha-grid")?;
    let cfg = SweepConfig { alpha_grid: grid, trials: args.trials, seed: args.seed, tol: args.tol, ..SweepConfig::default() };
    let rep = verify_sweep(&cfg).map_err(bad)?;
    let mut o = Output::new(
        "verify",
        json!({ "alpha_grid": cfg.alpha_grid, "trials": cfg.trials, "seed": cfg.seed, "tol": cfg.tol,
                "generator": "ChaCha8 seed_from_u64" }),
    );
    o.results = json!({ "passed": rep.passed(), "rows": rep.rows, "violations": rep.violations.len() });
    let header = ["alpha", "trials", "max_fde_rel", "max_ode_rel", "status"].map(String::from);
    o.csv = csv_line(&header);
    o.plain = format!("{:>8} {:>7} {:>24} {:>24} {}\n", "alpha", "trials", "max_fde_rel", "max_ode_rel", "status");
    for r in &rep.rows {
        let status = if r.passed { "ok" } else { "FAIL" };
        o.plain += &format!("{:>8} {:>7} {:>24} {:>24} {}\n", num(r.alpha), r.trials, num(r.max_fde_rel), num(r.max_ode_rel), status);
        o.csv += &csv_line(&[num(r.alpha), r.trials.to_string(), num(r.max_fde_rel), num(r.max_ode_rel), status.into()]);
    }
    for w in rep.violations.iter().take(10) {
        o.diagnostics.push(format!(
            "violation: alpha={} c=[{}, {}, {}] a={} b={} t={} fde_rel={} ode_rel={}",
            num(w.alpha),
            num(w.c[0]),
            num(w.c[1]),
            num(w.c[2]),
            num(w.a),
            num(w.b),
            num(w.t),
            num(w.fde_rel),
            num(w.ode_rel)
        ));
    }
    if rep.violations.len() > 10 {
        o.diagnostics.push(format!("... {} violations in total", rep.violations.len()));
    }
    let code = if rep.passed() { 0 } else { 1 };
    Ok((o, code))
}

fn cmd_proofcheck(args: &ProofcheckArgs) -> CmdResult {
    let c = parse_list(&args.family, "--family")?;
    if c.len() != 3 {
        return Err((format!("--family needs three coefficients, got {}", c.len()), 2));
    }
    let alpha = Alpha::new(args.alpha).map_err(bad)?;
    let f = DifferentiableFn::from(SolutionFamily::new(alpha, c[0], c[1], c[2]));
    let s = run_proofcheck(alpha, &f, args.t, args.kmax, &Thresholds::default()).map_err(|e| {
        let code = match e {
            ProofError::Branch { .. } => 6,
            ProofError::PrecisionFloor { .. } => 5,
            ProofError::Invalid(_) => 2,
            _ => 1,
        };
        (e.to_string(), code)
    })?;
    let mut o = Output::new("proofcheck", json!({ "alpha": args.alpha, "t": args.t, "kmax": args.kmax, "family": c }));
    o.results = to_value(&s);
    o.diagnostics = s.violations.clone();

    let cv = &s.convergence;
    let mut p = String::new();
    p += &format!("lemma seed: x0 = {}, h0 = y0 = {}, relative residual {}\n", num(s.lemma.x0), num(s.lemma.h0), num(s.seed_residual));
    for (name, checks) in [("phi", &s.phi_checks), ("g", &s.g_checks)] {
        p += &format!("{name}: {:>22} {:>22} {:>22} {:>22} {:>10}\n", "at", "value", "residual", "derivative", "fd_order");
        for ck in checks {
            p += &format!(
                "{:width$}  {:>22} {:>22} {:>22} {:>22} {:>10.3}\n",
                "",
                num(ck.at),
                num(ck.value),
                num(ck.residual),
                num(ck.derivative),
                ck.fd.order,
                width = name.len()
            );
        }
    }
    p += &format!(
        "leading terms: R0 = {}, S0 = {}, T0 = {}, T0/S0 = {}\n",
        num(cv.leading.r0),
        num(cv.leading.s0),
        num(cv.leading.t0),
        num(cv.t_over_s_limit)
    );
    p += &format!("{:>3} {:>24} {:>24} {:>24} {:>12} {:>12}\n", "k", "R - R0", "S - S0", "T - T0", "identity", "ode_k");
    for r in &cv.rows {
        p += &format!(
            "{:>3} {:>24} {:>24} {:>24} {:>12.3e} {:>12.3e}\n",
            r.k,
            num(r.d_r),
            num(r.d_s),
            num(r.d_t),
            r.identity_residual,
            r.ode_estimate
        );
    }
    p += &format!(
        "orders: R {:.3}, S {:.3}, T {:.3}; decreasing through k = {}\n",
        cv.order_r, cv.order_s, cv.order_t, cv.floor_k
    );
    p += &format!("limiting ODE residual {} (direct {})\n", num(cv.ode_limit), num(cv.ode_direct));
    p += &format!("status {}\n", if s.passed() { "ok" } else { "FAIL" });
    o.plain = p;

    let header = [
        "k", "r", "R", "S", "T", "dR", "dS", "dT", "T_over_S", "x0_minus_t", "lhs", "rhs", "identity_residual",
        "chain_residual", "ode_estimate",
    ]
    .map(String::from);
    o.csv = csv_line(&header);
    for r in &cv.rows {
        let q = &r.point;
        o.csv += &csv_line(&[
            r.k.to_string(),
            num(r.r),
            num(q.big_r),
            num(q.big_s),
            num(q.big_t),
            num(r.d_r),
            num(r.d_s),
            num(r.d_t),
            num(r.t_over_s),
            num(r.x0_minus_t),
            num(r.lhs),
            num(r.rhs),
            num(r.identity_residual),
            num(r.chain_residual),
            num(r.ode_estimate),
        ]);
    }
    let code = if s.passed() { 0 } else { 1 };
    Ok((o, code))
}

#[derive(Debug, Clone, Copy, Serialize)]
struct FitRow {
    row: u64,
    a: f64,
    b: f64,
    c: f64,
    alpha: f64,
}

fn cmd_fit_alpha(args: &FitAlphaArgs) -> CmdResult {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_path(&args.input)
        .map_err(|e| (format!("cannot read {}: {e}", args.input.display()), 2))?;
    let mut triples = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| (format!("malformed CSV: {e}"), 2))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        if rec.len() != 3 {
            return Err((format!("row {line}: expected 3 fields a,b,c, found {}", rec.len()), 2));
        }
        let mut v = [0.0; 3];
        for (slot, field) in v.iter_mut().zip(rec.iter()) {
            *slot = field.parse().map_err(|_| (format!("row {line}: cannot parse {field:?} as a number"), 2))?;
        }
        triples.push((line, v));
    }
    if triples.is_empty() {
        return Err((format!("{} contains no rows", args.input.display()), 2));
    }
    let search = AlphaSearch { rel_tol: args.tol, ..AlphaSearch::default() };
    let mut rows = Vec::with_capacity(triples.len());
    for (line, [a, b, c]) in triples {
        let iv = Interval::new(a, b).map_err(|e| (format!("row {line}: {e}"), 2))?;
        let alpha = invert_alpha_with(&iv, c, &search).map_err(|e| {
            let code = match e {
                MeanError::Domain(_) => 2,
                _ => 3,
            };
            (format!("row {line}: {e}"), code)
        })?;
        rows.push(FitRow { row: line, a, b, c, alpha: alpha.value() });
    }
    let estimates: Vec<f64> = rows.iter().map(|r| r.alpha).collect();
    let median = crate::convergence::median(&estimates);
    let mut o = Output::new("fit-alpha", json!({ "input": args.input.display().to_string(), "tol": args.tol }));
    o.results = json!({ "rows": rows, "median": median });
    o.csv = csv_line(&["row", "a", "b", "c", "alpha"].map(String::from));
    o.plain = String::new();
    for r in &rows {
        o.plain += &format!("row {} alpha {}\n", r.row, num(r.alpha));
        o.csv += &csv_line(&[r.row.to_string(), num(r.a), num(r.b), num(r.c), num(r.alpha)]);
    }
    o.plain += &format!("median {}\n", num(median));
    o.csv += &csv_line(&["median".into(), String::new(), String::new(), String::new(), num(median)]);
    Ok((o, 0))
}
