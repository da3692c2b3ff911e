//! The `wkl` command line.
//!
//! Every output starts with a metadata block: `#`-prefixed lines in CSV, a
//! `meta` object in JSON. Exit codes: 0 on success, 2 on usage errors, 1 when
//! a computation fails (the error is printed to stderr as JSON).

use crate::cd_verifier::{sweep, Identity, SweepConfig};
use crate::error::Error;
use crate::finite_kernels::{corr, ModelParams, SymmetryClass};
use crate::geometry::{edge_points, omega, DropletGeometry};
use crate::limit_kernels::{limit_corr, LimitKernelSpec, Regime};
use crate::montecarlo::{sample_many, MatrixModel};
use crate::scaling_harness::{convergence_experiment, RegimeSchedule, ScalingSetup};
use crate::C64;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

/// Version of the CSV/JSON layouts written by this tool.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "wkl", version, about = "Correlation kernels of non-Hermitian Wishart ensembles")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, value_parser = parse_count)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample eigenvalues of X = X1 X2*.
    Sample(SampleArgs),
    /// Finite-N correlation functions on a grid.
    KernelEval(KernelEvalArgs),
    /// Limiting correlation functions on a grid.
    LimitEval(LimitEvalArgs),
    /// Rescaled finite-N correlations against their limits.
    LimitCompare(LimitCompareArgs),
    /// Randomized residual check of the differential identities.
    VerifyOde(VerifyOdeArgs),
    /// Droplet boundary and the Omega landscape.
    Droplet(DropletArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum What {
    Density,
    Corr2,
}

#[derive(Debug, Args, Serialize)]
pub struct Output {
    /// Output file (stdout if absent). Plot scripts are written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: SymmetryClass,
    #[arg(long, value_parser = parse_count)]
    pub n: usize,
    #[arg(long, value_parser = parse_count)]
    pub nu: usize,
    #[arg(long, value_parser = parse_real)]
    pub tau: f64,
    #[arg(long, value_parser = parse_count, default_value = "1")]
    pub trials: usize,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct KernelEvalArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: SymmetryClass,
    #[arg(long, value_parser = parse_count)]
    pub n: usize,
    #[arg(long, value_parser = parse_real)]
    pub nu: f64,
    #[arg(long, value_parser = parse_real)]
    pub tau: f64,
    /// Rectangle `XMIN:XMAX:YMIN:YMAX:COUNT` (COUNT points per side).
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = What::Density)]
    pub what: What,
    /// Second point for `--what corr2`, as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Option<C64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitEvalArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: SymmetryClass,
    #[arg(long, value_parser = parse_regime)]
    pub regime: Regime,
    /// Non-Hermiticity parameter (weak regimes).
    #[arg(long, value_parser = parse_real)]
    pub c: Option<f64>,
    /// Base point in (0, 4) (weak bulk).
    #[arg(long, value_parser = parse_real)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value_t = What::Density)]
    pub what: What,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: Option<C64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitCompareArgs {
    #[arg(long, value_parser = parse_class)]
    pub class: SymmetryClass,
    #[arg(long, value_parser = parse_regime)]
    pub regime: Regime,
    #[arg(long, value_parser = parse_real)]
    pub c: Option<f64>,
    /// Base point `re,im` (strong regimes; strong edge defaults to the right edge).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub p: Option<C64>,
    /// Fixed tau (strong regimes).
    #[arg(long, value_parser = parse_real)]
    pub tau: Option<f64>,
    #[arg(long, value_parser = parse_real, default_value = "1")]
    pub nu: f64,
    /// Test points `re,im;re,im;...`, each evaluated as a one-point function.
    #[arg(long, value_parser = parse_points, default_value = "0,0", allow_hyphen_values = true)]
    pub zeta_grid: Points,
    /// Increasing sizes `N1,N2,...`.
    #[arg(long, value_parser = parse_counts, default_value = "50,100,200,400")]
    pub n_list: Counts,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyOdeArgs {
    #[arg(long, value_parser = parse_identity)]
    pub which: Identity,
    #[arg(long, value_parser = parse_count, default_value = "100")]
    pub cases: usize,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    pub seed: u64,
    /// Exit with status 1 if any relative residual exceeds this.
    #[arg(long, value_parser = parse_real, default_value = "1e-9")]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DropletArgs {
    #[arg(long, value_parser = parse_real)]
    pub tau: f64,
    /// Points per side of the Omega grid (also the boundary resolution).
    #[arg(long, value_parser = parse_count, default_value = "100")]
    pub grid: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Points(pub Vec<C64>);

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Counts(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<C64> {
        let lin = |(a, b): (f64, f64), k: usize| {
            if self.count == 1 {
                0.5 * (a + b)
            } else {
                a + (b - a) * k as f64 / (self.count - 1) as f64
            }
        };
        (0..self.count).flat_map(|j| (0..self.count).map(move |i| C64::new(lin(self.x, i), lin(self.y, j)))).collect()
    }
}

// ---------------------------------------------------------------------------
// flag parsers

fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// Nonnegative integer, also written as `2e2` or `1.5e3`.
fn parse_count(s: &str) -> Result<usize, String> {
    let v = parse_real(s)?;
    if v < 0.0 || v.fract() != 0.0 || v > 1e15 {
        return Err(format!("'{s}' is not a nonnegative integer"));
    }
    Ok(v as usize)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    s.trim().parse::<u64>().or_else(|_| parse_count(s).map(|v| v as u64))
}

fn parse_counts(s: &str) -> Result<Counts, String> {
    s.split(',').map(parse_count).collect::<Result<_, _>>().map(Counts)
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(C64::new(parse_real(re)?, 0.0)),
        [re, im] => Ok(C64::new(parse_real(re)?, parse_real(im)?)),
        _ => Err(format!("'{s}' is not a complex number 're,im'")),
    }
}

fn parse_points(s: &str) -> Result<Points, String> {
    s.split(';').map(parse_complex).collect::<Result<_, _>>().map(Points)
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let v: Vec<&str> = s.split(':').collect();
    if v.len() != 5 {
        return Err(format!("grid '{s}' must be XMIN:XMAX:YMIN:YMAX:COUNT"));
    }
    let count = parse_count(v[4])?;
    if count == 0 {
        return Err("grid COUNT must be positive".into());
    }
    Ok(Grid { x: (parse_real(v[0])?, parse_real(v[1])?), y: (parse_real(v[2])?, parse_real(v[3])?), count })
}

fn parse_class(s: &str) -> Result<SymmetryClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_regime(s: &str) -> Result<Regime, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

// ---------------------------------------------------------------------------
// dispatch

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = std::result::Result<(), Failure>;

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn dispatch(argv: Vec<OsString>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let env_seed = std::env::var("WKL_SEED").ok();
    let result = match build_pool(cli.threads) {
        Ok(pool) => pool.install(|| run(cli.command, env_seed.as_deref())),
        Err(e) => Err(Failure::Usage(e)),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("{}", json!({ "error": error_kind(&e), "message": e.to_string() }));
            1
        }
        Err(Failure::Io(e)) => {
            eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
            1
        }
    }
}

fn build_pool(threads: Option<usize>) -> std::result::Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err("--threads must be positive".into());
        }
        b = b.num_threads(t);
    }
    b.build().map_err(|e| e.to_string())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::Singular(_) => "singular",
        Error::BranchCut(_) => "branch_cut",
        Error::NotOnBoundary(_) => "not_on_boundary",
        Error::Asymmetric(_) => "asymmetric",
        Error::Quadrature(_) => "quadrature",
        Error::Truncation(_) => "truncation",
        Error::NoConvergence(_) => "no_convergence",
        Error::Invalid(_) => "invalid",
    }
}

fn seed_override(seed: u64, env: Option<&str>) -> std::result::Result<u64, Failure> {
    match env {
        None => Ok(seed),
        Some(s) => parse_seed(s).map_err(|e| Failure::Usage(format!("WKL_SEED: {e}"))),
    }
}

fn run(cmd: Command, env_seed: Option<&str>) -> Run {
    match cmd {
        Command::Sample(mut a) => {
            a.seed = seed_override(a.seed, env_seed)?;
            cmd_sample(&a)
        }
        Command::KernelEval(a) => cmd_kernel_eval(&a),
        Command::LimitEval(a) => cmd_limit_eval(&a),
        Command::LimitCompare(a) => cmd_limit_compare(&a),
        Command::VerifyOde(mut a) => {
            a.seed = seed_override(a.seed, env_seed)?;
            cmd_verify_ode(&a)
        }
        Command::Droplet(a) => cmd_droplet(&a),
    }
}

// ---------------------------------------------------------------------------
// output helpers

fn meta(schema: &str, params: &impl Serialize) -> Value {
    json!({
        "tool": "wkl",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": schema,
        "schema_version": SCHEMA_VERSION,
        "params": params,
    })
}

fn csv_header(meta: &Value, columns: &[&str]) -> String {
    let mut s = String::new();
    for (k, v) in meta.as_object().expect("meta is an object") {
        let _ = writeln!(s, "# {k}: {v}");
    }
    s.push_str(&columns.join(","));
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes())?;
            o.flush()
        }
    }
}

/// Write a gnuplot script next to `out` (only when writing to a file).
fn emit_plot(out: Option<&Path>, body: impl FnOnce(&str) -> String) -> std::io::Result<()> {
    if let Some(p) = out {
        let data = p.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
        std::fs::write(p.with_extension("gp"), body(&data))?;
    }
    Ok(())
}

fn json_doc(meta: Value, rows: Value) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows })).expect("serializable");
    s.push('\n');
    s
}

/// Numbers in CSV: shortest round-trip representation.
fn num(x: f64) -> String {
    format!("{x:?}")
}

// ---------------------------------------------------------------------------
// subcommands

fn cmd_sample(a: &SampleArgs) -> Run {
    let model = MatrixModel::new(a.class, a.n, a.nu, a.tau)?;
    let samples = sample_many(&model, a.seed, a.trials)?;
    let m = meta("sample", a);
    let out = a.output.out.as_deref();
    let text = match a.output.format {
        Format::Csv => {
            let mut s = csv_header(&m, &["trial", "re", "im"]);
            for smp in &samples {
                for z in smp.spectrum() {
                    let _ = writeln!(s, "{},{},{}", smp.trial, num(z.re), num(z.im));
                }
            }
            s
        }
        Format::Json => json_doc(m, serde_json::to_value(&samples).expect("serializable")),
    };
    emit(out, &text)?;
    if a.output.format == Format::Csv {
        let g = DropletGeometry::new(a.tau.min(1.0 - 1e-12))?;
        emit_plot(out, |data| {
            format!(
                "set datafile separator ','\nset datafile columnheaders\nset size ratio -1\nset parametric\nset trange [0:2*pi]\nset key off\n\
                 plot '{data}' using 2:3 with dots, {c} + {ax}*cos(t), {ay}*sin(t) lw 2\n",
                c = g.center,
                ax = g.semi_axis_x,
                ay = g.semi_axis_y
            )
        })?;
    }
    Ok(())
}

fn point_value(r: crate::Result<f64>) -> crate::Result<f64> {
    match r {
        Err(Error::Singular(_)) => Ok(f64::NAN),
        other => other,
    }
}

fn grid_rows(grid: &Grid, what: What, w: Option<C64>, f: impl Fn(&[C64]) -> crate::Result<f64> + Sync) -> std::result::Result<Vec<(C64, f64)>, Failure> {
    use rayon::prelude::*;
    let w = match (what, w) {
        (What::Corr2, None) => return Err(Failure::Usage("--what corr2 needs --w".into())),
        (_, w) => w,
    };
    let pts = grid.points();
    let vals = pts
        .par_iter()
        .map(|&z| match what {
            What::Density => point_value(f(&[z])),
            What::Corr2 => point_value(f(&[z, w.expect("checked")])),
        })
        .collect::<crate::Result<Vec<f64>>>()?;
    Ok(pts.into_iter().zip(vals).collect())
}

fn write_grid(out: &Output, m: Value, rows: &[(C64, f64)]) -> Run {
    let text = match out.format {
        Format::Csv => {
            let mut s = csv_header(&m, &["re", "im", "value"]);
            for (z, v) in rows {
                let _ = writeln!(s, "{},{},{}", num(z.re), num(z.im), num(*v));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|(z, v)| json!({ "re": z.re, "im": z.im, "value": v })).collect();
            json_doc(m, Value::Array(rows))
        }
    };
    emit(out.out.as_deref(), &text)?;
    Ok(())
}

fn cmd_kernel_eval(a: &KernelEvalArgs) -> Run {
    let params = ModelParams::new(a.class, a.n, a.nu, a.tau)?;
    let rows = grid_rows(&a.grid, a.what, a.w, |pts| corr(pts, &params))?;
    write_grid(&a.output, meta("kernel-eval", a), &rows)
}

fn limit_spec(class: SymmetryClass, regime: Regime, c: Option<f64>, p: Option<f64>) -> std::result::Result<LimitKernelSpec, Failure> {
    let need_c = || c.ok_or_else(|| Failure::Usage(format!("--c is required for the {regime:?} regime")));
    Ok(match regime {
        Regime::StrongBulk | Regime::StrongEdge => LimitKernelSpec::strong(class, regime)?,
        Regime::WeakBulk => {
            let p = p.ok_or_else(|| Failure::Usage("--p is required for the weak bulk".into()))?;
            LimitKernelSpec::weak_bulk(class, need_c()?, p)?
        }
        Regime::WeakEdge => LimitKernelSpec::weak_edge(class, need_c()?)?,
    })
}

fn cmd_limit_eval(a: &LimitEvalArgs) -> Run {
    let spec = limit_spec(a.class, a.regime, a.c, a.p)?;
    let rows = grid_rows(&a.grid, a.what, a.w, |pts| limit_corr(pts, &spec))?;
    write_grid(&a.output, meta("limit-eval", a), &rows)
}

fn cmd_limit_compare(a: &LimitCompareArgs) -> Run {
    let need_tau = || a.tau.ok_or_else(|| Failure::Usage(format!("--tau is required for the {:?} regime", a.regime)));
    let need_c = || a.c.ok_or_else(|| Failure::Usage(format!("--c is required for the {:?} regime", a.regime)));
    let zero = C64::new(0.0, 0.0);
    let setup = match a.regime {
        Regime::StrongBulk => {
            let p = a.p.ok_or_else(|| Failure::Usage("--p is required for the strong bulk".into()))?;
            ScalingSetup::new(a.class, RegimeSchedule::Strong { tau: need_tau()? }, p, a.nu)
        }
        Regime::StrongEdge => {
            let tau = need_tau()?;
            let p = a.p.unwrap_or(C64::new(edge_points(tau).1, 0.0));
            ScalingSetup::new(a.class, RegimeSchedule::Strong { tau }, p, a.nu)
        }
        Regime::WeakBulk => {
            let p = a.p.ok_or_else(|| Failure::Usage("--p is required for the weak bulk".into()))?;
            ScalingSetup::new(a.class, RegimeSchedule::WeakBulk { c: need_c()? }, p, a.nu)
        }
        Regime::WeakEdge => ScalingSetup::new(a.class, RegimeSchedule::WeakEdge { c: need_c()? }, zero, a.nu),
    };
    if setup.regime()? != a.regime {
        return Err(Failure::Usage(format!("base point {} is not a {:?} point", setup.p, a.regime)));
    }
    let sets: Vec<Vec<C64>> = a.zeta_grid.0.iter().map(|&z| vec![z]).collect();
    let recs = convergence_experiment(&setup, &sets, &a.n_list.0)?;
    let m = meta("limit-compare", a);
    let out = a.output.out.as_deref();
    let text = match a.output.format {
        Format::Csv => {
            let cols = ["n", "tau", "p_re", "p_im", "zeta_re", "zeta_im", "finite_value", "limit_value", "abs_error", "rel_error"];
            let mut s = csv_header(&m, &cols);
            for r in &recs {
                let z = r.zetas[0];
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    num(r.tau),
                    num(r.p.re),
                    num(r.p.im),
                    num(z.re),
                    num(z.im),
                    num(r.finite_value),
                    num(r.limit_value),
                    num(r.abs_error),
                    num(r.rel_error)
                );
            }
            s
        }
        Format::Json => json_doc(m, serde_json::to_value(&recs).expect("serializable")),
    };
    emit(out, &text)?;
    if a.output.format == Format::Csv {
        let k = a.zeta_grid.0.len();
        emit_plot(out, |data| {
            let mut s = String::from("set datafile separator ','\nset datafile columnheaders\nset logscale xy\nset xlabel 'N'\nset ylabel 'abs error'\nplot ");
            let series: Vec<String> = (0..k)
                .map(|j| format!("'{data}' every {k}::{j} using 1:9 with linespoints title 'zeta {j}'"))
                .collect();
            s.push_str(&series.join(", "));
            s.push('\n');
            s
        })?;
    }
    Ok(())
}

fn cmd_verify_ode(a: &VerifyOdeArgs) -> Run {
    let reports = sweep(&SweepConfig::new(a.which, a.cases, a.seed))?;
    let worst = reports.iter().map(|r| r.rel_residual).fold(0.0, f64::max);
    let text = json_doc(meta("verify-ode", a), serde_json::to_value(&reports).expect("serializable"));
    emit(a.out.as_deref(), &text)?;
    if worst > a.tol {
        return Err(Failure::Numeric(Error::Invalid(format!("max relative residual {worst:e} exceeds {:e}", a.tol))));
    }
    Ok(())
}

fn cmd_droplet(a: &DropletArgs) -> Run {
    let g = DropletGeometry::new(a.tau)?;
    let n = a.grid.max(2);
    let mut rows: Vec<(&str, f64, f64, f64)> = Vec::new();
    for k in 0..=n {
        let z = g.boundary_point(2.0 * std::f64::consts::PI * k as f64 / n as f64);
        rows.push(("boundary", z.re, z.im, omega(z, a.tau)?));
    }
    let (x0, x1) = (g.center - 1.25 * g.semi_axis_x, g.center + 1.25 * g.semi_axis_x);
    let (y0, y1) = (-1.25 * g.semi_axis_x, 1.25 * g.semi_axis_x);
    for j in 0..n {
        for i in 0..n {
            let x = x0 + (x1 - x0) * i as f64 / (n - 1) as f64;
            let y = y0 + (y1 - y0) * j as f64 / (n - 1) as f64;
            let z = C64::new(x, y);
            let v = match omega(z, a.tau) {
                Err(Error::Singular(_)) => f64::NAN,
                r => r?,
            };
            rows.push(("grid", x, y, v));
        }
    }
    let m = meta("droplet", a);
    let out = a.output.out.as_deref();
    let text = match a.output.format {
        Format::Csv => {
            let mut s = csv_header(&m, &["kind", "x", "y", "omega"]);
            for (kind, x, y, v) in &rows {
                let _ = writeln!(s, "{kind},{},{},{}", num(*x), num(*y), num(*v));
            }
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|(k, x, y, v)| json!({ "kind": k, "x": x, "y": y, "omega": v })).collect();
            json_doc(m, Value::Array(rows))
        }
    };
    emit(out, &text)?;
    if a.output.format == Format::Csv {
        emit_plot(out, |data| {
            format!(
                "set datafile separator ','\nset datafile columnheaders\nset size ratio -1\nset key off\n\
                 plot '{data}' using (stringcolumn(1) eq 'grid' ? $2 : 1/0):3:4 with image, \\\n     \
                 '{data}' using (stringcolumn(1) eq 'boundary' ? $2 : 1/0):3 with lines lw 2 lc 'black'\n"
            )
        })?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsers() {
        assert_eq!(parse_count("2e2").unwrap(), 200);
        assert!(parse_count("2.5").is_err());
        assert_eq!(parse_real("1e-3").unwrap(), 1e-3);
        assert_eq!(parse_complex("0.5,-1e-1").unwrap(), C64::new(0.5, -0.1));
        assert_eq!(parse_points("0,0;1,2").unwrap().0.len(), 2);
        let g = parse_grid("-1:1:0:2:3").unwrap();
        assert_eq!(g.points().len(), 9);
        assert_eq!(g.points()[4], C64::new(0.0, 1.0));
        assert!(parse_grid("0:1:0:1").is_err());
        assert_eq!(parse_seed("18446744073709551615").unwrap(), u64::MAX);
    }

    #[test]
    fn usage_errors_exit_two() {
        let argv = |s: &str| s.split_whitespace().map(OsString::from).collect::<Vec<_>>();
        assert_eq!(dispatch(argv("wkl droplet")), 2);
        assert_eq!(dispatch(argv("wkl nonsense")), 2);
        assert_eq!(dispatch(argv("wkl sample --class complex --n x --nu 1 --tau 0.5")), 2);
    }
}
