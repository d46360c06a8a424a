//! Command-line front end. `main` is a thin wrapper around [`main_with_args`].
//!
//! Exit codes: 0 success, 1 computation error, 2 configuration error. Errors
//! are written to stderr as `{"error":{"code":…,"kind":…,"message":…}}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use crate::expr::Expr;
use crate::glue::circle_gluing_check;
use crate::index_set::{
    heat_trace_bounds, parse_rational, pushforward_triple, resolvent_power_bounds, FaceBounds, IndexSet, IndexTriple,
};
use crate::reg::{
    change_of_variable, change_of_variable_coeffs, regularized_integral, Endpoint, ExpTerm, Expansion, PhgSample,
    RegOptions,
};
use crate::spectra::{Geometry, SpectralModel};
use crate::verify;
use crate::zeta::{log_torsion, zeta_continue};

/// Environment variable with the worker thread count.
pub const THREADS_ENV: &str = "PHI_TORSION_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "phi-torsion",
    version,
    about = "Regularized integrals, index sets, spectral zeta functions and torsion on model geometries"
)]
pub struct Cli {
    /// Geometry descriptor as JSON, or @path to a JSON file.
    #[arg(long, global = true)]
    pub geometry: Option<String>,
    /// Form degree.
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Largest acceptable error estimate (the `result` tolerance).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Further tolerances as KEY=VALUE with KEY in result, agreement, quadrature.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    pub tol: Vec<String>,
    /// Output file, written atomically; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Subcommand, PartialEq)]
pub enum Command {
    /// Per-degree ζ(0), ζ′(0) and log T.
    Torsion,
    /// ζ of one degree at s = 0 and at the requested points.
    Zeta {
        /// Comma-separated evaluation points.
        #[arg(long = "at", value_delimiter = ',', allow_hyphen_values = true)]
        at: Vec<f64>,
    },
    /// Heat trace, short-time partial sum and residual on a t grid.
    HeatTrace {
        /// Comma-separated grid; overrides the geometric grid. An empty string gives no rows.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 1.0 / 1024.0)]
        t_min: f64,
        #[arg(long, default_value_t = 16.0)]
        t_max: f64,
        #[arg(long, default_value_t = 15)]
        points: usize,
    },
    /// Regularized integral over (0, ∞) of an expression in x.
    Regint {
        expr: String,
        /// Expansion at 0 as `c:α[:k],…`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        zero: String,
        #[arg(long, allow_hyphen_values = true)]
        zero_order: String,
        /// Expansion at ∞ as `c:α[:k],…`.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        inf: String,
        #[arg(long, allow_hyphen_values = true)]
        inf_order: String,
        /// Rescaling λ (an expression such as `e` or `1/4`).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        split: f64,
    },
    /// Index-set algebra in the text format `{(α,k), …}; cutoff=C`.
    Indexset {
        #[command(subcommand)]
        op: IndexOp,
    },
    /// Circle gluing check for S¹ of length 2L cut into two intervals of length L.
    Glue {
        #[arg(long, default_value_t = PI)]
        length: f64,
    },
    /// Run the acceptance checks.
    Suite {
        /// Restrict to these criterion numbers.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

#[derive(Debug, Clone, Subcommand, PartialEq)]
pub enum IndexOp {
    Normalize {
        set: String,
    },
    Eunion {
        a: String,
        b: String,
    },
    Sum {
        a: String,
        b: String,
    },
    Shift {
        set: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    Check {
        set: String,
        #[arg(allow_hyphen_values = true)]
        bound: String,
        #[arg(long)]
        strict: bool,
    },
    /// Six sets: left (10) (11) (01), then right (10) (11) (01).
    Pushforward {
        #[arg(num_args = 6)]
        sets: Vec<String>,
    },
    ResolventBounds {
        sigma: i64,
        b: i64,
    },
    HeatBounds {
        nu: i64,
        b: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Largest error estimate accepted in a result.
    pub result: f64,
    /// Dual-path agreement for rescaled regularized integrals.
    pub agreement: f64,
    /// Quadrature target for regularized integrals.
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            result: 1e-8,
            agreement: 1e-8,
            quadrature: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), CliError> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(CliError::Config(format!(
                "tolerance {key} must be positive, got {value}"
            )));
        }
        match key {
            "result" => self.result = value,
            "agreement" => self.agreement = value,
            "quadrature" => self.quadrature = value,
            _ => return Err(CliError::Config(format!("unknown tolerance key '{key}'"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub geometry: Option<Geometry>,
    pub degree: Option<usize>,
    pub tolerances: Tolerances,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub verbosity: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Compute(_) => 1,
            CliError::Config(_) => 2,
        }
    }

    pub fn to_json(&self) -> String {
        let kind = match self {
            CliError::Compute(_) => "computation",
            CliError::Config(_) => "config",
        };
        to_json_string(&json!({"error": {"code": self.code(), "kind": kind, "message": self.to_string()}}))
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

pub fn parse_geometry(arg: &str) -> Result<Geometry, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    let g = Geometry::from_json(&text).map_err(config)?;
    SpectralModel::build(&g).map_err(config)?;
    Ok(g)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let mut tolerances = Tolerances::default();
        if let Some(t) = cli.tolerance {
            tolerances.set("result", t)?;
        }
        for kv in &cli.tol {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("expected KEY=VALUE, got '{kv}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("bad tolerance value '{v}'")))?;
            tolerances.set(k.trim(), v)?;
        }
        let geometry = cli.geometry.as_deref().map(parse_geometry).transpose()?;
        let cfg = RunConfig {
            command: cli.command,
            geometry,
            degree: cli.degree,
            tolerances,
            format: cli.format,
            output: cli.output,
            verbosity: cli.verbose,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let needs_geometry = matches!(
            self.command,
            Command::Torsion | Command::Zeta { .. } | Command::HeatTrace { .. }
        );
        if needs_geometry && self.geometry.is_none() {
            return Err(CliError::Config("--geometry is required for this command".into()));
        }
        let csv_ok = matches!(self.command, Command::HeatTrace { .. });
        if self.format == Some(Format::Csv) && !csv_ok {
            return Err(CliError::Config("CSV output is only available for heat-trace".into()));
        }
        if let (Some(k), Some(g)) = (self.degree, &self.geometry) {
            let dim = SpectralModel::build(g).map_err(config)?.dim();
            if k > dim {
                return Err(CliError::Config(format!("degree {k} exceeds dimension {dim}")));
            }
        }
        if matches!(self.command, Command::Zeta { .. } | Command::HeatTrace { .. }) && self.degree.is_none() {
            return Err(CliError::Config("--degree is required for this command".into()));
        }
        Ok(())
    }

    fn model(&self) -> Result<SpectralModel, CliError> {
        let g = self
            .geometry
            .as_ref()
            .ok_or_else(|| CliError::Config("--geometry is required".into()))?;
        SpectralModel::build(g).map_err(config)
    }
}

/// What a command produced, plus whether it counts as success.
#[derive(Debug, Clone, PartialEq)]
pub struct Emitted {
    pub body: String,
    pub ok: bool,
}

/// Pretty JSON with every float written to 17 significant digits.
struct FixedFloats(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*)),* $(,)?) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for FixedFloats {
    delegate!(
        begin_array(),
        end_array(),
        begin_array_value(first: bool),
        end_array_value(),
        begin_object(),
        end_object(),
        begin_object_key(first: bool),
        begin_object_value(),
        end_object_value(),
    );

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{}", fmt_float(value))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        // one spelling for both zeros
        "0.0000000000000000e0".to_string()
    } else {
        format!("{v:.16e}")
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(v: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::with_indent(b"  ")));
    v.serialize(&mut ser).expect("serializing to memory");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Rows `t, trace, short_expansion, residual, trace_error`.
pub fn emit_trace_table(model: &SpectralModel, degree: usize, grid: &[f64]) -> Result<String, CliError> {
    if grid.iter().any(|t| !(*t > 0.0 && t.is_finite())) || grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(CliError::Config("t grid must be positive and sorted".into()));
    }
    let terms = model.short_time_terms(degree).map_err(config)?;
    let mut out = String::from("t,trace,short_expansion,residual,trace_error\n");
    for &t in grid {
        let tr = model.heat_trace(degree, t).map_err(compute)?;
        let short: f64 = terms.iter().map(|e| e.eval(t)).sum();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float(t),
            fmt_float(tr.value),
            fmt_float(short),
            fmt_float(tr.value - short),
            fmt_float(tr.error)
        ));
    }
    Ok(out)
}

fn trace_rows(model: &SpectralModel, degree: usize, grid: &[f64]) -> Result<Value, CliError> {
    let terms = model.short_time_terms(degree).map_err(config)?;
    let rows = grid
        .iter()
        .map(|&t| {
            let tr = model.heat_trace(degree, t).map_err(compute)?;
            let short: f64 = terms.iter().map(|e| e.eval(t)).sum();
            Ok(json!({"t": t, "trace": tr.value, "short_expansion": short, "residual": tr.value - short, "trace_error": tr.error}))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Value::Array(rows))
}

fn geometric_grid(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if !(t_min > 0.0 && t_max >= t_min && t_max.is_finite()) {
        return Err(CliError::Config(format!("bad grid [{t_min}, {t_max}]")));
    }
    Ok(match points {
        0 => Vec::new(),
        1 => vec![t_min],
        n => {
            let r = (t_max / t_min).ln() / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        t_max
                    } else {
                        t_min * (r * i as f64).exp()
                    }
                })
                .collect()
        }
    })
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            Expr::parse(p)
                .map(|e| e.eval(0.0))
                .map_err(|e| CliError::Config(format!("grid point '{p}': {e}")))
        })
        .collect()
}

fn parse_expansion(s: &str, order: &str, endpoint: Endpoint) -> Result<Expansion, CliError> {
    let order = parse_rational(order).map_err(config)?;
    let terms = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let parts: Vec<&str> = p.split(':').collect();
            let bad = || CliError::Config(format!("expansion term '{p}' is not c:α[:k]"));
            if !(2..=3).contains(&parts.len()) {
                return Err(bad());
            }
            let c: f64 = parts[0].trim().parse().map_err(|_| bad())?;
            let a: Rational64 = parse_rational(parts[1]).map_err(config)?;
            let k: u32 = match parts.get(2) {
                Some(k) => k.trim().parse().map_err(|_| bad())?,
                None => 0,
            };
            Ok(ExpTerm::new(a, k, c))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Expansion::new(terms, order, endpoint).map_err(config)
}

fn parse_set(s: &str) -> Result<IndexSet, CliError> {
    s.parse::<IndexSet>().map_err(config)
}

fn bounds_text(b: &FaceBounds) -> String {
    b.iter().map(|(f, b)| format!("{} {}\n", f.label(), b)).collect()
}

fn run_indexset(op: &IndexOp) -> Result<String, CliError> {
    let text = match op {
        IndexOp::Normalize { set } => parse_set(set)?.to_string(),
        IndexOp::Eunion { a, b } => parse_set(a)?.extended_union(&parse_set(b)?).to_string(),
        IndexOp::Sum { a, b } => parse_set(a)?.minkowski_sum(&parse_set(b)?).to_string(),
        IndexOp::Shift { set, c } => parse_set(set)?.shift(parse_rational(c).map_err(config)?).to_string(),
        IndexOp::Check { set, bound, strict } => {
            let ok = parse_set(set)?.check_bound(parse_rational(bound).map_err(config)?, *strict);
            ok.to_string()
        }
        IndexOp::Pushforward { sets } => {
            let s = sets.iter().map(|s| parse_set(s)).collect::<Result<Vec<_>, _>>()?;
            let left = IndexTriple::new(s[0].clone(), s[1].clone(), s[2].clone());
            let right = IndexTriple::new(s[3].clone(), s[4].clone(), s[5].clone());
            let p = pushforward_triple(&left, &right);
            return Ok(format!("(10) {}\n(11) {}\n(01) {}\n", p.e10, p.e11, p.e01));
        }
        IndexOp::ResolventBounds { sigma, b } => {
            return Ok(bounds_text(&resolvent_power_bounds(*sigma, *b).map_err(config)?))
        }
        IndexOp::HeatBounds { nu, b } => return Ok(bounds_text(&heat_trace_bounds(*nu, *b).map_err(config)?)),
    };
    Ok(text + "\n")
}

fn check_error(error: f64, tol: f64) -> Result<(), CliError> {
    if error > tol {
        return Err(CliError::Compute(format!(
            "error estimate {error:e} exceeds the tolerance {tol:e}"
        )));
    }
    Ok(())
}

/// Execute one configured command.
pub fn run(cfg: &RunConfig) -> Result<Emitted, CliError> {
    let ok = |body: String| Ok(Emitted { body, ok: true });
    match &cfg.command {
        Command::Torsion => {
            let m = cfg.model()?;
            let r = log_torsion(&m).map_err(compute)?;
            check_error(r.error, cfg.tolerances.result)?;
            let mut v = json!({"geometry": m.geometry()});
            let body = serde_json::to_value(&r).map_err(compute)?;
            if let (Value::Object(o), Value::Object(b)) = (&mut v, body) {
                o.extend(b);
            }
            ok(to_json_string(&v))
        }
        Command::Zeta { at } => {
            let m = cfg.model()?;
            let k = cfg.degree.unwrap_or(0);
            let z = zeta_continue(&m, k).map_err(compute)?;
            let z0 = z.at_zero().map_err(compute)?;
            check_error(z0.error, cfg.tolerances.result)?;
            let values = at
                .iter()
                .map(|&s| {
                    let v = z.eval(s).map_err(compute)?;
                    Ok(json!({"s": s, "value": v.value, "error": v.error}))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let poles: Vec<Value> = z
                .poles()
                .iter()
                .map(|p| json!({"location": p.location, "principal": p.principal}))
                .collect();
            ok(to_json_string(&json!({
                "geometry": m.geometry(),
                "degree": k,
                "zeta0": z0.value,
                "dzeta0": z0.derivative,
                "error": z0.error,
                "gamma_zeta_poles": poles,
                "values": values,
            })))
        }
        Command::HeatTrace {
            grid,
            t_min,
            t_max,
            points,
        } => {
            let m = cfg.model()?;
            let k = cfg.degree.unwrap_or(0);
            let grid = match grid {
                Some(g) => parse_grid(g)?,
                None => geometric_grid(*t_min, *t_max, *points)?,
            };
            match cfg.format.unwrap_or(Format::Csv) {
                Format::Csv => ok(emit_trace_table(&m, k, &grid)?),
                Format::Json => {
                    emit_trace_table(&m, k, &grid)?;
                    ok(to_json_string(
                        &json!({"geometry": m.geometry(), "degree": k, "rows": trace_rows(&m, k, &grid)?}),
                    ))
                }
            }
        }
        Command::Regint {
            expr,
            zero,
            zero_order,
            inf,
            inf_order,
            lambda,
            split,
        } => {
            let e = Expr::parse(expr).map_err(config)?;
            let at_zero = parse_expansion(zero, zero_order, Endpoint::Zero)?;
            let at_inf = parse_expansion(inf, inf_order, Endpoint::Infinity)?;
            let f = PhgSample::new(move |x| e.eval(x), at_zero, at_inf).map_err(config)?;
            f.validate().map_err(compute)?;
            let opts = RegOptions {
                tol: cfg.tolerances.quadrature,
                ..RegOptions::default()
            };
            let (value, log_coeffs, error) = match lambda {
                Some(l) => {
                    let l = Expr::parse(l).map_err(config)?.eval(0.0);
                    if !(l > 0.0 && l.is_finite()) {
                        return Err(CliError::Config(format!("λ must be positive, got {l}")));
                    }
                    let r = change_of_variable(&f, l, cfg.tolerances.agreement, opts).map_err(compute)?;
                    (r.value, r.log_coeffs, r.error)
                }
                None => {
                    let r = regularized_integral(&f, *split, opts).map_err(compute)?;
                    (r.value, change_of_variable_coeffs(&f), r.error)
                }
            };
            check_error(error, cfg.tolerances.result)?;
            ok(to_json_string(
                &json!({"value": value, "log_coeffs": log_coeffs, "error_estimate": error}),
            ))
        }
        Command::Indexset { op } => {
            let text = run_indexset(op)?;
            match cfg.format {
                Some(Format::Json) => ok(to_json_string(&json!({"result": text.trim_end()}))),
                _ => ok(text),
            }
        }
        Command::Glue { length } => {
            let r = circle_gluing_check(*length).map_err(compute)?;
            let pass = (r.ratio - 1.0).abs() <= r.tolerance;
            Ok(Emitted {
                body: to_json_string(&r),
                ok: pass,
            })
        }
        Command::Suite { criterion } => {
            let all = verify::criteria();
            let mut reports = Vec::new();
            for c in &all {
                if criterion.is_empty() || criterion.contains(&c.id) {
                    let r = verify::run_criterion(c);
                    if cfg.verbosity > 0 {
                        eprintln!("{}", r.line());
                    }
                    reports.push(r);
                }
            }
            if reports.is_empty() {
                return Err(CliError::Config(format!("no criterion among {criterion:?}")));
            }
            let pass = reports.iter().all(|r| r.passed);
            let body = match cfg.format {
                Some(Format::Json) => to_json_string(&reports),
                _ => reports.iter().map(|r| r.line() + "\n").collect(),
            };
            Ok(Emitted { body, ok: pass })
        }
    }
}

/// Replace `path` in one step: write a sibling temporary file, then rename.
pub fn write_atomic(path: &Path, body: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} must be a positive integer, got '{v}'")))?;
    // a second initialisation in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parse, run and emit; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(io::stdout(), "{e}");
                return 0;
            }
            eprintln!("{}", CliError::Config(e.to_string().trim().to_string()).to_json());
            return 2;
        }
    };
    let result = configure_threads()
        .and_then(|_| RunConfig::from_cli(cli))
        .and_then(|cfg| {
            let out = run(&cfg)?;
            match &cfg.output {
                Some(p) => write_atomic(p, &out.body).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
                None => {
                    let mut so = io::stdout().lock();
                    let mut written = so.write_all(out.body.as_bytes());
                    if written.is_ok() && !out.body.ends_with('\n') {
                        written = so.write_all(b"\n");
                    }
                    match written {
                        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(compute(e)),
                        _ => {}
                    }
                }
            }
            Ok(out.ok)
        });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code()
        }
    }
}

/// Tolerances accepted by `--tol`, for documentation and tests.
pub fn tolerance_keys() -> BTreeMap<&'static str, f64> {
    let d = Tolerances::default();
    BTreeMap::from([
        ("result", d.result),
        ("agreement", d.agreement),
        ("quadrature", d.quadrature),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("phi-torsion").chain(args.iter().copied())).map_err(config)?;
        RunConfig::from_cli(cli)
    }

    #[test]
    fn twisted_circle_torsion_json() {
        let c = cfg(&[
            "torsion",
            "--geometry",
            r#"{"kind":"circle","length":6.2832,"holonomy":3.1416}"#,
        ])
        .unwrap();
        let out = run(&c).unwrap();
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert!((v["logT"].as_f64().unwrap() - 0.6931).abs() < 1e-4);
        assert!(v["error"].is_number());
        assert_eq!(v["convention"]["sign"].as_f64(), Some(1.0));
    }

    #[test]
    fn indexset_eunion_text() {
        let c = cfg(&["indexset", "eunion", "{(0,0)}", "{(0,0)}"]).unwrap();
        assert_eq!(run(&c).unwrap().body, "{(0,1)}; cutoff=10\n");
    }

    #[test]
    fn trace_table_shapes() {
        let m = SpectralModel::build(&Geometry::circle(1.0, 0.0)).unwrap();
        assert_eq!(
            emit_trace_table(&m, 0, &[]).unwrap(),
            "t,trace,short_expansion,residual,trace_error\n"
        );
        let tr = SpectralModel::build(&Geometry::truncated(&[(1.0, 2), (4.0, 1)])).unwrap();
        let table = emit_trace_table(&tr, 0, &[0.5]).unwrap();
        let row: Vec<f64> = table
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(row[1], 2.0 * (-0.5f64).exp() + (-2f64).exp());
        assert!(emit_trace_table(&m, 0, &[1.0, 0.5]).is_err());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(cfg(&["torsion"]), Err(CliError::Config(_))));
        assert!(matches!(
            cfg(&["torsion", "--geometry", "{\"kind\":\"circle\",\"length\":-1}"]),
            Err(CliError::Config(_))
        ));
        assert!(matches!(cfg(&["glue", "--tol", "bogus=1"]), Err(CliError::Config(_))));
        assert!(matches!(cfg(&["glue", "--tolerance", "-1"]), Err(CliError::Config(_))));
        assert!(matches!(cfg(&["glue", "--format", "csv"]), Err(CliError::Config(_))));
    }

    #[test]
    fn floats_have_fixed_width() {
        assert_eq!(
            to_json_string(&json!([0.5, -0.0])),
            "[\n  5.0000000000000000e-1,\n  0.0000000000000000e0\n]"
        );
        assert_eq!(tolerance_keys().len(), 3);
    }
}
