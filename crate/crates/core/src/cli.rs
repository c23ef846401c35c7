//! Command-line front end.
//!
//! Exit codes: 0 success (or `Satisfied`), 2 invalid input, 3 `NotSatisfied`,
//! 4 Picard budget exhausted, 5 forcing-term evaluation error, 1 internal error.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use crate::certificate::{
    certify_uniqueness, eigen_certificate, nonexistence_verdict, UniquenessVerdict,
};
use crate::domain::{Interval, Order};
use crate::error::Error;
use crate::expr::Expr;
use crate::green::GreenKernel;
use crate::solver::{picard_solve, Problem, QuadratureConfig, SolveConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_SATISFIED: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;
pub const EXIT_EVALUATION: i32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Accepts decimal literals plus the named constants `e` and `pi`.
fn parse_real(s: &str) -> Result<f64, String> {
    let v = match s.trim() {
        "e" => std::f64::consts::E,
        "pi" => std::f64::consts::PI,
        "-e" => -std::f64::consts::E,
        "-pi" => -std::f64::consts::PI,
        other => other
            .parse::<f64>()
            .map_err(|_| format!("`{other}` is not a real number (decimal, `e` or `pi`)"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hadamard-bvp",
    version,
    about = "Solve and certify Hadamard fractional two-point boundary value problems"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Gauss-Jacobi nodes per singular integral.
    #[arg(long, global = true, default_value_t = 64)]
    pub nodes: usize,
    /// Solution grid size (log-uniform, endpoints included).
    #[arg(long, global = true, default_value_t = 129)]
    pub grid: usize,
    /// Picard stopping tolerance (sup norm).
    #[arg(long, global = true, default_value = "1e-10", value_parser = parse_real)]
    pub tol: f64,
    /// Picard iteration budget.
    #[arg(long = "max-iter", global = true, default_value_t = 1000)]
    pub max_iter: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniqueness certificate for a Lipschitz constant K.
    Certify {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        b: f64,
        #[arg(long = "K", value_parser = parse_real, allow_hyphen_values = true)]
        k: f64,
    },
    /// Lower bound on eigenvalue magnitudes, optionally testing one λ.
    EigenBound {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        lambda: Option<f64>,
    },
    /// Solve the boundary value problem by Picard iteration.
    Solve {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        b: f64,
        /// Boundary value u(b).
        #[arg(long = "B", value_parser = parse_real, allow_hyphen_values = true)]
        boundary: f64,
        /// Forcing term F(x, u), e.g. "(x-1)^2 + sqrt(x-1+u^2)".
        #[arg(long = "F", allow_hyphen_values = true)]
        forcing: String,
        /// Lipschitz constant of F in u.
        #[arg(long = "K", value_parser = parse_real, allow_hyphen_values = true)]
        k: Option<f64>,
        /// Add the column t = ln(x/a).
        #[arg(long)]
        with_log_coordinate: bool,
        /// Exponent γ of a known (ln(x/a))^γ endpoint factor of F.
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0")]
        load_exponent: f64,
    },
    /// Green's function values and the closed-form row-integral maximum.
    Green {
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        tau: Option<f64>,
    },
}

/// Output of one command, before formatting.
struct Report {
    params: Value,
    certificate: Option<Value>,
    result: Option<Value>,
    table: Option<Table>,
    exit: i32,
}

struct Table {
    with_log: bool,
    rows: Vec<[f64; 3]>,
}

enum Failure {
    Invalid(String),
    Evaluation(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::GridMismatch(_) => Failure::Invalid(e.to_string()),
            Error::Evaluation { .. } => Failure::Evaluation(e.to_string()),
            Error::InconsistentCertificate(_) => Failure::Internal(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };

    let report = match execute(&cli) {
        Ok(r) => r,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Invalid(m) => (EXIT_INVALID, format!("invalid input: {m}")),
                Failure::Evaluation(m) => (EXIT_EVALUATION, m),
                Failure::Internal(m) => (EXIT_INTERNAL, format!("internal error: {m}")),
            };
            let _ = writeln!(stderr, "error: {msg}");
            return code;
        }
    };

    let mut rendered = Vec::new();
    if let Err(e) = render(&report, cli.format, &mut rendered) {
        let _ = writeln!(stderr, "error: cannot format output: {e}");
        return EXIT_INTERNAL;
    }
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(&rendered)),
        None => stdout.write_all(&rendered),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_INTERNAL;
    }
    report.exit
}

fn order_and_interval(sigma: f64, a: f64, b: f64) -> Result<(Order, Interval), Failure> {
    let order = Order::new(sigma)
        .map_err(|_| Failure::Invalid(format!("requires 1 < sigma <= 2, got sigma = {sigma}")))?;
    let interval = Interval::new(a, b)
        .map_err(|_| Failure::Invalid(format!("requires 0 < a < b, got a = {a}, b = {b}")))?;
    Ok((order, interval))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Certify { sigma, a, b, k } => {
            let (order, interval) = order_and_interval(*sigma, *a, *b)?;
            if !(*k > 0.0) {
                return Err(Failure::Invalid(format!("requires K > 0, got K = {k}")));
            }
            let cert = certify_uniqueness(order, interval, *k)?;
            let exit = match cert.verdict {
                UniquenessVerdict::Satisfied => EXIT_OK,
                UniquenessVerdict::NotSatisfied => EXIT_NOT_SATISFIED,
            };
            Ok(Report {
                params: json!({ "command": "certify", "sigma": sigma, "a": a, "b": b, "K": k }),
                certificate: Some(to_value(&cert)),
                result: None,
                table: None,
                exit,
            })
        }
        Command::EigenBound {
            sigma,
            a,
            b,
            lambda,
        } => {
            let (order, interval) = order_and_interval(*sigma, *a, *b)?;
            let cert = match lambda {
                Some(l) => nonexistence_verdict(order, interval, *l),
                None => eigen_certificate(order, interval),
            };
            let mut params = json!({ "command": "eigen-bound", "sigma": sigma, "a": a, "b": b });
            if let Some(l) = lambda {
                params["lambda"] = json!(l);
            }
            Ok(Report {
                params,
                certificate: Some(to_value(&cert)),
                result: None,
                table: None,
                exit: EXIT_OK,
            })
        }
        Command::Green {
            sigma,
            a,
            b,
            x,
            tau,
        } => {
            let (order, interval) = order_and_interval(*sigma, *a, *b)?;
            let kernel = GreenKernel::new(order, interval);
            let mut params = json!({ "command": "green", "sigma": sigma, "a": a, "b": b });
            let result = match (x, tau) {
                (Some(x), Some(tau)) => {
                    params["x"] = json!(x);
                    params["tau"] = json!(tau);
                    json!({ "green": kernel.eval(*x, *tau)? })
                }
                (Some(x), None) => {
                    params["x"] = json!(x);
                    json!({ "rowIntegral": kernel.row_integral(*x)? })
                }
                (None, None) => json!({
                    "argmax": kernel.argmax(),
                    "maxIntegral": kernel.max_integral(),
                }),
                (None, Some(_)) => {
                    return Err(Failure::Invalid("--tau requires --x".into()));
                }
            };
            Ok(Report {
                params,
                certificate: None,
                result: Some(result),
                table: None,
                exit: EXIT_OK,
            })
        }
        Command::Solve {
            sigma,
            a,
            b,
            boundary,
            forcing,
            k,
            with_log_coordinate,
            load_exponent,
        } => {
            let (order, interval) = order_and_interval(*sigma, *a, *b)?;
            let expr = Expr::parse(forcing)
                .map_err(|e| Failure::Invalid(format!("in --F \"{forcing}\": {e}")))?;
            let cfg = QuadratureConfig {
                node_count: cli.nodes,
                grid_size: cli.grid,
                load_exponent: *load_exponent,
            };
            let scfg = SolveConfig {
                tolerance: cli.tol,
                max_iterations: cli.max_iter,
            };
            cfg.validate()?;
            scfg.validate()?;
            let mut problem = Problem::new(order, interval, *boundary, expr)?;
            let mut certificate = None;
            if let Some(k) = k {
                problem = problem.with_lipschitz(*k)?;
                certificate = Some(to_value(&certify_uniqueness(order, interval, *k)?));
            }
            let solved = picard_solve(&problem, &cfg, &scfg)?;
            let mut params = json!({
                "command": "solve",
                "sigma": sigma,
                "a": a,
                "b": b,
                "B": boundary,
                "F": forcing,
                "nodes": cli.nodes,
                "grid": cli.grid,
                "tol": cli.tol,
                "maxIter": cli.max_iter,
                "loadExponent": load_exponent,
            });
            if let Some(k) = k {
                params["K"] = json!(k);
            }
            let result = json!({
                "converged": solved.converged,
                "iterations": solved.iterations,
                "finalDelta": solved.final_delta,
                "contractionEstimate": solved.contraction_estimate,
            });
            let rows = solved
                .solution
                .nodes()
                .iter()
                .zip(solved.solution.values())
                .map(|(&x, &u)| [x, u, (x / interval.a()).ln().max(0.0)])
                .collect();
            Ok(Report {
                params,
                certificate,
                result: Some(result),
                table: Some(Table {
                    with_log: *with_log_coordinate,
                    rows,
                }),
                exit: if solved.converged {
                    EXIT_OK
                } else {
                    EXIT_NON_CONVERGENCE
                },
            })
        }
    }
}

/// 17 significant digits, enough to round-trip any f64.
pub fn format_exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// 10 significant digits, fixed notation for moderate magnitudes.
pub fn format_human(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.9e}")
    }
}

struct ExactFloats<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_exact(value).as_bytes())
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        w: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

fn render(report: &Report, format: Format, out: &mut Vec<u8>) -> io::Result<()> {
    match format {
        Format::Json => render_json(report, out),
        Format::Csv => render_csv(report, out),
        Format::Human => render_human(report, out),
    }
}

fn render_json(report: &Report, out: &mut Vec<u8>) -> io::Result<()> {
    let mut doc = serde_json::Map::new();
    doc.insert("params".into(), report.params.clone());
    if let Some(c) = &report.certificate {
        doc.insert("certificate".into(), c.clone());
    }
    if let Some(r) = &report.result {
        doc.insert("result".into(), r.clone());
    }
    if let Some(t) = &report.table {
        let rows = t
            .rows
            .iter()
            .map(|[x, u, lt]| {
                if t.with_log {
                    json!({ "x": x, "u": u, "t": lt })
                } else {
                    json!({ "x": x, "u": u })
                }
            })
            .collect();
        doc.insert("table".into(), Value::Array(rows));
    }
    let mut ser = serde_json::Serializer::with_formatter(
        &mut *out,
        ExactFloats {
            inner: PrettyFormatter::new(),
        },
    );
    Value::Object(doc)
        .serialize(&mut ser)
        .map_err(io::Error::other)?;
    out.push(b'\n');
    Ok(())
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_exact(n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn render_csv(report: &Report, out: &mut Vec<u8>) -> io::Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    if let Some(t) = &report.table {
        if t.with_log {
            writer.write_record(["x", "u", "t"])?;
        } else {
            writer.write_record(["x", "u"])?;
        }
        for [x, u, lt] in &t.rows {
            if t.with_log {
                writer.write_record([format_exact(*x), format_exact(*u), format_exact(*lt)])?;
            } else {
                writer.write_record([format_exact(*x), format_exact(*u)])?;
            }
        }
    } else {
        let record = report.certificate.as_ref().or(report.result.as_ref());
        if let Some(Value::Object(map)) = record {
            writer.write_record(map.keys())?;
            writer.write_record(map.values().map(csv_cell))?;
        }
    }
    writer.flush()?;
    Ok(())
}

fn human_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_human(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_human(report: &Report, out: &mut Vec<u8>) -> io::Result<()> {
    let sections = [&report.certificate, &report.result];
    for section in sections.into_iter().flatten() {
        if let Value::Object(map) = section {
            for (k, v) in map {
                writeln!(out, "{k}: {}", human_value(v))?;
            }
        }
    }
    if let Some(t) = &report.table {
        if t.with_log {
            writeln!(out, "{:>18} {:>18} {:>18}", "x", "u", "t")?;
        } else {
            writeln!(out, "{:>18} {:>18}", "x", "u")?;
        }
        for [x, u, lt] in &t.rows {
            if t.with_log {
                writeln!(
                    out,
                    "{:>18} {:>18} {:>18}",
                    format_human(*x),
                    format_human(*u),
                    format_human(*lt)
                )?;
            } else {
                writeln!(out, "{:>18} {:>18}", format_human(*x), format_human(*u))?;
            }
        }
    }
    Ok(())
}
