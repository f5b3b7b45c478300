//! Command-line front end. Rows are assembled in `(x, alpha)` order and
//! numbers are printed with 17 significant digits, so output is
//! reproducible bit for bit.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::catalog::{caputo_complex, kernel_for, CatalogEntry, FunctionKind};
use crate::eit::{eit_numeric_check, eit_transform, simplify_params};
use crate::error::{Error, Result};
use crate::figures::{figure_rows, grid, FigureId, DEFAULT_ALPHAS, DEFAULT_POINTS};
use crate::oracle::{
    asymptotic_residual, lc_gaussian_hermite, lc_gaussian_kummer, lc_harmonic, lc_quadrature,
    DecayClass, Integrand,
};
use crate::precision::PrecisionConfig;
use crate::specfun::pfq;
use crate::validation::run_all;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Relative agreement required of every `eit-check` row.
pub const EIT_CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "caputo",
    version,
    about = "Closed-form Caputo fractional derivatives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Working precision in decimal digits; above 16 the series run in
    /// extended precision.
    #[arg(long, global = true)]
    pub precision_digits: Option<u32>,

    /// Relative tolerance of series and quadrature.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Gauss rule size of the quadrature oracles.
    #[arg(long, global = true)]
    pub quad_nodes: Option<usize>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a catalog derivative on a grid of orders and points.
    Eval(EvalArgs),
    /// Emit the curves of one figure panel.
    Figure(FigureArgs),
    /// Compare Caputo against Liouville-Caputo for the sine or the Gaussian.
    Compare(EvalArgs),
    /// Check the Euler transform of a family's kernel by quadrature.
    EitCheck(EvalArgs),
    /// Run the acceptance suite.
    Validate,
}

#[derive(Debug, Args)]
pub struct EntryArgs {
    /// sin, cos, sinh, cosh, planewave, arcsin, arccos, arctan, arccot,
    /// exp (gaussian = exp with n = 2), lorentzian, poly.
    #[arg(long = "fn", value_name = "KIND")]
    pub kind: String,

    #[arg(long, default_value_t = 1)]
    pub n: u32,

    /// Scale beta, or the width gamma of the Lorentzian.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,

    /// Shift of the polynomial (x + xi)^n.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub xi: f64,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub entry: EntryArgs,

    /// Orders, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub alpha: Vec<f64>,

    /// Points, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "x_range"
    )]
    pub x: Vec<f64>,

    /// `min,max,points`, evenly spaced with both ends included.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub x_range: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    /// 1a, 1b, 2a, 2b, 3a, 3b, 4 or 5.
    pub id: String,

    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,

    #[arg(long, default_value_t = DEFAULT_POINTS)]
    pub points: usize,
}

/// A rendered cell. Floats print with 17 significant digits.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn write(&self, out: &mut dyn Write, format: Format) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| (c.to_string(), v.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_writer_pretty(&mut *out, &rows)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

/// A table plus the exit code it earned. Partial tables are still printed
/// when a later row fails.
struct Outcome {
    table: Table,
    code: i32,
    message: Option<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self {
            table,
            code: EXIT_OK,
            message: None,
        }
    }

    fn failed(table: Table, err: &Error) -> Self {
        Self {
            table,
            code: exit_code(err),
            message: Some(err.to_string()),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_NUMERIC
    }
}

impl Cli {
    pub fn precision(&self) -> Result<PrecisionConfig> {
        let mut cfg = PrecisionConfig::default();
        if let Some(d) = self.precision_digits {
            cfg = cfg.with_working_digits(d);
        }
        if let Some(t) = self.tol {
            cfg = cfg.with_rel_tol(t);
        }
        if let Some(n) = self.quad_nodes {
            cfg = cfg.with_quad_nodes(n);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl EntryArgs {
    pub fn entry(&self) -> Result<CatalogEntry> {
        let kind = FunctionKind::from_name(&self.kind)
            .ok_or_else(|| Error::Domain(format!("unknown function '{}'", self.kind)))?;
        // "gaussian" is the n = 2 exponential unless n was given explicitly
        let n = if self.kind.eq_ignore_ascii_case("gaussian") && self.n == 1 {
            2
        } else {
            self.n
        };
        let e = CatalogEntry::new(kind)
            .with_n(n)
            .with_beta(self.beta)
            .with_xi(self.xi);
        e.validate()?;
        Ok(e)
    }
}

impl EvalArgs {
    pub fn points(&self) -> Result<Vec<f64>> {
        match &self.x_range {
            Some(r) => {
                let [lo, hi, n] = r[..] else {
                    return Err(Error::domain("--x-range takes min,max,points"));
                };
                if !(n >= 2.0 && n.fract() == 0.0) || !(lo <= hi) {
                    return Err(Error::domain(
                        "--x-range needs min <= max and at least 2 points",
                    ));
                }
                Ok(grid(lo, hi, n as usize))
            }
            None if self.x.is_empty() => Err(Error::domain("give --x or --x-range")),
            None => Ok(self.x.clone()),
        }
    }

    fn alphas(&self) -> Result<Vec<f64>> {
        if let Some(&a) = self.alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidAlpha(a));
        }
        Ok(self.alpha.clone())
    }
}

fn cmd_eval(args: &EvalArgs, cfg: &PrecisionConfig) -> Result<Outcome> {
    let entry = args.entry.entry()?;
    let (xs, alphas) = (args.points()?, args.alphas()?);
    let complex = entry.kind.is_complex();
    let mut table = Table::new(if complex {
        &[
            "x",
            "alpha",
            "value",
            "value_im",
            "abs_error",
            "terms",
            "converged",
        ]
    } else {
        &["x", "alpha", "value", "abs_error", "terms", "converged"]
    });
    let mut all_converged = true;
    for &x in &xs {
        for &alpha in &alphas {
            let r = match caputo_complex(&entry.request(alpha, x), cfg) {
                Ok(r) => r,
                Err(e) => return Ok(Outcome::failed(table, &e)),
            };
            all_converged &= r.converged;
            let mut row = vec![Cell::Num(x), Cell::Num(alpha), Cell::Num(r.value.re)];
            if complex {
                row.push(Cell::Num(r.value.im));
            }
            row.extend([
                Cell::Num(r.abs_error_estimate),
                Cell::Int(r.terms_used as u64),
                Cell::Bool(r.converged),
            ]);
            table.rows.push(row);
        }
    }
    if all_converged {
        Ok(Outcome::ok(table))
    } else {
        Ok(Outcome {
            table,
            code: EXIT_NUMERIC,
            message: Some("some values did not reach the requested tolerance".into()),
        })
    }
}

fn cmd_figure(args: &FigureArgs, cfg: &PrecisionConfig) -> Result<Outcome> {
    let id = FigureId::parse(&args.id)?;
    let alphas = args
        .alpha
        .clone()
        .unwrap_or_else(|| DEFAULT_ALPHAS.to_vec());
    if let Some(&a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
        return Err(Error::InvalidAlpha(a));
    }
    if args.points < 2 {
        return Err(Error::domain("a figure needs at least 2 points"));
    }
    let mut table = Table::new(&["x", "alpha", "value"]);
    for r in figure_rows(id, &alphas, args.points, cfg)? {
        table
            .rows
            .push(vec![Cell::Num(r.x), Cell::Num(r.alpha), Cell::Num(r.value)]);
    }
    Ok(Outcome::ok(table))
}

fn num_or_nan(r: Result<f64>) -> Cell {
    Cell::Num(r.unwrap_or(f64::NAN))
}

fn cmd_compare(args: &EvalArgs, cfg: &PrecisionConfig) -> Result<Outcome> {
    let entry = args.entry.entry()?;
    let (xs, alphas) = (args.points()?, args.alphas()?);
    let beta = entry.beta;
    match (entry.kind, entry.n) {
        (FunctionKind::SinPow, 1) => {
            // the residual is a small difference of large series values
            let ext = cfg.with_working_digits(cfg.working_digits.max(34));
            let mut table =
                Table::new(&["x", "alpha", "value", "lc", "difference", "scaled_residual"]);
            for &x in &xs {
                for &alpha in &alphas {
                    let c = match caputo_complex(&entry.request(alpha, x), &ext) {
                        Ok(r) => r.value.re,
                        Err(e) => return Ok(Outcome::failed(table, &e)),
                    };
                    let (lc, _) = lc_harmonic(alpha, beta, x);
                    let scaled = if alpha > 0.0 && alpha < 1.0 {
                        num_or_nan(asymptotic_residual(alpha, beta, x, &ext).map(|r| r.scaled))
                    } else {
                        Cell::Num(f64::NAN)
                    };
                    table.rows.push(vec![
                        Cell::Num(x),
                        Cell::Num(alpha),
                        Cell::Num(c),
                        Cell::Num(lc),
                        Cell::Num(c - lc),
                        scaled,
                    ]);
                }
            }
            Ok(Outcome::ok(table))
        }
        (FunctionKind::ExpPow, 2) => {
            let fprime = Integrand::new(
                move |t: f64| -2.0 * beta * beta * t * (-(beta * t).powi(2)).exp(),
                DecayClass::ExpDecay { rate: beta * beta },
            );
            // exp(-(beta x)^2) is exp(-b x^2) with b = beta^2 in the LC forms
            let b = beta * beta;
            let mut table = Table::new(&[
                "x",
                "alpha",
                "value",
                "lc_kummer",
                "lc_hermite",
                "lc_quadrature",
                "kummer_minus_hermite",
                "caputo_minus_lc",
            ]);
            for &x in &xs {
                for &alpha in &alphas {
                    let caputo = if x >= 0.0 {
                        match caputo_complex(&entry.request(alpha, x), cfg) {
                            Ok(r) => r.value.re,
                            Err(e) => return Ok(Outcome::failed(table, &e)),
                        }
                    } else {
                        f64::NAN
                    };
                    let routes = lc_gaussian_kummer(alpha, b, x, cfg)
                        .and_then(|k| Ok((k, lc_gaussian_hermite(alpha, b, x, cfg)?)))
                        .and_then(|(k, h)| {
                            Ok((k, h, lc_quadrature(&fprime, alpha, x, cfg)?.value))
                        });
                    let (k, h, q) = match routes {
                        Ok(v) => v,
                        Err(e) => return Ok(Outcome::failed(table, &e)),
                    };
                    table.rows.push(vec![
                        Cell::Num(x),
                        Cell::Num(alpha),
                        Cell::Num(caputo),
                        Cell::Num(k),
                        Cell::Num(h),
                        Cell::Num(q),
                        Cell::Num(k - h),
                        Cell::Num(caputo - h),
                    ]);
                }
            }
            Ok(Outcome::ok(table))
        }
        (kind, n) => Err(Error::UnsupportedComparison(format!(
            "{} with n={n}",
            kind.name()
        ))),
    }
}

fn cmd_eit_check(args: &EvalArgs, cfg: &PrecisionConfig) -> Result<Outcome> {
    let entry = args.entry.entry()?;
    let (xs, alphas) = (args.points()?, args.alphas()?);
    let mut table = Table::new(&[
        "x",
        "alpha",
        "value",
        "quadrature",
        "abs_diff",
        "rel_diff",
        "pass",
    ]);
    let mut all_pass = true;
    for &x in &xs {
        for &alpha in &alphas {
            let row = kernel_for(&entry, alpha, x).and_then(|k| {
                entry.request(alpha, x).validate()?;
                let quad = eit_numeric_check(&k, cfg)?.value;
                let series = pfq(&simplify_params(&eit_transform(&k)?), x, cfg)?.value;
                Ok((series, quad))
            });
            let (series, quad) = match row {
                Ok(v) => v,
                Err(e) => return Ok(Outcome::failed(table, &e)),
            };
            let diff = (series - quad).abs();
            let rel = diff / series.abs().max(1.0);
            let pass = rel <= EIT_CHECK_TOL;
            all_pass &= pass;
            table.rows.push(vec![
                Cell::Num(x),
                Cell::Num(alpha),
                Cell::Num(series),
                Cell::Num(quad),
                Cell::Num(diff),
                Cell::Num(rel),
                Cell::Bool(pass),
            ]);
        }
    }
    Ok(Outcome {
        table,
        code: if all_pass { EXIT_OK } else { EXIT_NUMERIC },
        message: (!all_pass)
            .then(|| format!("transform and quadrature differ by more than {EIT_CHECK_TOL:e}")),
    })
}

fn cmd_validate(cfg: &PrecisionConfig) -> Outcome {
    let mut table = Table::new(&[
        "criterion",
        "title",
        "passed",
        "checks",
        "worst",
        "tolerance",
        "seconds",
        "detail",
    ]);
    let reports = run_all(cfg);
    for r in &reports {
        eprintln!("{r}");
        table.rows.push(vec![
            Cell::Int(u64::from(r.id)),
            Cell::Text(r.title.to_string()),
            Cell::Bool(r.passed),
            Cell::Int(r.checked as u64),
            Cell::Num(r.worst),
            Cell::Num(r.tolerance),
            Cell::Num(r.elapsed.as_secs_f64()),
            Cell::Text(r.detail.clone()),
        ]);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    Outcome {
        table,
        code: if failed == 0 { EXIT_OK } else { EXIT_NUMERIC },
        message: (failed > 0).then(|| format!("{failed} criteria failed")),
    }
}

/// Executes a parsed command line, writing the table and diagnostics, and
/// returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = cli.precision().and_then(|cfg| match &cli.command {
        Command::Eval(a) => cmd_eval(a, &cfg),
        Command::Figure(a) => cmd_figure(a, &cfg),
        Command::Compare(a) => cmd_compare(a, &cfg),
        Command::EitCheck(a) => cmd_eit_check(a, &cfg),
        Command::Validate => Ok(cmd_validate(&cfg)),
    });
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.table.write(&mut w, cli.format)?;
            w.flush()
        }),
        None => outcome.table.write(stdout, cli.format),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_DOMAIN;
    }
    if let Some(msg) = outcome.message {
        let _ = writeln!(stderr, "error: {msg}");
    }
    outcome.code
}
