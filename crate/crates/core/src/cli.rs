//! Command routing and report rendering for the `qcoh` binary.
//!
//! Grammar: `qcoh <kind> <n> <command> [--class P] [--a P --b P] [--tol X]
//! [--format text|json|csv] [--out PATH] [--unsafe-n]`.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 usage error.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::StrictPartition;
use crate::peterson::{self, Kind, Parity};
use crate::ring::{self, RingElement, Term};
use crate::spectral::{self, ConjectureOReport, DEFAULT_CLUSTER_TOLERANCE};
use crate::{DEFAULT_MAX_N, UNSAFE_MAX_N};

/// Smallest rank accepted on the command line.
pub const CLI_MIN_N: usize = 2;

/// Environment variable that fixes the size of the worker pool.
pub const THREADS_ENV: &str = "QCOH_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Basis,
    Points,
    Multiply,
    Operator,
    Spectrum,
    ConjectureO,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "qcoh", version, about = "Quantum cohomology of OG(n) and LG(n) at q = 1")]
struct Args {
    /// og or lg
    kind: String,
    n: usize,
    #[arg(value_enum)]
    command: Command,
    /// Class selector, e.g. "2,1"
    #[arg(long = "class")]
    class: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// Relative tolerance for spectrum clustering
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow n up to 10 (integer recovery may fail)
    #[arg(long)]
    unsafe_n: bool,
}

/// A validated command line.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandRequest {
    pub kind: Kind,
    pub n: usize,
    pub command: Command,
    pub class: Option<StrictPartition>,
    pub a: Option<StrictPartition>,
    pub b: Option<StrictPartition>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub unsafe_n: bool,
}

impl CommandRequest {
    pub fn new(kind: Kind, n: usize, command: Command) -> Self {
        Self {
            kind,
            n,
            command,
            class: None,
            a: None,
            b: None,
            tol: DEFAULT_CLUSTER_TOLERANCE,
            format: Format::Text,
            out: None,
            unsafe_n: false,
        }
    }

    fn max_n(&self) -> usize {
        if self.unsafe_n {
            UNSAFE_MAX_N
        } else {
            DEFAULT_MAX_N
        }
    }

    fn validate(&self) -> std::result::Result<(), String> {
        if self.n < CLI_MIN_N || self.n > self.max_n() {
            let hint = if self.unsafe_n { "" } else { " (--unsafe-n raises the cap)" };
            return Err(format!("n = {} is outside {}..={}{hint}", self.n, CLI_MIN_N, self.max_n()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("--tol must be a positive number, got {}", self.tol));
        }
        for p in [&self.class, &self.a, &self.b].into_iter().flatten() {
            if !p.fits(self.n) {
                return Err(format!("({p}) has a part larger than n = {}", self.n));
            }
        }
        match self.command {
            Command::Multiply if self.a.is_none() || self.b.is_none() => Err("multiply needs --a and --b".into()),
            Command::Operator if self.class.is_none() => Err("operator needs --class".into()),
            _ => Ok(()),
        }
    }
}

fn parse_partition(s: Option<String>) -> std::result::Result<Option<StrictPartition>, String> {
    s.map(|s| s.parse::<StrictPartition>().map_err(|e| e.to_string())).transpose()
}

/// Parses and validates `argv` (including the program name).
pub fn parse_request<I, T>(argv: I) -> std::result::Result<CommandRequest, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    let usage = |msg: String| clap::Error::raw(clap::error::ErrorKind::ValueValidation, msg + "\n");
    let kind = args.kind.parse::<Kind>().map_err(|e| usage(e.to_string()))?;
    let request = CommandRequest {
        kind,
        n: args.n,
        command: args.command,
        class: parse_partition(args.class).map_err(usage)?,
        a: parse_partition(args.a).map_err(usage)?,
        b: parse_partition(args.b).map_err(usage)?,
        tol: args.tol.unwrap_or(DEFAULT_CLUSTER_TOLERANCE),
        format: args.format,
        out: args.out,
        unsafe_n: args.unsafe_n,
    };
    request.validate().map_err(usage)?;
    Ok(request)
}

/// Entry point shared by the binary and the tests: parses `argv`, runs, and
/// returns the exit code. Reports go to `stdout` (or `--out`), messages to `stderr`.
pub fn main_with_args<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_request(argv) {
        Ok(request) => run(&request, stdout, stderr),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            code
        }
    }
}

/// Runs a validated request. The whole report is rendered before anything is written.
pub fn run(request: &CommandRequest, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    if let Err(msg) = request.validate() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    if request.n > DEFAULT_MAX_N {
        let _ = writeln!(
            stderr,
            "warning: n = {} exceeds {DEFAULT_MAX_N}; double precision may not recover exact integers",
            request.n
        );
    }
    let (text, code) = match render(request) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                Error::Precision(_) | Error::Consistency(_) => EXIT_VERIFY_FAILED,
                _ => EXIT_USAGE,
            };
        }
    };
    let written = match &request.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    code
}

/// A complex number as `{re, im}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexValue {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub partition: StrictPartition,
    pub weight: u32,
    pub complement: StrictPartition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisReport {
    pub kind: Kind,
    pub n: usize,
    pub classes: Vec<BasisEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointEntry {
    pub index: usize,
    /// Doubled exponents `a`, the root being `exp(πi·a/(2m))`.
    pub doubled: Vec<i64>,
    pub parity: Parity,
    pub closed: bool,
    pub coordinates: Vec<ComplexValue>,
    pub q: ComplexValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsReport {
    pub kind: Kind,
    pub n: usize,
    pub scale: f64,
    pub points: Vec<PointEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductReport {
    pub kind: Kind,
    pub n: usize,
    pub a: StrictPartition,
    pub b: StrictPartition,
    pub product: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub kind: Kind,
    pub n: usize,
    pub class: StrictPartition,
    pub basis: Vec<StrictPartition>,
    /// Row `ν`, column `μ`.
    pub entries: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub doubled: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub kind: Kind,
    pub n: usize,
    /// `"c1"`, or the class whose multiplication operator was diagonalized.
    pub operator: String,
    pub eigenvalues: Vec<Eigenvalue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub kind: Kind,
    pub n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// JSON formatter that writes every float with 17 significant digits.
struct FixedFloats;

impl serde_json::ser::Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

/// Pretty-printed JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, PrettyFixed::default());
    value.serialize(&mut ser).expect("report serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// `PrettyFormatter` indentation with [`FixedFloats`] numbers.
#[derive(Default)]
struct PrettyFixed {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.pretty.$name(writer $(, $arg)*)
        })*
    };
}

impl serde_json::ser::Formatter for PrettyFixed {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        FixedFloats.write_f64(writer, value)
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn complex_text(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {sign} {}i", num(z.re), num(z.im.abs()))
}

fn class_name(kind: Kind, n: usize, p: &StrictPartition) -> Result<String> {
    Ok(RingElement::basis(kind, n, p)?.to_string())
}

fn render(req: &CommandRequest) -> Result<(String, i32)> {
    let (kind, n) = (req.kind, req.n);
    let mut code = EXIT_OK;
    let text = match req.command {
        Command::Basis => render_basis(req.format, &basis_report(kind, n)?),
        Command::Points => render_points(req.format, &points_report(kind, n)?),
        Command::Multiply => {
            let (a, b) = (req.a.clone().unwrap_or_default(), req.b.clone().unwrap_or_default());
            render_product(req.format, &product_report(kind, n, &a, &b)?)?
        }
        Command::Operator => {
            let class = req.class.clone().unwrap_or_default();
            render_operator(req.format, &operator_report(kind, n, &class)?)
        }
        Command::Spectrum => render_spectrum(req.format, &spectrum_report(kind, n, req.class.as_ref())?),
        Command::ConjectureO => render_conjecture(req.format, &spectral::conjecture_o(kind, n, req.tol)?),
        Command::Verify => {
            let report = verify(kind, n, req.tol)?;
            if !report.passed {
                code = EXIT_VERIFY_FAILED;
            }
            render_verify(req.format, &report)
        }
    };
    Ok((text, code))
}

pub fn basis_report(kind: Kind, n: usize) -> Result<BasisReport> {
    let tables = ring::evaluation_tables(kind, n)?;
    let basis = tables.basis();
    let classes = (0..basis.len())
        .map(|i| BasisEntry {
            index: i,
            partition: basis.class(i).clone(),
            weight: basis.class(i).weight(),
            complement: basis.class(basis.complement_index(i)).clone(),
        })
        .collect();
    Ok(BasisReport { kind, n, classes })
}

fn render_basis(format: Format, r: &BasisReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("index,partition,weight,complement\n");
            for c in &r.classes {
                let _ = writeln!(s, "{},\"{}\",{},\"{}\"", c.index, c.partition, c.weight, c.complement);
            }
        }
        Format::Text => {
            let _ = writeln!(s, "{}({}): {} Schubert classes", r.kind.as_str().to_uppercase(), r.n, r.classes.len());
            for c in &r.classes {
                let _ = writeln!(s, "{:>4}  ({})  weight {}  complement ({})", c.index, c.partition, c.weight, c.complement);
            }
        }
    }
    s
}

pub fn points_report(kind: Kind, n: usize) -> Result<PointsReport> {
    let points = peterson::points(kind, n)?;
    Ok(PointsReport {
        kind,
        n,
        scale: kind.scale(n),
        points: points
            .iter()
            .enumerate()
            .map(|(i, p)| PointEntry {
                index: i,
                doubled: p.tuple().doubled_indices().to_vec(),
                parity: p.tuple().parity(),
                closed: p.tuple().is_closed(),
                coordinates: p.coordinates().iter().map(|&z| z.into()).collect(),
                q: peterson::evaluate_q(p).into(),
            })
            .collect(),
    })
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn render_points(format: Format, r: &PointsReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("index,doubled,parity,closed,coordinate,re,im\n");
            for p in &r.points {
                for (k, z) in p.coordinates.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "{},\"{}\",{},{},{},{},{}",
                        p.index,
                        join(&p.doubled, " "),
                        p.parity,
                        p.closed,
                        k,
                        num(z.re),
                        num(z.im)
                    );
                }
            }
        }
        Format::Text => {
            let _ = writeln!(s, "{}({}): {} points, scale {}", r.kind.as_str().to_uppercase(), r.n, r.points.len(), num(r.scale));
            for p in &r.points {
                let _ = writeln!(
                    s,
                    "{:>4}  [{}]  parity {}{}  q = {}",
                    p.index,
                    join(&p.doubled, ", "),
                    p.parity,
                    if p.closed { "  closed" } else { "" },
                    complex_text(Complex64::new(p.q.re, p.q.im))
                );
            }
        }
    }
    s
}

pub fn product_report(kind: Kind, n: usize, a: &StrictPartition, b: &StrictPartition) -> Result<ProductReport> {
    Ok(ProductReport {
        kind,
        n,
        a: a.clone(),
        b: b.clone(),
        product: ring::structure_constants(kind, n, a, b)?,
    })
}

fn render_product(format: Format, r: &ProductReport) -> Result<String> {
    let mut s = String::new();
    match format {
        Format::Json => return Ok(to_json(r)),
        Format::Csv => {
            s.push_str("partition,q,coeff\n");
            for t in &r.product {
                let _ = writeln!(s, "\"{}\",{},{}", t.class, t.q_degree, t.coeff);
            }
        }
        Format::Text => {
            let product = RingElement::from_terms(r.kind, r.n, r.product.iter().cloned())?;
            let _ = writeln!(
                s,
                "{}·{} = {product}",
                class_name(r.kind, r.n, &r.a)?,
                class_name(r.kind, r.n, &r.b)?
            );
        }
    }
    Ok(s)
}

pub fn operator_report(kind: Kind, n: usize, class: &StrictPartition) -> Result<OperatorReport> {
    let op = spectral::operator_matrix(kind, n, class)?;
    let tables = ring::evaluation_tables(kind, n)?;
    let m = op.entries();
    Ok(OperatorReport {
        kind,
        n,
        class: class.clone(),
        basis: tables.basis().classes().to_vec(),
        entries: (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect(),
    })
}

fn render_operator(format: Format, r: &OperatorReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            let header: Vec<String> = r.basis.iter().map(|c| format!("\"{c}\"")).collect();
            let _ = writeln!(s, "row,{}", header.join(","));
            for (c, row) in r.basis.iter().zip(&r.entries) {
                let _ = writeln!(s, "\"{c}\",{}", join(row, ","));
            }
        }
        Format::Text => {
            let _ = writeln!(
                s,
                "multiplication by ({}) on {}({}) at q = 1; row ν, column μ",
                r.class,
                r.kind.as_str().to_uppercase(),
                r.n
            );
            for (c, row) in r.basis.iter().zip(&r.entries) {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                let _ = writeln!(s, "{:>12} | {}", format!("({c})"), cells.join(" "));
            }
        }
    }
    s
}

/// Eigenvalues of `[c₁]`, or of multiplication by `class` when given, one per Peterson point.
pub fn spectrum_report(kind: Kind, n: usize, class: Option<&StrictPartition>) -> Result<SpectrumReport> {
    let points = peterson::points(kind, n)?;
    let (operator, values) = match class {
        None => ("c1".to_string(), spectral::c1_spectrum(kind, n)?),
        Some(c) => (
            class_name(kind, n, c)?,
            spectral::eigenpairs(kind, n, c)?.into_iter().map(|e| e.value).collect(),
        ),
    };
    Ok(SpectrumReport {
        kind,
        n,
        operator,
        eigenvalues: points
            .iter()
            .zip(values)
            .map(|(p, z)| Eigenvalue { doubled: p.tuple().doubled_indices().to_vec(), re: z.re, im: z.im })
            .collect(),
    })
}

fn render_spectrum(format: Format, r: &SpectrumReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("re,im\n");
            for e in &r.eigenvalues {
                let _ = writeln!(s, "{},{}", num(e.re), num(e.im));
            }
        }
        Format::Text => {
            let _ = writeln!(s, "eigenvalues of [{}] on {}({})", r.operator, r.kind.as_str().to_uppercase(), r.n);
            for e in &r.eigenvalues {
                let _ = writeln!(s, "[{}]  {}", join(&e.doubled, ", "), complex_text(Complex64::new(e.re, e.im)));
            }
        }
    }
    s
}

fn render_conjecture(format: Format, r: &ConjectureOReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("re,im,multiplicity\n");
            for e in &r.spectrum {
                let _ = writeln!(s, "{},{},{}", num(e.re), num(e.im), e.multiplicity);
            }
        }
        Format::Text => {
            let mark = |b: bool| if b { "pass" } else { "FAIL" };
            let _ = writeln!(s, "{}({}): Fano index {}, T0 = {}", r.kind.as_str().to_uppercase(), r.n, r.fano_index, num(r.t0));
            let _ = writeln!(s, "  T0 is an eigenvalue:               {}", mark(r.conditions.c1));
            let _ = writeln!(s, "  modulus-T0 values are T0·roots of 1: {}", mark(r.conditions.c2));
            let _ = writeln!(s, "  T0 is simple:                      {}", mark(r.conditions.c3));
            let _ = writeln!(
                s,
                "  max-modulus eigenvalues: {} (closed tuples: {})",
                r.max_modulus_count, r.expected_max_modulus_count
            );
            let _ = writeln!(s, "  status: {}", serde_json::to_value(r.status).unwrap_or_default().as_str().unwrap_or("?"));
            for d in &r.diagnostics {
                let _ = writeln!(s, "  note: {d}");
            }
        }
    }
    s
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.into(), passed, detail: detail.into() }
}

/// Largest `n` at which `verify` checks the eigen-residual of every class;
/// above it only the one-row classes are checked.
pub const VERIFY_ALL_CLASSES_MAX_N: usize = 5;

/// The full identity suite for one ring.
pub fn verify(kind: Kind, n: usize, tol: f64) -> Result<VerifyReport> {
    let mut checks = Vec::new();
    let tables = match ring::evaluation_tables(kind, n) {
        Ok(t) => t,
        Err(e) => {
            checks.push(check("evaluation tables", false, e.to_string()));
            return Ok(VerifyReport { kind, n, passed: false, checks });
        }
    };

    let id = tables.identity_residual();
    checks.push(check("dual transform inverts evaluations", id <= 1e-8, format!("residual {id:e}")));
    let orth = tables.orthogonality_residual();
    checks.push(check("orthogonality", orth <= 1e-8, format!("relative residual {orth:e}")));

    let pts = tables.points();
    let q_err = pts.iter().map(|p| (peterson::evaluate_q(p) - 1.0).norm()).fold(0.0, f64::max);
    checks.push(check("q = 1 at every point", q_err <= 1e-10, format!("max |q - 1| = {q_err:e}")));
    let rel = pts.iter().map(peterson::relation_residuals).fold(0.0, f64::max);
    checks.push(check("Peterson relations", rel <= 1e-9, format!("max residual {rel:e}")));

    match ring::verify_presentation(kind, n) {
        Ok(report) => {
            let failed: Vec<String> = report.failures().map(|c| format!("{}: {}", c.name, c.discrepancy)).collect();
            checks.push(check(
                "presentation and Giambelli",
                failed.is_empty(),
                if failed.is_empty() {
                    format!("{} identities hold", report.checks.len())
                } else {
                    failed.join("; ")
                },
            ));
        }
        Err(e) => checks.push(check("presentation and Giambelli", false, e.to_string())),
    }

    match ring::euler_evaluations(kind, n) {
        Ok(values) => {
            let smallest = values.iter().map(|v| v.0.norm()).fold(f64::INFINITY, f64::min);
            let mismatch = values
                .iter()
                .map(|(v, t)| (v - t).norm() / t.norm())
                .fold(0.0, f64::max);
            checks.push(check(
                "quantum Euler class",
                smallest > 1e-6 && mismatch <= 1e-7,
                format!("min |e_q| = {smallest:e}, relative mismatch {mismatch:e}"),
            ));
        }
        Err(e) => checks.push(check("quantum Euler class", false, e.to_string())),
    }

    let classes: Vec<StrictPartition> = tables
        .basis()
        .classes()
        .iter()
        .filter(|c| n <= VERIFY_ALL_CLASSES_MAX_N || c.len() <= 1)
        .cloned()
        .collect();
    let mut worst: f64 = 0.0;
    let mut eigen_error = None;
    for c in &classes {
        match spectral::operator_matrix(kind, n, c).and_then(|op| Ok((spectral::eigenpairs(kind, n, c)?, op))) {
            Ok((pairs, op)) => {
                let a = op.norm_inf();
                for pair in &pairs {
                    worst = worst.max(op.eigen_residual(pair) / (a * pair.norm_inf()));
                }
            }
            Err(e) => eigen_error = Some(e.to_string()),
        }
    }
    checks.push(check(
        format!("eigenpairs ({} classes)", classes.len()),
        eigen_error.is_none() && worst <= 1e-8,
        eigen_error.unwrap_or_else(|| format!("max scaled residual {worst:e}")),
    ));

    match spectral::conjecture_o(kind, n, tol) {
        Ok(r) => checks.push(check(
            "Conjecture O",
            r.passed(),
            format!(
                "T0 = {}, conditions {}/{}/{}, {} max-modulus eigenvalues",
                num(r.t0),
                r.conditions.c1,
                r.conditions.c2,
                r.conditions.c3,
                r.max_modulus_count
            ),
        )),
        Err(e) => checks.push(check("Conjecture O", false, e.to_string())),
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { kind, n, passed, checks })
}

fn render_verify(format: Format, r: &VerifyReport) -> String {
    let mut s = String::new();
    match format {
        Format::Json => return to_json(r),
        Format::Csv => {
            s.push_str("check,passed,detail\n");
            for c in &r.checks {
                let _ = writeln!(s, "\"{}\",{},\"{}\"", c.name, c.passed, c.detail.replace('"', "'"));
            }
        }
        Format::Text => {
            for c in &r.checks {
                let _ = writeln!(s, "[{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
            }
            let _ = writeln!(
                s,
                "{}({}): {}",
                r.kind.as_str().to_uppercase(),
                r.n,
                if r.passed { "all checks passed" } else { "verification FAILED" }
            );
        }
    }
    s
}
