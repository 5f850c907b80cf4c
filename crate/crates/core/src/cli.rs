//! Command-line front end. Every command renders into a string, so output is
//! byte-identical for identical arguments.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::berezin::{
    berezin_at, berezin_transform, bessel_form_check, latex_identities, verify_berezin,
    verify_pde_system, verify_raising_identity,
};
use crate::coherent::{coherent_state, leibniz_closed_form, leibniz_numeric, verify_coherent};
use crate::error::{Error, Result};
use crate::exact::gaussian::rational_to_string;
use crate::exact::json::ToJson;
use crate::exact::{parse_rational, GaussianRational, MultiPoly, Var};
use crate::fock::{
    gram_matrix, positivity_probe, verify_adjointness, verify_gram, verify_hat_relations,
    MultiIndex,
};
use crate::lie::{
    build_algebra, conjugation_check, verify_observables, verify_relations, OperatorExpr,
    OperatorWord,
};
use crate::observables::{
    basis_polynomials, characteristic_function, moment_positivity_probe, moments,
    orthogonality_check, spectral_transform, v_to_z, verify_basis, verify_coordinates,
    verify_moments, z_to_v,
};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "son2",
    version,
    about = "Exact coherent-state quantization of so(n,2)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        default_value = "text",
        env = "SON2_FORMAT"
    )]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// `τ` on the command line: an exact rational or `symbolic`.
#[derive(Clone, Debug, PartialEq)]
pub enum Tau {
    Symbolic,
    Value(BigRational),
}

impl Tau {
    fn label(&self) -> String {
        match self {
            Tau::Symbolic => "symbolic".into(),
            Tau::Value(t) => rational_to_string(t),
        }
    }

    fn apply(&self, p: &MultiPoly) -> MultiPoly {
        match self {
            Tau::Symbolic => p.clone(),
            Tau::Value(t) => p.evaluate(&[(Var::Tau, GaussianRational::real(t.clone()))]),
        }
    }

    fn require_value(&self, what: &str) -> Result<&BigRational> {
        match self {
            Tau::Value(t) => Ok(t),
            Tau::Symbolic => Err(Error::Parse(format!("{what} needs a numeric --tau"))),
        }
    }
}

fn parse_tau(s: &str) -> std::result::Result<Tau, String> {
    if s == "symbolic" {
        return Ok(Tau::Symbolic);
    }
    parse_rational(s).map(Tau::Value).map_err(|e| e.to_string())
}

fn parse_point(s: &str) -> std::result::Result<GaussianRational, String> {
    parse_rational(s)
        .map(GaussianRational::real)
        .map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct Dim {
    /// Number of spatial dimensions.
    #[arg(long, default_value_t = 2, env = "SON2_N", value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// Seed for the random rational test points.
    #[arg(long, default_value_t = 0, env = "SON2_SEED")]
    pub seed: u64,
    /// Bound on numerators and denominators of random points.
    #[arg(long, default_value_t = 7, env = "SON2_HEIGHT", value_parser = clap::value_parser!(i64).range(1..))]
    pub height: i64,
    /// Random points per suite.
    #[arg(long, default_value_t = 20, env = "SON2_SAMPLES")]
    pub samples: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Gram matrix of the Fock basis.
    Gram(GramArgs),
    /// Joint moments E[x^k] of the commuting observables.
    Moments(TableArgs),
    /// Basis polynomials p_k(x) with p_k(X) Omega = |k>.
    BasisPoly(BasisArgs),
    /// Taylor coefficients of the spectral transform h(z)^(-t).
    Transform(TransformArgs),
    /// Exact positivity probe of the Gram or moment matrix.
    Probe(ProbeArgs),
    /// The Leibniz function at a point or as a series.
    Leibniz(LeibnizArgs),
    /// The coherent state exp(v.R) Omega.
    Coherent(CoherentArgs),
    /// Coherent-state symbol of an operator word.
    Symbol(SymbolArgs),
    /// Coordinates v and scale h^2 from spectral coordinates z.
    ZToV(ZArgs),
    /// Spectral coordinates z and scale h^2 from v.
    VToZ(CoherentArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub dim: Dim,
    #[command(flatten)]
    pub sampling: Sampling,
    /// Truncation degree for Fock-space suites.
    #[arg(long, default_value_t = 4, env = "SON2_DEGREE")]
    pub degree: u32,
    /// Longest operator word in the Wick-recipe check.
    #[arg(long, default_value_t = 2, env = "SON2_WORD_LEN")]
    pub word_len: usize,
    #[arg(long)]
    pub lie: bool,
    #[arg(long)]
    pub coherent: bool,
    #[arg(long)]
    pub fock: bool,
    #[arg(long)]
    pub berezin: bool,
    #[arg(long)]
    pub observables: bool,
    #[arg(long)]
    pub all: bool,
    /// Also print the checked Berezin identities in LaTeX.
    #[arg(long)]
    pub emit_latex: bool,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[command(flatten)]
    pub dim: Dim,
    #[arg(long, default_value_t = 3, env = "SON2_DEGREE")]
    pub degree: u32,
    /// `p/q` or `symbolic`.
    #[arg(long, default_value = "symbolic", env = "SON2_TAU", value_parser = parse_tau, allow_hyphen_values = true)]
    pub tau: Tau,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub dim: Dim,
    #[arg(long, default_value_t = 4, env = "SON2_DEGREE")]
    pub degree: u32,
    #[arg(long, default_value = "symbolic", env = "SON2_TAU", value_parser = parse_tau, allow_hyphen_values = true)]
    pub tau: Tau,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[command(flatten)]
    pub dim: Dim,
    /// Largest |k|.
    #[arg(long, default_value_t = 3, env = "SON2_KMAX")]
    pub kmax: u32,
    #[arg(long, default_value = "symbolic", env = "SON2_TAU", value_parser = parse_tau, allow_hyphen_values = true)]
    pub tau: Tau,
}

#[derive(Args, Debug)]
pub struct TransformArgs {
    #[command(flatten)]
    pub dim: Dim,
    #[arg(long, default_value_t = 4, env = "SON2_DEGREE")]
    pub degree: u32,
    /// Coefficients of the characteristic function h(is)^(-t) instead.
    #[arg(long)]
    pub characteristic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProbeKind {
    Gram,
    Moments,
}

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub dim: Dim,
    #[arg(long, value_enum, default_value = "gram")]
    pub kind: ProbeKind,
    #[arg(long, default_value_t = 3, env = "SON2_DEGREE")]
    pub degree: u32,
    #[arg(long, env = "SON2_TAU", value_parser = parse_tau, allow_hyphen_values = true)]
    pub tau: Tau,
}

#[derive(Args, Debug)]
pub struct LeibnizArgs {
    #[command(flatten)]
    pub dim: Dim,
    /// Comma-separated rationals; with --v evaluates 1 - 2w.v + w^2 v^2.
    #[arg(long, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub w: Vec<GaussianRational>,
    #[arg(long, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub v: Vec<GaussianRational>,
    /// Series bidegree when no point is given.
    #[arg(long, default_value_t = 2, env = "SON2_DEGREE")]
    pub degree: u32,
}

#[derive(Args, Debug)]
pub struct CoherentArgs {
    /// Comma-separated rationals.
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub v: Vec<GaussianRational>,
}

#[derive(Args, Debug)]
pub struct ZArgs {
    /// Comma-separated rationals.
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub z: Vec<GaussianRational>,
}

#[derive(Args, Debug)]
pub struct SymbolArgs {
    #[command(flatten)]
    pub dim: Dim,
    /// Operator word, e.g. `R1 L2` or `i rho12`.
    #[arg(long)]
    pub word: String,
    #[arg(long, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub w: Vec<GaussianRational>,
    #[arg(long, value_delimiter = ',', value_parser = parse_point, allow_hyphen_values = true)]
    pub v: Vec<GaussianRational>,
}

/// Rendered output and exit code (`0` pass, `1` failed check or singular input).
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Verify(a) => cmd_verify(a, f),
        Command::Gram(a) => cmd_gram(a, f),
        Command::Moments(a) => cmd_moments(a, f),
        Command::BasisPoly(a) => cmd_basis(a, f),
        Command::Transform(a) => cmd_transform(a, f),
        Command::Probe(a) => cmd_probe(a, f),
        Command::Leibniz(a) => cmd_leibniz(a, f),
        Command::Coherent(a) => cmd_coherent(a, f),
        Command::Symbol(a) => cmd_symbol(a, f),
        Command::ZToV(a) => cmd_z_to_v(a, f),
        Command::VToZ(a) => cmd_v_to_z(a, f),
    }
}

/// Parses `std::env::args`, runs, prints, and returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_row<S: AsRef<str>>(fields: &[S]) -> String {
    let cells: Vec<String> = fields.iter().map(|s| csv_field(s.as_ref())).collect();
    cells.join(",") + "\n"
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn index_json(k: &MultiIndex) -> Value {
    json!(k.parts())
}

fn suite(name: &str, r: Result<Report>) -> Report {
    r.unwrap_or_else(|e| {
        let mut rep = Report::new(name);
        rep.error("suite could not run", e);
        rep
    })
}

fn cmd_verify(a: &VerifyArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let d = a.degree;
    let s = &a.sampling;
    let none = !(a.lie || a.coherent || a.fock || a.berezin || a.observables);
    let pick = |flag: bool| a.all || none || flag;
    let mut reports = Vec::new();
    if pick(a.lie) {
        reports.push(suite(
            "lie",
            build_algebra(n).map(|alg| verify_relations(&alg)),
        ));
        reports.push(suite("observables", verify_observables(n)));
        if n >= 2 {
            reports.push(suite("conjugation", conjugation_check(n)));
        }
    }
    if pick(a.coherent) {
        reports.push(suite(
            "coherent",
            verify_coherent(n, s.samples, s.seed, s.height, n <= 2),
        ));
    }
    if pick(a.fock) {
        reports.push(suite("hat", verify_hat_relations(n, d.max(3))));
        reports.push(suite("adjointness", verify_adjointness(n, d.max(2))));
        reports.push(suite(
            "gram",
            verify_gram(n, d, s.samples, s.seed, s.height),
        ));
    }
    if pick(a.berezin) {
        reports.push(suite("raising", verify_raising_identity(n, d.min(3))));
        reports.push(suite("pde", verify_pde_system(n)));
        reports.push(suite("bessel", bessel_form_check(n, d.max(2))));
        reports.push(suite("berezin", verify_berezin(n, d.min(3), a.word_len)));
    }
    if pick(a.observables) {
        reports.push(suite(
            "coordinates",
            verify_coordinates(n, s.samples, s.seed, s.height, n <= 3),
        ));
        reports.push(suite("moments", verify_moments(n, d)));
        reports.push(suite("basis", verify_basis(n, d)));
        reports.push(suite(
            "orthogonality",
            orthogonality_check(n, &BigRational::from_integer(3.into()), d.min(4)),
        ));
    }
    let passed = reports.iter().all(Report::all_passed);
    let total: usize = reports.iter().map(Report::len).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    let latex = if a.emit_latex && pick(a.berezin) {
        latex_identities(n)?
    } else {
        Vec::new()
    };
    let mut out = String::new();
    match f {
        Format::Text => {
            for r in &reports {
                out.push_str(&r.to_string());
            }
            for l in &latex {
                writeln!(out, "\\[ {l} \\]").unwrap();
            }
            writeln!(out, "{total} checks, {failed} failed").unwrap();
        }
        Format::Json => {
            let mut v = json!({ "n": n, "degree": d, "passed": passed, "checks": total, "failed": failed, "reports": reports });
            if !latex.is_empty() {
                v["latex"] = json!(latex);
            }
            out = pretty(&v);
        }
        Format::Csv => {
            out.push_str(&csv_row(&["suite", "check", "status", "detail"]));
            for r in &reports {
                for c in &r.checks {
                    let status = if c.passed { "PASS" } else { "FAIL" };
                    out.push_str(&csv_row(&[
                        r.suite.as_str(),
                        &c.name,
                        status,
                        c.detail.as_deref().unwrap_or(""),
                    ]));
                }
            }
        }
    }
    Ok(Outcome {
        code: if passed { 0 } else { 1 },
        stdout: out,
    })
}

fn poly_json(p: &MultiPoly) -> Value {
    json!({ "display": p.to_string(), "terms": p.to_json() })
}

fn cmd_gram(a: &GramArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let g = gram_matrix(n, a.degree)?;
    let basis = g.space.basis().to_vec();
    let cell = |i: usize, j: usize| a.tau.apply(g.entries.get(i, j));
    let mut out = String::new();
    match f {
        Format::Text => {
            writeln!(
                out,
                "Gram matrix n={n} degree<={} tau={}",
                a.degree,
                a.tau.label()
            )
            .unwrap();
            for (i, k) in basis.iter().enumerate() {
                let row: Vec<String> = (0..basis.len()).map(|j| cell(i, j).to_string()).collect();
                writeln!(out, "{k}: {}", row.join(" | ")).unwrap();
            }
        }
        Format::Csv => {
            let mut header = vec![String::new()];
            header.extend(basis.iter().map(MultiIndex::to_string));
            out.push_str(&csv_row(&header));
            for (i, k) in basis.iter().enumerate() {
                let mut row = vec![k.to_string()];
                row.extend((0..basis.len()).map(|j| cell(i, j).to_export_string()));
                out.push_str(&csv_row(&row));
            }
        }
        Format::Json => {
            let rows: Vec<Value> = (0..basis.len())
                .map(|i| Value::Array((0..basis.len()).map(|j| cell(i, j).to_json()).collect()))
                .collect();
            out = pretty(&json!({
                "n": n,
                "degree": a.degree,
                "tau": a.tau.label(),
                "basis": basis.iter().map(index_json).collect::<Vec<_>>(),
                "entries": rows,
            }));
        }
    }
    Ok(Outcome::ok(out))
}

/// A column of polynomials indexed by multi-indices.
fn indexed_table(
    title: &str,
    column: &str,
    rows: &[(MultiIndex, MultiPoly)],
    meta: Value,
    f: Format,
) -> String {
    let mut out = String::new();
    match f {
        Format::Text => {
            writeln!(out, "{title}").unwrap();
            for (k, p) in rows {
                writeln!(out, "{k}: {p}").unwrap();
            }
        }
        Format::Csv => {
            out.push_str(&csv_row(&["k", column]));
            for (k, p) in rows {
                out.push_str(&csv_row(&[k.to_string(), p.to_export_string()]));
            }
        }
        Format::Json => {
            let entries: Vec<Value> = rows
                .iter()
                .map(|(k, p)| json!({ "k": index_json(k), column: poly_json(p) }))
                .collect();
            let mut v = meta;
            v["entries"] = Value::Array(entries);
            out = pretty(&v);
        }
    }
    out
}

fn cmd_moments(a: &TableArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let table = moments(n, a.degree)?;
    let rows: Vec<_> = table
        .entries
        .iter()
        .map(|(k, p)| (k.clone(), a.tau.apply(p)))
        .collect();
    let title = format!(
        "moments E[x^k] n={n} |k|<={} tau={}",
        a.degree,
        a.tau.label()
    );
    let meta = json!({ "n": n, "degree": a.degree, "tau": a.tau.label() });
    Ok(Outcome::ok(indexed_table(&title, "moment", &rows, meta, f)))
}

fn cmd_basis(a: &BasisArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let rows: Vec<_> = basis_polynomials(n, a.kmax)?
        .into_iter()
        .map(|b| (b.k, a.tau.apply(&b.poly)))
        .collect();
    let title = format!(
        "basis polynomials p_k(x) n={n} |k|<={} tau={}",
        a.kmax,
        a.tau.label()
    );
    let meta = json!({ "n": n, "kmax": a.kmax, "tau": a.tau.label() });
    Ok(Outcome::ok(indexed_table(&title, "poly", &rows, meta, f)))
}

fn cmd_transform(a: &TransformArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let (series, title) = if a.characteristic {
        (
            characteristic_function(n, a.degree)?,
            "characteristic function [s^k] h(is)^-t",
        )
    } else {
        (
            spectral_transform(n, a.degree)?,
            "spectral transform [z^k] h(z)^-t",
        )
    };
    let zvars: Vec<Var> = (1..=n).map(|j| Var::Z(j as u8)).collect();
    let rows: Vec<_> = MultiIndex::up_to(n, a.degree)
        .into_iter()
        .map(|k| {
            let c = series.extract(&zvars, k.parts());
            (k, c)
        })
        .collect();
    let title = format!("{title} n={n} |k|<={}", a.degree);
    let meta = json!({ "n": n, "degree": a.degree, "characteristic": a.characteristic });
    Ok(Outcome::ok(indexed_table(
        &title,
        "coefficient",
        &rows,
        meta,
        f,
    )))
}

fn cmd_probe(a: &ProbeArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let tau = a.tau.require_value("probe")?;
    let value = match a.kind {
        ProbeKind::Gram => serde_json::to_value(positivity_probe(n, a.degree, tau)?),
        ProbeKind::Moments => serde_json::to_value(moment_positivity_probe(n, tau, a.degree)?),
    }
    .map_err(|e| Error::Parse(e.to_string()))?;
    let verdict = value["definiteness"].as_str().unwrap_or("").to_string();
    let out = match f {
        Format::Json => pretty(&value),
        Format::Text => format!(
            "{:?} probe n={n} degree<={} tau={}: {verdict} (min eigenvalue ~ {:.3e})\n",
            a.kind,
            a.degree,
            rational_to_string(tau),
            value["min_eigenvalue"].as_f64().unwrap_or(f64::NAN)
        ),
        Format::Csv => {
            csv_row(&["kind", "n", "degree", "tau", "definiteness"])
                + &csv_row(&[
                    format!("{:?}", a.kind).to_lowercase(),
                    n.to_string(),
                    a.degree.to_string(),
                    rational_to_string(tau),
                    verdict,
                ])
        }
    };
    Ok(Outcome::ok(out))
}

fn vector_out(label: &str, entries: &[(String, GaussianRational)], f: Format) -> String {
    match f {
        Format::Text => {
            let mut out = format!("{label}\n");
            for (name, x) in entries {
                writeln!(out, "{name} = {x}").unwrap();
            }
            out
        }
        Format::Csv => {
            let names: Vec<&str> = entries.iter().map(|(n, _)| n.as_str()).collect();
            let values: Vec<String> = entries.iter().map(|(_, x)| x.to_string()).collect();
            csv_row(&names) + &csv_row(&values)
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = entries
                .iter()
                .map(|(n, x)| (n.clone(), x.to_json()))
                .collect();
            pretty(&json!({ "label": label, "values": map }))
        }
    }
}

fn named(prefix: &str, xs: &[GaussianRational]) -> Vec<(String, GaussianRational)> {
    xs.iter()
        .enumerate()
        .map(|(j, x)| (format!("{prefix}{}", j + 1), x.clone()))
        .collect()
}

fn cmd_leibniz(a: &LeibnizArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    if a.w.is_empty() && a.v.is_empty() {
        let (value, series) = leibniz_closed_form(n, a.degree)?;
        let rows = [
            ("base".to_string(), value.base),
            ("series".to_string(), series),
        ];
        let out = match f {
            Format::Text => format!(
                "U = P^(-t/2), P = {}\nseries through bidegree {}: {}\n",
                rows[0].1, a.degree, rows[1].1
            ),
            Format::Csv => {
                csv_row(&["quantity", "polynomial"])
                    + &rows
                        .iter()
                        .map(|(k, p)| csv_row(&[k.clone(), p.to_export_string()]))
                        .collect::<String>()
            }
            Format::Json => pretty(&json!({
                "n": n,
                "degree": a.degree,
                "exponent": value.exponent.to_string(),
                "base": poly_json(&rows[0].1),
                "series": poly_json(&rows[1].1),
            })),
        };
        return Ok(Outcome::ok(out));
    }
    if a.w.len() != n || a.v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "--w and --v need {n} entries each"
        )));
    }
    let p = leibniz_numeric(&a.w, &a.v)?;
    Ok(Outcome::ok(vector_out(
        "1 - 2w.v + w^2 v^2",
        &[("P".into(), p)],
        f,
    )))
}

fn state_names(n: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..=n).map(|j| format!("s{j}")).collect();
    names.push("a".into());
    names.push("b".into());
    names
}

fn cmd_coherent(a: &CoherentArgs, f: Format) -> Result<Outcome> {
    let s = coherent_state(&a.v)?;
    let entries: Vec<_> = state_names(a.v.len())
        .into_iter()
        .zip(s.entries().iter().cloned())
        .collect();
    Ok(Outcome::ok(vector_out("exp(v.R) Omega", &entries, f)))
}

fn cmd_symbol(a: &SymbolArgs, f: Format) -> Result<Outcome> {
    let n = a.dim.n as usize;
    let q = OperatorExpr::word(OperatorWord::parse(&a.word)?);
    if q.max_index() > n {
        return Err(Error::InvalidIndex(format!("`{}` with n = {n}", a.word)));
    }
    let symbol = berezin_transform(n, &q)?;
    let value = if a.w.is_empty() && a.v.is_empty() {
        None
    } else {
        Some(berezin_at(n, &q, &a.w, &a.v)?)
    };
    let out = match f {
        Format::Text => {
            let mut out = format!("<{q}> = {symbol}\n");
            if let Some(v) = &value {
                writeln!(out, "at the point: {v}").unwrap();
            }
            out
        }
        Format::Csv => {
            csv_row(&["word", "numerator", "p_power", "value"])
                + &csv_row(&[
                    q.to_string(),
                    symbol.numerator.to_export_string(),
                    symbol.power.to_string(),
                    value
                        .as_ref()
                        .map(MultiPoly::to_export_string)
                        .unwrap_or_default(),
                ])
        }
        Format::Json => pretty(&json!({
            "word": q.to_string(),
            "numerator": poly_json(&symbol.numerator),
            "p_power": symbol.power,
            "value": value.as_ref().map(poly_json),
        })),
    };
    Ok(Outcome::ok(out))
}

fn cmd_z_to_v(a: &ZArgs, f: Format) -> Result<Outcome> {
    let (v, h2) = z_to_v(&a.z)?;
    let mut entries = named("v", &v);
    entries.push(("h2".into(), h2));
    Ok(Outcome::ok(vector_out("v(z) and h^2", &entries, f)))
}

fn cmd_v_to_z(a: &CoherentArgs, f: Format) -> Result<Outcome> {
    let (z, h2) = v_to_z(&a.v)?;
    let mut entries = named("z", &z);
    entries.push(("h2".into(), h2));
    Ok(Outcome::ok(vector_out("z(v) and h^2", &entries, f)))
}
