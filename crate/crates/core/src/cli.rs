//! Command-line front end. Everything except process exit lives here so it
//! can be driven from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cohoring::{
    dual_basis, gram_matrix, modified_pairing, monomial_basis, CohClass, EquivWeights, FactorWeights,
    HLaurent, LaurentPoly,
};
use crate::error::Error;
use crate::exactnum::{QSeries, Rational};
use crate::hypergeom::{iv_series, BundleSpec};
use crate::invariants::{aspinwall_morrison, local_p2_with, small_product_localp2, InvariantTable};
use crate::mirrormap::{run_mirror_with, MirrorOptions};
use crate::oracle::{run_suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

/// Printed above every J-series; the prefactor is never evaluated.
pub const BANNER: &str = "# J = exp((t0 + H t1)/hbar) * S(Q, hbar),  Q = exp(t1)";

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Subcommand {
    /// Hypergeometric series I_V
    Iv,
    /// Mirror map and reduced J-series
    Mirror,
    /// Enumerative invariants
    Invariants,
    /// Equivariant validation suite
    Oracle,
    /// Modified pairing, dual basis, small product
    Ring,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Preset {
    AspinwallMorrison,
    LocalP2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "concavex", version, about = "Genus-zero local invariants of concavex bundles on P^s")]
struct Args {
    #[arg(value_enum)]
    command: Subcommand,
    /// Dimension of the base P^s
    #[arg(long)]
    s: Option<usize>,
    /// Positive degrees, comma separated
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    /// Negative degrees (as positive integers), comma separated
    #[arg(long, value_delimiter = ',')]
    l: Vec<u32>,
    #[arg(long, value_enum, conflicts_with_all = ["s", "k", "l"])]
    preset: Option<Preset>,
    /// Truncation order in q
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Truncation order in z (oracle only)
    #[arg(long, default_value_t = 3)]
    zorder: usize,
    /// Number of weight vectors (oracle only)
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    seeds: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Torus weights, comma separated rationals
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    /// Write the rendered output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Verify the mirror change of variables both ways
    #[arg(long)]
    check_roundtrip: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunRequest {
    pub command: Subcommand,
    pub spec: BundleSpec,
    pub order: usize,
    pub zorder: usize,
    pub seeds: usize,
    pub format: Format,
    pub weights: Option<EquivWeights>,
    pub out: Option<PathBuf>,
    pub check_roundtrip: bool,
}

#[derive(Debug)]
pub enum UsageError {
    /// `--help` or `--version`: print and exit 0.
    Info(String),
    Invalid(String),
}

impl UsageError {
    pub fn exit_code(&self) -> i32 {
        match self {
            UsageError::Info(_) => EXIT_OK,
            UsageError::Invalid(_) => EXIT_USAGE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            UsageError::Info(m) | UsageError::Invalid(m) => m,
        }
    }
}

pub fn parse_args<I, T>(argv: I) -> Result<RunRequest, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => UsageError::Info(e.to_string()),
            _ => UsageError::Invalid(e.to_string()),
        }
    })?;
    let spec = match args.preset {
        Some(Preset::AspinwallMorrison) => BundleSpec::aspinwall_morrison(),
        Some(Preset::LocalP2) => BundleSpec::local_p2(),
        None => {
            let s = args
                .s
                .ok_or_else(|| UsageError::Invalid("--s is required unless --preset is given".into()))?;
            BundleSpec::new(s, args.k, args.l).map_err(|e| UsageError::Invalid(format!("--k/--l: {e}")))?
        }
    };
    let weights = match args.weights {
        None => None,
        Some(raw) => {
            let values = raw
                .iter()
                .map(|v| v.trim().parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| UsageError::Invalid(format!("--weights: {e}")))?;
            if values.len() != spec.s() + 1 {
                return Err(UsageError::Invalid(format!(
                    "--weights: expected {} values, got {}",
                    spec.s() + 1,
                    values.len()
                )));
            }
            Some(EquivWeights::new(values).map_err(|e| UsageError::Invalid(format!("--weights: {e}")))?)
        }
    };
    Ok(RunRequest {
        command: args.command,
        spec,
        order: args.order,
        zorder: args.zorder,
        seeds: args.seeds as usize,
        format: args.format,
        weights,
        out: args.out,
        check_roundtrip: args.check_roundtrip,
    })
}

/// Machine-readable output of the series pipelines.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Payload {
    pub spec: BundleSpec,
    pub order: usize,
    /// `(d, a, e, value)`: coefficient of `q^d H^a hbar^e`.
    pub coefficients: Vec<(usize, usize, i64, String)>,
    pub i1: Vec<String>,
    pub invariants: Vec<InvariantEntry>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct InvariantEntry {
    pub d: u32,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub descendant: Option<String>,
}

impl Payload {
    fn new(spec: &BundleSpec, order: usize) -> Self {
        Payload { spec: spec.clone(), order, coefficients: Vec::new(), i1: Vec::new(), invariants: Vec::new() }
    }

    fn with_series(mut self, series: &QSeries<HLaurent>) -> Self {
        for (d, c) in series.coeffs().iter().enumerate() {
            for (a, e, v) in c.cells() {
                self.coefficients.push((d, a, e, v.to_string()));
            }
        }
        self
    }

    fn with_i1(mut self, i1: &QSeries<Rational>) -> Self {
        self.i1 = i1.coeffs().iter().map(ToString::to_string).collect();
        self
    }

    fn with_table(mut self, table: &InvariantTable) -> Self {
        self.invariants = table
            .rows
            .iter()
            .map(|r| InvariantEntry {
                d: r.degree,
                value: r.value.to_string(),
                descendant: r.descendant.as_ref().map(ToString::to_string),
            })
            .collect();
        self
    }
}

/// Rendered text plus exit status.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
    /// Diagnostics for stderr.
    pub message: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK, message: None }
    }

    fn error(err: &Error) -> Self {
        let code = match err {
            Error::HypothesisViolation(_) => EXIT_HYPOTHESIS,
            Error::WeightCollision(_) => EXIT_GENERICITY,
            Error::InvalidBundle(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
            _ => EXIT_ORACLE,
        };
        Outcome { text: String::new(), code, message: Some(format!("error: {err}")) }
    }
}

pub fn run(req: &RunRequest) -> Outcome {
    let result = match req.command {
        Subcommand::Iv => Ok(render_iv(req)),
        Subcommand::Mirror => render_mirror(req),
        Subcommand::Invariants => render_invariants(req),
        Subcommand::Oracle => return render_oracle(req),
        Subcommand::Ring => render_ring(req),
    };
    match result {
        Ok(text) => Outcome::ok(text),
        Err(e) => Outcome::error(&e),
    }
}

fn render_iv(req: &RunRequest) -> String {
    let series = iv_series(&req.spec, req.order);
    let payload = Payload::new(&req.spec, req.order).with_series(&series);
    render_payload(&payload, req.format, &format!("# I_V for {}", req.spec))
}

fn render_mirror(req: &RunRequest) -> crate::Result<String> {
    let opts = MirrorOptions { check_roundtrip: req.check_roundtrip };
    let r = run_mirror_with(&req.spec, req.order, opts)?;
    let payload = Payload::new(&req.spec, req.order).with_series(&r.jseries).with_i1(&r.i1);
    let title = format!("# {} ({})\n{BANNER}", req.spec, r.case);
    Ok(render_payload(&payload, req.format, &title))
}

fn render_invariants(req: &RunRequest) -> crate::Result<String> {
    let order = req.order as u32;
    let opts = MirrorOptions { check_roundtrip: req.check_roundtrip };
    let spec = &req.spec;
    let payload = if *spec == BundleSpec::aspinwall_morrison() {
        Payload::new(spec, req.order).with_table(&aspinwall_morrison(order))
    } else if *spec == BundleSpec::local_p2() {
        let r = run_mirror_with(spec, req.order, opts)?;
        let table = local_p2_with(order, opts)?;
        Payload::new(spec, req.order).with_i1(&r.i1).with_table(&table)
    } else {
        // no named invariant outside the two worked geometries: full grid
        let r = run_mirror_with(spec, req.order, opts)?;
        Payload::new(spec, req.order).with_series(&r.jseries).with_i1(&r.i1)
    };
    let title = if payload.coefficients.is_empty() {
        format!("# {}", req.spec)
    } else {
        format!("# {}\n{BANNER}", req.spec)
    };
    Ok(render_payload(&payload, req.format, &title))
}

fn render_payload(p: &Payload, format: Format, title: &str) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(p).expect("payload serializes") + "\n",
        Format::Csv => render_csv(p),
        Format::Table => render_table(p, title),
    }
}

fn render_csv(p: &Payload) -> String {
    let mut out = String::from("field,d,a,e,value\n");
    for (d, a, e, v) in &p.coefficients {
        let _ = writeln!(out, "coefficient,{d},{a},{e},{v}");
    }
    for (d, v) in p.i1.iter().enumerate() {
        let _ = writeln!(out, "i1,{d},,,{v}");
    }
    for r in &p.invariants {
        let _ = writeln!(out, "invariant,{},,,{}", r.d, r.value);
        if let Some(desc) = &r.descendant {
            let _ = writeln!(out, "descendant,{},,,{desc}", r.d);
        }
    }
    out
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| if c + 1 == row.len() { s.clone() } else { format!("{s:<w$}", w = widths[c]) })
            .collect();
        out.push_str(&cells.join("  "));
        out.push('\n');
    }
    out
}

fn render_table(p: &Payload, title: &str) -> String {
    let mut out = format!("{title}\n");
    if !p.coefficients.is_empty() {
        let mut keys: Vec<(usize, i64)> = p.coefficients.iter().map(|(_, a, e, _)| (*a, *e)).collect();
        keys.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        keys.dedup();
        let mut rows = vec![std::iter::once("d".to_string())
            .chain(keys.iter().map(|(a, e)| format!("H^{a} hbar^{e}")))
            .collect::<Vec<_>>()];
        for d in 0..=p.order {
            let mut row = vec![d.to_string()];
            for (a, e) in &keys {
                let v = p
                    .coefficients
                    .iter()
                    .find(|(dd, aa, ee, _)| *dd == d && aa == a && ee == e)
                    .map_or("0".to_string(), |c| c.3.clone());
                row.push(v);
            }
            rows.push(row);
        }
        out.push_str(&align(&rows));
    }
    if !p.i1.is_empty() {
        let terms: Vec<String> = p
            .i1
            .iter()
            .enumerate()
            .filter(|(_, v)| v.as_str() != "0")
            .map(|(d, v)| format!("({v})q^{d}"))
            .collect();
        let _ = writeln!(out, "# I1 = {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") });
    }
    if !p.invariants.is_empty() || p.coefficients.is_empty() {
        let has_desc = p.invariants.iter().any(|r| r.descendant.is_some());
        let mut rows = vec![if has_desc {
            vec!["d".to_string(), "value".to_string(), "descendant".to_string()]
        } else {
            vec!["d".to_string(), "value".to_string()]
        }];
        for r in &p.invariants {
            let mut row = vec![r.d.to_string(), r.value.clone()];
            if let Some(desc) = &r.descendant {
                row.push(desc.clone());
            }
            rows.push(row);
        }
        out.push_str(&align(&rows));
    }
    out
}

#[derive(Serialize)]
struct OracleJson<'a> {
    spec: &'a BundleSpec,
    order: usize,
    zorder: usize,
    passed: bool,
    weight_independent: bool,
    runs: Vec<OracleRunJson>,
}

#[derive(Serialize)]
struct OracleRunJson {
    weights: Vec<String>,
    checks: Vec<OracleCheckJson>,
}

#[derive(Serialize)]
struct OracleCheckJson {
    name: &'static str,
    passed: bool,
    cells: usize,
    failures: Vec<String>,
}

fn render_oracle(req: &RunRequest) -> Outcome {
    let report = match run_suite(&req.spec, req.order, req.zorder, req.seeds, req.weights.clone()) {
        Ok(r) => r,
        Err(e) => return Outcome::error(&e),
    };
    let text = match req.format {
        Format::Json => oracle_json(req, &report),
        Format::Csv => {
            let mut out = String::from("weights,check,passed,cells,failures\n");
            for run in &report.runs {
                for c in run {
                    let w = c.weights.to_string().replace(", ", " ");
                    let _ = writeln!(out, "{w},{},{},{},{}", c.name, c.passed(), c.cells, c.failures.len());
                }
            }
            out
        }
        Format::Table => {
            let mut out = format!("# oracle for {} (order {}, zorder {})\n", req.spec, req.order, req.zorder);
            for run in &report.runs {
                for c in run {
                    let verdict = if c.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "{verdict}  {:<22} weights={} cells={}", c.name, c.weights, c.cells);
                    for f in &c.failures {
                        let _ = writeln!(out, "      {f}");
                    }
                }
            }
            let _ = writeln!(out, "weight independent: {}", report.weight_independent());
            out
        }
    };
    let ok = report.passed() && report.weight_independent();
    Outcome {
        text,
        code: if ok { EXIT_OK } else { EXIT_ORACLE },
        message: (!ok).then(|| "error: oracle assertion failed".to_string()),
    }
}

fn oracle_json(req: &RunRequest, report: &SuiteReport) -> String {
    let runs = report
        .runs
        .iter()
        .map(|run| OracleRunJson {
            weights: run[0].weights.lambdas().iter().map(ToString::to_string).collect(),
            checks: run
                .iter()
                .map(|c| OracleCheckJson {
                    name: c.name,
                    passed: c.passed(),
                    cells: c.cells,
                    failures: c.failures.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        })
        .collect();
    let doc = OracleJson {
        spec: &req.spec,
        order: req.order,
        zorder: req.zorder,
        passed: report.passed(),
        weight_independent: report.weight_independent(),
        runs,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

fn lambda_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = p
        .terms()
        .map(|(e, c)| match e {
            0 => c.to_string(),
            1 => format!("({c})lambda"),
            _ => format!("({c})lambda^{e}"),
        })
        .collect();
    parts.join(" + ")
}

#[derive(Serialize)]
struct RingJson<'a> {
    spec: &'a BundleSpec,
    gram: Vec<Vec<String>>,
    dual_basis: Vec<String>,
    pairing_identity: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    h_times_h: Vec<String>,
}

fn render_ring(req: &RunRequest) -> crate::Result<String> {
    let spec = &req.spec;
    let s = spec.s();
    let fw = FactorWeights::standard(spec);
    let gram: Vec<Vec<String>> =
        gram_matrix(spec, &fw)?.iter().map(|row| row.iter().map(lambda_poly).collect()).collect();
    let dual = dual_basis(spec, &fw)?;
    let mut identity = true;
    for (t, dt) in dual.iter().enumerate() {
        for r in 0..=s {
            let v = modified_pairing(&monomial_basis(s, r), dt, spec, &fw)?;
            let want = if r == t { LaurentPoly::constant(Rational::from_integer(1.into())) } else { LaurentPoly::default() };
            identity &= v == want;
        }
    }
    let h_times_h = if *spec == BundleSpec::local_p2() {
        let table = local_p2_with(req.order as u32, MirrorOptions::default())?;
        let h = CohClass::h(2);
        small_product_localp2(&h, &h, &table)?.coeffs().iter().map(|c| c.coeff(2).to_string()).collect()
    } else {
        Vec::new()
    };
    let doc = RingJson {
        spec,
        gram,
        dual_basis: dual.iter().map(|d| d.to_string().replace("*lambda^1", "*lambda")).collect(),
        pairing_identity: identity,
        h_times_h,
    };
    Ok(match req.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("ring serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("field,r,t,value\n");
            for (r, row) in doc.gram.iter().enumerate() {
                for (t, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "gram,{r},{t},{v}");
                }
            }
            for (t, v) in doc.dual_basis.iter().enumerate() {
                let _ = writeln!(out, "dual,{t},,{v}");
            }
            for (d, v) in doc.h_times_h.iter().enumerate() {
                let _ = writeln!(out, "h_times_h,{d},,{v}");
            }
            out
        }
        Format::Table => {
            let mut out = format!("# modified pairing on {spec}, weights -lambda\n");
            for (r, row) in doc.gram.iter().enumerate() {
                let _ = writeln!(out, "<p^{r}, p^t>  {}", row.join("  |  "));
            }
            for (t, v) in doc.dual_basis.iter().enumerate() {
                let _ = writeln!(out, "T^{t} = {v}");
            }
            let _ = writeln!(out, "pairing is identity: {}", doc.pairing_identity);
            if !doc.h_times_h.is_empty() {
                let terms: Vec<String> =
                    doc.h_times_h.iter().enumerate().map(|(d, v)| format!("({v})q^{d}")).collect();
                let _ = writeln!(out, "H * H = H^2 ({})", terms.join(" + "));
            }
            out
        }
    })
}

/// Parse, run, and write output; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let req = match parse_args(argv) {
        Ok(r) => r,
        Err(e) => {
            match &e {
                UsageError::Info(m) => print!("{m}"),
                UsageError::Invalid(m) => eprint!("{m}"),
            }
            return e.exit_code();
        }
    };
    let outcome = run(&req);
    if let Some(m) = &outcome.message {
        eprintln!("{m}");
    }
    if !outcome.text.is_empty() {
        match &req.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &outcome.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            None => print!("{}", outcome.text),
        }
    }
    outcome.code
}
