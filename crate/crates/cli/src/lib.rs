//! The `hrr` command line: argument parsing, dispatch and the JSON report
//! schema.
//!
//! Every report is a struct serialized with a fixed field order. Rationals
//! are strings (`"3/2"`), matrices are lists of rows, and minor witnesses
//! use 1-based row and column indices. The first two fields are always the
//! command name and the input form exactly as it was given.
//!
//! Exit codes: 0 when every checked equivalence agreed, 1 when the run found
//! a disagreement or anomaly, 2 on malformed input.

use std::fs;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use hrr_core::apolarity::{
    hilbert_function, mixed_hrr_report, ordinary_hrr_report, toeplitz, HrrReport, MonomialOrder,
};
use hrr_core::cattani::{fuzz, shift_path_experiment, verify_equivalence, Family, FuzzSummary};
use hrr_core::forms::{parse_rational, FormJson};
use hrr_core::hessian::{decide_ordinary_hrr_cone, hessian_polynomial, plucker_expansion, positive_on_quadrant, Quadrant};
use hrr_core::totalpos::{all_minors_nonneg, classify_max_toeplitz, MinorWitness, TpReport, EXHAUSTIVE_CAP};
use hrr_core::{Error, Form, Linear, RatMatrix, Rational};

#[derive(Debug, Parser)]
#[command(name = "hrr", version, about = "Exact Hessian and Toeplitz invariants of bivariate forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, coefficients, Hilbert function, Sperner number and the
    /// classification of the maximal Toeplitz matrix.
    Analyze(FormSource),
    /// Every Hessian polynomial with its quadrant-positivity verdicts.
    Hessians {
        #[command(flatten)]
        source: FormSource,
        #[command(flatten)]
        quadrant: QuadrantFlag,
    },
    /// Toeplitz matrices and their total positivity reports.
    Toeplitz {
        #[command(flatten)]
        source: FormSource,
        /// Only this index; all of 0..=floor(d/2) by default.
        #[arg(long = "i")]
        i: Option<usize>,
    },
    /// The Plücker expansion of the Hessian polynomials, term by term.
    Plucker {
        #[command(flatten)]
        source: FormSource,
        #[arg(long = "i")]
        i: Option<usize>,
    },
    /// Hodge-Riemann relations for a linear form, a tuple of linear forms,
    /// or on a whole quadrant through the Hessian criterion.
    #[command(group(ArgGroup::new("lefschetz").args(["ell", "tuple", "closed", "open"]).required(true)))]
    Hrr {
        #[command(flatten)]
        source: FormSource,
        /// Up to this degree; floor(d/2) by default.
        #[arg(long = "i")]
        i: Option<usize>,
        /// The linear form a x + b y, as `a,b`.
        #[arg(long, value_name = "a,b", conflicts_with = "tuple")]
        ell: Option<String>,
        /// JSON file holding d+1 linear forms, e.g. `[["1","0"],["0","1"]]`.
        #[arg(long, value_name = "FILE")]
        tuple: Option<PathBuf>,
        #[command(flatten)]
        quadrant: QuadrantFlag,
    },
    /// Both sides of the equivalence, with an optional shift-path replay.
    Verify {
        #[command(flatten)]
        source: FormSource,
        /// Shift parameters `t1,t2,...` at which to test membership in O_s.
        #[arg(long = "t-grid", value_name = "t1,t2,...")]
        t_grid: Option<String>,
    },
    /// Run the corpus checks on random forms.
    Fuzz {
        #[arg(long, value_name = "a|b|c|d")]
        family: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// A single degree; 1..=8 by default.
        #[arg(long)]
        degree: Option<usize>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FormSource {
    /// The form as JSON: `{"degree":2,"normalized_coeffs":["1","3/2","1"]}`.
    #[arg(long)]
    form: Option<String>,
    /// A file holding the same JSON.
    #[arg(long = "form-file", value_name = "FILE")]
    form_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct QuadrantFlag {
    /// X, Y >= 0, not both zero.
    #[arg(long)]
    closed: bool,
    /// X, Y > 0.
    #[arg(long)]
    open: bool,
}

impl QuadrantFlag {
    fn get(&self) -> Option<Quadrant> {
        match (self.closed, self.open) {
            (true, _) => Some(Quadrant::Closed),
            (_, true) => Some(Quadrant::Open),
            _ => None,
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok((ok, stdout)) => Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() },
        Err(CliError::Input(msg)) => Outcome::input_error(msg),
        Err(CliError::Anomaly(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

enum CliError {
    Input(String),
    Anomaly(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => CliError::Anomaly(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Pretty JSON in struct field order, newline terminated.
fn render<T: Serialize>(report: &T) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("reports serialize");
    out.push('\n');
    out
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_form(source: &FormSource) -> CliResult<(FormJson, Form)> {
    let text = match (&source.form, &source.form_file) {
        (Some(text), _) => text.clone(),
        (None, Some(path)) => read_file(path)?,
        (None, None) => return Err(CliError::Input("no form given".into())),
    };
    let raw: FormJson = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("form JSON: {e}")))?;
    let form = raw.to_form()?;
    Ok((raw, form))
}

fn strings(values: &[Rational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn matrix_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| strings(r)).collect()
}

#[derive(Serialize)]
struct WitnessJson {
    rows: Vec<usize>,
    cols: Vec<usize>,
    value: String,
}

impl WitnessJson {
    fn from_witness(w: &MinorWitness<Rational>) -> Self {
        Self {
            rows: w.rows.iter().map(|r| r + 1).collect(),
            cols: w.cols.iter().map(|c| c + 1).collect(),
            value: w.value.to_string(),
        }
    }
}

#[derive(Serialize)]
struct TpJson {
    is_tnn: bool,
    is_tp: bool,
    tp_order: usize,
    rank: usize,
    witness: Option<WitnessJson>,
}

impl TpJson {
    fn from_report(r: &TpReport<Rational>) -> Self {
        Self {
            is_tnn: r.is_tnn,
            is_tp: r.is_tp,
            tp_order: r.tp_order,
            rank: r.rank,
            witness: r.witness.as_ref().map(WitnessJson::from_witness),
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    command: &'static str,
    input: FormJson,
    degree: usize,
    normalized_coeffs: Vec<String>,
    monomial_coeffs: Vec<String>,
    hilbert_function: Vec<usize>,
    sperner: usize,
    max_toeplitz: ToeplitzJson,
}

#[derive(Serialize)]
struct ToeplitzJson {
    i: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
    /// Absent when both dimensions exceed the enumeration cap.
    report: Option<TpJson>,
}

fn toeplitz_json(form: &Form, i: usize) -> CliResult<ToeplitzJson> {
    let m = toeplitz(form, i)?.matrix;
    let report = if m.rows().min(m.cols()) <= EXHAUSTIVE_CAP {
        Some(TpJson::from_report(&all_minors_nonneg(&m)?))
    } else {
        None
    };
    Ok(ToeplitzJson { i, rows: m.rows(), cols: m.cols(), entries: matrix_rows(&m), report })
}

fn analyze(source: &FormSource) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let hilbert = hilbert_function(&form)?;
    let d = form.degree();
    let mut max_toeplitz = toeplitz_json(&form, d / 2)?;
    max_toeplitz.report = Some(TpJson::from_report(&classify_max_toeplitz(&form)?));
    let report = AnalyzeReport {
        command: "analyze",
        input,
        degree: d,
        normalized_coeffs: strings(form.normalized_coeffs()),
        monomial_coeffs: strings(&form.monomial_coeffs()),
        hilbert_function: hilbert.h,
        sperner: hilbert.sperner,
        max_toeplitz,
    };
    Ok((true, render(&report)))
}

#[derive(Serialize)]
struct HessianJson {
    i: usize,
    degree: usize,
    /// Coefficients of `X^k Y^(D-k)`, `k = 0..=D`.
    monomial_coeffs: Vec<String>,
    below_sperner: bool,
    positive_open: bool,
    positive_closed: bool,
}

#[derive(Serialize)]
struct DecisionJson {
    quadrant: &'static str,
    holds: bool,
}

#[derive(Serialize)]
struct HessiansReport {
    command: &'static str,
    input: FormJson,
    degree: usize,
    sperner: usize,
    hessians: Vec<HessianJson>,
    hessian_side_open: bool,
    hessian_side_closed: bool,
    decision: Option<DecisionJson>,
}

fn hessians(source: &FormSource, quadrant: Option<Quadrant>) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let s = hilbert_function(&form)?.sperner;
    let d = form.degree();
    let list = (0..=d / 2)
        .map(|i| {
            let poly = hessian_polynomial(&form, i)?.poly;
            Ok(HessianJson {
                i,
                degree: poly.degree(),
                monomial_coeffs: strings(&poly.monomial_coeffs()),
                below_sperner: i < s,
                positive_open: positive_on_quadrant(&poly, Quadrant::Open),
                positive_closed: positive_on_quadrant(&poly, Quadrant::Closed),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let side = |pick: fn(&HessianJson) -> bool| list.iter().filter(|h| h.below_sperner).all(pick);
    let hessian_side_open = side(|h| h.positive_open);
    let hessian_side_closed = side(|h| h.positive_closed);
    let decision = quadrant.map(|q| DecisionJson {
        quadrant: q.label(),
        holds: match q {
            Quadrant::Open => hessian_side_open,
            Quadrant::Closed => hessian_side_closed,
        },
    });
    let report = HessiansReport {
        command: "hessians",
        input,
        degree: d,
        sperner: s,
        hessians: list,
        hessian_side_open,
        hessian_side_closed,
        decision,
    };
    Ok((true, render(&report)))
}

#[derive(Serialize)]
struct ToeplitzReport {
    command: &'static str,
    input: FormJson,
    degree: usize,
    matrices: Vec<ToeplitzJson>,
}

fn check_index(form: &Form, i: Option<usize>) -> CliResult<Vec<usize>> {
    let top = form.degree() / 2;
    match i {
        Some(i) if i > top => Err(CliError::Input(format!("--i {i} exceeds floor(d/2) = {top}"))),
        Some(i) => Ok(vec![i]),
        None => Ok((0..=top).collect()),
    }
}

fn toeplitz_cmd(source: &FormSource, i: Option<usize>) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let matrices = check_index(&form, i)?
        .into_iter()
        .map(|i| toeplitz_json(&form, i))
        .collect::<CliResult<Vec<_>>>()?;
    let report = ToeplitzReport { command: "toeplitz", input, degree: form.degree(), matrices };
    Ok((true, render(&report)))
}

#[derive(Serialize)]
struct PluckerTermJson {
    subset: Vec<usize>,
    lambda: Vec<usize>,
    lambda_conj: Vec<usize>,
    n_prime: u64,
    minor: String,
    x_exponent: usize,
    y_exponent: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct PluckerJson {
    i: usize,
    prefactor: String,
    terms: Vec<PluckerTermJson>,
    total: Vec<String>,
    direct: Vec<String>,
    equal: bool,
}

#[derive(Serialize)]
struct PluckerReport {
    command: &'static str,
    input: FormJson,
    degree: usize,
    expansions: Vec<PluckerJson>,
}

fn plucker(source: &FormSource, i: Option<usize>) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let mut all_equal = true;
    let expansions = check_index(&form, i)?
        .into_iter()
        .map(|i| {
            let e = plucker_expansion(&form, i)?;
            let direct = hessian_polynomial(&form, i)?.poly;
            let equal = e.poly == direct;
            all_equal &= equal;
            let top = e.poly.degree();
            Ok(PluckerJson {
                i,
                prefactor: e.prefactor.to_string(),
                terms: e
                    .terms
                    .iter()
                    .map(|t| PluckerTermJson {
                        subset: t.partition.subset.clone(),
                        lambda: t.partition.lambda.clone(),
                        lambda_conj: t.partition.lambda_conj.clone(),
                        n_prime: t.partition.n_prime,
                        minor: t.minor.to_string(),
                        x_exponent: t.x_exponent,
                        y_exponent: top - t.x_exponent,
                        coefficient: t.coefficient.to_string(),
                    })
                    .collect(),
                total: strings(&e.poly.monomial_coeffs()),
                direct: strings(&direct.monomial_coeffs()),
                equal,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let report = PluckerReport { command: "plucker", input, degree: form.degree(), expansions };
    Ok((all_equal, render(&report)))
}

fn parse_pair(text: &str) -> CliResult<Linear> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| CliError::Input(format!("expected a,b but got {text:?}")))?;
    Ok(Linear::new(parse_rational(a.trim())?, parse_rational(b.trim())?))
}

fn load_tuple(path: &PathBuf) -> CliResult<Vec<Linear>> {
    let raw: Vec<(String, String)> = serde_json::from_str(&read_file(path)?)
        .map_err(|e| CliError::Input(format!("tuple JSON: {e}")))?;
    raw.iter()
        .map(|(a, b)| Ok(Linear::new(parse_rational(a)?, parse_rational(b)?)))
        .collect()
}

#[derive(Serialize)]
struct HrrDegreeJson {
    j: usize,
    basis: Vec<String>,
    gram: Vec<Vec<String>>,
    primitive: Vec<Vec<String>>,
    restricted: Vec<Vec<String>>,
    nondegenerate: bool,
    positive_on_primitive: bool,
}

#[derive(Serialize)]
struct HrrReportJson {
    command: &'static str,
    input: FormJson,
    kind: &'static str,
    i: usize,
    linear_forms: Vec<[String; 2]>,
    quadrant: Option<&'static str>,
    degrees: Vec<HrrDegreeJson>,
    holds: bool,
}

fn hrr_degrees(report: &HrrReport<Rational>) -> Vec<HrrDegreeJson> {
    report
        .degrees
        .iter()
        .map(|deg| HrrDegreeJson {
            j: deg.j,
            basis: deg.gram.basis.labels(),
            gram: matrix_rows(&deg.gram.matrix),
            primitive: deg.primitive.iter().map(|v| strings(v)).collect(),
            restricted: matrix_rows(&deg.restricted),
            nondegenerate: deg.nondegenerate,
            positive_on_primitive: deg.positive_on_primitive,
        })
        .collect()
}

fn hrr(
    source: &FormSource,
    i: Option<usize>,
    ell: Option<&str>,
    tuple: Option<&PathBuf>,
    quadrant: Option<Quadrant>,
) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let i = i.unwrap_or(form.degree() / 2);
    let pairs = |forms: &[Linear]| forms.iter().map(|l| [l.a.to_string(), l.b.to_string()]).collect();
    let report = if let Some(text) = ell {
        let ell = parse_pair(text)?;
        let r = ordinary_hrr_report(&form, &ell, i, MonomialOrder::XFirst)?;
        HrrReportJson {
            command: "hrr",
            input,
            kind: "ordinary",
            i,
            linear_forms: pairs(&[ell]),
            quadrant: None,
            degrees: hrr_degrees(&r),
            holds: r.holds,
        }
    } else if let Some(path) = tuple {
        let tuple = load_tuple(path)?;
        let r = mixed_hrr_report(&form, &tuple, i, MonomialOrder::XFirst)?;
        HrrReportJson {
            command: "hrr",
            input,
            kind: "mixed",
            i,
            linear_forms: pairs(&tuple),
            quadrant: None,
            degrees: hrr_degrees(&r),
            holds: r.holds,
        }
    } else {
        let q = quadrant.expect("clap requires one of --ell, --tuple, --closed, --open");
        let holds = decide_ordinary_hrr_cone(&form, i, q)?;
        HrrReportJson {
            command: "hrr",
            input,
            kind: "cone",
            i,
            linear_forms: Vec::new(),
            quadrant: Some(q.label()),
            degrees: Vec::new(),
            holds,
        }
    };
    Ok((true, render(&report)))
}

#[derive(Serialize)]
struct HessianStatusJson {
    i: usize,
    monomial_coeffs: Vec<String>,
    positive_open: bool,
    positive_closed: bool,
}

#[derive(Serialize)]
struct PathJson {
    t_samples: Vec<String>,
    in_os_flags: Vec<bool>,
    tp_at_large_t: bool,
    t_found: Option<String>,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    input: FormJson,
    sperner: usize,
    hessian_side_closed: bool,
    hessian_side_open: bool,
    toeplitz_side_closed: bool,
    toeplitz_side_open: bool,
    agree: bool,
    reformulation_agrees: bool,
    per_i_hessian_status: Vec<HessianStatusJson>,
    max_toeplitz: TpJson,
    tp_witness: Option<WitnessJson>,
    /// Present when a grid was given; `null` inside when the Hessians are
    /// not positive on the closed quadrant.
    shift_path: Option<Option<PathJson>>,
}

fn verify(source: &FormSource, t_grid: Option<&str>) -> CliResult<(bool, String)> {
    let (input, form) = load_form(source)?;
    let r = verify_equivalence(&form)?;
    let shift_path = match t_grid {
        None => None,
        Some(text) => {
            let grid = text
                .split(',')
                .map(|t| parse_rational(t.trim()))
                .collect::<hrr_core::Result<Vec<_>>>()?;
            Some(if r.hessian_side_closed {
                let p = shift_path_experiment(&form, &grid)?;
                Some(PathJson {
                    t_samples: strings(&p.t_samples),
                    in_os_flags: p.in_os_flags,
                    tp_at_large_t: p.tp_at_large_t,
                    t_found: p.t_found.map(|t| t.to_string()),
                })
            } else {
                None
            })
        }
    };
    let ok = r.agree && r.reformulation_agrees;
    let report = VerifyReport {
        command: "verify",
        input,
        sperner: r.sperner,
        hessian_side_closed: r.hessian_side_closed,
        hessian_side_open: r.hessian_side_open,
        toeplitz_side_closed: r.toeplitz_side_closed,
        toeplitz_side_open: r.toeplitz_side_open,
        agree: r.agree,
        reformulation_agrees: r.reformulation_agrees,
        per_i_hessian_status: r
            .per_i_hessian_status
            .iter()
            .map(|h| HessianStatusJson {
                i: h.i,
                monomial_coeffs: strings(&h.poly.monomial_coeffs()),
                positive_open: h.positive_open,
                positive_closed: h.positive_closed,
            })
            .collect(),
        max_toeplitz: TpJson::from_report(&r.max_toeplitz),
        tp_witness: r.tp_witness.as_ref().map(WitnessJson::from_witness),
        shift_path,
    };
    Ok((ok, render(&report)))
}

#[derive(Serialize)]
struct FuzzReport {
    command: &'static str,
    family: &'static str,
    count: usize,
    seed: u64,
    anomaly_count: usize,
    runs: Vec<FuzzSummary>,
}

fn fuzz_cmd(family: &str, count: usize, seed: u64, degree: Option<usize>) -> CliResult<(bool, String)> {
    let family = Family::parse(family)?;
    let degrees: Vec<usize> = match degree {
        Some(d) => vec![d],
        None => (1..=8).collect(),
    };
    let runs = degrees
        .into_iter()
        .map(|d| fuzz(family, d, count, seed))
        .collect::<hrr_core::Result<Vec<_>>>()?;
    let anomaly_count = runs.iter().map(|r| r.anomalies.len()).sum();
    let report = FuzzReport { command: "fuzz", family: family.name(), count, seed, anomaly_count, runs };
    Ok((anomaly_count == 0, render(&report)))
}

fn dispatch(command: &Command) -> CliResult<(bool, String)> {
    match command {
        Command::Analyze(source) => analyze(source),
        Command::Hessians { source, quadrant } => hessians(source, quadrant.get()),
        Command::Toeplitz { source, i } => toeplitz_cmd(source, *i),
        Command::Plucker { source, i } => plucker(source, *i),
        Command::Hrr { source, i, ell, tuple, quadrant } => {
            hrr(source, *i, ell.as_deref(), tuple.as_ref(), quadrant.get())
        }
        Command::Verify { source, t_grid } => verify(source, t_grid.as_deref()),
        Command::Fuzz { family, count, seed, degree } => fuzz_cmd(family, *count, *seed, *degree),
    }
}
