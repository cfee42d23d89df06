//! The `ddpoly` command line: argument parsing, input resolution and dispatch.
//!
//! Exit codes: 0 success, 1 disagreement or hypothesis failure, 2 input error,
//! 3 numeric abort.

pub mod document;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::Rational;
use serde_json::{json, Value};

use crate::dde::{admits_dde, admits_dde_float, generate, recover_pairs, AdmitVerdict, CoefficientSource, DdeError, PairSource, PolySequence};
use crate::families::{freud_demo, freud_recurrence_coeffs, freud_sequence, FamilyError, FamilySpec, FreudDemo};
use crate::integrating_factor::{boundary_zeros, classify, theorem_case, IfError, TheoremCase};
use crate::polycore::{
    format_rational, isolate_roots, BigFloat, Coeff, Poly, PolyError, RootEngine, ScalarKind,
};
use crate::verify::{verify_source, VerifyError, ZERO_WIDTH_BITS};
pub use document::{family_from, Input, InputDocument, Table};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numeric error: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    /// Prefixes the message with a location.
    pub fn at(&self, ctx: &str) -> CliError {
        match self {
            CliError::Input(m) => CliError::Input(format!("{}: {}", ctx, m)),
            CliError::Numeric(m) => CliError::Numeric(format!("{}: {}", ctx, m)),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Parse(_) | PolyError::KindMismatch(_) | PolyError::InvalidInterval(_) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<DdeError> for CliError {
    fn from(e: DdeError) -> Self {
        match e {
            DdeError::Poly(p) => p.into(),
            DdeError::DegreeBound { .. }
            | DdeError::EmptyRequest
            | DdeError::SourceUndefined { .. }
            | DdeError::BadStart
            | DdeError::InconsistentDegree { .. }
            | DdeError::TooShort => CliError::Input(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Dde(d) => d.into(),
            FamilyError::Numeric(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<IfError> for CliError {
    fn from(e: IfError) -> Self {
        match e {
            IfError::ZeroA | IfError::NoSpecs => CliError::Input(e.to_string()),
            IfError::Poly(p) => p.into(),
            IfError::Dde(d) => d.into(),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::TooShort { .. } | VerifyError::NotRational(_) | VerifyError::NoRegularRange(_) => {
                CliError::Input(e.to_string())
            }
            VerifyError::Dde(d) => d.into(),
            VerifyError::IntegratingFactor(i) => i.into(),
            VerifyError::Poly(p) => p.into(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ddpoly", version, about = "Polynomial sequences from P_{n+1} = A_n P_n' + B_n P_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate P_0 .. P_N as a sequence document
    Generate(CommonArgs),
    /// Classify the integrating factors and decide the theorem case
    Classify(CommonArgs),
    /// Classify, then check every prediction against the actual zeros
    Verify(CommonArgs),
    /// Test whether a sequence satisfies some recurrence of this shape
    Admits(CommonArgs),
    /// Freud weight exp(-x^4 + 2t x^2): admissibility fails at n = 5
    FreudDemo(CommonArgs),
    /// Isolated real zeros of P_1 .. P_N
    Zeros(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Built-in family name
    #[arg(long)]
    pub family: Option<String>,
    /// Highest index N
    #[arg(long = "n", short = 'n', alias = "N")]
    pub n: Option<usize>,
    /// Family parameter as key=value; repeatable
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long = "a", allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long = "b", allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long = "c", allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long = "t", allow_hyphen_values = true)]
    pub t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    #[arg(long = "r", allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Input document (family, sequence or coefficients)
    #[arg(long, short = 'i', conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Sequence document, or a bare JSON array of coefficient arrays
    #[arg(long, conflicts_with_all = ["family", "input"])]
    pub sequence: Option<PathBuf>,
    /// Working precision in bits for floating point input
    #[arg(long)]
    pub precision: Option<u32>,
    /// Relative residual tolerance for floating point admissibility
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Output path; stdout when absent
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Refuse integrating factors outside the classical taxonomy
    #[arg(long)]
    pub strict_extension: bool,
    /// Omit the timestamp so reruns are byte-identical
    #[arg(long)]
    pub no_timestamp: bool,
}

/// Resolved input plus the document-level settings.
struct Resolved {
    input: Input,
    tolerance: Option<f64>,
}

impl CommonArgs {
    fn family_params(&self) -> Result<BTreeMap<String, String>, CliError> {
        let mut m = BTreeMap::new();
        for p in &self.params {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("--param expects key=value, got '{}'", p)))?;
            m.insert(k.trim().to_string(), v.trim().to_string());
        }
        let shorthands = [
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("t", &self.t),
            ("kappa", &self.kappa),
            ("r", &self.r),
        ];
        for (k, v) in shorthands {
            if let Some(v) = v {
                m.insert(k.to_string(), v.clone());
            }
        }
        if let Some(p) = self.precision {
            if self.family.as_deref() == Some("freud") {
                m.insert("precision".into(), p.to_string());
            }
        }
        Ok(m)
    }

    fn has_params(&self) -> bool {
        !self.params.is_empty()
            || [&self.alpha, &self.beta, &self.a, &self.b, &self.c, &self.t, &self.kappa, &self.r]
                .iter()
                .any(|v| v.is_some())
    }

    fn resolve(&self) -> Result<Resolved, CliError> {
        if let Some(name) = &self.family {
            let spec = family_from(name, &self.family_params()?).map_err(|e| e.at("--family"))?;
            return Ok(Resolved { input: Input::Family { spec, n: self.n }, tolerance: None });
        }
        if self.has_params() {
            return Err(CliError::Input("family parameters given without --family".into()));
        }
        let (path, bare_array) = match (&self.input, &self.sequence) {
            (Some(p), None) => (p, false),
            (None, Some(p)) => (p, true),
            _ => return Err(CliError::Input("one of --family, --input or --sequence is required".into())),
        };
        let origin = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {}", origin, e)))?;
        let doc = if bare_array && text.trim_start().starts_with('[') {
            let rows = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {}", origin, e)))?;
            InputDocument { sequence: Some(rows), ..Default::default() }
        } else {
            InputDocument::parse(&text, &origin)?
        };
        let mut doc = doc;
        if self.precision.is_some() {
            doc.precision = self.precision;
        }
        let input = doc.resolve().map_err(|e| e.at(&origin))?;
        if bare_array && !matches!(input, Input::Sequence(_)) {
            return Err(CliError::Input(format!("{}: --sequence expects a sequence document", origin)));
        }
        let input = match input {
            Input::Family { spec, n } => Input::Family { spec, n: self.n.or(n) },
            Input::Coefficients { pairs, n } => Input::Coefficients { pairs, n: self.n.or(n) },
            other => other,
        };
        Ok(Resolved { input, tolerance: doc.tolerance })
    }

    fn tolerance(&self, doc: Option<f64>) -> Result<f64, CliError> {
        let t = self.tolerance.or(doc).unwrap_or(DEFAULT_TOLERANCE);
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Input(format!("tolerance must be positive, got {}", t)));
        }
        Ok(t)
    }
}

/// What a command produced: the rendered body and the exit status.
struct Outcome {
    body: String,
    status: i32,
    summary: String,
}

fn unix_time() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn envelope(command: &str, args: &CommonArgs, mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("command".into(), json!(command));
        m.insert("tool".into(), json!(concat!("ddpoly ", env!("CARGO_PKG_VERSION"))));
        if !args.no_timestamp {
            m.insert("generated_at_unix".into(), json!(unix_time()));
        }
    }
    body
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn require_json(args: &CommonArgs, command: &str) -> Result<(), CliError> {
    if args.format == Format::Csv {
        return Err(CliError::Input(format!("{} has no CSV form; use --format json", command)));
    }
    Ok(())
}

fn require_n(n: Option<usize>, what: &str) -> Result<usize, CliError> {
    match n {
        Some(n) if n >= 1 => Ok(n),
        Some(_) => Err(CliError::Input(format!("{} needs --n >= 1", what))),
        None => Err(CliError::Input(format!("{} needs --n", what))),
    }
}

fn source_label(src: &CoefficientSource) -> String {
    match src {
        CoefficientSource::Family(spec) => spec.to_string(),
        CoefficientSource::Table(t) => format!("coefficient table ({} pairs)", t.len()),
    }
}

/// An exact coefficient source with its default `N`, recovering pairs from a
/// sequence when needed.
fn exact_source(input: &Input, what: &str) -> Result<(CoefficientSource, Option<usize>), CliError> {
    match input {
        Input::Family { spec, n } => {
            if !spec.is_rational() {
                return Err(CliError::Input(format!("{} needs exact coefficients; {} has none", what, spec.name())));
            }
            Ok((CoefficientSource::Family(spec.clone()), *n))
        }
        Input::Coefficients { pairs, n } => {
            let n = n.or(Some(pairs.len().saturating_sub(1)));
            Ok((CoefficientSource::Table(pairs.clone()), n))
        }
        Input::Sequence(Table::Rational(polys)) => match recover_pairs(polys)? {
            Ok(pairs) => {
                let n = pairs.len().saturating_sub(1);
                Ok((CoefficientSource::Table(pairs), Some(n)))
            }
            Err(e) => Err(CliError::Input(format!(
                "sequence does not admit a recurrence at n = {}: {}",
                e.n,
                e.witness.unwrap_or_else(|| e.verdict.to_string())
            ))),
        },
        Input::Sequence(Table::Float(..)) => {
            Err(CliError::Input(format!("{} needs exact coefficients; the sequence is floating point", what)))
        }
    }
}

fn sequence_doc<T: Coeff>(seq: &PolySequence<T>, scalar: ScalarKind, precision: Option<u32>, meta: Value) -> InputDocument {
    InputDocument {
        sequence: Some(
            seq.polys
                .iter()
                .map(|p| p.coeffs().iter().map(|c| document::ScalarText::Text(c.to_string())).collect())
                .collect(),
        ),
        scalar: Some(scalar),
        precision,
        metadata: Some(meta),
        ..Default::default()
    }
}

fn sequence_csv<T: Coeff>(seq: &PolySequence<T>) -> String {
    let mut out = String::from("n,power,coefficient\n");
    for (n, p) in seq.polys.iter().enumerate() {
        for (k, c) in p.coeffs().iter().enumerate() {
            out.push_str(&format!("{},{},{}\n", n, k, c));
        }
    }
    out
}

fn generation_meta<T: Coeff>(args: &CommonArgs, source: Value, seq: &PolySequence<T>) -> Value {
    let mut meta = json!({
        "source": source,
        "n": seq.polys.len().saturating_sub(1),
        "collapsed": seq.collapsed,
        "truncated": seq.truncated.as_ref().map(|t| json!({ "n": t.n, "message": t.message })),
        "tool": concat!("ddpoly ", env!("CARGO_PKG_VERSION")),
    });
    if !args.no_timestamp {
        meta["generated_at_unix"] = json!(unix_time());
    }
    meta
}

fn family_value(spec: &FamilySpec) -> Value {
    json!({ "name": spec.name(), "params": spec.params() })
}

fn cmd_generate(args: &CommonArgs) -> Result<Outcome, CliError> {
    let r = args.resolve()?;
    let (body, summary) = match &r.input {
        Input::Family { spec: FamilySpec::Freud { t, precision }, n } => {
            let n = require_n(*n, "generate")?;
            let data = freud_recurrence_coeffs(t, n, *precision)?;
            let seq = freud_sequence(&data, n)?.seq;
            let meta = generation_meta(args, json!({ "family": family_value(&r.input_spec()) }), &seq);
            let body = match args.format {
                Format::Json => render(&serde_json::to_value(sequence_doc(&seq, ScalarKind::Float, Some(*precision), meta)).expect("document serializes")),
                Format::Csv => sequence_csv(&seq),
            };
            (body, format!("generated P_0 .. P_{} ({} bits)", n, precision))
        }
        Input::Sequence(_) => return Err(CliError::Input("generate needs a family or a coefficient table".into())),
        input => {
            let (src, n) = exact_source(input, "generate")?;
            let n = require_n(n, "generate")?;
            let seq = generate(&src, n)?;
            let source = match &src {
                CoefficientSource::Family(spec) => json!({ "family": family_value(spec) }),
                CoefficientSource::Table(t) => json!({ "coefficients": t.iter().map(report::pair).collect::<Vec<_>>() }),
            };
            let meta = generation_meta(args, source, &seq);
            let body = match args.format {
                Format::Json => render(&serde_json::to_value(sequence_doc(&seq, ScalarKind::Rational, None, meta)).expect("document serializes")),
                Format::Csv => sequence_csv(&seq),
            };
            let mut summary = format!("generated P_0 .. P_{} from {}", seq.polys.len() - 1, source_label(&src));
            if let Some(t) = &seq.truncated {
                summary.push_str(&format!("; truncated: {}", t.message));
            }
            (body, summary)
        }
    };
    Ok(Outcome { body, status: 0, summary })
}

impl Resolved {
    fn input_spec(&self) -> FamilySpec {
        match &self.input {
            Input::Family { spec, .. } => spec.clone(),
            _ => unreachable!("only called for family input"),
        }
    }
}

fn cmd_classify(args: &CommonArgs) -> Result<Outcome, CliError> {
    require_json(args, "classify")?;
    let r = args.resolve()?;
    let (src, n) = exact_source(&r.input, "classify")?;
    let n = require_n(n, "classify")?;
    let p1 = src.pair(0)?;
    let b0 = p1.b();
    if b0.degree() != Some(1) {
        return Err(CliError::Input(format!("P_1 = B_0 = {} must have degree 1", b0)));
    }
    let gamma11 = (-b0.coeff(0)) / b0.coeff(1);
    let mut pairs = Vec::with_capacity(n);
    let mut ks = Vec::with_capacity(n);
    let mut bs = Vec::with_capacity(n);
    for m in 1..=n {
        let pair = src.pair(m).map_err(CliError::from)?;
        let k = classify(&pair).map_err(|e| CliError::from(e).at(&format!("n = {}", m)))?;
        bs.push(boundary_zeros(&k));
        ks.push(k);
        pairs.push(pair);
    }
    let d = theorem_case(&bs, &gamma11, args.strict_extension)?;
    let mut v = report::classify_report(&pairs, &ks, &bs, &gamma11, &d);
    v["source"] = json!(source_label(&src));
    let status = if d.case == TheoremCase::None { 1 } else { 0 };
    let summary = match d.case {
        TheoremCase::None => format!(
            "no theorem case applies (first failure at n = {}): {}",
            d.failed_at.map(|f| f.to_string()).unwrap_or_else(|| "?".into()),
            d.diagnosis.first().cloned().unwrap_or_default()
        ),
        c => format!("case ({}) on {}", c.letter(), d.endpoints.last().map(|e| e.to_string()).unwrap_or_default()),
    };
    Ok(Outcome { body: render(&envelope("classify", args, v)), status, summary })
}

fn cmd_verify(args: &CommonArgs) -> Result<Outcome, CliError> {
    let r = args.resolve()?;
    let (src, n) = exact_source(&r.input, "verify")?;
    let n = require_n(n, "verify")?;
    let rep = verify_source(&src, &source_label(&src), n, args.strict_extension)?;
    let status = if rep.confirmed() { 0 } else { 1 };
    let body = match args.format {
        Format::Json => render(&envelope("verify", args, report::verification(&rep))),
        Format::Csv => report::zeros_csv(&report::record_rows(&rep.records)),
    };
    let summary = if rep.confirmed() {
        format!("case ({}) confirmed for n = 1 .. {}", rep.decision.case.letter(), rep.n_checked)
    } else if rep.decision.case == TheoremCase::None {
        format!("no theorem case applies: {}", rep.decision.diagnosis.first().cloned().unwrap_or_default())
    } else {
        format!(
            "case ({}) not confirmed: {}",
            rep.decision.case.letter(),
            rep.failures.first().cloned().or(rep.truncation.clone()).unwrap_or_default()
        )
    };
    Ok(Outcome { body, status, summary })
}

fn float_polys(input: &Input, args: &CommonArgs) -> Result<Option<Vec<Poly<BigFloat>>>, CliError> {
    match input {
        Input::Sequence(Table::Float(p, _)) => Ok(Some(p.clone())),
        Input::Family { spec: FamilySpec::Freud { t, precision }, n } => {
            let n = n.unwrap_or(6);
            let data = freud_recurrence_coeffs(t, n, args.precision.unwrap_or(*precision))?;
            Ok(Some(freud_sequence(&data, n)?.seq.polys))
        }
        _ => Ok(None),
    }
}

fn cmd_admits(args: &CommonArgs) -> Result<Outcome, CliError> {
    require_json(args, "admits")?;
    let r = args.resolve()?;
    let tol = args.tolerance(r.tolerance)?;
    let (v, all, first) = if let Some(polys) = float_polys(&r.input, args)? {
        let res = admits_dde_float(&polys, tol)?;
        (report::admissibility(&res), res.all_admit(), res.first_failure().map(|e| e.n))
    } else {
        let polys = match &r.input {
            Input::Sequence(Table::Rational(p)) => p.clone(),
            input => {
                let (src, n) = exact_source(input, "admits")?;
                generate(&src, require_n(n, "admits")?)?.polys
            }
        };
        let res = admits_dde(&polys)?;
        (report::admissibility(&res), res.all_admit(), res.first_failure().map(|e| e.n))
    };
    let summary = match first {
        None => "every step admits a recurrence".to_string(),
        Some(n) => format!("admissibility fails at n = {}", n),
    };
    Ok(Outcome { body: render(&envelope("admits", args, v)), status: if all { 0 } else { 1 }, summary })
}

/// The demo reproduces when steps 0..4 admit, step 5 fails, and the
/// `P_5` checks hold.
pub fn freud_reproduced(d: &FreudDemo) -> bool {
    let adm = &d.admissibility;
    let early = (0..5).all(|n| adm.entry(n).is_some_and(|e| e.verdict == AdmitVerdict::Admits));
    let fails = adm.entry(5).is_some_and(|e| e.verdict == AdmitVerdict::Fails);
    let p5 = d.sequence.p5.as_ref().is_some_and(|p| p.coefficient_error < 1e-20 && p.zero_error < 1e-20);
    early && fails && p5 && d.sequence.parity_ok && d.interpolant_degree() == Some(4)
}

fn cmd_freud_demo(args: &CommonArgs) -> Result<Outcome, CliError> {
    require_json(args, "freud-demo")?;
    let (t, precision, doc_tol) = if args.family.is_some() || args.input.is_some() {
        let r = args.resolve()?;
        match r.input {
            Input::Family { spec: FamilySpec::Freud { t, precision }, .. } => (t, precision, r.tolerance),
            other => return Err(CliError::Input(format!("freud-demo takes the freud family, got {}", other.kind()))),
        }
    } else {
        let mut params = args.family_params()?;
        if let Some(p) = args.precision {
            params.insert("precision".into(), p.to_string());
        }
        match family_from("freud", &params)? {
            FamilySpec::Freud { t, precision } => (t, precision, None),
            _ => unreachable!("freud parameters build a freud spec"),
        }
    };
    let tol = args.tolerance(doc_tol)?;
    let demo = freud_demo(&t, precision, tol)?;
    let ok = freud_reproduced(&demo);
    let summary = if ok {
        format!("t = {}: admissible for n < 5, fails at n = 5", format_rational(&t))
    } else {
        format!("t = {}: expected failure pattern not reproduced", format_rational(&t))
    };
    Ok(Outcome {
        body: render(&envelope("freud-demo", args, report::freud(&demo, ok))),
        status: if ok { 0 } else { 1 },
        summary,
    })
}

fn zero_rows<T: RootEngine>(polys: &[Poly<T>], width: &T) -> Result<Vec<report::ZeroRow>, CliError> {
    let mut rows = Vec::new();
    for (n, p) in polys.iter().enumerate().skip(1) {
        if p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let set = isolate_roots(p, width).map_err(|e| CliError::from(e).at(&format!("P_{}", n)))?;
        for (i, r) in set.roots.iter().enumerate() {
            let iv = &r.interval;
            rows.push(report::ZeroRow {
                n,
                index: i + 1,
                lo: iv.lo.to_string(),
                hi: iv.hi.to_string(),
                mid: iv.midpoint().to_f64(),
            });
        }
    }
    Ok(rows)
}

fn cmd_zeros(args: &CommonArgs) -> Result<Outcome, CliError> {
    let r = args.resolve()?;
    let rows = if let Some(polys) = float_polys(&r.input, args)? {
        let prec = polys[0].coeff(0).prec();
        let width = BigFloat::epsilon(prec).sqrt();
        zero_rows(&polys, &width)?
    } else {
        let polys: Vec<Poly<Rational>> = match &r.input {
            Input::Sequence(Table::Rational(p)) => p.clone(),
            input => {
                let (src, n) = exact_source(input, "zeros")?;
                generate(&src, require_n(n, "zeros")?)?.polys
            }
        };
        let polys: Vec<Poly<Rational>> = polys.iter().map(|p| if p.is_zero() { p.clone() } else { p.squarefree_part() }).collect();
        let width = Rational::from((1, 1u64 << ZERO_WIDTH_BITS));
        zero_rows(&polys, &width)?
    };
    let body = match args.format {
        Format::Csv => report::zeros_csv(&rows),
        Format::Json => render(&envelope("zeros", args, json!({ "zeros": report::zeros_json(&rows) }))),
    };
    let summary = format!("{} zeros isolated", rows.len());
    Ok(Outcome { body, status: 0, summary })
}

fn write_output(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, body).map_err(|e| CliError::Numeric(format!("{}: {}", path.display(), e))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|e| CliError::Numeric(e.to_string()))
        }
    }
}

pub fn dispatch(command: &Command) -> Result<i32, CliError> {
    let (args, outcome) = match command {
        Command::Generate(a) => (a, cmd_generate(a)?),
        Command::Classify(a) => (a, cmd_classify(a)?),
        Command::Verify(a) => (a, cmd_verify(a)?),
        Command::Admits(a) => (a, cmd_admits(a)?),
        Command::FreudDemo(a) => (a, cmd_freud_demo(a)?),
        Command::Zeros(a) => (a, cmd_zeros(a)?),
    };
    write_output(args.out.as_deref(), &outcome.body)?;
    if args.out.is_some() {
        println!("{}", outcome.summary);
    } else {
        eprintln!("{}", outcome.summary);
    }
    Ok(outcome.status)
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ddpoly: {}", e);
            e.exit_code()
        }
    }
}
