//! Command-line front end.
//!
//! Exit codes: 0 when every requested check passes (or the command has no
//! checks), 1 when a check fails, 2 on any usage, parameter or input error.
//! Errors are reported on stderr as a single JSON line
//! `{"error":"<kind>","message":"..."}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::{
    analyze, certify_picket_values, coherence, equiangularity, fourier_identity_check,
    modulation_entry_defect, modulation_operators, mutual_unbiasedness, orthoplex_check,
    recover_generating_sequence, supports_disjoint, tightness, welch_bound, AnalysisReport,
};
use crate::design2::{
    design_sum, picket_weights, projector_sum_check, singer_weights, WeightedFrame,
};
use crate::designsets::{
    relative_set, search_difference_sets, search_picket_fence, singer_set, DesignKind, DesignSet,
    SearchConfig, SearchError,
};
use crate::framegen::{
    chirp_mub, drop_basis_vectors, example_5_2, picket_ogf, singer_ogf, Frame, Label,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Parser)]
#[command(
    name = "framekit",
    version,
    about = "Orthoplex-bound frames, difference sets and weighted 2-designs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a difference set, frame or weighted frame.
    Construct(ConstructArgs),
    /// Run certificate checks on a frame file.
    Verify(VerifyArgs),
    /// Exhaustively search for difference sets or picket fence sequences.
    Search(SearchArgs),
    /// Compare coherence against the Welch and orthoplex bounds across frames.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for search and analysis.
    #[arg(long, env = "FRAMEKIT_THREADS")]
    threads: Option<usize>,
    #[arg(long)]
    tol_tight: Option<f64>,
    #[arg(long)]
    tol_design: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Singer,
    Rds,
    SingerOgf,
    PicketOgf,
    Chirps,
    #[value(name = "example-5-2")]
    Example52,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long)]
    k: Option<usize>,
    /// Attach the closed-form 2-design weights.
    #[arg(long)]
    weighted: bool,
    /// Remove this many basis vectors from an OGF.
    #[arg(long)]
    drop: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Coherence,
    Welch,
    Orthoplex,
    Tight,
    Equiangular,
    Mub,
    Modulation,
    Fourier,
    PicketValues,
    Design2,
    ProjectorSum,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    input: PathBuf,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "coherence,welch,orthoplex,tight"
    )]
    checks: Vec<Check>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Ds,
    Picket,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(value_enum)]
    kind: SearchKind,
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    k: Option<usize>,
    #[arg(long, requires = "k_max")]
    k_min: Option<usize>,
    #[arg(long, requires = "k_min")]
    k_max: Option<usize>,
    /// Group order for `ds`; defaults to K(K-1)/lambda + 1.
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 1)]
    lambda: u64,
    /// Node budget shared by all workers.
    #[arg(long, default_value_t = SearchConfig::default().budget)]
    budget: u64,
    /// Maximum number of inequivalent sets reported per row.
    #[arg(long, default_value_t = 1)]
    limit: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
}

/// A single-line error with a stable kind tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self {
            kind,
            message: message.to_string(),
        }
    }

    fn param(message: impl ToString) -> Self {
        Self::new("invalid_parameter", message)
    }

    pub fn to_line(&self) -> String {
        json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

pub fn main_with_args<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            eprintln!("{}", Failure::new("usage", first).to_line());
            return 2;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", f.to_line());
            2
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let common = match &cli.command {
        Command::Construct(a) => &a.common,
        Command::Verify(a) => &a.common,
        Command::Search(a) => &a.common,
        Command::Report(a) => &a.common,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = common.threads {
        if t == 0 {
            return Err(Failure::param("--threads must be positive"));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Failure::new("internal", e))?;
    pool.install(|| match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Report(a) => report(a),
    })
}

fn tolerances(c: &Common) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    for (name, value, slot) in [
        ("--tol-tight", c.tol_tight, &mut tol.tight),
        ("--tol-design", c.tol_design, &mut tol.design),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::param(format!("{name} must be a positive number")));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn emit(common: &Common, body: &str) -> Result<(), Failure> {
    match &common.out {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| Failure::new("io", format!("{}: {e}", p.display())))
        }
        None => io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::new("io", e)),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- construct

/// What `construct` produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Set(DesignSet),
    Frame(Frame),
    Weighted(WeightedFrame),
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::param(format!("{family} requires {flag}")))
}

fn build(a: &ConstructArgs, tol: &Tolerances) -> Result<Artifact, Failure> {
    let name = a
        .family
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    if a.drop.is_some() && !matches!(a.family, Family::SingerOgf | Family::PicketOgf) {
        return Err(Failure::param(format!("--drop is not defined for {name}")));
    }
    if a.weighted
        && !matches!(
            a.family,
            Family::SingerOgf | Family::PicketOgf | Family::Example52
        )
    {
        return Err(Failure::param(format!(
            "--weighted is not defined for {name}"
        )));
    }
    if matches!(a.family, Family::SingerOgf | Family::PicketOgf) && a.n != 1 {
        return Err(Failure::param(format!("{name} is defined for --n 1 only")));
    }
    let frame = match a.family {
        Family::Singer => {
            let q = need(a.q, "--q", &name)?;
            return singer_set(q, a.n)
                .map(Artifact::Set)
                .map_err(Failure::param);
        }
        Family::Rds => {
            let q = need(a.q, "--q", &name)?;
            return relative_set(q, a.n)
                .map(Artifact::Set)
                .map_err(Failure::param);
        }
        Family::SingerOgf => singer_ogf(need(a.q, "--q", &name)?).map_err(Failure::param)?,
        Family::PicketOgf => picket_ogf(need(a.q, "--q", &name)?).map_err(Failure::param)?,
        Family::Chirps => chirp_mub(need(a.k, "--k", &name)?).map_err(Failure::param)?,
        Family::Example52 => example_5_2(),
    };
    let frame = match a.drop {
        Some(c) => drop_basis_vectors(&frame, c).map_err(Failure::param)?,
        None => frame,
    };
    if !a.weighted {
        return Ok(Artifact::Frame(frame));
    }
    let wf = match a.family {
        Family::PicketOgf => picket_weights(&frame, tol),
        _ => singer_weights(&frame, tol),
    };
    wf.map(Artifact::Weighted).map_err(Failure::param)
}

fn construct(a: ConstructArgs) -> Result<i32, Failure> {
    let tol = tolerances(&a.common)?;
    let artifact = build(&a, &tol)?;
    let body = match a.common.format {
        Format::Json => match &artifact {
            Artifact::Set(s) => to_json(s),
            Artifact::Frame(f) => to_json(f),
            Artifact::Weighted(w) => to_json(w),
        },
        Format::Csv => artifact_csv(&artifact)?,
        Format::Text => artifact_text(&artifact),
    };
    emit(&a.common, &body)?;
    Ok(0)
}

fn kind_params(kind: DesignKind) -> String {
    match kind {
        DesignKind::Plain { k, lambda } => format!("K={k} lambda={lambda}"),
        DesignKind::Relative { n, l, k, lambda } => format!("N={n} L={l} K={k} lambda={lambda}"),
    }
}

fn set_text(elements: &[u64]) -> String {
    let parts: Vec<String> = elements.iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn artifact_csv(a: &Artifact) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::new("io", e);
    match a {
        Artifact::Set(s) => {
            w.write_record(["modulus", "K", "lambda", "elements"])
                .map_err(io_err)?;
            let elems: Vec<String> = s.elements().iter().map(u64::to_string).collect();
            w.write_record([
                s.modulus().to_string(),
                s.kind().k().to_string(),
                s.kind().lambda().to_string(),
                elems.join(" "),
            ])
            .map_err(io_err)?;
        }
        Artifact::Frame(f) => {
            let mut buf = Vec::new();
            f.write_csv(&mut buf).map_err(io_err)?;
            return Ok(String::from_utf8(buf).expect("utf8"));
        }
        Artifact::Weighted(wf) => {
            let k = wf.frame.dim();
            let mut header: Vec<String> = (1..=k)
                .flat_map(|i| [format!("re_{i}"), format!("im_{i}")])
                .collect();
            header.push("weight".into());
            w.write_record(&header).map_err(io_err)?;
            for (v, weight) in wf.frame.vectors().iter().zip(&wf.weights) {
                let mut row: Vec<String> = v
                    .iter()
                    .flat_map(|z| [z.re.to_string(), z.im.to_string()])
                    .collect();
                row.push(weight.to_string());
                w.write_record(&row).map_err(io_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure::new("io", e))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

fn label_text(l: &Label) -> String {
    match l {
        Label::Basis(i) => format!("basis({i})"),
        Label::Cyclic(j) => format!("cyclic({j})"),
        Label::Chirp { k, i } => format!("chirp({k},{i})"),
        Label::Block { l, j } => format!("block({l},{j})"),
        Label::Custom(s) => format!("custom({s})"),
    }
}

fn frame_text(f: &Frame, weights: Option<&[f64]>) -> String {
    let mut s = format!("frame: N={} K={}\n", f.len(), f.dim());
    for (i, (v, l)) in f.vectors().iter().zip(f.labels()).enumerate() {
        let coords: Vec<String> = v
            .iter()
            .map(|z| format!("{:.6}{:+.6}i", z.re, z.im))
            .collect();
        let _ = write!(s, "{:<14} [{}]", label_text(l), coords.join(", "));
        if let Some(w) = weights {
            let _ = write!(s, " w={:.6}", w[i]);
        }
        s.push('\n');
    }
    s
}

fn artifact_text(a: &Artifact) -> String {
    match a {
        Artifact::Set(s) => format!(
            "Z_{} {} {}\n",
            s.modulus(),
            kind_params(s.kind()),
            set_text(s.elements())
        ),
        Artifact::Frame(f) => frame_text(f, None),
        Artifact::Weighted(w) => frame_text(&w.frame, Some(&w.weights)),
    }
}

// ------------------------------------------------------------------- verify

/// A frame file, optionally carrying weights.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Plain(Frame),
    Weighted(WeightedFrame),
}

impl Input {
    pub fn frame(&self) -> &Frame {
        match self {
            Input::Plain(f) => f,
            Input::Weighted(w) => &w.frame,
        }
    }
}

/// Parses Frame or WeightedFrame JSON; the presence of `weights` decides.
pub fn parse_input(text: &str, tol: &Tolerances) -> Result<Input, Failure> {
    let v: Value = serde_json::from_str(text).map_err(|e| Failure::new("parse", e))?;
    if v.get("weights").is_some() {
        let wf: WeightedFrame = serde_json::from_value(v).map_err(|e| Failure::new("parse", e))?;
        let wf =
            WeightedFrame::new(wf.frame, wf.weights, tol).map_err(|e| Failure::new("parse", e))?;
        Ok(Input::Weighted(wf))
    } else {
        let f: Frame = serde_json::from_value(v).map_err(|e| Failure::new("parse", e))?;
        Ok(Input::Plain(f))
    }
}

fn read_input(path: &Path, tol: &Tolerances) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    parse_input(&text, tol)
        .map_err(|f| Failure::new(f.kind, format!("{}: {}", path.display(), f.message)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    pub status: Status,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOutcome {
    pub n: usize,
    pub dim: usize,
    pub weighted: bool,
    pub report: AnalysisReport,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// The cyclic-labelled part when the frame has one, else the whole frame.
fn cyclic_or_all(f: &Frame) -> Frame {
    let c = f.cyclic_part();
    if c.is_empty() {
        f.clone()
    } else {
        c
    }
}

/// Groups for the unbiasedness check: the basis, each chirp basis, each
/// picket block, the cyclic vectors and the unlabelled vectors.
fn label_groups(f: &Frame) -> Vec<Frame> {
    let mut groups: BTreeMap<(u8, usize), Vec<usize>> = BTreeMap::new();
    for (i, l) in f.labels().iter().enumerate() {
        let key = match l {
            Label::Basis(_) => (0, 0),
            Label::Chirp { k, .. } => (1, *k),
            Label::Block { l, .. } => (2, *l),
            Label::Cyclic(_) => (3, 0),
            Label::Custom(_) => (4, 0),
        };
        groups.entry(key).or_default().push(i);
    }
    groups.values().map(|idx| f.select(idx)).collect()
}

fn weights_for(input: &Input, tol: &Tolerances) -> Result<WeightedFrame, String> {
    match input {
        Input::Weighted(w) => Ok(w.clone()),
        Input::Plain(f) => singer_weights(f, tol).or_else(|e1| {
            picket_weights(f, tol).map_err(|e2| format!("no closed-form weights: {e1}; {e2}"))
        }),
    }
}

fn run_check(check: Check, input: &Input, tol: &Tolerances) -> CheckResult {
    let f = input.frame();
    let (status, detail) = match check {
        Check::Coherence => match coherence(f) {
            Ok(c) => (Status::Pass, json!({ "coherence": c })),
            Err(e) => (Status::NotApplicable, json!({ "reason": e.to_string() })),
        },
        Check::Welch => {
            let w = welch_bound(f.len(), f.dim());
            match coherence(f) {
                Ok(c) => (
                    pass_if(c * c >= w * w - tol.magnitude),
                    json!({ "coherence": c, "welch_bound": w, "attains": (c * c - w * w).abs() <= tol.magnitude }),
                ),
                Err(e) => (Status::NotApplicable, json!({ "reason": e.to_string() })),
            }
        }
        Check::Orthoplex => {
            let o = orthoplex_check(f, tol);
            let status = if o.applicable {
                pass_if(o.is_ogf && o.within_size_cap)
            } else {
                Status::NotApplicable
            };
            (status, serde_json::to_value(o).expect("serializable"))
        }
        Check::Tight => {
            let t = tightness(f, tol);
            (
                pass_if(t.is_tight),
                serde_json::to_value(t).expect("serializable"),
            )
        }
        Check::Equiangular => {
            let part = cyclic_or_all(f);
            let e = equiangularity(&part, tol);
            (
                pass_if(e.is_equiangular),
                json!({ "vectors": part.len(), "is_equiangular": e.is_equiangular, "common_value": e.common_value }),
            )
        }
        Check::Mub => {
            let groups = label_groups(f);
            if groups.len() < 2 {
                (
                    Status::NotApplicable,
                    json!({ "reason": "fewer than two labelled groups" }),
                )
            } else {
                let mut failing = Vec::new();
                for x in 0..groups.len() {
                    for y in x + 1..groups.len() {
                        if !mutual_unbiasedness(&groups[x], &groups[y], tol).unwrap_or(false) {
                            failing.push([x, y]);
                        }
                    }
                }
                (
                    pass_if(failing.is_empty()),
                    json!({ "groups": groups.len(), "failing_pairs": failing }),
                )
            }
        }
        Check::Modulation => {
            let part = cyclic_or_all(f);
            match recover_generating_sequence(&part, tol.fourier) {
                None => (
                    Status::Fail,
                    json!({ "reason": "vectors do not form a cyclic frame" }),
                ),
                Some(seq) => {
                    let ops = modulation_operators(&part);
                    let defect = modulation_entry_defect(&ops, &seq);
                    let disjoint = supports_disjoint(&ops, tol.fourier);
                    (
                        pass_if(defect <= tol.fourier && disjoint),
                        json!({ "exponents": seq.exponents(), "entry_defect": defect, "supports_disjoint": disjoint }),
                    )
                }
            }
        }
        Check::Fourier => {
            let c = fourier_identity_check(&cyclic_or_all(f), tol);
            (
                pass_if(c.pass),
                serde_json::to_value(c).expect("serializable"),
            )
        }
        Check::PicketValues => match certify_picket_values(f, f.dim(), tol) {
            Ok(t) => (
                pass_if(t.pass()),
                serde_json::to_value(&t).expect("serializable"),
            ),
            Err(e) => (Status::Fail, json!({ "reason": e.to_string() })),
        },
        Check::Design2 => match weights_for(input, tol) {
            Ok(wf) => {
                let c = design_sum(&wf, 2, tol);
                (
                    pass_if(c.verdict),
                    serde_json::to_value(c).expect("serializable"),
                )
            }
            Err(reason) => (Status::Fail, json!({ "reason": reason })),
        },
        Check::ProjectorSum => match weights_for(input, tol) {
            Ok(wf) => match projector_sum_check(&wf, 2) {
                Ok(r) => (
                    pass_if(r <= tol.projector),
                    json!({ "t": 2, "residual": r, "tolerance": tol.projector }),
                ),
                Err(e) => (Status::Fail, json!({ "reason": e.to_string() })),
            },
            Err(reason) => (Status::Fail, json!({ "reason": reason })),
        },
    };
    CheckResult {
        check,
        status,
        detail,
    }
}

/// Runs `checks` (deduplicated, in canonical order) on an in-memory input.
pub fn verify_input(input: &Input, checks: &[Check], tol: &Tolerances) -> VerifyOutcome {
    let mut checks = checks.to_vec();
    checks.sort_unstable();
    checks.dedup();
    let results: Vec<CheckResult> = checks.iter().map(|&c| run_check(c, input, tol)).collect();
    let f = input.frame();
    VerifyOutcome {
        n: f.len(),
        dim: f.dim(),
        weighted: matches!(input, Input::Weighted(_)),
        report: analyze(f, tol),
        pass: results.iter().all(|r| r.status != Status::Fail),
        checks: results,
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::NotApplicable => "not applicable",
    }
}

fn check_name(c: Check) -> String {
    c.to_possible_value().expect("named").get_name().to_string()
}

fn verify(a: VerifyArgs) -> Result<i32, Failure> {
    let tol = tolerances(&a.common)?;
    let input = read_input(&a.input, &tol)?;
    let outcome = verify_input(&input, &a.checks, &tol);
    let body = match a.common.format {
        Format::Json => to_json(&outcome),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Failure::new("io", e);
            w.write_record(["check", "status", "detail"])
                .map_err(io_err)?;
            for r in &outcome.checks {
                let status = serde_json::to_value(r.status).expect("serializable");
                w.write_record([
                    check_name(r.check),
                    status.as_str().unwrap_or("").into(),
                    r.detail.to_string(),
                ])
                .map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::new("io", e))?).expect("utf8")
        }
        Format::Text => {
            let mut s = format!("frame: N={} K={}\n", outcome.n, outcome.dim);
            for r in &outcome.checks {
                let _ = writeln!(
                    s,
                    "{:<14} {:<15} {}",
                    check_name(r.check),
                    status_text(r.status),
                    r.detail
                );
            }
            let _ = writeln!(s, "overall: {}", if outcome.pass { "pass" } else { "FAIL" });
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(if outcome.pass { 0 } else { 1 })
}

// ------------------------------------------------------------------- search

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Found,
    Dne,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchRow {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: u64,
    pub lambda: u64,
    pub status: RowStatus,
    pub sets: Vec<DesignSet>,
}

fn search_row(
    kind: SearchKind,
    k: usize,
    m: Option<u64>,
    lambda: u64,
    cfg: &SearchConfig,
) -> Result<SearchRow, Failure> {
    let (m, result) = match kind {
        SearchKind::Ds => {
            let m = match m {
                Some(m) => m,
                None => {
                    let pairs = (k as u64) * (k as u64).saturating_sub(1);
                    if lambda == 0 || !pairs.is_multiple_of(lambda) {
                        return Err(Failure::param(format!(
                            "K(K-1) = {pairs} is not divisible by lambda = {lambda}"
                        )));
                    }
                    pairs / lambda + 1
                }
            };
            (m, search_difference_sets(m, k, lambda, cfg))
        }
        SearchKind::Picket => (
            (k * k).saturating_sub(1) as u64,
            search_picket_fence(k, cfg),
        ),
    };
    let lambda = if kind == SearchKind::Picket {
        1
    } else {
        lambda
    };
    let (status, sets) = match result {
        Ok(sets) if sets.is_empty() => (RowStatus::Dne, sets),
        Ok(sets) => (RowStatus::Found, sets),
        Err(SearchError::BudgetExceeded { partial, .. }) => (RowStatus::Inconclusive, partial),
        Err(e @ SearchError::InvalidParameters(_)) => return Err(Failure::param(e)),
    };
    Ok(SearchRow {
        k,
        m,
        lambda,
        status,
        sets,
    })
}

fn row_cell(r: &SearchRow) -> String {
    let sets: Vec<String> = r.sets.iter().map(|s| set_text(s.elements())).collect();
    match r.status {
        RowStatus::Found => sets.join("; "),
        RowStatus::Dne => "DNE".into(),
        RowStatus::Inconclusive if sets.is_empty() => "inconclusive".into(),
        RowStatus::Inconclusive => format!("inconclusive (partial: {})", sets.join("; ")),
    }
}

fn search(a: SearchArgs) -> Result<i32, Failure> {
    let ks: Vec<usize> = match (a.k, a.k_min, a.k_max) {
        (Some(k), _, _) => vec![k],
        (None, Some(lo), Some(hi)) if lo <= hi => (lo..=hi).collect(),
        (None, Some(lo), Some(hi)) => {
            return Err(Failure::param(format!("--k-min {lo} exceeds --k-max {hi}")))
        }
        _ => return Err(Failure::param("give --k or both --k-min and --k-max")),
    };
    if a.budget == 0 || a.limit == 0 {
        return Err(Failure::param("--budget and --limit must be positive"));
    }
    if a.kind == SearchKind::Picket && a.m.is_some() {
        return Err(Failure::param("--m is fixed to K^2 - 1 for picket search"));
    }
    let cfg = SearchConfig {
        budget: a.budget,
        limit: a.limit,
    };
    let rows = ks
        .iter()
        .map(|&k| search_row(a.kind, k, a.m, a.lambda, &cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let family = match a.kind {
        SearchKind::Ds => "ds",
        SearchKind::Picket => "picket",
    };
    let body = match a.common.format {
        Format::Json => to_json(
            &json!({ "family": family, "budget": a.budget, "limit": a.limit, "rows": rows }),
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Failure::new("io", e);
            w.write_record(["K", "M", "lambda", "status", "sets"])
                .map_err(io_err)?;
            for r in &rows {
                let status = serde_json::to_value(r.status).expect("serializable");
                let sets: Vec<String> = r
                    .sets
                    .iter()
                    .map(|s| {
                        s.elements()
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                w.write_record([
                    r.k.to_string(),
                    r.m.to_string(),
                    r.lambda.to_string(),
                    status.as_str().unwrap_or("").into(),
                    sets.join(";"),
                ])
                .map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::new("io", e))?).expect("utf8")
        }
        Format::Text => {
            let mut s = match a.kind {
                SearchKind::Ds => {
                    format!("{:<4} {:<6} (M,K,{})-difference set\n", "K", "M", a.lambda)
                }
                SearchKind::Picket => format!("{:<4} {:<6} picket fence sequence\n", "K", "Z_M"),
            };
            for r in &rows {
                let _ = writeln!(s, "{:<4} {:<6} {}", r.k, r.m, row_cell(r));
            }
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(0)
}

// ------------------------------------------------------------------- report

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub file: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub coherence: Option<f64>,
    pub welch_bound: f64,
    /// `1/sqrt(K)` when `N >= K^2 + 1`.
    pub orthoplex_bound: Option<f64>,
    pub tight: bool,
    /// `None` when the orthoplex bound does not apply.
    pub ogf: Option<bool>,
}

pub fn report_row(file: &str, f: &Frame, tol: &Tolerances) -> ReportRow {
    let r = analyze(f, tol);
    ReportRow {
        file: file.to_string(),
        n: r.n,
        k: r.dim,
        coherence: r.coherence,
        welch_bound: r.welch_bound,
        orthoplex_bound: r.orthoplex_applicable.then_some(r.orthoplex_bound),
        tight: r.is_tight,
        ogf: r.orthoplex_applicable.then_some(r.is_ogf),
    }
}

const REPORT_COLUMNS: [&str; 8] = [
    "file",
    "N",
    "K",
    "coherence",
    "welch_bound",
    "orthoplex",
    "tight",
    "OGF",
];

fn report_cells(r: &ReportRow) -> [String; 8] {
    let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
    [
        r.file.clone(),
        r.n.to_string(),
        r.k.to_string(),
        r.coherence.map_or("n/a".into(), |c| format!("{c:.6}")),
        format!("{:.6}", r.welch_bound),
        r.orthoplex_bound
            .map_or("n/a".into(), |b| format!("{b:.6}")),
        yes_no(r.tight),
        r.ogf.map_or("n/a".into(), yes_no),
    ]
}

/// Fixed-width text table with the stable column order.
pub fn report_text(rows: &[ReportRow]) -> String {
    let cells: Vec<[String; 8]> = rows.iter().map(report_cells).collect();
    let mut widths = REPORT_COLUMNS.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: &[String]| {
        let padded: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&REPORT_COLUMNS.map(String::from));
    for row in &cells {
        s += &line(row);
    }
    s
}

fn report(a: ReportArgs) -> Result<i32, Failure> {
    let tol = tolerances(&a.common)?;
    let mut rows = Vec::with_capacity(a.inputs.len());
    for path in &a.inputs {
        let input = read_input(path, &tol)?;
        rows.push(report_row(&path.display().to_string(), input.frame(), &tol));
    }
    let body = match a.common.format {
        Format::Json => to_json(&rows),
        Format::Text => report_text(&rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io_err = |e: csv::Error| Failure::new("io", e);
            w.write_record(REPORT_COLUMNS).map_err(io_err)?;
            for r in &rows {
                w.write_record(report_cells(r)).map_err(io_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::new("io", e))?).expect("utf8")
        }
    };
    emit(&a.common, &body)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("framekit").chain(args.iter().copied())).unwrap()
    }

    fn construct_args(args: &[&str]) -> ConstructArgs {
        match parse(args).command {
            Command::Construct(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn check_list_parses() {
        match parse(&[
            "verify",
            "x.json",
            "--checks",
            "orthoplex,tight,design2,picket-values",
        ])
        .command
        {
            Command::Verify(v) => assert_eq!(
                v.checks,
                vec![
                    Check::Orthoplex,
                    Check::Tight,
                    Check::Design2,
                    Check::PicketValues
                ]
            ),
            _ => unreachable!(),
        }
    }

    #[test]
    fn construct_shapes() {
        let a = build(
            &construct_args(&["construct", "singer-ogf", "--q", "2"]),
            &tol(),
        )
        .unwrap();
        assert!(matches!(a, Artifact::Frame(ref f) if f.len() == 10 && f.dim() == 3));
        let a = build(
            &construct_args(&["construct", "picket-ogf", "--q", "3", "--weighted"]),
            &tol(),
        )
        .unwrap();
        match a {
            Artifact::Weighted(w) => {
                assert_eq!(w.frame.len(), 11);
                assert!((w.weights[0] - 1.0 / 12.0).abs() < 1e-15);
                assert!((w.weights[10] - 3.0 / 32.0).abs() < 1e-15);
            }
            _ => panic!("expected weighted frame"),
        }
        let a = build(
            &construct_args(&["construct", "chirps", "--k", "5"]),
            &tol(),
        )
        .unwrap();
        assert!(matches!(a, Artifact::Frame(ref f) if f.len() == 30));
        let a = build(
            &construct_args(&["construct", "singer", "--q", "2"]),
            &tol(),
        )
        .unwrap();
        assert!(matches!(a, Artifact::Set(ref s) if s.modulus() == 7));
    }

    #[test]
    fn construct_rejects_bad_parameters() {
        for args in [
            &["construct", "singer-ogf", "--q", "6"][..],
            &["construct", "singer-ogf"],
            &["construct", "singer-ogf", "--q", "2", "--n", "2"],
            &["construct", "chirps", "--k", "4"],
            &["construct", "chirps", "--k", "3", "--weighted"],
            &["construct", "singer", "--q", "2", "--drop", "1"],
        ] {
            let f = build(&construct_args(args), &tol()).unwrap_err();
            assert_eq!(f.kind, "invalid_parameter", "{args:?}");
            assert!(!f.to_line().contains('\n'));
        }
    }

    #[test]
    fn verify_singer_ogf() {
        let input = Input::Plain(singer_ogf(2).unwrap());
        let out = verify_input(
            &input,
            &[Check::Design2, Check::Orthoplex, Check::Tight],
            &tol(),
        );
        assert!(out.pass);
        assert_eq!(out.checks[0].check, Check::Orthoplex);
    }

    #[test]
    fn verify_orthoplex_not_applicable_is_not_failure() {
        let input = Input::Plain(Frame::canonical_basis(3));
        let out = verify_input(&input, &[Check::Orthoplex], &tol());
        assert_eq!(out.checks[0].status, Status::NotApplicable);
        assert!(out.pass);
    }

    #[test]
    fn verify_dropped_basis_not_tight() {
        let f = drop_basis_vectors(&picket_ogf(4).unwrap(), 1).unwrap();
        let out = verify_input(&Input::Plain(f), &[Check::Tight, Check::Orthoplex], &tol());
        assert!(!out.pass);
        assert_eq!(out.checks[0].status, Status::Pass);
        assert_eq!(out.checks[1].status, Status::Fail);
    }

    #[test]
    fn chirp_groups_are_unbiased() {
        let out = verify_input(
            &Input::Plain(chirp_mub(5).unwrap()),
            &[Check::Mub, Check::Tight],
            &tol(),
        );
        assert!(out.pass, "{:?}", out.checks);
    }

    #[test]
    fn picket_row_statuses() {
        let cfg = SearchConfig::default();
        let r = search_row(SearchKind::Picket, 2, None, 1, &cfg).unwrap();
        assert_eq!(r.status, RowStatus::Found);
        assert_eq!(r.sets[0].elements(), &[0, 1]);
        let r = search_row(SearchKind::Ds, 7, None, 1, &cfg).unwrap();
        assert_eq!((r.m, r.status), (43, RowStatus::Dne));
        assert_eq!(row_cell(&r), "DNE");
        let tiny = SearchConfig {
            budget: 1,
            limit: 1,
        };
        let r = search_row(SearchKind::Ds, 11, None, 1, &tiny).unwrap();
        assert_eq!(r.status, RowStatus::Inconclusive);
    }

    #[test]
    fn report_rows() {
        let rows = [
            report_row("singer", &singer_ogf(2).unwrap(), &tol()),
            report_row("basis", &Frame::canonical_basis(3), &tol()),
        ];
        let text = report_text(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("file"));
        assert!(lines[1].contains("0.577350") && lines[1].ends_with("yes"));
        let basis: Vec<&str> = lines[2].split_whitespace().collect();
        assert_eq!(
            basis,
            ["basis", "3", "3", "0.000000", "0.000000", "n/a", "yes", "n/a"]
        );
    }
}
