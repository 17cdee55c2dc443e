//! Command implementations behind the `lmhs` binary.
//!
//! Every command resolves its argument, which is either a path to an instance
//! JSON file or a `builtin:` URI, and returns the text it prints together with
//! an exit code: 0 on success, 1 when the input is invalid, 2 when a verdict
//! could not be decided.

mod report;
mod source;

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use lmhs::asymptotics::AsymptoticError;
use lmhs::frames::{
    adapted_basis_for, canonical_frame, ddbar_wedge_verdict, untwist, AsymptoticFrame,
    DdbarVerdict, FrameError, LimitFrameSpec, PolarizationOutcome,
};
use lmhs::instances::{validate_instance, InstanceError};
use lmhs::period::{distance_report, DistanceClass, DistanceReport, PeriodError, PeriodGerm};
use lmhs::steenbrink::{
    e1_page, gr3_polarization_verdict, limit_cohomology, LimitCohomology, SncInstance,
    SteenbrinkError,
};

pub use report::{build_report, DegreeSummary, Report, Section, REPORT_SCHEMA};
pub use source::{load, resolve, Source};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("UsageError: {0}")]
    Usage(String),
    #[error("{0}")]
    Instance(String),
    #[error("SchemaError: {name}: {}", issues.join("; "))]
    Invalid { name: String, issues: Vec<String> },
    #[error("NotDecidable: {0}")]
    Undecided(String),
    #[error("{0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Instance(_) | CliError::Invalid { .. } => 1,
            CliError::Undecided(_) | CliError::Computation(_) => 2,
        }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Instance(e.to_string())
    }
}

impl From<SteenbrinkError> for CliError {
    fn from(e: SteenbrinkError) -> Self {
        match e {
            SteenbrinkError::Schema(_) => CliError::Instance(e.to_string()),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<AsymptoticError> for CliError {
    fn from(e: AsymptoticError) -> Self {
        match e {
            AsymptoticError::NotDecidable(why) => CliError::Undecided(why),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<FrameError> for CliError {
    fn from(e: FrameError) -> Self {
        match e {
            FrameError::Asymptotic(inner) => inner.into(),
            FrameError::Steenbrink(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

impl From<PeriodError> for CliError {
    fn from(e: PeriodError) -> Self {
        match e {
            PeriodError::Steenbrink(inner) => inner.into(),
            other => CliError::Computation(other.to_string()),
        }
    }
}

/// What a command prints and the process exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn with_code(stdout: String, code: u8) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(CliError::Usage(format!("unknown report format `{other}`"))),
        }
    }
}

pub(crate) fn distance_of_germ(germ: &PeriodGerm) -> Result<DistanceReport, CliError> {
    Ok(distance_report(germ, None)?)
}

pub(crate) fn distance_of_limit(
    lim: &LimitCohomology,
    inst: &SncInstance,
    polarization: Option<bool>,
) -> Result<DistanceReport, CliError> {
    let germ = PeriodGerm::from_limit(lim, inst)?;
    Ok(distance_report(&germ, polarization)?)
}

pub(crate) fn frame_of_limit(
    lim: &LimitCohomology,
    inst: &SncInstance,
) -> Result<(LimitFrameSpec, AsymptoticFrame), CliError> {
    let spec = adapted_basis_for(lim, inst)?;
    let frame = untwist(&canonical_frame(&spec), &spec)?;
    Ok((spec, frame))
}

fn middle_limit(inst: &SncInstance) -> Result<LimitCohomology, CliError> {
    if inst.fiber_dim != 3 {
        return Err(CliError::Usage(format!(
            "{} has fiber dimension {}, not 3",
            inst.name, inst.fiber_dim
        )));
    }
    Ok(limit_cohomology(inst, 3)?)
}

pub fn cmd_validate(arg: &str) -> Result<Outcome, CliError> {
    match resolve(arg)? {
        Source::Instance(inst) => {
            let report = validate_instance(&inst);
            if report.is_valid() {
                Ok(Outcome::ok(format!("valid: {}\n", report.name)))
            } else {
                let mut stderr = format!("SchemaError: {}\n", report.name);
                for issue in &report.issues {
                    let _ = writeln!(stderr, "  - {issue}");
                }
                Ok(Outcome {
                    stdout: String::new(),
                    stderr,
                    code: 1,
                })
            }
        }
        Source::Germ { name, germ } => {
            germ.distance_index()?;
            Ok(Outcome::ok(format!("valid: {name}\n")))
        }
    }
}

/// Dimensions of the E1 complexes feeding `H^m` and of their cohomology.
pub fn cmd_e1(arg: &str, m: i64) -> Result<Outcome, CliError> {
    let source = load(arg)?;
    let inst = source.instance()?;
    let page = e1_page(inst, m)?;
    let mut out = format!("E1 page feeding H^{m} of {}\n", inst.name);
    let _ = writeln!(
        out,
        "{:>4} {:>8} {:>8} {:>8} {:>6}",
        "w", "in", "E1", "out", "Gr_w"
    );
    let mut total = 0;
    for c in &page.complexes {
        let gr = c.mid.dim - c.b.rank() - c.a.rank();
        total += gr;
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>8} {:>6}",
            c.w, c.prev.dim, c.mid.dim, c.next.dim, gr
        );
    }
    let _ = writeln!(out, "b_{m} = {total}");
    Ok(Outcome::ok(out))
}

fn distance_text(r: &DistanceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "d = {}", r.d);
    let _ = writeln!(out, "distance = {}", r.distance.as_str());
    let _ = writeln!(out, "potential = {}", r.potential);
    let _ = writeln!(out, "metric = {}", r.metric);
    let _ = writeln!(out, "leading = {}", r.leading);
    let _ = writeln!(out, "witness = {}", r.witness.integral);
    out
}

pub fn cmd_distance(arg: &str) -> Result<Outcome, CliError> {
    let report = match load(arg)? {
        Source::Instance(inst) => {
            let lim = middle_limit(&inst)?;
            distance_of_limit(&lim, &inst, gr3_polarization_verdict(&inst).ok())?
        }
        Source::Germ { germ, .. } => distance_of_germ(&germ)?,
    };
    let code = if report.distance == DistanceClass::FiniteConditional {
        2
    } else {
        0
    };
    Ok(Outcome::with_code(distance_text(&report), code))
}

pub fn cmd_ddbar(arg: &str) -> Result<Outcome, CliError> {
    let source = load(arg)?;
    let inst = source.instance()?;
    let (spec, frame) = frame_of_limit(&middle_limit(inst)?, inst)?;
    let wedge = ddbar_wedge_verdict(&frame, &spec)?;
    let mut out = format!(
        "ddbar = {}\ntop wedge = {}\n",
        wedge.verdict.as_str(),
        wedge.leading
    );
    if let Some(k) = &wedge.kappa {
        let _ = writeln!(out, "kappa = {k}");
    }
    let code = if wedge.verdict == DdbarVerdict::Indeterminate {
        2
    } else {
        0
    };
    Ok(Outcome::with_code(out, code))
}

pub fn cmd_polarization(arg: &str) -> Result<Outcome, CliError> {
    let source = load(arg)?;
    let inst = source.instance()?;
    let (spec, frame) = frame_of_limit(&middle_limit(inst)?, inst)?;
    let outcome = PolarizationOutcome::compute(&frame, &spec)?;
    let out = format!(
        "polarized = {}\nnegative index = {} (expected {})\na_infinity positive = {}\nq positive = {}\n",
        outcome.polarized, outcome.negative_index, outcome.expected_negative, outcome.a_infinity_pd, outcome.q_pd
    );
    Ok(Outcome::ok(out))
}

/// Full report; written to `out` when given, otherwise printed.
pub fn cmd_report(
    arg: &str,
    out: Option<&Path>,
    format: ReportFormat,
) -> Result<Outcome, CliError> {
    let report = build_report(&load(arg)?)?;
    let text = match format {
        ReportFormat::Json => report.to_json(),
        ReportFormat::Markdown => report.to_markdown(),
    };
    let code = report.exit_code();
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::with_code(String::new(), code))
        }
        None => Ok(Outcome::with_code(text, code)),
    }
}
