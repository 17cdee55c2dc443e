//! The full verdict chain of one source, serialized as JSON or Markdown.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use lmhs::frames::{ddbar_wedge_verdict, DdbarVerdict, PolarizationOutcome, WedgeReport};
use lmhs::period::{DistanceClass, DistanceReport};
use lmhs::steenbrink::{
    gr3_polarization_verdict, gr4_positivity, limit_cohomology, pairing_well_defined,
    LimitCohomology, SncInstance,
};

use crate::{distance_of_germ, distance_of_limit, frame_of_limit, CliError, Source};

pub const REPORT_SCHEMA: u32 = 1;

/// A computed section, or the error that stopped it.
#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Computed(T),
    Failed { error: String },
}

impl<T> Section<T> {
    fn from_result(r: Result<T, CliError>) -> Self {
        match r {
            Ok(v) => Section::Computed(v),
            Err(e) => Section::Failed {
                error: e.to_string(),
            },
        }
    }

    pub fn computed(&self) -> Option<&T> {
        match self {
            Section::Computed(v) => Some(v),
            Section::Failed { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeSummary {
    pub m: i64,
    pub betti: usize,
    /// `dim Gr_w H^m` by weight, nonzero pieces only.
    pub graded: BTreeMap<i64, usize>,
    pub n_iso: Option<bool>,
    pub source: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceSection {
    pub source: &'static str,
    pub polarization_input: Option<bool>,
    #[serde(flatten)]
    pub report: DistanceReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct DdbarSection {
    pub source: &'static str,
    #[serde(flatten)]
    pub wedge: WedgeReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolarizationSection {
    pub source: &'static str,
    #[serde(flatten)]
    pub outcome: PolarizationOutcome,
    pub gr3_polarization_verdict: Option<bool>,
    pub gr4_positivity: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingLog {
    pub source: &'static str,
    pub pairing: &'static str,
    pub evaluations: usize,
    pub nonzero: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub instance: String,
    pub degrees: Vec<DegreeSummary>,
    pub distance: Section<DistanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ddbar: Option<Section<DdbarSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polarization: Option<Section<PolarizationSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_checks: Option<Section<Vec<PairingLog>>>,
}

fn degree_summary(
    inst: &SncInstance,
    m: i64,
) -> Result<(DegreeSummary, LimitCohomology), CliError> {
    let lim = limit_cohomology(inst, m)?;
    let graded = lim
        .graded_dims()
        .into_iter()
        .filter(|&(_, d)| d > 0)
        .collect();
    let summary = DegreeSummary {
        m,
        betti: lim.dim(),
        graded,
        n_iso: lim.n_iso().ok(),
        source: "limit_cohomology",
    };
    Ok((summary, lim))
}

fn instance_report(inst: &SncInstance) -> Result<Report, CliError> {
    let top = 2 * inst.fiber_dim as i64;
    let mut degrees = Vec::new();
    let mut middle = None;
    for m in 0..=top {
        let (summary, lim) = degree_summary(inst, m)?;
        degrees.push(summary);
        if m == 3 {
            middle = Some(lim);
        }
    }
    let gr3 = gr3_polarization_verdict(inst).ok();
    let need_middle = || {
        middle
            .as_ref()
            .ok_or_else(|| CliError::Computation("no H^3 for this fiber dimension".into()))
    };
    let distance = Section::from_result(need_middle().and_then(|lim| {
        Ok(DistanceSection {
            source: "classify_distance",
            polarization_input: gr3,
            report: distance_of_limit(lim, inst, gr3)?,
        })
    }));
    let frame = need_middle().and_then(|lim| frame_of_limit(lim, inst));
    let ddbar = Section::from_result(frame.as_ref().map_err(Clone::clone).and_then(
        |(spec, frame)| {
            Ok(DdbarSection {
                source: "ddbar_wedge_verdict",
                wedge: ddbar_wedge_verdict(frame, spec)?,
            })
        },
    ));
    let polarization = Section::from_result(frame.as_ref().map_err(Clone::clone).and_then(
        |(spec, frame)| {
            Ok(PolarizationSection {
                source: "polarization_verdict",
                outcome: PolarizationOutcome::compute(frame, spec)?,
                gr3_polarization_verdict: gr3,
                gr4_positivity: gr4_positivity(inst).ok(),
            })
        },
    ));
    let pairing_checks = Section::from_result(
        pairing_well_defined(inst)
            .map_err(CliError::from)
            .map(|checks| {
                checks
                    .into_iter()
                    .map(|c| PairingLog {
                        source: "pairing_well_defined",
                        pairing: c.pairing,
                        evaluations: c.evaluations,
                        nonzero: c.nonzero,
                        passed: c.passed(),
                    })
                    .collect()
            }),
    );
    Ok(Report {
        schema: REPORT_SCHEMA,
        instance: inst.name.clone(),
        degrees,
        distance,
        ddbar: Some(ddbar),
        polarization: Some(polarization),
        pairing_checks: Some(pairing_checks),
    })
}

pub fn build_report(source: &Source) -> Result<Report, CliError> {
    match source {
        Source::Instance(inst) => instance_report(inst),
        Source::Germ { name, germ } => Ok(Report {
            schema: REPORT_SCHEMA,
            instance: name.clone(),
            degrees: Vec::new(),
            distance: Section::from_result(distance_of_germ(germ).map(|report| DistanceSection {
                source: "classify_distance",
                polarization_input: None,
                report,
            })),
            ddbar: None,
            polarization: None,
            pairing_checks: None,
        }),
    }
}

impl Report {
    /// 0 when every section is computed and decided, 2 otherwise.
    pub fn exit_code(&self) -> u8 {
        let distance_ok = matches!(
            self.distance.computed(),
            Some(d) if d.report.distance != DistanceClass::FiniteConditional
        );
        let ddbar_ok = self.ddbar.as_ref().is_none_or(
            |s| matches!(s.computed(), Some(d) if d.wedge.verdict != DdbarVerdict::Indeterminate),
        );
        let pol_ok = self
            .polarization
            .as_ref()
            .is_none_or(|s| s.computed().is_some());
        let pairing_ok = self
            .pairing_checks
            .as_ref()
            .is_none_or(|s| s.computed().is_some());
        if distance_ok && ddbar_ok && pol_ok && pairing_ok {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Limit report: {}\n", self.instance);
        let _ = writeln!(out, "Report schema {}.\n", self.schema);
        if !self.degrees.is_empty() {
            let _ = writeln!(out, "## E1 and graded pieces\n");
            let _ = writeln!(out, "| m | b_m | dim Gr_w (w: dim) | N-iso |");
            let _ = writeln!(out, "|---|-----|-------------------|-------|");
            for d in &self.degrees {
                let graded: Vec<String> =
                    d.graded.iter().map(|(w, k)| format!("{w}: {k}")).collect();
                let iso = d.n_iso.map_or("n/a".to_string(), |b| b.to_string());
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} |",
                    d.m,
                    d.betti,
                    graded.join(", "),
                    iso
                );
            }
            let _ = writeln!(out);
        }
        let _ = writeln!(out, "## Distance\n");
        match &self.distance {
            Section::Computed(d) => {
                let r = &d.report;
                let _ = writeln!(out, "- d = {}", r.d);
                let _ = writeln!(out, "- distance: {}", r.distance.as_str());
                let _ = writeln!(out, "- potential: `{}`", r.potential);
                let _ = writeln!(out, "- metric: `{}`", r.metric);
                let _ = writeln!(out, "- leading coefficient: `{}`", r.leading);
                let _ = writeln!(out, "- length estimate: `{}`", r.witness.integral);
                let _ = writeln!(out, "- source: `{}`", d.source);
            }
            Section::Failed { error } => {
                let _ = writeln!(out, "- not computed: {error}");
            }
        }
        if let Some(section) = &self.ddbar {
            let _ = writeln!(out, "\n## ddbar-lemma\n");
            match section {
                Section::Computed(d) => {
                    let _ = writeln!(out, "- verdict: {}", d.wedge.verdict.as_str());
                    let _ = writeln!(out, "- top wedge: `{}`", d.wedge.leading);
                    if let Some(k) = &d.wedge.kappa {
                        let _ = writeln!(out, "- kappa: `{k}`");
                    }
                    if let Some(w) = &d.wedge.w_determinant {
                        let _ = writeln!(out, "- w determinant: `{w}`");
                    }
                    let _ = writeln!(out, "- source: `{}`", d.source);
                }
                Section::Failed { error } => {
                    let _ = writeln!(out, "- not computed: {error}");
                }
            }
        }
        if let Some(section) = &self.polarization {
            let _ = writeln!(out, "\n## Polarization\n");
            match section {
                Section::Computed(p) => {
                    let o = &p.outcome;
                    let _ = writeln!(out, "- polarized: {}", o.polarized);
                    let _ = writeln!(
                        out,
                        "- negative index: {} (expected {})",
                        o.negative_index, o.expected_negative
                    );
                    let _ = writeln!(out, "- a_infinity positive: {}", o.a_infinity_pd);
                    let _ = writeln!(out, "- q positive: {}", o.q_pd);
                    let fmt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
                    let _ = writeln!(out, "- Gr_3 polarized: {}", fmt(p.gr3_polarization_verdict));
                    let _ = writeln!(out, "- Gr_4 positive: {}", fmt(p.gr4_positivity));
                    let _ = writeln!(out, "- source: `{}`", p.source);
                }
                Section::Failed { error } => {
                    let _ = writeln!(out, "- not computed: {error}");
                }
            }
        }
        if let Some(section) = &self.pairing_checks {
            let _ = writeln!(out, "\n## Pairing checks\n");
            match section {
                Section::Computed(logs) => {
                    for l in logs {
                        let status = if l.passed { "pass" } else { "FAIL" };
                        let _ = writeln!(
                            out,
                            "- {}: {} evaluations, {} nonzero ({status})",
                            l.pairing, l.evaluations, l.nonzero
                        );
                    }
                }
                Section::Failed { error } => {
                    let _ = writeln!(out, "- not computed: {error}");
                }
            }
        }
        out
    }
}
