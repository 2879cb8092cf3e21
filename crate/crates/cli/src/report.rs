//! Machine-readable reports.

use std::collections::BTreeMap;

use serde::Serialize;
use sgkit::grid::{GridReport, GridSpec, ProjectionCheck};
use sgkit::incidence::{IncidenceReport, SgCheck};
use sgkit::{Backend, FieldTag, Line, SpannedLine, WitnessReport};

use crate::format::{nums, Emit, Num};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisViolation,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::HypothesisViolation => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HypothesisViolation => "hypothesis-violation",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    /// The input path, or `gen:<kind>` for generated data.
    pub source: String,
    /// SHA-256 of the input bytes (of the canonical serialization when generated).
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BackendInfo {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol_rel: Option<f64>,
}

impl From<Backend> for BackendInfo {
    fn from(b: Backend) -> Self {
        match b {
            Backend::Exact { m } => BackendInfo { kind: "exact", sqrt_m: Some(m), tol_rel: None },
            Backend::Float { tol_rel } => BackendInfo { kind: "float", sqrt_m: None, tol_rel: Some(tol_rel) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T> {
    pub schema_version: u32,
    pub command: &'static str,
    pub input: InputInfo,
    pub seed: Option<u64>,
    pub field: &'static str,
    pub backend: BackendInfo,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LineOut {
    Slope { m: Vec<Num>, c: Vec<Num> },
    Vertical { x0: Vec<Num> },
}

impl LineOut {
    pub fn new<R: Emit>(line: &Line<R>, tag: FieldTag) -> Self {
        match line {
            Line::Slope { m, c } => LineOut::Slope { m: nums(m, tag), c: nums(c, tag) },
            Line::Vertical { x0 } => LineOut::Vertical { x0: nums(x0, tag) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpannedOut {
    pub line: LineOut,
    pub members: Vec<usize>,
    pub count: usize,
}

impl SpannedOut {
    pub fn new<R: Emit>(l: &SpannedLine<R>, tag: FieldTag) -> Self {
        SpannedOut { line: LineOut::new(&l.line, tag), members: l.members.clone(), count: l.count() }
    }
}

/// Incidence count → number of lines; JSON keys are the counts as strings.
pub fn histogram<R>(r: &IncidenceReport<R>) -> BTreeMap<usize, usize> {
    r.histogram.clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct EnumerateResult {
    pub points: usize,
    pub line_count: usize,
    pub histogram: BTreeMap<usize, usize>,
    pub lines: Vec<SpannedOut>,
}

impl EnumerateResult {
    pub fn new<R: Emit>(n: usize, r: &IncidenceReport<R>, tag: FieldTag) -> Self {
        EnumerateResult {
            points: n,
            line_count: r.lines.len(),
            histogram: histogram(r),
            lines: r.lines.iter().map(|l| SpannedOut::new(l, tag)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOut {
    pub point: usize,
    pub line: SpannedOut,
    pub dist_sq: Num,
    pub incidence: usize,
    pub bound: usize,
    pub angle_pairs: usize,
    pub angle_pairs_wide: usize,
    /// `zᵢ = unscaled[i]·√scale_sq` in the frame with the point at `(0, 1)`.
    pub normalized_unscaled: Vec<Vec<Num>>,
    pub normalized_scale_sq: Num,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl WitnessOut {
    pub fn new<R: Emit>(w: &WitnessReport<R>, tag: FieldTag) -> Self {
        WitnessOut {
            point: w.point,
            line: SpannedOut::new(&w.line, tag),
            dist_sq: w.dist_sq.num(),
            incidence: w.incidence,
            bound: w.bound,
            angle_pairs: w.angle_check.pairs.len(),
            angle_pairs_wide: w.angle_check.pairs.iter().filter(|p| p.wide).count(),
            normalized_unscaled: w.normalized.unscaled.iter().map(|z| nums(z, tag)).collect(),
            normalized_scale_sq: w.normalized.scale_sq.num(),
            passed: w.passed(),
            note: w.note,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSgResult {
    pub points: usize,
    pub bound: usize,
    /// The spanned line of fewest points.
    pub min_line: SpannedOut,
    pub sg_passed: bool,
    /// The minimum-distance (point, line) pair.
    pub witness: WitnessOut,
    pub histogram: BTreeMap<usize, usize>,
}

impl CheckSgResult {
    pub fn new<R: Emit>(n: usize, check: &SgCheck<R>, w: &WitnessReport<R>, tag: FieldTag) -> Self {
        CheckSgResult {
            points: n,
            bound: check.bound,
            min_line: SpannedOut::new(&check.witness, tag),
            sg_passed: check.passed,
            witness: WitnessOut::new(w, tag),
            histogram: histogram(&check.report),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionOut {
    pub a_proj: Vec<Vec<Num>>,
    pub b_proj: Vec<Vec<Num>>,
    pub maps_onto: bool,
    pub similarity: bool,
    pub min_to_max: bool,
    pub equilateral: Option<bool>,
    pub passed: bool,
}

impl ProjectionOut {
    pub fn new<R: Emit>(p: &ProjectionCheck<R>, tag: FieldTag) -> Self {
        ProjectionOut {
            a_proj: p.a_proj.iter().map(|z| nums(z, tag)).collect(),
            b_proj: p.b_proj.iter().map(|z| nums(z, tag)).collect(),
            maps_onto: p.maps_onto,
            similarity: p.similarity,
            min_to_max: p.min_to_max,
            equilateral: p.equilateral,
            passed: p.passed(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridLineOut {
    #[serde(flatten)]
    pub spanned: SpannedOut,
    /// `(index in A, index in B)` of every member.
    pub coords: Vec<(usize, usize)>,
}

impl GridLineOut {
    pub fn new<R: Emit>(grid: &GridSpec<R>, l: &SpannedLine<R>) -> Self {
        GridLineOut {
            spanned: SpannedOut::new(l, grid.tag),
            coords: l.members.iter().map(|&m| grid.coords(m)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GridResult {
    pub a_len: usize,
    pub b_len: usize,
    pub bound: (usize, usize),
    /// The transversal line of fewest points.
    pub witness: GridLineOut,
    pub witness_count: usize,
    pub min_count_all: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<ProjectionOut>,
    /// Line through the closest pair of `A` matched with the furthest pair of `B`.
    pub extremal_line: GridLineOut,
    pub extremal_projection: ProjectionOut,
    pub histogram: BTreeMap<usize, usize>,
}

impl GridResult {
    pub fn new<R: Emit>(grid: &GridSpec<R>, r: &GridReport<R>) -> Self {
        GridResult {
            a_len: grid.a.len(),
            b_len: grid.b.len(),
            bound: sgkit::grid::grid_bound(grid.tag),
            witness: GridLineOut::new(grid, &r.witness),
            witness_count: r.witness_count,
            min_count_all: r.min_count_all,
            projection: r.projection.as_ref().map(|p| ProjectionOut::new(p, grid.tag)),
            extremal_line: GridLineOut::new(grid, &r.extremal_line),
            extremal_projection: ProjectionOut::new(&r.extremal_projection, grid.tag),
            histogram: histogram(&r.incidence),
        }
    }
}

/// One-line-per-fact summary for `--format text`.
pub fn to_text<T: Serialize>(report: &Report<T>) -> String {
    let mut out = format!(
        "command: {}\ninput: {} (sha256 {})\nfield: {}\nbackend: {}\nverdict: {}\n",
        report.command,
        report.input.source,
        report.input.sha256,
        report.field,
        report.backend.kind,
        report.verdict.as_str()
    );
    if let Some(seed) = report.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    if let Some(e) = &report.error {
        out.push_str(&format!("error: {e}\n"));
    }
    if let Some(result) = &report.result {
        let value = serde_json::to_value(result).expect("reports serialize");
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                if v.is_number() || v.is_boolean() || v.is_string() {
                    out.push_str(&format!("{k}: {v}\n"));
                } else if k == "histogram" {
                    out.push_str(&format!("histogram: {v}\n"));
                }
            }
        }
    }
    if let Some(ms) = report.timing_ms {
        out.push_str(&format!("timing_ms: {ms:.3}\n"));
    }
    out
}
