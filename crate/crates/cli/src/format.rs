//! JSON dataset files.
//!
//! Three shapes share one header (`field`, `backend`, `sqrt_m`):
//!
//! * point datasets, key `points`, each point `[x, y]`;
//! * grids, keys `a` and `b`, lists of scalars;
//! * scalar lists, key `values`.
//!
//! A scalar is `[re, im]` over ℂ and `[a, b, c, d]` over ℍ. Exact components
//! are strings in the `ℚ(√m)` grammar, float components are JSON numbers.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize};
use sgkit::grid::GridSpec;
use sgkit::scalars::is_square_free;
use sgkit::{Backend, FieldTag, Point, PointSet, QuadExt, Quaternion, Real};

use crate::error::CliError;

/// Radicand used to syntax-check exact strings before `sqrt_m` is known.
const PROBE_M: u32 = 2;

#[derive(Clone, Debug, PartialEq)]
enum Component {
    Exact(String),
    Float(f64),
}

impl<'de> Deserialize<'de> for Component {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;

        impl Visitor<'_> for V {
            type Value = Component;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or an exact component string")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Component, E> {
                QuadExt::parse(s, PROBE_M).map_err(E::custom)?;
                Ok(Component::Exact(s.to_owned()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Component, E> {
                Ok(Component::Float(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Component, E> {
                Ok(Component::Float(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Component, E> {
                Ok(Component::Float(v as f64))
            }
        }

        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq)]
struct RawScalar(Vec<Component>);

impl<'de> Deserialize<'de> for RawScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<Component>::deserialize(d)?;
        if parts.len() != 2 && parts.len() != 4 {
            return Err(de::Error::custom(format!(
                "a scalar has 2 (C) or 4 (H) components, found {}",
                parts.len()
            )));
        }
        Ok(RawScalar(parts))
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawBackend {
    Exact,
    Float,
}

fn de_field<'de, D: Deserializer<'de>>(d: D) -> Result<FieldTag, D::Error> {
    String::deserialize(d)?.parse().map_err(de::Error::custom)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    #[serde(deserialize_with = "de_field")]
    field: FieldTag,
    backend: RawBackend,
    sqrt_m: Option<u32>,
    points: Vec<[RawScalar; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    #[serde(deserialize_with = "de_field")]
    field: FieldTag,
    backend: RawBackend,
    sqrt_m: Option<u32>,
    a: Vec<RawScalar>,
    b: Vec<RawScalar>,
}

/// A point dataset in either backend.
#[derive(Clone, Debug)]
pub enum Dataset {
    Exact { m: u32, set: PointSet<QuadExt> },
    Float { set: PointSet<f64> },
}

impl Dataset {
    pub fn tag(&self) -> FieldTag {
        match self {
            Dataset::Exact { set, .. } => set.tag(),
            Dataset::Float { set } => set.tag(),
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Dataset::Exact { m, .. } => Backend::Exact { m: *m },
            Dataset::Float { set } => Backend::Float { tol_rel: set.tol_rel() },
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Dataset::Exact { set, .. } => set.len(),
            Dataset::Float { set } => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub enum GridData {
    Exact { m: u32, grid: GridSpec<QuadExt> },
    Float { grid: GridSpec<f64> },
}

impl GridData {
    pub fn tag(&self) -> FieldTag {
        match self {
            GridData::Exact { grid, .. } => grid.tag,
            GridData::Float { grid } => grid.tag,
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            GridData::Exact { m, .. } => Backend::Exact { m: *m },
            GridData::Float { grid } => Backend::Float { tol_rel: grid.tol_rel() },
        }
    }
}

fn check_header(backend: &RawBackend, sqrt_m: Option<u32>) -> Result<Option<u32>, CliError> {
    match (backend, sqrt_m) {
        (RawBackend::Exact, None) => Err(CliError::Parse("sqrt_m is required for the exact backend".into())),
        (RawBackend::Exact, Some(m)) if m == 0 || !is_square_free(m) => {
            Err(CliError::Parse(format!("sqrt_m = {m} is not a square-free positive integer")))
        }
        (RawBackend::Exact, Some(m)) => Ok(Some(m)),
        (RawBackend::Float, Some(_)) => Err(CliError::Parse("sqrt_m is only allowed with the exact backend".into())),
        (RawBackend::Float, None) => Ok(None),
    }
}

fn exact_scalar(raw: &RawScalar, tag: FieldTag, m: u32, path: &str) -> Result<Quaternion<QuadExt>, CliError> {
    check_width(raw, tag, path)?;
    let mut c = Vec::with_capacity(4);
    for (k, comp) in raw.0.iter().enumerate() {
        match comp {
            Component::Exact(s) => {
                c.push(QuadExt::parse(s, m).map_err(|e| CliError::Parse(format!("{path}[{k}]: {e}")))?)
            }
            Component::Float(_) => {
                return Err(CliError::Parse(format!("{path}[{k}]: exact components must be strings")))
            }
        }
    }
    c.resize(4, QuadExt::int(0));
    let mut it = c.into_iter();
    let mut next = || it.next().expect("four components");
    Ok(Quaternion::new(next(), next(), next(), next()))
}

fn float_scalar(raw: &RawScalar, tag: FieldTag, path: &str) -> Result<Quaternion<f64>, CliError> {
    check_width(raw, tag, path)?;
    let mut c = [0.0; 4];
    for (k, comp) in raw.0.iter().enumerate() {
        match comp {
            Component::Float(v) => c[k] = *v,
            Component::Exact(_) => {
                return Err(CliError::Parse(format!("{path}[{k}]: float components must be numbers")))
            }
        }
    }
    Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
}

fn check_width(raw: &RawScalar, tag: FieldTag, path: &str) -> Result<(), CliError> {
    if raw.0.len() != tag.dim() {
        return Err(CliError::Parse(format!(
            "{path}: field {tag} needs {} components, found {}",
            tag.dim(),
            raw.0.len()
        )));
    }
    Ok(())
}

/// Parses a point dataset. `tol_rel` sets the float incidence tolerance.
pub fn parse_dataset(text: &str, tol_rel: f64) -> Result<Dataset, CliError> {
    let raw: RawPoints = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let tag = raw.field;
    match check_header(&raw.backend, raw.sqrt_m)? {
        Some(m) => {
            let mut pts = Vec::with_capacity(raw.points.len());
            for (i, [x, y]) in raw.points.iter().enumerate() {
                pts.push(Point::new(
                    exact_scalar(x, tag, m, &format!("points[{i}][0]"))?,
                    exact_scalar(y, tag, m, &format!("points[{i}][1]"))?,
                ));
            }
            Ok(Dataset::Exact { m, set: PointSet::new(tag, pts)? })
        }
        None => {
            let mut pts = Vec::with_capacity(raw.points.len());
            for (i, [x, y]) in raw.points.iter().enumerate() {
                pts.push(Point::new(
                    float_scalar(x, tag, &format!("points[{i}][0]"))?,
                    float_scalar(y, tag, &format!("points[{i}][1]"))?,
                ));
            }
            Ok(Dataset::Float { set: PointSet::with_tolerance(tag, pts, tol_rel)? })
        }
    }
}

pub fn parse_grid(text: &str, tol_rel: f64) -> Result<GridData, CliError> {
    let raw: RawGrid = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let tag = raw.field;
    match check_header(&raw.backend, raw.sqrt_m)? {
        Some(m) => {
            let conv = |xs: &[RawScalar], name: &str| -> Result<Vec<_>, CliError> {
                xs.iter().enumerate().map(|(i, x)| exact_scalar(x, tag, m, &format!("{name}[{i}]"))).collect()
            };
            let grid = GridSpec::new(tag, conv(&raw.a, "a")?, conv(&raw.b, "b")?)?;
            Ok(GridData::Exact { m, grid })
        }
        None => {
            let conv = |xs: &[RawScalar], name: &str| -> Result<Vec<_>, CliError> {
                xs.iter().enumerate().map(|(i, x)| float_scalar(x, tag, &format!("{name}[{i}]"))).collect()
            };
            let grid = GridSpec::new(tag, conv(&raw.a, "a")?, conv(&raw.b, "b")?)?.with_tol_rel(tol_rel);
            Ok(GridData::Float { grid })
        }
    }
}

/// A real component as it appears in files and reports: exact values as
/// grammar strings, floats as JSON numbers.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Num {
    Exact(String),
    Float(f64),
}

pub trait Emit: Real {
    fn num(&self) -> Num;

    fn emit(&self) -> String {
        serde_json::to_string(&self.num()).expect("finite values serialize")
    }
}

impl Emit for QuadExt {
    fn num(&self) -> Num {
        Num::Exact(self.to_string())
    }
}

impl Emit for f64 {
    fn num(&self) -> Num {
        Num::Float(*self)
    }
}

pub fn nums<R: Emit>(q: &Quaternion<R>, tag: FieldTag) -> Vec<Num> {
    q.components()[..tag.dim()].iter().map(|c| c.num()).collect()
}

pub fn emit_scalar<R: Emit>(q: &Quaternion<R>, tag: FieldTag) -> String {
    let parts: Vec<String> = q.components()[..tag.dim()].iter().map(|c| c.emit()).collect();
    format!("[{}]", parts.join(", "))
}

fn header(tag: FieldTag, backend: Backend) -> String {
    match backend {
        Backend::Exact { m } => {
            format!("{{\n  \"field\": \"{tag}\",\n  \"backend\": \"exact\",\n  \"sqrt_m\": {m},\n")
        }
        Backend::Float { .. } => format!("{{\n  \"field\": \"{tag}\",\n  \"backend\": \"float\",\n"),
    }
}

fn emit_list(key: &str, items: &[String], last: bool) -> String {
    let mut out = format!("  \"{key}\": [");
    if items.is_empty() {
        out.push(']');
    } else {
        out.push('\n');
        for (i, item) in items.iter().enumerate() {
            out.push_str("    ");
            out.push_str(item);
            out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
    }
    out.push_str(if last { "\n" } else { ",\n" });
    out
}

/// Canonical serialization: fixed key order, one point per line.
pub fn serialize_points<R: Emit>(tag: FieldTag, backend: Backend, points: &[Point<R>]) -> String {
    let items: Vec<String> = points
        .iter()
        .map(|p| format!("[{}, {}]", emit_scalar(&p.x, tag), emit_scalar(&p.y, tag)))
        .collect();
    header(tag, backend) + &emit_list("points", &items, true) + "}\n"
}

pub fn serialize_grid<R: Emit>(tag: FieldTag, backend: Backend, a: &[Quaternion<R>], b: &[Quaternion<R>]) -> String {
    let emit = |xs: &[Quaternion<R>]| xs.iter().map(|x| emit_scalar(x, tag)).collect::<Vec<_>>();
    header(tag, backend) + &emit_list("a", &emit(a), false) + &emit_list("b", &emit(b), true) + "}\n"
}

pub fn serialize_values<R: Emit>(tag: FieldTag, backend: Backend, values: &[Quaternion<R>]) -> String {
    let items: Vec<String> = values.iter().map(|x| emit_scalar(x, tag)).collect();
    header(tag, backend) + &emit_list("values", &items, true) + "}\n"
}

pub fn serialize_dataset(data: &Dataset) -> String {
    match data {
        Dataset::Exact { set, .. } => serialize_points(set.tag(), data.backend(), set.points()),
        Dataset::Float { set } => serialize_points(set.tag(), data.backend(), set.points()),
    }
}

pub fn serialize_grid_data(data: &GridData) -> String {
    match data {
        GridData::Exact { grid, .. } => serialize_grid(grid.tag, data.backend(), &grid.a, &grid.b),
        GridData::Float { grid } => serialize_grid(grid.tag, data.backend(), &grid.a, &grid.b),
    }
}
