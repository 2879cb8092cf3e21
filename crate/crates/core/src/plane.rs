//! Geometry of `K²` as a left inner-product space.
//!
//! Scalars act on the left: `λ·(x, y) = (λx, λy)`. A non-vertical line is
//! `{(x, xm + c)}` and a vertical one is `{(x0, y)}`; this form is canonical,
//! so two points span exactly one [`Line`] value in exact arithmetic.

use std::cmp::Ordering;
use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::scalars::{FieldTag, Quaternion, Real};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point<R> {
    pub x: Quaternion<R>,
    pub y: Quaternion<R>,
}

impl<R: Real> Point<R> {
    pub fn new(x: Quaternion<R>, y: Quaternion<R>) -> Self {
        Self { x, y }
    }

    pub fn origin() -> Self {
        Self::new(Quaternion::zero(), Quaternion::zero())
    }

    /// `λ·(x, y) = (λx, λy)`.
    pub fn scale_left(&self, lambda: &Quaternion<R>) -> Self {
        Self::new(lambda.clone() * self.x.clone(), lambda.clone() * self.y.clone())
    }

    pub fn norm_sq(&self) -> R {
        self.x.norm_sq() + self.y.norm_sq()
    }

    pub fn dist_sq(&self, other: &Self) -> R {
        (self.clone() - other.clone()).norm_sq()
    }

    pub fn is_complex(&self) -> bool {
        self.x.is_complex() && self.y.is_complex()
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point::new(self.x.to_f64(), self.y.to_f64())
    }
}

impl<R: Real> Add for Point<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<R: Real> Sub for Point<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

/// `⟨u, v⟩ = u₁·conj(v₁) + u₂·conj(v₂)`.
///
/// Left-linear in `u`: `⟨λu, v⟩ = λ⟨u, v⟩`, and `⟨u, λv⟩ = ⟨u, v⟩·conj(λ)`.
pub fn inner<R: Real>(u: &Point<R>, v: &Point<R>) -> Quaternion<R> {
    u.x.clone() * v.x.conj() + u.y.clone() * v.y.conj()
}

/// A line of `K²` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Line<R> {
    /// `{(x, xm + c) : x ∈ K}`
    Slope { m: Quaternion<R>, c: Quaternion<R> },
    /// `{(x0, y) : y ∈ K}`
    Vertical { x0: Quaternion<R> },
}

impl<R: Real> Line<R> {
    pub fn is_vertical(&self) -> bool {
        matches!(self, Line::Vertical { .. })
    }

    /// `y` at `x` for a slope line; `None` for vertical lines.
    pub fn eval(&self, x: &Quaternion<R>) -> Option<Quaternion<R>> {
        match self {
            Line::Slope { m, c } => Some(x.clone() * m.clone() + c.clone()),
            Line::Vertical { .. } => None,
        }
    }

    /// Exact membership by substitution into the line equation.
    pub fn satisfies(&self, p: &Point<R>) -> bool {
        match self {
            Line::Slope { m, c } => p.y == p.x.clone() * m.clone() + c.clone(),
            Line::Vertical { x0 } => &p.x == x0,
        }
    }

    pub fn param(&self) -> ParamLine<R> {
        ParamLine::from_line(self)
    }

    pub fn to_f64(&self) -> Line<f64> {
        match self {
            Line::Slope { m, c } => Line::Slope { m: m.to_f64(), c: c.to_f64() },
            Line::Vertical { x0 } => Line::Vertical { x0: x0.to_f64() },
        }
    }
}

/// A line written as `{anchor + λ·dir : λ ∈ K}` with `dir ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamLine<R> {
    pub anchor: Point<R>,
    pub dir: Point<R>,
}

impl<R: Real> ParamLine<R> {
    pub fn from_line(line: &Line<R>) -> Self {
        match line {
            Line::Slope { m, c } => Self {
                anchor: Point::new(Quaternion::zero(), c.clone()),
                dir: Point::new(Quaternion::one(), m.clone()),
            },
            Line::Vertical { x0 } => Self {
                anchor: Point::new(x0.clone(), Quaternion::zero()),
                dir: Point::new(Quaternion::zero(), Quaternion::one()),
            },
        }
    }

    /// Anchored at `p` with direction `q − p`.
    pub fn through(p: &Point<R>, q: &Point<R>) -> Result<Self> {
        let dir = q.clone() - p.clone();
        if dir.x.is_zero() && dir.y.is_zero() {
            return Err(Error::Degenerate("a line needs two distinct points".into()));
        }
        Ok(Self { anchor: p.clone(), dir })
    }

    pub fn at(&self, lambda: &Quaternion<R>) -> Point<R> {
        self.anchor.clone() + self.dir.scale_left(lambda)
    }
}

/// The line through two distinct points.
///
/// Returns `Vertical` when the x-coordinates agree, otherwise
/// `m = (pₓ − qₓ)⁻¹(p_y − q_y)` (left inverse) and `c = p_y − pₓm`.
pub fn line_through<R: Real>(p: &Point<R>, q: &Point<R>) -> Result<Line<R>> {
    if p == q {
        return Err(Error::Degenerate("line through a repeated point".into()));
    }
    let dx = p.x.clone() - q.x.clone();
    if dx.is_zero() {
        return Ok(Line::Vertical { x0: p.x.clone() });
    }
    let m = dx.inverse()? * (p.y.clone() - q.y.clone());
    let c = p.y.clone() - p.x.clone() * m.clone();
    Ok(Line::Slope { m, c })
}

/// The minimizer `λ* = ⟨w, d⟩ / ‖d‖²` of `‖p − a − λd‖²`, where `w = p − a`.
pub fn lambda_star_param<R: Real>(p: &Point<R>, line: &ParamLine<R>) -> Quaternion<R> {
    let w = p.clone() - line.anchor.clone();
    let dd = line.dir.norm_sq();
    let inv = dd.recip().expect("direction of a ParamLine is non-zero");
    inner(&w, &line.dir).scale(&inv)
}

/// Squared distance from `p` to the line, `‖w − λ*d‖²`.
///
/// Equal to `‖w‖² − |⟨w,d⟩|²/‖d‖²`; evaluating the residual directly avoids
/// the cancellation of the closed form in floating point.
pub fn dist_sq_param<R: Real>(p: &Point<R>, line: &ParamLine<R>) -> R {
    let lambda = lambda_star_param(p, line);
    p.dist_sq(&line.at(&lambda))
}

pub fn lambda_star<R: Real>(p: &Point<R>, line: &Line<R>) -> Quaternion<R> {
    lambda_star_param(p, &line.param())
}

pub fn dist_sq_point_line<R: Real>(p: &Point<R>, line: &Line<R>) -> R {
    dist_sq_param(p, &line.param())
}

/// Absolute incidence tolerance for the float backend, applied to distances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
}

impl Tolerance {
    pub const fn exact() -> Self {
        Self { abs: 0.0 }
    }

    pub fn new(abs: f64) -> Self {
        Self { abs }
    }

    /// Whether a squared distance counts as zero.
    pub fn is_zero_dist_sq<R: Real>(&self, dist_sq: &R) -> bool {
        if R::EXACT {
            dist_sq.is_zero()
        } else {
            dist_sq.to_f64() <= self.abs * self.abs
        }
    }
}

/// Exact substitution in the exact backend; distance within `tol` otherwise.
pub fn on_line<R: Real>(p: &Point<R>, line: &Line<R>, tol: &Tolerance) -> bool {
    if R::EXACT {
        line.satisfies(p)
    } else {
        tol.is_zero_dist_sq(&dist_sq_point_line(p, line))
    }
}

/// Whether three points lie on a common line. Coincident inputs count as
/// collinear.
pub fn collinear<R: Real>(p: &Point<R>, q: &Point<R>, r: &Point<R>, tol: &Tolerance) -> bool {
    // test the remaining point against the longest side, which is the
    // best-conditioned choice and independent of argument order
    let pts = [p, q, r];
    let pairs = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];
    let (i, j, k) = pairs
        .into_iter()
        .max_by(|a, b| {
            pts[a.0]
                .dist_sq(pts[a.1])
                .compare(&pts[b.0].dist_sq(pts[b.1]))
                .then(Ordering::Greater)
        })
        .expect("three pairs");
    if tol.is_zero_dist_sq(&pts[i].dist_sq(pts[j])) {
        return true;
    }
    match ParamLine::through(pts[i], pts[j]) {
        Ok(line) => tol.is_zero_dist_sq(&dist_sq_param(pts[k], &line)),
        Err(_) => true,
    }
}

/// A finite, duplicate-free list of points in `K²`.
#[derive(Clone, Debug)]
pub struct PointSet<R> {
    tag: FieldTag,
    points: Vec<Point<R>>,
    tolerance: Tolerance,
    tol_rel: f64,
}

impl<R: Real> PointSet<R> {
    pub fn new(tag: FieldTag, points: Vec<Point<R>>) -> Result<Self> {
        Self::with_tolerance(tag, points, crate::scalars::Backend::DEFAULT_TOL_REL)
    }

    /// `tol_rel` is multiplied by the bounding-box diameter to obtain the
    /// absolute incidence tolerance (unused by exact backends).
    pub fn with_tolerance(tag: FieldTag, points: Vec<Point<R>>, tol_rel: f64) -> Result<Self> {
        if tag == FieldTag::C {
            if let Some(i) = points.iter().position(|p| !p.is_complex()) {
                return Err(Error::FieldMismatch(format!(
                    "point {i} has quaternionic components in a complex dataset"
                )));
            }
        }
        let tolerance = if R::EXACT {
            Tolerance::exact()
        } else {
            Tolerance::new(tol_rel * bbox_diameter(&points))
        };
        for i in 0..points.len() {
            for j in 0..i {
                if tolerance.is_zero_dist_sq(&points[i].dist_sq(&points[j])) {
                    return Err(Error::DuplicatePoint(j, i));
                }
            }
        }
        Ok(Self { tag, points, tolerance, tol_rel })
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn points(&self) -> &[Point<R>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point<R> {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tolerance
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    pub fn to_f64(&self) -> Result<PointSet<f64>> {
        PointSet::with_tolerance(self.tag, self.points.iter().map(Point::to_f64).collect(), self.tol_rel)
    }

    /// `true` when every point lies on the line through the first two.
    pub fn is_collinear(&self) -> bool {
        if self.points.len() < 3 {
            return true;
        }
        let line = line_through(&self.points[0], &self.points[1]).expect("distinct points");
        if R::EXACT {
            return self.points[2..].iter().all(|p| line.satisfies(p));
        }
        let pl = ParamLine::through(&self.points[0], &self.points[1]).expect("distinct points");
        self.points[2..]
            .iter()
            .all(|p| self.tolerance.is_zero_dist_sq(&dist_sq_param(p, &pl)))
    }
}

/// Euclidean diameter of the axis-aligned bounding box, over all real
/// coordinates.
pub fn bbox_diameter<R: Real>(points: &[Point<R>]) -> f64 {
    let mut lo = [f64::INFINITY; 8];
    let mut hi = [f64::NEG_INFINITY; 8];
    for p in points {
        let coords = p.x.components().into_iter().chain(p.y.components());
        for (k, v) in coords.enumerate() {
            let v = v.to_f64();
            lo[k] = lo[k].min(v);
            hi[k] = hi[k].max(v);
        }
    }
    if points.is_empty() {
        return 0.0;
    }
    lo.iter().zip(&hi).map(|(l, h)| (h - l) * (h - l)).sum::<f64>().sqrt()
}
