//! Cartesian products `A×B` and the ingredients of the grid arguments.
//!
//! A grid line is *transversal* when it is neither horizontal nor vertical;
//! these are the lines through `(a₁,b₁), (a₂,b₂)` with `a₁ ≠ a₂` and
//! `b₁ ≠ b₂`. Verdicts and witnesses are taken over transversal lines.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::incidence::{enumerate_lines, IncidenceReport, SpannedLine};
use crate::plane::{line_through, on_line, Line, Point, PointSet};
use crate::scalars::{Backend, FieldTag, Quaternion, Real};

/// Relative tolerance for comparing squared distances in the float backend.
pub const EQUAL_DIST_REL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec<R> {
    pub a: Vec<Quaternion<R>>,
    pub b: Vec<Quaternion<R>>,
    pub tag: FieldTag,
    tol_rel: f64,
}

impl<R: Real> GridSpec<R> {
    pub fn new(tag: FieldTag, a: Vec<Quaternion<R>>, b: Vec<Quaternion<R>>) -> Result<Self> {
        for (name, xs) in [("A", &a), ("B", &b)] {
            if xs.len() < 2 {
                return Err(Error::HypothesisViolation(format!(
                    "|{name}| = {} but at least 2 values are required",
                    xs.len()
                )));
            }
            if tag == FieldTag::C && xs.iter().any(|x| !x.is_complex()) {
                return Err(Error::FieldMismatch(format!("{name} has quaternionic values")));
            }
            for i in 0..xs.len() {
                for j in 0..i {
                    if xs[i].approx_eq(&xs[j], 1e-12) {
                        return Err(Error::InvalidSpec(format!(
                            "{name} repeats a value at positions {j} and {i}"
                        )));
                    }
                }
            }
        }
        Ok(Self { a, b, tag, tol_rel: Backend::DEFAULT_TOL_REL })
    }

    /// Relative incidence tolerance of [`GridSpec::point_set`] (float only).
    pub fn with_tol_rel(mut self, tol_rel: f64) -> Self {
        self.tol_rel = tol_rel;
        self
    }

    pub fn tol_rel(&self) -> f64 {
        self.tol_rel
    }

    /// Row-major: point `ia·|B| + ib` is `(a[ia], b[ib])`.
    pub fn point_set(&self) -> Result<PointSet<R>> {
        let pts = self
            .a
            .iter()
            .flat_map(|x| self.b.iter().map(move |y| Point::new(x.clone(), y.clone())))
            .collect();
        PointSet::with_tolerance(self.tag, pts, self.tol_rel)
    }

    pub fn index(&self, ia: usize, ib: usize) -> usize {
        ia * self.b.len() + ib
    }

    pub fn coords(&self, idx: usize) -> (usize, usize) {
        (idx / self.b.len(), idx % self.b.len())
    }

    pub fn is_transversal(&self, line: &SpannedLine<R>) -> bool {
        let (a0, b0) = self.coords(line.members[0]);
        line.members[1..].iter().all(|&m| {
            let (a, b) = self.coords(m);
            a != a0 && b != b0
        })
    }
}

fn extreme_pair<R: Real>(xs: &[Quaternion<R>], want: Ordering) -> Result<(usize, usize)> {
    if xs.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: xs.len() });
    }
    let mut best = (0, 1);
    let mut best_d = (xs[0].clone() - xs[1].clone()).norm_sq();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = (xs[i].clone() - xs[j].clone()).norm_sq();
            if d.compare(&best_d) == want {
                best = (i, j);
                best_d = d;
            }
        }
    }
    Ok(best)
}

/// Indices of the pair minimizing `|xᵢ − xⱼ|²`; ties go to the
/// lexicographically smallest index pair.
pub fn closest_pair<R: Real>(xs: &[Quaternion<R>]) -> Result<(usize, usize)> {
    extreme_pair(xs, Ordering::Less)
}

pub fn furthest_pair<R: Real>(xs: &[Quaternion<R>]) -> Result<(usize, usize)> {
    extreme_pair(xs, Ordering::Greater)
}

fn require_complex<R: Real>(xs: &[&Quaternion<R>]) -> Result<()> {
    if xs.iter().all(|x| x.is_complex()) {
        Ok(())
    } else {
        Err(Error::FieldMismatch("operation is defined over C only".into()))
    }
}

/// An orientation-preserving similarity `z ↦ αz + β` of ℂ.
///
/// Conjugate-linear maps have no representation here.
#[derive(Clone, Debug, PartialEq)]
pub struct Similarity<R> {
    pub alpha: Quaternion<R>,
    pub beta: Quaternion<R>,
}

impl<R: Real> Similarity<R> {
    pub fn apply(&self, z: &Quaternion<R>) -> Quaternion<R> {
        self.alpha.clone() * z.clone() + self.beta.clone()
    }
}

/// The unique similarity with `a₁ ↦ b₁` and `a₂ ↦ b₂`.
pub fn similarity_from_pairs<R: Real>(
    a1: &Quaternion<R>,
    a2: &Quaternion<R>,
    b1: &Quaternion<R>,
    b2: &Quaternion<R>,
) -> Result<Similarity<R>> {
    require_complex(&[a1, a2, b1, b2])?;
    let da = a2.clone() - a1.clone();
    if da.is_zero() {
        return Err(Error::Degenerate("a1 = a2".into()));
    }
    let alpha = (b2.clone() - b1.clone()) * da.inverse()?;
    let beta = b1.clone() - alpha.clone() * a1.clone();
    Ok(Similarity { alpha, beta })
}

/// The two apexes `t± = (a₁+a₂)/2 ± (√3/2)·i·(a₂ − a₁)` completing an
/// equilateral triangle on `a₁a₂`.
pub fn equilateral_third_points<R: Real>(
    a1: &Quaternion<R>,
    a2: &Quaternion<R>,
) -> Result<(Quaternion<R>, Quaternion<R>)> {
    require_complex(&[a1, a2])?;
    let d = a2.clone() - a1.clone();
    if d.is_zero() {
        return Err(Error::Degenerate("coincident base points".into()));
    }
    let half = R::from_ratio(1, 2);
    let h = R::sqrt_int(3).expect("sqrt 3 representable") * half.clone();
    let mid = (a1.clone() + a2.clone()).scale(&half);
    let rot = Quaternion::i() * d;
    let all = rot.components().into_iter().chain(mid.components());
    if !all.into_iter().all(|x| x.compatible(&h)) {
        return Err(Error::BackendMismatch("equilateral apexes need sqrt(3) in the field".into()));
    }
    let offset = rot.scale(&h);
    Ok((mid.clone() + offset.clone(), mid - offset))
}

/// All pairwise squared distances equal; returns the common value.
pub fn is_equilateral<R: Real>(xs: &[Quaternion<R>]) -> Option<R> {
    if xs.len() < 2 {
        return None;
    }
    let d0 = (xs[0].clone() - xs[1].clone()).norm_sq();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let d = (xs[i].clone() - xs[j].clone()).norm_sq();
            if !d.approx_eq(&d0, EQUAL_DIST_REL) {
                return None;
            }
        }
    }
    Some(d0)
}

fn approx_contains<R: Real>(xs: &[Quaternion<R>], y: &Quaternion<R>) -> bool {
    xs.iter().any(|x| x.approx_eq(y, EQUAL_DIST_REL))
}

/// Result of checking that `φ: x ↦ xm + c` carries `A′` onto `B′`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionCheck<R> {
    pub a_proj: Vec<Quaternion<R>>,
    pub b_proj: Vec<Quaternion<R>>,
    /// `φ(A′) = B′` as sets.
    pub maps_onto: bool,
    /// `|φ(x) − φ(y)|² = |m|²·|x − y|²` for every pair.
    pub similarity: bool,
    /// The closest pair of `A′` is carried to a furthest pair of `B′`.
    pub min_to_max: bool,
    /// Both projections equilateral; only checked when `min_to_max` holds.
    pub equilateral: Option<bool>,
}

impl<R: Real> ProjectionCheck<R> {
    pub fn passed(&self) -> bool {
        self.maps_onto && self.similarity && self.equilateral.unwrap_or(true)
    }
}

/// Projections of `ℓ ∩ (A×B)` onto both axes and the similarity check.
pub fn projection_similarity_check<R: Real>(grid: &GridSpec<R>, line: &Line<R>) -> Result<ProjectionCheck<R>> {
    let (m, c) = match line {
        Line::Slope { m, .. } if m.is_zero() => {
            return Err(Error::NotApplicable("horizontal lines have no projection similarity".into()))
        }
        Line::Slope { m, c } => (m, c),
        Line::Vertical { .. } => {
            return Err(Error::NotApplicable("vertical lines have no projection similarity".into()))
        }
    };
    let set = grid.point_set()?;
    let on: Vec<&Point<R>> = set.points().iter().filter(|p| on_line(p, line, set.tolerance())).collect();
    let a_proj: Vec<Quaternion<R>> = on.iter().map(|p| p.x.clone()).collect();
    let b_proj: Vec<Quaternion<R>> = on.iter().map(|p| p.y.clone()).collect();

    let phi = |x: &Quaternion<R>| x.clone() * m.clone() + c.clone();
    let images: Vec<Quaternion<R>> = a_proj.iter().map(phi).collect();
    let maps_onto = images.iter().all(|y| approx_contains(&b_proj, y))
        && b_proj.iter().all(|y| approx_contains(&images, y));

    let m_sq = m.norm_sq();
    let mut similarity = true;
    for i in 0..a_proj.len() {
        for j in i + 1..a_proj.len() {
            let before = (a_proj[i].clone() - a_proj[j].clone()).norm_sq() * m_sq.clone();
            let after = (images[i].clone() - images[j].clone()).norm_sq();
            similarity &= after.approx_eq(&before, EQUAL_DIST_REL);
        }
    }

    let (min_to_max, equilateral) = if a_proj.len() >= 2 {
        let (i, j) = closest_pair(&a_proj)?;
        let (k, l) = furthest_pair(&b_proj)?;
        let mapped = (images[i].clone() - images[j].clone()).norm_sq();
        let widest = (b_proj[k].clone() - b_proj[l].clone()).norm_sq();
        let hit = mapped.approx_eq(&widest, EQUAL_DIST_REL);
        let eq = hit.then(|| is_equilateral(&a_proj).is_some() && is_equilateral(&b_proj).is_some());
        (hit, eq)
    } else {
        (false, None)
    };
    Ok(ProjectionCheck { a_proj, b_proj, maps_onto, similarity, min_to_max, equilateral })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridReport<R> {
    pub verdict: bool,
    /// Minimum-count transversal line.
    pub witness: SpannedLine<R>,
    pub witness_count: usize,
    /// Minimum count over every spanned line, axis-parallel ones included.
    pub min_count_all: usize,
    /// `(m, c)` of `φ` for the witness.
    pub similarity_params: Option<(Quaternion<R>, Quaternion<R>)>,
    pub projection: Option<ProjectionCheck<R>>,
    /// The line through a closest pair of `A` and a furthest pair of `B`.
    pub extremal_line: SpannedLine<R>,
    pub extremal_projection: ProjectionCheck<R>,
    pub incidence: IncidenceReport<R>,
}

/// The count range a witness must fall in: exactly 2 over ℂ, `[2, 5]` over ℍ.
pub fn grid_bound(tag: FieldTag) -> (usize, usize) {
    match tag {
        FieldTag::C => (2, 2),
        FieldTag::H => (2, 5),
    }
}

/// Exhaustive check of the grid statements on `A×B`.
pub fn check_grid_theorem<R: Real>(grid: &GridSpec<R>) -> Result<GridReport<R>> {
    let set = grid.point_set()?;
    let incidence = enumerate_lines(&set)?;
    let witness = incidence
        .lines
        .iter()
        .filter(|l| grid.is_transversal(l))
        .min_by(|x, y| (x.count(), &x.members).cmp(&(y.count(), &y.members)))
        .cloned()
        .expect("a grid with |A|, |B| >= 2 has a transversal line");
    let witness_count = witness.count();
    let (lo, hi) = grid_bound(grid.tag);
    let verdict = (lo..=hi).contains(&witness_count);
    let min_count_all = incidence.min_line().count();

    let (similarity_params, projection) = match &witness.line {
        Line::Slope { m, c } => (
            Some((m.clone(), c.clone())),
            Some(projection_similarity_check(grid, &witness.line)?),
        ),
        Line::Vertical { .. } => (None, None),
    };

    let (a1, a2) = closest_pair(&grid.a)?;
    let (b1, b2) = furthest_pair(&grid.b)?;
    let p = grid.index(a1, b1);
    let q = grid.index(a2, b2);
    let extremal_line = incidence
        .lines
        .iter()
        .find(|l| l.contains(p) && l.contains(q))
        .cloned()
        .expect("every pair lies on a spanned line");
    let extremal_projection = projection_similarity_check(grid, &extremal_line.line)?;

    Ok(GridReport {
        verdict,
        witness,
        witness_count,
        min_count_all,
        similarity_params,
        projection,
        extremal_line,
        extremal_projection,
        incidence,
    })
}

/// A grid point found on one of the probe lines besides the two spanning it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThirdPoint {
    pub a_index: usize,
    pub b_index: usize,
    /// `a₃` is an apex of an equilateral triangle on `a₁a₂`.
    pub a_on_circles: bool,
    /// `b₃` is an apex of an equilateral triangle on `b₁b₂`.
    pub b_on_circles: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterchangeProbe {
    /// Third points on the line through `(a₁,b₁), (a₂,b₂)`.
    pub direct: Vec<ThirdPoint>,
    /// Third points on the line through `(a₁,b₂), (a₂,b₁)`.
    pub swapped: Vec<ThirdPoint>,
}

/// Locates the third grid points forced on the two lines of the
/// interchange step and tests whether they sit at the equilateral apexes.
pub fn interchange_probe<R: Real>(
    grid: &GridSpec<R>,
    (a1, a2): (usize, usize),
    (b1, b2): (usize, usize),
) -> Result<InterchangeProbe> {
    if grid.tag != FieldTag::C {
        return Err(Error::FieldMismatch("the interchange probe is defined over C only".into()));
    }
    let set = grid.point_set()?;
    let a_apex = equilateral_third_points(&grid.a[a1], &grid.a[a2])?;
    let b_apex = equilateral_third_points(&grid.b[b1], &grid.b[b2])?;
    let at_apex = |z: &Quaternion<R>, apex: &(Quaternion<R>, Quaternion<R>)| {
        z.approx_eq(&apex.0, EQUAL_DIST_REL) || z.approx_eq(&apex.1, EQUAL_DIST_REL)
    };
    let third_points = |p: usize, q: usize| -> Result<Vec<ThirdPoint>> {
        let line = line_through(set.point(p), set.point(q))?;
        Ok((0..set.len())
            .filter(|&k| k != p && k != q && on_line(set.point(k), &line, set.tolerance()))
            .map(|k| {
                let (ia, ib) = grid.coords(k);
                ThirdPoint {
                    a_index: ia,
                    b_index: ib,
                    a_on_circles: at_apex(&grid.a[ia], &a_apex),
                    b_on_circles: at_apex(&grid.b[ib], &b_apex),
                }
            })
            .collect())
    };
    Ok(InterchangeProbe {
        direct: third_points(grid.index(a1, b1), grid.index(a2, b2))?,
        swapped: third_points(grid.index(a1, b2), grid.index(a2, b1))?,
    })
}
