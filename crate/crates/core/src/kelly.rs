//! The minimum-distance witness.
//!
//! Among all pairs of a point `p` and a spanned line `ℓ` with `p ∉ ℓ`, pick
//! the one minimizing the distance. After an isometry and a dilation, `p`
//! sits at `(0, 1)` and `ℓ` is the x-axis carrying points `(z₁, 0), …`.
//! Minimality forces `|zᵢ − zⱼ|² > max(|zᵢ|², |zⱼ|²)` for every pair, so the
//! rays `0→zᵢ` meet pairwise at more than 60°. In ℝ² that allows at most 5
//! rays, and in ℝ⁴ at most the kissing number 24.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::incidence::{enumerate_lines, require_noncollinear, SpannedLine};
use crate::plane::{dist_sq_param, inner, lambda_star_param, ParamLine, Point, PointSet};
use crate::scalars::{FieldTag, Quaternion, Real};

/// Kissing number of the 4-ball.
pub const KISSING_NUMBER_R4: usize = 24;

/// Recorded on every quaternionic witness report.
pub const STRICT_KISSING_NOTE: &str =
    "the bound only needs the strict kissing number of R^4 (unit balls touching a central ball \
     but not each other), which is at most 24";

/// Maximum number of points a minimal witness line can carry.
pub fn bound_from_angles(tag: FieldTag) -> usize {
    match tag {
        FieldTag::C => 5,
        FieldTag::H => KISSING_NUMBER_R4,
    }
}

/// Relative tolerance under which two float distances count as tied.
const FLOAT_TIE_REL: f64 = 1e-9;

fn compare_dist<R: Real>(a: &R, b: &R) -> Ordering {
    if !R::EXACT && a.approx_eq(b, FLOAT_TIE_REL) {
        Ordering::Equal
    } else {
        a.compare(b)
    }
}

/// An orthonormal frame sending `p` to `(0, 1)` and `ℓ` onto the x-axis,
/// followed by the dilation by `1/dist(p, ℓ)`.
///
/// The x-coordinate of a mapped point is `⟨q − f, d⟩ / (‖d‖·‖n‖)` where `f`
/// is the foot of `p`, `d` the line direction and `n = p − f`. The square
/// root is kept out of exact arithmetic by storing the unscaled numerator and
/// the common factor `1/(‖d‖²‖n‖²)`.
#[derive(Clone, Debug)]
pub struct AxisFrame<R> {
    pub foot: Point<R>,
    pub dir: Point<R>,
    pub normal: Point<R>,
    /// `1 / (‖d‖²‖n‖²)`, the square of the x scale factor.
    pub scale_sq: R,
    normal_sq: R,
}

impl<R: Real> AxisFrame<R> {
    pub fn new(p: &Point<R>, line: &ParamLine<R>) -> Result<Self> {
        let lambda = lambda_star_param(p, line);
        let foot = line.at(&lambda);
        let normal = p.clone() - foot.clone();
        let normal_sq = normal.norm_sq();
        if normal_sq.is_zero() {
            return Err(Error::Degenerate("point lies on the line".into()));
        }
        let scale_sq = (line.dir.norm_sq() * normal_sq.clone()).recip()?;
        Ok(Self { foot, dir: line.dir.clone(), normal, scale_sq, normal_sq })
    }

    /// Unscaled x-coordinate; the true coordinate is this times `√scale_sq`.
    pub fn x_unscaled(&self, q: &Point<R>) -> Quaternion<R> {
        inner(&(q.clone() - self.foot.clone()), &self.dir)
    }

    /// The y-coordinate, exact in every backend.
    pub fn y(&self, q: &Point<R>) -> Quaternion<R> {
        let inv = self.normal_sq.recip().expect("non-zero normal");
        inner(&(q.clone() - self.foot.clone()), &self.normal).scale(&inv)
    }

    pub fn map_f64(&self, q: &Point<R>) -> Point<f64> {
        let s = self.scale_sq.to_f64().sqrt();
        Point::new(self.x_unscaled(q).to_f64().scale(&s), self.y(q).to_f64())
    }
}

/// The line's points in the normalized frame: `zᵢ = unscaled[i]·√scale_sq`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedLine<R> {
    pub unscaled: Vec<Quaternion<R>>,
    pub scale_sq: R,
}

impl<R: Real> NormalizedLine<R> {
    pub fn len(&self) -> usize {
        self.unscaled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unscaled.is_empty()
    }

    pub fn modulus_sq(&self, i: usize) -> R {
        self.unscaled[i].norm_sq() * self.scale_sq.clone()
    }

    /// `|zᵢ − zⱼ|²`, exact.
    pub fn diff_sq(&self, i: usize, j: usize) -> R {
        (self.unscaled[i].clone() - self.unscaled[j].clone()).norm_sq() * self.scale_sq.clone()
    }

    pub fn zs_f64(&self) -> Vec<Quaternion<f64>> {
        let s = self.scale_sq.to_f64().sqrt();
        self.unscaled.iter().map(|u| u.to_f64().scale(&s)).collect()
    }

    /// [`angle_property`] on the normalized points; `margin` is in
    /// normalized (squared) units.
    pub fn angle_check(&self, margin: &R) -> Result<AngleCheck> {
        // |uᵢ−uⱼ|²·s > |uᵢ|²·s + margin  ⟺  |uᵢ−uⱼ|² > |uᵢ|² + margin/s
        let unscaled_margin = margin.div(&self.scale_sq)?;
        Ok(angle_property(&self.unscaled, &unscaled_margin))
    }
}

/// Maps the members of a line into the frame where `p = (0, 1)` and the line
/// is the x-axis, returning their x-coordinates.
pub fn normalize_to_axis<R: Real>(
    p: &Point<R>,
    line: &ParamLine<R>,
    members: &[Point<R>],
) -> Result<NormalizedLine<R>> {
    let frame = AxisFrame::new(p, line)?;
    Ok(NormalizedLine {
        unscaled: members.iter().map(|q| frame.x_unscaled(q)).collect(),
        scale_sq: frame.scale_sq,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAngle {
    pub i: usize,
    pub j: usize,
    /// `|zᵢ − zⱼ|² > max(|zᵢ|², |zⱼ|²) + margin`
    pub wide: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleCheck {
    pub pairs: Vec<PairAngle>,
}

impl AngleCheck {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.wide)
    }
}

/// For each pair, whether the angle `zᵢ 0 zⱼ` exceeds 60°, stated on squared
/// moduli: `|zᵢ − zⱼ|² > |zᵢ|² + margin` and `> |zⱼ|² + margin`.
pub fn angle_property<R: Real>(zs: &[Quaternion<R>], margin: &R) -> AngleCheck {
    let mut pairs = Vec::new();
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            let d = (zs[i].clone() - zs[j].clone()).norm_sq();
            let wide = [&zs[i], &zs[j]]
                .iter()
                .all(|z| d.compare(&(z.norm_sq() + margin.clone())) == Ordering::Greater);
            pairs.push(PairAngle { i, j, wide });
        }
    }
    AngleCheck { pairs }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport<R> {
    /// Index of the point `p`.
    pub point: usize,
    /// The line `qr` at minimum distance from `p`.
    pub line: SpannedLine<R>,
    pub dist_sq: R,
    pub normalized: NormalizedLine<R>,
    pub incidence: usize,
    pub bound: usize,
    pub angle_check: AngleCheck,
    pub note: Option<&'static str>,
}

impl<R: Real> WitnessReport<R> {
    pub fn passed(&self) -> bool {
        self.angle_check.passed() && (2..=self.bound).contains(&self.incidence)
    }
}

/// Exhaustive search for the non-incident (point, spanned line) pair at
/// minimum distance.
///
/// Ties go to the smaller point index, then to the smaller member list.
/// Exact backends decide every comparison exactly.
pub fn find_witness<R: Real>(set: &PointSet<R>) -> Result<WitnessReport<R>> {
    let report = enumerate_lines(set)?;
    require_noncollinear(set, &report)?;
    let params: Vec<ParamLine<R>> = report.lines.iter().map(|l| l.param(set)).collect();

    let per_point: Vec<Option<(R, usize)>> = (0..set.len())
        .into_par_iter()
        .map(|p| {
            let mut best: Option<(R, usize)> = None;
            for (li, line) in report.lines.iter().enumerate() {
                if line.contains(p) {
                    continue;
                }
                let d = dist_sq_param(set.point(p), &params[li]);
                if best.as_ref().is_none_or(|(b, _)| compare_dist(&d, b) == Ordering::Less) {
                    best = Some((d, li));
                }
            }
            best
        })
        .collect();

    let mut best: Option<(R, usize, usize)> = None;
    for (p, cand) in per_point.into_iter().enumerate() {
        if let Some((d, li)) = cand {
            if best.as_ref().is_none_or(|(b, _, _)| compare_dist(&d, b) == Ordering::Less) {
                best = Some((d, p, li));
            }
        }
    }
    let (dist_sq, point, li) = best.expect("a noncollinear set has a non-incident pair");

    let line = report.lines[li].clone();
    let members: Vec<Point<R>> = line.members.iter().map(|&i| set.point(i).clone()).collect();
    let normalized = normalize_to_axis(set.point(point), &params[li], &members)?;
    // float strictness margin: ε² in units where the witness distance is 1
    let margin = if R::EXACT {
        R::zero()
    } else {
        let eps = set.tolerance().abs;
        R::from_f64(eps * eps / dist_sq.to_f64())
    };
    let angle_check = normalized.angle_check(&margin)?;
    let bound = bound_from_angles(set.tag());
    Ok(WitnessReport {
        point,
        incidence: line.count(),
        line,
        dist_sq,
        normalized,
        bound,
        angle_check,
        note: (set.tag() == FieldTag::H).then_some(STRICT_KISSING_NOTE),
    })
}
