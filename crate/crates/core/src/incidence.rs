//! Spanned lines of a point set and their incidence counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kelly::bound_from_angles;
use crate::plane::{dist_sq_param, line_through, on_line, Line, ParamLine, PointSet};
use crate::scalars::{FieldTag, Real};

/// A line spanned by at least two points of a [`PointSet`], with every point
/// of the set incident to it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpannedLine<R> {
    pub line: Line<R>,
    /// Sorted indices into the point set.
    pub members: Vec<usize>,
}

impl<R: Real> SpannedLine<R> {
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.members.binary_search(&idx).is_ok()
    }

    /// Parameterization through the first two members; better conditioned
    /// in floating point than the slope-intercept form.
    pub fn param(&self, set: &PointSet<R>) -> ParamLine<R> {
        ParamLine::through(set.point(self.members[0]), set.point(self.members[1]))
            .expect("members are distinct points")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceReport<R> {
    /// Sorted by member lists.
    pub lines: Vec<SpannedLine<R>>,
    /// Incidence count → number of lines with exactly that many points.
    pub histogram: BTreeMap<usize, usize>,
    min_line: usize,
}

impl<R: Real> IncidenceReport<R> {
    fn new(mut lines: Vec<SpannedLine<R>>) -> Self {
        lines.sort_by(|a, b| a.members.cmp(&b.members));
        let mut histogram = BTreeMap::new();
        for l in &lines {
            *histogram.entry(l.count()).or_insert(0) += 1;
        }
        let min_line = (0..lines.len())
            .min_by(|&i, &j| {
                (lines[i].count(), &lines[i].members).cmp(&(lines[j].count(), &lines[j].members))
            })
            .unwrap_or(0);
        Self { lines, histogram, min_line }
    }

    /// The line with fewest points; ties go to the smallest member list.
    pub fn min_line(&self) -> &SpannedLine<R> {
        &self.lines[self.min_line]
    }

    /// Lines whose incidence count lies in `[lo, hi]`.
    pub fn lines_with_count(&self, lo: usize, hi: usize) -> impl Iterator<Item = &SpannedLine<R>> {
        self.lines.iter().filter(move |l| (lo..=hi).contains(&l.count()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum LineKey<K> {
    Slope([K; 4], [K; 4]),
    Vertical([K; 4]),
}

fn line_key<R: Real>(line: &Line<R>) -> LineKey<R::Key> {
    match line {
        Line::Slope { m, c } => LineKey::Slope(m.key(), c.key()),
        Line::Vertical { x0 } => LineKey::Vertical(x0.key()),
    }
}

/// All maximal collinear subsets of size at least two.
///
/// Exact backends group point pairs by their canonical line. The float
/// backend grows each line from an uncovered pair, adding every point within
/// tolerance whose pairs with the current members are still uncovered, so
/// the resulting lines always partition the point pairs.
pub fn enumerate_lines<R: Real>(set: &PointSet<R>) -> Result<IncidenceReport<R>> {
    if set.len() < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: set.len() });
    }
    let lines = if R::EXACT { group_by_key(set) } else { merge_by_collinearity(set) };
    Ok(IncidenceReport::new(lines))
}

fn group_by_key<R: Real>(set: &PointSet<R>) -> Vec<SpannedLine<R>> {
    let n = set.len();
    let per_anchor: Vec<Vec<(usize, Line<R>)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i + 1..n)
                .map(|j| (j, line_through(set.point(i), set.point(j)).expect("distinct points")))
                .collect()
        })
        .collect();

    let mut groups: HashMap<LineKey<R::Key>, (Line<R>, BTreeSet<usize>)> = HashMap::new();
    for (i, row) in per_anchor.into_iter().enumerate() {
        for (j, line) in row {
            let entry = groups
                .entry(line_key(&line))
                .or_insert_with(|| (line, BTreeSet::new()));
            entry.1.insert(i);
            entry.1.insert(j);
        }
    }
    groups
        .into_values()
        .map(|(line, members)| SpannedLine { line, members: members.into_iter().collect() })
        .collect()
}

fn merge_by_collinearity<R: Real>(set: &PointSet<R>) -> Vec<SpannedLine<R>> {
    let n = set.len();
    let tol = set.tolerance();
    let mut covered = vec![false; n * n];
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i * n + j] {
                continue;
            }
            let pl = ParamLine::through(set.point(i), set.point(j)).expect("distinct points");
            let mut members = vec![i, j];
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if !tol.is_zero_dist_sq(&dist_sq_param(set.point(k), &pl)) {
                    continue;
                }
                if members.iter().all(|&u| !covered[u * n + k]) {
                    members.push(k);
                }
            }
            members.sort_unstable();
            for &u in &members {
                for &v in &members {
                    covered[u * n + v] = true;
                }
            }
            let line = line_through(set.point(i), set.point(j)).expect("distinct points");
            lines.push(SpannedLine { line, members });
        }
    }
    lines
}

/// `|S ∩ ℓ|`.
pub fn incidence_count<R: Real>(set: &PointSet<R>, line: &Line<R>) -> usize {
    set.points().iter().filter(|p| on_line(p, line, set.tolerance())).count()
}

/// Outcome of testing the `2 ≤ |S∩ℓ| ≤ bound` statement on a point set.
#[derive(Clone, Debug, PartialEq)]
pub struct SgCheck<R> {
    pub passed: bool,
    pub bound: usize,
    /// The minimum-incidence spanned line.
    pub witness: SpannedLine<R>,
    pub report: IncidenceReport<R>,
}

pub(crate) fn require_noncollinear<R: Real>(set: &PointSet<R>, report: &IncidenceReport<R>) -> Result<()> {
    if set.len() < 3 {
        return Err(Error::HypothesisViolation(format!(
            "need at least 3 points, got {}",
            set.len()
        )));
    }
    if report.lines.iter().any(|l| l.count() == set.len()) {
        return Err(Error::HypothesisViolation("the point set is collinear".into()));
    }
    Ok(())
}

/// Passes iff some spanned line carries between 2 and the field's bound
/// (5 for ℂ, 24 for ℍ) points.
pub fn check_sg_bound<R: Real>(set: &PointSet<R>, tag: FieldTag) -> Result<SgCheck<R>> {
    let report = enumerate_lines(set)?;
    require_noncollinear(set, &report)?;
    let bound = bound_from_angles(tag);
    let witness = report.min_line().clone();
    let passed = (2..=bound).contains(&witness.count());
    Ok(SgCheck { passed, bound, witness, report })
}
