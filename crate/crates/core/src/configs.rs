//! Deterministic generators for test configurations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::plane::{Point, PointSet};
use crate::scalars::{Backend, FieldTag, QuadExt, Quaternion};

/// Radicand of the Hesse coordinates.
pub const HESSE_SQRT_M: u32 = 3;

/// Radicand of the exact regular 4-simplex.
pub const SIMPLEX_SQRT_M: u32 = 5;

/// The nine inflection points of the Fermat cubic `x³ + y³ + z³ = 0` in the
/// affine chart `(x/L, y/L)` with `L = x + 2y + 3z`, written as
/// `[re x, im x, re y, im y]` over `ℚ(√3)`.
pub const HESSE_POINTS: [[&str; 4]; 9] = [
    ["0", "0", "-1", "0"],
    ["0", "0", "7/38", "0+3/38r"],
    ["0", "0", "7/38", "0-3/38r"],
    ["-1/2", "0", "0", "0"],
    ["5/26", "0-3/26r", "0", "0"],
    ["5/26", "0+3/26r", "0", "0"],
    ["-1", "0", "1", "0"],
    ["2/7", "0+1/7r", "5/14", "0-1/14r"],
    ["2/7", "0-1/7r", "5/14", "0+1/14r"],
];

/// Recomputes the Hesse points from the Fermat cubic; [`HESSE_POINTS`] pins
/// the result.
pub fn hesse_from_fermat() -> Vec<Point<QuadExt>> {
    type Qx = Quaternion<QuadExt>;
    let omega = Qx::complex(QuadExt::ratio(-1, 2), QuadExt::from_parts((0, 1), (1, 2), HESSE_SQRT_M));
    let cube_roots = [Qx::one(), omega.clone(), omega.clone() * omega];
    let mut projective: Vec<[Qx; 3]> = Vec::new();
    for e in &cube_roots {
        projective.push([Qx::zero(), Qx::one(), -e.clone()]);
    }
    for e in &cube_roots {
        projective.push([-e.clone(), Qx::zero(), Qx::one()]);
    }
    for e in &cube_roots {
        projective.push([Qx::one(), -e.clone(), Qx::zero()]);
    }
    projective
        .into_iter()
        .map(|[x, y, z]| {
            let l = x.clone() + y.clone() * Qx::from_i64(2) + z * Qx::from_i64(3);
            let inv = l.inverse().expect("the chart avoids all nine points");
            Point::new(x * inv.clone(), y * inv)
        })
        .collect()
}

/// The affine Hesse configuration: 9 points, 12 lines of 3, exact over `ℚ(√3)`.
pub fn gen_hesse() -> PointSet<QuadExt> {
    let pts = HESSE_POINTS
        .iter()
        .map(|[xr, xi, yr, yi]| {
            let parse = |s: &str| QuadExt::parse(s, HESSE_SQRT_M).expect("pinned constant");
            Point::new(Quaternion::complex(parse(xr), parse(xi)), Quaternion::complex(parse(yr), parse(yi)))
        })
        .collect();
    PointSet::new(FieldTag::C, pts).expect("pinned Hesse points are distinct")
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_scalar(rng: &mut ChaCha8Rng, tag: FieldTag) -> Quaternion<f64> {
    let mut c = [0.0; 4];
    for v in c.iter_mut().take(tag.dim()) {
        *v = rng.random_range(-1.0..=1.0);
    }
    Quaternion::new(c[0], c[1], c[2], c[3])
}

/// `n` points with every real coordinate uniform in `[−1, 1]`.
pub fn gen_random_points(n: usize, tag: FieldTag, seed: u64) -> Result<PointSet<f64>> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!("random_points needs n >= 3, got {n}")));
    }
    let mut rng = rng(seed);
    loop {
        let pts = (0..n)
            .map(|_| Point::new(random_scalar(&mut rng, tag), random_scalar(&mut rng, tag)))
            .collect();
        match PointSet::new(tag, pts) {
            Ok(set) if !set.is_collinear() => return Ok(set),
            _ => continue,
        }
    }
}

/// `n` distinct noncollinear points with small integer coordinates, so that
/// many collinear triples occur; exactly representable in both backends.
pub fn gen_lattice_points(n: usize, tag: FieldTag, seed: u64) -> Result<PointSet<QuadExt>> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!("lattice points need n >= 3, got {n}")));
    }
    let span: i64 = match tag {
        FieldTag::C => 2,
        FieldTag::H => 1,
    };
    let capacity = (2 * span + 1).pow(2 * tag.dim() as u32) as usize;
    if n > capacity {
        return Err(Error::InvalidSpec(format!("at most {capacity} lattice points fit")));
    }
    let mut rng = rng(seed);
    let scalar = |rng: &mut ChaCha8Rng| {
        let mut c = [0i64; 4];
        for v in c.iter_mut().take(tag.dim()) {
            *v = rng.random_range(-span..=span);
        }
        Quaternion::new(c[0].into(), c[1].into(), c[2].into(), c[3].into())
    };
    loop {
        let mut pts: Vec<Point<QuadExt>> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = Point::new(scalar(&mut rng), scalar(&mut rng));
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let set = PointSet::new(tag, pts)?;
        if !set.is_collinear() {
            return Ok(set);
        }
    }
}

/// Random `A×B` with `|A| = na`, `|B| = nb`, components uniform in `[−1, 1]`.
pub fn gen_random_grid(na: usize, nb: usize, tag: FieldTag, seed: u64) -> Result<GridSpec<f64>> {
    let mut rng = rng(seed);
    let a = (0..na).map(|_| random_scalar(&mut rng, tag)).collect();
    let b = (0..nb).map(|_| random_scalar(&mut rng, tag)).collect();
    GridSpec::new(tag, a, b)
}

/// Vertices of a regular 4-simplex in ℍ ≅ ℝ⁴: the units `1, i, j, k` and
/// `t(1 + i + j + k)` with `t = (1 + √5)/4`; every squared edge is 2.
pub fn gen_simplex4() -> Vec<Quaternion<QuadExt>> {
    let t = QuadExt::from_parts((1, 4), (1, 4), SIMPLEX_SQRT_M);
    vec![
        Quaternion::one(),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
        Quaternion::new(t.clone(), t.clone(), t.clone(), t),
    ]
}

/// `n` complex points within `eps` of a random line, globally noncollinear.
///
/// The set is validated with the default tolerance; when `eps` is below it
/// the result reports [`PointSet::is_collinear`] as `true`.
pub fn gen_near_collinear(n: usize, eps: f64, seed: u64) -> Result<PointSet<f64>> {
    if n < 3 || !(eps > 0.0) {
        return Err(Error::InvalidSpec(format!("near_collinear needs n >= 3 and eps > 0 (n = {n}, eps = {eps})")));
    }
    let mut rng = rng(seed);
    let tag = FieldTag::C;
    let m = random_scalar(&mut rng, tag);
    let c = random_scalar(&mut rng, tag);
    let pts: Vec<Point<f64>> = (0..n)
        .map(|k| {
            let x = random_scalar(&mut rng, tag);
            let mut offset = random_scalar(&mut rng, tag).scale(&eps);
            if k == n - 1 {
                // at least one point sits a full eps off the line
                offset = Quaternion::complex(eps, 0.0);
            }
            Point::new(x.clone(), x * m.clone() + c.clone() + offset)
        })
        .collect();
    PointSet::new(tag, pts)
}

/// Exact variant: integer abscissae on `y = x`, with one point lifted by
/// `1/den`.
pub fn gen_near_collinear_exact(n: usize, den: i64, seed: u64) -> Result<PointSet<QuadExt>> {
    if n < 3 || den <= 0 {
        return Err(Error::InvalidSpec("near_collinear needs n >= 3 and a positive denominator".into()));
    }
    let mut rng = rng(seed);
    let lifted = rng.random_range(0..n);
    let pts = (0..n)
        .map(|k| {
            let x = Quaternion::from_i64(k as i64);
            let lift = if k == lifted { QuadExt::ratio(1, den) } else { QuadExt::int(0) };
            Point::new(x.clone(), x + Quaternion::real(lift))
        })
        .collect();
    PointSet::new(FieldTag::C, pts)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    Hesse,
    RandomPoints,
    RandomGrid,
    Simplex4,
    NearCollinear,
    Lattice,
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hesse" => Self::Hesse,
            "random_points" => Self::RandomPoints,
            "random_grid" => Self::RandomGrid,
            "simplex4" => Self::Simplex4,
            "near_collinear" => Self::NearCollinear,
            "lattice" => Self::Lattice,
            other => return Err(Error::InvalidSpec(format!("unknown generator {other:?}"))),
        })
    }
}

/// A complete, reproducible description of a generated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub tag: FieldTag,
    pub backend: Backend,
    pub n: usize,
    pub na: usize,
    pub nb: usize,
    pub eps: f64,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        Self { kind, tag: FieldTag::C, backend: Backend::float(), n: 10, na: 4, nb: 4, eps: 1e-3, seed: 0 }
    }
}

#[derive(Clone, Debug)]
pub enum Generated {
    ExactPoints(PointSet<QuadExt>),
    FloatPoints(PointSet<f64>),
    FloatGrid(GridSpec<f64>),
    ExactScalars(Vec<Quaternion<QuadExt>>),
    FloatScalars(Vec<Quaternion<f64>>),
}

fn tol_rel(backend: Backend) -> f64 {
    match backend {
        Backend::Float { tol_rel } => tol_rel,
        Backend::Exact { .. } => Backend::DEFAULT_TOL_REL,
    }
}

/// Dispatches a spec to its generator, rejecting invalid combinations.
pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let exact = spec.backend.is_exact();
    let invalid = |why: &str| Err(Error::InvalidSpec(why.into()));
    match spec.kind {
        GeneratorKind::Hesse => {
            if spec.tag != FieldTag::C || spec.backend != (Backend::Exact { m: HESSE_SQRT_M }) {
                return invalid("hesse requires --field C --backend exact --sqrt-m 3");
            }
            Ok(Generated::ExactPoints(gen_hesse()))
        }
        GeneratorKind::Simplex4 => {
            if spec.tag != FieldTag::H {
                return invalid("simplex4 lives in H");
            }
            match spec.backend {
                Backend::Exact { m: SIMPLEX_SQRT_M } => Ok(Generated::ExactScalars(gen_simplex4())),
                Backend::Exact { .. } => invalid("exact simplex4 requires --sqrt-m 5"),
                Backend::Float { .. } => Ok(Generated::FloatScalars(gen_simplex4().iter().map(Quaternion::to_f64).collect())),
            }
        }
        GeneratorKind::RandomPoints => {
            if exact {
                return invalid("random_points is float-only; use lattice for exact sets");
            }
            let set = gen_random_points(spec.n, spec.tag, spec.seed)?;
            Ok(Generated::FloatPoints(PointSet::with_tolerance(spec.tag, set.points().to_vec(), tol_rel(spec.backend))?))
        }
        GeneratorKind::Lattice => {
            let set = gen_lattice_points(spec.n, spec.tag, spec.seed)?;
            if exact {
                Ok(Generated::ExactPoints(set))
            } else {
                Ok(Generated::FloatPoints(PointSet::with_tolerance(
                    spec.tag,
                    set.points().iter().map(Point::to_f64).collect(),
                    tol_rel(spec.backend),
                )?))
            }
        }
        GeneratorKind::RandomGrid => {
            if exact {
                return invalid("random_grid is float-only");
            }
            Ok(Generated::FloatGrid(gen_random_grid(spec.na, spec.nb, spec.tag, spec.seed)?))
        }
        GeneratorKind::NearCollinear => {
            if spec.tag != FieldTag::C {
                return invalid("near_collinear generates complex points");
            }
            if exact {
                let den = (1.0 / spec.eps).round().max(1.0) as i64;
                Ok(Generated::ExactPoints(gen_near_collinear_exact(spec.n, den, spec.seed)?))
            } else {
                Ok(Generated::FloatPoints(gen_near_collinear(spec.n, spec.eps, spec.seed)?))
            }
        }
    }
}
