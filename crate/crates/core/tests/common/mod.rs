//! Test oracles written against plain `f64` arrays, independent of the
//! library's arithmetic.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgkit::{Point, QuadExt, Quaternion};

pub type Q4 = [f64; 4];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn hamilton(x: Q4, y: Q4) -> Q4 {
    [
        x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
        x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
        x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0],
    ]
}

pub fn q4(q: &Quaternion<f64>) -> Q4 {
    [q.a, q.b, q.c, q.d]
}

pub fn sub4(x: Q4, y: Q4) -> Q4 {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]]
}

pub fn nsq(x: Q4) -> f64 {
    x.iter().map(|v| v * v).sum()
}

/// `‖w − λ·d‖²` for the point offset `w` and direction `d`, scalars on the left.
pub fn residual(w: [Q4; 2], d: [Q4; 2], lambda: Q4) -> f64 {
    nsq(sub4(w[0], hamilton(lambda, d[0]))) + nsq(sub4(w[1], hamilton(lambda, d[1])))
}

/// Minimizes `‖w − λd‖²` over `λ` in the first `dims` real coordinates by a
/// coarse grid followed by compass search. Returns `(min value, argmin)`.
pub fn brute_min_lambda(w: [Q4; 2], d: [Q4; 2], dims: usize) -> (f64, Q4) {
    let wn = (nsq(w[0]) + nsq(w[1])).sqrt();
    let dn = (nsq(d[0]) + nsq(d[1])).sqrt();
    let radius = (wn / dn).max(1e-3);
    let steps: usize = if dims == 2 { 41 } else { 11 };
    let h = 2.0 * radius / (steps - 1) as f64;
    let mut best = (f64::INFINITY, [0.0; 4]);
    let total = steps.pow(dims as u32);
    for idx in 0..total {
        let mut lambda = [0.0; 4];
        let mut rest = idx;
        for v in lambda.iter_mut().take(dims) {
            *v = -radius + h * (rest % steps) as f64;
            rest /= steps;
        }
        let f = residual(w, d, lambda);
        if f < best.0 {
            best = (f, lambda);
        }
    }
    let mut step = h;
    while step > 1e-13 * radius.max(1.0) {
        let mut improved = false;
        for axis in 0..dims {
            for sign in [-1.0, 1.0] {
                let mut cand = best.1;
                cand[axis] += sign * step;
                let f = residual(w, d, cand);
                if f < best.0 {
                    best = (f, cand);
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    best
}

pub fn random_q(rng: &mut ChaCha8Rng, dims: usize) -> Quaternion<f64> {
    let mut c = [0.0; 4];
    for v in c.iter_mut().take(dims) {
        *v = rng.random_range(-1.0..=1.0);
    }
    Quaternion::new(c[0], c[1], c[2], c[3])
}

pub fn random_point(rng: &mut ChaCha8Rng, dims: usize) -> Point<f64> {
    Point::new(random_q(rng, dims), random_q(rng, dims))
}

/// Random element of `ℚ(√3)` with small numerators and denominators.
pub fn random_quad(rng: &mut ChaCha8Rng) -> QuadExt {
    let a = QuadExt::ratio(rng.random_range(-30..=30), rng.random_range(1..=7));
    let b = QuadExt::from_parts((0, 1), (rng.random_range(-30..=30), rng.random_range(1..=7)), 3);
    a + b
}

pub fn random_exact_q(rng: &mut ChaCha8Rng, dims: usize) -> Quaternion<QuadExt> {
    let mut c: Vec<QuadExt> = (0..dims).map(|_| random_quad(rng)).collect();
    c.resize(4, QuadExt::int(0));
    Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
}

pub fn random_rational_complex(rng: &mut ChaCha8Rng) -> Quaternion<QuadExt> {
    Quaternion::complex(
        QuadExt::ratio(rng.random_range(-40..=40), rng.random_range(1..=9)),
        QuadExt::ratio(rng.random_range(-40..=40), rng.random_range(1..=9)),
    )
}

pub fn conj4(x: Q4) -> Q4 {
    [x[0], -x[1], -x[2], -x[3]]
}

/// Closed-form minimizer `λ = (w₁d̄₁ + w₂d̄₂)/‖d‖²` of `‖w − λd‖²`.
pub fn oracle_lambda(w: [Q4; 2], d: [Q4; 2]) -> Q4 {
    let a = hamilton(w[0], conj4(d[0]));
    let b = hamilton(w[1], conj4(d[1]));
    let n = nsq(d[0]) + nsq(d[1]);
    [(a[0] + b[0]) / n, (a[1] + b[1]) / n, (a[2] + b[2]) / n, (a[3] + b[3]) / n]
}

pub fn point4(p: &Point<f64>) -> [Q4; 2] {
    [q4(&p.x), q4(&p.y)]
}

/// Maximal collinear subsets by brute force: each pair `(i, j)` collects
/// every `k` within squared distance `tol_sq` of the line through them.
pub fn oracle_lines(pts: &[[Q4; 2]], tol_sq: f64) -> std::collections::BTreeSet<Vec<usize>> {
    let mut out = std::collections::BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = [sub4(pts[j][0], pts[i][0]), sub4(pts[j][1], pts[i][1])];
            let members: Vec<usize> = (0..pts.len())
                .filter(|&k| {
                    let w = [sub4(pts[k][0], pts[i][0]), sub4(pts[k][1], pts[i][1])];
                    residual(w, d, oracle_lambda(w, d)) <= tol_sq
                })
                .collect();
            out.insert(members);
        }
    }
    out
}
