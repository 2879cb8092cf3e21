//! Reference computations on plain `f64` arrays, independent of `sgkit`.

use std::collections::BTreeSet;

use sgkit::{Point, Quaternion};

pub type Q4 = [f64; 4];
pub type P4 = [Q4; 2];

pub fn hamilton(x: Q4, y: Q4) -> Q4 {
    [
        x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
        x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
        x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
        x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0],
    ]
}

pub fn conj(x: Q4) -> Q4 {
    [x[0], -x[1], -x[2], -x[3]]
}

pub fn sub(x: Q4, y: Q4) -> Q4 {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]]
}

pub fn nsq(x: Q4) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn q4(q: &Quaternion<f64>) -> Q4 {
    [q.a, q.b, q.c, q.d]
}

pub fn p4(p: &Point<f64>) -> P4 {
    [q4(&p.x), q4(&p.y)]
}

pub fn psub(p: P4, q: P4) -> P4 {
    [sub(p[0], q[0]), sub(p[1], q[1])]
}

pub fn pnsq(p: P4) -> f64 {
    nsq(p[0]) + nsq(p[1])
}

/// `‖w − λd‖²` with `λ` acting on the left.
pub fn residual(w: P4, d: P4, lambda: Q4) -> f64 {
    nsq(sub(w[0], hamilton(lambda, d[0]))) + nsq(sub(w[1], hamilton(lambda, d[1])))
}

/// `λ = (w₁d̄₁ + w₂d̄₂)/‖d‖²`.
pub fn closed_form_lambda(w: P4, d: P4) -> Q4 {
    let a = hamilton(w[0], conj(d[0]));
    let b = hamilton(w[1], conj(d[1]));
    let n = pnsq(d);
    [(a[0] + b[0]) / n, (a[1] + b[1]) / n, (a[2] + b[2]) / n, (a[3] + b[3]) / n]
}

/// Squared distance from `p` to the line through `a` and `b`.
pub fn dist_sq(p: P4, a: P4, b: P4) -> f64 {
    let (w, d) = (psub(p, a), psub(b, a));
    residual(w, d, closed_form_lambda(w, d))
}

/// Foot of the perpendicular from `p` to the line through `a` and `b`.
pub fn foot(p: P4, a: P4, b: P4) -> P4 {
    let (w, d) = (psub(p, a), psub(b, a));
    let l = closed_form_lambda(w, d);
    let t = [hamilton(l, d[0]), hamilton(l, d[1])];
    [
        [a[0][0] + t[0][0], a[0][1] + t[0][1], a[0][2] + t[0][2], a[0][3] + t[0][3]],
        [a[1][0] + t[1][0], a[1][1] + t[1][1], a[1][2] + t[1][2], a[1][3] + t[1][3]],
    ]
}

/// Minimum of `‖w − λd‖²` over `λ` in the first `dims` real coordinates:
/// a uniform grid over a ball containing the minimizer, then compass search.
pub fn brute_force_min(w: P4, d: P4, dims: usize) -> f64 {
    let radius = (pnsq(w).sqrt() / pnsq(d).sqrt()).max(1e-3);
    let steps: usize = if dims == 2 { 41 } else { 11 };
    let h = 2.0 * radius / (steps - 1) as f64;
    let mut best = (f64::INFINITY, [0.0; 4]);
    for idx in 0..steps.pow(dims as u32) {
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
    best.0
}

/// Maximal collinear subsets: each pair collects every point within
/// squared distance `tol_sq` of its line.
pub fn lines(pts: &[P4], tol_sq: f64) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            out.insert((0..pts.len()).filter(|&k| dist_sq(pts[k], pts[i], pts[j]) <= tol_sq).collect());
        }
    }
    out
}
