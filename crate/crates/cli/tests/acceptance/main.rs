//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p sgkit-cli --test acceptance`. The process exits
//! non-zero when any criterion fails.

mod oracle;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use oracle::{p4, P4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sgkit::configs::{gen_hesse, gen_lattice_points, gen_random_grid, gen_random_points, gen_simplex4};
use sgkit::grid::{check_grid_theorem, is_equilateral};
use sgkit::incidence::{check_sg_bound, enumerate_lines};
use sgkit::kelly::find_witness;
use sgkit::plane::{dist_sq_point_line, line_through};
use sgkit::{FieldTag, Line, Point, PointSet, QuadExt, Quaternion, Real};

const MASTER_SEED: u64 = 20_240_917;
const C1_SETS: usize = 500;
const C1_MAX_N: usize = 50;
const C1_BUDGET_SECS: f64 = 30.0;
const C2_SETS: usize = 200;
const C2_MAX_N: usize = 40;
const C4_GRIDS: usize = 200;
const C4_MAX: usize = 15;
const C5_GRIDS: usize = 100;
const C5_MAX: usize = 8;
const C6_INSTANCES: usize = 1000;
const C6_ABS_TOL: f64 = 1e-6;
const C6_FAMILY: usize = 100;
const C8_ATTEMPTS: usize = 10_000;
const C9_DATASETS: usize = 50;
const C1_BOUND: usize = 5;
const C2_BOUND: usize = 24;

/// Everything criterion 7 needs to re-derive the angle property.
struct WitnessData {
    pts: Vec<P4>,
    point: usize,
    members: Vec<usize>,
    eps: f64,
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Counts the points of `set` on the witness line with the oracle.
fn oracle_incidence(pts: &[P4], a: usize, b: usize, eps: f64) -> usize {
    pts.iter().filter(|&&p| oracle::dist_sq(p, pts[a], pts[b]) <= eps * eps).count()
}

fn witness_sweep(tag: FieldTag, sets: usize, max_n: usize, bound: usize, seed: u64) -> Result<(usize, Vec<WitnessData>), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_incidence = 0;
    let mut data = Vec::with_capacity(sets);
    for s in 0..sets {
        let n = rng.random_range(3..=max_n);
        let set_seed = rng.random::<u64>();
        let set = gen_random_points(n, tag, set_seed).map_err(|e| e.to_string())?;
        let w = find_witness(&set).map_err(|e| format!("set {s}: {e}"))?;
        let pts: Vec<P4> = set.points().iter().map(p4).collect();
        let eps = set.tolerance().abs;
        let counted = oracle_incidence(&pts, w.line.members[0], w.line.members[1], eps);
        ensure(counted == w.incidence, || format!("set {s}: reported {} points, oracle counts {counted}", w.incidence))?;
        ensure((2..=bound).contains(&w.incidence), || format!("set {s} (seed {set_seed}, n {n}): incidence {}", w.incidence))?;
        max_incidence = max_incidence.max(w.incidence);
        data.push(WitnessData { pts, point: w.point, members: w.line.members.clone(), eps });
    }
    Ok((max_incidence, data))
}

fn criterion_1(store: &mut Vec<WitnessData>) -> Check {
    let started = Instant::now();
    let (max, data) = witness_sweep(FieldTag::C, C1_SETS, C1_MAX_N, C1_BOUND, MASTER_SEED + 1)?;
    let secs = started.elapsed().as_secs_f64();
    store.extend(data);
    ensure(secs < C1_BUDGET_SECS, || format!("runtime {secs:.2} s exceeds {C1_BUDGET_SECS} s"))?;
    Ok(format!("{C1_SETS} sets, incidence in [2, {C1_BOUND}], max observed {max}, runtime {secs:.2} s"))
}

fn criterion_2(store: &mut Vec<WitnessData>) -> Check {
    let (max, data) = witness_sweep(FieldTag::H, C2_SETS, C2_MAX_N, C2_BOUND, MASTER_SEED + 2)?;
    store.extend(data);
    Ok(format!("{C2_SETS} sets, incidence in [2, {C2_BOUND}], max observed incidence {max}"))
}

fn criterion_3() -> Check {
    let set = gen_hesse();
    let report = enumerate_lines(&set).map_err(|e| e.to_string())?;
    ensure(report.lines.len() == 12, || format!("{} lines", report.lines.len()))?;
    ensure(report.histogram == BTreeMap::from([(3, 12)]), || format!("histogram {:?}", report.histogram))?;
    ensure(report.lines.iter().all(|l| l.count() != 2), || "a 2-point line exists".into())?;
    let check = check_sg_bound(&set, FieldTag::C).map_err(|e| e.to_string())?;
    ensure(check.passed && check.witness.count() == 3, || format!("witness count {}", check.witness.count()))?;
    Ok("12 lines, histogram {3: 12}, no ordinary line, check_sg_bound witness count 3".into())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 4);
    for g in 0..C4_GRIDS {
        let (na, nb) = (rng.random_range(2..=C4_MAX), rng.random_range(2..=C4_MAX));
        let grid = gen_random_grid(na, nb, FieldTag::C, rng.random()).map_err(|e| e.to_string())?;
        let r = check_grid_theorem(&grid).map_err(|e| format!("grid {g}: {e}"))?;
        ensure(r.verdict && r.witness_count == 2, || format!("grid {g} ({na}x{nb}): witness count {}", r.witness_count))?;
    }
    Ok(format!("{C4_GRIDS} grids, witness_count = 2 in every run"))
}

fn criterion_5(projections: &mut Vec<(usize, usize)>) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 5);
    let mut vertical = 0;
    for g in 0..C5_GRIDS {
        let (na, nb) = (rng.random_range(2..=C5_MAX), rng.random_range(2..=C5_MAX));
        let grid = gen_random_grid(na, nb, FieldTag::H, rng.random()).map_err(|e| e.to_string())?;
        let r = check_grid_theorem(&grid).map_err(|e| format!("grid {g}: {e}"))?;
        ensure(r.verdict && (2..=5).contains(&r.witness_count), || format!("grid {g}: witness count {}", r.witness_count))?;
        match (&r.witness.line, &r.projection) {
            (Line::Vertical { .. }, _) => vertical += 1,
            (Line::Slope { .. }, Some(p)) => {
                ensure(p.passed(), || format!("grid {g}: projection check failed: {p:?}"))?;
                projections.push((p.a_proj.len(), p.b_proj.len()));
            }
            (Line::Slope { .. }, None) => return Err(format!("grid {g}: no projection check on a slope witness")),
        }
    }
    Ok(format!("{C5_GRIDS} grids, witness_count in [2, 5], projection check passed on {} non-vertical witnesses ({vertical} vertical)", projections.len()))
}

fn random_point(rng: &mut ChaCha8Rng, tag: FieldTag) -> Point<f64> {
    let mut q = || {
        let mut c = [0.0; 4];
        for v in c.iter_mut().take(tag.dim()) {
            *v = rng.random_range(-1.0..=1.0);
        }
        Quaternion::new(c[0], c[1], c[2], c[3])
    };
    Point::new(q(), q())
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 6);
    let mut worst: f64 = 0.0;
    for tag in [FieldTag::C, FieldTag::H] {
        for i in 0..C6_INSTANCES {
            let (p, a, b) = (random_point(&mut rng, tag), random_point(&mut rng, tag), random_point(&mut rng, tag));
            let line = line_through(&a, &b).map_err(|e| e.to_string())?;
            let got = dist_sq_point_line(&p, &line);
            let want = oracle::brute_force_min(oracle::psub(p4(&p), p4(&a)), oracle::psub(p4(&b), p4(&a)), tag.dim());
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() <= C6_ABS_TOL, || format!("{tag} instance {i}: {got} vs oracle {want}"))?;
        }
    }
    // the constructed family: (z_j, 0) against the line through (0, 1), (z_i, 0)
    let apex = Point::new(Quaternion::zero(), Quaternion::one());
    let mut checked = 0;
    while checked < C6_FAMILY {
        let mut z = || {
            let mut r = || QuadExt::ratio(rng.random_range(-40..=40), rng.random_range(1..=9));
            Quaternion::complex(r(), r())
        };
        let (zi, zj) = (z(), z());
        if zi == zj {
            continue;
        }
        let on_axis = |v: &Quaternion<QuadExt>| Point::new(v.clone(), Quaternion::zero());
        let line = line_through(&apex, &on_axis(&zi)).map_err(|e| e.to_string())?;
        let got = dist_sq_point_line(&on_axis(&zj), &line);
        let want = (zi.clone() - zj.clone()).norm_sq().div(&(QuadExt::int(1) + zi.norm_sq())).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("z_i = {zi:?}, z_j = {zj:?}: {got} vs {want}"))?;
        checked += 1;
    }
    Ok(format!(
        "{C6_INSTANCES} instances per field within {C6_ABS_TOL:e} (worst {worst:.1e}); {C6_FAMILY} exact family identities"
    ))
}

fn criterion_7(store: &[WitnessData]) -> Check {
    let mut pairs = 0usize;
    for (s, w) in store.iter().enumerate() {
        let p = w.pts[w.point];
        let (a, b) = (w.pts[w.members[0]], w.pts[w.members[1]]);
        let f = oracle::foot(p, a, b);
        let d_sq = oracle::pnsq(oracle::psub(p, f));
        let margin = w.eps * w.eps;
        for (x, &i) in w.members.iter().enumerate() {
            for &j in &w.members[x + 1..] {
                // in units of the witness distance: |zᵢ − zⱼ|² > max(|zᵢ|², |zⱼ|²) + ε²/d²
                let diff = oracle::pnsq(oracle::psub(w.pts[i], w.pts[j])) / d_sq;
                let zi = oracle::pnsq(oracle::psub(w.pts[i], f)) / d_sq;
                let zj = oracle::pnsq(oracle::psub(w.pts[j], f)) / d_sq;
                ensure(diff > zi.max(zj) + margin / d_sq, || format!("witness {s}: pair ({i}, {j}) has {diff} <= max({zi}, {zj})"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{} witnesses, {pairs} normalized pairs all strictly wider than 60 degrees", store.len()))
}

fn criterion_8(projections: &[(usize, usize)]) -> Check {
    let simplex = gen_simplex4();
    ensure(is_equilateral(&simplex) == Some(QuadExt::int(2)), || "simplex is not equilateral".into())?;
    let verts: Vec<Quaternion<f64>> = simplex.iter().map(Quaternion::to_f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(MASTER_SEED + 8);
    for attempt in 0..C8_ATTEMPTS {
        let cand = match attempt % 2 {
            // anywhere near the simplex
            0 => {
                let mut c = || rng.random_range(-2.0..2.0);
                Quaternion::new(c(), c(), c(), c())
            }
            // at the common edge length from a random vertex
            _ => {
                let v = &verts[rng.random_range(0..5)];
                let mut c = || rng.random_range(-1.0..1.0);
                let dir = Quaternion::new(c(), c(), c(), c());
                let s = (2.0 / dir.norm_sq()).sqrt();
                v.clone() + dir.scale(&s)
            }
        };
        let mut six = verts.clone();
        six.push(cand.clone());
        ensure(is_equilateral(&six).is_none(), || format!("attempt {attempt} accepted {cand:?}"))?;
    }
    let bad = projections.iter().find(|(a, b)| a != b || *a > 5);
    ensure(bad.is_none(), || format!("projection sizes {bad:?}"))?;
    let max = projections.iter().map(|p| p.0).max().unwrap_or(0);
    Ok(format!("simplex equilateral (edge^2 = 2), {C8_ATTEMPTS} extensions rejected, |A'| = |B'| <= {max} on {} witnesses", projections.len()))
}

fn criterion_9() -> Check {
    for d in 0..C9_DATASETS {
        let tag = if d % 2 == 0 { FieldTag::C } else { FieldTag::H };
        let n = 6 + d % 7;
        let exact = gen_lattice_points(n, tag, MASTER_SEED + 900 + d as u64).map_err(|e| e.to_string())?;
        let float: PointSet<f64> = exact.to_f64().map_err(|e| e.to_string())?;
        let (re, rf) = (enumerate_lines(&exact).unwrap(), enumerate_lines(&float).unwrap());
        ensure(re.histogram == rf.histogram, || format!("dataset {d}: {:?} vs {:?}", re.histogram, rf.histogram))?;
        let pts: Vec<P4> = float.points().iter().map(p4).collect();
        let tol = float.tolerance().abs;
        let want = oracle::lines(&pts, tol * tol);
        let got: std::collections::BTreeSet<Vec<usize>> = re.lines.iter().map(|l| l.members.clone()).collect();
        ensure(got == want, || format!("dataset {d}: member sets differ from the oracle"))?;
        let (we, wf) = (find_witness(&exact).unwrap(), find_witness(&float).unwrap());
        ensure(we.point == wf.point && we.line.members == wf.line.members, || {
            format!("dataset {d}: witness ({}, {:?}) vs ({}, {:?})", we.point, we.line.members, wf.point, wf.line.members)
        })?;
        ensure((we.dist_sq.to_f64() - wf.dist_sq).abs() <= 1e-12 * wf.dist_sq.max(1.0), || format!("dataset {d}: dist_sq differs"))?;
        let (ce, cf) = (check_sg_bound(&exact, tag).unwrap(), check_sg_bound(&float, tag).unwrap());
        ensure(ce.witness.members == cf.witness.members, || format!("dataset {d}: min lines differ"))?;
    }
    Ok(format!("{C9_DATASETS} lattice datasets: identical histograms, line member sets (oracle-checked) and witnesses"))
}

fn criterion_10() -> Check {
    let bin = env!("CARGO_BIN_EXE_sgkit");
    let runs: Vec<Vec<&str>> = vec![
        vec!["gen", "hesse"],
        vec!["gen", "simplex4"],
        vec!["gen", "random_points", "--n", "20", "--field", "H", "--seed", "5"],
        vec!["gen", "random_grid", "--a", "5", "--b", "6", "--seed", "5"],
        vec!["gen", "lattice", "--n", "10", "--seed", "5"],
        vec!["gen", "near_collinear", "--n", "10", "--seed", "5"],
        vec!["check-sg", "--gen", "random_points", "--n", "40", "--seed", "5"],
        vec!["check-sg", "--gen", "random_points", "--field", "H", "--n", "30", "--seed", "5"],
        vec!["check-sg", "--gen", "hesse"],
        vec!["enumerate", "--gen", "lattice", "--n", "12", "--seed", "5"],
        vec!["grid", "--gen", "random_grid", "--a", "8", "--b", "9", "--seed", "5"],
        vec!["grid", "--gen", "random_grid", "--field", "H", "--a", "5", "--b", "5", "--seed", "5", "--format", "text"],
    ];
    for args in &runs {
        let run = || Command::new(bin).args(args).output().map_err(|e| e.to_string());
        let (a, b) = (run()?, run()?);
        ensure(a.status.code() == Some(0), || format!("{args:?} exited with {:?}", a.status.code()))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || format!("{args:?} differs between runs"))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn report(id: usize, name: &str, f: impl FnOnce() -> Check) -> bool {
    let started = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let secs = started.elapsed().as_secs_f64();
    match &result {
        Ok(detail) => println!("PASS [{id:>2}] {name}: {detail} ({secs:.1} s)"),
        Err(detail) => println!("FAIL [{id:>2}] {name}: {detail} ({secs:.1} s)"),
    }
    result.is_ok()
}

fn main() {
    let mut witnesses = Vec::new();
    let mut projections = Vec::new();
    let results = [
        report(1, "C^2 witness incidence bound", || criterion_1(&mut witnesses)),
        report(2, "H^2 witness incidence bound", || criterion_2(&mut witnesses)),
        report(3, "Hesse configuration certificate", criterion_3),
        report(4, "C grid transversal bound", criterion_4),
        report(5, "H grid transversal bound", || criterion_5(&mut projections)),
        report(6, "distance formula oracle", criterion_6),
        report(7, "angle property on witnesses", || criterion_7(&witnesses)),
        report(8, "equilateral bound", || criterion_8(&projections)),
        report(9, "backend coherence", criterion_9),
        report(10, "determinism", criterion_10),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
