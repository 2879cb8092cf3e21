//! Fixed benchmark inputs, shared by the criterion targets.

use sgkit::configs::{gen_hesse, gen_lattice_points, gen_random_grid, gen_random_points};
use sgkit::grid::GridSpec;
use sgkit::{FieldTag, PointSet, QuadExt};

pub const SEED: u64 = 0x5eed;

pub fn random_set(n: usize, tag: FieldTag) -> PointSet<f64> {
    gen_random_points(n, tag, SEED).expect("n >= 3")
}

pub fn lattice_set(n: usize, tag: FieldTag) -> PointSet<QuadExt> {
    gen_lattice_points(n, tag, SEED).expect("lattice fits")
}

pub fn hesse() -> PointSet<QuadExt> {
    gen_hesse()
}

pub fn random_grid(na: usize, nb: usize, tag: FieldTag) -> GridSpec<f64> {
    gen_random_grid(na, nb, tag, SEED).expect("|A|, |B| >= 2")
}
