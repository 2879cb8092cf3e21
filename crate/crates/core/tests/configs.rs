use sgkit::configs::{
    gen_near_collinear, gen_near_collinear_exact, generate, Generated, GeneratorKind, GeneratorSpec,
};
use sgkit::kelly::find_witness;
use sgkit::{Backend, Error, FieldTag};

#[test]
fn generators_are_seed_deterministic() {
    for kind in ["random_points", "lattice", "random_grid", "near_collinear"] {
        let mut spec = GeneratorSpec::new(kind.parse().unwrap());
        spec.seed = 99;
        let a = format!("{:?}", generate(&spec).unwrap());
        let b = format!("{:?}", generate(&spec).unwrap());
        assert_eq!(a, b, "{kind}");
        spec.seed = 100;
        assert_ne!(a, format!("{:?}", generate(&spec).unwrap()), "{kind}");
    }
}

#[test]
fn near_collinear_sets_still_have_short_witness_lines() {
    for seed in 0..10 {
        let exact = gen_near_collinear_exact(12, 1_000_000, seed).unwrap();
        assert!(!exact.is_collinear());
        let w = find_witness(&exact).unwrap();
        assert!(w.passed());
        assert!(w.incidence <= 5);

        let float = gen_near_collinear(12, 1e-4, seed).unwrap();
        assert!(!float.is_collinear());
        let w = find_witness(&float).unwrap();
        assert!(w.passed());
    }
}

#[test]
fn generate_dispatch() {
    let mut spec = GeneratorSpec::new(GeneratorKind::Hesse);
    assert!(matches!(generate(&spec), Err(Error::InvalidSpec(_))));
    spec.backend = Backend::Exact { m: 3 };
    assert!(matches!(generate(&spec).unwrap(), Generated::ExactPoints(s) if s.len() == 9));

    let mut spec = GeneratorSpec::new(GeneratorKind::Simplex4);
    spec.tag = FieldTag::H;
    assert!(matches!(generate(&spec).unwrap(), Generated::FloatScalars(v) if v.len() == 5));
    spec.backend = Backend::Exact { m: 5 };
    assert!(matches!(generate(&spec).unwrap(), Generated::ExactScalars(v) if v.len() == 5));

    let mut spec = GeneratorSpec::new(GeneratorKind::RandomGrid);
    spec.tag = FieldTag::H;
    (spec.na, spec.nb) = (3, 5);
    match generate(&spec).unwrap() {
        Generated::FloatGrid(g) => assert_eq!((g.a.len(), g.b.len()), (3, 5)),
        other => panic!("unexpected {other:?}"),
    }
    assert!("spiral".parse::<GeneratorKind>().is_err());
}
