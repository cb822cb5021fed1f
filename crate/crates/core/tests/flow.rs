use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairflow::flow::*;
use stairflow::hyperdisk::Slope;
use stairflow::linear::DirectionVector;
use stairflow::numfield::context;
use stairflow::sectors::enumerate_sigma_tree;
use stairflow::staircase::{build_staircase, Direction};
use stairflow::{FieldElement, Scalar};

fn fe(n: u32, s: &str) -> FieldElement {
    FieldElement::parse(&context(n).unwrap(), s).unwrap()
}

fn float_dir(d: &DirectionVector<FieldElement>) -> (f64, f64) {
    (d.dx.to_f64(), d.dy.to_f64())
}

#[test]
fn verify_examples() {
    let phi = verify_periodic(5, &Slope::Finite(fe(5, "x")), 5, 0).unwrap();
    assert!(phi.all_closed());
    assert_eq!(phi.samples.len(), 5);
    let flat = verify_periodic(5, &Slope::Finite(fe(5, "0")), 5, 0).unwrap();
    assert!(flat.all_closed());
    assert!(flat.samples.iter().all(|s| s.result.crossings() == 1));
    let tree = enumerate_sigma_tree(7, 2).unwrap();
    let w = tree.entries.iter().find(|e| e.word == [1, 2]).unwrap();
    assert!(verify_periodic(7, &w.slope, 5, 3).unwrap().all_closed());
}

#[test]
fn verify_is_deterministic() {
    let a = verify_periodic(7, &Slope::Finite(fe(7, "1")), 4, 11).unwrap();
    let b = verify_periodic(7, &Slope::Finite(fe(7, "1")), 4, 11).unwrap();
    for (x, y) in a.samples.iter().zip(&b.samples) {
        assert_eq!(x.start, y.start);
        assert_eq!(x.result.sequence(), y.result.sequence());
    }
}

#[test]
fn patterns_bounded_by_cylinder_count() {
    for n in [5u32, 7] {
        let tracer = Tracer::new(build_staircase(n).unwrap()).unwrap();
        for s in &enumerate_sigma_tree(n, 2).unwrap().slopes {
            let r = verify_periodic_with(&tracer, s, 8, 5, VERIFY_MAX_CROSSINGS).unwrap();
            assert!(r.all_closed());
            assert!(r.patterns.len() <= ((n - 1) / 2) as usize, "n={n} slope {s}");
        }
    }
}

#[test]
fn exact_and_numeric_agree_on_random_periodic_runs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut cases = 0;
    for n in [5u32, 7] {
        let surface = build_staircase(n).unwrap();
        let exact = Tracer::new(surface.clone()).unwrap();
        let float = Tracer::new(surface.to_f64(1e-9)).unwrap();
        let tree = enumerate_sigma_tree(n, 3).unwrap();
        for _ in 0..50 {
            let e = &tree.entries[rng.gen_range(0..tree.entries.len())];
            let rep = verify_periodic_with(&exact, &e.slope, 1, rng.gen(), VERIFY_MAX_CROSSINGS).unwrap();
            let sample = &rep.samples[0];
            let (dx, dy) = float_dir(&DirectionVector::from_slope(&e.slope, &surface.aspect));
            let k = dx.max(dy);
            let f = float
                .trace(&DirectionVector::raw(dx / k, dy / k), &SurfacePoint::new(sample.start.x.to_f64(), sample.start.y.to_f64()), 1000)
                .unwrap();
            let m = sample.result.sequence().len().min(1000);
            assert_eq!(&f.sequence()[..m], &sample.result.sequence()[..m], "n={n} word {:?}", e.word);
            assert_eq!(f.is_closed(), sample.result.is_closed());
            if let (TraceResult::Closed { length_sq: a, .. }, TraceResult::Closed { length_sq: b, .. }) = (&sample.result, &f) {
                assert!((a.to_f64() - b).abs() < 1e-6 * (1.0 + b));
            }
            cases += 1;
        }
    }
    assert_eq!(cases, 100);
}

#[test]
fn irrational_direction_never_closes() {
    let s = build_staircase(5).unwrap();
    let r = trace_numeric(&s, (1.0, 2f64.sqrt()), (0.1, 0.0), 100_000, 1e-9).unwrap();
    assert_eq!(r.tag(), "exhausted");
    assert_eq!(r.crossings(), 100_000);
}

#[test]
fn numeric_vertical_loop() {
    let s = build_staircase(5).unwrap();
    match trace_numeric(&s, (0.0, 1.0), (1.0 / 3.0, 0.0), 10, 1e-9).unwrap() {
        TraceResult::Closed { length_sq, crossings, .. } => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            assert!((length_sq - phi * phi).abs() < 1e-9);
            assert_eq!(crossings, 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn axis_flows_close_with_cylinder_circumference() {
    for n in [5u32, 7, 9, 11] {
        let s = build_staircase(n).unwrap();
        let tracer = Tracer::new(s.clone()).unwrap();
        let one = s.aspect.one_like();
        let zero = s.aspect.zero_like();
        for (dir, cyls, strips) in [
            (DirectionVector::raw(one.clone(), zero.clone()), s.cylinder_decomposition(Direction::Horizontal), &s.rows),
            (DirectionVector::raw(zero.clone(), one.clone()), s.cylinder_decomposition(Direction::Vertical), &s.columns),
        ] {
            for (c, r) in cyls.iter().zip(strips.iter()) {
                let half = one.rational_like(&BigRational::new(BigInt::from(1), BigInt::from(2)));
                let third = one.rational_like(&BigRational::new(BigInt::from(1), BigInt::from(3)));
                let start = SurfacePoint::new(r.x0.clone() + r.width() * third, r.y0.clone() + r.height() * half);
                match tracer.trace(&dir, &start, 100).unwrap() {
                    TraceResult::Closed { length_sq, crossings, .. } => {
                        assert_eq!(length_sq, c.circumference.square(), "n={n}");
                        assert_eq!(crossings, 1);
                    }
                    other => panic!("n={n}: {other:?}"),
                }
            }
        }
    }
}

#[test]
fn boundary_representatives() {
    let s = build_staircase(5).unwrap();
    let tracer = Tracer::new(s).unwrap();
    let (p, row) = tracer.canonicalize(&(fe(5, "x"), fe(5, "1/2"))).unwrap();
    assert_eq!((p.0.to_text(), p.1.to_text(), row), ("0".into(), "1/2".into(), 0));
    let (p, _) = tracer.canonicalize(&(fe(5, "1/2"), fe(5, "x"))).unwrap();
    assert_eq!((p.0.to_text(), p.1.to_text()), ("1/2".into(), "0".into()));
    let d = DirectionVector::raw(fe(5, "1"), fe(5, "1"));
    assert!(tracer.trace(&d, &SurfacePoint::new(fe(5, "1"), fe(5, "1")), 5).unwrap_err().is_input_error());
    let bad = DirectionVector::raw(fe(5, "-1"), fe(5, "1"));
    assert!(tracer.trace(&bad, &SurfacePoint::new(fe(5, "1/2"), fe(5, "1/3")), 5).unwrap_err().is_input_error());
}

#[test]
fn top_edges_are_covered_once() {
    for n in [5u32, 7, 9] {
        let s = build_staircase(n).unwrap().to_f64(1e-12);
        let mut xs: Vec<f64> = s.rows.iter().flat_map(|r| [r.x0, r.x1]).chain(s.columns.iter().flat_map(|c| [c.x0, c.x1])).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        for r in &s.rows {
            for w in xs.windows(2) {
                let mid = (w[0] + w[1]) / 2.0;
                if mid <= r.x0 || mid >= r.x1 {
                    continue;
                }
                let above = s.row_at(&mid, &r.y1).is_some();
                let column = s.column_with_top(&mid, &r.y1).is_some();
                assert!(above ^ column, "n={n} x={mid} y={}", r.y1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_length_matches_displacement(a in 1i64..996, b in 1i64..996, k in 0usize..3) {
        let n = 5;
        let s = build_staircase(n).unwrap();
        let r = &s.rectangles[k];
        let ctx = context(n).unwrap();
        let q = |v: i64| FieldElement::from_rational(&ctx, &BigRational::new(BigInt::from(v), BigInt::from(997)));
        let start = SurfacePoint::new(r.x0.clone() + q(a) * r.width(), r.y0.clone() + q(b) * r.height());
        let dir = DirectionVector::raw(fe(n, "x"), fe(n, "1"));
        match trace_exact(&s, &dir, &start, 1000).unwrap() {
            TraceResult::Closed { length_sq, .. } => {
                // The displacement of a closed orbit is a multiple of the direction.
                let t2 = length_sq * dir.norm_sq().invert().unwrap();
                prop_assert!(t2.field_sign() == stairflow::Sign::Positive);
            }
            TraceResult::Singular { .. } => {}
            other => prop_assert!(false, "{:?}", other.tag()),
        }
    }
}
