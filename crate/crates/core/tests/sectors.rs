use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stairflow::hyperdisk::{s_operators, Slope};
use stairflow::linear::DirectionVector;
use stairflow::numfield::context;
use stairflow::sectors::*;
use stairflow::{FieldElement, Sign};

fn fe(n: u32, s: &str) -> FieldElement {
    FieldElement::parse(&context(n).unwrap(), s).unwrap()
}

fn slope_text(s: &Slope) -> String {
    s.to_text()
}

#[test]
fn pentagon_fan() {
    let fan = sector_fan(5).unwrap();
    let got: Vec<String> = fan.boundary_slopes.iter().map(slope_text).collect();
    assert_eq!(got, ["0", "-1+x", "1", "x", "inf"]);
}

#[test]
fn heptagon_fan_decimals() {
    let fan = sector_fan(7).unwrap();
    let got: Vec<String> = fan.boundary_slopes.iter().map(|s| s.embed_fixed(4)).collect();
    assert_eq!(got, ["0.0000", "0.5550", "0.8019", "1.0000", "1.2470", "1.8019", "inf"]);
}

#[test]
fn fans_are_well_formed() {
    for n in (5..=31).step_by(2) {
        let fan = sector_fan(n).unwrap();
        assert_eq!(fan.boundary_slopes.len(), n as usize);
        assert!(fan.boundary_slopes[(n as usize - 1) / 2].eq_s(&Slope::Finite(fe(n, "1"))));
        for w in fan.boundary_slopes.windows(2) {
            assert_eq!(w[0].cmp_s(&w[1]), std::cmp::Ordering::Less);
        }
        for (u, s) in fan.boundary_vectors.iter().zip(&fan.boundary_slopes) {
            assert!(u.slope().eq_s(s));
        }
    }
}

#[test]
fn sigmas_have_unit_determinant_and_map_axes() {
    for n in (5..=31).step_by(2) {
        let fan = sector_fan(n).unwrap();
        let one = fe(n, "1");
        for i in 0..fan.sectors() {
            let s = fan.sigma(i);
            assert_eq!(s.det(), one, "n={n} i={i}");
            let h = fan.sigma_inverse(i).apply(&fan.boundary_vectors[i]);
            let v = fan.sigma_inverse(i).apply(&fan.boundary_vectors[i + 1]);
            assert!(h.dy.is_zero() && h.dx.field_sign() == Sign::Positive);
            assert!(v.dx.is_zero() && v.dy.field_sign() == Sign::Positive);
            let inner = s.apply(&DirectionVector::raw(one.clone(), one.clone()));
            assert_eq!(fan.classify(&inner), i, "n={n} i={i}");
        }
    }
}

#[test]
fn generator_correspondence() {
    for n in [5u32, 7, 9, 11] {
        let fan = sector_fan(n).unwrap();
        for (m, op) in s_operators(n).unwrap().iter().enumerate() {
            let a = stairflow::hyperdisk::associated_matrix(op);
            assert!(a.proportionality(fan.sigma(m)).is_some(), "n={n} m={}", m + 1);
        }
    }
}

#[test]
fn renormalize_examples() {
    let fan = sector_fan(5).unwrap();
    let run = |s: &str| renormalize_slope(&fan, &Slope::Finite(fe(5, s)), RENORMALIZE_CAP).unwrap();
    match run("0") {
        Renormalized::Periodic { word, terminal, .. } => {
            assert!(word.is_empty());
            assert_eq!(terminal, Axis::Horizontal);
        }
        other => panic!("{other:?}"),
    }
    match run("x") {
        Renormalized::Periodic { word, terminal, .. } => {
            assert_eq!(word, [2]);
            assert!(regenerate(&fan, &word, terminal).slope().eq_s(&Slope::Finite(fe(5, "x"))));
        }
        other => panic!("{other:?}"),
    }
    assert!(renormalize_slope(&fan, &Slope::Finite(fe(5, "-1")), 10).unwrap_err().is_input_error());
    assert!(renormalize_slope(&fan, &Slope::Infinity, 10).unwrap().is_periodic());
}

#[test]
fn float_classifier_on_sqrt2_does_not_terminate() {
    let fan = sector_fan(5).unwrap().to_f64(0.0);
    let r = fan.renormalize(&DirectionVector::raw(1.0, 2f64.sqrt()), 60);
    assert!(!r.is_periodic());
    assert_eq!(r.word().len(), 60);
}

#[test]
fn seeded_round_trip_in_golden_field() {
    let fan = sector_fan(5).unwrap();
    let ctx = context(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 200 {
        let c = |rng: &mut ChaCha8Rng| BigRational::new(BigInt::from(rng.gen_range(-3i64..=3)), BigInt::from(rng.gen_range(1i64..=3)));
        let s = FieldElement::from_coords(&ctx, &[c(&mut rng), c(&mut rng)]).unwrap();
        if s.field_sign() == Sign::Negative {
            continue;
        }
        let slope = Slope::Finite(s);
        match renormalize_slope(&fan, &slope, RENORMALIZE_CAP).unwrap() {
            Renormalized::Periodic { word, terminal, .. } => assert!(regenerate(&fan, &word, terminal).slope().eq_s(&slope)),
            other => panic!("{slope}: {other:?}"),
        }
        done += 1;
    }
}

#[test]
fn tree_examples() {
    let t = enumerate_sigma_tree(5, 1).unwrap();
    let w1 = t.entries.iter().find(|e| e.word == [1]).unwrap();
    assert_eq!((w1.vector.dx.to_text(), w1.vector.dy.to_text()), ("x".into(), "1".into()));
    assert_eq!(w1.slope.embed_fixed(4), "0.6180");
    let w0 = t.entries.iter().find(|e| e.word == [0]).unwrap();
    assert!(w0.vector.is_horizontal());
    let got: Vec<String> = t.slopes.iter().map(slope_text).collect();
    assert_eq!(got, ["0", "-1+x", "1", "x"]);
    assert_eq!(enumerate_sigma_tree(5, 5).unwrap().entries.len(), 1365);
    assert!(enumerate_sigma_tree(5, 9).unwrap_err().is_input_error());
    assert!(enumerate_sigma_tree(49, 5).unwrap_err().is_input_error());
}

#[test]
fn threaded_enumeration_is_identical() {
    let a = enumerate_sigma_tree_with(7, 3, 1).unwrap();
    let b = enumerate_sigma_tree_with(7, 3, 4).unwrap();
    assert_eq!(a.entries.len(), b.entries.len());
    for (x, y) in a.entries.iter().zip(&b.entries) {
        assert_eq!(x.word, y.word);
        assert!(x.slope.eq_s(&y.slope));
    }
}

#[test]
fn hyperbolic_tree_examples() {
    let t = enumerate_hyperbolic_tree(5, 1).unwrap();
    let at = |w: &[usize]| t.entries.iter().find(|e| e.word == w).unwrap().value.clone();
    assert_eq!(at(&[]).to_text(), "0");
    assert!(at(&[1]).is_infinite());
    let s2 = at(&[2]);
    assert_eq!(s2.finite().unwrap().field_sign(), Sign::Positive);
    let sig = enumerate_sigma_tree(5, 1).unwrap();
    let w1 = &sig.entries.iter().find(|e| e.word == [1]).unwrap().slope;
    assert!(s2.eq_s(&w1.reciprocal(&fe(5, "1"))));
}

#[test]
fn tree_and_renormalization_are_dual() {
    for (n, depth) in [(5u32, 4u32), (7, 3)] {
        let fan = sector_fan(n).unwrap();
        for e in &enumerate_sigma_tree(n, depth).unwrap().entries {
            match fan.renormalize(&e.vector, RENORMALIZE_CAP) {
                Renormalized::Periodic { word, terminal, .. } => assert!(regenerate(&fan, &word, terminal).slope().eq_s(&e.slope)),
                other => panic!("n={n} {:?}: {other:?}", e.word),
            }
        }
    }
}

#[test]
fn equivalence_at_depth_zero() {
    let r = equivalence_check(5, 0).unwrap();
    assert!(r.passed());
    assert_eq!(r.calibration, Some(Calibration::Identity));
}

#[test]
fn alternating_correspondence_holds() {
    for (n, depth) in [(5u32, 4u32), (7, 3), (9, 3)] {
        let r = equivalence_check(n, depth).unwrap();
        assert!(r.generators_match);
        assert_eq!(r.calibration, Some(Calibration::Reciprocal));
        assert!(r.alternating.passed(), "n={n}: {:?}", r.alternating.first_counterexample.map(|c| c.to_string()));
        assert!(r.by_length_sets_alternate());
    }
}

#[test]
fn letter_shift_with_one_involution_breaks_at_length_two() {
    let r = equivalence_check(5, 2).unwrap();
    assert_eq!(r.literal.by_length[1], (4, 0));
    assert!(r.literal.by_length[2].1 > 0);
    assert!(!r.passed());
}

#[test]
fn heptagon_field_slope_without_terminal_axis() {
    let fan = sector_fan(7).unwrap();
    let slope = Slope::Finite(fe(7, "1+x^2"));
    let r = renormalize_slope(&fan, &slope, 1000).unwrap();
    assert!(!r.is_periodic());
    assert_eq!(&r.word()[..3], &[5, 5, 1]);
    assert!(r.word()[3..].chunks_exact(2).all(|c| c == [0, 5]));
    let f = fan.to_f64(0.0).renormalize(&DirectionVector::raw(1.0, fe(7, "1+x^2").approx_f64()), 200);
    assert_eq!(&f.word()[..20], &r.word()[..20]);

    let surface = stairflow::staircase::build_staircase(7).unwrap();
    let dir = DirectionVector::from_slope(&slope, &surface.aspect);
    let start = stairflow::flow::SurfacePoint::new(fe(7, "1/10"), fe(7, "0"));
    let t = stairflow::flow::trace_exact(&surface, &dir, &start, 2000).unwrap();
    assert_eq!(t.tag(), "exhausted");
}

#[test]
fn heptagon_tree_slopes_round_trip() {
    let fan = sector_fan(7).unwrap();
    for s in ["1", "x", "-1+x", "x^2-x", "2-x^2+x"] {
        let slope = Slope::Finite(fe(7, s));
        if slope.finite().unwrap().field_sign() == Sign::Negative {
            continue;
        }
        match renormalize_slope(&fan, &slope, RENORMALIZE_CAP).unwrap() {
            Renormalized::Periodic { word, terminal, .. } => assert!(regenerate(&fan, &word, terminal).slope().eq_s(&slope), "{s}"),
            other => panic!("{s}: {other:?}"),
        }
    }
}

trait SetsAlternate {
    fn by_length_sets_alternate(&self) -> bool;
}

impl SetsAlternate for EquivalenceReport {
    /// Sets agree under the fitted involution exactly at odd lengths.
    fn by_length_sets_alternate(&self) -> bool {
        self.sets.by_length.iter().enumerate().all(|(k, (_, bad))| (*bad == 0) == (k % 2 == 1))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classification_respects_boundaries(num in 0i64..200, den in 1i64..50) {
        let fan = sector_fan(5).unwrap();
        let ctx = context(5).unwrap();
        let s = FieldElement::from_rational(&ctx, &BigRational::new(BigInt::from(num), BigInt::from(den)));
        let i = fan.classify(&DirectionVector::raw(FieldElement::one(&ctx), s.clone()));
        let sl = Slope::Finite(s);
        if i == 0 {
            prop_assert!(sl.cmp_s(&fan.boundary_slopes[1]).is_le());
        } else {
            prop_assert!(sl.cmp_s(&fan.boundary_slopes[i]).is_gt());
            prop_assert!(sl.cmp_s(&fan.boundary_slopes[i + 1]).is_le());
        }
    }
}
