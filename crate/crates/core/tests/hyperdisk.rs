use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use stairflow::chebpoly::{p_eval, p_poly, q_polys, s_lengths};
use stairflow::hp::{bits_for_digits, Real};
use stairflow::hyperdisk::*;
use stairflow::numfield::context;
use stairflow::{FieldElement, Scalar};

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn chebyshev_recurrences() {
    assert_eq!(p_poly(0).to_string(), "1");
    assert_eq!(p_poly(1).to_string(), "x - 1");
    assert_eq!(p_poly(2).to_string(), "x^2 - x - 1");
    assert_eq!(p_poly(3).to_string(), "x^3 - x^2 - 2*x + 1");
    let qs = q_polys(6);
    for k in 1..=6 {
        assert_eq!(p_poly(k), qs[k].sub(&qs[k - 1]), "k={k}");
    }
}

#[test]
fn p_eval_matches_polynomial_in_floats() {
    for k in 0..10 {
        let a = 1.7f64;
        assert!((p_eval(k, &a) - p_poly(k).eval(&a)).abs() < 1e-9);
    }
}

#[test]
fn p_m_vanishes_to_fifty_digits() {
    for n in (5..=25).step_by(2) {
        let p = bits_for_digits(60);
        let x = Real::pi_times(&q(1, n as i64), p).cos() * Real::from_i64(2, p);
        let v = p_eval(((n - 1) / 2) as usize, &x);
        assert!(v.abs().to_f64() < 1e-30, "n={n}");
    }
}

#[test]
fn s_lengths_close_up() {
    for n in (5..=25).step_by(2) {
        let s = s_lengths(n).unwrap();
        assert!(s.last().unwrap().is_zero(), "n={n}");
        assert!(s[..s.len() - 1].iter().all(|v| v.field_sign() == stairflow::Sign::Positive));
    }
}

#[test]
fn projection_anchors() {
    let d = 40;
    assert!(stereo_project(5, &q(1, 1), d).unwrap().is_none());
    let at = |a: i64, b: i64| stereo_project(5, &q(a, b), d).unwrap().unwrap().to_f64();
    assert!(at(3, 5).abs() < 1e-12);
    assert!((at(4, 5) - 1.0).abs() < 1e-12);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((at(1, 5) - (1.0 - phi)).abs() < 1e-12);
    assert!((at(-1, 5) + 1.0).abs() < 1e-12);
    assert!((at(-3, 5) + phi).abs() < 1e-12);
    assert!(stereo_project(5, &q(-1, 1), d).unwrap_err().is_input_error());
    assert!(stereo_project(5, &q(3, 2), d).unwrap_err().is_input_error());
}

#[test]
fn projected_vertices_are_field_values() {
    for n in [5u32, 7, 9, 11] {
        let v = vertex_values(n).unwrap();
        for i in 0..n {
            let img = stereo_project(n, &vertex_angle(n, i), 40).unwrap();
            match (&v[i as usize], img) {
                (Slope::Infinity, None) => {}
                (Slope::Finite(f), Some(r)) => assert!((f.approx_f64() - r.to_f64()).abs() < 1e-12, "n={n} i={i}"),
                (a, b) => panic!("n={n} i={i}: {a:?} vs {b:?}"),
            }
        }
    }
}

#[test]
fn vertex_values_match_sines() {
    for n in (5..=25).step_by(2) {
        let v = vertex_values(n).unwrap();
        for i in 1..n {
            let f = v[i as usize].finite().unwrap().approx_f64();
            assert!((f - vertex_value_sine(n, i, 30).to_f64()).abs() < 1e-12, "n={n} i={i}");
        }
    }
}

#[test]
fn reciprocal_symmetry() {
    for n in (5..=25).step_by(2) {
        let v = vertex_values(n).unwrap();
        let one = FieldElement::one(&context(n).unwrap());
        for i in 2..n as usize {
            assert!(v[i].eq_s(&v[n as usize + 1 - i].reciprocal(&one)), "n={n} i={i}");
        }
    }
}

#[test]
fn tan_identity() {
    for n in (5..=25).step_by(2) {
        for i in 2..n {
            let (l, r) = tan_identity_sides(n, i, 40);
            assert!((l - r).abs().to_f64() < 1e-12, "n={n} i={i}");
        }
    }
}

#[test]
fn rotation_has_order_n() {
    for n in [5u32, 7, 9, 13] {
        let t = rotation_lft(n).unwrap();
        assert!(t.pow(n).is_identity());
        assert!((1..n).all(|k| !t.pow(k).is_identity()));
    }
}

#[test]
fn operators_and_matrices() {
    let ops = s_operators(5).unwrap();
    assert_eq!(ops.len(), 4);
    let ctx = context(5).unwrap();
    let zero = Slope::Finite(FieldElement::zero(&ctx));
    assert!(ops[0].apply(&zero).is_infinite());
    for (m, op) in ops.iter().enumerate() {
        assert!(associated_matrix(op).det().field_sign() != stairflow::Sign::Zero, "m={}", m + 1);
    }
    assert_eq!(det_one_matrix(&ops[0]).unwrap().to_string(), "[[1, x], [0, 1]]");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reflection_is_an_involution(n in prop::sample::select(vec![5u32, 7, 9]), a in -30i64..30, b in 1i64..7) {
        let ctx = context(n).unwrap();
        let s = Slope::Finite(FieldElement::from_rational(&ctx, &q(a, b)));
        let r = reflection_lft(n).unwrap();
        prop_assert!(r.apply(&r.apply(&s)).eq_s(&s));
    }

    #[test]
    fn rotation_inverse_round_trip(a in -30i64..30, b in 1i64..7) {
        let ctx = context(7).unwrap();
        let s = Slope::Finite(FieldElement::from_rational(&ctx, &q(a, b)));
        let t = rotation_lft(7).unwrap();
        prop_assert!(t.inverse().apply(&t.apply(&s)).eq_s(&s));
    }
}
