use stairflow::hyperdisk::{vertex_values, Slope};
use stairflow::staircase::{build_staircase, derive_via_skew, skew_rectangles, staircase_svg, vertex_set_distance, Direction};
use stairflow::{FieldElement, Scalar};

#[test]
fn skew_pipeline_matches_exact_vertices() {
    for n in [5, 7, 9, 11, 13, 15, 21] {
        let exact = build_staircase(n).unwrap();
        let want: Vec<(f64, f64)> = exact.outer_vertices().iter().map(|(x, y)| (x.to_f64(), y.to_f64())).collect();
        let got = derive_via_skew(n).unwrap();
        let dist = vertex_set_distance(&got, &want).expect("same vertex count");
        assert!(dist < 1e-9, "n={n}: {dist:e}");
    }
}

#[test]
fn skew_central_rectangle_is_unit_square() {
    for n in [5, 9, 13] {
        let r = &skew_rectangles(n).unwrap()[0];
        assert!((r.x1 - r.x0 - 1.0).abs() < 1e-12 && (r.y1 - r.y0 - 1.0).abs() < 1e-12);
    }
}

#[test]
fn rectangle_count_and_tiling() {
    for n in (5..=25).step_by(2) {
        let s = build_staircase(n).unwrap();
        assert_eq!(s.r_rectangles().len(), n as usize - 2);
        assert!(s.s[s.m].is_zero());
        let rect_area = s.rectangles.iter().fold(s.aspect.zero_like(), |a, r| a + r.area());
        assert_eq!(rect_area, s.area(), "n={n}");
    }
}

#[test]
fn cylinders_have_aspect_x_both_ways() {
    for n in (5..=31).step_by(2) {
        let s = build_staircase(n).unwrap();
        for dir in [Direction::Horizontal, Direction::Vertical] {
            let cyl = s.cylinder_decomposition(dir);
            assert_eq!(cyl.len(), s.m);
            for c in cyl {
                assert_eq!(c.circumference.clone(), s.aspect.clone() * c.height.clone(), "n={n}");
            }
        }
    }
}

#[test]
fn pentagon_horizontal_cylinders() {
    let s = build_staircase(5).unwrap();
    let got: Vec<String> = s.cylinder_decomposition(Direction::Horizontal).iter().map(|c| format!("{} {}", c.circumference, c.height)).collect();
    assert_eq!(got, ["x 1", "1 -1+x"]);
}

#[test]
fn diagonals_are_negated_vertex_values() {
    for n in (5..=35).step_by(2) {
        let s = build_staircase(n).unwrap();
        let v = vertex_values(n).unwrap();
        let mut want: Vec<FieldElement> = v[(n as usize).div_ceil(2)..]
            .iter()
            .map(|x| match x {
                Slope::Finite(f) => -f.clone(),
                Slope::Infinity => unreachable!(),
            })
            .collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(s.diagonal_slopes(), want, "n={n}");
    }
}

#[test]
fn table_rows() {
    let fmt = |n: u32| -> Vec<String> { build_staircase(n).unwrap().diagonal_slopes().iter().map(|d| d.embed_fixed(4)).collect() };
    assert_eq!(fmt(5), ["1.0000", "1.6180"]);
    assert_eq!(fmt(7), ["1.0000", "1.2470", "1.8019"]);
    // 1.426919719 from an independent 30-digit evaluation.
    assert_eq!(fmt(13), ["1.0000", "1.0617", "1.1361", "1.2411", "1.4269", "1.9419"]);
    assert_eq!(fmt(15), ["1.0000", "1.0457", "1.0982", "1.1654", "1.2643", "1.4451", "1.9563"]);
}

#[test]
fn twin_diagonals_are_reciprocal() {
    let s = build_staircase(11).unwrap();
    for pair in s.rectangles[1..].chunks(2) {
        let a = pair[0].height() * pair[0].width().inverse().unwrap();
        let b = pair[1].height() * pair[1].width().inverse().unwrap();
        assert_eq!(a * b, s.aspect.one_like());
    }
}

#[test]
fn single_cone_point() {
    for n in (5..=17).step_by(2) {
        let s = build_staircase(n).unwrap();
        let singular: Vec<_> = s.cone_points().unwrap().into_iter().filter(|c| c.is_singular()).collect();
        assert_eq!(singular.len(), 1, "n={n}");
        assert_eq!(singular[0].quarter_turns, 4 * (n as usize - 2), "n={n}");
    }
}

#[test]
fn float_surface_cone_points_agree() {
    let s = build_staircase(9).unwrap();
    let f = s.to_f64(1e-9);
    assert_eq!(f.singular_points().unwrap().len(), s.singular_points().unwrap().len());
}

#[test]
fn svg_is_deterministic() {
    let s = build_staircase(7).unwrap();
    let a = staircase_svg(&s, true);
    assert_eq!(a, staircase_svg(&s, true));
    assert_eq!(a.matches("<line ").count(), 5);
    for label in [">1.0000<", ">1.2470<", ">1.8019<", ">0.8019<", ">0.5550<"] {
        assert!(a.contains(label), "{label}");
    }
}

#[test]
fn svg_outline_of_golden_l() {
    let s = build_staircase(5).unwrap();
    let svg = staircase_svg(&s, false);
    let d = svg.lines().find(|l| l.starts_with("<path id=\"outline\"")).unwrap();
    assert_eq!(d.matches('L').count() + d.matches('M').count(), 6);
    assert!(!svg.contains("<line "));
}
