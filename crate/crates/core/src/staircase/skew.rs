//! Numeric reconstruction of the staircase from the double `n`-gon.
//!
//! The regular `n`-gon sits with its bottom side horizontal, the second copy
//! is its point reflection. Both are cut into triangles along a zig-zag from
//! the bottom side, a shear fixes the horizontal and makes the zig-zag chords
//! vertical, and each triangle is paired with the reflected copy of itself
//! across its hypotenuse to form a rectangle.

use std::f64::consts::PI;

use super::{union_outer_vertices, Rectangle};
use crate::error::{Error, Result};
use crate::numfield::validate_n;

type Pt = [f64; 2];

const NORM_TOL: f64 = 1e-9;

fn sub(a: Pt, b: Pt) -> Pt {
    [a[0] - b[0], a[1] - b[1]]
}

/// Rectangles of the sheared and reassembled double `n`-gon, rescaled so the
/// largest one is `[0,1]^2` with its neighbours to the right and above.
pub fn skew_rectangles(n: u32) -> Result<Vec<Rectangle<f64>>> {
    validate_n(n)?;
    let m = ((n - 1) / 2) as usize;
    let nn = n as usize;
    let nf = n as f64;
    let v: Vec<Pt> = (0..nn)
        .map(|k| {
            let a = -PI / 2.0 - PI / nf + 2.0 * PI * k as f64 / nf;
            [a.cos(), a.sin()]
        })
        .collect();
    let a = |k: usize| v[(nn - k) % nn];
    let b = |k: usize| v[k + 1];

    // (three corners, hypotenuse endpoints)
    let mut tris: Vec<([Pt; 3], [Pt; 2])> = Vec::with_capacity(2 * m - 1);
    for k in 0..m - 1 {
        tris.push(([a(k), b(k), a(k + 1)], [a(k), a(k + 1)]));
        tris.push(([b(k), a(k + 1), b(k + 1)], [b(k), b(k + 1)]));
    }
    let apex = v[m + 1];
    tris.push(([a(m - 1), b(m - 1), apex], [a(m - 1), apex]));

    let d = sub(a(1), b(0));
    let shear = |p: Pt| [p[0] - p[1] * d[0] / d[1], p[1]];

    let mut raw: Vec<[f64; 4]> = tris
        .iter()
        .map(|(pts, hyp)| {
            let t = pts.map(shear);
            let (hp, hq) = (shear(hyp[0]), shear(hyp[1]));
            let mut bb = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
            for p in t.iter().map(|p| [p[0] - hp[0] - hq[0], p[1] - hp[1] - hq[1]]).chain(t.iter().map(|p| [-p[0], -p[1]])) {
                bb[0] = bb[0].min(p[0]);
                bb[1] = bb[1].min(p[1]);
                bb[2] = bb[2].max(p[0]);
                bb[3] = bb[3].max(p[1]);
            }
            bb
        })
        .collect();

    let area = |r: &[f64; 4]| (r[2] - r[0]) * (r[3] - r[1]);
    let c = *raw
        .iter()
        .max_by(|p, q| area(p).total_cmp(&area(q)))
        .ok_or_else(|| Error::Construction("empty triangulation".into()))?;
    let (sx, sy) = (1.0 / (c[2] - c[0]), 1.0 / (c[3] - c[1]));
    for r in &mut raw {
        *r = [(r[0] - c[0]) * sx, (r[1] - c[1]) * sy, (r[2] - c[0]) * sx, (r[3] - c[1]) * sy];
    }

    let overlaps = |lo: f64, hi: f64| hi > NORM_TOL && lo < 1.0 - NORM_TOL;
    let left = raw.iter().any(|r| (r[2]).abs() < NORM_TOL && overlaps(r[1], r[3]));
    let below = raw.iter().any(|r| (r[3]).abs() < NORM_TOL && overlaps(r[0], r[2]));
    for r in &mut raw {
        if left {
            *r = [1.0 - r[2], r[1], 1.0 - r[0], r[3]];
        }
        if below {
            *r = [r[0], 1.0 - r[3], r[2], 1.0 - r[1]];
        }
    }

    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by(|&i, &j| area(&raw[j]).total_cmp(&area(&raw[i])));
    Ok(order
        .iter()
        .enumerate()
        .map(|(rank, &i)| {
            let r = raw[i];
            Rectangle { k: rank.div_ceil(2), twin: rank > 0 && r[1] + r[3] > r[0] + r[2], x0: r[0], y0: r[1], x1: r[2], y1: r[3] }
        })
        .collect())
}

/// Outer vertex set of the skew construction.
pub fn derive_via_skew(n: u32) -> Result<Vec<(f64, f64)>> {
    let rects = skew_rectangles(n)?;
    Ok(union_outer_vertices(&rects, NORM_TOL))
}

/// Hausdorff distance (max norm) between two finite point sets; `None` when the sizes differ.
pub fn vertex_set_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let d = |p: &(f64, f64), q: &(f64, f64)| (p.0 - q.0).abs().max((p.1 - q.1).abs());
    let one_way = |a: &[(f64, f64)], b: &[(f64, f64)]| a.iter().map(|p| b.iter().map(|q| d(p, q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
    Some(one_way(a, b).max(one_way(b, a)))
}
