//! Deterministic SVG rendering of a staircase.

use std::fmt::Write;

use super::{Rectangle, StaircaseSurface};
use crate::scalar::Scalar;

const SCALE: f64 = 200.0;
const MARGIN: f64 = 20.0;
const TOL: f64 = 1e-9;

fn fmt(v: f64) -> String {
    format!("{:.4}", v + 0.0)
}

struct Frame {
    min_x: f64,
    max_y: f64,
}

impl Frame {
    fn px(&self, x: f64) -> String {
        fmt(MARGIN + (x - self.min_x) * SCALE)
    }

    fn py(&self, y: f64) -> String {
        fmt(MARGIN + (self.max_y - y) * SCALE)
    }
}

/// Closed boundary loops of a union of rectangles, counterclockwise.
fn boundary_loops(rects: &[Rectangle<f64>]) -> Vec<Vec<(f64, f64)>> {
    let verts = super::union_outer_vertices(rects, TOL);
    let occ = |p: &(f64, f64), q: usize| super::quadrant_occupied(rects, &p.0, &p.1, q, TOL);
    // Directions E, N, W, S; interior on the left.
    let leaves = |p: &(f64, f64), d: usize| match d {
        0 => occ(p, 0) && !occ(p, 3),
        1 => occ(p, 1) && !occ(p, 0),
        2 => occ(p, 2) && !occ(p, 1),
        _ => occ(p, 3) && !occ(p, 2),
    };
    let next = |p: &(f64, f64), d: usize| -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, q) in verts.iter().enumerate() {
            let (along, across) = match d {
                0 => (q.0 - p.0, q.1 - p.1),
                1 => (q.1 - p.1, q.0 - p.0),
                2 => (p.0 - q.0, q.1 - p.1),
                _ => (p.1 - q.1, q.0 - p.0),
            };
            if across.abs() < TOL && along > TOL && best.is_none_or(|(_, b)| along < b) {
                best = Some((i, along));
            }
        }
        best.map(|(i, _)| i)
    };

    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by(|&i, &j| verts[i].partial_cmp(&verts[j]).expect("finite"));
    let mut used = vec![[false; 4]; verts.len()];
    let mut loops = Vec::new();
    for &start in &order {
        for d0 in 0..4 {
            if used[start][d0] || !leaves(&verts[start], d0) {
                continue;
            }
            let mut lp = Vec::new();
            let (mut i, mut d) = (start, d0);
            while !used[i][d] {
                used[i][d] = true;
                lp.push(verts[i]);
                let Some(j) = next(&verts[i], d) else { break };
                i = j;
                d = match (0..4).map(|k| (d + 1 + 4 - k) % 4).find(|&k| leaves(&verts[i], k) && !used[i][k]) {
                    Some(k) => k,
                    None => break,
                };
            }
            loops.push(lp);
        }
    }
    loops
}

/// SVG drawing of the staircase: outline, rectangle grid and optionally
/// dashed diagonals labelled with their slopes.
pub fn staircase_svg<S: Scalar>(surface: &StaircaseSurface<S>, show_diagonals: bool) -> String {
    let rects: Vec<Rectangle<f64>> = surface.rectangles.iter().map(|r| r.map(|v| v.to_f64())).collect();
    let min_x = rects.iter().map(|r| r.x0).fold(f64::INFINITY, f64::min);
    let min_y = rects.iter().map(|r| r.y0).fold(f64::INFINITY, f64::min);
    let max_x = rects.iter().map(|r| r.x1).fold(f64::NEG_INFINITY, f64::max);
    let max_y = rects.iter().map(|r| r.y1).fold(f64::NEG_INFINITY, f64::max);
    let f = Frame { min_x, max_y };
    let width = fmt(2.0 * MARGIN + (max_x - min_x) * SCALE);
    let height = fmt(2.0 * MARGIN + (max_y - min_y) * SCALE);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#);
    let _ = writeln!(out, "<title>staircase n={}</title>", surface.n);

    let _ = writeln!(out, r##"<g id="grid" fill="#f4f1e8" stroke="#9a9a9a" stroke-width="1">"##);
    for r in &rects {
        let _ = writeln!(
            out,
            r#"<rect data-k="{}{}" x="{}" y="{}" width="{}" height="{}"/>"#,
            r.k,
            if r.twin { "'" } else { "" },
            f.px(r.x0),
            f.py(r.y1),
            fmt((r.x1 - r.x0) * SCALE),
            fmt((r.y1 - r.y0) * SCALE)
        );
    }
    let _ = writeln!(out, "</g>");

    let mut d = String::new();
    for lp in boundary_loops(&rects) {
        for (i, p) in lp.iter().enumerate() {
            let _ = write!(d, "{}{},{} ", if i == 0 { "M" } else { "L" }, f.px(p.0), f.py(p.1));
        }
        d.push_str("Z ");
    }
    let _ = writeln!(out, r##"<path id="outline" d="{}" fill="none" stroke="#000000" stroke-width="2"/>"##, d.trim_end());

    if show_diagonals {
        let _ = writeln!(out, r##"<g id="diagonals" stroke="#b03030" stroke-width="1.5" stroke-dasharray="6,4">"##);
        for r in &rects {
            let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, f.px(r.x0), f.py(r.y0), f.px(r.x1), f.py(r.y1));
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(out, r##"<g id="labels" font-family="monospace" font-size="12" fill="#b03030" text-anchor="middle">"##);
        for r in &rects {
            let slope = (r.y1 - r.y0) / (r.x1 - r.x0);
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">{:.4}</text>"#,
                f.px((r.x0 + r.x1) / 2.0),
                f.py((r.y0 + r.y1) / 2.0),
                slope
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}
