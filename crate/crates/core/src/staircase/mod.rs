//! The staircase translation surface of the regular `n`-gon.
//!
//! The central unit square `R_0` is followed by a chain of rectangles that
//! alternately step right and down: `R_1` sits to the right of `R_0`, `R_2`
//! below `R_1`, `R_3` to the right of `R_2`, and so on. Odd `R_k` measure
//! `s(k) x s(k-1)`, even ones `s(k-1) x s(k)`. Each `R_k` has a twin `R_k'`
//! obtained by swapping coordinates, so the surface is symmetric about `y = x`.
//!
//! Horizontal cylinders (rows) are maximal horizontal strips whose right end is
//! glued to the left end at equal height. Vertical cylinders (columns) are the
//! mirror images of rows, glued top to bottom at equal abscissa.

mod skew;
mod svg;

use std::cmp::Ordering;
use std::sync::Arc;

pub use skew::{derive_via_skew, skew_rectangles, vertex_set_distance};
pub use svg::staircase_svg;

use crate::chebpoly::s_lengths_in;
use crate::error::{Error, Result};
use crate::numfield::{FieldContext, FieldElement};
use crate::scalar::{Scalar, Sign};

/// An axis-parallel rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle<S> {
    /// Index `k` of `R_k`.
    pub k: usize,
    /// Whether this is the mirrored copy `R_k'`.
    pub twin: bool,
    pub x0: S,
    pub y0: S,
    pub x1: S,
    pub y1: S,
}

impl<S: Scalar> Rectangle<S> {
    pub fn width(&self) -> S {
        self.x1.clone() - self.x0.clone()
    }

    pub fn height(&self) -> S {
        self.y1.clone() - self.y0.clone()
    }

    pub fn area(&self) -> S {
        self.width() * self.height()
    }

    pub fn transpose(&self) -> Self {
        Rectangle {
            k: self.k,
            twin: !self.twin,
            x0: self.y0.clone(),
            y0: self.x0.clone(),
            x1: self.y1.clone(),
            y1: self.x1.clone(),
        }
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Rectangle<T> {
        Rectangle { k: self.k, twin: self.twin, x0: f(&self.x0), y0: f(&self.y0), x1: f(&self.x1), y1: f(&self.y1) }
    }

    /// Half-open containment `[x0, x1) x [y0, y1)`.
    fn contains_half_open(&self, x: &S, y: &S, tol: f64) -> bool {
        x.cmp_tol(&self.x0, tol) != Ordering::Less
            && x.cmp_tol(&self.x1, tol) == Ordering::Less
            && y.cmp_tol(&self.y0, tol) != Ordering::Less
            && y.cmp_tol(&self.y1, tol) == Ordering::Less
    }
}

/// A boundary identification: a row's right end to its left end, or a
/// column's top to its bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Glue {
    Row(usize),
    Column(usize),
}

/// Which way a cylinder runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Horizontal,
    Vertical,
}

/// A cylinder given by its circumference and height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder<S> {
    pub circumference: S,
    pub height: S,
}

/// A point together with the quadrants (NE, NW, SW, SE) of the surface around it.
#[derive(Debug, Clone)]
pub struct ConePoint<S> {
    /// Points of the polygon identified to this cone point.
    pub points: Vec<(S, S)>,
    /// Total angle in units of `pi/2`.
    pub quarter_turns: usize,
}

impl<S> ConePoint<S> {
    /// Total angle divided by `2 pi`.
    pub fn angle_over_2pi(&self) -> f64 {
        self.quarter_turns as f64 / 4.0
    }

    pub fn is_singular(&self) -> bool {
        self.quarter_turns != 4
    }
}

/// The staircase surface with its rectangle, row and column decompositions.
#[derive(Debug, Clone)]
pub struct StaircaseSurface<S> {
    pub n: u32,
    pub m: usize,
    /// Aspect ratio of every cylinder, `2 cos(pi/n)`.
    pub aspect: S,
    /// Side lengths `s(0), ..., s(m)`.
    pub s: Vec<S>,
    /// `R_0, R_1, R_1', ..., R_{m-1}, R_{m-1}'`.
    pub rectangles: Vec<Rectangle<S>>,
    /// Horizontal cylinders; row `k` has width `x s(k)` and height `s(k)`.
    pub rows: Vec<Rectangle<S>>,
    /// Vertical cylinders, the mirror images of the rows.
    pub columns: Vec<Rectangle<S>>,
    /// Comparison tolerance; zero for exact scalars.
    pub tol: f64,
}

pub type ExactSurface = StaircaseSurface<FieldElement>;
pub type FloatSurface = StaircaseSurface<f64>;

/// Builds the exact staircase for `n`.
pub fn build_staircase(n: u32) -> Result<ExactSurface> {
    let ctx = FieldContext::get(n)?;
    Ok(build_staircase_in(&ctx))
}

pub fn build_staircase_in(ctx: &Arc<FieldContext>) -> ExactSurface {
    let s = s_lengths_in(ctx);
    let x = FieldElement::generator(ctx);
    StaircaseSurface::from_lengths(ctx.n(), x, s, 0.0)
}

impl<S: Scalar> StaircaseSurface<S> {
    /// Lays out the surface from `x` and the side lengths `s(0..=m)`.
    pub fn from_lengths(n: u32, x: S, s: Vec<S>, tol: f64) -> Self {
        let m = ((n - 1) / 2) as usize;
        let zero = x.zero_like();
        let one = x.one_like();
        let r0 = Rectangle { k: 0, twin: false, x0: zero.clone(), y0: zero.clone(), x1: one.clone(), y1: one };
        let mut chain = vec![r0.clone()];
        for k in 1..m {
            let prev = &chain[k - 1];
            let r = if k % 2 == 1 {
                Rectangle {
                    k,
                    twin: false,
                    x0: prev.x1.clone(),
                    y0: prev.y0.clone(),
                    x1: prev.x1.clone() + s[k].clone(),
                    y1: prev.y0.clone() + s[k - 1].clone(),
                }
            } else {
                Rectangle {
                    k,
                    twin: false,
                    x0: prev.x0.clone(),
                    y0: prev.y0.clone() - s[k].clone(),
                    x1: prev.x0.clone() + s[k - 1].clone(),
                    y1: prev.y0.clone(),
                }
            };
            chain.push(r);
        }
        let mut rectangles = vec![r0];
        for r in &chain[1..] {
            rectangles.push(r.clone());
            rectangles.push(r.transpose());
        }

        let mut rows = Vec::with_capacity(m);
        for k in 0..m {
            let w = x.clone() * s[k].clone();
            let h = s[k].clone();
            let (x0, y0) = if k % 2 == 0 {
                (chain[k].x0.clone(), chain[k].y0.clone())
            } else {
                (chain[k].y0.clone() - s[k + 1].clone(), chain[k].x0.clone())
            };
            rows.push(Rectangle { k, twin: false, x1: x0.clone() + w, y1: y0.clone() + h, x0, y0 });
        }
        let columns = rows.iter().map(|r| r.transpose()).collect();
        StaircaseSurface { n, m, aspect: x, s, rectangles, rows, columns, tol }
    }

    pub fn map_scalar<T: Scalar, F: Fn(&S) -> T>(&self, f: F, tol: f64) -> StaircaseSurface<T> {
        StaircaseSurface {
            n: self.n,
            m: self.m,
            aspect: f(&self.aspect),
            s: self.s.iter().map(&f).collect(),
            rectangles: self.rectangles.iter().map(|r| r.map(&f)).collect(),
            rows: self.rows.iter().map(|r| r.map(&f)).collect(),
            columns: self.columns.iter().map(|r| r.map(&f)).collect(),
            tol,
        }
    }

    /// Floating-point copy with comparison tolerance `tol`.
    pub fn to_f64(&self, tol: f64) -> FloatSurface {
        self.map_scalar(|v| v.to_f64(), tol)
    }

    pub fn r_rectangles(&self) -> &[Rectangle<S>] {
        &self.rectangles
    }

    /// Long-over-short diagonal slopes of `R_0, ..., R_{m-1}`, ascending.
    pub fn diagonal_slopes(&self) -> Vec<S> {
        let mut out: Vec<S> = (0..self.m)
            .map(|k| if k == 0 { self.s[0].clone() } else { self.s[k - 1].clone() * self.s[k].inverse().expect("s(k) > 0") })
            .collect();
        out.sort_by(|a, b| a.cmp_tol(b, self.tol));
        out
    }

    pub fn cylinder_decomposition(&self, dir: Direction) -> Vec<Cylinder<S>> {
        let strips = match dir {
            Direction::Horizontal => &self.rows,
            Direction::Vertical => &self.columns,
        };
        strips
            .iter()
            .map(|r| match dir {
                Direction::Horizontal => Cylinder { circumference: r.width(), height: r.height() },
                Direction::Vertical => Cylinder { circumference: r.height(), height: r.width() },
            })
            .collect()
    }

    pub fn area(&self) -> S {
        self.rows.iter().fold(self.aspect.zero_like(), |acc, r| acc + r.area())
    }

    /// Index of the row containing `(x, y)` in its half-open interior.
    pub fn row_at(&self, x: &S, y: &S) -> Option<usize> {
        self.rows.iter().position(|r| r.contains_half_open(x, y, self.tol))
    }

    /// Index of the column whose half-open x-range contains `x` and whose top is `y`.
    pub fn column_with_top(&self, x: &S, y: &S) -> Option<usize> {
        self.columns.iter().position(|c| {
            x.cmp_tol(&c.x0, self.tol) != Ordering::Less
                && x.cmp_tol(&c.x1, self.tol) == Ordering::Less
                && y.cmp_tol(&c.y1, self.tol) == Ordering::Equal
        })
    }

    /// Whether the open quadrant at `(x, y)` is part of the surface.
    /// Quadrants: 0 = NE, 1 = NW, 2 = SW, 3 = SE.
    pub fn quadrant_occupied(&self, x: &S, y: &S, q: usize) -> bool {
        quadrant_occupied(&self.rectangles, x, y, q, self.tol)
    }

    fn occupancy(&self, x: &S, y: &S) -> [bool; 4] {
        [0, 1, 2, 3].map(|q| self.quadrant_occupied(x, y, q))
    }

    fn points_eq(&self, a: &(S, S), b: &(S, S)) -> bool {
        a.0.cmp_tol(&b.0, self.tol) == Ordering::Equal && a.1.cmp_tol(&b.1, self.tol) == Ordering::Equal
    }

    fn push_unique(&self, v: &mut Vec<(S, S)>, p: (S, S)) {
        if !v.iter().any(|q| self.points_eq(q, &p)) {
            v.push(p);
        }
    }

    /// All corners of rows and columns, deduplicated.
    pub fn vertex_candidates(&self) -> Vec<(S, S)> {
        let mut out = Vec::new();
        for r in self.rows.iter().chain(&self.columns).chain(&self.rectangles) {
            for p in [
                (r.x0.clone(), r.y0.clone()),
                (r.x1.clone(), r.y0.clone()),
                (r.x1.clone(), r.y1.clone()),
                (r.x0.clone(), r.y1.clone()),
            ] {
                self.push_unique(&mut out, p);
            }
        }
        out
    }

    /// Corners of the boundary polygon (convex, reflex or pinched).
    pub fn outer_vertices(&self) -> Vec<(S, S)> {
        self.vertex_candidates().into_iter().filter(|(x, y)| is_corner(self.occupancy(x, y))).collect()
    }

    /// Steps counterclockwise past the ray that ends quadrant `q` at `p`,
    /// following the gluing when the next quadrant is outside the polygon.
    /// Quadrants: 0 = NE, 1 = NW, 2 = SW, 3 = SE.
    pub fn turn(&self, p: &(S, S), q: usize) -> Result<((S, S), usize, Option<Glue>)> {
        let nq = (q + 1) % 4;
        if self.quadrant_occupied(&p.0, &p.1, nq) {
            return Ok((p.clone(), nq, None));
        }
        let (x, y) = (&p.0, &p.1);
        let t = self.tol;
        let eq = |a: &S, b: &S| a.cmp_tol(b, t) == Ordering::Equal;
        let within = |v: &S, lo: &S, hi: &S, lo_closed: bool| {
            let c0 = v.cmp_tol(lo, t);
            let c1 = v.cmp_tol(hi, t);
            (c0 == Ordering::Greater || (lo_closed && c0 == Ordering::Equal)) && c1 != Ordering::Greater
        };
        let found = match q {
            // North ray on a left row edge.
            0 => self.rows.iter().position(|r| eq(x, &r.x0) && within(y, &r.y0, &r.y1, true) && !eq(y, &r.y1)).map(|i| ((self.rows[i].x1.clone(), y.clone()), Glue::Row(i))),
            // West ray on a bottom column edge.
            1 => self.columns.iter().position(|c| eq(y, &c.y0) && within(x, &c.x0, &c.x1, false)).map(|i| ((x.clone(), self.columns[i].y1.clone()), Glue::Column(i))),
            // South ray on a right row edge.
            2 => self.rows.iter().position(|r| eq(x, &r.x1) && within(y, &r.y0, &r.y1, false)).map(|i| ((self.rows[i].x0.clone(), y.clone()), Glue::Row(i))),
            // East ray on a top column edge.
            _ => self.columns.iter().position(|c| eq(y, &c.y1) && within(x, &c.x0, &c.x1, true) && !eq(x, &c.x1)).map(|i| ((x.clone(), self.columns[i].y0.clone()), Glue::Column(i))),
        };
        match found {
            Some((np, g)) if self.quadrant_occupied(&np.0, &np.1, nq) => Ok((np, nq, Some(g))),
            _ => Err(Error::Construction("inconsistent gluing at a boundary ray".into())),
        }
    }

    /// Cone points obtained by walking around every polygon vertex through the gluings.
    pub fn cone_points(&self) -> Result<Vec<ConePoint<S>>> {
        let verts = self.vertex_candidates();
        let mut seen: Vec<((S, S), usize)> = Vec::new();
        let mut out = Vec::new();
        let is_seen = |seen: &Vec<((S, S), usize)>, p: &(S, S), q: usize| seen.iter().any(|(sp, sq)| *sq == q && self.points_eq(sp, p));
        for v in &verts {
            for q in 0..4 {
                if !self.quadrant_occupied(&v.0, &v.1, q) || is_seen(&seen, v, q) {
                    continue;
                }
                let mut points = Vec::new();
                let mut cur = (v.clone(), q);
                let mut turns = 0;
                loop {
                    seen.push(cur.clone());
                    self.push_unique(&mut points, cur.0.clone());
                    turns += 1;
                    if turns > 16 * (self.n as usize + 4) {
                        return Err(Error::Construction("cone point walk did not close".into()));
                    }
                    let (np, nq, _) = self.turn(&cur.0, cur.1)?;
                    cur = (np, nq);
                    if cur.1 == q && self.points_eq(&cur.0, v) {
                        break;
                    }
                }
                out.push(ConePoint { points, quarter_turns: turns });
            }
        }
        Ok(out)
    }

    /// Points of the polygon that map to singular cone points.
    pub fn singular_points(&self) -> Result<Vec<(S, S)>> {
        let mut out = Vec::new();
        for c in self.cone_points()? {
            if c.is_singular() {
                for p in c.points {
                    self.push_unique(&mut out, p);
                }
            }
        }
        Ok(out)
    }

    /// Whether `(x, y)` lies in the closed polygon.
    pub fn contains_closed(&self, x: &S, y: &S) -> bool {
        let t = self.tol;
        self.rectangles.iter().any(|r| {
            x.cmp_tol(&r.x0, t) != Ordering::Less
                && x.cmp_tol(&r.x1, t) != Ordering::Greater
                && y.cmp_tol(&r.y0, t) != Ordering::Less
                && y.cmp_tol(&r.y1, t) != Ordering::Greater
        })
    }

    /// Sign helper honouring the surface tolerance.
    pub fn sign_of(&self, v: &S) -> Sign {
        v.sign_tol(self.tol)
    }
}

fn quadrant_occupied<S: Scalar>(rects: &[Rectangle<S>], x: &S, y: &S, q: usize, t: f64) -> bool {
    rects.iter().any(|r| {
        let east = x.cmp_tol(&r.x0, t) != Ordering::Less && x.cmp_tol(&r.x1, t) == Ordering::Less;
        let west = x.cmp_tol(&r.x0, t) == Ordering::Greater && x.cmp_tol(&r.x1, t) != Ordering::Greater;
        let north = y.cmp_tol(&r.y0, t) != Ordering::Less && y.cmp_tol(&r.y1, t) == Ordering::Less;
        let south = y.cmp_tol(&r.y0, t) == Ordering::Greater && y.cmp_tol(&r.y1, t) != Ordering::Greater;
        match q {
            0 => east && north,
            1 => west && north,
            2 => west && south,
            _ => east && south,
        }
    })
}

fn is_corner(o: [bool; 4]) -> bool {
    let k = o.iter().filter(|b| **b).count();
    k == 1 || k == 3 || (k == 2 && o[0] == o[2])
}

/// Corners of the boundary of a union of closed rectangles.
pub fn union_outer_vertices<S: Scalar>(rects: &[Rectangle<S>], tol: f64) -> Vec<(S, S)> {
    let mut out: Vec<(S, S)> = Vec::new();
    for r in rects {
        for p in [(r.x0.clone(), r.y0.clone()), (r.x1.clone(), r.y0.clone()), (r.x1.clone(), r.y1.clone()), (r.x0.clone(), r.y1.clone())] {
            let dup = out.iter().any(|q| q.0.cmp_tol(&p.0, tol) == Ordering::Equal && q.1.cmp_tol(&p.1, tol) == Ordering::Equal);
            if !dup && is_corner([0, 1, 2, 3].map(|q| quadrant_occupied(rects, &p.0, &p.1, q, tol))) {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_l() {
        let s = build_staircase(5).unwrap();
        let rows: Vec<String> = s.rows.iter().map(|r| format!("{},{},{},{}", r.x0, r.y0, r.x1, r.y1)).collect();
        assert_eq!(rows, ["0,0,x,1", "0,1,1,x"]);
        assert_eq!(s.rectangles.len(), 3);
        let mut outer: Vec<String> = s.outer_vertices().iter().map(|(a, b)| format!("({a},{b})")).collect();
        outer.sort();
        assert_eq!(outer, ["(0,0)", "(0,x)", "(1,1)", "(1,x)", "(x,0)", "(x,1)"]);
    }

    #[test]
    fn golden_l_has_one_cone_point_of_angle_6pi() {
        let s = build_staircase(5).unwrap();
        let cones = s.cone_points().unwrap();
        assert_eq!(cones.len(), 1);
        assert_eq!(cones[0].quarter_turns, 12);
    }

    #[test]
    fn heptagon_rows() {
        let s = build_staircase(7).unwrap().to_f64(1e-12);
        let w: Vec<f64> = s.rows.iter().map(|r| r.x1 - r.x0).collect();
        let h: Vec<f64> = s.rows.iter().map(|r| r.y1 - r.y0).collect();
        for (a, b) in w.iter().zip([1.8019, 1.4450, 0.8019]) {
            assert!((a - b).abs() < 1e-4);
        }
        for (a, b) in h.iter().zip([1.0, 0.8019, 0.4450]) {
            assert!((a - b).abs() < 1e-4);
        }
    }
}
