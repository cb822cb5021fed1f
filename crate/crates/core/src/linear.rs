//! Extended slopes, direction vectors, 2x2 matrices and linear fractional maps
//! over any [`Scalar`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::numfield::{FieldContext, FieldElement};
use crate::scalar::{Scalar, Sign};

/// A value in `K ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedSlope<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> ExtendedSlope<S> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedSlope::Infinity)
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            ExtendedSlope::Finite(s) => Some(s),
            ExtendedSlope::Infinity => None,
        }
    }

    /// Infinity sorts above every finite value.
    pub fn cmp_s(&self, o: &Self) -> Ordering {
        match (self, o) {
            (ExtendedSlope::Infinity, ExtendedSlope::Infinity) => Ordering::Equal,
            (ExtendedSlope::Infinity, _) => Ordering::Greater,
            (_, ExtendedSlope::Infinity) => Ordering::Less,
            (ExtendedSlope::Finite(a), ExtendedSlope::Finite(b)) => a.cmp_s(b),
        }
    }

    pub fn eq_s(&self, o: &Self) -> bool {
        self.cmp_s(o) == Ordering::Equal
    }

    /// `s ↦ 1/s` with `0 ↔ ∞`; `like` supplies the zero for `1/∞`.
    pub fn reciprocal(&self, like: &S) -> Self {
        match self {
            ExtendedSlope::Infinity => ExtendedSlope::Finite(like.zero_like()),
            ExtendedSlope::Finite(s) => s.inverse().map_or(ExtendedSlope::Infinity, ExtendedSlope::Finite),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtendedSlope::Finite(s) => ExtendedSlope::Finite(-s.clone()),
            ExtendedSlope::Infinity => ExtendedSlope::Infinity,
        }
    }

    /// Homogeneous coordinates `(s, 1)` or `(1, 0)`, given a template scalar for constants.
    pub fn to_homogeneous(&self, like: &S) -> (S, S) {
        match self {
            ExtendedSlope::Finite(s) => (s.clone(), like.one_like()),
            ExtendedSlope::Infinity => (like.one_like(), like.zero_like()),
        }
    }

    /// `p / q`, infinity when `q = 0`.
    pub fn from_ratio(p: &S, q: &S) -> Self {
        p.checked_div(q).map_or(ExtendedSlope::Infinity, ExtendedSlope::Finite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedSlope::Finite(s) => s.to_f64(),
            ExtendedSlope::Infinity => f64::INFINITY,
        }
    }
}

impl ExtendedSlope<FieldElement> {
    /// `inf` or a field element in text form.
    pub fn to_text(&self) -> String {
        match self {
            ExtendedSlope::Finite(s) => s.to_text(),
            ExtendedSlope::Infinity => "inf".into(),
        }
    }

    /// Accepts `inf`, `infinity`, `∞`, or a field element.
    pub fn parse(ctx: &std::sync::Arc<FieldContext>, s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" | "Infinity" => Ok(ExtendedSlope::Infinity),
            t => Ok(ExtendedSlope::Finite(FieldElement::parse(ctx, t)?)),
        }
    }

    /// Significant-digit decimal, `inf` for infinity.
    pub fn embed(&self, digits: u32) -> String {
        match self {
            ExtendedSlope::Finite(s) => s.embed(digits),
            ExtendedSlope::Infinity => "inf".into(),
        }
    }

    pub fn embed_fixed(&self, decimals: u32) -> String {
        match self {
            ExtendedSlope::Finite(s) => s.embed_fixed(decimals),
            ExtendedSlope::Infinity => "inf".into(),
        }
    }
}

impl fmt::Display for ExtendedSlope<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A nonzero plane vector, normalised into the closed upper half plane with
/// `dx >= 0` and `dy >= 0` when `dx = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectionVector<S> {
    pub dx: S,
    pub dy: S,
}

impl<S: Scalar> DirectionVector<S> {
    pub fn new(dx: S, dy: S) -> Result<Self> {
        if dx.is_zero_s() && dy.is_zero_s() {
            return Err(Error::InvalidArgument("zero direction vector".into()));
        }
        let flip = match dx.sign() {
            Sign::Negative => true,
            Sign::Zero => dy.sign() == Sign::Negative,
            Sign::Positive => false,
        };
        Ok(if flip { DirectionVector { dx: -dx, dy: -dy } } else { DirectionVector { dx, dy } })
    }

    /// Keeps the given orientation.
    pub fn raw(dx: S, dy: S) -> Self {
        DirectionVector { dx, dy }
    }

    /// Representative `(1, s)` or `(0, 1)`.
    pub fn from_slope(s: &ExtendedSlope<S>, like: &S) -> Self {
        match s {
            ExtendedSlope::Finite(v) => DirectionVector { dx: like.one_like(), dy: v.clone() },
            ExtendedSlope::Infinity => DirectionVector { dx: like.zero_like(), dy: like.one_like() },
        }
    }

    /// Rise over run.
    pub fn slope(&self) -> ExtendedSlope<S> {
        ExtendedSlope::from_ratio(&self.dy, &self.dx)
    }

    pub fn is_horizontal(&self) -> bool {
        self.dy.is_zero_s()
    }

    pub fn is_vertical(&self) -> bool {
        self.dx.is_zero_s()
    }

    pub fn in_first_quadrant(&self) -> bool {
        self.dx.sign() != Sign::Negative && self.dy.sign() != Sign::Negative
    }

    /// `det [self | o]`.
    pub fn cross(&self, o: &Self) -> S {
        self.dx.clone() * o.dy.clone() - self.dy.clone() * o.dx.clone()
    }

    pub fn scale(&self, c: &S) -> Self {
        DirectionVector { dx: self.dx.clone() * c.clone(), dy: self.dy.clone() * c.clone() }
    }

    pub fn norm_sq(&self) -> S {
        self.dx.square() + self.dy.square()
    }

    /// Same direction (positive multiple).
    pub fn same_direction(&self, o: &Self) -> bool {
        self.cross(o).is_zero_s()
            && (self.dx.clone() * o.dx.clone() + self.dy.clone() * o.dy.clone()).sign() == Sign::Positive
    }
}

/// `[[a, b], [c, d]]`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity(like: &S) -> Self {
        Mat2::new(like.one_like(), like.zero_like(), like.zero_like(), like.one_like())
    }

    /// The coordinate swap `[[0, 1], [1, 0]]`.
    pub fn swap(like: &S) -> Self {
        Mat2::new(like.zero_like(), like.one_like(), like.one_like(), like.zero_like())
    }

    pub fn from_columns(u: &DirectionVector<S>, v: &DirectionVector<S>) -> Self {
        Mat2::new(u.dx.clone(), v.dx.clone(), u.dy.clone(), v.dy.clone())
    }

    pub fn column(&self, j: usize) -> DirectionVector<S> {
        match j {
            0 => DirectionVector::raw(self.a.clone(), self.c.clone()),
            _ => DirectionVector::raw(self.b.clone(), self.d.clone()),
        }
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// `[[d, -b], [-c, a]]`, the inverse when `det = 1`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d.clone(), -self.b.clone(), -self.c.clone(), self.a.clone())
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }

    pub fn apply(&self, v: &DirectionVector<S>) -> DirectionVector<S> {
        DirectionVector::raw(
            self.a.clone() * v.dx.clone() + self.b.clone() * v.dy.clone(),
            self.c.clone() * v.dx.clone() + self.d.clone() * v.dy.clone(),
        )
    }

    pub fn scale(&self, k: &S) -> Self {
        Mat2::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
            self.d.clone() * k.clone(),
        )
    }

    /// Rescaled so the first nonzero entry of `(a, b, c, d)` is 1.
    pub fn projective_normal(&self) -> Option<Self> {
        let lead = self.entries().into_iter().find(|e| !e.is_zero_s())?.clone();
        Some(self.scale(&lead.inverse()?))
    }

    pub fn eq_s(&self, o: &Self) -> bool {
        self.entries().iter().zip(o.entries()).all(|(x, y)| x.cmp_s(y) == Ordering::Equal)
    }

    /// Equal up to a nonzero scalar factor.
    pub fn projectively_eq(&self, o: &Self) -> bool {
        match (self.projective_normal(), o.projective_normal()) {
            (Some(x), Some(y)) => x.eq_s(&y),
            _ => false,
        }
    }

    /// `k` with `self = k * o`, if it exists.
    pub fn proportionality(&self, o: &Self) -> Option<S> {
        let (i, oe) = o.entries().into_iter().enumerate().find(|(_, e)| !e.is_zero_s())?;
        let k = self.entries()[i].checked_div(oe)?;
        o.scale(&k).eq_s(self).then_some(k)
    }
}

impl<S: Scalar> Mat2<S> {
    pub fn map_scalar<T, F: Fn(&S) -> T>(&self, f: F) -> Mat2<T> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }
}

impl fmt::Display for Mat2<FieldElement> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `s ↦ (a s + b) / (c s + d)` on `K ∪ {∞}`, stored in projective normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lft<S> {
    m: Mat2<S>,
}

impl<S: Scalar> Lft<S> {
    pub fn from_matrix(m: Mat2<S>) -> Result<Self> {
        if m.det().is_zero_s() {
            return Err(Error::InvalidArgument("singular linear fractional map".into()));
        }
        let m = m.projective_normal().expect("nonzero matrix");
        Ok(Lft { m })
    }

    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        Self::from_matrix(Mat2::new(a, b, c, d))
    }

    pub fn identity(like: &S) -> Self {
        Lft { m: Mat2::identity(like) }
    }

    /// `s ↦ -s`.
    pub fn negation(like: &S) -> Self {
        Lft::from_matrix(Mat2::new(-like.one_like(), like.zero_like(), like.zero_like(), like.one_like()))
            .expect("invertible")
    }

    /// `s ↦ 1/s`.
    pub fn reciprocal(like: &S) -> Self {
        Lft::from_matrix(Mat2::swap(like)).expect("invertible")
    }

    pub fn matrix(&self) -> &Mat2<S> {
        &self.m
    }

    pub fn apply(&self, s: &ExtendedSlope<S>) -> ExtendedSlope<S> {
        let (p, q) = s.to_homogeneous(&self.m.a);
        let v = self.m.apply(&DirectionVector::raw(p, q));
        ExtendedSlope::from_ratio(&v.dx, &v.dy)
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        Lft::from_matrix(self.m.mul(&o.m)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> Self {
        Lft::from_matrix(self.m.adjugate()).expect("invertible")
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Lft::identity(&self.m.a);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.m.eq_s(&Mat2::identity(&self.m.a))
    }

    pub fn eq_s(&self, o: &Self) -> bool {
        self.m.eq_s(&o.m)
    }

    /// The unique map sending `src[i]` to `dst[i]` for three distinct points each.
    pub fn from_three_points(src: [&ExtendedSlope<S>; 3], dst: [&ExtendedSlope<S>; 3], like: &S) -> Result<Self> {
        let z = frame(src, like)?;
        let w = frame(dst, like)?;
        Lft::from_matrix(w.mul(&z.adjugate()))
    }
}

/// Matrix sending `e1, e2, e1 + e2` to the homogeneous points `p[0], p[1], p[2]`.
fn frame<S: Scalar>(p: [&ExtendedSlope<S>; 3], like: &S) -> Result<Mat2<S>> {
    let hs: Vec<(S, S)> = p.iter().map(|s| s.to_homogeneous(like)).collect();
    let (u, v, w) = (&hs[0], &hs[1], &hs[2]);
    let m = Mat2::new(u.0.clone(), v.0.clone(), u.1.clone(), v.1.clone());
    let det = m.det();
    let inv_det = det
        .inverse()
        .ok_or_else(|| Error::Construction("degenerate point correspondence".into()))?;
    let lam = (m.d.clone() * w.0.clone() - m.b.clone() * w.1.clone()) * inv_det.clone();
    let mu = (m.a.clone() * w.1.clone() - m.c.clone() * w.0.clone()) * inv_det;
    if lam.is_zero_s() || mu.is_zero_s() {
        return Err(Error::Construction("degenerate point correspondence".into()));
    }
    Ok(Mat2::new(
        u.0.clone() * lam.clone(),
        v.0.clone() * mu.clone(),
        u.1.clone() * lam,
        v.1.clone() * mu,
    ))
}
