//! Straight-line flow on the staircase.
//!
//! The tracer walks row by row. Inside a row the next event is either the
//! right end, glued to the left end at the same height, or the top edge,
//! which continues into the row above or wraps through a column to its
//! bottom. Points are kept on their left/bottom representative, so a return
//! to the start is an equality test.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linear::{DirectionVector, ExtendedSlope};
use crate::numfield::FieldElement;
use crate::scalar::{Scalar, Sign};
use crate::staircase::{build_staircase, ExactSurface, Glue, StaircaseSurface};

/// A boundary identification used by a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Crossing {
    /// Right end of row `i` to its left end.
    Right(usize),
    /// Top of column `i` to its bottom.
    Top(usize),
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::Right(i) => write!(f, "R{i}"),
            Crossing::Top(i) => write!(f, "T{i}"),
        }
    }
}

/// A point of the staircase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfacePoint<S> {
    pub x: S,
    pub y: S,
}

impl<S> SurfacePoint<S> {
    pub fn new(x: S, y: S) -> Self {
        SurfacePoint { x, y }
    }
}

impl SurfacePoint<FieldElement> {
    /// Parses `"1/10,0"` (field element text on each side of the comma).
    pub fn parse(ctx: &std::sync::Arc<crate::FieldContext>, s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse(format!("expected x,y in {s:?}")))?;
        Ok(SurfacePoint { x: FieldElement::parse(ctx, a)?, y: FieldElement::parse(ctx, b)? })
    }
}

/// Outcome of a trace.
#[derive(Debug, Clone)]
pub enum TraceResult<S> {
    Closed { crossings: usize, length_sq: S, sequence: Vec<Crossing> },
    Singular { at: SurfacePoint<S>, crossings: usize, sequence: Vec<Crossing> },
    Exhausted { crossings: usize, sequence: Vec<Crossing> },
}

impl<S> TraceResult<S> {
    pub fn tag(&self) -> &'static str {
        match self {
            TraceResult::Closed { .. } => "closed",
            TraceResult::Singular { .. } => "singular",
            TraceResult::Exhausted { .. } => "exhausted",
        }
    }

    pub fn crossings(&self) -> usize {
        match self {
            TraceResult::Closed { crossings, .. } | TraceResult::Singular { crossings, .. } | TraceResult::Exhausted { crossings, .. } => *crossings,
        }
    }

    pub fn sequence(&self) -> &[Crossing] {
        match self {
            TraceResult::Closed { sequence, .. } | TraceResult::Singular { sequence, .. } | TraceResult::Exhausted { sequence, .. } => sequence,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, TraceResult::Closed { .. })
    }
}

/// A staircase prepared for tracing, with its cone points located.
#[derive(Debug, Clone)]
pub struct Tracer<S> {
    surface: StaircaseSurface<S>,
    singular: Vec<(S, S)>,
}

enum Exit {
    Right,
    Top,
    Corner,
}

impl<S: Scalar> Tracer<S> {
    pub fn new(surface: StaircaseSurface<S>) -> Result<Self> {
        let singular = surface.singular_points()?;
        Ok(Tracer { surface, singular })
    }

    pub fn surface(&self) -> &StaircaseSurface<S> {
        &self.surface
    }

    pub fn singular_points(&self) -> &[(S, S)] {
        &self.singular
    }

    fn zero(&self, v: &S) -> bool {
        v.sign_tol(self.surface.tol) == Sign::Zero
    }

    fn same(&self, a: &(S, S), b: &(S, S)) -> bool {
        self.zero(&(a.0.clone() - b.0.clone())) && self.zero(&(a.1.clone() - b.1.clone()))
    }

    fn is_singular(&self, p: &(S, S)) -> bool {
        self.singular.iter().any(|q| self.same(p, q))
    }

    /// The left/bottom representative of `p` and the row holding it.
    pub fn canonicalize(&self, p: &(S, S)) -> Result<((S, S), usize)> {
        let s = &self.surface;
        let t = s.tol;
        let via_right = |p: &(S, S)| -> Option<(S, S)> {
            s.rows
                .iter()
                .find(|r| self.zero(&(p.0.clone() - r.x1.clone())) && p.1.cmp_tol(&r.y0, t).is_ge() && p.1.cmp_tol(&r.y1, t).is_lt())
                .map(|r| (r.x0.clone(), p.1.clone()))
        };
        let via_top = |p: &(S, S)| -> Option<(S, S)> { s.column_with_top(&p.0, &p.1).map(|c| (p.0.clone(), s.columns[c].y0.clone())) };
        let mut candidates = vec![p.clone()];
        if let Some(q) = via_right(p) {
            candidates.push(q.clone());
            candidates.extend(via_top(&q));
        }
        if let Some(q) = via_top(p) {
            candidates.push(q.clone());
            candidates.extend(via_right(&q));
        }
        candidates
            .into_iter()
            .find_map(|q| s.row_at(&q.0, &q.1).map(|r| (q, r)))
            .ok_or_else(|| Error::InvalidArgument("start point outside the staircase".into()))
    }

    /// Follows the flow in direction `dir` from `start` for at most `max_crossings` identifications.
    pub fn trace(&self, dir: &DirectionVector<S>, start: &SurfacePoint<S>, max_crossings: usize) -> Result<TraceResult<S>> {
        let (dx, dy) = (dir.dx.clone(), dir.dy.clone());
        if (self.zero(&dx) && self.zero(&dy)) || dx.sign_tol(self.surface.tol) == Sign::Negative || dy.sign_tol(self.surface.tol) == Sign::Negative {
            return Err(Error::InvalidArgument("direction must be a nonzero vector in the closed first quadrant".into()));
        }
        let raw = (start.x.clone(), start.y.clone());
        if self.is_singular(&raw) {
            return Err(Error::InvalidArgument("start point is a cone point".into()));
        }
        let (s0, mut row) = self.canonicalize(&raw)?;
        if self.is_singular(&s0) {
            return Err(Error::InvalidArgument("start point is a cone point".into()));
        }
        let horizontal = self.zero(&dy);
        let vertical = self.zero(&dx);
        let slope = (!vertical).then(|| dy.clone() * dx.inverse().expect("dx != 0"));
        let inv_slope = (!horizontal).then(|| dx.clone() * dy.inverse().expect("dy != 0"));
        let dot = |v: &(S, S)| v.0.clone() * dx.clone() + v.1.clone() * dy.clone();
        let cross = |v: &(S, S)| v.0.clone() * dy.clone() - v.1.clone() * dx.clone();
        let diff = |a: &(S, S), b: &(S, S)| (a.0.clone() - b.0.clone(), a.1.clone() - b.1.clone());

        let zero = dx.zero_like();
        let mut acc = (zero.clone(), zero.clone());
        let mut p = s0.clone();
        let mut seq: Vec<Crossing> = Vec::new();
        let mut first = true;
        loop {
            let r = &self.surface.rows[row];
            let (e, exit) = if horizontal {
                ((r.x1.clone(), p.1.clone()), Exit::Right)
            } else if vertical {
                ((p.0.clone(), r.y1.clone()), Exit::Top)
            } else {
                let a = (r.x1.clone() - p.0.clone()) * dy.clone();
                let b = (r.y1.clone() - p.1.clone()) * dx.clone();
                match (a - b).sign_tol(self.surface.tol) {
                    Sign::Negative => ((r.x1.clone(), p.1.clone() + (r.x1.clone() - p.0.clone()) * slope.clone().expect("finite")), Exit::Right),
                    Sign::Positive => ((p.0.clone() + (r.y1.clone() - p.1.clone()) * inv_slope.clone().expect("nonzero"), r.y1.clone()), Exit::Top),
                    Sign::Zero => ((r.x1.clone(), r.y1.clone()), Exit::Corner),
                }
            };

            if !first {
                let sp = diff(&s0, &p);
                if self.zero(&cross(&sp)) && dot(&sp).sign_tol(self.surface.tol) != Sign::Negative && dot(&diff(&e, &s0)).sign_tol(self.surface.tol) == Sign::Positive {
                    let total = (acc.0 + sp.0, acc.1 + sp.1);
                    return Ok(TraceResult::Closed { crossings: seq.len(), length_sq: total.0.square() + total.1.square(), sequence: seq });
                }
            }
            first = false;

            if horizontal || vertical {
                let len = dot(&diff(&e, &p));
                let hit = self.singular.iter().find(|q| {
                    let qp = diff(q, &p);
                    self.zero(&cross(&qp)) && dot(&qp).sign_tol(self.surface.tol) == Sign::Positive && (len.clone() - dot(&qp)).sign_tol(self.surface.tol) == Sign::Positive
                });
                if let Some(q) = hit {
                    return Ok(TraceResult::Singular { at: SurfacePoint::new(q.0.clone(), q.1.clone()), crossings: seq.len(), sequence: seq });
                }
            }
            if self.is_singular(&e) {
                return Ok(TraceResult::Singular { at: SurfacePoint::new(e.0, e.1), crossings: seq.len(), sequence: seq });
            }
            let step = diff(&e, &p);
            acc = (acc.0 + step.0, acc.1 + step.1);

            let (np, crossings) = match exit {
                Exit::Right => ((r.x0.clone(), e.1.clone()), vec![Crossing::Right(row)]),
                Exit::Top => match self.surface.row_at(&e.0, &e.1) {
                    Some(_) => (e.clone(), Vec::new()),
                    None => {
                        let c = self
                            .surface
                            .column_with_top(&e.0, &e.1)
                            .ok_or_else(|| Error::Construction("top edge with no row above and no column".into()))?;
                        ((e.0.clone(), self.surface.columns[c].y0.clone()), vec![Crossing::Top(c)])
                    }
                },
                Exit::Corner => {
                    // Regular corner: from the south-west germ two quarter turns lead to the north-east one.
                    let mut cur = (e.clone(), 2usize);
                    let mut glued = Vec::new();
                    for _ in 0..2 {
                        let (q, quad, g) = self.surface.turn(&cur.0, cur.1)?;
                        match g {
                            Some(Glue::Row(i)) => glued.push(Crossing::Right(i)),
                            Some(Glue::Column(i)) => glued.push(Crossing::Top(i)),
                            None => {}
                        }
                        cur = (q, quad);
                    }
                    (cur.0, glued)
                }
            };
            for c in crossings {
                if seq.len() >= max_crossings {
                    return Ok(TraceResult::Exhausted { crossings: seq.len(), sequence: seq });
                }
                seq.push(c);
            }
            p = np;
            row = self
                .surface
                .row_at(&p.0, &p.1)
                .ok_or_else(|| Error::Construction("flow left the staircase".into()))?;
        }
    }
}

pub type ExactTracer = Tracer<FieldElement>;
pub type FloatTracer = Tracer<f64>;

/// Exact trace on the exact staircase.
pub fn trace_exact(
    surface: &ExactSurface,
    direction: &DirectionVector<FieldElement>,
    start: &SurfacePoint<FieldElement>,
    max_crossings: usize,
) -> Result<TraceResult<FieldElement>> {
    Tracer::new(surface.clone())?.trace(direction, start, max_crossings)
}

/// The same tracer in `f64`, with positions compared to within `tol`.
pub fn trace_numeric<S: Scalar>(
    surface: &StaircaseSurface<S>,
    direction: (f64, f64),
    start: (f64, f64),
    max_crossings: usize,
    tol: f64,
) -> Result<TraceResult<f64>> {
    let scale = direction.0.abs().max(direction.1.abs());
    if scale.is_nan() || scale == 0.0 {
        return Err(Error::InvalidArgument("zero direction vector".into()));
    }
    let dir = DirectionVector::raw(direction.0 / scale, direction.1 / scale);
    Tracer::new(surface.to_f64(tol))?.trace(&dir, &SurfacePoint::new(start.0, start.1), max_crossings)
}

/// Whether `b` is a cyclic rotation of `a`.
pub fn cyclic_eq<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| a[k..].iter().chain(&a[..k]).eq(b.iter())))
}

/// One sampled trajectory.
#[derive(Debug, Clone)]
pub struct Sample {
    pub start: SurfacePoint<FieldElement>,
    pub result: TraceResult<FieldElement>,
}

/// Outcome of [`verify_periodic`].
#[derive(Debug, Clone)]
pub struct PeriodicReport {
    pub n: u32,
    pub slope: ExtendedSlope<FieldElement>,
    pub samples: Vec<Sample>,
    /// Distinct crossing patterns up to cyclic rotation.
    pub patterns: Vec<Vec<Crossing>>,
    /// Singular starts that were redrawn.
    pub resampled: usize,
}

impl PeriodicReport {
    pub fn all_closed(&self) -> bool {
        self.samples.iter().all(|s| s.result.is_closed())
    }

    pub fn first_deviation(&self) -> Option<&Sample> {
        self.samples.iter().find(|s| !s.result.is_closed())
    }
}

/// Crossing bound used by [`verify_periodic`].
pub const VERIFY_MAX_CROSSINGS: usize = 100_000;

const DENOM: i64 = 997;

/// Traces `samples` seeded random starts in direction `slope`.
pub fn verify_periodic(n: u32, slope: &ExtendedSlope<FieldElement>, samples: usize, seed: u64) -> Result<PeriodicReport> {
    let surface = build_staircase(n)?;
    let tracer = Tracer::new(surface)?;
    verify_periodic_with(&tracer, slope, samples, seed, VERIFY_MAX_CROSSINGS)
}

pub fn verify_periodic_with(tracer: &ExactTracer, slope: &ExtendedSlope<FieldElement>, samples: usize, seed: u64, max_crossings: usize) -> Result<PeriodicReport> {
    let surface = tracer.surface();
    let like = surface.aspect.clone();
    if let ExtendedSlope::Finite(s) = slope {
        if s.field_sign() == Sign::Negative {
            return Err(Error::InvalidArgument(format!("negative slope {s}")));
        }
    }
    let dir = DirectionVector::from_slope(slope, &like);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut patterns: Vec<Vec<Crossing>> = Vec::new();
    let mut resampled = 0;
    while out.len() < samples {
        let r = &surface.rectangles[rng.gen_range(0..surface.rectangles.len())];
        let mut frac = || like.rational_like(&BigRational::new(BigInt::from(rng.gen_range(1..DENOM)), BigInt::from(DENOM)));
        let (fx, fy) = (frac(), frac());
        let start = SurfacePoint::new(r.x0.clone() + fx * r.width(), r.y0.clone() + fy * r.height());
        let result = tracer.trace(&dir, &start, max_crossings)?;
        if let TraceResult::Singular { .. } = result {
            resampled += 1;
            if resampled > 16 * samples.max(1) {
                return Err(Error::Verification("too many singular samples".into()));
            }
            continue;
        }
        if result.is_closed() && !patterns.iter().any(|p| cyclic_eq(p, result.sequence())) {
            patterns.push(result.sequence().to_vec());
        }
        out.push(Sample { start, result });
    }
    Ok(PeriodicReport { n: surface.n, slope: slope.clone(), samples: out, patterns, resampled })
}
