//! Sector matrices, the two trees of periodic directions and renormalization.
//!
//! The fan of the first quadrant is cut by the horizontal and vertical axes
//! and the diagonals of every rectangle of the staircase. Scaling consecutive
//! boundary vectors so that `det [u_i | u_{i+1}] = 1`, starting from
//! `u_0 = (1, 0)`, gives the sector matrices `σ_i = [u_i | u_{i+1}]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hyperdisk::{associated_matrix, s_operators, ExactLft, Slope};
use crate::linear::{DirectionVector, ExtendedSlope, Mat2};
use crate::numfield::FieldElement;
use crate::scalar::{Scalar, Sign};
use crate::staircase::{build_staircase, StaircaseSurface};

/// Default bound on renormalization steps.
pub const RENORMALIZE_CAP: usize = 10_000;
/// Largest enumeration depth.
pub const MAX_DEPTH: u32 = 8;
/// Largest number of words an enumeration may produce.
pub const MAX_WORDS: usize = 1 << 20;

/// A sequence of sector indices.
pub type Word = Vec<usize>;

/// Formats a word as `(3,0,1)`.
pub fn format_word(w: &[usize]) -> String {
    let parts: Vec<String> = w.iter().map(|i| i.to_string()).collect();
    format!("({})", parts.join(","))
}

/// The sector fan of one staircase.
#[derive(Debug, Clone)]
pub struct SectorFan<S> {
    pub n: u32,
    /// `u_0 = (1,0), ..., u_{n-1} = (0,1)`.
    pub boundary_vectors: Vec<DirectionVector<S>>,
    pub boundary_slopes: Vec<ExtendedSlope<S>>,
    sigma: Vec<Mat2<S>>,
    sigma_inv: Vec<Mat2<S>>,
    tol: f64,
}

pub type ExactFan = SectorFan<FieldElement>;
pub type FloatFan = SectorFan<f64>;

/// The exact fan for `n`.
pub fn sector_fan(n: u32) -> Result<ExactFan> {
    SectorFan::from_surface(&build_staircase(n)?)
}

/// `σ_0, ..., σ_{n-2}`.
pub fn sigma_matrices(n: u32) -> Result<Vec<Mat2<FieldElement>>> {
    Ok(sector_fan(n)?.sigma)
}

/// Sector index of `v` for the exact fan.
pub fn classify_sector(fan: &ExactFan, v: &DirectionVector<FieldElement>) -> usize {
    fan.classify(v)
}

impl<S: Scalar> SectorFan<S> {
    pub fn from_surface(surface: &StaircaseSurface<S>) -> Result<Self> {
        let tol = surface.tol;
        let like = surface.aspect.clone();
        let mut dirs = vec![DirectionVector::raw(like.one_like(), like.zero_like()), DirectionVector::raw(like.zero_like(), like.one_like())];
        dirs.extend(surface.rectangles.iter().map(|r| DirectionVector::raw(r.width(), r.height())));
        dirs.sort_by(|a, b| b.cross(a).sign_tol(tol).to_ordering());
        if dirs.windows(2).any(|w| w[0].cross(&w[1]).sign_tol(tol) != Sign::Positive) {
            return Err(Error::Construction("repeated fan direction".into()));
        }
        if dirs.len() != surface.n as usize {
            return Err(Error::Construction(format!("fan has {} directions, expected {}", dirs.len(), surface.n)));
        }
        let mut u = vec![dirs[0].clone()];
        for d in &dirs[1..] {
            let c = u.last().expect("nonempty").cross(d);
            let k = c.inverse().ok_or_else(|| Error::Construction("degenerate sector".into()))?;
            u.push(d.scale(&k));
        }
        let last = u.last().expect("nonempty");
        if last.dx.sign_tol(tol) != Sign::Zero || (last.dy.clone() - like.one_like()).sign_tol(tol) != Sign::Zero {
            return Err(Error::Construction("fan chain does not end at (0, 1)".into()));
        }
        let sigma: Vec<Mat2<S>> = u.windows(2).map(|w| Mat2::from_columns(&w[0], &w[1])).collect();
        for (i, s) in sigma.iter().enumerate() {
            if (s.det() - like.one_like()).sign_tol(tol) != Sign::Zero {
                return Err(Error::Construction(format!("det sigma_{i} != 1")));
            }
        }
        let sigma_inv = sigma.iter().map(|s| s.adjugate()).collect();
        let boundary_slopes = u.iter().map(|v| v.slope()).collect();
        Ok(SectorFan { n: surface.n, boundary_vectors: u, boundary_slopes, sigma, sigma_inv, tol })
    }

    pub fn sigma(&self, i: usize) -> &Mat2<S> {
        &self.sigma[i]
    }

    pub fn sigma_inverse(&self, i: usize) -> &Mat2<S> {
        &self.sigma_inv[i]
    }

    pub fn sigma_matrices(&self) -> &[Mat2<S>] {
        &self.sigma
    }

    pub fn sectors(&self) -> usize {
        self.sigma.len()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// The sector `i` with `b_i < slope(v) <= b_{i+1}`, horizontal vectors in sector 0.
    pub fn classify(&self, v: &DirectionVector<S>) -> usize {
        if v.dy.sign_tol(self.tol) == Sign::Zero {
            return 0;
        }
        let last = self.sectors() - 1;
        (0..last)
            .find(|&i| v.cross(&self.boundary_vectors[i + 1]).sign_tol(self.tol) != Sign::Negative)
            .unwrap_or(last)
    }

    /// Whether `v` lies on one of the interior boundary rays.
    pub fn on_boundary(&self, v: &DirectionVector<S>) -> bool {
        self.boundary_vectors[1..self.boundary_vectors.len() - 1].iter().any(|u| u.cross(v).sign_tol(self.tol) == Sign::Zero)
    }

    pub fn map_scalar<T: Scalar, F: Fn(&S) -> T>(&self, f: F, tol: f64) -> SectorFan<T> {
        let mv = |v: &DirectionVector<S>| DirectionVector::raw(f(&v.dx), f(&v.dy));
        SectorFan {
            n: self.n,
            boundary_vectors: self.boundary_vectors.iter().map(mv).collect(),
            boundary_slopes: self
                .boundary_slopes
                .iter()
                .map(|s| match s {
                    ExtendedSlope::Finite(v) => ExtendedSlope::Finite(f(v)),
                    ExtendedSlope::Infinity => ExtendedSlope::Infinity,
                })
                .collect(),
            sigma: self.sigma.iter().map(|m| m.map_scalar(&f)).collect(),
            sigma_inv: self.sigma_inv.iter().map(|m| m.map_scalar(&f)).collect(),
            tol,
        }
    }

    pub fn to_f64(&self, tol: f64) -> FloatFan {
        self.map_scalar(|v| v.to_f64(), tol)
    }

    /// `σ_{w_1} ... σ_{w_k} v`.
    pub fn apply_word(&self, w: &[usize], v: &DirectionVector<S>) -> DirectionVector<S> {
        w.iter().rev().fold(v.clone(), |acc, &i| self.sigma[i].apply(&acc))
    }

    /// Renormalizes `v` until it is horizontal or vertical, or `cap` steps pass.
    pub fn renormalize(&self, v: &DirectionVector<S>, cap: usize) -> Renormalized<S> {
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            if cur.dy.sign_tol(self.tol) == Sign::Zero {
                return Renormalized::Periodic { word, terminal: Axis::Horizontal, vector: cur };
            }
            if cur.dx.sign_tol(self.tol) == Sign::Zero {
                return Renormalized::Periodic { word, terminal: Axis::Vertical, vector: cur };
            }
            if word.len() >= cap {
                return Renormalized::Undecided { steps: word.len(), word, vector: cur };
            }
            let i = self.classify(&cur);
            word.push(i);
            cur = self.sigma_inv[i].apply(&cur);
            if !S::is_exact() {
                // Rescale to keep floating values in range.
                let norm = cur.dx.clone() + cur.dy.clone();
                if let Some(k) = norm.inverse() {
                    cur = cur.scale(&k);
                }
            }
        }
    }
}

/// The axis a renormalization ends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn as_str(self) -> &'static str {
        match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        }
    }

    pub fn unit<S: Scalar>(self, like: &S) -> DirectionVector<S> {
        match self {
            Axis::Horizontal => DirectionVector::raw(like.one_like(), like.zero_like()),
            Axis::Vertical => DirectionVector::raw(like.zero_like(), like.one_like()),
        }
    }
}

/// Result of renormalizing a direction.
#[derive(Debug, Clone)]
pub enum Renormalized<S> {
    Periodic { word: Word, terminal: Axis, vector: DirectionVector<S> },
    Undecided { word: Word, steps: usize, vector: DirectionVector<S> },
}

impl<S> Renormalized<S> {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Renormalized::Periodic { .. })
    }

    pub fn word(&self) -> &[usize] {
        match self {
            Renormalized::Periodic { word, .. } | Renormalized::Undecided { word, .. } => word,
        }
    }
}

/// Renormalizes a nonnegative slope in the exact fan.
pub fn renormalize_slope(fan: &ExactFan, s: &Slope, cap: usize) -> Result<Renormalized<FieldElement>> {
    let like = fan.boundary_vectors[0].dx.clone();
    if let ExtendedSlope::Finite(v) = s {
        if v.context().n() != fan.n {
            return Err(Error::ContextMismatch { left: fan.n, right: v.context().n() });
        }
        if v.field_sign() == Sign::Negative {
            return Err(Error::InvalidArgument(format!("negative slope {v}")));
        }
    }
    Ok(fan.renormalize(&DirectionVector::from_slope(s, &like), cap))
}

/// Re-applies a renormalization word to its terminal axis.
pub fn regenerate<S: Scalar>(fan: &SectorFan<S>, word: &[usize], terminal: Axis) -> DirectionVector<S> {
    let like = fan.boundary_vectors[0].dx.clone();
    fan.apply_word(word, &terminal.unit(&like))
}

fn check_depth(n: u32, depth: u32) -> Result<()> {
    crate::numfield::validate_n(n)?;
    if depth > MAX_DEPTH {
        return Err(Error::InvalidArgument(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    let letters = n as usize - 1;
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..=depth {
        total = total.saturating_add(level);
        level = level.saturating_mul(letters);
    }
    if total > MAX_WORDS {
        return Err(Error::InvalidArgument(format!("{total} words at n={n}, depth {depth} exceeds {MAX_WORDS}")));
    }
    Ok(())
}

/// Builds every word of length `<= depth`, computing each value from the value
/// of its tail. Within each level the work is split over `threads` workers.
fn grow<T: Clone + Send + Sync, F: Fn(usize, &T) -> T + Sync>(letters: &[usize], root: T, depth: u32, threads: usize, step: F) -> Vec<(Word, T)> {
    let mut all = vec![(Vec::new(), root)];
    let mut level_start = 0;
    for _ in 0..depth {
        let prev = &all[level_start..];
        let chunk = prev.len().div_ceil(threads.max(1)).max(1);
        let next: Vec<(Word, T)> = std::thread::scope(|sc| {
            let handles: Vec<_> = prev
                .chunks(chunk)
                .map(|part| {
                    let step = &step;
                    sc.spawn(move || {
                        let mut out = Vec::with_capacity(part.len() * letters.len());
                        for (w, v) in part {
                            for &i in letters {
                                let mut nw = Vec::with_capacity(w.len() + 1);
                                nw.push(i);
                                nw.extend_from_slice(w);
                                out.push((nw, step(i, v)));
                            }
                        }
                        out
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("enumeration worker")).collect()
        });
        level_start = all.len();
        all.extend(next);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all
}

/// One node of the σ-tree.
#[derive(Debug, Clone)]
pub struct TreeEntry {
    pub word: Word,
    pub vector: DirectionVector<FieldElement>,
    pub slope: Slope,
}

/// All σ-products of length `<= depth` applied to `(1, 0)`, plus the sorted distinct slopes.
#[derive(Debug, Clone)]
pub struct SigmaTree {
    pub n: u32,
    pub depth: u32,
    pub entries: Vec<TreeEntry>,
    pub slopes: Vec<Slope>,
}

pub fn enumerate_sigma_tree(n: u32, depth: u32) -> Result<SigmaTree> {
    enumerate_sigma_tree_with(n, depth, 1)
}

pub fn enumerate_sigma_tree_with(n: u32, depth: u32, threads: usize) -> Result<SigmaTree> {
    check_depth(n, depth)?;
    let fan = sector_fan(n)?;
    let letters: Vec<usize> = (0..fan.sectors()).collect();
    let root = fan.boundary_vectors[0].clone();
    let nodes = grow(&letters, root, depth, threads, |i, v| fan.sigma(i).apply(v));
    let entries: Vec<TreeEntry> = nodes.into_iter().map(|(word, vector)| TreeEntry { slope: vector.slope(), word, vector }).collect();
    let slopes = dedup_slopes(entries.iter().map(|e| e.slope.clone()));
    Ok(SigmaTree { n, depth, entries, slopes })
}

fn dedup_slopes<I: Iterator<Item = Slope>>(it: I) -> Vec<Slope> {
    let mut v: Vec<Slope> = it.collect();
    v.sort_by(|a, b| a.cmp_s(b));
    v.dedup_by(|a, b| a.eq_s(b));
    v
}

/// One node of the hyperbolic tree: `S_{m_1} ... S_{m_k}(0)`.
#[derive(Debug, Clone)]
pub struct HyperbolicEntry {
    /// Operator indices `m_j` in `1..n`.
    pub word: Word,
    pub value: Slope,
}

#[derive(Debug, Clone)]
pub struct HyperbolicTree {
    pub n: u32,
    pub depth: u32,
    pub entries: Vec<HyperbolicEntry>,
    pub values: Vec<Slope>,
}

pub fn enumerate_hyperbolic_tree(n: u32, depth: u32) -> Result<HyperbolicTree> {
    enumerate_hyperbolic_tree_with(n, depth, 1)
}

pub fn enumerate_hyperbolic_tree_with(n: u32, depth: u32, threads: usize) -> Result<HyperbolicTree> {
    check_depth(n, depth)?;
    let ops = s_operators(n)?;
    let zero = FieldElement::zero(&crate::numfield::context(n)?);
    let letters: Vec<usize> = (1..n as usize).collect();
    let nodes = grow(&letters, Slope::Finite(zero), depth, threads, |m, v| ops[m - 1].apply(v));
    let entries: Vec<HyperbolicEntry> = nodes.into_iter().map(|(word, value)| HyperbolicEntry { word, value }).collect();
    let values = dedup_slopes(entries.iter().map(|e| e.value.clone()));
    Ok(HyperbolicTree { n, depth, entries, values })
}

/// The involution relating σ-tree slopes to hyperbolic values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Calibration {
    Identity,
    Reciprocal,
}

impl Calibration {
    pub fn apply(self, s: &Slope, like: &FieldElement) -> Slope {
        match self {
            Calibration::Identity => s.clone(),
            Calibration::Reciprocal => s.reciprocal(like),
        }
    }

    /// `ι^k`.
    pub fn power(self, k: usize) -> Calibration {
        if k.is_multiple_of(2) {
            Calibration::Identity
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Calibration::Identity => "identity",
            Calibration::Reciprocal => "reciprocal",
        }
    }
}

/// A word where the two trees disagree.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub sigma_word: Word,
    pub operator_word: Word,
    /// Calibrated sigma-side slope; `None` when no sigma word of this length has it.
    pub expected: Option<Slope>,
    /// Operator-side slope; `None` when no operator word of this length has it.
    pub found: Option<Slope>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.expected, &self.found) {
            (Some(e), Some(h)) => write!(
                f,
                "sigma word {} calibrates to {} but S word {} gives {}",
                format_word(&self.sigma_word),
                e,
                format_word(&self.operator_word),
                h
            ),
            (Some(e), None) => write!(f, "sigma word {} calibrates to {}, reached by no S word of that length", format_word(&self.sigma_word), e),
            (None, Some(h)) => write!(f, "S word {} gives {}, reached by no sigma word of that length", format_word(&self.operator_word), h),
            (None, None) => write!(f, "empty counterexample"),
        }
    }
}

/// Outcome of one family of comparisons.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub checked: usize,
    /// `(words, mismatches)` per word length.
    pub by_length: Vec<(usize, usize)>,
    pub first_counterexample: Option<Counterexample>,
}

impl CheckOutcome {
    fn new(depth: u32) -> Self {
        CheckOutcome { checked: 0, by_length: vec![(0, 0); depth as usize + 1], first_counterexample: None }
    }

    fn record(&mut self, len: usize, ok: bool, cx: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        self.by_length[len].0 += 1;
        if !ok {
            self.by_length[len].1 += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(cx());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.by_length.iter().all(|(_, bad)| *bad == 0)
    }

    pub fn mismatches(&self) -> usize {
        self.by_length.iter().map(|(_, bad)| bad).sum()
    }
}

/// Comparison of the σ-tree with the tree of `S_m` images of `0`.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub n: u32,
    pub depth: u32,
    /// `associated_matrix(S_m)` is a multiple of `σ_{m-1}` for every `m`.
    pub generators_match: bool,
    /// Involution fitted on words of length 1.
    pub calibration: Option<Calibration>,
    /// `ι(σ-slope(w)) = S_{w+1}(0)` letter by letter with one global `ι`.
    pub literal: CheckOutcome,
    /// Per-length slope sets equal under the global `ι`.
    pub sets: CheckOutcome,
    /// `S_{m_1..m_k}(0) = ι^k(σ-slope(d))`, `d_j = m_j - 1` when `k - j` is even
    /// and `n - 1 - m_j` otherwise.
    pub alternating: CheckOutcome,
}

impl EquivalenceReport {
    /// The correspondence as stated: calibration found, literal and set checks clean.
    pub fn passed(&self) -> bool {
        self.calibration.is_some() && self.literal.passed() && self.sets.passed()
    }
}

/// σ-word index corresponding to operator word `m` under the alternating rule.
pub fn alternating_sigma_word(n: u32, m: &[usize]) -> Word {
    let k = m.len();
    m.iter().enumerate().map(|(j, &mj)| if (k - 1 - j).is_multiple_of(2) { mj - 1 } else { n as usize - 1 - mj }).collect()
}

pub fn equivalence_check(n: u32, depth: u32) -> Result<EquivalenceReport> {
    equivalence_check_with(n, depth, 1)
}

pub fn equivalence_check_with(n: u32, depth: u32, threads: usize) -> Result<EquivalenceReport> {
    let fan = sector_fan(n)?;
    let ops: Vec<ExactLft> = s_operators(n)?;
    let generators_match = ops.iter().enumerate().all(|(i, op)| associated_matrix(op).proportionality(fan.sigma(i)).is_some());

    let sig = enumerate_sigma_tree_with(n, depth, threads)?;
    let hyp = enumerate_hyperbolic_tree_with(n, depth, threads)?;
    let like = fan.boundary_vectors[0].dx.clone();
    let sigma_at: BTreeMap<&[usize], &Slope> = sig.entries.iter().map(|e| (e.word.as_slice(), &e.slope)).collect();
    let hyp_at: BTreeMap<&[usize], &Slope> = hyp.entries.iter().map(|e| (e.word.as_slice(), &e.value)).collect();
    let shift = |w: &[usize]| -> Word { w.iter().map(|d| d + 1).collect() };

    let calibration = if depth == 0 {
        Some(Calibration::Identity)
    } else {
        [Calibration::Identity, Calibration::Reciprocal]
            .into_iter()
            .find(|c| sig.entries.iter().filter(|e| e.word.len() == 1).all(|e| c.apply(&e.slope, &like).eq_s(hyp_at[shift(&e.word).as_slice()])))
    };
    let iota = calibration.unwrap_or(Calibration::Identity);

    let mut literal = CheckOutcome::new(depth);
    for e in &sig.entries {
        let m = shift(&e.word);
        let expected = iota.apply(&e.slope, &like);
        let found = hyp_at[m.as_slice()];
        literal.record(e.word.len(), expected.eq_s(found), || Counterexample {
            sigma_word: e.word.clone(),
            operator_word: m.clone(),
            expected: Some(expected.clone()),
            found: Some(found.clone()),
        });
    }

    let mut sets = CheckOutcome::new(depth);
    for k in 0..=depth as usize {
        let s_k = dedup_slopes(sig.entries.iter().filter(|e| e.word.len() == k).map(|e| iota.apply(&e.slope, &like)));
        let h_k = dedup_slopes(hyp.entries.iter().filter(|e| e.word.len() == k).map(|e| e.value.clone()));
        let missing = s_k.iter().find(|s| !h_k.iter().any(|h| h.eq_s(s))).map(|s| (s.clone(), true));
        let extra = h_k.iter().find(|h| !s_k.iter().any(|s| s.eq_s(h))).map(|h| (h.clone(), false));
        let bad = missing.or(extra);
        sets.record(k, bad.is_none(), || {
            let (v, from_sigma) = bad.clone().expect("mismatch");
            let sw = sig.entries.iter().find(|e| e.word.len() == k && iota.apply(&e.slope, &like).eq_s(&v)).map(|e| e.word.clone()).unwrap_or_default();
            let hw = hyp.entries.iter().find(|e| e.word.len() == k && e.value.eq_s(&v)).map(|e| e.word.clone()).unwrap_or_default();
            if from_sigma {
                Counterexample { sigma_word: sw, operator_word: Vec::new(), expected: Some(v), found: None }
            } else {
                Counterexample { sigma_word: Vec::new(), operator_word: hw, expected: None, found: Some(v) }
            }
        });
    }

    let mut alternating = CheckOutcome::new(depth);
    for h in &hyp.entries {
        let d = alternating_sigma_word(n, &h.word);
        let expected = iota.power(h.word.len()).apply(sigma_at[d.as_slice()], &like);
        alternating.record(h.word.len(), expected.eq_s(&h.value), || Counterexample {
            sigma_word: d.clone(),
            operator_word: h.word.clone(),
            expected: Some(expected.clone()),
            found: Some(h.value.clone()),
        });
    }

    Ok(EquivalenceReport { n, depth, generators_match, calibration, literal, sets, alternating })
}
