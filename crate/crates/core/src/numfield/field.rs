use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decimal;
use super::minpoly::{minimal_polynomial_cached, refine_dyadic, MinPolySpec, ISOLATION_BITS};
use super::qpoly::QPoly;
use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Scalar, Sign};

/// Integer bounds `lo[i] <= x^i 2^p <= hi[i]`.
#[derive(Debug)]
struct PowBounds {
    lo: Vec<BigInt>,
    hi: Vec<BigInt>,
}

#[derive(Debug)]
struct RootApprox {
    a: BigInt,
    b: BigInt,
    k: u32,
    bounds: BTreeMap<u32, Arc<PowBounds>>,
}

/// The number field `Q(x)`, `x = 2 cos(pi/n)`, with cached root approximations.
#[derive(Debug)]
pub struct FieldContext {
    spec: Arc<MinPolySpec>,
    modulus: Vec<BigInt>,
    approx: RwLock<RootApprox>,
}

impl FieldContext {
    /// Shared context for `n`, built once per process.
    pub fn get(n: u32) -> Result<Arc<FieldContext>> {
        static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.read().expect("poisoned").get(&n) {
            return Ok(c.clone());
        }
        let spec = minimal_polynomial_cached(n)?;
        let (lo, hi) = &spec.root_interval;
        let k = ISOLATION_BITS;
        let scale = BigRational::from_integer(BigInt::one() << k as usize);
        let ctx = Arc::new(FieldContext {
            modulus: spec.coefficients.clone(),
            approx: RwLock::new(RootApprox {
                a: (lo * &scale).to_integer(),
                b: (hi * &scale).to_integer(),
                k,
                bounds: BTreeMap::new(),
            }),
            spec,
        });
        Ok(cache.write().expect("poisoned").entry(n).or_insert(ctx).clone())
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn m(&self) -> u32 {
        (self.spec.n - 1) / 2
    }

    pub fn degree(&self) -> usize {
        self.spec.degree
    }

    pub fn spec(&self) -> &MinPolySpec {
        &self.spec
    }

    pub fn modulus_qpoly(&self) -> QPoly {
        QPoly::from_ints(self.modulus.iter().cloned())
    }

    fn pow_bounds(&self, p: u32) -> Arc<PowBounds> {
        if let Some(b) = self.approx.read().expect("poisoned").bounds.get(&p) {
            return b.clone();
        }
        let d = self.degree();
        let bits = p + 16 + 2 * d as u32;
        let mut guard = self.approx.write().expect("poisoned");
        if let Some(b) = guard.bounds.get(&p) {
            return b.clone();
        }
        if !(guard.k >= bits && (&guard.b - &guard.a).bits() as i64 <= (guard.k - bits) as i64) {
            let (a, b, k) = refine_dyadic(&self.modulus, guard.a.clone(), guard.b.clone(), guard.k, bits);
            guard.a = a;
            guard.b = b;
            guard.k = k;
        }
        let (a, b, k) = (&guard.a, &guard.b, guard.k as usize);
        let mut lo = Vec::with_capacity(d);
        let mut hi = Vec::with_capacity(d);
        let (mut pa, mut pb) = (BigInt::one(), BigInt::one());
        for i in 0..d {
            // a, b > 0 since x > 1.
            let shift = k * i;
            lo.push((&pa << p as usize) >> shift);
            let num = &pb << p as usize;
            let den = BigInt::one() << shift;
            hi.push(num.div_ceil(&den));
            pa *= a;
            pb *= b;
        }
        let out = Arc::new(PowBounds { lo, hi });
        guard.bounds.insert(p, out.clone());
        out
    }
}

/// An element of `Q(x)`, stored as integer coordinates over a positive common denominator.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldElement {
    fn from_parts(ctx: &Arc<FieldContext>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree());
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -c.clone());
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(|c| c.is_zero()) {
            den = BigInt::one();
        } else if !g.is_one() {
            num.iter_mut().for_each(|c| *c = &*c / &g);
            den /= &g;
        }
        FieldElement { ctx: ctx.clone(), num, den }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FieldElement { ctx: ctx.clone(), num: vec![BigInt::zero(); ctx.degree()], den: BigInt::one() }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<FieldContext>, v: i64) -> Self {
        Self::from_rational(ctx, &BigRational::from_integer(v.into()))
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(ctx, num, q.denom().clone())
    }

    /// The generator `x = 2 cos(pi/n)`.
    pub fn generator(ctx: &Arc<FieldContext>) -> Self {
        Self::from_poly(ctx, &QPoly::monomial(BigRational::one(), 1))
    }

    /// Reduces an arbitrary rational polynomial modulo the minimal polynomial.
    pub fn from_poly(ctx: &Arc<FieldContext>, p: &QPoly) -> Self {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
        Self::from_int_poly(ctx, ints, den)
    }

    /// Coordinates in the basis `1, x, ..., x^{d-1}`.
    pub fn from_coords(ctx: &Arc<FieldContext>, coords: &[BigRational]) -> Result<Self> {
        if coords.len() > ctx.degree() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates given, field degree is {}",
                coords.len(),
                ctx.degree()
            )));
        }
        Ok(Self::from_poly(ctx, &QPoly::new(coords.to_vec())))
    }

    fn from_int_poly(ctx: &Arc<FieldContext>, mut c: Vec<BigInt>, den: BigInt) -> Self {
        let d = ctx.degree();
        let md = &ctx.modulus;
        if c.len() > d {
            for j in (d..c.len()).rev() {
                let t = std::mem::take(&mut c[j]);
                if t.is_zero() {
                    continue;
                }
                for i in 0..d {
                    let v = &t * &md[i];
                    c[j - d + i] -= v;
                }
            }
        }
        c.resize(d, BigInt::zero());
        Self::from_parts(ctx, c, den)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn n(&self) -> u32 {
        self.ctx.n()
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.coords())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &o.ctx) || self.n() == o.n() {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: self.n(), right: o.n() })
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| a + b).collect();
            return Ok(Self::from_parts(&self.ctx, num, self.den.clone()));
        }
        let num = self.num.iter().zip(&o.num).map(|(a, b)| a * &o.den + b * &self.den).collect();
        Ok(Self::from_parts(&self.ctx, num, &self.den * &o.den))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg_ref())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let d = self.num.len();
        let mut c = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_int_poly(&self.ctx, c, &self.den * &o.den))
    }

    pub fn neg_ref(&self) -> Self {
        FieldElement { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, &q.recip()));
        }
        let (g, s, _) = self.to_qpoly().xgcd(&self.ctx.modulus_qpoly());
        if g != QPoly::one() {
            return Err(Error::Construction("modulus is not irreducible".into()));
        }
        Ok(Self::from_poly(&self.ctx, &s))
    }

    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.try_mul(&o.invert()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.ctx);
        for _ in 0..e {
            out = out.try_mul(self).expect("same context");
        }
        out
    }

    /// Enclosure of `den * 2^p * value` as `[lo, hi]`.
    fn scaled_interval(&self, p: u32) -> (BigInt, BigInt) {
        let b = self.ctx.pow_bounds(p);
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        for (i, c) in self.num.iter().enumerate() {
            if c.is_positive() {
                lo += c * &b.lo[i];
                hi += c * &b.hi[i];
            } else if c.is_negative() {
                lo += c * &b.hi[i];
                hi += c * &b.lo[i];
            }
        }
        (lo, hi)
    }

    /// Rational enclosure of the real value at working precision `2^-p`.
    pub fn interval(&self, p: u32) -> (BigRational, BigRational) {
        let (lo, hi) = self.scaled_interval(p);
        let den = &self.den << p as usize;
        (BigRational::new(lo, den.clone()), BigRational::new(hi, den))
    }

    /// Certified sign of the real embedding.
    pub fn field_sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        let mut p = 64;
        loop {
            let (lo, hi) = self.scaled_interval(p);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            p *= 2;
        }
    }

    /// Decimal string correct to `digits` significant digits.
    pub fn embed(&self, digits: u32) -> String {
        if let Some(q) = self.as_rational() {
            return decimal::format_sig(&q, digits);
        }
        let mut p = 64.max(digits * 4 + 16);
        loop {
            let (lo, hi) = self.interval(p);
            if let Some(s) = decimal::interval_sig(&lo, &hi, digits) {
                return s;
            }
            p *= 2;
        }
    }

    /// Decimal string with exactly `decimals` fractional digits, correctly rounded.
    pub fn embed_fixed(&self, decimals: u32) -> String {
        if let Some(q) = self.as_rational() {
            return decimal::format_fixed(&q, decimals);
        }
        let mut p = 64.max(decimals * 4 + 16);
        loop {
            let (lo, hi) = self.interval(p);
            if let Some(s) = decimal::interval_fixed(&lo, &hi, decimals) {
                return s;
            }
            p *= 2;
        }
    }

    pub fn approx_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return rational_to_f64(&q);
        }
        let (lo, hi) = self.interval(64);
        rational_to_f64(&((lo + hi) / BigRational::from_integer(2.into())))
    }

    /// Printed in the text grammar, e.g. `-1/2+3/4*x-x^2`.
    pub fn to_text(&self) -> String {
        super::text::format_element(self)
    }

    pub fn parse(ctx: &Arc<FieldContext>, s: &str) -> Result<Self> {
        super::text::parse_element(ctx, s)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.n() == o.n() && self.den == o.den && self.num == o.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.n().hash(h);
        self.num.hash(h);
        self.den.hash(h);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement(n={}, {})", self.n(), self.to_text())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        self.try_sub(o).ok().map(|d| d.field_sign().to_ordering())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$f(&o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &'a FieldElement) -> FieldElement {
                self.$f(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        FieldElement::one(&self.ctx)
    }
    fn int_like(&self, v: i64) -> Self {
        FieldElement::from_int(&self.ctx, v)
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        FieldElement::from_rational(&self.ctx, q)
    }
    fn inverse(&self) -> Option<Self> {
        self.invert().ok()
    }
    fn sign(&self) -> Sign {
        self.field_sign()
    }
    fn to_f64(&self) -> f64 {
        self.approx_f64()
    }
    fn is_exact() -> bool {
        true
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// One exact ring operation; `b` is ignored for `Neg`.
pub fn field_arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Neg => Ok(a.neg_ref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<FieldContext> {
        FieldContext::get(n).unwrap()
    }

    #[test]
    fn golden_ratio_arithmetic() {
        let c = ctx(5);
        let x = FieldElement::generator(&c);
        let one = FieldElement::one(&c);
        assert_eq!(&x * &x, &x + &one);
        assert_eq!(x.invert().unwrap(), &x - &one);
        assert_eq!(one.invert().unwrap(), one);
        assert_eq!(FieldElement::zero(&c).invert(), Err(Error::DivisionByZero));
    }

    #[test]
    fn reduction_n9() {
        let c = ctx(9);
        let x = FieldElement::generator(&c);
        let x2 = &x * &x;
        assert_eq!(&x * &x2, &(&x * &FieldElement::from_int(&c, 3)) + &FieldElement::one(&c));
    }

    #[test]
    fn signs_and_embedding() {
        let c5 = ctx(5);
        let x = FieldElement::generator(&c5);
        assert_eq!((&x - &FieldElement::one(&c5)).field_sign(), Sign::Positive);
        assert_eq!(FieldElement::zero(&c5).field_sign(), Sign::Zero);
        assert_eq!(x.embed(5), "1.6180");
        assert_eq!(FieldElement::from_rational(&c5, &BigRational::new(1.into(), 2.into())).embed(5), "0.50000");
        let c7 = ctx(7);
        let y = FieldElement::generator(&c7);
        assert_eq!(y.embed(5), "1.8019");
        let e = &(&(&y * &y) - &y) - &FieldElement::one(&c7);
        assert_eq!(e.field_sign(), Sign::Positive);
        assert_eq!(e.embed(3), "0.445");
    }

    #[test]
    fn mismatched_contexts() {
        let a = FieldElement::generator(&ctx(5));
        let b = FieldElement::generator(&ctx(7));
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch { left: 5, right: 7 }));
    }
}
