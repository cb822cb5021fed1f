//! High-precision binary floating point on top of `astro-float`.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign as AfSign, Word};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numfield::decimal;
use crate::scalar::{rational_to_f64, Scalar, Sign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Binary precision giving at least `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as usize * 3322).div_ceil(1000) + 64
}

/// A real number carried at a fixed binary precision.
#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

impl Real {
    pub fn precision(&self) -> usize {
        self.p
    }

    pub fn from_i64(v: i64, p: usize) -> Real {
        Real { v: BigFloat::from_i64(v, p), p }
    }

    pub fn from_f64(v: f64, p: usize) -> Real {
        Real { v: BigFloat::from_f64(v, p), p }
    }

    pub fn from_bigint(v: &BigInt, p: usize) -> Real {
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return Real::from_i64(0, p);
        }
        let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
        let s = if sign == num_bigint::Sign::Minus { AfSign::Neg } else { AfSign::Pos };
        let e = (64 * words.len()) as i32;
        let mut v = BigFloat::from_words(&words, s, e);
        v.set_precision(p, RM).expect("precision");
        Real { v, p }
    }

    pub fn from_rational(q: &BigRational, p: usize) -> Real {
        let n = Real::from_bigint(q.numer(), p);
        let d = Real::from_bigint(q.denom(), p);
        n.div(&d)
    }

    pub fn pi(p: usize) -> Real {
        CONSTS.with(|c| Real { v: c.borrow_mut().pi(p, RM), p })
    }

    /// `pi * q`, e.g. the angle `3 pi / 5`.
    pub fn pi_times(q: &BigRational, p: usize) -> Real {
        Real::pi(p).mul_r(&Real::from_rational(q, p))
    }

    pub fn sin(&self) -> Real {
        CONSTS.with(|c| Real { v: self.v.sin(self.p, RM, &mut c.borrow_mut()), p: self.p })
    }

    pub fn cos(&self) -> Real {
        CONSTS.with(|c| Real { v: self.v.cos(self.p, RM, &mut c.borrow_mut()), p: self.p })
    }

    pub fn tan(&self) -> Real {
        CONSTS.with(|c| Real { v: self.v.tan(self.p, RM, &mut c.borrow_mut()), p: self.p })
    }

    pub fn sqrt(&self) -> Real {
        Real { v: self.v.sqrt(self.p, RM), p: self.p }
    }

    pub fn abs(&self) -> Real {
        Real { v: self.v.abs(), p: self.p }
    }

    pub fn div(&self, o: &Real) -> Real {
        let p = self.p.max(o.p);
        Real { v: self.v.div(&o.v, p, RM), p }
    }

    fn mul_r(&self, o: &Real) -> Real {
        let p = self.p.max(o.p);
        Real { v: self.v.mul(&o.v, p, RM), p }
    }

    pub fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }

    /// The exact binary value as a rational; `None` for NaN or infinity.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.v.is_zero() {
            return Some(BigRational::zero());
        }
        let (words, _, sign, exp, _) = self.v.as_raw_parts()?;
        let mut digits: Vec<u32> = Vec::with_capacity(words.len() * 2);
        for &w in words {
            digits.push(w as u32);
            digits.push((w >> 32) as u32);
        }
        let mant = BigInt::from(BigUint::new(digits));
        let mant = if sign == AfSign::Neg { -mant } else { mant };
        let shift = exp as i64 - 64 * words.len() as i64;
        Some(if shift >= 0 {
            BigRational::from_integer(mant << shift as usize)
        } else {
            BigRational::new(mant, BigInt::one() << (-shift) as usize)
        })
    }

    /// Rounded to `digits` significant decimal digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        match self.to_rational() {
            Some(q) => decimal::format_sig(&q, digits),
            None => "NaN".into(),
        }
    }

    /// Rounded to `decimals` fractional digits.
    pub fn to_fixed(&self, decimals: u32) -> String {
        match self.to_rational() {
            Some(q) => decimal::format_fixed(&q, decimals),
            None => "NaN".into(),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(30))
    }
}

impl Add for Real {
    type Output = Real;
    fn add(self, o: Real) -> Real {
        let p = self.p.max(o.p);
        Real { v: self.v.add(&o.v, p, RM), p }
    }
}

impl Sub for Real {
    type Output = Real;
    fn sub(self, o: Real) -> Real {
        let p = self.p.max(o.p);
        Real { v: self.v.sub(&o.v, p, RM), p }
    }
}

impl Mul for Real {
    type Output = Real;
    fn mul(self, o: Real) -> Real {
        self.mul_r(&o)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: self.v.neg(), p: self.p }
    }
}

impl Scalar for Real {
    fn zero_like(&self) -> Self {
        Real::from_i64(0, self.p)
    }
    fn one_like(&self) -> Self {
        Real::from_i64(1, self.p)
    }
    fn int_like(&self, v: i64) -> Self {
        Real::from_i64(v, self.p)
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        Real::from_rational(q, self.p)
    }
    fn inverse(&self) -> Option<Self> {
        (!self.v.is_zero()).then(|| Real { v: self.v.reciprocal(self.p, RM), p: self.p })
    }
    fn sign(&self) -> Sign {
        if self.v.is_zero() {
            Sign::Zero
        } else if self.v.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
    fn sign_tol(&self, tol: f64) -> Sign {
        if self.abs().to_f64() <= tol {
            Sign::Zero
        } else {
            self.sign()
        }
    }
    fn to_f64(&self) -> f64 {
        self.to_rational().map(|q| rational_to_f64(&q)).unwrap_or(f64::NAN)
    }
    fn is_exact() -> bool {
        false
    }
}
