//! The scalar abstraction shared by the exact and floating-point code paths.
//!
//! Geometry (matrices, LFTs, staircase coordinates, the flow tracer) is written
//! once against [`Scalar`]. The exact instantiation uses
//! [`FieldElement`](crate::numfield::FieldElement); floating instantiations use
//! `f64`/`f32` or the high-precision [`Real`](crate::hp::Real).

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        }
    }
}

/// A real scalar that supports ring operations, inversion and sign tests.
///
/// Constants are produced "like" an existing value because exact field
/// elements carry their number field with them.
pub trait Scalar:
    Clone + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn rational_like(&self, q: &BigRational) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Sign of the value. Exact for exact types.
    fn sign(&self) -> Sign;

    /// Sign with a zero band of half-width `tol`; exact types ignore `tol`.
    fn sign_tol(&self, tol: f64) -> Sign {
        let _ = tol;
        self.sign()
    }

    fn to_f64(&self) -> f64;

    /// Whether comparisons on this type are exact.
    fn is_exact() -> bool;

    fn is_zero_s(&self) -> bool {
        self.sign() == Sign::Zero
    }

    fn checked_div(&self, other: &Self) -> Option<Self> {
        other.inverse().map(|inv| self.clone() * inv)
    }

    fn cmp_s(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).sign().to_ordering()
    }

    fn cmp_tol(&self, other: &Self, tol: f64) -> Ordering {
        (self.clone() - other.clone()).sign_tol(tol).to_ordering()
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn zero_like(&self) -> Self {
                <$f as Zero>::zero()
            }
            fn one_like(&self) -> Self {
                <$f as One>::one()
            }
            fn int_like(&self, v: i64) -> Self {
                v as $f
            }
            fn rational_like(&self, q: &BigRational) -> Self {
                rational_to_f64(q) as $f
            }
            fn inverse(&self) -> Option<Self> {
                if <$f as Zero>::is_zero(self) {
                    None
                } else {
                    Some(Float::recip(*self))
                }
            }
            fn sign(&self) -> Sign {
                self.partial_cmp(&<$f as Zero>::zero())
                    .map(Sign::from_ordering)
                    .unwrap_or(Sign::Zero)
            }
            fn sign_tol(&self, tol: f64) -> Sign {
                if Float::abs(*self) as f64 <= tol {
                    Sign::Zero
                } else {
                    self.sign()
                }
            }
            fn to_f64(&self) -> f64 {
                ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
            }
            fn is_exact() -> bool {
                false
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn rational_like(&self, q: &BigRational) -> Self {
        q.clone()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sign(&self) -> Sign {
        if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn is_exact() -> bool {
        true
    }
}

/// Nearest-ish f64 of a rational, robust to huge numerators and denominators.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale both parts down to 60 significant bits before dividing.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (q.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (q.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}
