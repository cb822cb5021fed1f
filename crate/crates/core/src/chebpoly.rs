//! The polynomials `P_k` with `P_0 = 1`, `P_1 = x - 1`, `P_k = x P_{k-1} - P_{k-2}`,
//! and the staircase side lengths `s(k) = P_k(x)` in the field of `n`.
//!
//! `P_k(2 cos t) sin t = sin((k+1) t) - sin(k t)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::numfield::{FieldContext, FieldElement, QPoly};
use crate::scalar::Scalar;

/// Integer polynomial, ascending degree, trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        IntPolynomial::new(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_ints(self.coeffs.iter().cloned())
    }

    /// `x * self`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(BigInt::zero());
        v.extend(self.coeffs.iter().cloned());
        IntPolynomial::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        IntPolynomial::new((0..n).map(|i| get(&self.coeffs, i) - get(&o.coeffs, i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Division by a monic divisor; returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPolynomial::default(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Evaluates at any scalar by Horner's rule.
    pub fn eval<S: Scalar>(&self, at: &S) -> S {
        let mut acc = at.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * at.clone() + at.rational_like(&num_rational::BigRational::from_integer(c.clone()));
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "{mono}")?,
                _ => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `P_k` from the recurrence.
pub fn p_poly(k: usize) -> IntPolynomial {
    p_polys(k).pop().expect("non-empty")
}

/// `P_0, ..., P_k`.
pub fn p_polys(k: usize) -> Vec<IntPolynomial> {
    let mut out = vec![IntPolynomial::from_i64s(&[1])];
    if k >= 1 {
        out.push(IntPolynomial::from_i64s(&[-1, 1]));
    }
    for i in 2..=k {
        let next = out[i - 1].shift().sub(&out[i - 2]);
        out.push(next);
    }
    out
}

/// `Q_{-1} = 0, Q_0 = 1, Q_k = x Q_{k-1} - Q_{k-2}`; returns `Q_0, ..., Q_k`.
///
/// `Q_k(2 cos t) = sin((k+1) t) / sin t`.
pub fn q_polys(k: usize) -> Vec<IntPolynomial> {
    let mut out = vec![IntPolynomial::from_i64s(&[1])];
    let mut prev = IntPolynomial::default();
    for i in 1..=k {
        let next = out[i - 1].shift().sub(&prev);
        prev = out[i - 1].clone();
        out.push(next);
    }
    out
}

/// Evaluates `P_k` at `a` by running the recurrence directly over the scalar.
pub fn p_eval<S: Scalar>(k: usize, a: &S) -> S {
    let one = a.one_like();
    if k == 0 {
        return one;
    }
    let mut prev = one.clone();
    let mut cur = a.clone() - one;
    for _ in 2..=k {
        let next = a.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `s(0), ..., s(m)` in the field of `n`, `m = (n-1)/2`.
pub fn s_lengths(n: u32) -> Result<Vec<FieldElement>> {
    let ctx = FieldContext::get(n)?;
    Ok(s_lengths_in(&ctx))
}

pub fn s_lengths_in(ctx: &std::sync::Arc<FieldContext>) -> Vec<FieldElement> {
    let m = ctx.m() as usize;
    let x = FieldElement::generator(ctx);
    let mut s = vec![FieldElement::one(ctx), x.clone() - FieldElement::one(ctx)];
    for k in 2..=m {
        let next = x.clone() * s[k - 1].clone() - s[k - 2].clone();
        s.push(next);
    }
    s.truncate(m + 1);
    s
}
