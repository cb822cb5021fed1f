use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::chebpoly::{p_poly, IntPolynomial};
use crate::error::{Error, Result};
use crate::numfield::decimal;

/// Minimal polynomial of `2 cos(pi/n)` with an isolating interval for that root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPolySpec {
    pub n: u32,
    /// Monic, ascending degree.
    pub coefficients: Vec<BigInt>,
    pub degree: usize,
    /// `2 cos(pi/n)` to 50 significant digits.
    pub root_approx: String,
    /// Rational interval containing exactly one root, the largest one.
    pub root_interval: (BigRational, BigRational),
}

impl MinPolySpec {
    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.clone())
    }
}

pub fn validate_n(n: u32) -> Result<()> {
    if n % 2 == 1 && (5..=crate::MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedN(n))
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `Psi_n` for odd `n >= 3`: the factor of `P_{(n-1)/2}` whose roots are
/// `2 cos(j pi / n)` with `gcd(j, n) = 1`.
///
/// The roots of `P_m` are `2 cos(j pi / n)` for odd `j < n`; grouping them by
/// `gcd(j, n)` gives `P_m = prod_{d | n, d > 1} Psi_d`.
fn psi(n: u32) -> IntPolynomial {
    static MEMO: OnceLock<RwLock<HashMap<u32, IntPolynomial>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(p) = memo.read().expect("poisoned").get(&n) {
        return p.clone();
    }
    let mut p = p_poly(((n - 1) / 2) as usize);
    for d in (3..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = p.div_rem_monic(&psi(d));
        assert!(r.is_zero(), "Psi_{d} does not divide P_{}", (n - 1) / 2);
        p = q;
    }
    memo.write().expect("poisoned").insert(n, p.clone());
    p
}

/// Exact value `2^{kd} p(a / 2^k)` as an integer, `d = deg p`.
pub(crate) fn scaled_eval(poly: &[BigInt], a: &BigInt, k: u32) -> BigInt {
    let d = poly.len() - 1;
    let mut acc = BigInt::zero();
    for (i, c) in poly.iter().enumerate().rev() {
        acc = acc * a + (c << (k as usize * (d - i)));
    }
    acc
}

pub(crate) fn sign_of(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Isolating intervals have endpoints in `2^-ISOLATION_BITS Z`.
pub const ISOLATION_BITS: u32 = 40;

pub fn minimal_polynomial(n: u32) -> Result<MinPolySpec> {
    validate_n(n)?;
    let poly = psi(n);
    let degree = poly.degree().unwrap_or(0);
    let expected = (euler_phi(2 * n as u64) / 2) as usize;
    if degree != expected || !poly.is_monic() {
        return Err(Error::Construction(format!(
            "minimal polynomial for n = {n} has degree {degree}, expected {expected}"
        )));
    }
    let m = ((n - 1) / 2) as usize;
    if !p_poly(m).div_rem_monic(&poly).1.is_zero() {
        return Err(Error::Construction(format!("minimal polynomial for n = {n} does not divide P_{m}")));
    }
    let coeffs = poly.coeffs().to_vec();

    // Dyadic isolating interval around the float approximation.
    let k0 = ISOLATION_BITS;
    let approx = 2.0 * (std::f64::consts::PI / n as f64).cos();
    let center = BigInt::from((approx * (1u64 << k0) as f64).floor() as i64);
    let lo = &center - BigInt::from(1u32 << 12);
    let hi = &center + BigInt::from(1u32 << 12);
    let den = BigInt::one() << k0 as usize;
    let lo_q = BigRational::new(lo.clone(), den.clone());
    let hi_q = BigRational::new(hi.clone(), den.clone());
    let qp = poly.to_qpoly();
    if qp.count_roots(&lo_q, &hi_q) != 1 || qp.count_roots_above(&hi_q) != 0 {
        return Err(Error::Construction(format!("root isolation failed for n = {n}")));
    }
    let s_lo = sign_of(&scaled_eval(&coeffs, &lo, k0));
    let s_hi = sign_of(&scaled_eval(&coeffs, &hi, k0));
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(Error::Construction(format!("no sign change on isolating interval for n = {n}")));
    }

    let (a, b, k) = refine_dyadic(&coeffs, lo, hi, k0, 200);
    let dk = BigInt::one() << k as usize;
    let root_approx = decimal::interval_sig(
        &BigRational::new(a.clone(), dk.clone()),
        &BigRational::new(b, dk),
        50,
    )
    .ok_or_else(|| Error::Construction("root approximation did not converge".into()))?;

    Ok(MinPolySpec { n, coefficients: coeffs, degree, root_approx, root_interval: (lo_q, hi_q) })
}

/// Bisects `[a, b] / 2^k` (sign change of `poly`) until the width is at most `2^-bits`.
pub(crate) fn refine_dyadic(poly: &[BigInt], mut a: BigInt, mut b: BigInt, mut k: u32, bits: u32) -> (BigInt, BigInt, u32) {
    let s_a = sign_of(&scaled_eval(poly, &a, k));
    loop {
        let width = &b - &a;
        // width / 2^k <= 2^-bits  <=>  width <= 2^(k - bits)
        if k >= bits && width.bits() as i64 <= (k - bits) as i64 {
            return (a, b, k);
        }
        a <<= 1usize;
        b <<= 1usize;
        k += 1;
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        let s_mid = sign_of(&scaled_eval(poly, &mid, k));
        if s_mid == 0 {
            // Rational root of an irreducible polynomial of degree >= 2 is impossible.
            return (mid.clone(), mid, k);
        }
        if s_mid == s_a {
            a = mid;
        } else {
            b = mid;
        }
    }
}

/// Cache of constructed specs.
pub fn minimal_polynomial_cached(n: u32) -> Result<Arc<MinPolySpec>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<MinPolySpec>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.read().expect("poisoned").get(&n) {
        return Ok(s.clone());
    }
    let spec = Arc::new(minimal_polynomial(n)?);
    Ok(cache.write().expect("poisoned").entry(n).or_insert(spec).clone())
}
