//! Correctly rounded decimal rendering of rationals and rational intervals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), k as usize)
}

/// Round-half-to-even of a rational to an integer.
fn round_half_even(q: &BigRational) -> BigInt {
    let (fl, rem) = q.numer().div_mod_floor(q.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(q.denom()) {
        std::cmp::Ordering::Less => fl,
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

/// `floor(log10 |q|)` for nonzero `q`.
fn decimal_exponent(q: &BigRational) -> i64 {
    let a = q.abs();
    let mut e = (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10;
    loop {
        let p = pow_signed(e);
        if p > a {
            e -= 1;
        } else if pow_signed(e + 1) <= a {
            e += 1;
        } else {
            return e;
        }
    }
}

fn pow_signed(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

/// Places a decimal point so that `digits` holds `10^scale` times the value.
fn place_point(neg: bool, digits: &BigInt, scale: i64) -> String {
    let mut s = digits.to_string();
    let sign = if neg { "-" } else { "" };
    if scale <= 0 {
        for _ in 0..(-scale) {
            s.push('0');
        }
        return format!("{sign}{s}");
    }
    let scale = scale as usize;
    if s.len() <= scale {
        let pad = "0".repeat(scale - s.len());
        return format!("{sign}0.{pad}{s}");
    }
    let (int, frac) = s.split_at(s.len() - scale);
    format!("{sign}{int}.{frac}")
}

/// `q` rounded to `sig` significant digits, e.g. `0.50000` for 1/2 at 5 digits.
pub fn format_sig(q: &BigRational, sig: u32) -> String {
    let sig = sig.max(1);
    if q.is_zero() {
        return place_point(false, &BigInt::zero(), sig as i64 - 1);
    }
    let mut e = decimal_exponent(q);
    let mut scale = sig as i64 - 1 - e;
    let mut n = round_half_even(&(q.abs() * pow_signed(scale)));
    if n >= pow10(sig) {
        e += 1;
        scale = sig as i64 - 1 - e;
        n = round_half_even(&(q.abs() * pow_signed(scale)));
    }
    place_point(q.is_negative() && !n.is_zero(), &n, scale)
}

/// `q` rounded to exactly `decimals` fractional digits.
pub fn format_fixed(q: &BigRational, decimals: u32) -> String {
    let n = round_half_even(&(q.abs() * pow_signed(decimals as i64)));
    place_point(q.is_negative() && !n.is_zero(), &n, decimals as i64)
}

/// Shared rendering of both ends of an interval; `None` if they differ.
pub fn interval_sig(lo: &BigRational, hi: &BigRational, sig: u32) -> Option<String> {
    let a = format_sig(lo, sig);
    (a == format_sig(hi, sig)).then_some(a)
}

pub fn interval_fixed(lo: &BigRational, hi: &BigRational, decimals: u32) -> Option<String> {
    let a = format_fixed(lo, decimals);
    (a == format_fixed(hi, decimals)).then_some(a)
}

/// Parses a plain decimal such as `-1.25e-3` or `0.5` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = BigInt::parse_bytes(format!("{int}{frac}0").as_bytes(), 10)? / 10;
    let mut q = BigRational::from_integer(digits) * pow_signed(exp - frac.len() as i64);
    if neg {
        q = -q;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(&r(1, 2), 5), "0.50000");
        assert_eq!(format_sig(&r(16180, 10000), 5), "1.6180");
        assert_eq!(format_sig(&r(-1, 3), 3), "-0.333");
        assert_eq!(format_sig(&r(9999, 1000), 3), "10.0");
        assert_eq!(format_sig(&r(123456, 1), 3), "123000");
        assert_eq!(format_sig(&r(0, 1), 3), "0.00");
        assert_eq!(format_sig(&r(1, 1000), 2), "0.0010");
    }

    #[test]
    fn fixed_digits() {
        assert_eq!(format_fixed(&r(1, 1), 4), "1.0000");
        assert_eq!(format_fixed(&r(-5, 4), 1), "-1.2");
        assert_eq!(format_fixed(&r(-1, 100000), 2), "0.00");
        assert_eq!(format_fixed(&r(7, 2), 0), "4");
    }

    #[test]
    fn parse_plain_decimals() {
        assert_eq!(parse_decimal("1e-9"), Some(r(1, 1_000_000_000)));
        assert_eq!(parse_decimal("-0.25"), Some(r(-1, 4)));
        assert_eq!(parse_decimal("3"), Some(r(3, 1)));
        assert_eq!(parse_decimal("x"), None);
    }
}
