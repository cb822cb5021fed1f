//! Boundary values of the hyperbolic `n`-gon, the stereographic projection of
//! the disk onto the tangent line, and the operators `T`, `R`, `S_m`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::chebpoly::q_polys;
use crate::error::{Error, Result};
use crate::hp::{bits_for_digits, Real};
use crate::linear::{ExtendedSlope, Lft, Mat2};
use crate::numfield::{FieldContext, FieldElement};
use crate::scalar::Scalar;

pub type Slope = ExtendedSlope<FieldElement>;
pub type ExactLft = Lft<FieldElement>;

/// Disk radius, projection offset and exact vertex values for one `n`.
#[derive(Debug, Clone)]
pub struct DiskGeometry {
    pub n: u32,
    pub r: Real,
    pub offset: Real,
    pub vertex_values: Vec<Slope>,
}

impl DiskGeometry {
    pub fn new(n: u32, digits: u32) -> Result<Self> {
        Ok(DiskGeometry {
            n,
            r: disk_radius(n, digits)?,
            offset: projection_offset(n, digits)?,
            vertex_values: vertex_values(n)?,
        })
    }
}

fn pi_over(k: i64, n: u32, p: usize) -> Real {
    Real::pi_times(&BigRational::new(BigInt::from(k), BigInt::from(n)), p)
}

/// `r = (1/2) tan(pi/n) tan(pi/2n) / (tan(pi/n) - tan(pi/2n))`.
pub fn disk_radius(n: u32, digits: u32) -> Result<Real> {
    crate::numfield::validate_n(n)?;
    let p = bits_for_digits(digits.max(30));
    let t1 = pi_over(1, n, p).tan();
    let t2 = pi_over(1, 2 * n, p).tan();
    let half = Real::from_rational(&BigRational::new(1.into(), 2.into()), p);
    Ok(half * (t1.clone() * t2.clone()).div(&(t1 - t2)))
}

/// Height of the image of vertex 1 before shifting, `2r / tan(pi/n)`.
pub fn projection_offset(n: u32, digits: u32) -> Result<Real> {
    let r = disk_radius(n, digits)?;
    let p = r.precision();
    Ok((Real::from_i64(2, p) * r).div(&pi_over(1, n, p).tan()))
}

/// `f(e^{i angle})` for `angle = q pi`, `q` in `(-1, 1]`; `None` is infinity.
pub fn stereo_project(n: u32, angle_over_pi: &BigRational, digits: u32) -> Result<Option<Real>> {
    if angle_over_pi <= &-BigRational::one() || angle_over_pi > &BigRational::one() {
        return Err(Error::InvalidArgument(format!("angle {angle_over_pi}*pi outside (-pi, pi]")));
    }
    let r = disk_radius(n, digits)?;
    if angle_over_pi.is_one() {
        return Ok(None);
    }
    let p = r.precision();
    let offset = projection_offset(n, digits)?;
    let a = Real::pi_times(angle_over_pi, p);
    let val = (Real::from_i64(2, p) * r * a.sin()).div(&(Real::from_i64(1, p) + a.cos())) - offset;
    Ok(Some(val))
}

/// Angle (over pi) of vertex `i` on the unit circle, in `(-1, 1]`.
pub fn vertex_angle(n: u32, i: u32) -> BigRational {
    let mut q = BigRational::new(BigInt::from(n as i64 - 2 * i as i64), BigInt::from(n));
    if q <= -BigRational::one() {
        q += BigRational::from_integer(2.into());
    }
    q
}

/// `v_0 = ∞`, `v_i = -Q_{i-2}(x) / Q_{i-1}(x)` for `1 <= i <= n-1`.
pub fn vertex_values(n: u32) -> Result<Vec<Slope>> {
    let ctx = FieldContext::get(n)?;
    Ok(vertex_values_in(&ctx))
}

pub fn vertex_values_in(ctx: &Arc<FieldContext>) -> Vec<Slope> {
    let n = ctx.n() as usize;
    let x = FieldElement::generator(ctx);
    let q: Vec<FieldElement> = q_polys(n).iter().map(|p| p.eval(&x)).collect();
    let mut out = vec![Slope::Infinity, Slope::Finite(FieldElement::zero(ctx))];
    for i in 2..n {
        let v = -(q[i - 2].clone() * q[i - 1].invert().expect("Q_k(x) != 0 for k < n-1"));
        out.push(Slope::Finite(v));
    }
    out
}

/// `sin((1-i) pi/n) / sin(i pi/n)` in high precision.
pub fn vertex_value_sine(n: u32, i: u32, digits: u32) -> Real {
    let p = bits_for_digits(digits);
    pi_over(1 - i as i64, n, p).sin().div(&pi_over(i as i64, n, p).sin())
}

/// The two sides of the tangent identity for `v_i`:
/// `tan(pi/2n)/(tan(pi/n)-tan(pi/2n)) (tan(pi/n)/tan(i pi/n) - 1)` and
/// `-tan((i-1)pi/n)/(tan(pi/n)+tan((i-1)pi/n)) (tan(pi/n)/tan(pi/2n) - 1)`.
pub fn tan_identity_sides(n: u32, i: u32, digits: u32) -> (Real, Real) {
    let p = bits_for_digits(digits);
    let one = Real::from_i64(1, p);
    let t1 = pi_over(1, n, p).tan();
    let th = pi_over(1, 2 * n, p).tan();
    let ti = pi_over(i as i64, n, p).tan();
    let tim = pi_over(i as i64 - 1, n, p).tan();
    let lhs = th.div(&(t1.clone() - th.clone())) * (t1.div(&ti) - one.clone());
    let rhs = -(tim.div(&(t1.clone() + tim.clone()))) * (t1.div(&th) - one);
    (lhs, rhs)
}

/// The rotation `T` carrying `v_i` to `v_{i-1}` (indices mod `n`).
pub fn rotation_lft(n: u32) -> Result<ExactLft> {
    let ctx = FieldContext::get(n)?;
    let v = vertex_values_in(&ctx);
    let n = n as usize;
    let like = FieldElement::one(&ctx);
    let t = Lft::from_three_points([&v[1], &v[2], &v[0]], [&v[0], &v[1], &v[n - 1]], &like)?;
    for i in 0..n {
        if !t.apply(&v[i]).eq_s(&v[(i + n - 1) % n]) {
            return Err(Error::Construction(format!("rotation does not send v_{i} to its predecessor")));
        }
    }
    Ok(t)
}

/// `R(s) = -s`.
pub fn reflection_lft(n: u32) -> Result<ExactLft> {
    let ctx = FieldContext::get(n)?;
    Ok(Lft::negation(&FieldElement::one(&ctx)))
}

/// `S_m = R ∘ T^m`, `1 <= m <= n-1`.
pub fn s_operator(n: u32, m: u32) -> Result<ExactLft> {
    crate::numfield::validate_n(n)?;
    if m == 0 || m >= n {
        return Err(Error::InvalidArgument(format!("operator index m = {m} outside 1..={}", n - 1)));
    }
    Ok(s_operators(n)?.swap_remove(m as usize - 1))
}

/// `S_1, ..., S_{n-1}`.
pub fn s_operators(n: u32) -> Result<Vec<ExactLft>> {
    let t = rotation_lft(n)?;
    let r = reflection_lft(n)?;
    let mut out = Vec::with_capacity(n as usize - 1);
    let mut tm = t.clone();
    for _ in 1..n {
        out.push(r.compose(&tm));
        tm = tm.compose(&t);
    }
    Ok(out)
}

/// The matrix associated with an LFT acting on slopes of column vectors:
/// `M J` in projective normal form, where `J` swaps coordinates.
pub fn associated_matrix(t: &ExactLft) -> Mat2<FieldElement> {
    let m = t.matrix();
    m.mul(&Mat2::swap(&m.a)).projective_normal().expect("invertible")
}

/// `associated_matrix` rescaled to determinant 1 by a rational factor, when one exists.
pub fn det_one_matrix(t: &ExactLft) -> Option<Mat2<FieldElement>> {
    let m = associated_matrix(t);
    let det = m.det().as_rational()?;
    if !det.is_positive() {
        return None;
    }
    let (rn, rd) = (det.numer().sqrt(), det.denom().sqrt());
    if &rn * &rn != *det.numer() || &rd * &rd != *det.denom() {
        return None;
    }
    // det(k M) = k^2 det(M) = 1 with k = rd / rn.
    let k = BigRational::new(rd, rn);
    Some(m.scale(&m.a.rational_like(&k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_vertex_values() {
        let v = vertex_values(5).unwrap();
        let text: Vec<String> = v.iter().map(|s| s.to_text()).collect();
        assert_eq!(text, ["inf", "0", "1-x", "-1", "-x"]);
    }

    #[test]
    fn pentagon_rotation() {
        let t = rotation_lft(5).unwrap();
        let ctx = FieldContext::get(5).unwrap();
        let x = FieldElement::generator(&ctx);
        let m = t.matrix();
        let expected = Lft::new(-x.clone(), FieldElement::from_int(&ctx, -1), FieldElement::one(&ctx), FieldElement::zero(&ctx)).unwrap();
        assert!(t.eq_s(&expected), "{m}");
        assert!(t.pow(5).is_identity());
    }

    #[test]
    fn s1_matrix() {
        let s1 = s_operator(5, 1).unwrap();
        let m = det_one_matrix(&s1).unwrap();
        assert_eq!(m.to_string(), "[[1, x], [0, 1]]");
        assert!(s_operator(5, 5).is_err());
        assert!(s_operator(5, 0).is_err());
    }

    #[test]
    fn radius_closed_form() {
        let r = disk_radius(5, 40).unwrap();
        let p = r.precision();
        let five = Real::from_i64(5, p);
        let closed = ((five.clone() - five.sqrt()).div(&Real::from_i64(2, p))).sqrt().div(&Real::from_i64(4, p));
        assert!((r - closed).abs().to_f64() < 1e-35);
    }
}
