//! Tabulated results: diagonal slopes per `n` and the trigonometric identities.

use crate::chebpoly::{p_eval, s_lengths_in};
use crate::error::{Error, Result};
use crate::hp::Real;
use crate::hyperdisk::{tan_identity_sides, vertex_values_in, Slope};
use crate::numfield::{context, validate_n};
use crate::scalar::Scalar;
use crate::staircase::build_staircase_in;
use crate::FieldElement;

/// Slopes `>= 1` of the staircase diagonals, computed twice.
#[derive(Debug, Clone)]
pub struct Table1Row {
    pub n: u32,
    /// From the rectangle side lengths.
    pub diagonals: Vec<FieldElement>,
    /// Negated vertex values `-v_i`, `i > (n+1)/2`, sorted.
    pub from_vertices: Vec<FieldElement>,
}

impl Table1Row {
    pub fn agrees(&self) -> bool {
        self.diagonals == self.from_vertices
    }

    pub fn decimals(&self, places: u32) -> Vec<String> {
        self.diagonals.iter().map(|d| d.embed_fixed(places)).collect()
    }
}

pub fn table1_row(n: u32) -> Result<Table1Row> {
    let ctx = context(n)?;
    let diagonals = build_staircase_in(&ctx).diagonal_slopes();
    let mut from_vertices = Vec::with_capacity(diagonals.len());
    for v in &vertex_values_in(&ctx)[(n as usize).div_ceil(2)..] {
        match v {
            Slope::Finite(f) => from_vertices.push(f.neg_ref()),
            Slope::Infinity => return Err(Error::Construction(format!("vertex value at infinity past the midpoint for n={n}"))),
        }
    }
    from_vertices.sort_by(|a, b| a.cmp_s(b));
    Ok(Table1Row { n, diagonals, from_vertices })
}

/// Rows for every odd `n` from 5 through `max_n`.
pub fn table1(max_n: u32) -> Result<Vec<Table1Row>> {
    validate_n(max_n)?;
    (5..=max_n).step_by(2).map(table1_row).collect()
}

/// Closure, symmetry and tangent identities for one `n`.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub n: u32,
    /// `s(m) = 0` in the field.
    pub s_closes: bool,
    /// `P_m(x) = 0` in the field.
    pub p_vanishes: bool,
    /// `v_i = 1 / v_{n+1-i}` for `2 <= i <= n-1`, exactly.
    pub reciprocal_symmetry: bool,
    /// Largest `|lhs - rhs|` of the tangent identity over `2 <= i <= n-1`.
    pub tan_deviation: Real,
}

impl IdentityReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.s_closes && self.p_vanishes && self.reciprocal_symmetry && self.tan_deviation.to_f64() < tol
    }
}

pub fn trig_identities(n: u32, digits: u32) -> Result<IdentityReport> {
    let ctx = context(n)?;
    let m = ctx.m() as usize;
    let x = FieldElement::generator(&ctx);
    let s = s_lengths_in(&ctx);
    let v = vertex_values_in(&ctx);
    let one = FieldElement::one(&ctx);
    let reciprocal_symmetry = (2..n as usize).all(|i| v[i].eq_s(&v[n as usize + 1 - i].reciprocal(&one)));
    let mut tan_deviation = Real::from_i64(0, crate::hp::bits_for_digits(digits));
    for i in 2..n {
        let (l, r) = tan_identity_sides(n, i, digits);
        let d = (l - r).abs();
        if d.to_f64() > tan_deviation.to_f64() {
            tan_deviation = d;
        }
    }
    Ok(IdentityReport {
        n,
        s_closes: s[m].is_zero(),
        p_vanishes: p_eval(m, &x).is_zero(),
        reciprocal_symmetry,
        tan_deviation,
    })
}
