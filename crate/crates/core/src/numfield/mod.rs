//! Exact arithmetic in `Q(2 cos(pi/n))`.

pub mod decimal;
mod field;
mod minpoly;
mod qpoly;
mod text;

pub use field::{field_arithmetic, FieldContext, FieldElement, FieldOp};
pub use minpoly::{euler_phi, minimal_polynomial, validate_n, MinPolySpec};
pub use qpoly::QPoly;
pub use text::{format_qpoly, parse_qpoly};

use std::sync::Arc;

use crate::error::Result;

pub fn context(n: u32) -> Result<Arc<FieldContext>> {
    FieldContext::get(n)
}
