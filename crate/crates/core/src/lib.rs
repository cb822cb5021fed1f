//! Periodic directions on staircase translation surfaces built from regular
//! odd polygons, computed with exact arithmetic in `Q(2 cos(pi/n))`.

pub mod chebpoly;
pub mod error;
pub mod flow;
pub mod hp;
pub mod hyperdisk;
pub mod linear;
pub mod numfield;
pub mod report;
pub mod scalar;
pub mod sectors;
pub mod staircase;

pub use error::{Error, Result};
pub use flow::{ExactTracer, FloatTracer};
pub use hyperdisk::{ExactLft, Slope};
pub use numfield::{FieldContext, FieldElement};
pub use scalar::{Scalar, Sign};
pub use sectors::{ExactFan, FloatFan};
pub use staircase::{ExactSurface, FloatSurface};

/// Largest supported polygon size.
pub const MAX_N: u32 = 49;
