//! Exact scalar arithmetic over F_p and Q, and exact dense linear algebra.
//!
//! Everything downstream (evaluation maps, spans, condition counts) reduces
//! to ranks and kernels computed here. All values are immutable and all
//! operations are pure.

mod matrix;
mod scalar;

pub use matrix::ExactMatrix;
pub use scalar::{scalar_cmp, FieldScalar, FieldTag};
