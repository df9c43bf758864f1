//! Exact-arithmetic toolkit for the projective geometry of complete
//! intersection curves: Cayley-Bacharach condition tests, independent
//! condition counts, projection pencils and their fibers, secant-plane
//! censuses, gonality formulas and bounds, and a brute-force verifier for
//! the Cayley-Bacharach degree bound on small zero-dimensional complete
//! intersections.
//!
//! All linear algebra is exact: over F_p (p < 2^31, checked prime) or over
//! the rationals. Every randomized construction is seeded and reports its
//! seed; parallel searches merge deterministically, so results never depend
//! on the worker count.

pub mod conditions;
pub mod error;
pub mod exactalg;
pub mod geometry;
pub mod instances;
pub mod polyring;
pub mod schemes;
pub mod verify;

pub use error::{Error, Result};
