//! Points imposing independent conditions, the failure index, and the
//! Cayley-Bacharach condition, for finite subschemes of projective space
//! and of complete intersection curves.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::schemes::{evaluation_rows, CompleteIntersection, FiniteSubscheme};

/// Outcome of the independent-conditions test in one degree.
///
/// `failure_index` equals `h^1` of the twisted ideal sheaf of the subscheme
/// in the given degree, since projective space has no `h^1` of line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    pub degree: u32,
    pub subscheme_degree: u64,
    pub rank: u64,
    pub failure_index: u64,
    pub independent: bool,
}

/// Compares the rank of the evaluation map in degree `m` with the degree
/// of the subscheme.
pub fn imposes_independent_conditions(z: &FiniteSubscheme, m: u32) -> Result<ConditionsReport> {
    let rank = evaluation_rows(z, m)?.rank() as u64;
    let deg = z.degree();
    Ok(ConditionsReport {
        degree: m,
        subscheme_degree: deg,
        rank,
        failure_index: deg - rank,
        independent: rank == deg,
    })
}

/// The Cayley-Bacharach condition in degree `m`: every degree-`m` form
/// vanishing at all but one point of `z` vanishes at the remaining point.
///
/// Equivalently, dropping any single point must not drop the rank of the
/// evaluation map. Defined only for reduced subschemes.
pub fn cayley_bacharach(z: &FiniteSubscheme, m: u32) -> Result<bool> {
    if !z.is_reduced() {
        return Err(Error::NonReducedSubscheme);
    }
    if z.is_empty() {
        return Err(Error::ZeroPoint);
    }
    let full_rank = evaluation_rows(z, m)?.rank();
    let verdicts: Vec<bool> = (0..z.len())
        .into_par_iter()
        .map(|i| {
            let reduced = z.without_point(i);
            evaluation_rows(&reduced, m).map(|rows| rows.rank() == full_rank)
        })
        .collect::<Result<_>>()?;
    Ok(verdicts.into_iter().all(|v| v))
}

/// The canonical twist of a complete intersection curve of type
/// (a_1, ..., a_{n-1}): `sum(a_i) - n - 1`, by adjunction.
pub fn canonical_twist(c: &CompleteIntersection) -> i64 {
    let sum: i64 = c.degrees().iter().map(|&a| a as i64).sum();
    sum - c.ambient_dim() as i64 - 1
}

/// Cayley-Bacharach with respect to the canonical system of the curve,
/// tested with ambient forms of the canonical twist degree. Complete
/// intersections are projectively normal, so ambient forms of that degree
/// restrict onto the full canonical series.
pub fn cb_with_respect_to_canonical(c: &CompleteIntersection, z: &FiniteSubscheme) -> Result<bool> {
    if !z.is_reduced() {
        return Err(Error::NonReducedSubscheme);
    }
    let k = canonical_twist(c);
    if k < 0 {
        return Err(Error::NegativeCanonicalTwist(k));
    }
    for fp in z.points() {
        if !c.contains(fp.base())? {
            return Err(Error::PointNotOnCurve);
        }
    }
    cayley_bacharach(z, k as u32)
}
