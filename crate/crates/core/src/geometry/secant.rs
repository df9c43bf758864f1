//! Census of high-secancy (n-2)-planes spanned by rational curve points,
//! and the gamma invariant it supports.
//!
//! The search space is the set of (n-1)-element subsets of the rational
//! points rather than the full Grassmannian: this finds exactly the planes
//! spanned by rational points, which is what planted-instance acceptance
//! and the rational census report need. Workers share no state; candidate
//! planes are merged by sorted deduplication, so the census is independent
//! of the worker count.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, FieldScalar};
use crate::geometry::LinearSubspace;
use crate::geometry::projection::CurveOverFp;

/// Default ceiling on the number of spanning subsets a census may visit.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// One census entry: an (n-2)-plane and how many rational curve points
/// lie on it.
#[derive(Clone, Debug, Serialize)]
pub struct SecantPlane {
    #[serde(serialize_with = "serialize_plane")]
    pub plane: LinearSubspace,
    pub secancy: u64,
}

fn serialize_plane<S: serde::Serializer>(p: &LinearSubspace, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let forms = p.dual_basis();
    let mut seq = s.serialize_seq(Some(forms.len()))?;
    for f in forms {
        seq.serialize_element(&f.to_string())?;
    }
    seq.end()
}

fn subset_count(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return acc;
        }
    }
    acc
}

/// Every (n-2)-plane spanned by some (n-1)-element subset of the rational
/// points of the curve, with total secancy at least `k`, deduplicated and
/// sorted by descending secancy.
pub fn secant_census(c: &CurveOverFp, k: u64, budget: u64) -> Result<Vec<SecantPlane>> {
    let n = c.ambient_dim();
    if n < 2 {
        return Err(Error::RangeViolation("census needs ambient dimension at least 2".into()));
    }
    let subset_size = n - 1;
    let num_points = c.points().len();
    let needed = subset_count(num_points as u64, subset_size as u64);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let subsets: Vec<Vec<usize>> = combinations(num_points, subset_size);
    let tag = c.ci().tag();

    // Phase 1: span each subset; keep the spans of full projective
    // dimension n-2, already in canonical form.
    let planes: BTreeSet<LinearSubspace> = subsets
        .par_iter()
        .filter_map(|subset| {
            let rows: Vec<Vec<FieldScalar>> = subset
                .iter()
                .map(|&i| c.points()[i].coords().to_vec())
                .collect();
            let m = ExactMatrix::from_rows(rows, n + 1, tag).ok()?;
            let kernel = m.kernel();
            (kernel.len() == 2).then(|| LinearSubspace::from_canonical_rows(n, kernel))
        })
        .collect();

    // Phase 2: count secancy once per unique plane.
    let mut census: Vec<SecantPlane> = planes
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|plane| {
            let secancy = c.points().iter().filter(|p| plane.contains_point(p)).count() as u64;
            SecantPlane { plane, secancy }
        })
        .filter(|sp| sp.secancy >= k)
        .collect();
    census.sort_by(|a, b| b.secancy.cmp(&a.secancy).then_with(|| a.plane.cmp(&b.plane)));
    Ok(census)
}

/// Maximum number of rational curve points on any (n-2)-plane spanned by
/// rational points: a rational-census lower bound for the geometric gamma.
pub fn gamma_census(c: &CurveOverFp, budget: u64) -> Result<u64> {
    let census = secant_census(c, 1, budget)?;
    Ok(census.first().map_or(0, |sp| sp.secancy))
}

/// All k-element subsets of {0, .., n-1} in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the rightmost index that can still move.
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldTag;
    use crate::polyring::parse_form;
    use crate::schemes::{CompleteIntersection, DEFAULT_ENUM_BUDGET};

    #[test]
    fn combinations_enumerate_all_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(5, 3).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn plane_curve_census_lists_the_points() {
        // In the plane an (n-2)-plane is a point: every curve point shows
        // up with secancy 1.
        let f7 = FieldTag::prime(7).unwrap();
        let conic = CompleteIntersection::new(vec![parse_form("x0*x1 - x2^2", 2, f7).unwrap()]).unwrap();
        let c = CurveOverFp::new(conic, DEFAULT_ENUM_BUDGET).unwrap();
        let census = secant_census(&c, 1, DEFAULT_SUBSET_BUDGET).unwrap();
        assert_eq!(census.len(), c.points().len());
        assert!(census.iter().all(|sp| sp.secancy == 1));
        assert_eq!(gamma_census(&c, DEFAULT_SUBSET_BUDGET).unwrap(), 1);
    }

    #[test]
    fn budget_guard_fires() {
        let f101 = FieldTag::prime(101).unwrap();
        let conic =
            CompleteIntersection::new(vec![parse_form("x0*x1 - x2^2", 2, f101).unwrap()]).unwrap();
        let c = CurveOverFp::new(conic, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(matches!(secant_census(&c, 1, 10), Err(Error::BudgetExceeded { .. })));
    }
}
