//! Rational-point enumeration over F_p.
//!
//! Points of P^n(F_p) are indexed 0..N in ascending lexicographic order of
//! their canonical coordinate vectors, so the stream is deterministic and
//! the index space can be partitioned for parallel consumption.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::FieldScalar;
use crate::polyring::Form;
use crate::schemes::{CompleteIntersection, ProjectivePoint};

/// Default ceiling on the number of points an enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// `|P^n(F_p)| = (p^(n+1) - 1) / (p - 1)`, computed without overflow.
pub fn projective_point_count(n: usize, p: u64) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=n {
        total += power;
        power *= p as u128;
    }
    total
}

/// An indexable enumeration of P^n(F_p) in canonical order.
///
/// Index 0 is `(0:...:0:1)`; the charts with leading 1 at coordinate i are
/// visited for i = n down to 0, counting the trailing coordinates in base p
/// with the leftmost digit most significant.
pub struct PointEnumerator {
    n: usize,
    p: u64,
    tag: crate::exactalg::FieldTag,
    total: u64,
}

impl PointEnumerator {
    pub fn new(n: usize, p: u64, budget: u64) -> Result<Self> {
        let tag = crate::exactalg::FieldTag::prime(p)?;
        let total = projective_point_count(n, p);
        if total > budget as u128 {
            return Err(Error::BudgetExceeded { needed: total, budget });
        }
        Ok(PointEnumerator { n, p, tag, total: total as u64 })
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Canonical coordinates of the point at `index`, as raw residues.
    pub fn coords_at(&self, index: u64) -> Vec<u64> {
        let p = self.p as u128;
        let mut idx = index as u128;
        let mut chart_size: u128 = 1;
        // Chart for leading coordinate i = n - k holds p^k points.
        for k in 0..=self.n {
            if idx < chart_size {
                let lead = self.n - k;
                let mut coords = vec![0u64; self.n + 1];
                coords[lead] = 1;
                for slot in (lead + 1..=self.n).rev() {
                    coords[slot] = (idx % p) as u64;
                    idx /= p;
                }
                return coords;
            }
            idx -= chart_size;
            chart_size *= p;
        }
        unreachable!("index out of range");
    }

    pub fn point_at(&self, index: u64) -> ProjectivePoint {
        let coords = self
            .coords_at(index)
            .into_iter()
            .map(|v| FieldScalar::from_i64(v as i64, self.tag))
            .collect();
        ProjectivePoint::new(coords).expect("canonical coordinates are nonzero")
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.total).map(move |i| self.point_at(i))
    }
}

/// Streams every point of P^n(F_p) exactly once, in canonical order.
pub fn enumerate_projective_space(n: usize, p: u64, budget: u64) -> Result<PointEnumerator> {
    PointEnumerator::new(n, p, budget)
}

/// A form flattened to raw residues for fast repeated evaluation mod p.
struct FlatForm {
    terms: Vec<(u64, Vec<u32>)>,
    max_exp: u32,
}

impl FlatForm {
    fn compile(f: &Form) -> FlatForm {
        let mut max_exp = 0;
        let terms = f
            .terms()
            .map(|(m, c)| {
                for &e in m.exponents() {
                    max_exp = max_exp.max(e);
                }
                (c.as_fp().expect("prime-field form"), m.exponents().to_vec())
            })
            .collect();
        FlatForm { terms, max_exp }
    }

    fn eval(&self, powers: &[Vec<u64>], p: u64) -> u64 {
        let mut acc = 0u64;
        for (coeff, exps) in &self.terms {
            let mut t = *coeff;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t * powers[i][e as usize] % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// All F_p-points of the vanishing locus of `x`, in canonical enumeration
/// order. Evaluation runs on raw residues and is chunked across threads;
/// the output order does not depend on the worker count.
pub fn rational_points(x: &CompleteIntersection, p: u64, budget: u64) -> Result<Vec<ProjectivePoint>> {
    let tag = crate::exactalg::FieldTag::prime(p)?;
    x.tag().ensure_same(&tag)?;
    let n = x.ambient_dim();
    let enumerator = PointEnumerator::new(n, p, budget)?;
    let flats: Vec<FlatForm> = x.forms().iter().map(FlatForm::compile).collect();
    let max_exp = flats.iter().map(|f| f.max_exp).max().unwrap_or(0) as usize;

    let hits: Vec<ProjectivePoint> = (0..enumerator.len())
        .into_par_iter()
        .filter_map(|idx| {
            let coords = enumerator.coords_at(idx);
            let powers: Vec<Vec<u64>> = coords
                .iter()
                .map(|&c| {
                    let mut row = Vec::with_capacity(max_exp + 1);
                    let mut acc = 1u64;
                    row.push(1);
                    for _ in 0..max_exp {
                        acc = acc * c % p;
                        row.push(acc);
                    }
                    row
                })
                .collect();
            if flats.iter().all(|f| f.eval(&powers, p) == 0) {
                Some(enumerator.point_at(idx))
            } else {
                None
            }
        })
        .collect();
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FieldTag;
    use crate::polyring::parse_form;

    #[test]
    fn projective_line_over_f2() {
        let e = enumerate_projective_space(1, 2, DEFAULT_ENUM_BUDGET).unwrap();
        let pts: Vec<String> = e.iter().map(|p| p.to_string()).collect();
        assert_eq!(pts, vec!["(0 : 1)", "(1 : 0)", "(1 : 1)"]);
    }

    #[test]
    fn plane_over_f3_has_thirteen_points() {
        let e = enumerate_projective_space(2, 3, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(e.len(), 13);
        let mut pts: Vec<ProjectivePoint> = e.iter().collect();
        pts.dedup();
        assert_eq!(pts.len(), 13);
    }

    #[test]
    fn space_over_f5_matches_closed_form() {
        // (5^4 - 1) / 4 = 156.
        let e = enumerate_projective_space(3, 5, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(e.len(), 156);
        assert_eq!(projective_point_count(3, 5), 156);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_projective_space(5, 101, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn hyperplane_in_the_line() {
        let f2 = FieldTag::prime(2).unwrap();
        let x = CompleteIntersection::new(vec![parse_form("x0", 1, f2).unwrap()]).unwrap();
        let pts = rational_points(&x, 2, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].to_string(), "(0 : 1)");
    }

    #[test]
    fn smooth_conic_over_f3_has_four_points() {
        let f3 = FieldTag::prime(3).unwrap();
        let conic = CompleteIntersection::new(vec![parse_form("x0*x1 - x2^2", 2, f3).unwrap()]).unwrap();
        let pts = rational_points(&conic, 3, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn smooth_conics_have_p_plus_one_points() {
        for p in [3u64, 5, 7, 11] {
            let tag = FieldTag::prime(p).unwrap();
            let conic = CompleteIntersection::new(vec![parse_form("x0*x1 - x2^2", 2, tag).unwrap()]).unwrap();
            let pts = rational_points(&conic, p, DEFAULT_ENUM_BUDGET).unwrap();
            assert_eq!(pts.len() as u64, p + 1, "p = {p}");
        }
    }

    #[test]
    fn enumeration_agrees_with_naive_filter() {
        // Cross-check the fast path against plain exact evaluation.
        let f5 = FieldTag::prime(5).unwrap();
        let x = CompleteIntersection::new(vec![parse_form("x0^2 + x1^2 - x2^2", 2, f5).unwrap()]).unwrap();
        let fast = rational_points(&x, 5, DEFAULT_ENUM_BUDGET).unwrap();
        let slow: Vec<ProjectivePoint> = enumerate_projective_space(2, 5, DEFAULT_ENUM_BUDGET)
            .unwrap()
            .iter()
            .filter(|p| x.contains(p).unwrap())
            .collect();
        assert_eq!(fast, slow);
    }
}
