//! Linear subspaces, projections and their fibers, the secant census and
//! gamma, the gonality formulas and bounds, the incidence dimension audit,
//! and the monotone subset scanner for the Cayley-Bacharach bound.

mod cbconj;
mod formulas;
mod projection;
mod secant;

pub use cbconj::{cbconj_scan, CbConjReport, DEFAULT_SUBSCHEME_BUDGET};
pub use formulas::{admissible_types, dimension_audit, DimensionAudit, GonalityReport};
pub use projection::{
    distinct_hyperplane_spans, fiber_spans_hyperplane, fibers_over_rational_points,
    one_fiber_per_hyperplane, projection_degree, CurveOverFp, Fiber, Fibration, HyperplaneCheck,
};
pub use secant::{gamma_census, secant_census, SecantPlane, DEFAULT_SUBSET_BUDGET};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, FieldScalar, FieldTag};
use crate::polyring::Form;
use crate::schemes::ProjectivePoint;

/// Verdict attached to verification-style reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "REPORT")]
    Report,
}

/// A projective linear subspace, cut out dually by independent linear
/// forms. The dual basis is stored in reduced row echelon form, so equal
/// subspaces compare equal and can key deduplication maps directly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSubspace {
    n: usize,
    dual_rows: Vec<Vec<FieldScalar>>,
}

impl LinearSubspace {
    /// The whole of P^n (empty dual basis).
    pub fn whole_space(n: usize) -> Self {
        LinearSubspace { n, dual_rows: Vec::new() }
    }

    /// Builds the subspace cut out by the given linear forms. The forms
    /// must be independent; the stored dual basis is canonicalized.
    pub fn from_dual_forms(forms: &[Form]) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::RangeViolation("subspace needs at least one dual form".into()))?;
        let n = first.ambient_dim();
        let tag = first.tag();
        for f in forms {
            tag.ensure_same(&f.tag())?;
            if f.ambient_dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.ambient_dim() });
            }
            if f.degree() != 1 {
                return Err(Error::DegenerateConfiguration("dual forms must be linear".into()));
            }
        }
        let rows: Vec<Vec<FieldScalar>> = forms.iter().map(Form::coeff_vector).collect();
        let mut m = ExactMatrix::from_rows(rows, n + 1, tag)?;
        let pivots = m.row_reduce();
        if pivots.len() != forms.len() {
            return Err(Error::DegenerateConfiguration("dual forms are not independent".into()));
        }
        let dual_rows = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
        Ok(LinearSubspace { n, dual_rows })
    }

    pub(crate) fn from_canonical_rows(n: usize, dual_rows: Vec<Vec<FieldScalar>>) -> Self {
        LinearSubspace { n, dual_rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Projective dimension: n minus the number of dual forms.
    pub fn proj_dim(&self) -> usize {
        self.n - self.dual_rows.len()
    }

    pub fn codim(&self) -> usize {
        self.dual_rows.len()
    }

    /// The canonical dual basis as linear forms.
    pub fn dual_basis(&self) -> Vec<Form> {
        let tag = self.tag().expect("dual basis is nonempty");
        self.dual_rows
            .iter()
            .map(|r| Form::linear(r, tag).expect("canonical rows are valid"))
            .collect()
    }

    pub(crate) fn dual_rows(&self) -> &[Vec<FieldScalar>] {
        &self.dual_rows
    }

    fn tag(&self) -> Option<FieldTag> {
        self.dual_rows.first().map(|r| r[0].tag())
    }

    pub fn contains_point(&self, p: &ProjectivePoint) -> bool {
        self.dual_rows.iter().all(|row| {
            let mut acc = p.tag().zero();
            for (c, x) in row.iter().zip(p.coords()) {
                acc = acc.add(&c.mul(x));
            }
            acc.is_zero()
        })
    }
}

/// The smallest linear subspace containing all the points: its dual basis
/// is the kernel of the coordinate matrix, which depends only on the span,
/// so equal spans produce identical subspaces.
pub fn span(points: &[ProjectivePoint]) -> Result<LinearSubspace> {
    let first = points
        .first()
        .ok_or_else(|| Error::RangeViolation("span of an empty point set".into()))?;
    let n = first.ambient_dim();
    let tag = first.tag();
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        tag.ensure_same(&p.tag())?;
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n + 1, got: p.coords().len() });
        }
        rows.push(p.coords().to_vec());
    }
    let m = ExactMatrix::from_rows(rows, n + 1, tag)?;
    let dual_rows = m.kernel();
    Ok(LinearSubspace { n, dual_rows })
}

/// A pencil of hyperplanes through a codimension-2 center: the rational
/// map `P = (l0 : l1)` defined away from the center.
#[derive(Clone, Debug)]
pub struct PencilMap {
    center: LinearSubspace,
    l0: Form,
    l1: Form,
}

impl PencilMap {
    /// The pencil of hyperplanes through a center of projective dimension
    /// `n - 2`; the coordinate forms are the center's canonical dual basis.
    pub fn from_center(center: LinearSubspace) -> Result<Self> {
        if center.codim() != 2 {
            return Err(Error::RangeViolation(format!(
                "pencil center must have codimension 2, got {}",
                center.codim()
            )));
        }
        let duals = center.dual_basis();
        let l0 = duals[0].clone();
        let l1 = duals[1].clone();
        Ok(PencilMap { center, l0, l1 })
    }

    pub fn center(&self) -> &LinearSubspace {
        &self.center
    }

    pub fn coordinate_forms(&self) -> (&Form, &Form) {
        (&self.l0, &self.l1)
    }

    /// The member hyperplane over `t = (t0 : t1)`: the zero locus of
    /// `t0*l1 - t1*l0`.
    pub fn hyperplane_at(&self, t: &ProjectivePoint) -> Result<Form> {
        let t0 = &t.coords()[0];
        let t1 = &t.coords()[1];
        self.l1.scale(t0).add(&self.l0.scale(&t1.neg()))
    }

    /// Where the pencil sends a point outside the center.
    pub fn image_of(&self, p: &ProjectivePoint) -> Result<Option<ProjectivePoint>> {
        let v0 = self.l0.evaluate(p.coords())?;
        let v1 = self.l1.evaluate(p.coords())?;
        if v0.is_zero() && v1.is_zero() {
            return Ok(None);
        }
        Ok(Some(ProjectivePoint::new(vec![v0, v1])?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_form;

    fn q() -> FieldTag {
        FieldTag::rational()
    }

    fn pt(coords: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_ints(coords, q()).unwrap()
    }

    #[test]
    fn two_points_span_a_line() {
        let s = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(s.proj_dim(), 1);
    }

    #[test]
    fn four_general_points_span_p3() {
        let s = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(s.proj_dim(), 3);
        assert_eq!(s.codim(), 0);
    }

    #[test]
    fn coplanar_points_span_a_plane() {
        // Four points in the hyperplane x3 = 0, in general position there.
        let s = span(&[pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0]), pt(&[1, 1, 1, 0])]).unwrap();
        assert_eq!(s.proj_dim(), 2);
    }

    #[test]
    fn span_is_independent_of_the_spanning_set() {
        // Two different point pairs on the same line give the same subspace.
        let a = span(&[pt(&[1, 0, 1, 0]), pt(&[0, 1, 1, 0])]).unwrap();
        let b = span(&[pt(&[1, 1, 2, 0]), pt(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_point_spans_a_point() {
        let s = span(&[pt(&[1, 2, 3]), pt(&[2, 4, 6])]).unwrap();
        assert_eq!(s.proj_dim(), 0);
    }

    #[test]
    fn dependent_dual_forms_are_rejected() {
        let a = parse_form("x0 + x1", 2, q()).unwrap();
        let b = parse_form("2*x0 + 2*x1", 2, q()).unwrap();
        assert!(LinearSubspace::from_dual_forms(&[a, b]).is_err());
    }

    #[test]
    fn pencil_needs_codimension_two() {
        let h = LinearSubspace::from_dual_forms(&[parse_form("x0", 2, q()).unwrap()]).unwrap();
        assert!(PencilMap::from_center(h).is_err());

        let k = LinearSubspace::from_dual_forms(&[
            parse_form("x0", 2, q()).unwrap(),
            parse_form("x1", 2, q()).unwrap(),
        ])
        .unwrap();
        let pencil = PencilMap::from_center(k).unwrap();
        let image = pencil.image_of(&pt(&[1, 2, 5])).unwrap().unwrap();
        assert_eq!(image, ProjectivePoint::from_ints(&[1, 2], q()).unwrap());
        assert!(pencil.image_of(&pt(&[0, 0, 1])).unwrap().is_none());
    }
}
