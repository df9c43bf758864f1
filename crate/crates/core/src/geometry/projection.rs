//! Projection pencils on curves over F_p: degree drop at the center,
//! fibers over rational points of the line, and hyperplane-span checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::ExactMatrix;
use crate::geometry::{span, LinearSubspace, PencilMap};
use crate::schemes::{
    enumerate_projective_space, jacobian_matrix, rational_points, CompleteIntersection,
    FiniteSubscheme, ProjectivePoint,
};

/// A complete intersection curve over F_p with its rational points cached.
#[derive(Clone, Debug)]
pub struct CurveOverFp {
    ci: CompleteIntersection,
    p: u64,
    points: Vec<ProjectivePoint>,
}

impl CurveOverFp {
    /// Enumerates and caches the rational points; the curve must be cut
    /// out by `n - 1` forms over a prime field.
    pub fn new(ci: CompleteIntersection, budget: u64) -> Result<Self> {
        let p = ci
            .tag()
            .prime_modulus()
            .ok_or_else(|| Error::RangeViolation("curves over F_p only".into()))?;
        if ci.expected_dim() != 1 {
            return Err(Error::RangeViolation(format!(
                "expected a curve, got expected dimension {}",
                ci.expected_dim()
            )));
        }
        let points = rational_points(&ci, p, budget)?;
        Ok(CurveOverFp { ci, p, points })
    }

    pub fn ci(&self) -> &CompleteIntersection {
        &self.ci
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn ambient_dim(&self) -> usize {
        self.ci.ambient_dim()
    }

    /// The degree of the curve, the product of its type degrees.
    pub fn degree(&self) -> u64 {
        self.ci.degree_product()
    }
}

/// Checks the center meets the curve in a reduced set of smooth points and
/// returns those points. At each rational point P of the intersection the
/// curve must be smooth and the stacked matrix of the Jacobian and the
/// center's dual forms must have rank n, i.e. the tangent line of the curve
/// at P must not sit inside the center.
fn center_intersection(c: &CurveOverFp, center: &LinearSubspace) -> Result<Vec<ProjectivePoint>> {
    let n = c.ambient_dim();
    if center.ambient_dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: center.ambient_dim() });
    }
    if center.codim() != 2 {
        return Err(Error::RangeViolation(format!(
            "projection center must have projective dimension {}, got {}",
            n - 2,
            center.proj_dim()
        )));
    }
    let hits: Vec<ProjectivePoint> = c
        .points()
        .iter()
        .filter(|p| center.contains_point(p))
        .cloned()
        .collect();
    let tag = c.ci().tag();
    for p in &hits {
        let jac = jacobian_matrix(c.ci(), p)?;
        if jac.rank() != c.ci().codim() {
            return Err(Error::SingularAtCenter);
        }
        let dual = ExactMatrix::from_rows(center.dual_rows().to_vec(), n + 1, tag)?;
        if jac.stack(&dual)?.rank() != n {
            return Err(Error::NonReducedCenterIntersection);
        }
    }
    Ok(hits)
}

/// Degree of the pencil induced by projecting from `center`:
/// `deg C - |C ∩ center|`, defined when the intersection is a reduced set
/// of rational points with the curve smooth at each of them.
pub fn projection_degree(c: &CurveOverFp, center: &LinearSubspace) -> Result<u64> {
    let hits = center_intersection(c, center)?;
    Ok(c.degree() - hits.len() as u64)
}

/// A fiber of the pencil over one rational point of the line.
#[derive(Clone, Debug)]
pub struct Fiber {
    /// The base point t of P^1 under the fiber.
    pub t: ProjectivePoint,
    /// The rational curve points mapping to t (center points excluded).
    pub points: FiniteSubscheme,
    /// True when the rational point count reaches the pencil degree, so
    /// the scheme-theoretic fiber is reduced and entirely rational.
    pub full: bool,
}

/// All fibers of a projection pencil over the rational points of P^1.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub pencil_degree: u64,
    pub center_points: Vec<ProjectivePoint>,
    pub fibers: Vec<Fiber>,
}

/// Partitions the rational points of the curve away from the center into
/// the fibers of the pencil, one per rational point of P^1 in enumeration
/// order (empty fibers included).
pub fn fibers_over_rational_points(c: &CurveOverFp, pencil: &PencilMap) -> Result<Fibration> {
    let center_points = center_intersection(c, pencil.center())?;
    let pencil_degree = c.degree() - center_points.len() as u64;
    let n = c.ambient_dim();
    let tag = c.ci().tag();

    let mut buckets: std::collections::BTreeMap<ProjectivePoint, Vec<ProjectivePoint>> =
        std::collections::BTreeMap::new();
    for p in c.points() {
        if let Some(t) = pencil.image_of(p)? {
            buckets.entry(t).or_default().push(p.clone());
        }
    }

    let line = enumerate_projective_space(1, c.prime(), c.prime() + 2)?;
    let mut fibers = Vec::with_capacity(line.len() as usize);
    for t in line.iter() {
        let pts = buckets.remove(&t).unwrap_or_default();
        let full = pts.len() as u64 == pencil_degree;
        let scheme = if pts.is_empty() {
            FiniteSubscheme::empty(n, tag)
        } else {
            FiniteSubscheme::from_points(pts)?
        };
        fibers.push(Fiber { t, points: scheme, full });
    }
    Ok(Fibration { pencil_degree, center_points, fibers })
}

/// True when the fiber spans a hyperplane exactly: it lies in a hyperplane
/// and in no smaller linear space.
pub fn fiber_spans_hyperplane(fiber: &FiniteSubscheme) -> Result<bool> {
    if fiber.is_empty() {
        return Err(Error::RangeViolation("empty fiber has no span".into()));
    }
    let pts: Vec<ProjectivePoint> = fiber.points().iter().map(|fp| fp.base().clone()).collect();
    Ok(span(&pts)?.proj_dim() == fiber.ambient_dim() - 1)
}

/// Result of comparing the hyperplane spans of large fibers.
#[derive(Clone, Debug, Serialize)]
pub struct HyperplaneCheck {
    /// All compared spans are pairwise distinct.
    pub distinct: bool,
    /// Number of fibers with at least n points whose span is a hyperplane.
    pub hyperplanes: usize,
    /// Number of fibers with at least n points.
    pub fibers_considered: usize,
    /// Fewer than two spans to compare, so the verdict is vacuous.
    pub vacuous: bool,
}

/// Span-comparison core, shared with hand-built negative controls: takes
/// any family of subschemes and compares the spans of those with at least
/// `n` points that span hyperplanes.
pub fn distinct_hyperplane_spans(fibers: &[FiniteSubscheme], n: usize) -> Result<HyperplaneCheck> {
    let mut spans = Vec::new();
    let mut considered = 0usize;
    for f in fibers {
        if f.len() < n {
            continue;
        }
        considered += 1;
        let pts: Vec<ProjectivePoint> = f.points().iter().map(|fp| fp.base().clone()).collect();
        let s = span(&pts)?;
        if s.proj_dim() == n - 1 {
            spans.push(s);
        }
    }
    let hyperplanes = spans.len();
    spans.sort();
    let distinct = spans.windows(2).all(|w| w[0] != w[1]);
    Ok(HyperplaneCheck { distinct, hyperplanes, fibers_considered: considered, vacuous: hyperplanes < 2 })
}

/// No two fibers of the pencil with at least n points span the same
/// hyperplane.
pub fn one_fiber_per_hyperplane(c: &CurveOverFp, pencil: &PencilMap) -> Result<HyperplaneCheck> {
    let fibration = fibers_over_rational_points(c, pencil)?;
    let schemes: Vec<FiniteSubscheme> = fibration
        .fibers
        .into_iter()
        .filter(|f| !f.points.is_empty())
        .map(|f| f.points)
        .collect();
    distinct_hyperplane_spans(&schemes, c.ambient_dim())
}
