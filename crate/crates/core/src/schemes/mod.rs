//! Projective points, curvilinear length-2 fat points, finite subschemes,
//! complete intersections, and the evaluation matrices that turn all of
//! them into linear algebra.

mod enumerate;
mod json;

pub use enumerate::{enumerate_projective_space, projective_point_count, rational_points, PointEnumerator, DEFAULT_ENUM_BUDGET};
pub use json::{parse_instance, Instance};

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{ExactMatrix, FieldScalar, FieldTag};
use crate::polyring::{monomial_basis, Form};

/// A point of projective n-space in canonical form: the first nonzero
/// coordinate is 1, so equality is plain coordinate equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<FieldScalar>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<FieldScalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ZeroPoint);
        }
        let tag = coords[0].tag();
        for c in &coords {
            tag.ensure_same(&c.tag())?;
        }
        let Some(lead) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::ZeroPoint);
        };
        let inv = coords[lead].inv().expect("leading coordinate is nonzero");
        let coords = coords.iter().map(|c| c.mul(&inv)).collect();
        Ok(ProjectivePoint { coords })
    }

    pub fn from_ints(coords: &[i64], tag: FieldTag) -> Result<Self> {
        Self::new(coords.iter().map(|&v| FieldScalar::from_i64(v, tag)).collect())
    }

    pub fn coords(&self) -> &[FieldScalar] {
        &self.coords
    }

    /// Ambient projective dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn tag(&self) -> FieldTag {
        self.coords[0].tag()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A reduced point, or a curvilinear point of length 2 (a point plus a
/// tangent direction). The tangent is kept as given; ranks computed from it
/// are invariant under rescaling and under adding multiples of the base
/// point, so no canonical representative is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPoint {
    base: ProjectivePoint,
    tangent: Option<Vec<FieldScalar>>,
}

impl FatPoint {
    pub fn reduced(base: ProjectivePoint) -> Self {
        FatPoint { base, tangent: None }
    }

    pub fn with_tangent(base: ProjectivePoint, tangent: Vec<FieldScalar>) -> Result<Self> {
        if tangent.len() != base.coords().len() {
            return Err(Error::DimensionMismatch { expected: base.coords().len(), got: tangent.len() });
        }
        let tag = base.tag();
        for c in &tangent {
            tag.ensure_same(&c.tag())?;
        }
        let rows = vec![base.coords().to_vec(), tangent.clone()];
        let m = ExactMatrix::from_rows(rows, base.coords().len(), tag)?;
        if m.rank() != 2 {
            return Err(Error::DegenerateConfiguration(
                "tangent direction is proportional to the base point".into(),
            ));
        }
        Ok(FatPoint { base, tangent: Some(tangent) })
    }

    pub fn base(&self) -> &ProjectivePoint {
        &self.base
    }

    pub fn tangent(&self) -> Option<&[FieldScalar]> {
        self.tangent.as_deref()
    }

    pub fn is_reduced(&self) -> bool {
        self.tangent.is_none()
    }

    /// Scheme length: 1 for a reduced point, 2 with a tangent direction.
    pub fn length(&self) -> u64 {
        if self.tangent.is_some() {
            2
        } else {
            1
        }
    }
}

/// A finite subscheme: fat points with pairwise distinct supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSubscheme {
    n: usize,
    tag: FieldTag,
    points: Vec<FatPoint>,
}

impl FiniteSubscheme {
    pub fn new(points: Vec<FatPoint>) -> Result<Self> {
        let first = points.first().ok_or(Error::ZeroPoint)?;
        let n = first.base().ambient_dim();
        let tag = first.base().tag();
        let mut scheme = FiniteSubscheme { n, tag, points: Vec::new() };
        for p in points {
            scheme.push(p)?;
        }
        Ok(scheme)
    }

    pub fn empty(n: usize, tag: FieldTag) -> Self {
        FiniteSubscheme { n, tag, points: Vec::new() }
    }

    pub fn from_points(points: Vec<ProjectivePoint>) -> Result<Self> {
        Self::new(points.into_iter().map(FatPoint::reduced).collect())
    }

    pub fn push(&mut self, p: FatPoint) -> Result<()> {
        self.tag.ensure_same(&p.base().tag())?;
        if p.base().ambient_dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: p.base().coords().len() });
        }
        if self.points.iter().any(|q| q.base() == p.base()) {
            return Err(Error::DegenerateConfiguration(format!(
                "repeated base point {}",
                p.base()
            )));
        }
        self.points.push(p);
        Ok(())
    }

    pub fn points(&self) -> &[FatPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total scheme degree: reduced points count 1, fat points count 2.
    pub fn degree(&self) -> u64 {
        self.points.iter().map(FatPoint::length).sum()
    }

    pub fn is_reduced(&self) -> bool {
        self.points.iter().all(FatPoint::is_reduced)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    /// The subscheme with the point at `idx` removed.
    pub fn without_point(&self, idx: usize) -> FiniteSubscheme {
        let mut points = self.points.clone();
        points.remove(idx);
        FiniteSubscheme { n: self.n, tag: self.tag, points }
    }

    /// The subscheme supported on the selected indices.
    pub fn select(&self, indices: &[usize]) -> FiniteSubscheme {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        FiniteSubscheme { n: self.n, tag: self.tag, points }
    }
}

/// An ordered tuple of forms cutting out a complete intersection; the type
/// degrees are kept ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersection {
    n: usize,
    tag: FieldTag,
    forms: Vec<Form>,
}

impl CompleteIntersection {
    pub fn new(mut forms: Vec<Form>) -> Result<Self> {
        let first = forms.first().ok_or_else(|| {
            Error::DegenerateConfiguration("a complete intersection needs at least one form".into())
        })?;
        let n = first.ambient_dim();
        let tag = first.tag();
        for f in &forms {
            tag.ensure_same(&f.tag())?;
            if f.ambient_dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: f.ambient_dim() });
            }
            if f.is_zero() {
                return Err(Error::DegenerateConfiguration("zero form in a complete intersection".into()));
            }
        }
        if forms.len() > n {
            return Err(Error::DegenerateConfiguration(format!(
                "{} forms exceed the ambient dimension {n}",
                forms.len()
            )));
        }
        forms.sort_by_key(Form::degree);
        Ok(CompleteIntersection { n, tag, forms })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    /// The type (a_1, ..., a_c), ascending.
    pub fn degrees(&self) -> Vec<u32> {
        self.forms.iter().map(Form::degree).collect()
    }

    pub fn codim(&self) -> usize {
        self.forms.len()
    }

    pub fn expected_dim(&self) -> usize {
        self.n - self.forms.len()
    }

    /// The product of the type degrees (the degree of the intersection).
    pub fn degree_product(&self) -> u64 {
        self.forms.iter().map(|f| f.degree() as u64).product()
    }

    /// Exact membership test: every form vanishes at the point.
    pub fn contains(&self, p: &ProjectivePoint) -> Result<bool> {
        for f in &self.forms {
            if !f.evaluate(p.coords())?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The Jacobian matrix (d f_i / d x_j) evaluated at `p`; one row per form.
pub fn jacobian_matrix(x: &CompleteIntersection, p: &ProjectivePoint) -> Result<ExactMatrix> {
    let n = x.ambient_dim();
    let mut rows = Vec::with_capacity(x.codim());
    for f in x.forms() {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(f.partial_derivative(j).evaluate(p.coords())?);
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows, n + 1, x.tag())
}

/// True when `x` is smooth at `p`: the Jacobian has rank equal to the
/// codimension. Errors when `p` does not lie on `x`.
pub fn is_smooth_at(x: &CompleteIntersection, p: &ProjectivePoint) -> Result<bool> {
    if !x.contains(p)? {
        return Err(Error::PointNotOnScheme);
    }
    Ok(jacobian_matrix(x, p)?.rank() == x.codim())
}

/// Builds a grid complete intersection: form `i` is the product of the
/// `d_i` linear forms in `factor_lists[i]`. All `d_1 * ... * d_n` pairwise
/// intersections must be transverse and distinct; the full rational point
/// set comes back alongside the intersection.
pub fn make_grid_ci(factor_lists: &[Vec<Form>]) -> Result<(CompleteIntersection, Vec<ProjectivePoint>)> {
    let first = factor_lists
        .first()
        .and_then(|l| l.first())
        .ok_or_else(|| Error::DegenerateConfiguration("empty factor list".into()))?;
    let n = first.ambient_dim();
    let tag = first.tag();
    if factor_lists.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: factor_lists.len() });
    }
    for list in factor_lists {
        if list.is_empty() {
            return Err(Error::DegenerateConfiguration("empty factor list".into()));
        }
        for f in list {
            if f.degree() != 1 || f.is_zero() {
                return Err(Error::DegenerateConfiguration("grid factors must be nonzero linear forms".into()));
            }
            tag.ensure_same(&f.tag())?;
        }
    }

    let mut forms = Vec::with_capacity(n);
    for list in factor_lists {
        let mut acc = list[0].clone();
        for f in &list[1..] {
            acc = acc.mul(f)?;
        }
        forms.push(acc);
    }

    // Every choice of one factor per list pins down one grid vertex.
    let mut points = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let rows: Vec<Vec<FieldScalar>> = choice
            .iter()
            .enumerate()
            .map(|(i, &j)| factor_lists[i][j].coeff_vector())
            .collect();
        let m = ExactMatrix::from_rows(rows, n + 1, tag)?;
        let kernel = m.kernel();
        if kernel.len() != 1 {
            return Err(Error::DegenerateConfiguration(format!(
                "factors {choice:?} do not meet transversely in a single point"
            )));
        }
        points.push(ProjectivePoint::new(kernel.into_iter().next().unwrap())?);

        // Advance the mixed-radix choice counter.
        let mut k = n;
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < factor_lists[k].len() {
                break;
            }
            choice[k] = 0;
            if k == 0 {
                k = usize::MAX;
                break;
            }
        }
        if k == usize::MAX {
            break;
        }
    }

    let mut sorted = points.clone();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateConfiguration("grid vertices are not pairwise distinct".into()));
    }

    Ok((CompleteIntersection::new(forms)?, points))
}

/// The evaluation matrix of a finite subscheme in degree `d`: one row per
/// linear condition, columns indexed by `monomial_basis(n, d)`. A reduced
/// point contributes the row of monomial values at its canonical
/// coordinates; a fat point adds the row of tangent-directional derivatives.
pub fn evaluation_rows(z: &FiniteSubscheme, d: u32) -> Result<ExactMatrix> {
    let n = z.ambient_dim();
    let tag = z.tag();
    let basis = monomial_basis(n, d);
    let mut rows = Vec::with_capacity(z.degree() as usize);
    for fp in z.points() {
        let coords = fp.base().coords();
        rows.push(
            basis
                .iter()
                .map(|m| m.evaluate(coords, tag))
                .collect::<Vec<_>>(),
        );
        if let Some(v) = fp.tangent() {
            let mut row = Vec::with_capacity(basis.len());
            for m in &basis {
                let mut acc = tag.zero();
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() || m.exponent(j) == 0 {
                        continue;
                    }
                    let mut exps = m.exponents().to_vec();
                    exps[j] -= 1;
                    let scale = FieldScalar::from_i64(m.exponent(j) as i64, tag);
                    let partial = crate::polyring::Monomial::new(exps).evaluate(coords, tag);
                    acc = acc.add(&vj.mul(&scale).mul(&partial));
                }
                row.push(acc);
            }
            rows.push(row);
        }
    }
    ExactMatrix::from_rows(rows, basis.len(), tag)
}
