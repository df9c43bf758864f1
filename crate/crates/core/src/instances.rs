//! Seeded random instance generation.
//!
//! "General" objects are drawn from a ChaCha stream cipher seeded by a
//! reported u64, with rejection sampling until the smoothness and
//! transversality checks pass (at most 100 retries). Geometric generality
//! is unattainable over F_p; every consumer records the seed instead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::{FieldScalar, FieldTag};
use crate::geometry::{CurveOverFp, LinearSubspace, PencilMap};
use crate::polyring::{monomial_basis, Form};
use crate::schemes::{
    is_smooth_at, make_grid_ci, rational_points, CompleteIntersection, FiniteSubscheme,
    ProjectivePoint,
};

const MAX_RETRIES: u32 = 100;

/// A uniformly random form of degree `d` over F_p.
pub fn random_form(n: usize, d: u32, tag: FieldTag, rng: &mut ChaCha8Rng) -> Form {
    let p = tag.prime_modulus().expect("random forms are drawn over F_p");
    let coeffs: Vec<FieldScalar> = monomial_basis(n, d)
        .iter()
        .map(|_| FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag))
        .collect();
    Form::from_coeff_vector(n, d, &coeffs, tag).expect("coefficient vector matches the basis")
}

fn random_point(n: usize, tag: FieldTag, rng: &mut ChaCha8Rng) -> ProjectivePoint {
    let p = tag.prime_modulus().expect("points over F_p");
    loop {
        let coords: Vec<FieldScalar> = (0..=n)
            .map(|_| FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag))
            .collect();
        if let Ok(pt) = ProjectivePoint::new(coords) {
            return pt;
        }
    }
}

/// A seeded curve over F_p, smooth at every rational point and carrying
/// at least one of them.
pub struct CurveInstance {
    pub curve: CurveOverFp,
    pub seed: u64,
}

pub fn random_plane_curve(d: u32, p: u64, seed: u64, budget: u64) -> Result<CurveInstance> {
    let tag = FieldTag::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let f = random_form(2, d, tag, &mut rng);
        if f.is_zero() {
            continue;
        }
        let Ok(ci) = CompleteIntersection::new(vec![f]) else {
            continue;
        };
        let pts = rational_points(&ci, p, budget)?;
        if pts.is_empty() {
            continue;
        }
        if !pts.iter().all(|pt| is_smooth_at(&ci, pt).unwrap_or(false)) {
            continue;
        }
        let curve = CurveOverFp::new(ci, budget)?;
        return Ok(CurveInstance { curve, seed });
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A complete intersection curve in P^3 of the given type over F_p,
/// smooth at every rational point, with at least `min_points` of them.
pub fn random_space_curve(
    degrees: (u32, u32),
    p: u64,
    seed: u64,
    min_points: usize,
    budget: u64,
) -> Result<CurveInstance> {
    let tag = FieldTag::prime(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let f = random_form(3, degrees.0, tag, &mut rng);
        let g = random_form(3, degrees.1, tag, &mut rng);
        let Ok(ci) = CompleteIntersection::new(vec![f, g]) else {
            continue;
        };
        let pts = rational_points(&ci, p, budget)?;
        if pts.len() < min_points {
            continue;
        }
        if !pts.iter().all(|pt| is_smooth_at(&ci, pt).unwrap_or(false)) {
            continue;
        }
        let curve = CurveOverFp::new(ci, budget)?;
        return Ok(CurveInstance { curve, seed });
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A projection instance: a curve plus a pencil whose center passes
/// through one rational point of the curve (extended by random points off
/// the curve when the ambient dimension needs it).
pub struct ProjectionInstance {
    pub curve: CurveOverFp,
    pub center: LinearSubspace,
    pub pencil: PencilMap,
    pub seed: u64,
}

/// Builds the center through one curve point and validates the projection
/// preconditions, retrying with fresh randomness on degenerate choices.
/// The instance keeps the curve's seed.
pub fn projection_from_curve_point(inst: CurveInstance) -> Result<ProjectionInstance> {
    let CurveInstance { curve, seed } = inst;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x70726f6a);
    let n = curve.ambient_dim();
    let tag = curve.ci().tag();
    for _ in 0..MAX_RETRIES {
        let base = curve.points()[rng.gen_range(0..curve.points().len())].clone();
        let mut spanning = vec![base.clone()];
        // Extend to an (n-2)-plane with random points off the curve.
        while spanning.len() < n - 1 {
            let q = random_point(n, tag, &mut rng);
            if curve.ci().contains(&q)? {
                continue;
            }
            spanning.push(q);
        }
        let Ok(center) = crate::geometry::span(&spanning) else {
            continue;
        };
        if center.codim() != 2 {
            continue;
        }
        if crate::geometry::projection_degree(&curve, &center).is_err() {
            continue;
        }
        let pencil = PencilMap::from_center(center.clone())?;
        return Ok(ProjectionInstance { curve, center, pencil, seed });
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A random grid complete intersection of the given type over F_p: each
/// hypersurface is a product of random linear forms, retried until the
/// grid is transverse with all vertices distinct.
pub fn random_grid(degrees: &[u32], p: u64, seed: u64) -> Result<(CompleteIntersection, FiniteSubscheme)> {
    let tag = FieldTag::prime(p)?;
    let n = degrees.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let lists: Vec<Vec<Form>> = degrees
            .iter()
            .map(|&d| (0..d).map(|_| random_form(n, 1, tag, &mut rng)).collect())
            .collect();
        match make_grid_ci(&lists) {
            Ok((ci, points)) => {
                let z = FiniteSubscheme::from_points(points)?;
                return Ok((ci, z));
            }
            Err(Error::DegenerateConfiguration(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A planted-secant instance: a complete intersection curve in P^3 of the
/// given type passing through `secancy` chosen collinear rational points.
pub struct PlantedSecantInstance {
    pub curve: CurveOverFp,
    pub line: LinearSubspace,
    pub planted_points: Vec<ProjectivePoint>,
    pub seed: u64,
}

/// Plants `secancy` collinear points, draws curve forms from the kernels
/// of the point-evaluation maps, and rejects draws whose forms vanish on
/// the whole line, so the line meets the curve exactly in the planted
/// points.
pub fn planted_secant_instance(
    degrees: (u32, u32),
    secancy: usize,
    p: u64,
    seed: u64,
    budget: u64,
) -> Result<PlantedSecantInstance> {
    let tag = FieldTag::prime(p)?;
    if (secancy as u64) > p + 1 {
        return Err(Error::RangeViolation(format!("cannot plant {secancy} points on a line over F_{p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'outer: for _ in 0..MAX_RETRIES {
        // A random line through two distinct points.
        let a = random_point(3, tag, &mut rng);
        let b = random_point(3, tag, &mut rng);
        let Ok(line) = crate::geometry::span(&[a.clone(), b.clone()]) else {
            continue;
        };
        if line.proj_dim() != 1 {
            continue;
        }

        // Distinct rational points a + t b on the line.
        let mut planted: Vec<ProjectivePoint> = Vec::with_capacity(secancy);
        let mut guard = 0;
        while planted.len() < secancy {
            guard += 1;
            if guard > 50 * secancy {
                continue 'outer;
            }
            let t = rng.gen_range(0..p);
            let coords: Vec<FieldScalar> = a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| x.add(&y.mul(&FieldScalar::from_i64(t as i64, tag))))
                .collect();
            let Ok(pt) = ProjectivePoint::new(coords) else {
                continue;
            };
            if !planted.contains(&pt) {
                planted.push(pt);
            }
        }

        let z = FiniteSubscheme::from_points(planted.clone())?;
        let mut forms = Vec::with_capacity(2);
        for d in [degrees.0, degrees.1] {
            let Some(f) = random_form_through(&z, d, tag, &mut rng) else {
                continue 'outer;
            };
            // The form must not contain the line, so the line meets the
            // curve exactly in the planted points.
            if vanishes_on_line(&f, &a, &b, p)? {
                continue 'outer;
            }
            forms.push(f);
        }
        let Ok(ci) = CompleteIntersection::new(forms) else {
            continue;
        };
        let curve = CurveOverFp::new(ci, budget)?;
        return Ok(PlantedSecantInstance { curve, line, planted_points: planted, seed });
    }
    Err(Error::GenerationFailed(MAX_RETRIES))
}

/// A random degree-`d` form vanishing on `z`: a random kernel combination
/// of the evaluation map in degree `d`.
pub fn random_form_through(z: &FiniteSubscheme, d: u32, tag: FieldTag, rng: &mut ChaCha8Rng) -> Option<Form> {
    let p = tag.prime_modulus()?;
    let rows = crate::schemes::evaluation_rows(z, d).ok()?;
    let kernel = rows.kernel();
    if kernel.is_empty() {
        return None;
    }
    let n = z.ambient_dim();
    for _ in 0..MAX_RETRIES {
        let mut coeffs = vec![tag.zero(); kernel[0].len()];
        for v in &kernel {
            let c = FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag);
            for (acc, x) in coeffs.iter_mut().zip(v) {
                *acc = acc.add(&c.mul(x));
            }
        }
        if coeffs.iter().any(|c| !c.is_zero()) {
            return Form::from_coeff_vector(n, d, &coeffs, tag).ok();
        }
    }
    None
}

/// Whether `f` vanishes identically on the line through `a` and `b`:
/// checked by evaluating at all p + 1 rational points, which determines a
/// binary form of degree below p + 1.
fn vanishes_on_line(f: &Form, a: &ProjectivePoint, b: &ProjectivePoint, p: u64) -> Result<bool> {
    if f.degree() as u64 >= p + 1 {
        return Err(Error::RangeViolation("line check needs degree < p + 1".into()));
    }
    let tag = f.tag();
    // Points b and a + t b for t in F_p cover the line.
    if !f.evaluate(b.coords())?.is_zero() {
        return Ok(false);
    }
    for t in 0..p {
        let coords: Vec<FieldScalar> = a
            .coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| x.add(&y.mul(&FieldScalar::from_i64(t as i64, tag))))
            .collect();
        if !f.evaluate(&coords)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies an invertible change of coordinates to every point (and
/// tangent direction) of a subscheme.
pub fn transform_subscheme(
    z: &FiniteSubscheme,
    g: &crate::exactalg::ExactMatrix,
) -> Result<FiniteSubscheme> {
    let mut moved = Vec::with_capacity(z.len());
    for fp in z.points() {
        let base = ProjectivePoint::new(g.apply(fp.base().coords())?)?;
        let fat = match fp.tangent() {
            None => crate::schemes::FatPoint::reduced(base),
            Some(t) => crate::schemes::FatPoint::with_tangent(base, g.apply(t)?)?,
        };
        moved.push(fat);
    }
    FiniteSubscheme::new(moved)
}

/// Random distinct rational points in P^n(F_p), for property suites.
pub fn random_point_set(n: usize, count: usize, tag: FieldTag, rng: &mut ChaCha8Rng) -> FiniteSubscheme {
    let mut points: Vec<ProjectivePoint> = Vec::with_capacity(count);
    while points.len() < count {
        let pt = random_point(n, tag, rng);
        if !points.contains(&pt) {
            points.push(pt);
        }
    }
    FiniteSubscheme::from_points(points).expect("points are distinct")
}

/// A random invertible (n+1) x (n+1) change of coordinates over F_p.
pub fn random_invertible_matrix(n: usize, tag: FieldTag, rng: &mut ChaCha8Rng) -> crate::exactalg::ExactMatrix {
    let p = tag.prime_modulus().expect("over F_p");
    loop {
        let rows: Vec<Vec<FieldScalar>> = (0..=n)
            .map(|_| {
                (0..=n)
                    .map(|_| FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag))
                    .collect()
            })
            .collect();
        let m = crate::exactalg::ExactMatrix::from_rows(rows, n + 1, tag).expect("uniform tag");
        if m.rank() == n + 1 {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::DEFAULT_ENUM_BUDGET;

    #[test]
    fn plane_curve_generation_is_deterministic() {
        let a = random_plane_curve(4, 101, 11, DEFAULT_ENUM_BUDGET).unwrap();
        let b = random_plane_curve(4, 101, 11, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(a.curve.ci().forms(), b.curve.ci().forms());
        assert_eq!(a.curve.points(), b.curve.points());
    }

    #[test]
    fn grid_instances_hit_the_expected_point_count() {
        let (ci, z) = random_grid(&[2, 2, 4], 101, 3).unwrap();
        assert_eq!(z.len(), 16);
        assert_eq!(ci.degrees(), vec![2, 2, 4]);
        for fp in z.points() {
            assert!(ci.contains(fp.base()).unwrap());
        }
    }

    #[test]
    fn planted_points_lie_on_curve_and_line() {
        let inst = planted_secant_instance((4, 5), 4, 101, 5, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(inst.planted_points.len(), 4);
        for pt in &inst.planted_points {
            assert!(inst.line.contains_point(pt));
            assert!(inst.curve.ci().contains(pt).unwrap());
        }
        // The line is not inside the curve: secancy is exactly 4.
        let on_line = inst
            .curve
            .points()
            .iter()
            .filter(|p| inst.line.contains_point(p))
            .count();
        assert_eq!(on_line, 4);
    }
}
