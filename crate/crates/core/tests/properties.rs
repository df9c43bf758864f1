//! Randomized invariants: proptest suites for the algebra layers plus
//! seeded empirical suites for the geometry claims.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cbgon_core::conditions::{cayley_bacharach, cb_with_respect_to_canonical};
use cbgon_core::exactalg::{ExactMatrix, FieldScalar, FieldTag};
use cbgon_core::geometry::{fibers_over_rational_points, projection_degree};
use cbgon_core::instances::{
    projection_from_curve_point, random_form, random_grid, random_invertible_matrix,
    random_plane_curve,
};
use cbgon_core::polyring::{monomial_basis, parse_form, Form};
use cbgon_core::schemes::{evaluation_rows, FiniteSubscheme, ProjectivePoint, DEFAULT_ENUM_BUDGET};

fn q() -> FieldTag {
    FieldTag::rational()
}

/// Rank oracle independent of the elimination code: the largest size of a
/// square submatrix with nonzero determinant, by Laplace expansion.
fn rank_by_minors(m: &ExactMatrix) -> usize {
    fn det(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> FieldScalar {
        let tag = m.tag();
        if rows.len() == 1 {
            return m.get(rows[0], cols[0]).clone();
        }
        let mut acc = tag.zero();
        for (i, &r) in rows.iter().enumerate() {
            let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
            let minor = det(m, &sub_rows, &cols[1..]);
            let term = m.get(r, cols[0]).mul(&minor);
            acc = if i % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in combos(n, k - 1) {
                if rest.iter().all(|&x| x > first) {
                    let mut v = vec![first];
                    v.append(&mut rest);
                    out.push(v);
                }
            }
        }
        out
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in combos(m.rows(), k) {
            for cols in combos(m.cols(), k) {
                if !det(m, &rows, &cols).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

fn matrix_strategy(tag_rational: bool) -> impl Strategy<Value = ExactMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(move |(rows, cols)| {
        proptest::collection::vec(-9i64..=9, rows * cols).prop_map(move |data| {
            let tag = if tag_rational { q() } else { FieldTag::prime(101).unwrap() };
            let grid: Vec<Vec<i64>> = data.chunks(cols).map(|c| c.to_vec()).collect();
            ExactMatrix::from_i64_rows(&grid, tag)
        })
    })
}

proptest! {
    #[test]
    fn rank_matches_the_minor_oracle_over_q(m in matrix_strategy(true)) {
        prop_assert_eq!(m.rank(), rank_by_minors(&m));
    }

    #[test]
    fn rank_matches_the_minor_oracle_mod_p(m in matrix_strategy(false)) {
        prop_assert_eq!(m.rank(), rank_by_minors(&m));
    }

    #[test]
    fn rank_equals_transpose_rank(m in matrix_strategy(true)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_plus_kernel_dimension_is_cols(m in matrix_strategy(true)) {
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in kernel {
            for entry in m.apply(&v).unwrap() {
                prop_assert!(entry.is_zero());
            }
        }
    }
}

#[test]
fn sandwiching_by_invertible_matrices_preserves_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let tag = FieldTag::prime(101).unwrap();
    for _ in 0..300 {
        let rows = rng.gen_range(1..=5usize);
        let cols = rng.gen_range(1..=5usize);
        let grid: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..101i64)).collect())
            .collect();
        let m = ExactMatrix::from_i64_rows(&grid, tag);
        let p = random_invertible_matrix(rows - 1, tag, &mut rng);
        let qm = random_invertible_matrix(cols - 1, tag, &mut rng);
        let sandwich = p.matmul(&m).unwrap().matmul(&qm).unwrap();
        assert_eq!(sandwich.rank(), m.rank());
    }
}

/// F_p arithmetic agrees with integer arithmetic followed by reduction.
#[test]
fn fp_matches_integers_mod_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    for _ in 0..10_000 {
        let p = [3u64, 7, 101, 65537][rng.gen_range(0..4usize)];
        let tag = FieldTag::prime(p).unwrap();
        let (a, b, c) = (rng.gen_range(-500..=500i64), rng.gen_range(-500..=500i64), rng.gen_range(-500..=500i64));
        let (fa, fb, fc) = (
            FieldScalar::from_i64(a, tag),
            FieldScalar::from_i64(b, tag),
            FieldScalar::from_i64(c, tag),
        );
        let lhs = fa.add(&fb).mul(&fc);
        let rhs = FieldScalar::from_i64((a + b) * c, tag);
        assert_eq!(lhs, rhs);
        let lhs2 = fa.mul(&fb).sub(&fc);
        let rhs2 = FieldScalar::from_i64(a * b - c, tag);
        assert_eq!(lhs2, rhs2);
    }
}

fn form_strategy() -> impl Strategy<Value = Form> {
    (1usize..=3, 1u32..=4).prop_flat_map(|(n, d)| {
        let len = monomial_basis(n, d).len();
        proptest::collection::vec(-9i64..=9, len).prop_map(move |coeffs| {
            let scalars: Vec<FieldScalar> = coeffs.iter().map(|&c| FieldScalar::from_i64(c, q())).collect();
            Form::from_coeff_vector(n, d, &scalars, q()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_and_parsing_round_trips(f in form_strategy()) {
        let text = f.to_string();
        let back = parse_form(&text, f.ambient_dim(), f.tag()).unwrap();
        prop_assert_eq!(f, back);
    }
}

proptest! {
    #[test]
    fn evaluation_is_multiplicative(f in form_strategy(), g in form_strategy(), pt in proptest::collection::vec(-5i64..=5, 4)) {
        // Bring g into the same variable count as f.
        prop_assume!(f.ambient_dim() == g.ambient_dim());
        let n = f.ambient_dim();
        let coords: Vec<FieldScalar> = pt[..=n].iter().map(|&v| FieldScalar::from_i64(v, q())).collect();
        let prod = f.mul(&g).unwrap();
        let lhs = prod.evaluate(&coords).unwrap();
        let rhs = f.evaluate(&coords).unwrap().mul(&g.evaluate(&coords).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_relation_over_q(f in form_strategy()) {
        let n = f.ambient_dim();
        let d = f.degree();
        let mut sum = Form::zero(n, d, q());
        for i in 0..=n {
            let xi = parse_form(&format!("x{i}"), n, q()).unwrap();
            sum = sum.add(&f.partial_derivative(i).mul(&xi).unwrap()).unwrap();
        }
        prop_assert_eq!(sum, f.scale(&FieldScalar::from_i64(d as i64, q())));
    }

    #[test]
    fn scaling_coordinates_scales_values_homogeneously(f in form_strategy(), t in 1i64..=7) {
        let n = f.ambient_dim();
        let coords: Vec<FieldScalar> = (0..=n).map(|i| FieldScalar::from_i64(i as i64 + 1, q())).collect();
        let scaled: Vec<FieldScalar> = coords.iter().map(|c| c.mul(&FieldScalar::from_i64(t, q()))).collect();
        let lhs = f.evaluate(&scaled).unwrap();
        let rhs = f.evaluate(&coords).unwrap().mul(&FieldScalar::from_i64(t, q()).pow(f.degree()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projective_points_forget_scalar_multiples(coords in proptest::collection::vec(-9i64..=9, 3), c in 1i64..=9) {
        prop_assume!(coords.iter().any(|&v| v != 0));
        let a = ProjectivePoint::from_ints(&coords, q()).unwrap();
        let scaled: Vec<i64> = coords.iter().map(|v| v * c).collect();
        let b = ProjectivePoint::from_ints(&scaled, q()).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// Twenty seeded (curve, projection) instances: every reduced rational
/// fiber satisfies Cayley-Bacharach with respect to the canonical system.
#[test]
fn canonical_cb_holds_on_projection_fibers() {
    let mut checked_fibers = 0usize;
    let mut instances = 0usize;
    let mut seed = 100u64;
    while instances < 20 {
        seed += 1;
        let d = 4 + (seed % 3) as u32;
        let p = if seed % 2 == 0 { 101 } else { 103 };
        let Ok(plane) = random_plane_curve(d, p, seed, DEFAULT_ENUM_BUDGET) else {
            continue;
        };
        let Ok(inst) = projection_from_curve_point(plane) else {
            continue;
        };
        let fibration = fibers_over_rational_points(&inst.curve, &inst.pencil).unwrap();
        for fiber in &fibration.fibers {
            if !fiber.full {
                continue;
            }
            checked_fibers += 1;
            assert!(
                cb_with_respect_to_canonical(inst.curve.ci(), &fiber.points).unwrap(),
                "seed {seed}: a reduced rational fiber violates canonical CB"
            );
        }
        instances += 1;
    }
    assert!(checked_fibers >= 20, "only {checked_fibers} full fibers seen");
}

/// The projection degree plus the center intersection size is the curve
/// degree, across seeded instances.
#[test]
fn projection_degree_accounts_for_center_points() {
    for seed in 200..210u64 {
        let Ok(plane) = random_plane_curve(4 + (seed % 2) as u32, 101, seed, DEFAULT_ENUM_BUDGET) else {
            continue;
        };
        let Ok(inst) = projection_from_curve_point(plane) else {
            continue;
        };
        let fibration = fibers_over_rational_points(&inst.curve, &inst.pencil).unwrap();
        let degree = projection_degree(&inst.curve, &inst.center).unwrap();
        assert_eq!(degree + fibration.center_points.len() as u64, inst.curve.degree());
    }
}

/// Once a subset fails to impose independent conditions, every superset
/// keeps failing: checked against the definition on random grids.
#[test]
fn independence_failure_is_monotone_under_supersets() {
    let mut rng = ChaCha8Rng::seed_from_u64(92);
    for seed in 0..10u64 {
        let (_, z) = random_grid(&[2, 2, 2], 101, seed).unwrap();
        let m = 1u32;
        // Find a failing subset of minimal size by direct search.
        let mut witness: Option<Vec<usize>> = None;
        'sizes: for size in 1..=z.len() {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let sub = z.select(&idx);
                let rows = evaluation_rows(&sub, m).unwrap();
                if rows.rank() < sub.degree() as usize {
                    witness = Some(idx.clone());
                    break 'sizes;
                }
                let Some(i) = (0..size).rev().find(|&i| idx[i] != i + z.len() - size) else {
                    break;
                };
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        let witness = witness.expect("a (2,2,2) grid has dependent subsets for lines");
        // Any random superset still fails.
        for _ in 0..20 {
            let mut superset = witness.clone();
            while superset.len() < z.len().min(witness.len() + 3) {
                let extra = rng.gen_range(0..z.len());
                if !superset.contains(&extra) {
                    superset.push(extra);
                }
            }
            superset.sort();
            let sub = z.select(&superset);
            let rows = evaluation_rows(&sub, m).unwrap();
            assert!(
                (rows.rank() as u64) < sub.degree(),
                "superset of a failing subset imposes independent conditions"
            );
        }
    }
}

/// Grid vertices satisfy every defining form exactly.
#[test]
fn grid_points_vanish_on_grid_forms() {
    for seed in 0..5u64 {
        let (ci, z) = random_grid(&[2, 3], 101, seed).unwrap();
        assert_eq!(z.len(), 6);
        for fp in z.points() {
            assert!(ci.contains(fp.base()).unwrap());
        }
    }
}

/// The classical counterexample shows dependence does not imply CB; kept
/// as a pinned regression next to the randomized implication suite.
#[test]
fn dependent_but_not_cb_regression() {
    let pts = vec![
        ProjectivePoint::from_ints(&[1, 0, 1], q()).unwrap(),
        ProjectivePoint::from_ints(&[0, 1, 1], q()).unwrap(),
        ProjectivePoint::from_ints(&[1, 1, 2], q()).unwrap(),
        ProjectivePoint::from_ints(&[1, 0, 0], q()).unwrap(),
    ];
    let z = FiniteSubscheme::from_points(pts).unwrap();
    let report = cbgon_core::conditions::imposes_independent_conditions(&z, 1).unwrap();
    assert!(!report.independent);
    assert!(!cayley_bacharach(&z, 1).unwrap());
}

/// Deterministic parallel contract: the same census twice, and under a
/// different worker count, is byte-for-byte identical.
#[test]
fn census_is_deterministic() {
    let inst = cbgon_core::instances::planted_secant_instance((4, 4), 4, 31, 7, DEFAULT_ENUM_BUDGET)
        .unwrap();
    let a = cbgon_core::geometry::secant_census(&inst.curve, 2, 10_000_000).unwrap();
    let b = cbgon_core::geometry::secant_census(&inst.curve, 2, 10_000_000).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.plane, y.plane);
        assert_eq!(x.secancy, y.secancy);
    }
}

/// Grid construction agrees with the brute-force enumeration: the
/// rational points of the product forms are exactly the grid vertices.
#[test]
fn grid_vertices_match_the_enumeration_oracle() {
    let (ci, z) = random_grid(&[2, 2, 4], 101, 9).unwrap();
    let mut from_grid: Vec<ProjectivePoint> =
        z.points().iter().map(|fp| fp.base().clone()).collect();
    from_grid.sort();
    let mut from_enum = cbgon_core::schemes::rational_points(&ci, 101, DEFAULT_ENUM_BUDGET).unwrap();
    from_enum.sort();
    assert_eq!(from_grid.len(), 16);
    assert_eq!(from_grid, from_enum);
}

/// Projecting a (4,5) curve from a planted 4-secant line drops the degree
/// to 20 - 4 = 16.
#[test]
fn projection_from_a_four_secant_line() {
    let inst = cbgon_core::instances::planted_secant_instance((4, 5), 4, 101, 1, DEFAULT_ENUM_BUDGET)
        .unwrap();
    assert_eq!(projection_degree(&inst.curve, &inst.line).unwrap(), 16);
}

/// Two points in space span a line, not a hyperplane.
#[test]
fn small_fibers_do_not_span_hyperplanes() {
    let z = FiniteSubscheme::from_points(vec![
        ProjectivePoint::from_ints(&[1, 0, 0, 0], q()).unwrap(),
        ProjectivePoint::from_ints(&[0, 1, 0, 0], q()).unwrap(),
    ])
    .unwrap();
    assert!(!cbgon_core::geometry::fiber_spans_hyperplane(&z).unwrap());
}

/// One more point than the dimension of the space of forms: the failure
/// index is exactly 1 for points in general position.
#[test]
fn one_point_past_the_space_dimension_fails_by_one() {
    let tag = FieldTag::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(94);
    for m in [1u32, 2] {
        let count = monomial_basis(2, m).len() + 1;
        let z = cbgon_core::instances::random_point_set(2, count, tag, &mut rng);
        let report = cbgon_core::conditions::imposes_independent_conditions(&z, m).unwrap();
        assert_eq!(report.failure_index, 1, "m = {m}");
    }
}

/// A random smooth (4,5) curve should carry no 5-secant line spanned by
/// rational points; the heuristic is reported, not asserted.
#[test]
fn high_secancy_census_on_a_random_curve_is_reported() {
    let Ok(inst) = cbgon_core::instances::random_space_curve((4, 5), 101, 60, 1, DEFAULT_ENUM_BUDGET)
    else {
        eprintln!("no smooth instance at this seed; census heuristic skipped");
        return;
    };
    let census = cbgon_core::geometry::secant_census(&inst.curve, 5, 10_000_000).unwrap();
    eprintln!(
        "random (4,5) over F_101: {} lines with secancy >= 5 (expected none for general curves)",
        census.len()
    );
}

/// Random forms over F_p evaluate consistently under the fast enumeration
/// path and the exact scalar path.
#[test]
fn random_forms_are_homogeneous_of_declared_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(93);
    let tag = FieldTag::prime(101).unwrap();
    for _ in 0..50 {
        let n = rng.gen_range(1..=3usize);
        let d = rng.gen_range(1..=5u32);
        let f = random_form(n, d, tag, &mut rng);
        assert_eq!(f.degree(), d);
        for (m, _) in f.terms() {
            assert_eq!(m.degree(), d);
        }
    }
}
