//! The built-in verification battery.
//!
//! Eight criteria, each with pinned inputs, seeds and runtime ceilings.
//! `run_all` powers both the `verify-suite` CLI subcommand and the
//! acceptance integration test; every criterion reports one line.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditions::{cayley_bacharach, cb_with_respect_to_canonical, imposes_independent_conditions};
use crate::exactalg::{ExactMatrix, FieldScalar, FieldTag};
use crate::geometry::{
    admissible_types, cbconj_scan, dimension_audit, fiber_spans_hyperplane,
    fibers_over_rational_points, gamma_census, one_fiber_per_hyperplane, projection_degree,
    secant_census, GonalityReport, Verdict, DEFAULT_SUBSET_BUDGET,
};
use crate::instances::{
    planted_secant_instance, projection_from_curve_point, random_form, random_grid,
    random_invertible_matrix, random_plane_curve, random_point_set, random_space_curve,
    transform_subscheme,
};
use crate::polyring::{Form, Monomial};
use crate::schemes::{evaluation_rows, FatPoint, FiniteSubscheme, ProjectivePoint, DEFAULT_ENUM_BUDGET};

/// One criterion's outcome.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} [{:.1?}] {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed,
            self.details
        )
    }
}

pub const CRITERIA: [(u32, &str); 8] = [
    (1, "four-point-regression"),
    (2, "noether-projection"),
    (3, "formula-suite"),
    (4, "dimension-audit"),
    (5, "cbconj-scan"),
    (6, "planted-secant"),
    (7, "fiber-hyperplanes"),
    (8, "property-suites"),
];

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=8).map(run_criterion).collect()
}

pub fn run_criterion(id: u32) -> CriterionOutcome {
    let (check, limit): (fn() -> (bool, String), Option<Duration>) = match id {
        1 => (c1_four_point_regression, Some(Duration::from_millis(1))),
        2 => (c2_noether_projection, Some(Duration::from_secs(10))),
        3 => (c3_formula_suite, Some(Duration::from_secs(1))),
        4 => (c4_dimension_audit, Some(Duration::from_secs(1))),
        5 => (c5_cbconj_scan, Some(Duration::from_secs(120))),
        6 => (c6_planted_secant, Some(Duration::from_secs(60))),
        7 => (c7_fiber_hyperplanes, None),
        8 => (c8_property_suites, Some(Duration::from_secs(120))),
        _ => panic!("criterion ids run 1..=8"),
    };
    let name = CRITERIA[(id - 1) as usize].1;

    // Best of three runs for the sub-second ceilings, so a scheduler
    // hiccup does not fail an exact check.
    let attempts = if limit.map_or(false, |l| l < Duration::from_secs(5)) { 3 } else { 1 };
    let mut best: Option<(bool, String, Duration)> = None;
    for _ in 0..attempts {
        let start = Instant::now();
        let (ok, details) = check();
        let elapsed = start.elapsed();
        if best.as_ref().map_or(true, |(_, _, b)| elapsed < *b) {
            best = Some((ok, details, elapsed));
        }
        if !best.as_ref().unwrap().0 {
            break;
        }
    }
    let (mut passed, mut details, elapsed) = best.unwrap();
    if let Some(l) = limit {
        if passed && elapsed > l {
            passed = false;
            details = format!("{details}; over the {l:.0?} runtime ceiling at {elapsed:.1?}");
        }
    }
    CriterionOutcome { id, name, passed, details, elapsed }
}

/// The classical four-point configuration: three points on a line plus
/// one off it.
fn four_point_configuration() -> FiniteSubscheme {
    let q = FieldTag::rational();
    FiniteSubscheme::from_points(vec![
        ProjectivePoint::from_ints(&[1, 0, 1], q).unwrap(),
        ProjectivePoint::from_ints(&[0, 1, 1], q).unwrap(),
        ProjectivePoint::from_ints(&[1, 1, 2], q).unwrap(),
        ProjectivePoint::from_ints(&[1, 0, 0], q).unwrap(),
    ])
    .unwrap()
}

fn c1_four_point_regression() -> (bool, String) {
    let z = four_point_configuration();
    let report = match imposes_independent_conditions(&z, 1) {
        Ok(r) => r,
        Err(e) => return (false, format!("conditions failed: {e}")),
    };
    let cb = match cayley_bacharach(&z, 1) {
        Ok(b) => b,
        Err(e) => return (false, format!("cb failed: {e}")),
    };
    let ok = !report.independent && report.rank == 3 && report.failure_index == 1 && !cb;
    (
        ok,
        format!(
            "rank {}/4, independent = {}, cayley_bacharach = {}",
            report.rank, report.independent, cb
        ),
    )
}

const QUINTIC_SEED: u64 = 1;

fn c2_noether_projection() -> (bool, String) {
    let inst = match random_plane_curve(5, 101, QUINTIC_SEED, DEFAULT_ENUM_BUDGET)
        .and_then(projection_from_curve_point)
    {
        Ok(i) => i,
        Err(e) => return (false, format!("instance generation failed: {e}")),
    };
    let degree = match projection_degree(&inst.curve, &inst.center) {
        Ok(d) => d,
        Err(e) => return (false, format!("projection failed: {e}")),
    };
    if degree != 4 {
        return (false, format!("projection degree {degree}, expected 4"));
    }
    let fibration = match fibers_over_rational_points(&inst.curve, &inst.pencil) {
        Ok(f) => f,
        Err(e) => return (false, format!("fibration failed: {e}")),
    };
    if fibration.fibers.len() != 102 {
        return (false, format!("{} fibers, expected 102", fibration.fibers.len()));
    }
    let mut full = 0usize;
    let mut failures = 0usize;
    for fiber in &fibration.fibers {
        if !fiber.full {
            continue;
        }
        full += 1;
        match cb_with_respect_to_canonical(inst.curve.ci(), &fiber.points) {
            Ok(true) => {}
            Ok(false) | Err(_) => failures += 1,
        }
    }
    let ok = failures == 0 && full > 0;
    (
        ok,
        format!(
            "seed {QUINTIC_SEED}: degree 4 pencil, {} of 102 fibers reduced rational, {failures} CB failures",
            full
        ),
    )
}

fn c3_formula_suite() -> (bool, String) {
    // Spot values for type (4,5).
    let spot = GonalityReport::new(&[4, 5], None, None).unwrap();
    if spot.lazarsfeld_lower != 15
        || spot.generic_gonality != 16
        || spot.gonality_lower != 15
        || spot.gonality_upper != 17
        || spot.pencil_lower != 15
    {
        return (false, format!("type (4,5) values off: {spot:?}"));
    }
    let noether = GonalityReport::new(&[5], None, None).unwrap();
    if noether.noether != Some(4) {
        return (false, "plane quintic Noether value is not 4".to_string());
    }

    let mut checked = 0u64;
    for n in 3..=5usize {
        for degrees in admissible_types(n, 10) {
            let r = GonalityReport::new(&degrees, None, None).unwrap();
            let prod: u64 = degrees.iter().map(|&a| a as u64).product();
            let rest: u64 = degrees[1..].iter().map(|&a| a as u64).product();
            let lazarsfeld = (degrees[0] as u64 - 1) * rest;
            let generic = prod as i64 - 2 * n as i64 + 2;
            let ok = r.lazarsfeld_lower == lazarsfeld
                && r.generic_gonality == generic
                && r.gonality_lower == prod as i64 - rest as i64
                && r.gonality_upper == prod as i64 - 2 * n as i64 + 3
                && r.pencil_lower == rest as i64 * (degrees[0] as i64 - 1)
                && (r.lazarsfeld_lower as i64) <= r.generic_gonality
                && r.generic_gonality <= r.gonality_upper
                && r.pencil_lower == r.gonality_lower
                && r.hypothesis_violations.is_empty();
            if !ok {
                return (false, format!("formula mismatch at type {degrees:?}: {r:?}"));
            }
            checked += 1;
        }
    }
    (true, format!("{checked} types swept, chain and equalities exact"))
}

fn c4_dimension_audit() -> (bool, String) {
    let audit = dimension_audit(&[4, 5], 3).unwrap();
    if audit.dim_incidence_big != 88 || audit.dim_tuple_space != 89 || !audit.incidence_cannot_dominate {
        return (false, format!("type (4,5) audit off: {audit:?}"));
    }
    let mut checked = 0u64;
    for n in 3..=5usize {
        for degrees in admissible_types(n, 10) {
            let a = dimension_audit(&degrees, n).unwrap();
            if a.dim_tuple_space - a.dim_incidence_big != 1 || a.dim_incidence_small != a.dim_tuple_space || !a.binomial_condition_ok {
                return (false, format!("audit identity broken at {degrees:?}: {a:?}"));
            }
            checked += 1;
        }
    }
    (true, format!("dim Y = 88, dim Psi = 89 for (4,5); gap = 1 across {checked} types"))
}

const GRID_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

fn c5_cbconj_scan() -> (bool, String) {
    let mut lines = Vec::new();
    for &seed in &GRID_SEEDS {
        let (ci, z) = match random_grid(&[2, 2, 4], 101, seed) {
            Ok(g) => g,
            Err(e) => return (false, format!("grid seed {seed} failed: {e}")),
        };
        for e in [0u32, 1] {
            let report = match cbconj_scan(&ci, &z, e, 20) {
                Ok(r) => r,
                Err(err) => return (false, format!("scan seed {seed} e={e} failed: {err}")),
            };
            if report.verdict != Verdict::Pass {
                return (
                    false,
                    format!(
                        "seed {seed} e={e}: failing subset of size {:?} under bound {}",
                        report.min_failing_degree, report.bound
                    ),
                );
            }
            lines.push(format!(
                "seed {seed} e={e}: degree {} bound {} min_failing {:?}",
                report.tested_degree, report.bound, report.min_failing_degree
            ));
        }
    }
    (true, lines.join("; "))
}

const PLANTED_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

fn c6_planted_secant() -> (bool, String) {
    let mut found = 0usize;
    for &seed in &PLANTED_SEEDS {
        let inst = match planted_secant_instance((4, 5), 4, 101, seed, DEFAULT_ENUM_BUDGET) {
            Ok(i) => i,
            Err(e) => return (false, format!("planted seed {seed} failed: {e}")),
        };
        let census = match secant_census(&inst.curve, 4, DEFAULT_SUBSET_BUDGET) {
            Ok(c) => c,
            Err(e) => return (false, format!("census seed {seed} failed: {e}")),
        };
        if !census.iter().any(|sp| sp.plane == inst.line) {
            return (false, format!("seed {seed}: planted line missing from the census"));
        }
        let gamma = match gamma_census(&inst.curve, DEFAULT_SUBSET_BUDGET) {
            Ok(g) => g,
            Err(e) => return (false, format!("gamma seed {seed} failed: {e}")),
        };
        if gamma < 4 {
            return (false, format!("seed {seed}: gamma {gamma} below 4"));
        }
        found += 1;
    }
    (true, format!("{found}/5 planted 4-secant lines detected, gamma >= 4 on each"))
}

/// (kind, degree(s), seed): 7 plane instances and 3 space instances.
const PROJECTION_PLANE: [(u32, u64); 7] = [(4, 21), (5, 22), (6, 23), (7, 24), (4, 25), (5, 26), (6, 27)];
const PROJECTION_SPACE: [u64; 3] = [41, 42, 43];

fn c7_fiber_hyperplanes() -> (bool, String) {
    let mut instances = Vec::new();
    for &(d, seed) in &PROJECTION_PLANE {
        match random_plane_curve(d, 101, seed, DEFAULT_ENUM_BUDGET).and_then(projection_from_curve_point) {
            Ok(i) => instances.push(i),
            Err(e) => return (false, format!("plane instance d={d} seed {seed} failed: {e}")),
        }
    }
    for &seed in &PROJECTION_SPACE {
        match random_space_curve((4, 5), 101, seed, 1, DEFAULT_ENUM_BUDGET)
            .and_then(projection_from_curve_point)
        {
            Ok(i) => instances.push(i),
            Err(e) => return (false, format!("space instance seed {seed} failed: {e}")),
        }
    }

    let mut span_checked = 0usize;
    let mut compared = 0usize;
    for inst in &instances {
        let n = inst.curve.ambient_dim();
        let fibration = match fibers_over_rational_points(&inst.curve, &inst.pencil) {
            Ok(f) => f,
            Err(e) => return (false, format!("seed {}: fibration failed: {e}", inst.seed)),
        };
        for fiber in &fibration.fibers {
            if fiber.points.len() < n {
                continue;
            }
            span_checked += 1;
            match fiber_spans_hyperplane(&fiber.points) {
                Ok(true) => {}
                Ok(false) => {
                    return (
                        false,
                        format!("seed {}: a {}-point fiber fails to span a hyperplane", inst.seed, fiber.points.len()),
                    )
                }
                Err(e) => return (false, format!("seed {}: span failed: {e}", inst.seed)),
            }
        }
        match one_fiber_per_hyperplane(&inst.curve, &inst.pencil) {
            Ok(check) => {
                if !check.distinct {
                    return (false, format!("seed {}: two fibers share a hyperplane", inst.seed));
                }
                compared += check.hyperplanes;
            }
            Err(e) => return (false, format!("seed {}: hyperplane check failed: {e}", inst.seed)),
        }
    }
    (
        true,
        format!(
            "10 instances: {span_checked} large fibers span hyperplanes, {compared} hyperplane spans pairwise distinct"
        ),
    )
}

const PROPERTY_CASES: u64 = 1000;

fn c8_property_suites() -> (bool, String) {
    let suites: [(&str, fn() -> (u64, u64)); 7] = [
        ("rank-duality", suite_rank_duality),
        ("euler-relation", suite_euler_relation),
        ("cb-implies-dependent", suite_cb_implies_dependent),
        ("failure-monotonicity", suite_failure_monotonicity),
        ("pgl-invariance", suite_pgl_invariance),
        ("fiber-partition", suite_fiber_partition),
        ("scaling-invariance", suite_scaling_invariance),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, suite) in suites {
        let (cases, failures) = suite();
        if failures > 0 || cases < PROPERTY_CASES {
            ok = false;
        }
        lines.push(format!("{name}: {cases} cases, {failures} failures"));
    }
    (ok, lines.join("; "))
}

fn random_matrix(rng: &mut ChaCha8Rng, tag: FieldTag) -> ExactMatrix {
    let rows = rng.gen_range(1..=7usize);
    let cols = rng.gen_range(1..=7usize);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9i64)).collect())
        .collect();
    ExactMatrix::from_i64_rows(&data, tag)
}

fn suite_rank_duality() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let mut failures = 0;
    for case in 0..PROPERTY_CASES {
        let tag = match case % 3 {
            0 => FieldTag::rational(),
            1 => FieldTag::prime(7).unwrap(),
            _ => FieldTag::prime(101).unwrap(),
        };
        let m = random_matrix(&mut rng, tag);
        let rank = m.rank();
        let kernel_dim = m.kernel().len();
        if rank != m.transpose().rank() || rank + kernel_dim != m.cols() {
            failures += 1;
        }
    }
    (PROPERTY_CASES, failures)
}

fn suite_euler_relation() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(802);
    let mut failures = 0;
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let (tag, p) = match cases % 3 {
            0 => (FieldTag::prime(5).unwrap(), 5u64),
            1 => (FieldTag::prime(101).unwrap(), 101),
            _ => (FieldTag::prime(7).unwrap(), 7),
        };
        let n = rng.gen_range(1..=3usize);
        let d = rng.gen_range(1..=4u32);
        if d as u64 % p == 0 {
            continue;
        }
        let f = random_form(n, d, tag, &mut rng);
        let mut sum = Form::zero(n, d, tag);
        let mut broke = false;
        for i in 0..=n {
            let xi = Form::new(
                n,
                1,
                [(Monomial::variable(i, n), tag.one())].into_iter().collect(),
                tag,
            )
            .unwrap();
            match f.partial_derivative(i).mul(&xi).and_then(|t| sum.add(&t)) {
                Ok(s) => sum = s,
                Err(_) => {
                    broke = true;
                    break;
                }
            }
        }
        let expect = f.scale(&FieldScalar::from_i64(d as i64, tag));
        if broke || sum != expect {
            failures += 1;
        }
        cases += 1;
    }
    (cases, failures)
}

fn suite_cb_implies_dependent() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(803);
    let mut failures = 0;
    let mut cases = 0;
    let mut cb_true = 0u64;
    while cases < PROPERTY_CASES {
        let p = [7u64, 11, 13][(cases % 3) as usize];
        let tag = FieldTag::prime(p).unwrap();
        // Alternate grid complete intersections in the plane (which are CB
        // at the socle degree) with plain random point sets.
        let (z, m) = if cases % 2 == 0 {
            let (d1, d2) = [(2u32, 2u32), (2, 3), (3, 3)][(cases % 6 / 2) as usize];
            match random_grid(&[d1, d2], p, rng.gen()) {
                Ok((_, z)) => (z, d1 + d2 - 3),
                Err(_) => continue,
            }
        } else {
            let count = rng.gen_range(2..=7usize);
            (random_point_set(2, count, tag, &mut rng), rng.gen_range(1..=2u32))
        };
        if z.degree() < 2 {
            continue;
        }
        let Ok(cb) = cayley_bacharach(&z, m) else {
            continue;
        };
        if cb {
            cb_true += 1;
            match imposes_independent_conditions(&z, m) {
                Ok(r) if !r.independent => {}
                _ => failures += 1,
            }
        }
        cases += 1;
    }
    // The implication must be exercised, not vacuous.
    if cb_true < 100 {
        failures += 1;
    }
    (cases, failures)
}

fn suite_failure_monotonicity() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(804);
    let mut failures = 0;
    for case in 0..PROPERTY_CASES {
        let p = [7u64, 101][(case % 2) as usize];
        let tag = FieldTag::prime(p).unwrap();
        let n = rng.gen_range(2..=3usize);
        let count = rng.gen_range(2..=8usize);
        let z = random_point_set(n, count, tag, &mut rng);
        let m = rng.gen_range(1..=2u32);
        let subset_size = rng.gen_range(1..count);
        let mut indices: Vec<usize> = (0..count).collect();
        for i in (1..indices.len()).rev() {
            indices.swap(i, rng.gen_range(0..=i));
        }
        indices.truncate(subset_size);
        let gamma = z.select(&indices);
        let f_sub = imposes_independent_conditions(&gamma, m).unwrap().failure_index;
        let f_all = imposes_independent_conditions(&z, m).unwrap().failure_index;
        if f_sub > f_all {
            failures += 1;
        }
    }
    (PROPERTY_CASES, failures)
}

fn suite_pgl_invariance() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(805);
    let mut failures = 0;
    for case in 0..PROPERTY_CASES {
        let p = [7u64, 11, 101][(case % 3) as usize];
        let tag = FieldTag::prime(p).unwrap();
        let n = 2usize;
        let count = rng.gen_range(2..=6usize);
        let z = random_point_set(n, count, tag, &mut rng);
        let m = rng.gen_range(1..=2u32);
        let g = random_invertible_matrix(n, tag, &mut rng);
        let moved = transform_subscheme(&z, &g).unwrap();
        let before = imposes_independent_conditions(&z, m).unwrap();
        let after = imposes_independent_conditions(&moved, m).unwrap();
        let cb_before = cayley_bacharach(&z, m).unwrap();
        let cb_after = cayley_bacharach(&moved, m).unwrap();
        if before.rank != after.rank || cb_before != cb_after {
            failures += 1;
        }
    }
    (PROPERTY_CASES, failures)
}

fn suite_fiber_partition() -> (u64, u64) {
    let mut failures = 0;
    let mut cases = 0u64;
    let mut seed = 0u64;
    while cases < PROPERTY_CASES && seed < 20 * PROPERTY_CASES {
        seed += 1;
        let p = [5u64, 7, 11, 13][(seed % 4) as usize];
        let d = 3 + (seed % 3) as u32;
        let Ok(plane) = random_plane_curve(d, p, seed, DEFAULT_ENUM_BUDGET) else {
            continue;
        };
        let Ok(inst) = projection_from_curve_point(plane) else {
            continue;
        };
        let Ok(fibration) = fibers_over_rational_points(&inst.curve, &inst.pencil) else {
            continue;
        };
        let total: usize = fibration.fibers.iter().map(|f| f.points.len()).sum();
        let mut seen = std::collections::BTreeSet::new();
        for f in &fibration.fibers {
            for fp in f.points.points() {
                seen.insert(fp.base().clone());
            }
        }
        let expected = inst.curve.points().len() - fibration.center_points.len();
        let degree_identity = fibration.pencil_degree + fibration.center_points.len() as u64
            == inst.curve.degree();
        if total != expected || seen.len() != total || !degree_identity {
            failures += 1;
        }
        cases += 1;
    }
    (cases, failures)
}

fn suite_scaling_invariance() -> (u64, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(807);
    let mut failures = 0;
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let p = [7u64, 101][(cases % 2) as usize];
        let tag = FieldTag::prime(p).unwrap();
        let n = rng.gen_range(2..=3usize);
        let count = rng.gen_range(1..=4usize);
        let base_points = random_point_set(n, count, tag, &mut rng);
        // Give each point a tangent direction, then perturb the tangents by
        // scaling and by adding multiples of the base point.
        let mut original = Vec::new();
        let mut perturbed = Vec::new();
        let mut bad = false;
        for fp in base_points.points() {
            let coords = fp.base().coords();
            let tangent: Vec<FieldScalar> = (0..=n)
                .map(|_| FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag))
                .collect();
            let Ok(fat) = FatPoint::with_tangent(fp.base().clone(), tangent.clone()) else {
                bad = true;
                break;
            };
            let c = FieldScalar::from_i64(rng.gen_range(1..p) as i64, tag);
            let d = FieldScalar::from_i64(rng.gen_range(0..p) as i64, tag);
            let moved: Vec<FieldScalar> = tangent
                .iter()
                .zip(coords)
                .map(|(t, b)| c.mul(t).add(&d.mul(b)))
                .collect();
            let Ok(fat2) = FatPoint::with_tangent(fp.base().clone(), moved) else {
                bad = true;
                break;
            };
            original.push(fat);
            perturbed.push(fat2);
        }
        if bad {
            continue;
        }
        let za = FiniteSubscheme::new(original).unwrap();
        let zb = FiniteSubscheme::new(perturbed).unwrap();
        let m = rng.gen_range(1..=2u32);
        if evaluation_rows(&za, m).unwrap().rank() != evaluation_rows(&zb, m).unwrap().rank() {
            failures += 1;
        }
        cases += 1;
    }
    (cases, failures)
}
