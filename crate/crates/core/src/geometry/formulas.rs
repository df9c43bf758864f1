//! Gonality formulas and bounds for complete intersection curves, and the
//! dimension count behind the generic secant census.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::binomial;

/// Exact integer values of every gonality formula and bound the toolkit
/// knows, for a complete intersection curve of type (a_1, ..., a_{n-1})
/// in P^n.
///
/// Surface convention: unless overridden, the curve is viewed on the
/// surface cut by all forms but the first, so `deg_surface` is
/// `a_2 * ... * a_{n-1}` and `alpha = a_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GonalityReport {
    pub degrees: Vec<u32>,
    /// Ambient projective dimension n = (number of degrees) + 1.
    pub ambient_dim: usize,
    /// deg C = product of the type degrees.
    pub deg_curve: u64,
    pub deg_surface: u64,
    pub alpha: u64,
    /// Lower bound (a_1 - 1) * a_2 * ... * a_{n-1}.
    pub lazarsfeld_lower: u64,
    /// Gonality of the general curve of this type: deg C - 2n + 2.
    pub generic_gonality: i64,
    /// Lower bound deg C - deg S.
    pub gonality_lower: i64,
    /// Upper bound deg C - 2n + 3 (linearly normal case).
    pub gonality_upper: i64,
    /// Every base-point-free pencil has degree at least deg S * (alpha - 1).
    pub pencil_lower: i64,
    /// The plane-curve value d - 1, present when n = 2.
    pub noether: Option<u64>,
    /// A census value for gamma, when one was supplied.
    pub gamma: Option<u64>,
    /// gon C = deg C - gamma, when gamma was supplied.
    pub gonality_from_gamma: Option<i64>,
    /// Formula hypotheses this type violates; values above are still the
    /// plain formula evaluations.
    pub hypothesis_violations: Vec<String>,
}

impl GonalityReport {
    /// Evaluates every formula for a type with `2 <= a_1 <= ... <= a_{n-1}`.
    /// `surface` overrides the (deg S, alpha) convention.
    pub fn new(degrees: &[u32], gamma: Option<u64>, surface: Option<(u64, u64)>) -> Result<Self> {
        if degrees.is_empty() || degrees[0] < 2 || degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::DegreeOrderViolation);
        }
        let n = degrees.len() + 1;
        let deg_curve: u64 = degrees.iter().map(|&a| a as u64).product();
        let rest: u64 = degrees[1..].iter().map(|&a| a as u64).product();
        let (deg_surface, alpha) = surface.unwrap_or((rest, degrees[0] as u64));

        let mut violations = Vec::new();
        if n < 3 {
            violations.push("ambient dimension below 3".to_string());
        }
        if degrees[0] < 4 {
            violations.push(format!("a_1 = {} is below 4", degrees[0]));
        }
        if degrees.len() >= 2 && degrees[0] == degrees[1] {
            violations.push("a_1 = a_2 breaks the strict inequality".to_string());
        }

        Ok(GonalityReport {
            degrees: degrees.to_vec(),
            ambient_dim: n,
            deg_curve,
            deg_surface,
            alpha,
            lazarsfeld_lower: (degrees[0] as u64 - 1) * rest,
            generic_gonality: deg_curve as i64 - 2 * n as i64 + 2,
            gonality_lower: deg_curve as i64 - deg_surface as i64,
            gonality_upper: deg_curve as i64 - 2 * n as i64 + 3,
            pencil_lower: deg_surface as i64 * (alpha as i64 - 1),
            noether: (n == 2).then(|| deg_curve - 1),
            gamma,
            gonality_from_gamma: gamma.map(|g| deg_curve as i64 - g as i64),
            hypothesis_violations: violations,
        })
    }
}

/// The dimension count behind the generic-gonality value: compares the
/// space of defining hypersurface tuples with the incidence loci of tuples
/// whose intersection carries a curvilinear subscheme of 2n-1 (or 2n-2)
/// points inside an (n-2)-plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionAudit {
    pub degrees: Vec<u32>,
    pub ambient_dim: usize,
    /// C(a_i + n, n) for each i.
    pub binomials: Vec<u64>,
    /// Dimension of the tuple fibers over the (plane, subscheme) pairs.
    pub fiber_dim: i64,
    /// Incidence locus for (2n-1)-point subschemes.
    pub dim_incidence_big: i64,
    /// Incidence locus for (2n-2)-point subschemes.
    pub dim_incidence_small: i64,
    /// The space of all defining hypersurface tuples.
    pub dim_tuple_space: i64,
    /// dim_incidence_big < dim_tuple_space: the general curve of this type
    /// has no (2n-1)-secant (n-2)-plane.
    pub incidence_cannot_dominate: bool,
    /// C(a_i + n, n) > 2n - 1 for all i.
    pub binomial_condition_ok: bool,
    /// C(a_i + n, n) >= 4n - 4 for all i (room for the planted subscheme).
    pub planted_condition_ok: bool,
    pub hypothesis_violations: Vec<String>,
}

/// Reproduces the dimension formulas exactly. Hypothesis violations
/// (a_i < 4 or n < 3) are reported, not fatal.
pub fn dimension_audit(degrees: &[u32], n: usize) -> Result<DimensionAudit> {
    if degrees.is_empty() || degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::DegreeOrderViolation);
    }
    if n != degrees.len() + 1 {
        return Err(Error::RangeViolation(format!(
            "{} degrees need ambient dimension {}, got {n}",
            degrees.len(),
            degrees.len() + 1
        )));
    }
    let mut violations = Vec::new();
    if n < 3 {
        violations.push("ambient dimension below 3".to_string());
    }
    for &a in degrees {
        if a < 4 {
            violations.push(format!("degree {a} is below 4"));
        }
    }

    let n_i = n as i64;
    let binomials: Vec<u64> = degrees.iter().map(|&a| binomial(a as u64 + n as u64, n as u64)).collect();
    let binomial_sum: i64 = binomials.iter().map(|&b| b as i64).sum();
    // Fibers: tuples through a fixed subscheme of 2n-1 points imposing
    // independent conditions on each degree.
    let fiber_dim = -2 * n_i * n_i + 2 * n_i + binomial_sum;
    // Base: the planes (dimension 2(n-1)) times the curvilinear subschemes
    // of a fixed plane (dimension (2n-1)(n-2)).
    let dim_incidence_big = 2 * (n_i - 1) + (2 * n_i - 1) * (n_i - 2) + fiber_dim;
    let dim_tuple_space = binomial_sum - n_i + 1;
    let dim_incidence_small = binomial_sum - n_i + 1;

    Ok(DimensionAudit {
        degrees: degrees.to_vec(),
        ambient_dim: n,
        binomial_condition_ok: binomials.iter().all(|&b| b > 2 * n as u64 - 1),
        planted_condition_ok: binomials.iter().all(|&b| b >= 4 * n as u64 - 4),
        binomials,
        fiber_dim,
        dim_incidence_big,
        dim_incidence_small,
        dim_tuple_space,
        incidence_cannot_dominate: dim_incidence_big < dim_tuple_space,
        hypothesis_violations: violations,
    })
}

/// All ascending degree tuples with `4 <= a_1 < a_2 <= ... <= a_{n-1} <= max`.
pub fn admissible_types(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let len = n - 1;
    let mut current = Vec::with_capacity(len);
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, len: usize, max: u32) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        let lo = match current.len() {
            0 => 4,
            1 => current[0] + 1,
            _ => *current.last().unwrap(),
        };
        for a in lo..=max {
            current.push(a);
            rec(out, current, len, max);
            current.pop();
        }
    }
    rec(&mut out, &mut current, len, max);
    out
}
