//! Homogeneous multivariate polynomials in `n+1` variables `x0..xn`.
//!
//! Forms store only their nonzero terms, keyed by monomial in a fixed
//! graded-lexicographic order; every evaluation-matrix column order in the
//! toolkit derives from that order. No Groebner machinery anywhere: all
//! ideal-theoretic questions downstream are answered inside a single graded
//! piece by linear algebra.

mod parse;

pub use parse::parse_form;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{FieldScalar, FieldTag};

/// Exponent vector of a monomial in variables `x0..xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `n+1` variables.
    pub fn unit(n: usize) -> Self {
        Monomial { exps: vec![0; n + 1] }
    }

    pub fn variable(i: usize, n: usize) -> Self {
        let mut exps = vec![0; n + 1];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Evaluates the monomial at a coordinate vector.
    pub fn evaluate(&self, coords: &[FieldScalar], tag: FieldTag) -> FieldScalar {
        let mut acc = tag.one();
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&coords[i].pow(e));
            }
        }
        acc
    }
}

impl Ord for Monomial {
    /// Graded order: lower total degree first; within a degree, descending
    /// lexicographic on the exponent vector, so that `x0^d` comes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Binomial coefficient with u128 intermediates; panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// All monomials of degree `d` in `n+1` variables, in the toolkit's fixed
/// graded-lexicographic order. The length is `C(n+d, n)`.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    assert!(n >= 1, "ambient dimension must be at least 1");
    let mut out = Vec::with_capacity(binomial((n as u64) + (d as u64), n as u64) as usize);
    let mut current = vec![0u32; n + 1];
    descend(&mut out, &mut current, 0, d);
    out
}

fn descend(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        current[var] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        descend(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// A homogeneous polynomial of known degree, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    n: usize,
    degree: u32,
    terms: BTreeMap<Monomial, FieldScalar>,
    tag: FieldTag,
}

impl Form {
    /// Builds a form from terms, dropping zero coefficients and verifying
    /// homogeneity against `degree`.
    pub fn new(n: usize, degree: u32, terms: BTreeMap<Monomial, FieldScalar>, tag: FieldTag) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            tag.ensure_same(&c.tag())?;
            if m.num_vars() != n + 1 {
                return Err(Error::DimensionMismatch { expected: n + 1, got: m.num_vars() });
            }
            if m.degree() != degree {
                return Err(Error::NotHomogeneous(degree, m.degree()));
            }
            clean.insert(m, c);
        }
        Ok(Form { n, degree, terms: clean, tag })
    }

    pub fn zero(n: usize, degree: u32, tag: FieldTag) -> Self {
        Form { n, degree, terms: BTreeMap::new(), tag }
    }

    /// The linear form with the given `n+1` coefficients.
    pub fn linear(coeffs: &[FieldScalar], tag: FieldTag) -> Result<Self> {
        let n = coeffs.len() - 1;
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Monomial::variable(i, n), c.clone());
            }
        }
        Form::new(n, 1, terms, tag)
    }

    /// Builds a degree-`d` form from a coefficient vector indexed by
    /// `monomial_basis(n, d)`.
    pub fn from_coeff_vector(n: usize, d: u32, coeffs: &[FieldScalar], tag: FieldTag) -> Result<Self> {
        let basis = monomial_basis(n, d);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), got: coeffs.len() });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in basis.into_iter().zip(coeffs) {
            if !c.is_zero() {
                terms.insert(m, c.clone());
            }
        }
        Form::new(n, d, terms, tag)
    }

    /// The coefficient vector with respect to `monomial_basis(n, degree)`.
    pub fn coeff_vector(&self) -> Vec<FieldScalar> {
        monomial_basis(self.n, self.degree)
            .into_iter()
            .map(|m| self.terms.get(&m).cloned().unwrap_or_else(|| self.tag.zero()))
            .collect()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldScalar)> {
        self.terms.iter()
    }

    /// Exact evaluation at a coordinate vector of length `n+1`.
    pub fn evaluate(&self, coords: &[FieldScalar]) -> Result<FieldScalar> {
        if coords.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: coords.len() });
        }
        for c in coords {
            self.tag.ensure_same(&c.tag())?;
        }
        let mut acc = self.tag.zero();
        for (m, c) in &self.terms {
            acc = acc.add(&c.mul(&m.evaluate(coords, self.tag)));
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to `x_i`; homogeneous of
    /// degree `d-1` (the zero form when `d = 0`).
    pub fn partial_derivative(&self, i: usize) -> Form {
        assert!(i <= self.n, "variable index out of range");
        let new_degree = self.degree.saturating_sub(1);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            let coeff = c.mul(&FieldScalar::from_i64(e as i64, self.tag));
            if coeff.is_zero() {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            terms.insert(Monomial::new(exps), coeff);
        }
        Form { n: self.n, degree: new_degree, terms, tag: self.tag }
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.compatible(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::NotHomogeneous(self.degree, other.degree));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(|| self.tag.zero());
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Form { n: self.n, degree, terms, tag: self.tag })
    }

    pub fn scale(&self, c: &FieldScalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.degree, self.tag);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect();
        Form { n: self.n, degree: self.degree, terms, tag: self.tag }
    }

    /// Product of two forms; degrees add. Needed to assemble grid complete
    /// intersections out of linear factors.
    pub fn mul(&self, other: &Form) -> Result<Form> {
        self.compatible(other)?;
        let mut terms: BTreeMap<Monomial, FieldScalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                let entry = terms.entry(m).or_insert_with(|| self.tag.zero());
                *entry = entry.add(&c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Form {
            n: self.n,
            degree: self.degree + other.degree,
            terms,
            tag: self.tag,
        })
    }

    /// Sum of `coeffs[i] * forms[i]`; all forms must share degree and tag.
    pub fn linear_combination(coeffs: &[FieldScalar], forms: &[Form]) -> Result<Form> {
        assert_eq!(coeffs.len(), forms.len());
        let first = forms.first().expect("nonempty combination");
        let mut acc = Form::zero(first.n, first.degree, first.tag);
        for (c, f) in coeffs.iter().zip(forms) {
            acc = acc.add(&f.scale(c))?;
        }
        Ok(acc)
    }

    fn compatible(&self, other: &Form) -> Result<()> {
        self.tag.ensure_same(&other.tag)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        Ok(())
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
