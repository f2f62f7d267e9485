//! Truncated multivariate power series with exact coefficients.
//!
//! [`MultiIndex`] orders monomials canonically: ascending total degree, and
//! within a degree by descending exponent vector (`t1`-major), so iteration
//! and serialization are graded-lexicographic with `t1 > t2 > ...`.
//! [`VectorSeries`] carries vector coefficients (elements of one graded
//! piece); [`ScalarPoly`] carries scalar coefficients and is used for the
//! obstruction generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exactlin::{vec_add, vec_is_zero, vec_scale, vec_sub, Matrix, Scalar};

/// Exponent vector of a monomial in `t1..tn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(num_vars: usize) -> Self {
        MultiIndex(vec![0; num_vars])
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        MultiIndex(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `t1^2*t2` style rendering; `1` for the empty monomial.
    pub fn monomial_string(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("t{}", i + 1)
                } else {
                    format!("t{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over the scalar field, in canonical monomial
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarPoly {
    num_vars: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl ScalarPoly {
    pub fn zero(num_vars: usize) -> Self {
        ScalarPoly {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let mut poly = Self::zero(num_vars);
        poly.add_term(MultiIndex::zero(num_vars), c);
        poly
    }

    pub fn variable(num_vars: usize, var: usize) -> Self {
        let mut poly = Self::zero(num_vars);
        poly.add_term(MultiIndex::unit(num_vars, var), Scalar::one());
        poly
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        assert_eq!(m.num_vars(), self.num_vars, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> ScalarPoly {
        let mut out = ScalarPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * factor);
        }
        out
    }

    /// Product, dropping every term above `max_total` when given.
    pub fn mul_truncated(&self, other: &ScalarPoly, max_total: Option<usize>) -> ScalarPoly {
        let mut out = ScalarPoly::zero(self.num_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.add(mb);
                if max_total.is_some_and(|limit| m.total() > limit) {
                    continue;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Substitutes `t -> T t` (each variable `t_i` becomes row `i` of `T`
    /// dotted with the variables), truncating above `max_total`.
    pub fn substitute_linear(&self, t: &Matrix, max_total: Option<usize>) -> ScalarPoly {
        let mut out = ScalarPoly::zero(self.num_vars);
        for (m, c) in &self.terms {
            let expanded = expand_monomial(m, t, max_total);
            for (mm, cc) in &expanded.terms {
                out.add_term(mm.clone(), cc * c);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.num_vars, "point arity mismatch");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            acc += &(c * &monomial_value(m, point));
        }
        acc
    }
}

/// `t^m` after the substitution `t -> T t`: the truncated product of the
/// substituted linear forms.
fn expand_monomial(m: &MultiIndex, t: &Matrix, max_total: Option<usize>) -> ScalarPoly {
    let n = m.num_vars();
    assert_eq!(t.rows(), n, "substitution matrix must be square of size n");
    assert_eq!(t.cols(), n, "substitution matrix must be square of size n");
    let mut out = ScalarPoly::constant(n, Scalar::one());
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut linear = ScalarPoly::zero(n);
        for j in 0..n {
            let c = t.get(i, j);
            if !c.is_zero() {
                linear.add_term(MultiIndex::unit(n, j), c.clone());
            }
        }
        for _ in 0..e {
            out = out.mul_truncated(&linear, max_total);
        }
    }
    out
}

fn monomial_value(m: &MultiIndex, point: &[Scalar]) -> Scalar {
    let mut acc = Scalar::one();
    for (i, &e) in m.exponents().iter().enumerate() {
        for _ in 0..e {
            acc = &acc * &point[i];
        }
    }
    acc
}

fn scalar_term(c: &Scalar) -> String {
    if c.im().is_zero() {
        c.to_string()
    } else {
        format!("({c})")
    }
}

/// Terms in canonical order joined by ` + `, e.g. `2*t1*t2`, `(2*i)*t1^2 + -1*t2`.
impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.total() == 0 {
                    scalar_term(c)
                } else {
                    format!("{}*{}", scalar_term(c), m.monomial_string())
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Truncated power series whose coefficients are coordinate vectors of a
/// fixed length (one graded piece). Only nonzero coefficients are stored;
/// every stored multi-index has total degree at most `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSeries {
    num_vars: usize,
    coeff_len: usize,
    order: usize,
    coeffs: BTreeMap<MultiIndex, Vec<Scalar>>,
}

impl VectorSeries {
    pub fn zero(num_vars: usize, coeff_len: usize, order: usize) -> Self {
        VectorSeries {
            num_vars,
            coeff_len,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coeff_len(&self) -> usize {
        self.coeff_len
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Vec<Scalar>)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Vec<Scalar> {
        self.coeffs
            .get(m)
            .cloned()
            .unwrap_or_else(|| vec![Scalar::zero(); self.coeff_len])
    }

    pub fn set_coeff(&mut self, m: MultiIndex, v: Vec<Scalar>) {
        assert_eq!(m.num_vars(), self.num_vars, "variable count mismatch");
        assert_eq!(v.len(), self.coeff_len, "coefficient length mismatch");
        assert!(m.total() <= self.order, "multi-index above truncation order");
        if vec_is_zero(&v) {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, v);
        }
    }

    pub fn add_coeff(&mut self, m: MultiIndex, v: &[Scalar]) {
        let current = self.coeff(&m);
        self.set_coeff(m, vec_add(&current, v));
    }

    pub fn add(&self, other: &VectorSeries) -> VectorSeries {
        self.combine(other, vec_add)
    }

    pub fn sub(&self, other: &VectorSeries) -> VectorSeries {
        self.combine(other, vec_sub)
    }

    fn combine(
        &self,
        other: &VectorSeries,
        op: fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    ) -> VectorSeries {
        assert_eq!(self.num_vars, other.num_vars, "variable count mismatch");
        assert_eq!(self.coeff_len, other.coeff_len, "coefficient length mismatch");
        assert_eq!(self.order, other.order, "truncation order mismatch");
        let mut out = VectorSeries::zero(self.num_vars, self.coeff_len, self.order);
        let keys: std::collections::BTreeSet<&MultiIndex> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        for m in keys {
            out.set_coeff(m.clone(), op(&self.coeff(m), &other.coeff(m)));
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> VectorSeries {
        let mut out = VectorSeries::zero(self.num_vars, self.coeff_len, self.order);
        for (m, v) in &self.coeffs {
            out.set_coeff(m.clone(), vec_scale(v, factor));
        }
        out
    }

    /// The homogeneous part of total degree `k`.
    pub fn homogeneous_part(&self, k: usize) -> Vec<(&MultiIndex, &Vec<Scalar>)> {
        self.coeffs.iter().filter(|(m, _)| m.total() == k).collect()
    }

    /// Applies a linear map to every coefficient.
    pub fn apply_matrix(&self, map: &Matrix) -> VectorSeries {
        assert_eq!(map.cols(), self.coeff_len, "operator shape mismatch");
        let mut out = VectorSeries::zero(self.num_vars, map.rows(), self.order);
        for (m, v) in &self.coeffs {
            out.set_coeff(m.clone(), map.mul_vec(v));
        }
        out
    }

    /// Substitutes `t -> T t`, re-truncating at the series order.
    pub fn substitute_linear(&self, t: &Matrix) -> VectorSeries {
        let mut out = VectorSeries::zero(self.num_vars, self.coeff_len, self.order);
        for (m, v) in &self.coeffs {
            let expanded = expand_monomial(m, t, Some(self.order));
            for (mm, c) in expanded.terms() {
                out.add_coeff(mm.clone(), &vec_scale(v, c));
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(point.len(), self.num_vars, "point arity mismatch");
        let mut acc = vec![Scalar::zero(); self.coeff_len];
        for (m, v) in &self.coeffs {
            let weight = monomial_value(m, point);
            acc = vec_add(&acc, &vec_scale(v, &weight));
        }
        acc
    }

    /// One scalar polynomial per coefficient slot.
    pub fn component_polys(&self) -> Vec<ScalarPoly> {
        let mut polys = vec![ScalarPoly::zero(self.num_vars); self.coeff_len];
        for (m, v) in &self.coeffs {
            for (slot, c) in v.iter().enumerate() {
                polys[slot].add_term(m.clone(), c.clone());
            }
        }
        polys
    }
}
