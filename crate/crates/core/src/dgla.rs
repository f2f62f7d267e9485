//! Finite-dimensional differential graded Lie algebras.
//!
//! A model is a graded vector space over `Q(i)` in degrees `0..=D`, a
//! degree-raising differential with `d\u{b2} = 0`, and a graded bracket given by
//! structure constants. The bracket table stores one representative per
//! unordered pair (`p < q`, or `p == q` and `i <= j`); the other order is
//! derived from graded antisymmetry `[a,b] = -(-1)^{|a||b|}[b,a]`. Brackets
//! whose result would land above the top degree are zero: degrees above `D`
//! are zero-dimensional.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactlin::{vec_add, vec_is_zero, vec_scale, vec_sub, Matrix, Scalar};
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum DglaError {
    #[error("expected {expected} differential matrices (one per degree below the top), got {got}")]
    DifferentialCount { expected: usize, got: usize },
    #[error("differential out of degree {p} must be {rows}x{cols}, got {actual_rows}x{actual_cols}")]
    DifferentialShape {
        p: usize,
        rows: usize,
        cols: usize,
        actual_rows: usize,
        actual_cols: usize,
    },
    #[error("bracket entry ({p},{i},{q},{j}) violates the storage rule (p < q, or p == q and i <= j)")]
    BracketKeyOrder { p: usize, i: usize, q: usize, j: usize },
    #[error("bracket entry ({p},{i},{q},{j}) has an index out of range")]
    BracketIndex { p: usize, i: usize, q: usize, j: usize },
    #[error("bracket entry ({p},{i},{q},{j}) targets degree {target} which has dimension 0")]
    BracketTarget {
        p: usize,
        i: usize,
        q: usize,
        j: usize,
        target: usize,
    },
    #[error("duplicate bracket entry ({p},{i},{q},{j})")]
    BracketDuplicate { p: usize, i: usize, q: usize, j: usize },
    #[error("element has degree {got}, expected {expected}")]
    WrongDegree { expected: usize, got: usize },
    #[error("element of degree {degree} has {got} coordinates, expected {expected}")]
    CoordLength {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("label list for degree {degree} must have {expected} unique names, got {got}")]
    Labels {
        degree: usize,
        expected: usize,
        got: usize,
    },
}

/// Graded vector space: one dimension per degree `0..=D`, with unique basis
/// labels per degree. Degrees above `D` are implicitly zero-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVectorSpace {
    dims: Vec<usize>,
    labels: Vec<Vec<String>>,
}

impl GradedVectorSpace {
    /// Space with auto-generated labels `e{degree}_{index}` (1-based index).
    pub fn new(dims: Vec<usize>) -> Self {
        assert!(!dims.is_empty(), "need at least degree 0");
        let labels = dims
            .iter()
            .enumerate()
            .map(|(p, &n)| (1..=n).map(|i| format!("e{p}_{i}")).collect())
            .collect();
        GradedVectorSpace { dims, labels }
    }

    pub fn with_labels(dims: Vec<usize>, labels: Vec<Vec<String>>) -> Result<Self, DglaError> {
        assert!(!dims.is_empty(), "need at least degree 0");
        if labels.len() != dims.len() {
            return Err(DglaError::Labels {
                degree: labels.len(),
                expected: dims.len(),
                got: labels.len(),
            });
        }
        for (p, names) in labels.iter().enumerate() {
            let expected = dims[p];
            let mut unique: Vec<&String> = names.iter().collect();
            unique.sort();
            unique.dedup();
            if names.len() != expected || unique.len() != names.len() {
                return Err(DglaError::Labels {
                    degree: p,
                    expected,
                    got: names.len(),
                });
            }
        }
        Ok(GradedVectorSpace { dims, labels })
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// Dimension in degree `p`; zero above the top degree.
    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn label(&self, p: usize, i: usize) -> &str {
        &self.labels[p][i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Homogeneous element: a degree and its coordinate column in that degree's
/// basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedElement {
    pub degree: usize,
    pub coords: Vec<Scalar>,
}

impl GradedElement {
    pub fn new(degree: usize, coords: Vec<Scalar>) -> Self {
        GradedElement { degree, coords }
    }

    pub fn zero(space: &GradedVectorSpace, degree: usize) -> Self {
        GradedElement {
            degree,
            coords: vec![Scalar::zero(); space.dim(degree)],
        }
    }

    pub fn basis(space: &GradedVectorSpace, degree: usize, index: usize) -> Self {
        let mut e = Self::zero(space, degree);
        e.coords[index] = Scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coords)
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        GradedElement {
            degree: self.degree,
            coords: vec_add(&self.coords, &other.coords),
        }
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        GradedElement {
            degree: self.degree,
            coords: vec_sub(&self.coords, &other.coords),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> GradedElement {
        GradedElement {
            degree: self.degree,
            coords: vec_scale(&self.coords, factor),
        }
    }
}

type BracketKey = (usize, usize, usize, usize);

/// A finite-dimensional DGLA: graded space, differential, bracket table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dgla {
    space: GradedVectorSpace,
    /// `diff[p]`: matrix of `d_p: dim(p) -> dim(p+1)` for every `p in 0..=D`;
    /// the top entry has zero rows.
    diff: Vec<Matrix>,
    table: BTreeMap<BracketKey, Vec<(usize, Scalar)>>,
}

impl Dgla {
    /// Builds a structurally well-formed model. `diff` gives `d_p` for
    /// `p in 0..D` (the top-degree map is the zero map and is appended
    /// automatically). Shape mismatches and bad bracket entries are format
    /// errors; the algebraic axioms are checked separately by
    /// [`validate`](Self::validate).
    pub fn new(
        space: GradedVectorSpace,
        diff: Vec<Matrix>,
        bracket: Vec<(BracketKey, Vec<(usize, Scalar)>)>,
    ) -> Result<Self, DglaError> {
        let top = space.max_degree();
        if diff.len() != top {
            return Err(DglaError::DifferentialCount {
                expected: top,
                got: diff.len(),
            });
        }
        let mut full = diff;
        full.push(Matrix::zero(0, space.dim(top)));
        for (p, m) in full.iter().enumerate() {
            let rows = space.dim(p + 1);
            let cols = space.dim(p);
            if m.rows() != rows || m.cols() != cols {
                return Err(DglaError::DifferentialShape {
                    p,
                    rows,
                    cols,
                    actual_rows: m.rows(),
                    actual_cols: m.cols(),
                });
            }
        }
        let mut table = BTreeMap::new();
        for ((p, i, q, j), out) in bracket {
            let canonical = p < q || (p == q && i <= j);
            if !canonical {
                return Err(DglaError::BracketKeyOrder { p, i, q, j });
            }
            if i >= space.dim(p) || j >= space.dim(q) {
                return Err(DglaError::BracketIndex { p, i, q, j });
            }
            let target = p + q;
            let target_dim = space.dim(target);
            let mut combined: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, c) in out {
                if k >= target_dim {
                    return Err(DglaError::BracketTarget { p, i, q, j, target });
                }
                let slot = combined.entry(k).or_insert_with(Scalar::zero);
                *slot += &c;
            }
            let entry: Vec<(usize, Scalar)> = combined
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if table.insert((p, i, q, j), entry).is_some() {
                return Err(DglaError::BracketDuplicate { p, i, q, j });
            }
        }
        Ok(Dgla { space, diff: full, table })
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn max_degree(&self) -> usize {
        self.space.max_degree()
    }

    /// Matrix of `d_p` (zero-row matrix at the top degree).
    pub fn differential_matrix(&self, p: usize) -> &Matrix {
        &self.diff[p]
    }

    /// Stored half-table, in canonical key order.
    pub fn bracket_table(&self) -> &BTreeMap<BracketKey, Vec<(usize, Scalar)>> {
        &self.table
    }

    /// `[e_i^p, e_j^q]` as `(k, coefficient)` pairs, extending the stored
    /// half-table by the antisymmetry sign; empty above the top degree.
    pub fn structure_constants(&self, p: usize, i: usize, q: usize, j: usize) -> Vec<(usize, Scalar)> {
        if p + q > self.max_degree() {
            return Vec::new();
        }
        if p < q || (p == q && i <= j) {
            return self.table.get(&(p, i, q, j)).cloned().unwrap_or_default();
        }
        // [e_i^p, e_j^q] = -(-1)^{pq} [e_j^q, e_i^p]
        let stored = self.table.get(&(q, j, p, i)).cloned().unwrap_or_default();
        let flip = (p * q) % 2 == 0;
        stored
            .into_iter()
            .map(|(k, c)| (k, if flip { -&c } else { c }))
            .collect()
    }

    /// Bilinear extension of the structure constants. Total map: results
    /// above the top degree are the zero element of a zero-dimensional space.
    pub fn bracket(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        self.check_coords(a);
        self.check_coords(b);
        let target = a.degree + b.degree;
        let mut out = GradedElement::zero(&self.space, target);
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let factor = ai * bj;
                for (k, c) in self.structure_constants(a.degree, i, b.degree, j) {
                    out.coords[k] += &(&factor * &c);
                }
            }
        }
        out
    }

    /// Applies the differential; on the top degree this is the zero map into
    /// the zero space above it.
    pub fn differential(&self, a: &GradedElement) -> GradedElement {
        self.check_coords(a);
        if a.degree >= self.diff.len() {
            return GradedElement::new(a.degree + 1, Vec::new());
        }
        GradedElement::new(a.degree + 1, self.diff[a.degree].mul_vec(&a.coords))
    }

    /// Maurer-Cartan residual `d a - 1/2 [a, a]` of a degree-1 element.
    pub fn mc_residual(&self, a: &GradedElement) -> Result<GradedElement, DglaError> {
        if a.degree != 1 {
            return Err(DglaError::WrongDegree {
                expected: 1,
                got: a.degree,
            });
        }
        self.check_coords(a);
        let half = Scalar::from_ratio(1, 2);
        Ok(self.differential(a).sub(&self.bracket(a, a).scale(&half)))
    }

    fn check_coords(&self, a: &GradedElement) {
        assert_eq!(
            a.coords.len(),
            self.space.dim(a.degree),
            "coordinate length does not match the dimension of degree {}",
            a.degree
        );
    }

    fn pair_label(&self, p: usize, i: usize, q: usize, j: usize) -> String {
        format!("({}, {})", self.space.label(p, i), self.space.label(q, j))
    }

    /// Checks the four structure axioms exhaustively on basis tuples:
    /// `d^2 = 0`, antisymmetry consistency of the stored table, graded
    /// Jacobi, and graded Leibniz. Each check reports the first violating
    /// tuple.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let top = self.max_degree();

        let mut witness = None;
        'dsq: for p in 0..top {
            let square = &self.diff[p + 1] * &self.diff[p];
            for j in 0..square.cols() {
                if !vec_is_zero(&square.col(j)) {
                    witness = Some(format!("d(d {}) != 0", self.space.label(p, j)));
                    break 'dsq;
                }
            }
        }
        report.record("d_squared", witness);

        // Even-degree diagonal entries are forced to zero by antisymmetry:
        // [a,a] = -(-1)^{p^2}[a,a] = -[a,a] for even p.
        let mut witness = None;
        for ((p, i, q, j), out) in &self.table {
            if p == q && i == j && p % 2 == 0 && !out.is_empty() {
                witness = Some(format!(
                    "[{l}, {l}] must vanish in even degree {p}",
                    l = self.space.label(*p, *i)
                ));
                break;
            }
        }
        report.record("antisymmetry", witness);

        let mut witness = None;
        'jacobi: for p in 0..=top {
            for i in 0..self.space.dim(p) {
                let a = GradedElement::basis(&self.space, p, i);
                for q in 0..=top {
                    for j in 0..self.space.dim(q) {
                        let b = GradedElement::basis(&self.space, q, j);
                        for r in 0..=top {
                            for k in 0..self.space.dim(r) {
                                let c = GradedElement::basis(&self.space, r, k);
                                if !self.jacobi_holds(&a, &b, &c) {
                                    witness = Some(format!(
                                        "triple ({}, {}, {})",
                                        self.space.label(p, i),
                                        self.space.label(q, j),
                                        self.space.label(r, k)
                                    ));
                                    break 'jacobi;
                                }
                            }
                        }
                    }
                }
            }
        }
        report.record("jacobi", witness);

        let mut witness = None;
        'leibniz: for p in 0..=top {
            for i in 0..self.space.dim(p) {
                let a = GradedElement::basis(&self.space, p, i);
                for q in 0..=top {
                    for j in 0..self.space.dim(q) {
                        let b = GradedElement::basis(&self.space, q, j);
                        if !self.leibniz_holds(&a, &b) {
                            witness = Some(format!("pair {}", self.pair_label(p, i, q, j)));
                            break 'leibniz;
                        }
                    }
                }
            }
        }
        report.record("leibniz", witness);

        report
    }

    /// `(-1)^{|a||c|}[a,[b,c]] + (-1)^{|b||a|}[b,[c,a]] + (-1)^{|c||b|}[c,[a,b]] = 0`
    pub fn jacobi_holds(&self, a: &GradedElement, b: &GradedElement, c: &GradedElement) -> bool {
        let sign = |e: usize| {
            if e % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            }
        };
        let t1 = self.bracket(a, &self.bracket(b, c)).scale(&sign(a.degree * c.degree));
        let t2 = self.bracket(b, &self.bracket(c, a)).scale(&sign(b.degree * a.degree));
        let t3 = self.bracket(c, &self.bracket(a, b)).scale(&sign(c.degree * b.degree));
        t1.add(&t2).add(&t3).is_zero()
    }

    /// `d[a,b] = [da, b] + (-1)^{|a|}[a, db]`
    pub fn leibniz_holds(&self, a: &GradedElement, b: &GradedElement) -> bool {
        let lhs = self.differential(&self.bracket(a, b));
        let da = self.differential(a);
        let db = self.differential(b);
        let mut rhs = self.bracket(&da, b);
        let second = self.bracket(a, &db);
        if a.degree % 2 == 0 {
            rhs = rhs.add(&second);
        } else {
            rhs = rhs.sub(&second);
        }
        lhs.sub(&rhs).is_zero()
    }
}
