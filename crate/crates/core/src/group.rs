//! Group actions on a DGLA model and their equivariance calculus.
//!
//! Two kinds of actions are exactly computable over `Q(i)` and both are
//! supported: finite matrix groups (given by generators, closed by
//! breadth-first multiplication) and torus actions given by integer weight
//! vectors per basis element. Averaging a metric over a finite group is a
//! plain sum; averaging over a torus zeroes every entry pairing two distinct
//! weights, which is the exact value of the circle average of
//! `lambda^{w - w'}`. The same weight bookkeeping covers the complexified
//! torus: an operator preserving weights commutes with every diagonal scaling
//! `lambda^w`, invertible or not, so no separate check is needed for the
//! complex torus.
//!
//! Connected nonabelian compact groups enter through their Lie algebras
//! ([`LieAlgebraAction`]): a representation by bracket derivations commuting
//! with `d` and skew-adjoint for the metric. Its complexification extends the
//! representation `C`-linearly over the complexified coefficient space.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dgla::{Dgla, GradedElement, GradedVectorSpace};
use crate::exactlin::{vec_is_zero, Matrix, Scalar};
use crate::hodge::{HermitianMetric, HodgeData};
use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group element needs one matrix per degree 0..={expected}, got {got}")]
    ElementCount { expected: usize, got: usize },
    #[error("group element matrix in degree {degree} must be {dim}x{dim}")]
    ElementShape { degree: usize, dim: usize },
    #[error("generator {index} is not invertible in degree {degree}")]
    NotInvertible { index: usize, degree: usize },
    #[error("group too large or infinite (closure exceeded cap {cap})")]
    ClosureCap { cap: usize },
    #[error("torus weights need one vector of length {rank} per basis element of each degree")]
    WeightShape { rank: usize },
    #[error("harmonic space of degree {degree} is not invariant under element {element}")]
    HarmonicNotInvariant { degree: usize, element: usize },
    #[error("Lie algebra action: {0}")]
    LieFormat(String),
}

/// One group element: an invertible matrix per degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    pub per_degree: Vec<Matrix>,
}

impl GroupElement {
    pub fn identity(space: &GradedVectorSpace) -> Self {
        GroupElement {
            per_degree: (0..=space.max_degree())
                .map(|p| Matrix::identity(space.dim(p)))
                .collect(),
        }
    }

    pub fn matrix(&self, p: usize) -> &Matrix {
        &self.per_degree[p]
    }

    pub fn compose(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            per_degree: self
                .per_degree
                .iter()
                .zip(&rhs.per_degree)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn apply(&self, a: &GradedElement) -> GradedElement {
        // degrees above the top are zero spaces, acted on trivially
        if a.degree >= self.per_degree.len() {
            return a.clone();
        }
        GradedElement::new(a.degree, self.per_degree[a.degree].mul_vec(&a.coords))
    }

    fn check_shape(&self, space: &GradedVectorSpace) -> Result<(), GroupError> {
        if self.per_degree.len() != space.max_degree() + 1 {
            return Err(GroupError::ElementCount {
                expected: space.max_degree(),
                got: self.per_degree.len(),
            });
        }
        for (p, m) in self.per_degree.iter().enumerate() {
            let dim = space.dim(p);
            if m.rows() != dim || m.cols() != dim {
                return Err(GroupError::ElementShape { degree: p, dim });
            }
        }
        Ok(())
    }
}

/// A finite matrix group acting degree-wise. `elements[0]` is the identity;
/// the rest are ordered breadth-first by word length in the generators, ties
/// broken by generator input order, so closure output is canonical.
#[derive(Debug, Clone)]
pub struct FiniteAction {
    pub elements: Vec<GroupElement>,
}

/// Integer-weight torus action: `weights[p][i]` is the weight vector (length
/// = rank) of basis element `i` of degree `p`. The torus element with
/// parameter `lambda` scales that basis vector by `lambda^w`.
#[derive(Debug, Clone)]
pub struct TorusAction {
    pub rank: usize,
    pub weights: Vec<Vec<Vec<i64>>>,
}

impl TorusAction {
    pub fn weight(&self, p: usize, i: usize) -> &[i64] {
        &self.weights[p][i]
    }

    pub fn check_shape(&self, space: &GradedVectorSpace) -> Result<(), GroupError> {
        if self.weights.len() != space.max_degree() + 1 {
            return Err(GroupError::WeightShape { rank: self.rank });
        }
        for (p, per_degree) in self.weights.iter().enumerate() {
            if per_degree.len() != space.dim(p)
                || per_degree.iter().any(|w| w.len() != self.rank)
            {
                return Err(GroupError::WeightShape { rank: self.rank });
            }
        }
        Ok(())
    }

    /// The single weight carried by all nonzero components of `v` in degree
    /// `p`, or `None` if components of different weights mix (or `v = 0`,
    /// which carries every weight; reported as the zero weight).
    pub fn weight_of_vector(&self, p: usize, v: &[Scalar]) -> Option<Vec<i64>> {
        let mut found: Option<Vec<i64>> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = self.weights[p][i].clone();
            match &found {
                None => found = Some(w),
                Some(prev) if *prev != w => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or_else(|| vec![0; self.rank]))
    }

    /// True when every nonzero entry of `m` (as a map in degree `p`) pairs
    /// equal weights, i.e. the operator preserves the weight grading.
    pub fn operator_preserves_weights(&self, p: usize, m: &Matrix) -> bool {
        self.map_preserves_weights(p, p, m)
    }

    /// Weight preservation for a map `dim(from) -> dim(to)`: every nonzero
    /// entry pairs a target weight with an equal source weight.
    pub fn map_preserves_weights(&self, from: usize, to: usize, m: &Matrix) -> bool {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if !m.get(r, c).is_zero() && self.weights[to][r] != self.weights[from][c] {
                    return false;
                }
            }
        }
        true
    }
}

/// Finite matrix group or integer-weight torus.
#[derive(Debug, Clone)]
pub enum GroupAction {
    Finite(FiniteAction),
    Torus(TorusAction),
}

/// Multiplicative closure of `generators` (identity included), breadth-first
/// by word length then input order. Fails once the element count exceeds
/// `cap`.
pub fn close_group(
    space: &GradedVectorSpace,
    generators: &[GroupElement],
    cap: usize,
) -> Result<FiniteAction, GroupError> {
    for (index, g) in generators.iter().enumerate() {
        g.check_shape(space)?;
        for (degree, m) in g.per_degree.iter().enumerate() {
            if m.rank() != m.rows() {
                return Err(GroupError::NotInvertible { index, degree });
            }
        }
    }
    let identity = GroupElement::identity(space);
    let mut elements = vec![identity.clone()];
    let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
    seen.insert(identity);
    let mut frontier_start = 0;
    while frontier_start < elements.len() {
        let frontier_end = elements.len();
        for idx in frontier_start..frontier_end {
            for g in generators {
                let candidate = elements[idx].compose(g);
                if seen.insert(candidate.clone()) {
                    elements.push(candidate);
                    if elements.len() > cap {
                        return Err(GroupError::ClosureCap { cap });
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    Ok(FiniteAction { elements })
}

/// Checks the action axioms against the model: closure/identity and
/// invertibility (finite), commutation with `d`, and the bracket
/// automorphism (finite) or weight additivity of the bracket (torus).
pub fn validate_action(dgla: &Dgla, action: &GroupAction) -> ValidationReport {
    let mut report = ValidationReport::new();
    let space = dgla.space();
    let top = space.max_degree();
    match action {
        GroupAction::Finite(finite) => {
            let identity = GroupElement::identity(space);
            let witness = (!finite.elements.contains(&identity))
                .then(|| "identity element missing".to_string());
            report.record("identity_present", witness);

            let mut witness = None;
            'shape: for (idx, g) in finite.elements.iter().enumerate() {
                if let Err(e) = g.check_shape(space) {
                    witness = Some(format!("element {idx}: {e}"));
                    break 'shape;
                }
                for (p, m) in g.per_degree.iter().enumerate() {
                    if m.rank() != m.rows() {
                        witness = Some(format!("element {idx} degree {p} is singular"));
                        break 'shape;
                    }
                }
            }
            report.record("invertible", witness);

            let mut witness = None;
            'closure: for (i, a) in finite.elements.iter().enumerate() {
                for (j, b) in finite.elements.iter().enumerate() {
                    let prod = a.compose(b);
                    if !finite.elements.contains(&prod) {
                        witness = Some(format!("product of elements {i} and {j} escapes the set"));
                        break 'closure;
                    }
                }
            }
            report.record("closed_under_product", witness);

            let mut witness = None;
            'commd: for (idx, g) in finite.elements.iter().enumerate() {
                for p in 0..top {
                    let lhs = g.matrix(p + 1) * dgla.differential_matrix(p);
                    let rhs = dgla.differential_matrix(p) * g.matrix(p);
                    if lhs != rhs {
                        witness = Some(format!("element {idx} at degree {p}"));
                        break 'commd;
                    }
                }
            }
            report.record("commutes_with_d", witness);

            let mut witness = None;
            'auto: for (idx, g) in finite.elements.iter().enumerate() {
                for p in 0..=top {
                    for i in 0..space.dim(p) {
                        for q in 0..=top {
                            for j in 0..space.dim(q) {
                                let a = GradedElement::basis(space, p, i);
                                let b = GradedElement::basis(space, q, j);
                                let lhs = g.apply(&dgla.bracket(&a, &b));
                                let rhs = dgla.bracket(&g.apply(&a), &g.apply(&b));
                                if lhs != rhs {
                                    witness = Some(format!(
                                        "element {idx} on pair ({}, {})",
                                        space.label(p, i),
                                        space.label(q, j)
                                    ));
                                    break 'auto;
                                }
                            }
                        }
                    }
                }
            }
            report.record("bracket_automorphism", witness);
        }
        GroupAction::Torus(torus) => {
            let witness = torus.check_shape(space).err().map(|e| e.to_string());
            report.record("weight_shape", witness);
            if !report.all_passed() {
                return report;
            }

            let mut witness = None;
            'dw: for p in 0..top {
                let d = dgla.differential_matrix(p);
                for r in 0..d.rows() {
                    for c in 0..d.cols() {
                        if !d.get(r, c).is_zero()
                            && torus.weight(p + 1, r) != torus.weight(p, c)
                        {
                            witness = Some(format!(
                                "d maps {} into {} of different weight",
                                space.label(p, c),
                                space.label(p + 1, r)
                            ));
                            break 'dw;
                        }
                    }
                }
            }
            report.record("d_preserves_weights", witness);

            let mut witness = None;
            'bw: for (&(p, i, q, j), out) in dgla.bracket_table() {
                for &(k, ref c) in out {
                    if c.is_zero() {
                        continue;
                    }
                    let sum: Vec<i64> = torus
                        .weight(p, i)
                        .iter()
                        .zip(torus.weight(q, j))
                        .map(|(a, b)| a + b)
                        .collect();
                    if torus.weight(p + q, k) != sum.as_slice() {
                        witness = Some(format!(
                            "[{}, {}] hits {} of weight != sum",
                            space.label(p, i),
                            space.label(q, j),
                            space.label(p + q, k)
                        ));
                        break 'bw;
                    }
                }
            }
            report.record("bracket_adds_weights", witness);
        }
    }
    report
}

/// Invariant metric by averaging: `M' = (1/|K|) sum_g g^H M g` for a finite
/// group, and cross-weight zeroing for a torus.
pub fn average_metric(metric: &HermitianMetric, action: &GroupAction) -> HermitianMetric {
    match action {
        GroupAction::Finite(finite) => {
            let order = Scalar::from_int(finite.elements.len() as i64);
            let inv_order = order.inverse().expect("nonempty group");
            let averaged = metric
                .matrices()
                .iter()
                .enumerate()
                .map(|(p, m)| {
                    let mut acc = Matrix::zero(m.rows(), m.cols());
                    for g in &finite.elements {
                        let gp = g.matrix(p);
                        acc = &acc + &(&(&gp.conj_transpose() * m) * gp);
                    }
                    acc.scale(&inv_order)
                })
                .collect();
            HermitianMetric::new(averaged)
        }
        GroupAction::Torus(torus) => {
            let averaged = metric
                .matrices()
                .iter()
                .enumerate()
                .map(|(p, m)| {
                    Matrix::from_fn(m.rows(), m.cols(), |r, c| {
                        if torus.weight(p, r) == torus.weight(p, c) {
                            m.get(r, c).clone()
                        } else {
                            Scalar::zero()
                        }
                    })
                })
                .collect();
            HermitianMetric::new(averaged)
        }
    }
}

/// Exact invariance of a metric under the action: `g^H M g = M` per element
/// (finite) or vanishing of every cross-weight entry (torus).
pub fn is_metric_invariant(metric: &HermitianMetric, action: &GroupAction) -> bool {
    match action {
        GroupAction::Finite(finite) => finite.elements.iter().all(|g| {
            metric.matrices().iter().enumerate().all(|(p, m)| {
                &(&g.matrix(p).conj_transpose() * m) * g.matrix(p) == *m
            })
        }),
        GroupAction::Torus(torus) => metric
            .matrices()
            .iter()
            .enumerate()
            .all(|(p, m)| torus.operator_preserves_weights(p, m)),
    }
}

/// Commutation of the Hodge operators with the action, one link at a time:
/// the adjoint (`g dstar = dstar g` in matching degrees), hence the
/// Laplacian, hence the Green operator and harmonic projector. For a torus
/// the same identities are weight preservation of each operator.
pub fn check_operator_equivariance(action: &GroupAction, hodge: &HodgeData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let top = hodge.max_degree();
    type DegreeOp<'a> = &'a dyn Fn(&HodgeData, usize) -> &Matrix;
    let degree_ops: [(&str, DegreeOp); 3] = [
        ("laplacian", &HodgeData::laplacian_matrix),
        ("green", &HodgeData::green_matrix),
        ("harmonic_projector", &HodgeData::projector_matrix),
    ];
    match action {
        GroupAction::Finite(finite) => {
            let mut witness = None;
            'dstar: for (idx, g) in finite.elements.iter().enumerate() {
                for p in 1..=top {
                    let m = hodge.codifferential_matrix(p);
                    if g.matrix(p - 1) * m != m * g.matrix(p) {
                        witness = Some(format!("element {idx} at degree {p}"));
                        break 'dstar;
                    }
                }
            }
            report.record("codifferential_equivariant", witness);
            for (name, op) in degree_ops {
                let mut witness = None;
                'outer: for (idx, g) in finite.elements.iter().enumerate() {
                    for p in 0..=top {
                        let m = op(hodge, p);
                        if g.matrix(p) * m != m * g.matrix(p) {
                            witness = Some(format!("element {idx} at degree {p}"));
                            break 'outer;
                        }
                    }
                }
                report.record(format!("{name}_equivariant"), witness);
            }
        }
        GroupAction::Torus(torus) => {
            let mut witness = None;
            'dstar_t: for p in 1..=top {
                if !torus.map_preserves_weights(p, p - 1, hodge.codifferential_matrix(p)) {
                    witness = Some(format!("degree {p} mixes weights"));
                    break 'dstar_t;
                }
            }
            report.record("codifferential_equivariant", witness);
            for (name, op) in degree_ops {
                let mut witness = None;
                'outer_t: for p in 0..=top {
                    if !torus.operator_preserves_weights(p, op(hodge, p)) {
                        witness = Some(format!("degree {p} mixes weights"));
                        break 'outer_t;
                    }
                }
                report.record(format!("{name}_equivariant"), witness);
            }
        }
    }
    report
}

/// Expresses each group element restricted to the harmonic space of degree
/// `p` in the harmonic basis. Fails if some `g` does not preserve that space
/// (possible only when the metric is not invariant).
pub fn induced_harmonic_rep(
    finite: &FiniteAction,
    hodge: &HodgeData,
    p: usize,
) -> Result<Vec<Matrix>, GroupError> {
    let basis = hodge.harmonic_basis(p);
    let n = hodge.projector_matrix(p).rows();
    let b = Matrix::from_cols(n, basis);
    let mut reps = Vec::with_capacity(finite.elements.len());
    for (element, g) in finite.elements.iter().enumerate() {
        let image = g.matrix(p) * &b;
        let coords = b
            .solve_matrix(&image)
            .map_err(|_| GroupError::HarmonicNotInvariant { degree: p, element })?
            .ok_or(GroupError::HarmonicNotInvariant { degree: p, element })?;
        reps.push(coords);
    }
    Ok(reps)
}

/// `[X_a, X_b]` for one stored pair `a < b`, as `(k, coefficient)` terms.
pub type LieStructureRow = ((usize, usize), Vec<(usize, Scalar)>);

/// A real Lie algebra acting by bracket derivations: structure constants of
/// the algebra (stored for `a < b`, extended antisymmetrically) and one
/// representation matrix per basis element per degree.
#[derive(Debug, Clone)]
pub struct LieAlgebraAction {
    dim: usize,
    structure: Vec<LieStructureRow>,
    rep: Vec<Vec<Matrix>>,
}

impl LieAlgebraAction {
    /// `structure` lists `[X_a, X_b]` for `a < b` as `(k, coefficient)`
    /// pairs; `rep[a]` gives the per-degree matrices of `X_a`. The structure
    /// constants of the real form must be real.
    pub fn new(
        space: &GradedVectorSpace,
        dim: usize,
        structure: Vec<LieStructureRow>,
        rep: Vec<Vec<Matrix>>,
    ) -> Result<Self, GroupError> {
        for ((a, b), out) in &structure {
            if a >= b || *b >= dim {
                return Err(GroupError::LieFormat(format!(
                    "structure key ({a},{b}) must satisfy a < b < dim"
                )));
            }
            for (k, c) in out {
                if *k >= dim {
                    return Err(GroupError::LieFormat(format!(
                        "structure target {k} out of range"
                    )));
                }
                if !c.is_real() {
                    return Err(GroupError::LieFormat(format!(
                        "structure constant {c} of the real form must be real"
                    )));
                }
            }
        }
        if rep.len() != dim {
            return Err(GroupError::LieFormat(format!(
                "need {dim} representation matrices, got {}",
                rep.len()
            )));
        }
        for mats in &rep {
            let probe = GroupElement {
                per_degree: mats.clone(),
            };
            probe.check_shape(space).map_err(|e| GroupError::LieFormat(e.to_string()))?;
        }
        Ok(LieAlgebraAction { dim, structure, rep })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[LieStructureRow] {
        &self.structure
    }

    pub fn rep_matrices(&self, a: usize) -> &[Matrix] {
        &self.rep[a]
    }

    /// Coefficients of `[X_a, X_b]` with the antisymmetric extension.
    pub fn bracket_constants(&self, a: usize, b: usize) -> Vec<(usize, Scalar)> {
        if a == b {
            return Vec::new();
        }
        let (key, flip) = if a < b { ((a, b), false) } else { ((b, a), true) };
        let found = self
            .structure
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, out)| out.clone())
            .unwrap_or_default();
        if flip {
            found.into_iter().map(|(k, c)| (k, -&c)).collect()
        } else {
            found
        }
    }

    /// Structure-constant bracket of coefficient vectors.
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let factor = xa * yb;
                for (k, c) in self.bracket_constants(a, b) {
                    out[k] += &(&factor * &c);
                }
            }
        }
        out
    }

    /// `rho(sum_a z_a X_a)`: the representation evaluated on an arbitrary
    /// coefficient vector, per degree. With complex `z` this is the
    /// `C`-linear extension `rho(X + iY) = rho(X) + i rho(Y)`.
    pub fn rho_of(&self, coeffs: &[Scalar]) -> Vec<Matrix> {
        assert_eq!(coeffs.len(), self.dim, "coefficient count mismatch");
        let degrees = self.rep[0].len();
        (0..degrees)
            .map(|p| {
                let shape = &self.rep[0][p];
                let mut acc = Matrix::zero(shape.rows(), shape.cols());
                for (a, z) in coeffs.iter().enumerate() {
                    if !z.is_zero() {
                        acc = &acc + &self.rep[a][p].scale(z);
                    }
                }
                acc
            })
            .collect()
    }

    /// The action of the complexified algebra: identical structure constants
    /// read over `Q(i)`, with [`rho_of`](Self::rho_of) now fed arbitrary
    /// complex coefficient vectors. Restricting to real coefficients recovers
    /// the original representation.
    pub fn complexify(&self) -> LieAlgebraAction {
        self.clone()
    }

    /// Lie-algebra-level checks: Jacobi for the structure constants and the
    /// homomorphism property `rho([X_a, X_b]) = rho(X_a) rho(X_b) - rho(X_b) rho(X_a)`
    /// per degree. Valid for the real form and verbatim for its
    /// complexification, since both sides are `C`-bilinear in the arguments.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();

        let mut witness = None;
        'jac: for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let mut basis = vec![vec![Scalar::zero(); self.dim]; 3];
                    basis[0][a] = Scalar::one();
                    basis[1][b] = Scalar::one();
                    basis[2][c] = Scalar::one();
                    let t1 = self.bracket_vec(&basis[0], &self.bracket_vec(&basis[1], &basis[2]));
                    let t2 = self.bracket_vec(&basis[1], &self.bracket_vec(&basis[2], &basis[0]));
                    let t3 = self.bracket_vec(&basis[2], &self.bracket_vec(&basis[0], &basis[1]));
                    let sum: Vec<Scalar> = t1
                        .iter()
                        .zip(&t2)
                        .zip(&t3)
                        .map(|((x, y), z)| &(x + y) + z)
                        .collect();
                    if !vec_is_zero(&sum) {
                        witness = Some(format!("triple (X{}, X{}, X{})", a + 1, b + 1, c + 1));
                        break 'jac;
                    }
                }
            }
        }
        report.record("lie_jacobi", witness);

        let mut witness = None;
        'hom: for a in 0..self.dim {
            for b in 0..self.dim {
                let mut xa = vec![Scalar::zero(); self.dim];
                xa[a] = Scalar::one();
                let mut xb = vec![Scalar::zero(); self.dim];
                xb[b] = Scalar::one();
                let lhs = self.rho_of(&self.bracket_vec(&xa, &xb));
                for (p, l) in lhs.iter().enumerate() {
                    let ra = &self.rep[a][p];
                    let rb = &self.rep[b][p];
                    let rhs = &(ra * rb) - &(rb * ra);
                    if *l != rhs {
                        witness = Some(format!("pair (X{}, X{}) at degree {p}", a + 1, b + 1));
                        break 'hom;
                    }
                }
            }
        }
        report.record("homomorphism", witness);

        report
    }
}

/// Infinitesimal equivariance chain for a Lie-algebra action: each `rho(X_a)`
/// commutes with `d`, is a derivation of the bracket, is skew-adjoint for the
/// metric (`rho^H M + M rho = 0`, the derivative of metric invariance), and
/// consequently commutes with the Green operator and harmonic projector. All
/// five links are checked independently and exactly.
pub fn check_derivation_equivariance(
    lie: &LieAlgebraAction,
    dgla: &Dgla,
    hodge: &HodgeData,
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let space = dgla.space();
    let top = space.max_degree();

    let mut witness = None;
    'commd: for a in 0..lie.dim() {
        for p in 0..top {
            let rho = lie.rep_matrices(a);
            let lhs = &rho[p + 1] * dgla.differential_matrix(p);
            let rhs = dgla.differential_matrix(p) * &rho[p];
            if lhs != rhs {
                witness = Some(format!("X{} at degree {p}", a + 1));
                break 'commd;
            }
        }
    }
    report.record("commutes_with_d", witness);

    let mut witness = None;
    'deriv: for a in 0..lie.dim() {
        let rho = lie.rep_matrices(a);
        let act = |e: &GradedElement| {
            if e.degree >= rho.len() {
                return e.clone();
            }
            GradedElement::new(e.degree, rho[e.degree].mul_vec(&e.coords))
        };
        for p in 0..=top {
            for i in 0..space.dim(p) {
                for q in 0..=top {
                    for j in 0..space.dim(q) {
                        let u = GradedElement::basis(space, p, i);
                        let v = GradedElement::basis(space, q, j);
                        let lhs = act(&dgla.bracket(&u, &v));
                        let rhs = dgla
                            .bracket(&act(&u), &v)
                            .add(&dgla.bracket(&u, &act(&v)));
                        if lhs != rhs {
                            witness = Some(format!(
                                "X{} on pair ({}, {})",
                                a + 1,
                                space.label(p, i),
                                space.label(q, j)
                            ));
                            break 'deriv;
                        }
                    }
                }
            }
        }
    }
    report.record("bracket_derivation", witness);

    let mut witness = None;
    'skew: for a in 0..lie.dim() {
        let rho = lie.rep_matrices(a);
        for p in 0..=top {
            let m = hodge.metric().matrix(p);
            let lhs = &rho[p].conj_transpose() * m;
            let rhs = m * &rho[p];
            if &lhs + &rhs != Matrix::zero(m.rows(), m.cols()) {
                witness = Some(format!("X{} at degree {p}", a + 1));
                break 'skew;
            }
        }
    }
    report.record("skew_adjoint", witness);

    for (name, op) in [
        ("laplacian", &HodgeData::laplacian_matrix as &dyn Fn(&HodgeData, usize) -> &Matrix),
        ("green", &HodgeData::green_matrix),
        ("harmonic_projector", &HodgeData::projector_matrix),
    ] {
        let mut witness = None;
        'ops: for a in 0..lie.dim() {
            let rho = lie.rep_matrices(a);
            for p in 0..=top {
                let m = op(hodge, p);
                if &rho[p] * m != m * &rho[p] {
                    witness = Some(format!("X{} at degree {p}", a + 1));
                    break 'ops;
                }
            }
        }
        report.record(format!("commutes_with_{name}"), witness);
    }

    report
}
