//! Finite-dimensional Hodge theory for a DGLA model.
//!
//! Given a Hermitian positive-definite metric per degree, this module builds
//! the metric adjoint `d*`, the Laplacian `box = d* d + d d*`, the harmonic
//! basis `ker box`, the metric-orthogonal harmonic projector `H`, and the
//! Green operator `G` (the partial inverse of `box` vanishing on harmonics).
//! Construction makes `v = H v + box G v`, `H G = G H = 0`,
//! `G box = box G = I - H`, `d G = G d` and `d* G = G d*` exact identities;
//! the test suites assert them entry-exactly.
//!
//! Everything stays inside `Q(i)`: the projector comes from the normal
//! equations of the metric-orthogonal projection, never from an
//! orthonormalization (which would need square roots).

use thiserror::Error;

use crate::dgla::{Dgla, GradedElement};
use crate::exactlin::{inner_product, Matrix, Scalar};

#[derive(Debug, Error)]
pub enum HodgeError {
    #[error("metric needs one matrix per degree 0..={expected}, got {got}")]
    MetricCount { expected: usize, got: usize },
    #[error("metric in degree {degree} must be {dim}x{dim}")]
    MetricShape { degree: usize, dim: usize },
    #[error("metric in degree {degree} is not Hermitian positive definite")]
    MetricNotPositiveDefinite { degree: usize },
    #[error("Green operator solve failed in degree {degree}")]
    GreenSolve { degree: usize },
}

/// One Hermitian positive-definite matrix per degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMetric {
    per_degree: Vec<Matrix>,
}

impl HermitianMetric {
    pub fn new(per_degree: Vec<Matrix>) -> Self {
        HermitianMetric { per_degree }
    }

    /// The identity pairing in every degree.
    pub fn identity(dims: &[usize]) -> Self {
        HermitianMetric {
            per_degree: dims.iter().map(|&n| Matrix::identity(n)).collect(),
        }
    }

    pub fn matrix(&self, p: usize) -> &Matrix {
        &self.per_degree[p]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.per_degree
    }

    pub fn max_degree(&self) -> usize {
        self.per_degree.len() - 1
    }

    /// `<u, v>` in the common degree of `u` and `v`.
    pub fn inner(&self, u: &GradedElement, v: &GradedElement) -> Scalar {
        assert_eq!(u.degree, v.degree, "degree mismatch");
        inner_product(&self.per_degree[u.degree], &u.coords, &v.coords)
    }

    /// Shape and exact positive-definiteness of every degree.
    pub fn validate(&self, dims: &[usize]) -> Result<(), HodgeError> {
        if self.per_degree.len() != dims.len() {
            return Err(HodgeError::MetricCount {
                expected: dims.len() - 1,
                got: self.per_degree.len(),
            });
        }
        for (p, m) in self.per_degree.iter().enumerate() {
            if m.rows() != dims[p] || m.cols() != dims[p] {
                return Err(HodgeError::MetricShape {
                    degree: p,
                    dim: dims[p],
                });
            }
            let pd = m
                .is_positive_definite()
                .map_err(|_| HodgeError::MetricShape {
                    degree: p,
                    dim: dims[p],
                })?;
            if !pd {
                return Err(HodgeError::MetricNotPositiveDefinite { degree: p });
            }
        }
        Ok(())
    }
}

/// Adjoint matrices of the differential: `dstar[p]: dim(p) -> dim(p-1)` is
/// determined by `<dstar u, v>_{p-1} = <u, d v>_p`, concretely
/// `dstar_p = M_{p-1}^{-1} d_{p-1}^H M_p`. Entry 0 is the zero map out of
/// degree 0.
pub fn adjoint(dgla: &Dgla, metric: &HermitianMetric) -> Vec<Matrix> {
    let space = dgla.space();
    let top = space.max_degree();
    let mut dstar = Vec::with_capacity(top + 1);
    dstar.push(Matrix::zero(0, space.dim(0)));
    for p in 1..=top {
        let m_prev_inv = metric
            .matrix(p - 1)
            .inverse()
            .expect("metric validated positive definite");
        let d_prev = dgla.differential_matrix(p - 1);
        dstar.push(&(&m_prev_inv * &d_prev.conj_transpose()) * metric.matrix(p));
    }
    dstar
}

/// Laplacian matrices `box[p] = dstar[p+1] d[p] + d[p-1] dstar[p]`.
pub fn laplacian(dgla: &Dgla, dstar: &[Matrix]) -> Vec<Matrix> {
    let space = dgla.space();
    let top = space.max_degree();
    (0..=top)
        .map(|p| {
            let mut b = Matrix::zero(space.dim(p), space.dim(p));
            if p < top {
                b = &b + &(&dstar[p + 1] * dgla.differential_matrix(p));
            }
            if p > 0 {
                b = &b + &(dgla.differential_matrix(p - 1) * &dstar[p]);
            }
            b
        })
        .collect()
}

/// The full operator package for one metric.
#[derive(Debug, Clone)]
pub struct HodgeData {
    metric: HermitianMetric,
    dstar: Vec<Matrix>,
    laplacian: Vec<Matrix>,
    harmonic: Vec<Vec<Vec<Scalar>>>,
    projector: Vec<Matrix>,
    green: Vec<Matrix>,
}

impl HodgeData {
    /// Builds adjoints, Laplacians, harmonic bases, projectors and Green
    /// operators for a validated model and metric.
    ///
    /// `G` is constructed column-wise: solve `box x = (I - H) e_j` and project
    /// the solution by `I - H` to fix the kernel ambiguity. This is the unique
    /// operator with `v = Hv + box Gv` and `HG = 0`.
    pub fn new(dgla: &Dgla, metric: HermitianMetric) -> Result<Self, HodgeError> {
        let space = dgla.space();
        metric.validate(space.dims())?;
        let dstar = adjoint(dgla, &metric);
        let laplacian = laplacian(dgla, &dstar);
        let top = space.max_degree();

        let mut harmonic = Vec::with_capacity(top + 1);
        let mut projector = Vec::with_capacity(top + 1);
        let mut green = Vec::with_capacity(top + 1);
        for p in 0..=top {
            let n = space.dim(p);
            let basis = laplacian[p].kernel_basis();
            let h = if basis.is_empty() {
                Matrix::zero(n, n)
            } else {
                let b = Matrix::from_cols(n, &basis);
                let bstar_m = &b.conj_transpose() * metric.matrix(p);
                let gram = &bstar_m * &b;
                let gram_inv = gram.inverse().expect("Gram matrix of a PD metric");
                &(&b * &gram_inv) * &bstar_m
            };
            let complement = &Matrix::identity(n) - &h;
            let mut green_cols = Vec::with_capacity(n);
            for j in 0..n {
                let rhs = complement.col(j);
                let x = laplacian[p]
                    .solve(&rhs)
                    .map_err(|_| HodgeError::GreenSolve { degree: p })?
                    .ok_or(HodgeError::GreenSolve { degree: p })?;
                green_cols.push(complement.mul_vec(&x));
            }
            harmonic.push(basis);
            projector.push(h);
            green.push(Matrix::from_cols(n, &green_cols));
        }
        Ok(HodgeData {
            metric,
            dstar,
            laplacian,
            harmonic,
            projector,
            green,
        })
    }

    pub fn metric(&self) -> &HermitianMetric {
        &self.metric
    }

    pub fn max_degree(&self) -> usize {
        self.laplacian.len() - 1
    }

    pub fn codifferential_matrix(&self, p: usize) -> &Matrix {
        &self.dstar[p]
    }

    pub fn laplacian_matrix(&self, p: usize) -> &Matrix {
        &self.laplacian[p]
    }

    pub fn projector_matrix(&self, p: usize) -> &Matrix {
        &self.projector[p]
    }

    pub fn green_matrix(&self, p: usize) -> &Matrix {
        &self.green[p]
    }

    /// Columns spanning `ker box_p`.
    pub fn harmonic_basis(&self, p: usize) -> &[Vec<Scalar>] {
        &self.harmonic[p]
    }

    pub fn harmonic_dims(&self) -> Vec<usize> {
        self.harmonic.iter().map(Vec::len).collect()
    }

    pub fn harmonic_basis_elements(&self, p: usize) -> Vec<GradedElement> {
        self.harmonic[p]
            .iter()
            .map(|v| GradedElement::new(p, v.clone()))
            .collect()
    }

    /// `d* a`; degree drops by one (the zero map out of degree 0).
    pub fn apply_codifferential(&self, a: &GradedElement) -> GradedElement {
        if a.degree == 0 {
            return GradedElement::new(0, self.dstar[0].mul_vec(&a.coords));
        }
        GradedElement::new(a.degree - 1, self.dstar[a.degree].mul_vec(&a.coords))
    }

    pub fn apply_laplacian(&self, a: &GradedElement) -> GradedElement {
        GradedElement::new(a.degree, self.laplacian[a.degree].mul_vec(&a.coords))
    }

    pub fn project_harmonic(&self, a: &GradedElement) -> GradedElement {
        GradedElement::new(a.degree, self.projector[a.degree].mul_vec(&a.coords))
    }

    pub fn apply_green(&self, a: &GradedElement) -> GradedElement {
        GradedElement::new(a.degree, self.green[a.degree].mul_vec(&a.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::GradedVectorSpace;
    use crate::rng::SplitMix64;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| s(c)).collect()).collect()).unwrap()
    }

    /// dims (1, 2), d(a) = e1, bracket 0.
    fn witheq() -> Dgla {
        let space = GradedVectorSpace::new(vec![1, 2]);
        let d0 = mat(&[&["1"], &["0"]]);
        Dgla::new(space, vec![d0], vec![]).unwrap()
    }

    /// dims (0, 2, 2), d(e1) = f1, [e2,e2] = 2 f1, [e1,e2] = f2.
    fn mixed() -> Dgla {
        let space = GradedVectorSpace::new(vec![0, 2, 2]);
        let d1 = mat(&[&["1", "0"], &["0", "0"]]);
        Dgla::new(
            space,
            vec![Matrix::zero(2, 0), d1],
            vec![
                ((1, 1, 1, 1), vec![(0, s("2"))]),
                ((1, 0, 1, 1), vec![(1, s("1"))]),
            ],
        )
        .unwrap()
    }

    fn identity_hodge(dgla: &Dgla) -> HodgeData {
        HodgeData::new(dgla, HermitianMetric::identity(dgla.space().dims())).unwrap()
    }

    #[test]
    fn zero_differential_gives_zero_adjoint_and_trivial_operators() {
        let space = GradedVectorSpace::new(vec![0, 2, 1]);
        let dgla = Dgla::new(space, vec![Matrix::zero(2, 0), Matrix::zero(1, 2)], vec![]).unwrap();
        let hodge = identity_hodge(&dgla);
        for p in 0..=2 {
            assert!(hodge.codifferential_matrix(p).is_zero());
            assert!(hodge.laplacian_matrix(p).is_zero());
            assert!(hodge.green_matrix(p).is_zero());
            assert_eq!(
                hodge.projector_matrix(p),
                &Matrix::identity(dgla.space().dim(p))
            );
        }
        assert_eq!(hodge.harmonic_dims(), vec![0, 2, 1]);
    }

    #[test]
    fn witheq_hand_values() {
        let dgla = witheq();
        let hodge = identity_hodge(&dgla);
        // dstar_1 = d_0 conjugate-transposed under the identity metric
        assert_eq!(hodge.codifferential_matrix(1), &mat(&[&["1", "0"]]));
        assert_eq!(hodge.laplacian_matrix(0), &mat(&[&["1"]]));
        assert_eq!(hodge.laplacian_matrix(1), &mat(&[&["1", "0"], &["0", "0"]]));
        // harmonics: none in degree 0, span(e2) in degree 1
        assert_eq!(hodge.harmonic_dims(), vec![0, 1]);
        assert_eq!(hodge.projector_matrix(0), &Matrix::zero(1, 1));
        assert_eq!(hodge.green_matrix(0), &Matrix::identity(1));
        assert_eq!(hodge.projector_matrix(1), &mat(&[&["0", "0"], &["0", "1"]]));
        assert_eq!(hodge.green_matrix(1), &mat(&[&["1", "0"], &["0", "0"]]));
        // G kills harmonics, fixes e1; v = Hv + box Gv on e1
        let e1 = GradedElement::basis(dgla.space(), 1, 0);
        let e2 = GradedElement::basis(dgla.space(), 1, 1);
        assert_eq!(hodge.apply_green(&e1), e1);
        assert!(hodge.apply_green(&e2).is_zero());
        assert_eq!(hodge.project_harmonic(&e2), e2);
        let reassembled = hodge
            .project_harmonic(&e1)
            .add(&hodge.apply_laplacian(&hodge.apply_green(&e1)));
        assert_eq!(reassembled, e1);
    }

    #[test]
    fn doubling_the_target_metric_doubles_the_adjoint() {
        let dgla = witheq();
        let base = HermitianMetric::identity(dgla.space().dims());
        let scaled = HermitianMetric::new(vec![
            Matrix::identity(1),
            Matrix::identity(2).scale(&s("2")),
        ]);
        let d1 = adjoint(&dgla, &base);
        let d2 = adjoint(&dgla, &scaled);
        assert_eq!(d2[1], d1[1].scale(&s("2")));
    }

    #[test]
    fn laplacian_commutes_with_d_and_is_self_adjoint() {
        for dgla in [witheq(), mixed()] {
            let hodge = identity_hodge(&dgla);
            let top = dgla.max_degree();
            for p in 0..top {
                let lhs = dgla.differential_matrix(p) * hodge.laplacian_matrix(p);
                let rhs = hodge.laplacian_matrix(p + 1) * dgla.differential_matrix(p);
                assert_eq!(lhs, rhs);
            }
            for p in 0..=top {
                let b = hodge.laplacian_matrix(p);
                let m = hodge.metric().matrix(p);
                assert_eq!(&b.conj_transpose() * m, m * b);
            }
        }
    }

    #[test]
    fn hodge_identities_on_seeded_elements() {
        let dgla = mixed();
        let metric = HermitianMetric::new(vec![
            Matrix::zero(0, 0),
            mat(&[&["2", "1*i"], &["-1*i", "1"]]),
            mat(&[&["1", "0"], &["0", "3"]]),
        ]);
        let hodge = HodgeData::new(&dgla, metric).unwrap();
        let mut rng = SplitMix64::new(11);
        for p in 0..=2 {
            let n = dgla.space().dim(p);
            for _ in 0..40 {
                let v = GradedElement::new(p, (0..n).map(|_| rng.gaussian()).collect());
                let w = GradedElement::new(p, (0..n).map(|_| rng.gaussian()).collect());
                // v = Hv + box G v
                let hv = hodge.project_harmonic(&v);
                let box_gv = hodge.apply_laplacian(&hodge.apply_green(&v));
                assert_eq!(hv.add(&box_gv), v);
                // <Hv, box Gw> = 0
                let box_gw = hodge.apply_laplacian(&hodge.apply_green(&w));
                assert!(hodge.metric().inner(&hv, &box_gw).is_zero());
            }
        }
        // matrix identities: H^2 = H, HG = GH = 0, G box = box G = I - H
        for p in 0..=2 {
            let h = hodge.projector_matrix(p);
            let g = hodge.green_matrix(p);
            let b = hodge.laplacian_matrix(p);
            let id = Matrix::identity(dgla.space().dim(p));
            assert_eq!(&(h * h), h);
            assert!((h * g).is_zero());
            assert!((g * h).is_zero());
            assert_eq!(g * b, &id - h);
            assert_eq!(b * g, &id - h);
        }
        // G commutes with d and with d*
        for p in 0..2 {
            let lhs = dgla.differential_matrix(p) * hodge.green_matrix(p);
            let rhs = hodge.green_matrix(p + 1) * dgla.differential_matrix(p);
            assert_eq!(lhs, rhs);
        }
        for p in 1..=2 {
            let lhs = hodge.codifferential_matrix(p) * hodge.green_matrix(p);
            let rhs = hodge.green_matrix(p - 1) * hodge.codifferential_matrix(p);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn harmonic_dimension_matches_rank_nullity_oracle() {
        for dgla in [witheq(), mixed()] {
            let hodge = identity_hodge(&dgla);
            let d1 = dgla.differential_matrix(1);
            let d0 = dgla.differential_matrix(0);
            let expected = (dgla.space().dim(1) - d1.rank()) - d0.rank();
            assert_eq!(hodge.harmonic_dims()[1], expected);
        }
    }

    #[test]
    fn non_positive_definite_metric_is_rejected() {
        let dgla = witheq();
        let metric = HermitianMetric::new(vec![
            Matrix::identity(1),
            mat(&[&["1", "0"], &["0", "-1"]]),
        ]);
        assert!(matches!(
            HodgeData::new(&dgla, metric),
            Err(HodgeError::MetricNotPositiveDefinite { degree: 1 })
        ));
    }
}
