//! Complex structures on real vector spaces and Beltrami maps between them.
//!
//! A complex structure is a real `2m x 2m` matrix `J` with `J^2 = -I`. Its
//! complexified space splits as `V^C = V_J^{1,0} (+) V_J^{0,1}`, the
//! eigenspaces of `+i` and `-i`, cut out by the projectors
//! `pi^{1,0} = (I - iJ)/2` and `pi^{0,1} = (I + iJ)/2`. A second structure
//! `J'` whose `(0,1)`-space projects isomorphically onto `V_J^{0,1}` is
//! encoded by its Beltrami map `m: V_J^{0,1} -> V_J^{1,0}`, with
//! `V_{J'}^{0,1} = { u + m(u) }`; [`beltrami_of`] and [`structure_of`] are
//! exact mutual inverses on their domains.
//!
//! [`lemma31_check`] verifies the criterion connecting all of this: when a
//! real map commutes with `J` (H1) and intertwines two Beltrami maps (H2),
//! it is complex-linear for the corresponding deformed structures
//! (`J_n phi = phi J_m`, conclusion C).
//!
//! ```
//! use kforge_core::cstruct::{beltrami_of, structure_of, ComplexStructure};
//! use kforge_core::exactlin::{Matrix, Scalar};
//!
//! let j = ComplexStructure::standard(1);
//! let mut shear = Matrix::identity(2);
//! shear.set(0, 1, Scalar::from_ratio(1, 2));
//! let deformed =
//!     ComplexStructure::new(&(&shear * j.matrix()) * &shear.inverse().unwrap()).unwrap();
//! let pair = beltrami_of(&j, &deformed).unwrap();
//! assert_eq!(structure_of(&j, &pair.map).unwrap(), deformed);
//! ```

use thiserror::Error;

use crate::exactlin::{Matrix, Scalar};
use crate::rng::SplitMix64;

#[derive(Debug, Error)]
pub enum CstructError {
    #[error("matrix must be square of even size, got {rows}x{cols}")]
    NotEvenSquare { rows: usize, cols: usize },
    #[error("complex structure must have real entries")]
    NotReal,
    #[error("J^2 != -I")]
    NotAlmostComplex,
    #[error("structures not comparable: the (0,1)-projection is not invertible on the second structure")]
    NotComparable,
    #[error("graph of the Beltrami map does not define a complex structure")]
    GraphDegenerate,
    #[error("Beltrami map must be {m}x{m}, got {rows}x{cols}")]
    BeltramiShape { m: usize, rows: usize, cols: usize },
    #[error("map must be {dim}x{dim}, got {rows}x{cols}")]
    MapShape { dim: usize, rows: usize, cols: usize },
}

/// A real matrix `J` with `J^2 = -I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructure {
    j: Matrix,
}

impl ComplexStructure {
    pub fn new(j: Matrix) -> Result<Self, CstructError> {
        if !j.is_square() || j.rows() % 2 != 0 {
            return Err(CstructError::NotEvenSquare {
                rows: j.rows(),
                cols: j.cols(),
            });
        }
        for r in 0..j.rows() {
            for c in 0..j.cols() {
                if !j.get(r, c).is_real() {
                    return Err(CstructError::NotReal);
                }
            }
        }
        let minus_identity = Matrix::identity(j.rows()).scale(&Scalar::from_int(-1));
        if &j * &j != minus_identity {
            return Err(CstructError::NotAlmostComplex);
        }
        Ok(ComplexStructure { j })
    }

    /// Block-diagonal standard structure: `m` copies of `[[0,-1],[1,0]]`.
    pub fn standard(m: usize) -> Self {
        let mut j = Matrix::zero(2 * m, 2 * m);
        for block in 0..m {
            j.set(2 * block, 2 * block + 1, Scalar::from_int(-1));
            j.set(2 * block + 1, 2 * block, Scalar::one());
        }
        ComplexStructure { j }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    /// Real dimension `2m`.
    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn complex_dim(&self) -> usize {
        self.j.rows() / 2
    }

    /// `(pi^{1,0}, pi^{0,1}) = ((I - iJ)/2, (I + iJ)/2)`.
    pub fn projectors(&self) -> (Matrix, Matrix) {
        let n = self.dim();
        let half = Scalar::from_ratio(1, 2);
        let i_j = self.j.scale(&Scalar::i());
        let p10 = (&Matrix::identity(n) - &i_j).scale(&half);
        let p01 = (&Matrix::identity(n) + &i_j).scale(&half);
        (p10, p01)
    }

    /// Basis of `V_J^{0,1}`: the lexicographically first maximal independent
    /// set of columns of `pi^{0,1}` (the pivot columns), as a `2m x m` matrix.
    pub fn basis_01(&self) -> Matrix {
        let (_, p01) = self.projectors();
        pivot_columns(&p01)
    }

    /// Basis of `V_J^{1,0}` chosen the same way; entrywise conjugate of
    /// [`basis_01`](Self::basis_01) since `J` is real.
    pub fn basis_10(&self) -> Matrix {
        let (p10, _) = self.projectors();
        pivot_columns(&p10)
    }
}

fn pivot_columns(m: &Matrix) -> Matrix {
    let ech = m.echelon();
    let cols: Vec<Vec<Scalar>> = ech.pivots.iter().map(|&c| m.col(c)).collect();
    Matrix::from_cols(m.rows(), &cols)
}

/// A complex structure presented by its Beltrami map relative to a reference
/// structure: `V^{0,1}` of the encoded structure is the graph
/// `{ u + map(u) | u in V_J^{0,1} }`.
#[derive(Debug, Clone)]
pub struct BeltramiPair {
    pub reference: ComplexStructure,
    /// Matrix from the `basis_01` coordinates to the `basis_10` coordinates.
    pub map: Matrix,
}

/// The Beltrami map of `other` relative to `reference`:
/// `pi^{1,0} o (pi^{0,1} restricted to V_other^{0,1})^{-1}`.
pub fn beltrami_of(
    reference: &ComplexStructure,
    other: &ComplexStructure,
) -> Result<BeltramiPair, CstructError> {
    if reference.dim() != other.dim() {
        return Err(CstructError::MapShape {
            dim: reference.dim(),
            rows: other.dim(),
            cols: other.dim(),
        });
    }
    let (p10, p01) = reference.projectors();
    let b01 = reference.basis_01();
    let b10 = reference.basis_10();
    let c = other.basis_01();
    let x = b01
        .solve_matrix(&(&p01 * &c))
        .expect("shape checked")
        .expect("pi01 image lies in span(basis_01)");
    let x_inv = x.inverse().ok_or(CstructError::NotComparable)?;
    let y = b10
        .solve_matrix(&(&p10 * &c))
        .expect("shape checked")
        .expect("pi10 image lies in span(basis_10)");
    Ok(BeltramiPair {
        reference: reference.clone(),
        map: &y * &x_inv,
    })
}

/// The unique complex structure whose `(0,1)`-space is the graph
/// `{ u + m(u) }`; exact inverse of [`beltrami_of`].
pub fn structure_of(
    reference: &ComplexStructure,
    map: &Matrix,
) -> Result<ComplexStructure, CstructError> {
    let m = reference.complex_dim();
    if map.rows() != m || map.cols() != m {
        return Err(CstructError::BeltramiShape {
            m,
            rows: map.rows(),
            cols: map.cols(),
        });
    }
    let b01 = reference.basis_01();
    let b10 = reference.basis_10();
    let graph = &b01 + &(&b10 * map);
    let graph_conj = graph.conj();
    let full = graph.hstack(&graph_conj);
    let full_inv = full.inverse().ok_or(CstructError::GraphDegenerate)?;
    let minus_i = -&Scalar::i();
    let eigen = graph.scale(&minus_i).hstack(&graph_conj.scale(&Scalar::i()));
    let j = &eigen * &full_inv;
    ComplexStructure::new(j).map_err(|_| CstructError::GraphDegenerate)
}

/// Result of the complex-linearity criterion on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma31Report {
    /// `phi` commutes with the reference structure.
    pub h1: bool,
    /// `phi` intertwines the two Beltrami maps on `V^{0,1}`.
    pub h2: bool,
    /// `J_n phi = phi J_m`.
    pub conclusion: bool,
}

impl Lemma31Report {
    /// The criterion: premises force the conclusion.
    pub fn consistent(&self) -> bool {
        !(self.h1 && self.h2) || self.conclusion
    }

    pub fn premise(&self) -> bool {
        self.h1 && self.h2
    }
}

/// Checks H1, H2 and the conclusion for a real map `phi` and Beltrami maps
/// `m_map`, `n_map` relative to `j`.
///
/// H2 is evaluated on `V_J^{0,1}` only (the domain where both sides are
/// defined): with `S` the `(0,1)`-coordinate map, it asserts
/// `phi (B10 m S) = (B10 n S) phi` on the columns of `B01`.
pub fn lemma31_check(
    phi: &Matrix,
    j: &ComplexStructure,
    m_map: &Matrix,
    n_map: &Matrix,
) -> Result<Lemma31Report, CstructError> {
    let dim = j.dim();
    if phi.rows() != dim || phi.cols() != dim {
        return Err(CstructError::MapShape {
            dim,
            rows: phi.rows(),
            cols: phi.cols(),
        });
    }
    for r in 0..dim {
        for c in 0..dim {
            if !phi.get(r, c).is_real() {
                return Err(CstructError::NotReal);
            }
        }
    }
    let m_dim = j.complex_dim();
    for map in [m_map, n_map] {
        if map.rows() != m_dim || map.cols() != m_dim {
            return Err(CstructError::BeltramiShape {
                m: m_dim,
                rows: map.rows(),
                cols: map.cols(),
            });
        }
    }
    let h1 = &(phi * j.matrix()) == &(j.matrix() * phi);

    let (_, p01) = j.projectors();
    let b01 = j.basis_01();
    let b10 = j.basis_10();
    // S: ambient -> basis_01 coordinates of the (0,1)-part
    let s01 = b01
        .solve_matrix(&p01)
        .expect("shape checked")
        .expect("pi01 image lies in span(basis_01)");
    let m_hat = &(&b10 * m_map) * &s01;
    let n_hat = &(&b10 * n_map) * &s01;
    let h2 = &(&(phi * &m_hat) * &b01) == &(&(&n_hat * phi) * &b01);

    let j_m = structure_of(j, m_map)?;
    let j_n = structure_of(j, n_map)?;
    let conclusion = &(j_n.matrix() * phi) == &(phi * j_m.matrix());

    Ok(Lemma31Report { h1, h2, conclusion })
}

fn small_int(rng: &mut SplitMix64) -> Scalar {
    Scalar::from_int(rng.int_in(-1, 1))
}

fn small_gaussian_int(rng: &mut SplitMix64) -> Scalar {
    Scalar::from_parts(rng.int_in(-1, 1), 1, rng.int_in(-1, 1), 1)
}

fn random_complex_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_gaussian_int(rng))
}

/// Random unimodular integer matrix: a product of unit-triangular shears, so
/// the inverse is again an integer matrix and entries stay small under exact
/// arithmetic.
fn random_unimodular(rng: &mut SplitMix64, n: usize) -> Matrix {
    let lower = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            Scalar::one()
        } else if r > c {
            small_int(rng)
        } else {
            Scalar::zero()
        }
    });
    let upper = Matrix::from_fn(n, n, |r, c| {
        if r == c {
            Scalar::one()
        } else if r < c {
            small_int(rng)
        } else {
            Scalar::zero()
        }
    });
    &lower * &upper
}

/// Random complex structure `S J0 S^{-1}` with unimodular integer `S`.
pub fn random_structure(rng: &mut SplitMix64, complex_dim: usize) -> ComplexStructure {
    let n = 2 * complex_dim;
    let s = random_unimodular(rng, n);
    let s_inv = s.inverse().expect("unimodular matrices are invertible");
    let j = &(&s * ComplexStructure::standard(complex_dim).matrix()) * &s_inv;
    ComplexStructure::new(j).expect("conjugate of a complex structure")
}

/// An instance satisfying H1 and H2 by construction: `phi` acts as a random
/// invertible `A` on `V^{0,1}` (conjugate on `V^{1,0}`), `m` is a random
/// graph-nondegenerate Beltrami map, and `n = conj(A) m A^{-1}`.
pub fn random_premise_instance(
    rng: &mut SplitMix64,
    j: &ComplexStructure,
) -> (Matrix, Matrix, Matrix) {
    let m_dim = j.complex_dim();
    let b01 = j.basis_01();
    let b10 = j.basis_10();
    let full = b01.hstack(&b10);
    let full_inv = full.inverse().expect("eigenbasis of a complex structure");
    let (a, a_inv) = loop {
        let a = random_complex_matrix(rng, m_dim, m_dim);
        if let Some(inv) = a.inverse() {
            break (a, inv);
        }
    };
    let a_conj = a.conj();
    let block = Matrix::from_fn(2 * m_dim, 2 * m_dim, |r, c| {
        if r < m_dim && c < m_dim {
            a.get(r, c).clone()
        } else if r >= m_dim && c >= m_dim {
            a_conj.get(r - m_dim, c - m_dim).clone()
        } else {
            Scalar::zero()
        }
    });
    let phi = &(&full * &block) * &full_inv;
    let m_map = loop {
        let candidate = random_complex_matrix(rng, m_dim, m_dim);
        if structure_of(j, &candidate).is_ok() {
            break candidate;
        }
    };
    let n_map = &(&a_conj * &m_map) * &a_inv;
    (phi, m_map, n_map)
}
