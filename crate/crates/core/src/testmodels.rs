//! Model fixtures shared by unit tests.

use crate::dgla::{Dgla, GradedVectorSpace};
use crate::exactlin::{Matrix, Scalar};
use crate::group::{close_group, FiniteAction, GroupElement, TorusAction};

pub fn s(text: &str) -> Scalar {
    text.parse().unwrap()
}

pub fn mat(rows: &[&[&str]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|c| s(c)).collect()).collect()).unwrap()
}

/// dims (0, n, ...) with zero differential and zero bracket.
pub fn abelian(dims: Vec<usize>) -> Dgla {
    let space = GradedVectorSpace::new(dims);
    let diff = (0..space.max_degree())
        .map(|p| Matrix::zero(space.dim(p + 1), space.dim(p)))
        .collect();
    Dgla::new(space, diff, vec![]).unwrap()
}

/// dims (0, 2, 1), d = 0, [e1, e2] = f.
pub fn heis() -> Dgla {
    let space = GradedVectorSpace::new(vec![0, 2, 1]);
    let diff = vec![Matrix::zero(2, 0), Matrix::zero(1, 2)];
    Dgla::new(space, diff, vec![((1, 0, 1, 1), vec![(0, s("1"))])]).unwrap()
}

/// dims (1, 2, 0), d(a) = e1, bracket 0.
pub fn witheq() -> Dgla {
    let space = GradedVectorSpace::new(vec![1, 2, 0]);
    let d0 = mat(&[&["1"], &["0"]]);
    Dgla::new(space, vec![d0, Matrix::zero(0, 2)], vec![]).unwrap()
}

/// dims (0, 2, 2), d(e1) = f1, [e2,e2] = 2 f1, [e1,e2] = f2.
/// Solving gives phi = t1 e2 + t1^2 e1 exactly and obstruction 2 t1^3 f2.
pub fn mixed() -> Dgla {
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

/// dims (0, 3, 1), d(e1) = f, [e2, e3] = f. Harmonics e2, e3; the solved
/// series is phi = t1 e2 + t2 e3 + t1 t2 e1 with no obstruction.
pub fn swap3() -> Dgla {
    let space = GradedVectorSpace::new(vec![0, 3, 1]);
    let d1 = mat(&[&["1", "0", "0"]]);
    Dgla::new(
        space,
        vec![Matrix::zero(3, 0), d1],
        vec![((1, 1, 1, 2), vec![(0, s("1"))])],
    )
    .unwrap()
}

/// Exchanges e2 and e3 of [`swap3`], fixing e1 and f.
pub fn swap3_action() -> FiniteAction {
    let dgla = swap3();
    let g = GroupElement {
        per_degree: vec![
            Matrix::zero(0, 0),
            mat(&[&["1", "0", "0"], &["0", "0", "1"], &["0", "1", "0"]]),
            Matrix::identity(1),
        ],
    };
    close_group(dgla.space(), &[g], 10).unwrap()
}

/// dims (0, 3, 3), d = 0, [ei, ei] = 2 fi and [ei, ej] = f_k for the
/// complementary index k. The full permutation group of the three basis
/// vectors acts.
pub fn s3_model() -> Dgla {
    let space = GradedVectorSpace::new(vec![0, 3, 3]);
    let diff = vec![Matrix::zero(3, 0), Matrix::zero(3, 3)];
    Dgla::new(
        space,
        diff,
        vec![
            ((1, 0, 1, 0), vec![(0, s("2"))]),
            ((1, 1, 1, 1), vec![(1, s("2"))]),
            ((1, 2, 1, 2), vec![(2, s("2"))]),
            ((1, 0, 1, 1), vec![(2, s("1"))]),
            ((1, 0, 1, 2), vec![(1, s("1"))]),
            ((1, 1, 1, 2), vec![(0, s("1"))]),
        ],
    )
    .unwrap()
}

pub fn s3_action() -> FiniteAction {
    let dgla = s3_model();
    let perm = |rows: &[&[&str]]| mat(rows);
    let transposition = GroupElement {
        per_degree: vec![
            Matrix::zero(0, 0),
            perm(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]]),
            perm(&[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]]),
        ],
    };
    let cycle = GroupElement {
        per_degree: vec![
            Matrix::zero(0, 0),
            perm(&[&["0", "0", "1"], &["1", "0", "0"], &["0", "1", "0"]]),
            perm(&[&["0", "0", "1"], &["1", "0", "0"], &["0", "1", "0"]]),
        ],
    };
    close_group(dgla.space(), &[transposition, cycle], 100).unwrap()
}

/// heis weights: e1 -> +1, e2 -> -1, f -> 0.
pub fn heis_torus() -> TorusAction {
    TorusAction {
        rank: 1,
        weights: vec![vec![], vec![vec![1], vec![-1]], vec![vec![0]]],
    }
}

/// mixed weights: e1 -> 2, e2 -> 1, f1 -> 2, f2 -> 3.
pub fn mixed_torus() -> TorusAction {
    TorusAction {
        rank: 1,
        weights: vec![vec![], vec![vec![2], vec![1]], vec![vec![2], vec![3]]],
    }
}

/// heis swap action: e1 <-> e2, f fixed.
pub fn heis_swap_action() -> FiniteAction {
    let dgla = heis();
    let g = GroupElement {
        per_degree: vec![
            Matrix::zero(0, 0),
            mat(&[&["0", "1"], &["1", "0"]]),
            Matrix::identity(1),
        ],
    };
    close_group(dgla.space(), &[g], 10).unwrap()
}
