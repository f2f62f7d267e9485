//! Exact scalar arithmetic over the Gaussian rationals and the dense
//! linear-algebra kernel the rest of the crate builds on.

mod matrix;
mod scalar;

pub use matrix::{Echelon, Matrix};
pub use scalar::Scalar;

use thiserror::Error;

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], factor: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * factor).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Metric pairing `u\u{2020} M v`.
pub fn inner_product(m: &Matrix, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mv = m.mul_vec(v);
    u.iter()
        .zip(&mv)
        .fold(Scalar::zero(), |acc, (ui, x)| &acc + &(&ui.conj() * x))
}

#[derive(Debug, Error)]
pub enum ExactLinError {
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows have inconsistent lengths")]
    RaggedRows,
}
