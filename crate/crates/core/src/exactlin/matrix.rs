use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{ExactLinError, Scalar};

/// Dense matrix over the Gaussian rationals, row-major.
///
/// Zero-row and zero-column matrices are legal values; they show up
/// constantly as maps in or out of zero-dimensional graded pieces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Row-reduced echelon data of a matrix.
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(entry(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, ExactLinError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ExactLinError::RaggedRows);
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose j-th column is `cols[j]`; `rows` disambiguates
    /// the height when no columns are given.
    pub fn from_cols(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Parses row-major string entries in the scalar text format.
    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self, ExactLinError> {
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut out = Vec::with_capacity(row.len());
            for cell in row {
                out.push(cell.parse::<Scalar>()?);
            }
            parsed.push(out);
        }
        Matrix::from_rows(parsed)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = value;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose: `(A\u{2020})_{ij} = conj(A_{ji})`.
    pub fn conj_transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc += &(e * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan reduction with exact pivoting: the pivot of each column is
    /// the first nonzero entry in row order, so the result is deterministic.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(src, c).clone();
                    let b = m.get(pivot_row, c).clone();
                    m.set(src, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            let inv = m.get(pivot_row, col).inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(pivot_row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `ker A`: one vector per free column, unit at the free index.
    /// The count always equals `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let ech = self.echelon();
        let mut is_pivot = vec![None; self.cols];
        for (row, &col) in ech.pivots.iter().enumerate() {
            is_pivot[col] = Some(row);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &col) in ech.pivots.iter().enumerate() {
                v[col] = -ech.reduced.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `A x = b` (free variables set to zero), or
    /// `None` when `b` is outside the image of `A`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, ExactLinError> {
        if b.len() != self.rows {
            return Err(ExactLinError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &col) in ech.pivots.iter().enumerate() {
            x[col] = ech.reduced.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Simultaneous [`solve`](Self::solve) for every column of `b`, from a
    /// single reduction of the block matrix `[A | B]`; `None` if any column
    /// of `b` is outside the image.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>, ExactLinError> {
        if b.rows != self.rows {
            return Err(ExactLinError::DimensionMismatch {
                expected: self.rows,
                got: b.rows,
            });
        }
        let ech = self.hstack(b).echelon();
        if ech.pivots.iter().any(|&col| col >= self.cols) {
            return Ok(None);
        }
        let mut out = Matrix::zero(self.cols, b.cols);
        for (row, &col) in ech.pivots.iter().enumerate() {
            for j in 0..b.cols {
                out.set(col, j, ech.reduced.get(row, self.cols + j).clone());
            }
        }
        Ok(Some(out))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let inv = self.solve_matrix(&Matrix::identity(self.rows)).ok()??;
        Some(inv)
    }

    pub fn det(&self) -> Result<Scalar, ExactLinError> {
        if !self.is_square() {
            return Err(ExactLinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if src != col {
                det = -det;
                for c in 0..n {
                    let a = m.get(src, c).clone();
                    let b = m.get(col, c).clone();
                    m.set(src, c, b);
                    m.set(col, c, a);
                }
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..n {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    /// Exact Hermitian positive-definiteness: `M = M\u{2020}` and every leading
    /// principal minor real and strictly positive.
    pub fn is_positive_definite(&self) -> Result<bool, ExactLinError> {
        if !self.is_square() {
            return Err(ExactLinError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if !self.is_hermitian() {
            return Ok(false);
        }
        for k in 1..=self.rows {
            let minor = Matrix::from_fn(k, k, |r, c| self.get(r, c).clone()).det()?;
            if !minor.is_positive_real() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, c);
                if !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        })
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
