//! Dense row-major matrix kernels.
//!
//! A minimal real matrix type plus the factorizations the subspace layer
//! builds on: multiplication, LU determinant and solve, and a Cholesky
//! solve for symmetric positive definite systems. Vectors throughout the
//! crate are row vectors and bases are stacked as matrix rows.

use crate::error::{Error, Result};

/// Dense real matrix, entries stored row-major.
///
/// Construction rejects empty shapes and non-finite entries, so every
/// `Matrix` in circulation is a finite `rows x cols` block with
/// `rows, cols >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "Matrix::new",
                expected_rows: rows,
                expected_cols: cols,
                rows: data.len() / cols.max(1),
                cols,
            });
        }
        for (k, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteEntry {
                    row: k / cols,
                    col: k % cols,
                });
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from row slices; rows must be nonempty and uniform.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let cols = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "Matrix::from_rows",
                    expected_rows: i,
                    expected_cols: cols,
                    rows: i,
                    cols: r.len(),
                });
            }
        }
        let data = rows.iter().flatten().copied().collect();
        Matrix::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-sized matrix");
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<f64> {
        self.row(i).to_vec()
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest Euclidean row norm.
    pub fn max_row_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| dot(self.row(i), self.row(i)).sqrt())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "Matrix::sub",
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: other.rows,
                cols: other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Max-norm of the difference, for residual checks.
    pub fn max_diff(&self, other: &Matrix) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Maximum absolute asymmetry `|a_ij - a_ji|` over a square matrix.
    pub fn asymmetry(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        dev
    }

    /// Replaces a square matrix by its symmetric part `(A + A^T) / 2`.
    pub fn symmetrized(&self) -> Matrix {
        debug_assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Standard matrix product.
pub fn multiply(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            context: "multiply",
            expected_rows: a.cols,
            expected_cols: b.cols,
            rows: b.rows,
            cols: b.cols,
        });
    }
    let mut c = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == 0.0 {
                continue;
            }
            for j in 0..b.cols {
                c.data[i * b.cols + j] += aik * b.get(k, j);
            }
        }
    }
    Ok(c)
}

/// `A * B^T` without forming the transpose.
pub fn multiply_transposed(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch {
            context: "multiply_transposed",
            expected_rows: a.rows,
            expected_cols: a.cols,
            rows: b.rows,
            cols: b.cols,
        });
    }
    let mut c = Matrix::zeros(a.rows, b.rows);
    for i in 0..a.rows {
        for j in 0..b.rows {
            c.data[i * b.rows + j] = dot(a.row(i), b.row(j));
        }
    }
    Ok(c)
}

/// Gram matrix of the rows: `A * A^T`.
pub fn gram(a: &Matrix) -> Matrix {
    multiply_transposed(a, a).expect("gram: shapes agree by construction")
}

struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
    /// Index of the first pivot that vanished, if any.
    singular_at: Option<usize>,
}

/// LU with partial pivoting; keeps going after a zero pivot so the
/// determinant of a singular matrix comes out as exactly zero.
fn lu_factor(a: &Matrix) -> Result<Lu> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut lu = a.data.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular_at = None;

    for k in 0..n {
        let mut piv = k;
        let mut best = lu[k * n + k].abs();
        for i in (k + 1)..n {
            let v = lu[i * n + k].abs();
            if v > best {
                best = v;
                piv = i;
            }
        }
        if best == 0.0 {
            if singular_at.is_none() {
                singular_at = Some(k);
            }
            continue;
        }
        if piv != k {
            for j in 0..n {
                lu.swap(k * n + j, piv * n + j);
            }
            perm.swap(k, piv);
            sign = -sign;
        }
        let pivot = lu[k * n + k];
        for i in (k + 1)..n {
            let factor = lu[i * n + k] / pivot;
            lu[i * n + k] = factor;
            for j in (k + 1)..n {
                lu[i * n + j] -= factor * lu[k * n + j];
            }
        }
    }

    Ok(Lu {
        n,
        lu,
        perm,
        sign,
        singular_at,
    })
}

/// Determinant via LU with partial pivoting; exact sign, zero when a pivot
/// vanishes.
pub fn determinant(a: &Matrix) -> Result<f64> {
    let f = lu_factor(a)?;
    if f.singular_at.is_some() {
        return Ok(0.0);
    }
    let mut det = f.sign;
    for k in 0..f.n {
        det *= f.lu[k * f.n + k];
    }
    Ok(det)
}

/// Solves `A X = B` for a general square `A` through the LU factors.
pub fn lu_solve(a: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let f = lu_factor(a)?;
    if f.singular_at.is_some() {
        return Err(Error::Singular {
            context: "lu_solve",
        });
    }
    let n = f.n;
    if rhs.rows != n {
        return Err(Error::DimensionMismatch {
            context: "lu_solve",
            expected_rows: n,
            expected_cols: rhs.cols,
            rows: rhs.rows,
            cols: rhs.cols,
        });
    }
    let mut x = Matrix::zeros(n, rhs.cols);
    for c in 0..rhs.cols {
        // forward substitution on the permuted rhs
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = rhs.get(f.perm[i], c);
            for j in 0..i {
                s -= f.lu[i * n + j] * y[j];
            }
            y[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= f.lu[i * n + j] * x.get(j, c);
            }
            x.set(i, c, s / f.lu[i * n + i]);
        }
    }
    Ok(x)
}

/// Solves `A X = B` for symmetric positive definite `A` by Cholesky.
///
/// A nonpositive pivot rejects the matrix as not positive definite.
pub fn solve_spd(a: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    let l = cholesky(a)?;
    let n = a.rows;
    if rhs.rows != n {
        return Err(Error::DimensionMismatch {
            context: "solve_spd",
            expected_rows: n,
            expected_cols: rhs.cols,
            rows: rhs.rows,
            cols: rhs.cols,
        });
    }
    let mut x = Matrix::zeros(n, rhs.cols);
    for c in 0..rhs.cols {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = rhs.get(i, c);
            for j in 0..i {
                s -= l.get(i, j) * y[j];
            }
            y[i] = s / l.get(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for j in (i + 1)..n {
                s -= l.get(j, i) * x.get(j, c);
            }
            x.set(i, c, s / l.get(i, i));
        }
    }
    Ok(x)
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    let n = a.rows;
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if d <= 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let dj = d.sqrt();
        l.set(j, j, dj);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / dj);
        }
    }
    Ok(l)
}
