//! Symmetric eigensolver (cyclic Jacobi) and singular values.

use crate::error::{Error, Result};
use crate::matrix::{multiply_transposed, Matrix};
use crate::tol::{JACOBI_MAX_SWEEPS, JACOBI_OFF_REL_TOL, SYMMETRY_REL_TOL};

/// Full spectrum of a symmetric matrix: eigenvalues sorted descending and
/// the matching orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenPair {
    /// Eigenvector for eigenvalue `j`, returned as a row vector.
    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.eigenvectors.rows())
            .map(|i| self.eigenvectors.get(i, j))
            .collect()
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
///
/// The input must be symmetric within `1e-12 * max_norm`; it is
/// symmetrized by averaging before iterating. Sweeps stop once the
/// off-diagonal Frobenius mass falls below `1e-14` of the Frobenius norm.
pub fn sym_eigen(a: &Matrix) -> Result<EigenPair> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let deviation = a.asymmetry();
    if deviation > SYMMETRY_REL_TOL * a.max_norm() {
        return Err(Error::NotSymmetric { deviation });
    }
    let mut m = a.symmetrized();
    let mut v = Matrix::identity(n);
    let target = JACOBI_OFF_REL_TOL * m.fro_norm();

    let mut converged = false;
    let mut last_off = 0.0;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&m);
        last_off = off;
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s, t, apq);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > target {
        return Err(Error::EigenDidNotConverge {
            sweeps: JACOBI_MAX_SWEEPS,
            off_norm: last_off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(j, j).total_cmp(&m.get(i, i)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new, v.get(i, old));
        }
    }
    Ok(EigenPair {
        eigenvalues,
        eigenvectors: vectors,
    })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m.get(i, j) * m.get(i, j);
            }
        }
    }
    s.sqrt()
}

#[allow(clippy::too_many_arguments)]
fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64, t: f64, apq: f64) {
    let n = m.rows();
    m.set(p, p, m.get(p, p) - t * apq);
    m.set(q, q, m.get(q, q) + t * apq);
    m.set(p, q, 0.0);
    m.set(q, p, 0.0);
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let mkp = m.get(k, p);
        let mkq = m.get(k, q);
        m.set(k, p, c * mkp - s * mkq);
        m.set(p, k, c * mkp - s * mkq);
        m.set(k, q, s * mkp + c * mkq);
        m.set(q, k, s * mkp + c * mkq);
    }
    for k in 0..n {
        let vkp = v.get(k, p);
        let vkq = v.get(k, q);
        v.set(k, p, c * vkp - s * vkq);
        v.set(k, q, s * vkp + c * vkq);
    }
}

/// Singular values of an arbitrary matrix, nonnegative and descending.
///
/// Computed as square roots of the eigenvalues of whichever of `A A^T`
/// and `A^T A` is smaller.
pub fn singular_values(a: &Matrix) -> Result<Vec<f64>> {
    let g = if a.rows() <= a.cols() {
        multiply_transposed(a, a)?
    } else {
        let at = a.transpose();
        multiply_transposed(&at, &at)?
    };
    let pair = sym_eigen(&g)?;
    Ok(pair
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect())
}
