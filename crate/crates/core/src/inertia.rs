//! Restricted inertia indices and the positive-definiteness split
//! criterion.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::{cholesky, lu_solve, multiply, Matrix};
use crate::subspace::Subspace;
use crate::tol::{INDEX_ZERO_REL_TOL, SYMMETRY_REL_TOL};

/// Negative-eigenvalue counts of a symmetric matrix, of its restriction
/// to a subspace, and of the inverse restricted to the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InertiaReport {
    /// ind(A | E_n): negative eigenvalues of A.
    pub ind_full: usize,
    /// ind(A | L): negative eigenvalues of V^T A V.
    pub ind_restricted: usize,
    /// ind(A^{-1} | L*): negative eigenvalues of W^T A^{-1} W.
    pub ind_complement: usize,
    /// Whether the additivity identity held exactly.
    pub additivity_holds: bool,
}

/// Number of negative eigenvalues of `V^T A V`, where the columns of V
/// are the cached orthonormal basis of `l`.
///
/// Eigenvalues within `1e-9 * max_norm(a)` of zero make the restriction
/// singular, which is an error.
pub fn restricted_index(a: &Matrix, l: &Subspace) -> Result<usize> {
    let restriction = restrict(a, l)?;
    let tau = INDEX_ZERO_REL_TOL * a.max_norm();
    count_negative(&restriction, tau)
}

fn restrict(a: &Matrix, l: &Subspace) -> Result<Matrix> {
    require_symmetric(a)?;
    if l.ambient_dim() != a.rows() {
        return Err(Error::AmbientMismatch {
            left: a.rows(),
            right: l.ambient_dim(),
        });
    }
    // rows of the basis on both sides: B A B^T = V^T A V
    let b = l.ortho_basis();
    multiply(&multiply(b, a)?, &b.transpose())
}

fn require_symmetric(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let deviation = a.asymmetry();
    if deviation > SYMMETRY_REL_TOL * a.max_norm() {
        return Err(Error::NotSymmetric { deviation });
    }
    Ok(())
}

fn count_negative(restriction: &Matrix, tau: f64) -> Result<usize> {
    let pair = sym_eigen(&restriction.symmetrized())?;
    let mut count = 0;
    for &lambda in &pair.eigenvalues {
        if lambda.abs() <= tau {
            return Err(Error::SingularRestriction { eigenvalue: lambda });
        }
        if lambda < 0.0 {
            count += 1;
        }
    }
    Ok(count)
}

/// Inverse of a symmetric nonsingular matrix by solving against the axis
/// vectors, symmetrized afterwards.
pub(crate) fn invert_symmetric(a: &Matrix) -> Result<Matrix> {
    let inv = lu_solve(a, &Matrix::identity(a.rows()))?;
    Ok(inv.symmetrized())
}

/// Computes all three indices independently and checks the additivity
/// identity `ind(A|E_n) = ind(A|L) + ind(A^{-1}|L*)`.
///
/// `a` must be symmetric and nonsingular, `l` a proper nonzero subspace,
/// and both restrictions nonsingular.
pub fn inertia_split(a: &Matrix, l: &Subspace) -> Result<InertiaReport> {
    require_symmetric(a)?;
    if l.ambient_dim() != a.rows() {
        return Err(Error::AmbientMismatch {
            left: a.rows(),
            right: l.ambient_dim(),
        });
    }
    let tau = INDEX_ZERO_REL_TOL * a.max_norm();
    let full = sym_eigen(&a.symmetrized())?;
    if full.eigenvalues.iter().any(|l| l.abs() <= tau) {
        return Err(Error::Singular {
            context: "inertia_split (matrix)",
        });
    }
    let ind_full = full.eigenvalues.iter().filter(|&&l| l < 0.0).count();

    let ind_restricted = restricted_index(a, l)?;

    let complement = l.orthogonal_complement()?;
    let inv = invert_symmetric(a)?;
    let ind_complement = restricted_index(&inv, &complement)?;

    Ok(InertiaReport {
        ind_full,
        ind_restricted,
        ind_complement,
        additivity_holds: ind_full == ind_restricted + ind_complement,
    })
}

/// Split criterion for positive definiteness: true iff `V^T A V` and
/// `W^T A^{-1} W` are both positive definite (decided by Cholesky).
///
/// When both restrictions pass, the full spectrum of `a` is checked to
/// exceed the zero tolerance; a violation would contradict the split
/// criterion and is reported as an internal error.
pub fn positive_definite_by_split(a: &Matrix, l: &Subspace) -> Result<bool> {
    let restriction = restrict(a, l)?;
    if cholesky(&restriction.symmetrized()).is_err() {
        return Ok(false);
    }
    let tau = INDEX_ZERO_REL_TOL * a.max_norm();
    let complement = l.orthogonal_complement()?;
    let inv = invert_symmetric(a).map_err(|_| Error::Singular {
        context: "positive_definite_by_split (inverse)",
    })?;
    let co_restriction = restrict(&inv, &complement)?;
    if cholesky(&co_restriction.symmetrized()).is_err() {
        return Ok(false);
    }
    let pair = sym_eigen(&a.symmetrized())?;
    if pair.eigenvalues.iter().any(|&l| l <= tau) {
        return Err(Error::Internal {
            detail: format!(
                "split criterion passed but the smallest eigenvalue is {:e}",
                pair.eigenvalues.last().copied().unwrap_or(0.0)
            ),
        });
    }
    Ok(true)
}
