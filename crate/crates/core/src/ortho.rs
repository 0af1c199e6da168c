//! Rank-revealing orthonormalization of row sets.

use crate::matrix::{dot, Matrix};
use crate::tol::Tolerances;

/// Orthonormalizes the rows of `rows` by pivoted modified Gram-Schmidt.
///
/// Returns the orthonormal basis (rows, same span) and the numerical rank.
/// The pivot order always takes the remaining row with the largest
/// residual norm; residuals at or below the rank threshold are dropped.
/// All-zero input yields rank 0 and no basis; the caller decides whether
/// that is an error.
pub fn orthonormalize(rows: &Matrix, tol: &Tolerances) -> (Option<Matrix>, usize) {
    let threshold = tol.rank_threshold(rows.rows(), rows.cols(), rows.max_row_norm());
    let mut work: Vec<Vec<f64>> = rows.to_row_vecs();
    let mut used = vec![false; work.len()];
    let mut basis: Vec<Vec<f64>> = Vec::new();

    loop {
        let norms: Vec<Option<f64>> = work
            .iter()
            .enumerate()
            .map(|(i, row)| (!used[i]).then(|| dot(row, row).sqrt()))
            .collect();
        let (pick, norm) = match pivot_index(&norms) {
            Some(b) => b,
            None => break,
        };
        if norm <= threshold {
            break;
        }
        used[pick] = true;
        let mut q: Vec<f64> = work[pick].iter().map(|v| v / norm).collect();
        // second orthogonalization pass against the accepted basis
        reorthogonalize(&mut q, &basis);
        for (i, row) in work.iter_mut().enumerate() {
            if used[i] {
                continue;
            }
            let c = dot(row, &q);
            for (r, qv) in row.iter_mut().zip(&q) {
                *r -= c * qv;
            }
        }
        basis.push(q);
    }

    let rank = basis.len();
    if rank == 0 {
        (None, 0)
    } else {
        (
            Some(Matrix::from_rows(&basis).expect("basis rows are finite")),
            rank,
        )
    }
}

/// Earliest index whose norm ties the maximum within a relative sliver,
/// so re-running on an already orthonormal set keeps the row order.
fn pivot_index(norms: &[Option<f64>]) -> Option<(usize, f64)> {
    let max = norms
        .iter()
        .flatten()
        .fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    if !max.is_finite() {
        return None;
    }
    norms
        .iter()
        .enumerate()
        .find_map(|(i, n)| n.filter(|&v| v >= max * (1.0 - 1e-12)).map(|v| (i, v)))
}

fn reorthogonalize(q: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(q, b);
        for (qv, bv) in q.iter_mut().zip(b) {
            *qv -= c * bv;
        }
    }
    let norm = dot(q, q).sqrt();
    if norm > 0.0 {
        for qv in q.iter_mut() {
            *qv /= norm;
        }
    }
}

/// Completes an orthonormal row set to a full orthonormal frame of E_n.
///
/// Candidates are the standard axis vectors; at each step the residual
/// with the largest norm is orthonormalized and accepted. Returns the
/// `n - basis.rows()` new rows.
pub fn complete_to_frame(basis: &Matrix) -> Matrix {
    let n = basis.cols();
    let missing = n - basis.rows();
    assert!(missing > 0, "frame already complete");
    complete_against(&basis.to_row_vecs(), &Matrix::identity(n), missing)
}

/// Extends `accepted` (orthonormal rows) by `count` rows drawn from the
/// span of `candidates`, largest residual first.
pub fn complete_against(accepted: &[Vec<f64>], candidates: &Matrix, count: usize) -> Matrix {
    let mut residuals: Vec<Vec<f64>> = candidates.to_row_vecs();
    for r in residuals.iter_mut() {
        for b in accepted {
            let c = dot(r, b);
            for (rv, bv) in r.iter_mut().zip(b) {
                *rv -= c * bv;
            }
        }
    }
    let mut all: Vec<Vec<f64>> = accepted.to_vec();
    let mut new_rows: Vec<Vec<f64>> = Vec::with_capacity(count);
    for _ in 0..count {
        let norms: Vec<Option<f64>> = residuals.iter().map(|r| Some(dot(r, r).sqrt())).collect();
        let (pick, norm) = pivot_index(&norms).expect("candidate pool exhausted");
        assert!(norm > 0.0, "candidates do not span the missing directions");
        let mut q: Vec<f64> = residuals[pick].iter().map(|v| v / norm).collect();
        reorthogonalize(&mut q, &all);
        for r in residuals.iter_mut() {
            let c = dot(r, &q);
            for (rv, qv) in r.iter_mut().zip(&q) {
                *rv -= c * qv;
            }
        }
        all.push(q.clone());
        new_rows.push(q);
    }
    Matrix::from_rows(&new_rows).expect("completed rows are finite")
}
