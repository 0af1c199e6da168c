#![allow(dead_code)]

//! Shared generators and oracles for the integration suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subspace_angles::matrix::{determinant, gram, multiply, Matrix};
use subspace_angles::ortho::orthonormalize;
use subspace_angles::{Subspace, Tolerances};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect();
    Matrix::new(rows, cols, data).unwrap()
}

/// Random rows scaled to unit Euclidean norm.
pub fn random_unit_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    let mut m = random_matrix(rng, rows, cols);
    loop {
        let mut ok = true;
        for i in 0..rows {
            let norm = m.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            for j in 0..cols {
                m.set(i, j, m.get(i, j) / norm);
            }
        }
        if ok {
            return m;
        }
        m = random_matrix(rng, rows, cols);
    }
}

/// A subspace of exact dimension `p` spanned by random rows.
pub fn random_subspace(rng: &mut ChaCha8Rng, n: usize, p: usize) -> Subspace {
    loop {
        let rows = random_matrix(rng, p, n);
        if let Ok(s) = Subspace::new(n, rows) {
            if s.dim() == p {
                return s;
            }
        }
    }
}

/// A random n x n orthogonal matrix (orthonormalized Gaussian-ish rows).
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        let (basis, rank) = orthonormalize(&m, &Tolerances::default());
        if rank == n {
            return basis.unwrap();
        }
    }
}

/// Applies an orthogonal change of coordinates to a subspace.
pub fn rotate_subspace(s: &Subspace, rot: &Matrix) -> Subspace {
    let rows = multiply(s.ortho_basis(), rot).unwrap();
    Subspace::new(s.ambient_dim(), rows).unwrap()
}

/// Subspace equality through projector agreement.
pub fn same_subspace(a: &Subspace, b: &Subspace, tol: f64) -> bool {
    a.dim() == b.dim() && a.projector().max_diff(&b.projector()) <= tol
}

/// Raw spanning rows with unit norm whose Gram determinant stays above
/// `floor`, so determinant-based identities keep their precision.
pub fn well_conditioned_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, floor: f64) -> Matrix {
    loop {
        let m = random_unit_rows(rng, rows, cols);
        let det = determinant(&gram(&m)).unwrap();
        if det >= floor {
            return m;
        }
    }
}

/// Rectangular block `m[r0..r1, c0..c1]`.
pub fn submatrix(m: &Matrix, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
    let mut out = Matrix::zeros(r1 - r0, c1 - c0);
    for i in r0..r1 {
        for j in c0..c1 {
            out.set(i - r0, j - c0, m.get(i, j));
        }
    }
    out
}

/// Compares two descending multisets elementwise after expansion.
pub fn multisets_match(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Random unit vector inside a subspace.
pub fn random_unit_vector_in(rng: &mut ChaCha8Rng, s: &Subspace) -> Vec<f64> {
    loop {
        let coeffs: Vec<f64> = (0..s.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let mut x = vec![0.0; s.ambient_dim()];
        for (k, c) in coeffs.iter().enumerate() {
            for (xv, bv) in x.iter_mut().zip(s.ortho_basis().row(k)) {
                *xv += c / norm * bv;
            }
        }
        return x;
    }
}
