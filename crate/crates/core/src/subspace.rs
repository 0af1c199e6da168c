//! Subspaces of E_n, Gram determinants, the subspace angle, complements,
//! containment, and the bordered-determinant projection.

use crate::error::{Error, Result};
use crate::matrix::{determinant, dot, gram, multiply, multiply_transposed, Matrix};
use crate::ortho::{complete_to_frame, orthonormalize};
use crate::tol::{Tolerances, CONTAINMENT_TOL, GRAM_NEG_CLAMP};

/// A linear subspace of E_n: the user-supplied spanning rows plus a
/// cached orthonormal basis and the numerical rank.
///
/// Immutable after construction; all operations treat it as a value.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    raw_basis: Matrix,
    ortho_basis: Matrix,
    dim: usize,
    tol: Tolerances,
}

impl Subspace {
    /// Builds a subspace from spanning rows with default tolerances.
    pub fn new(ambient_dim: usize, spanning_rows: Matrix) -> Result<Self> {
        Subspace::with_tolerances(ambient_dim, spanning_rows, &Tolerances::default())
    }

    pub fn with_tolerances(
        ambient_dim: usize,
        spanning_rows: Matrix,
        tol: &Tolerances,
    ) -> Result<Self> {
        if spanning_rows.cols() != ambient_dim {
            return Err(Error::DimensionMismatch {
                context: "Subspace rows vs ambient dimension",
                expected_rows: spanning_rows.rows(),
                expected_cols: ambient_dim,
                rows: spanning_rows.rows(),
                cols: spanning_rows.cols(),
            });
        }
        let (basis, rank) = orthonormalize(&spanning_rows, tol);
        let ortho_basis = basis.ok_or(Error::DegenerateSubspace)?;
        let residual = gram(&ortho_basis).max_diff(&Matrix::identity(rank));
        if residual > tol.orth {
            return Err(Error::Internal {
                detail: format!("cached basis orthonormality residual {residual:e}"),
            });
        }
        Ok(Subspace {
            ambient_dim,
            raw_basis: spanning_rows,
            ortho_basis,
            dim: rank,
            tol: tol.clone(),
        })
    }

    /// Wraps rows of the standard basis: span{e_1, ..., e_dim} in E_n.
    pub fn from_axes(ambient_dim: usize, dim: usize) -> Result<Self> {
        let mut rows = Matrix::zeros(dim, ambient_dim);
        for i in 0..dim {
            rows.set(i, i, 1.0);
        }
        Subspace::new(ambient_dim, rows)
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn raw_basis(&self) -> &Matrix {
        &self.raw_basis
    }

    pub fn ortho_basis(&self) -> &Matrix {
        &self.ortho_basis
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Orthogonal projector onto the subspace, acting on row vectors from
    /// the right: `x_projected = x * P` with `P = Q^T Q`.
    pub fn projector(&self) -> Matrix {
        multiply(&self.ortho_basis.transpose(), &self.ortho_basis).expect("projector shapes agree")
    }

    /// Projects a row vector onto the subspace through the cached basis.
    pub fn project_vector(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ambient_dim];
        for i in 0..self.dim {
            let c = dot(x, self.ortho_basis.row(i));
            for (o, b) in out.iter_mut().zip(self.ortho_basis.row(i)) {
                *o += c * b;
            }
        }
        out
    }

    /// Squared cosine of the angle between a unit row vector and the subspace.
    pub fn cos2_with_vector(&self, x: &[f64]) -> f64 {
        (0..self.dim)
            .map(|i| {
                let c = dot(x, self.ortho_basis.row(i));
                c * c
            })
            .sum()
    }

    /// The orthogonal complement, obtained by completing the cached basis
    /// to a full orthonormal frame of E_n.
    pub fn orthogonal_complement(&self) -> Result<Subspace> {
        if self.dim == self.ambient_dim {
            return Err(Error::ZeroComplement {
                ambient: self.ambient_dim,
            });
        }
        let rest = complete_to_frame(&self.ortho_basis);
        Subspace::with_tolerances(self.ambient_dim, rest, &self.tol)
    }
}

/// Angle between two subspaces together with the quantities it is built
/// from: cos phi = sqrt(det[M M^T]) / (sqrt(Gamma_1) sqrt(Gamma_2)).
#[derive(Debug, Clone, PartialEq)]
pub struct AngleResult {
    /// Cosine of the acute representative, in [0, 1].
    pub cos_phi: f64,
    /// Acute angle in radians, in [0, pi/2].
    pub phi: f64,
    /// Determinant of M M^T for the internally orthonormalized bases.
    pub det_mmt: f64,
    /// Gram determinant of the first (smaller) basis; 1 up to rounding.
    pub gamma1: f64,
    /// Gram determinant of the second basis; 1 up to rounding.
    pub gamma2: f64,
}

/// Gram determinant of the chosen basis of `s`.
///
/// With `use_raw` the raw spanning rows must be linearly independent;
/// otherwise the cached orthonormal basis is used and the result is 1 up
/// to rounding. Slightly negative determinants are clamped to zero.
pub fn gram_determinant(s: &Subspace, use_raw: bool) -> Result<f64> {
    let basis = if use_raw {
        require_independent_raw(s, "gram_determinant")?;
        s.raw_basis()
    } else {
        s.ortho_basis()
    };
    let det = determinant(&gram(basis))?;
    debug_assert!(det > -GRAM_NEG_CLAMP);
    Ok(det.max(0.0))
}

/// The p x q matrix of pairwise inner products between bases of `s1` and `s2`.
pub fn cross_gram(s1: &Subspace, s2: &Subspace, use_raw: bool) -> Result<Matrix> {
    check_ambient(s1, s2)?;
    let (b1, b2) = if use_raw {
        (s1.raw_basis(), s2.raw_basis())
    } else {
        (s1.ortho_basis(), s2.ortho_basis())
    };
    multiply_transposed(b1, b2)
}

/// Angle between two subspaces of the same ambient space.
///
/// The pair is ordered internally so the first dimension does not exceed
/// the second, and orthonormal bases are used, which makes both Gram
/// determinants 1. The acute representative is returned; pi - phi is the
/// other admissible angle.
pub fn angle_between(s1: &Subspace, s2: &Subspace) -> Result<AngleResult> {
    check_ambient(s1, s2)?;
    let (sa, sb) = if s1.dim() <= s2.dim() {
        (s1, s2)
    } else {
        (s2, s1)
    };
    let m = cross_gram(sa, sb, false)?;
    let det_mmt = determinant(&gram(&m))?.max(0.0);
    let gamma1 = gram_determinant(sa, false)?;
    let gamma2 = gram_determinant(sb, false)?;
    let cos_phi = (det_mmt.sqrt() / (gamma1.sqrt() * gamma2.sqrt())).clamp(0.0, 1.0);
    Ok(AngleResult {
        cos_phi,
        phi: cos_phi.acos(),
        det_mmt,
        gamma1,
        gamma2,
    })
}

/// Containment test from the equality condition of the Gram inequality.
///
/// True iff every basis vector of `inner` stays fixed under projection
/// onto `outer` (residual below 1e-9) and, cross-checking the
/// determinant criterion, det[M M^T] of the orthonormal bases is 1
/// within 1e-9 with dim(inner) <= dim(outer).
pub fn is_subspace_of(inner: &Subspace, outer: &Subspace) -> Result<bool> {
    check_ambient(inner, outer)?;
    if inner.dim() > outer.dim() {
        return Ok(false);
    }
    let b1 = inner.ortho_basis();
    let projected = multiply(b1, &outer.projector())?;
    let residual = b1.max_diff(&projected);

    let m = cross_gram(inner, outer, false)?;
    let det_mmt = determinant(&gram(&m))?;
    let det_ok = (det_mmt - 1.0).abs() <= CONTAINMENT_TOL;

    Ok(residual <= CONTAINMENT_TOL && det_ok)
}

/// Orthogonal projection of `x` onto `s` by literal cofactor expansion of
/// the bordered (k+1) x (k+1) determinant in the raw basis.
///
/// The first column of the bordered matrix carries the basis vectors
/// themselves; expanding along it yields x' as a combination of the raw
/// rows, divided by minus the Gram determinant.
pub fn project_gram(x: &[f64], s: &Subspace) -> Result<Vec<f64>> {
    if x.len() != s.ambient_dim() {
        return Err(Error::DimensionMismatch {
            context: "project_gram vector length",
            expected_rows: 1,
            expected_cols: s.ambient_dim(),
            rows: 1,
            cols: x.len(),
        });
    }
    require_independent_raw(s, "project_gram")?;
    let a = s.raw_basis();
    let k = a.rows();
    let g = gram(a);
    let gamma = determinant(&g)?;

    // scalar part of the bordered matrix: row 0 holds (x, a_j), the rest
    // is the Gram matrix; column 0 is the vector column being expanded
    let mut coeffs = vec![0.0; k];
    for i in 0..k {
        // minor obtained by deleting row i+1 and the vector column
        let mut minor = Matrix::zeros(k, k);
        for (mi, src) in (0..=k).filter(|&r| r != i + 1).enumerate() {
            for j in 0..k {
                let v = if src == 0 {
                    dot(x, a.row(j))
                } else {
                    g.get(src - 1, j)
                };
                minor.set(mi, j, v);
            }
        }
        let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[i] = sign * determinant(&minor)?;
    }

    let mut out = vec![0.0; s.ambient_dim()];
    for i in 0..k {
        let c = -coeffs[i] / gamma;
        for (o, av) in out.iter_mut().zip(a.row(i)) {
            *o += c * av;
        }
    }
    Ok(out)
}

fn require_independent_raw(s: &Subspace, context: &'static str) -> Result<()> {
    let (_, rank) = orthonormalize(s.raw_basis(), s.tolerances());
    if rank != s.raw_basis().rows() {
        return Err(Error::DependentRows {
            context: match context {
                "gram_determinant" => "gram_determinant (raw basis)",
                _ => "project_gram (raw basis)",
            },
        });
    }
    Ok(())
}

pub(crate) fn check_ambient(s1: &Subspace, s2: &Subspace) -> Result<()> {
    if s1.ambient_dim() != s2.ambient_dim() {
        return Err(Error::AmbientMismatch {
            left: s1.ambient_dim(),
            right: s2.ambient_dim(),
        });
    }
    Ok(())
}
