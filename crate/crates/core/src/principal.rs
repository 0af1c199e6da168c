//! Principal values of a subspace pair, the paired decomposition into
//! principal subspaces, and the duality bookkeeping against orthogonal
//! complements.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::matrix::{dot, gram, multiply, multiply_transposed, Matrix};
use crate::ortho::{complete_against, orthonormalize};
use crate::subspace::{check_ambient, Subspace};
use crate::tol::Tolerances;

/// Interior dual values must agree to this bound between a pair and its
/// complement pair.
const DUAL_VALUE_TOL: f64 = 1e-8;

/// Distinct principal values (squared cosines) with multiplicities,
/// strictly descending, clamped to [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalSpectrum {
    values: Vec<f64>,
    multiplicities: Vec<usize>,
    total: usize,
}

impl PrincipalSpectrum {
    fn from_clusters(values: Vec<f64>, multiplicities: Vec<usize>, total: usize) -> Self {
        debug_assert_eq!(multiplicities.iter().sum::<usize>(), total);
        debug_assert!(values.windows(2).all(|w| w[0] > w[1]));
        PrincipalSpectrum {
            values,
            multiplicities,
            total,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of principal values counted with multiplicity (the smaller
    /// subspace dimension).
    pub fn total(&self) -> usize {
        self.total
    }

    /// All values repeated by multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total);
        for (v, m) in self.values.iter().zip(&self.multiplicities) {
            out.extend(std::iter::repeat_n(*v, *m));
        }
        out
    }

    /// Product of all values with multiplicity; equals cos^2 of the pair angle.
    pub fn product(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .map(|(v, m)| v.powi(*m as i32))
            .product()
    }

    /// Multiplicity of the snapped value 1 (0 when absent).
    pub fn multiplicity_of_one(&self) -> usize {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .find(|(v, _)| **v == 1.0)
            .map_or(0, |(_, m)| *m)
    }

    /// Multiplicity of the snapped value 0 (0 when absent).
    pub fn multiplicity_of_zero(&self) -> usize {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .find(|(v, _)| **v == 0.0)
            .map_or(0, |(_, m)| *m)
    }

    /// Values strictly inside (0, 1) with their multiplicities.
    pub fn interior(&self) -> Vec<(f64, usize)> {
        self.values
            .iter()
            .zip(&self.multiplicities)
            .filter(|(v, _)| **v > 0.0 && **v < 1.0)
            .map(|(v, m)| (*v, *m))
            .collect()
    }
}

/// Groups a descending list into clusters whose adjacent gaps stay within
/// `cluster_tol`; each cluster reports its mean and size.
pub fn cluster_values(sorted_desc: &[f64], cluster_tol: f64) -> (Vec<f64>, Vec<usize>) {
    let mut values = Vec::new();
    let mut multiplicities = Vec::new();
    let mut start = 0;
    while start < sorted_desc.len() {
        let mut end = start + 1;
        while end < sorted_desc.len() && sorted_desc[end - 1] - sorted_desc[end] <= cluster_tol {
            end += 1;
        }
        let mean = sorted_desc[start..end].iter().sum::<f64>() / (end - start) as f64;
        values.push(mean);
        multiplicities.push(end - start);
        start = end;
    }
    (values, multiplicities)
}

/// Clamps eigenvalues of a principal matrix into [0, 1] and snaps values
/// within `tol` of the endpoints exactly onto them.
pub(crate) fn snap_unit_interval(values: &mut [f64], tol: f64) {
    for v in values.iter_mut() {
        *v = v.clamp(0.0, 1.0);
        if *v <= tol {
            *v = 0.0;
        } else if *v >= 1.0 - tol {
            *v = 1.0;
        }
    }
}

/// The matrix `f(A1, A2) = A1 A2^T (A2 A2^T)^{-1} A2 A1^T (A1 A1^T)^{-1}`
/// whose eigenvalues are the squared principal cosines.
///
/// Both inputs must have full row rank; the inverses are applied through
/// Cholesky solves on the Gram matrices.
pub fn f_matrix(a1: &Matrix, a2: &Matrix) -> Result<Matrix> {
    if a1.cols() != a2.cols() {
        return Err(Error::DimensionMismatch {
            context: "f_matrix ambient dimensions",
            expected_rows: a1.rows(),
            expected_cols: a1.cols(),
            rows: a2.rows(),
            cols: a2.cols(),
        });
    }
    let tol = Tolerances::default();
    for (m, name) in [(a1, "f_matrix first basis"), (a2, "f_matrix second basis")] {
        let (_, rank) = orthonormalize(m, &tol);
        if rank != m.rows() {
            return Err(Error::RankDeficient {
                context: if name.ends_with("first basis") {
                    "f_matrix first basis"
                } else {
                    "f_matrix second basis"
                },
                expected: m.rows(),
                got: rank,
            });
        }
    }
    let g1 = gram(a1);
    let g2 = gram(a2);
    let t = multiply_transposed(a1, a2)?;
    let x = crate::matrix::solve_spd(&g2, &multiply_transposed(a2, a1)?)?;
    let y = multiply(&t, &x)?;
    Ok(crate::matrix::solve_spd(&g1, &y.transpose())?.transpose())
}

pub(crate) fn ordered<'a>(
    s1: &'a Subspace,
    s2: &'a Subspace,
) -> (&'a Subspace, &'a Subspace, bool) {
    if s1.dim() <= s2.dim() {
        (s1, s2, false)
    } else {
        (s2, s1, true)
    }
}

/// Eigen data of the ordered pair used by the spectrum and decomposition.
struct PrincipalEigen {
    /// Eigenvector columns in the coordinates of the smaller basis.
    vectors: Matrix,
    clusters: (Vec<f64>, Vec<usize>),
}

fn principal_eigen(sa: &Subspace, sb: &Subspace, tol: &Tolerances) -> Result<PrincipalEigen> {
    let w = multiply_transposed(sa.ortho_basis(), sb.ortho_basis())?;
    let f = gram(&w);
    let pair = sym_eigen(&f)?;
    let mut values = pair.eigenvalues.clone();
    snap_unit_interval(&mut values, tol.cluster);
    let clusters = cluster_values(&values, tol.cluster);
    Ok(PrincipalEigen {
        vectors: pair.eigenvectors,
        clusters,
    })
}

/// Principal spectrum of a subspace pair with default tolerances.
pub fn principal_spectrum(s1: &Subspace, s2: &Subspace) -> Result<PrincipalSpectrum> {
    principal_spectrum_with(s1, s2, &Tolerances::default())
}

/// Principal spectrum: snapped, clustered eigenvalues of the principal
/// matrix on orthonormal bases of the pair ordered so p <= q.
pub fn principal_spectrum_with(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<PrincipalSpectrum> {
    check_ambient(s1, s2)?;
    let (sa, sb, _) = ordered(s1, s2);
    let eig = principal_eigen(sa, sb, tol)?;
    let (values, multiplicities) = eig.clusters;
    Ok(PrincipalSpectrum::from_clusters(
        values,
        multiplicities,
        sa.dim(),
    ))
}

/// One principal value with the paired principal subspaces carrying it.
#[derive(Debug, Clone)]
pub struct PrincipalPair {
    pub value: f64,
    pub sigma1_part: Subspace,
    pub sigma2_part: Subspace,
}

/// Paired orthogonal decomposition of both subspaces by principal value.
///
/// Parts are aligned with the spectrum. For every nonzero value the two
/// parts have equal dimension; for value 0 the part of the
/// larger-dimensional input absorbs its whole zero eigenspace and may be
/// larger. When 0 is not a principal value but the dimensions differ,
/// the unmatched directions of the larger input land in `remainder`.
#[derive(Debug, Clone)]
pub struct PrincipalDecomposition {
    pub spectrum: PrincipalSpectrum,
    pub pairs: Vec<PrincipalPair>,
    pub remainder: Option<Subspace>,
}

pub fn principal_decomposition(s1: &Subspace, s2: &Subspace) -> Result<PrincipalDecomposition> {
    principal_decomposition_with(s1, s2, &Tolerances::default())
}

pub fn principal_decomposition_with(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<PrincipalDecomposition> {
    check_ambient(s1, s2)?;
    let (sa, sb, swapped) = ordered(s1, s2);
    let n = sa.ambient_dim();
    let eig = principal_eigen(sa, sb, tol)?;
    let (values, multiplicities) = eig.clusters.clone();
    let spectrum =
        PrincipalSpectrum::from_clusters(values.clone(), multiplicities.clone(), sa.dim());

    // rows of the smaller subspace grouped by cluster
    let mut a_parts: Vec<Vec<Vec<f64>>> = Vec::with_capacity(values.len());
    let mut offset = 0;
    for &mult in &multiplicities {
        let mut rows = Vec::with_capacity(mult);
        for j in offset..offset + mult {
            rows.push(map_eigvec_to_rows(&eig.vectors, j, sa.ortho_basis()));
        }
        a_parts.push(rows);
        offset += mult;
    }

    // nonzero values: the larger side carries the normalized projections
    let mut b_accumulated: Vec<Vec<f64>> = Vec::new();
    let mut b_parts: Vec<Option<Vec<Vec<f64>>>> = Vec::with_capacity(values.len());
    for (idx, &value) in values.iter().enumerate() {
        if value == 0.0 {
            b_parts.push(None);
            continue;
        }
        let mut rows = Vec::with_capacity(a_parts[idx].len());
        for a_row in &a_parts[idx] {
            let mut proj = sb.project_vector(a_row);
            for prev in &b_accumulated {
                let c = dot(&proj, prev);
                for (p, q) in proj.iter_mut().zip(prev) {
                    *p -= c * q;
                }
            }
            let norm = dot(&proj, &proj).sqrt();
            if norm == 0.0 {
                return Err(Error::Internal {
                    detail: format!("projection of a principal vector for value {value} vanished"),
                });
            }
            for p in proj.iter_mut() {
                *p /= norm;
            }
            b_accumulated.push(proj.clone());
            rows.push(proj);
        }
        b_parts.push(Some(rows));
    }

    // whatever is left of the larger subspace: the zero eigenspace
    let leftover = sb.dim() - b_accumulated.len();
    let zero_rows = if leftover > 0 {
        Some(complete_against(&b_accumulated, sb.ortho_basis(), leftover).to_row_vecs())
    } else {
        None
    };

    let has_zero_cluster = values.last().copied() == Some(0.0);
    let mut remainder_rows = zero_rows;
    let mut pairs = Vec::with_capacity(values.len());
    for (idx, &value) in values.iter().enumerate() {
        let a_sub = subspace_from_rows(n, &a_parts[idx], tol)?;
        let b_rows = match &b_parts[idx] {
            Some(rows) => rows.clone(),
            None => remainder_rows.take().ok_or_else(|| Error::Internal {
                detail: "zero principal value with empty counterpart".into(),
            })?,
        };
        let b_sub = subspace_from_rows(n, &b_rows, tol)?;
        let (sigma1_part, sigma2_part) = if swapped {
            (b_sub, a_sub)
        } else {
            (a_sub, b_sub)
        };
        pairs.push(PrincipalPair {
            value,
            sigma1_part,
            sigma2_part,
        });
    }
    debug_assert!(has_zero_cluster || remainder_rows.is_some() || sb.dim() == sa.dim());
    let remainder = match remainder_rows {
        Some(rows) => Some(subspace_from_rows(n, &rows, tol)?),
        None => None,
    };

    Ok(PrincipalDecomposition {
        spectrum,
        pairs,
        remainder,
    })
}

fn map_eigvec_to_rows(vectors: &Matrix, col: usize, basis: &Matrix) -> Vec<f64> {
    let mut out = vec![0.0; basis.cols()];
    for k in 0..basis.rows() {
        let c = vectors.get(k, col);
        for (o, b) in out.iter_mut().zip(basis.row(k)) {
            *o += c * b;
        }
    }
    out
}

fn subspace_from_rows(n: usize, rows: &[Vec<f64>], tol: &Tolerances) -> Result<Subspace> {
    Subspace::with_tolerances(n, Matrix::from_rows(rows)?, tol)
}

/// A unit vector of `s1` attaining the maximal squared cosine against
/// `s2`, together with that maximal principal value.
pub fn max_angle_direction(s1: &Subspace, s2: &Subspace) -> Result<(Vec<f64>, f64)> {
    check_ambient(s1, s2)?;
    let tol = Tolerances::default();
    let (sa, sb, swapped) = ordered(s1, s2);
    let eig = principal_eigen(sa, sb, &tol)?;
    let top_value = eig.clusters.0[0];
    let dir_small = map_eigvec_to_rows(&eig.vectors, 0, sa.ortho_basis());
    if !swapped {
        return Ok((dir_small, top_value));
    }
    if top_value == 0.0 {
        // the subspaces are orthogonal; any unit vector of s1 attains 0
        return Ok((s1.ortho_basis().row_vec(0), 0.0));
    }
    let mut proj = sb.project_vector(&dir_small);
    let norm = dot(&proj, &proj).sqrt();
    for p in proj.iter_mut() {
        *p /= norm;
    }
    Ok((proj, top_value))
}

/// Spectra of a pair and of its complement pair, with the multiplicity
/// shift of the value 1.
#[derive(Debug, Clone)]
pub struct DualSpectra {
    pub pair: PrincipalSpectrum,
    pub dual: PrincipalSpectrum,
    /// `n - p - q`; how much larger the multiplicity of 1 is on the
    /// complement side (negative when the pair side carries more).
    pub unit_mult_shift: i64,
}

/// Computes both spectra independently and verifies the duality
/// bookkeeping: interior values match with multiplicities and the
/// multiplicity of 1 shifts by exactly `n - p - q`.
pub fn dual_principal_values(s1: &Subspace, s2: &Subspace) -> Result<DualSpectra> {
    dual_principal_values_with(s1, s2, &Tolerances::default())
}

pub fn dual_principal_values_with(
    s1: &Subspace,
    s2: &Subspace,
    tol: &Tolerances,
) -> Result<DualSpectra> {
    check_ambient(s1, s2)?;
    let n = s1.ambient_dim();
    if s1.dim() == n || s2.dim() == n {
        return Err(Error::ZeroComplement { ambient: n });
    }
    let pair = principal_spectrum_with(s1, s2, tol)?;
    let c1 = s1.orthogonal_complement()?;
    let c2 = s2.orthogonal_complement()?;
    let dual = principal_spectrum_with(&c1, &c2, tol)?;
    let shift = n as i64 - s1.dim() as i64 - s2.dim() as i64;

    let pair_interior = pair.interior();
    let dual_interior = dual.interior();
    if pair_interior.len() != dual_interior.len() {
        return Err(Error::Internal {
            detail: format!(
                "interior principal values differ: {} vs {} clusters",
                pair_interior.len(),
                dual_interior.len()
            ),
        });
    }
    for ((v, m), (w, k)) in pair_interior.iter().zip(&dual_interior) {
        if (v - w).abs() > DUAL_VALUE_TOL || m != k {
            return Err(Error::Internal {
                detail: format!("interior value mismatch: {v} (x{m}) vs {w} (x{k})"),
            });
        }
    }
    let observed = dual.multiplicity_of_one() as i64 - pair.multiplicity_of_one() as i64;
    if observed != shift {
        return Err(Error::Internal {
            detail: format!("multiplicity of 1 shifted by {observed}, expected {shift}"),
        });
    }
    Ok(DualSpectra {
        pair,
        dual,
        unit_mult_shift: shift,
    })
}
