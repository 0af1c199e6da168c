//! Centralized numerical tolerances.
//!
//! Every threshold the library branches on is either a field of
//! [`Tolerances`] (overridable per call and from the CLI) or one of the
//! fixed constants below, so no operation carries ad-hoc magic numbers.

/// Tunable tolerances threaded through the subspace operations.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Absolute numerical-rank threshold for pivoted orthonormalization.
    /// `None` selects the data-driven default
    /// `max(rows, cols) * machine_epsilon * largest_row_norm`.
    pub rank: Option<f64>,
    /// Maximum orthonormality residual admitted for a cached basis.
    pub orth: f64,
    /// Two eigenvalues belong to the same principal value iff they differ
    /// by at most this gap; values this close to 0 or 1 snap exactly.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: None,
            orth: DEFAULT_ORTH_TOL,
            cluster: DEFAULT_CLUSTER_TOL,
        }
    }
}

impl Tolerances {
    /// Rank threshold for a matrix with the given shape and largest row norm.
    pub fn rank_threshold(&self, rows: usize, cols: usize, max_row_norm: f64) -> f64 {
        match self.rank {
            Some(t) => t,
            None => rows.max(cols) as f64 * f64::EPSILON * max_row_norm,
        }
    }
}

pub const DEFAULT_ORTH_TOL: f64 = 1e-10;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Relative asymmetry admitted before an eigensolve refuses the input.
pub(crate) const SYMMETRY_REL_TOL: f64 = 1e-12;
/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below
/// this fraction of the full Frobenius norm.
pub(crate) const JACOBI_OFF_REL_TOL: f64 = 1e-14;
pub(crate) const JACOBI_MAX_SWEEPS: usize = 64;
/// Gram determinants this far below zero are clamped to zero.
pub(crate) const GRAM_NEG_CLAMP: f64 = 1e-12;
/// Residual bound deciding subspace containment.
pub(crate) const CONTAINMENT_TOL: f64 = 1e-9;
/// Scale factor for the zero tolerance of restricted-index eigenvalues.
pub(crate) const INDEX_ZERO_REL_TOL: f64 = 1e-9;
/// Entrywise agreement required between an assembled canonical matrix and
/// the inner products of the constructed bases.
pub(crate) const FORM_ENTRY_TOL: f64 = 1e-8;
