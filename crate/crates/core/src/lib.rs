//! Angles between linear subspaces of Euclidean n-space.
//!
//! The crate computes the angle between two subspaces of arbitrary
//! dimensions from Gram determinants, their principal values and paired
//! principal-subspace decompositions, the block canonical matrix and
//! canonical bases of a subspace pair, the duality between a pair and its
//! orthogonal complements, and restricted-inertia splits of symmetric
//! matrices. A CLI binary exposes the same operations on CSV/JSON matrix
//! files and emits deterministic JSON reports.

pub mod canonical;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod inertia;
pub mod matfile;
pub mod matrix;
pub mod ortho;
pub mod principal;
pub mod report;
pub mod subspace;
pub mod tol;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use subspace::{AngleResult, Subspace};
pub use tol::Tolerances;
