//! Builders for concrete instances: cyclic subgroup lattices, spectral
//! lattices, degree/rank lattices and the `‖·‖_k` normed lattice.

mod cyclic;
mod degree_rank;
mod eigen;
mod normk;

use thiserror::Error;

use crate::family::FamilyError;
use crate::poset::PosetError;
use crate::slope::{ClassicalViolation, SlopeError};

pub use cyclic::{build_cyclic, CyclicGroupInstance};
pub use degree_rank::{boolean_lists, build_degree_rank};
pub use eigen::{
    build_eigen, build_eigen_from_matrix, build_eigen_per_vector, group_eigenvalues, jacobi_eigenvalues, EigenGroup,
    EigenInstance, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL_TARGET,
};
pub use normk::{build_norm_k_demo, norm_k, NormKInstance, SMALLEST_VECTOR_GRID};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InstanceError {
    #[error("n must be between 2 and 64, got {0}")]
    BadOrder(usize),
    #[error("the eigenvalue list is empty")]
    EmptySpectrum,
    #[error("eigenvalue {0} is not finite")]
    NonFinite(f64),
    #[error("{groups} eigenvalue groups exceed the limit of {limit}")]
    TooManyGroups { groups: usize, limit: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off})")]
    JacobiNoConvergence { sweeps: usize, off: f64 },
    #[error("k must exceed sqrt(2), got {0}")]
    KTooSmall(f64),
    #[error("{0}")]
    ClassicalAxiomsFail(ClassicalViolation),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}
