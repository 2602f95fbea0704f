use std::sync::Arc;

use super::degree_rank::boolean_lists;
use super::InstanceError;
use crate::family::{AdmissibleFamily, MemberId};
use crate::poset::{ValuePoset, DEFAULT_FLOAT_TOLERANCE};
use crate::slope::SlopeFunction;

pub const JACOBI_OFF_DIAGONAL_TARGET: f64 = 1e-10;
pub const JACOBI_MAX_SWEEPS: usize = 50;
/// 2^12 members is the default family size limit.
const MAX_GROUPS: usize = 12;

/// A distinct eigenvalue and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub multiplicity: usize,
}

/// Power set of the eigenvalue groups with `μ(B/A)` the largest eigenvalue
/// among the groups in `B ∖ A`.
#[derive(Debug, Clone)]
pub struct EigenInstance {
    /// Descending by value.
    pub groups: Vec<EigenGroup>,
    pub tolerance: f64,
    pub matrix: Option<Vec<Vec<f64>>>,
    pub slope: SlopeFunction,
}

impl EigenInstance {
    pub fn family(&self) -> &AdmissibleFamily {
        self.slope.family()
    }

    /// Total multiplicity of the groups in `m`.
    pub fn dimension(&self, m: MemberId) -> usize {
        self.family().subset(m).elements().map(|g| self.groups[g].multiplicity).sum()
    }
}

/// Sorts descending and merges runs whose consecutive gaps are at most
/// `tol`. A group's value is the mean of its run.
pub fn group_eigenvalues(eigs: &[f64], tol: f64) -> Result<Vec<EigenGroup>, InstanceError> {
    if eigs.is_empty() {
        return Err(InstanceError::EmptySpectrum);
    }
    if let Some(&x) = eigs.iter().find(|x| !x.is_finite()) {
        return Err(InstanceError::NonFinite(x));
    }
    let mut sorted = eigs.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut runs: Vec<Vec<f64>> = Vec::new();
    for x in sorted {
        match runs.last_mut() {
            Some(run) if run[run.len() - 1] - x <= tol => run.push(x),
            _ => runs.push(vec![x]),
        }
    }
    Ok(runs
        .into_iter()
        .map(|r| EigenGroup { value: r.iter().sum::<f64>() / r.len() as f64, multiplicity: r.len() })
        .collect())
}

fn instance(groups: Vec<EigenGroup>, tol: f64, matrix: Option<Vec<Vec<f64>>>) -> Result<EigenInstance, InstanceError> {
    if groups.len() > MAX_GROUPS {
        return Err(InstanceError::TooManyGroups { groups: groups.len(), limit: MAX_GROUPS });
    }
    let g = groups.len();
    let family = Arc::new(AdmissibleFamily::from_lists(g, &boolean_lists(g))?);
    let poset = Arc::new(ValuePoset::float_reals(tol)?);
    let slope = SlopeFunction::max_weight(family, poset, groups.iter().map(|g| g.value).collect())?;
    Ok(EigenInstance { groups, tolerance: tol, matrix, slope })
}

/// Eigen instance from a list of eigenvalues with multiplicity.
pub fn build_eigen(eigs: &[f64]) -> Result<EigenInstance, InstanceError> {
    instance(group_eigenvalues(eigs, DEFAULT_FLOAT_TOLERANCE)?, DEFAULT_FLOAT_TOLERANCE, None)
}

/// Eigen instance from the spectrum of a symmetric matrix. `tol` bounds the
/// asymmetry and is the grouping tolerance.
pub fn build_eigen_from_matrix(matrix: &[Vec<f64>], tol: f64) -> Result<EigenInstance, InstanceError> {
    let eigs = jacobi_eigenvalues(matrix, tol)?;
    instance(group_eigenvalues(&eigs, tol)?, tol, Some(matrix.to_vec()))
}

/// Power set of individual eigenvectors, each weighted by its eigenvalue.
/// Eigenvalues are sorted descending first.
pub fn build_eigen_per_vector(eigs: &[f64]) -> Result<SlopeFunction, InstanceError> {
    if eigs.is_empty() {
        return Err(InstanceError::EmptySpectrum);
    }
    if eigs.len() > MAX_GROUPS {
        return Err(InstanceError::TooManyGroups { groups: eigs.len(), limit: MAX_GROUPS });
    }
    let mut sorted = eigs.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let family = Arc::new(AdmissibleFamily::from_lists(sorted.len(), &boolean_lists(sorted.len()))?);
    let poset = Arc::new(ValuePoset::float_reals(DEFAULT_FLOAT_TOLERANCE)?);
    Ok(SlopeFunction::max_weight(family, poset, sorted)?)
}

fn off_diagonal_norm(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j {
                s += x * x;
            }
        }
    }
    s.sqrt()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, in
/// diagonal order.
pub fn jacobi_eigenvalues(matrix: &[Vec<f64>], tol: f64) -> Result<Vec<f64>, InstanceError> {
    let n = matrix.len();
    if n == 0 {
        return Err(InstanceError::EmptySpectrum);
    }
    if matrix.iter().any(|r| r.len() != n) {
        return Err(InstanceError::NotSquare);
    }
    for (i, row) in matrix.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if !x.is_finite() {
                return Err(InstanceError::NonFinite(x));
            }
            if (x - matrix[j][i]).abs() > tol {
                return Err(InstanceError::NotSymmetric { i: i.min(j), j: i.max(j) });
            }
        }
    }
    // symmetrize so rounding in the input does not bias the rotations
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 0.5 * (matrix[i][j] + matrix[j][i])).collect()).collect();
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < JACOBI_OFF_DIAGONAL_TARGET {
            return Ok((0..n).map(|i| a[i][i]).collect());
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (kp, kq) = (row[p], row[q]);
                    row[p] = c * kp - s * kq;
                    row[q] = s * kp + c * kq;
                }
                let (head, tail) = a.split_at_mut(q);
                for (pk, qk) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                    (*pk, *qk) = (c * *pk - s * *qk, s * *pk + c * *qk);
                }
            }
        }
    }
    let off = off_diagonal_norm(&a);
    if off < JACOBI_OFF_DIAGONAL_TARGET {
        return Ok((0..n).map(|i| a[i][i]).collect());
    }
    Err(InstanceError::JacobiNoConvergence { sweeps: JACOBI_MAX_SWEEPS, off })
}
