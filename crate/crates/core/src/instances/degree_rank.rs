use std::sync::Arc;

use num_rational::BigRational;

use super::InstanceError;
use crate::family::{AdmissibleFamily, Subset};
use crate::slope::{validate_classical_axioms, DegreeRankLabels};

/// Member lists of the full power set of `{0..n-1}`, by bitmask.
pub fn boolean_lists(n: usize) -> Vec<Vec<usize>> {
    (0..1u64 << n).map(|b| Subset(b).elements().collect()).collect()
}

/// A family with degree/rank labels satisfying the classical axioms.
pub fn build_degree_rank(
    ground_size: usize,
    gamma: &[Vec<usize>],
    deg: Vec<BigRational>,
    rk: Vec<u64>,
) -> Result<(Arc<AdmissibleFamily>, DegreeRankLabels), InstanceError> {
    let family = AdmissibleFamily::from_lists(ground_size, gamma)?;
    let labels = DegreeRankLabels::new(&family, deg, rk)?;
    if let Some(v) = validate_classical_axioms(&family, &labels).violations.into_iter().next() {
        return Err(InstanceError::ClassicalAxiomsFail(v));
    }
    Ok((Arc::new(family), labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::classical_hn;
    use crate::family::MemberId;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn boolean_two() {
        let (fam, labels) =
            build_degree_rank(2, &boolean_lists(2), vec![q(0), q(2), q(1), q(3)], vec![0, 1, 1, 2]).unwrap();
        let c = classical_hn(&fam, &labels).unwrap();
        assert_eq!(c.filtration.members(), &[MemberId(0), MemberId(1), MemberId(3)]);
    }

    #[test]
    fn chains_are_always_valid() {
        let gamma = vec![vec![], vec![0], vec![0, 1], vec![0, 1, 2]];
        assert!(build_degree_rank(3, &gamma, vec![q(5), q(-7), q(100), q(0)], vec![0, 2, 3, 9]).is_ok());
    }

    #[test]
    fn non_modular_rank_is_rejected() {
        let err = build_degree_rank(2, &boolean_lists(2), vec![q(0); 4], vec![0, 1, 1, 3]).unwrap_err();
        assert!(matches!(err, InstanceError::ClassicalAxiomsFail(_)));
    }
}
