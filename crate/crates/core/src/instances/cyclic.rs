use std::sync::Arc;

use super::InstanceError;
use crate::family::{AdmissibleFamily, MemberId};
use crate::poset::ValuePoset;
use crate::slope::SlopeFunction;

/// Subgroup lattice of `ℤ/n` with the prime-support slope.
#[derive(Debug, Clone)]
pub struct CyclicGroupInstance {
    pub n: usize,
    /// `divisors[i]` generates member `i`; descending, so member 0 is `{0}`.
    pub divisors: Vec<usize>,
    pub primes: Vec<usize>,
    pub slope: SlopeFunction,
}

impl CyclicGroupInstance {
    /// The member `⟨d⟩`.
    pub fn member(&self, d: usize) -> Option<MemberId> {
        self.divisors.iter().position(|&x| x == d).map(MemberId)
    }

    /// `|⟨d⟩| = n / d`.
    pub fn order(&self, m: MemberId) -> usize {
        self.n / self.divisors[m.0]
    }

    pub fn family(&self) -> &AdmissibleFamily {
        self.slope.family()
    }
}

pub fn build_cyclic(n: usize) -> Result<CyclicGroupInstance, InstanceError> {
    if !(2..=64).contains(&n) {
        return Err(InstanceError::BadOrder(n));
    }
    let divisors: Vec<usize> = (1..=n).rev().filter(|d| n.is_multiple_of(*d)).collect();
    let primes: Vec<usize> = (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|q| p % q != 0)).collect();
    let lists: Vec<Vec<usize>> = divisors.iter().map(|&d| (0..n).step_by(d).collect()).collect();
    let family = Arc::new(AdmissibleFamily::from_lists(n, &lists)?);
    let poset = Arc::new(ValuePoset::reverse_inclusion(primes.iter().map(|p| p.to_string()).collect())?);
    let slope = SlopeFunction::prime_support(family, poset)?;
    Ok(CyclicGroupInstance { n, divisors, primes, slope })
}
