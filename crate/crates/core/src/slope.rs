//! Slope functions on strict admissible pairs, minimal slopes, and the
//! slope inequality checks.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::family::{AdmissibleFamily, AdmissiblePair, FamilyError, IntervalFamily, MemberId};
use crate::poset::{LabelSet, PosetError, PosetKind, PosetValue, ValuePoset};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SlopeError {
    #[error("pair {sup}/{sub} is not a strict admissible pair")]
    NonStrictPair { sub: MemberId, sup: MemberId },
    #[error("slope table has no entry for the pair {sup}/{sub}")]
    MissingTableEntry { sub: MemberId, sup: MemberId },
    #[error("slope table has two entries for the pair {sup}/{sub}")]
    DuplicateEntry { sub: MemberId, sup: MemberId },
    #[error("member {0} is out of range")]
    UnknownMember(MemberId),
    #[error("value for {sup}/{sub}: {source}")]
    ForeignValue { sub: MemberId, sup: MemberId, source: PosetError },
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("rank does not increase from {sub} to {sup}")]
    RankCollision { sub: MemberId, sup: MemberId },
    #[error("this slope rule needs a {expected} poset")]
    WrongPoset { expected: &'static str },
    #[error("weight {0} is not finite")]
    NonFiniteWeight(f64),
    #[error("|{sup}| is not a multiple of |{sub}|")]
    NotGroupIndex { sub: MemberId, sup: MemberId },
    #[error("prime {0} has no label in the universe")]
    MissingPrimeLabel(u64),
    #[error("the value poset has no suprema")]
    SupUnavailable,
    #[error("input is not a slope function: {0}")]
    WeakInequalityFails(Box<SlopeViolation>),
    #[error("validation would examine {needed} pair combinations, over the limit of {limit}")]
    TooManyPairs { needed: u64, limit: u64 },
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Degree and rank labels for every member.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeRankLabels {
    deg: Vec<BigRational>,
    rk: Vec<u64>,
}

impl DegreeRankLabels {
    /// Checks that both label vectors cover the family and that rank strictly
    /// increases along every strict inclusion.
    pub fn new(family: &AdmissibleFamily, deg: Vec<BigRational>, rk: Vec<u64>) -> Result<Self, SlopeError> {
        for len in [deg.len(), rk.len()] {
            if len != family.len() {
                return Err(SlopeError::LabelCount { expected: family.len(), found: len });
            }
        }
        if let Some(p) = family.strict_pairs().find(|p| rk[p.sup.0] <= rk[p.sub.0]) {
            return Err(SlopeError::RankCollision { sub: p.sub, sup: p.sup });
        }
        Ok(DegreeRankLabels { deg, rk })
    }

    pub fn deg(&self, m: MemberId) -> &BigRational {
        &self.deg[m.0]
    }

    pub fn rk(&self, m: MemberId) -> u64 {
        self.rk[m.0]
    }

    pub fn degrees(&self) -> &[BigRational] {
        &self.deg
    }

    pub fn ranks(&self) -> &[u64] {
        &self.rk
    }

    /// Classical slope `(deg B - deg A) / (rk B - rk A)` of `B/A`.
    pub fn slope(&self, sub: MemberId, sup: MemberId) -> BigRational {
        let d = &self.deg[sup.0] - &self.deg[sub.0];
        let r = self.rk[sup.0] as i64 - self.rk[sub.0] as i64;
        d / BigRational::from_integer(BigInt::from(r))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Rule {
    // dense, indexed by sub * n + sup
    Table(Vec<Option<PosetValue>>),
    DegreeRank(DegreeRankLabels),
    MaxWeight(Vec<f64>),
    PrimeSupport(Vec<(u64, usize)>),
}

/// How a slope function obtains its values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backing {
    Table,
    DegreeRank,
    MaxWeight,
    PrimeSupport,
}

/// A map from strict admissible pairs of a family to a value poset.
///
/// Rule-backed values are memoized; evaluation is pure, so the cache never
/// changes observable results.
pub struct SlopeFunction {
    family: Arc<AdmissibleFamily>,
    poset: Arc<ValuePoset>,
    rule: Rule,
    memo: RwLock<HashMap<AdmissiblePair, PosetValue>>,
}

impl Clone for SlopeFunction {
    fn clone(&self) -> Self {
        SlopeFunction {
            family: self.family.clone(),
            poset: self.poset.clone(),
            rule: self.rule.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SlopeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlopeFunction")
            .field("members", &self.family.len())
            .field("poset", &self.poset.kind())
            .field("backing", &self.backing())
            .finish()
    }
}

impl SlopeFunction {
    /// Table-backed slope. The entries must cover every strict pair exactly
    /// once.
    pub fn from_table<I>(family: Arc<AdmissibleFamily>, poset: Arc<ValuePoset>, entries: I) -> Result<Self, SlopeError>
    where
        I: IntoIterator<Item = (MemberId, MemberId, PosetValue)>,
    {
        let n = family.len();
        let mut table = vec![None; n * n];
        for (sub, sup, value) in entries {
            if sub.0 >= n {
                return Err(SlopeError::UnknownMember(sub));
            }
            if sup.0 >= n {
                return Err(SlopeError::UnknownMember(sup));
            }
            if !family.is_proper_subset(sub, sup) {
                return Err(SlopeError::NonStrictPair { sub, sup });
            }
            poset.check(&value).map_err(|source| SlopeError::ForeignValue { sub, sup, source })?;
            let slot = &mut table[sub.0 * n + sup.0];
            if slot.is_some() {
                return Err(SlopeError::DuplicateEntry { sub, sup });
            }
            *slot = Some(value);
        }
        if let Some(p) = family.strict_pairs().find(|p| table[p.sub.0 * n + p.sup.0].is_none()) {
            return Err(SlopeError::MissingTableEntry { sub: p.sub, sup: p.sup });
        }
        Ok(Self::with_rule(family, poset, Rule::Table(table)))
    }

    /// Tabulates `f` over every strict pair.
    pub fn from_fn<F>(family: Arc<AdmissibleFamily>, poset: Arc<ValuePoset>, mut f: F) -> Result<Self, SlopeError>
    where
        F: FnMut(MemberId, MemberId) -> PosetValue,
    {
        let entries: Vec<_> = family.strict_pairs().map(|p| (p.sub, p.sup, f(p.sub, p.sup))).collect();
        Self::from_table(family, poset, entries)
    }

    /// Classical slope `deg/rk` of subquotients, valued in the exact reals.
    pub fn degree_rank(family: Arc<AdmissibleFamily>, labels: DegreeRankLabels) -> Result<Self, SlopeError> {
        if labels.deg.len() != family.len() {
            return Err(SlopeError::LabelCount { expected: family.len(), found: labels.deg.len() });
        }
        Ok(Self::with_rule(family, Arc::new(ValuePoset::exact_reals()), Rule::DegreeRank(labels)))
    }

    /// `μ(B/A)` is the largest weight of a ground element in `B ∖ A`. With
    /// one weight per eigenvalue this is the spectral slope.
    pub fn max_weight(
        family: Arc<AdmissibleFamily>,
        poset: Arc<ValuePoset>,
        weights: Vec<f64>,
    ) -> Result<Self, SlopeError> {
        if !matches!(*poset, ValuePoset::ExtendedReal(crate::poset::Numeric::Float { .. })) {
            return Err(SlopeError::WrongPoset { expected: "floating point extended_real" });
        }
        if weights.len() != family.ground().size() {
            return Err(SlopeError::LabelCount { expected: family.ground().size(), found: weights.len() });
        }
        if let Some(&w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(SlopeError::NonFiniteWeight(w));
        }
        Ok(Self::with_rule(family, poset, Rule::MaxWeight(weights)))
    }

    /// `μ(B/A) = {p}` when `|B|/|A|` is a power of the prime `p`, and `∅`
    /// otherwise, in a reverse-inclusion poset whose universe names the
    /// primes. Members are read as subgroups, so `|A|` must divide `|B|`.
    pub fn prime_support(family: Arc<AdmissibleFamily>, poset: Arc<ValuePoset>) -> Result<Self, SlopeError> {
        if poset.kind() != PosetKind::ReverseInclusion {
            return Err(SlopeError::WrongPoset { expected: "reverse_inclusion" });
        }
        let mut primes: Vec<(u64, usize)> = Vec::new();
        for p in family.strict_pairs() {
            let (a, b) = (family.subset(p.sub).len() as u64, family.subset(p.sup).len() as u64);
            if a == 0 || b % a != 0 {
                return Err(SlopeError::NotGroupIndex { sub: p.sub, sup: p.sup });
            }
            if let Some(q) = prime_power_base(b / a) {
                if !primes.iter().any(|&(x, _)| x == q) {
                    let label = poset.label_index(&q.to_string()).map_err(|_| SlopeError::MissingPrimeLabel(q))?;
                    primes.push((q, label));
                }
            }
        }
        Ok(Self::with_rule(family, poset, Rule::PrimeSupport(primes)))
    }

    fn with_rule(family: Arc<AdmissibleFamily>, poset: Arc<ValuePoset>, rule: Rule) -> Self {
        SlopeFunction { family, poset, rule, memo: RwLock::new(HashMap::new()) }
    }

    pub fn family(&self) -> &AdmissibleFamily {
        &self.family
    }

    pub fn family_arc(&self) -> &Arc<AdmissibleFamily> {
        &self.family
    }

    pub fn poset(&self) -> &ValuePoset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<ValuePoset> {
        &self.poset
    }

    pub fn backing(&self) -> Backing {
        match self.rule {
            Rule::Table(_) => Backing::Table,
            Rule::DegreeRank(_) => Backing::DegreeRank,
            Rule::MaxWeight(_) => Backing::MaxWeight,
            Rule::PrimeSupport(_) => Backing::PrimeSupport,
        }
    }

    /// `μ(sup/sub)`.
    pub fn eval(&self, sub: MemberId, sup: MemberId) -> Result<PosetValue, SlopeError> {
        let n = self.family.len();
        if sub.0 >= n || sup.0 >= n || !self.family.is_proper_subset(sub, sup) {
            return Err(SlopeError::NonStrictPair { sub, sup });
        }
        if let Rule::Table(t) = &self.rule {
            return t[sub.0 * n + sup.0].clone().ok_or(SlopeError::MissingTableEntry { sub, sup });
        }
        let key = AdmissiblePair::new(sub, sup);
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(sub, sup);
        self.memo.write().expect("memo lock").entry(key).or_insert_with(|| v.clone());
        Ok(v)
    }

    fn compute(&self, sub: MemberId, sup: MemberId) -> PosetValue {
        match &self.rule {
            Rule::Table(_) => unreachable!("tables are read directly"),
            Rule::DegreeRank(l) => PosetValue::Rational(l.slope(sub, sup)),
            Rule::MaxWeight(w) => {
                let diff = self.family.subset(sup).difference(self.family.subset(sub));
                PosetValue::Real(diff.elements().map(|e| w[e]).fold(f64::NEG_INFINITY, f64::max))
            }
            Rule::PrimeSupport(primes) => {
                let a = self.family.subset(sub).len() as u64;
                let b = self.family.subset(sup).len() as u64;
                match prime_power_base(b / a) {
                    Some(p) => {
                        let label = primes.iter().find(|&&(q, _)| q == p).map(|&(_, l)| l).expect("validated");
                        PosetValue::Labels(LabelSet::singleton(label))
                    }
                    None => PosetValue::Labels(LabelSet::EMPTY),
                }
            }
        }
    }

    /// Minimal slope `μ_min(sup/sub)`: the infimum of `μ(sup/F)` over members
    /// `sub ⊆ F ⊊ sup`.
    pub fn mu_min(&self, sub: MemberId, sup: MemberId) -> Result<PosetValue, SlopeError> {
        if !self.family.is_proper_subset(sub, sup) {
            return Err(SlopeError::NonStrictPair { sub, sup });
        }
        let mut values = Vec::new();
        for f in self.family.between_unchecked(sub, sup) {
            if f != sup {
                values.push(self.eval(f, sup)?);
            }
        }
        Ok(self.poset.inf_set(&values)?)
    }

    /// Strengthened slope `μ_max(W/W') = sup { μ(W̃/W') : W' ⊊ W̃ ⊆ W }`,
    /// materialized as a table.
    pub fn strengthen(&self) -> Result<SlopeFunction, SlopeError> {
        if !self.poset.has_sup() {
            return Err(SlopeError::SupUnavailable);
        }
        let report = validate_slope_inequality(self)?;
        if let Some(v) = report.violations.first() {
            return Err(SlopeError::WeakInequalityFails(Box::new(v.clone())));
        }
        let mut entries = Vec::new();
        for p in self.family.strict_pairs() {
            let mut values = Vec::new();
            for w in self.family.between_unchecked(p.sub, p.sup) {
                if w != p.sub {
                    values.push(self.eval(p.sub, w)?);
                }
            }
            let sup = self.poset.sup_set(&values)?.ok_or(SlopeError::SupUnavailable)?;
            entries.push((p.sub, p.sup, sup));
        }
        SlopeFunction::from_table(self.family.clone(), self.poset.clone(), entries)
    }

    /// The induced slope on an interval of this slope's family.
    pub fn restrict(&self, interval: &IntervalFamily) -> Result<SlopeFunction, SlopeError> {
        let family = Arc::new(interval.family.clone());
        let mut entries = Vec::new();
        for p in family.strict_pairs() {
            entries.push((p.sub, p.sup, self.eval(interval.parent_of(p.sub), interval.parent_of(p.sup))?));
        }
        SlopeFunction::from_table(family, self.poset.clone(), entries)
    }
}

/// `Some(p)` when `q = p^m` with `m >= 1`.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Some(q);
    }
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// A pair of strict pairs for which the inequality `μ(lower) <= μ(upper)`
/// was required but fails.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeViolation {
    pub lower: AdmissiblePair,
    pub upper: AdmissiblePair,
    pub lower_value: PosetValue,
    pub upper_value: PosetValue,
}

impl fmt::Display for SlopeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mu({}/{}) = {} is not <= mu({}/{}) = {}",
            self.lower.sup, self.lower.sub, self.lower_value, self.upper.sup, self.upper.sub, self.upper_value
        )
    }
}

impl SlopeViolation {
    /// Re-evaluates the witness against `sf`.
    pub fn recheck(&self, sf: &SlopeFunction, strong: bool) -> bool {
        let fam = sf.family();
        let (w1p, w1) = (self.lower.sub, self.lower.sup);
        let (w2p, w2) = (self.upper.sub, self.upper.sup);
        let shape = fam.inf_pair(w2p, w1) == w1p
            && if strong { fam.is_subset(fam.sup_pair(w1, w2p), w2) } else { fam.sup_pair(w1, w2p) == w2 };
        let fails = match (sf.eval(w1p, w1), sf.eval(w2p, w2)) {
            (Ok(a), Ok(b)) => sf.poset().not_leq(&a, &b).unwrap_or(false),
            _ => false,
        };
        shape && fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalDefect {
    /// `rk(sup) + rk(inf) != rk(a) + rk(b)`.
    RankNotModular,
    /// `deg(sup) + deg(inf) < deg(a) + deg(b)`.
    DegreeBelowParallelogram,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalViolation {
    pub a: MemberId,
    pub b: MemberId,
    pub defect: ClassicalDefect,
}

impl fmt::Display for ClassicalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.defect {
            ClassicalDefect::RankNotModular => "rank is not modular",
            ClassicalDefect::DegreeBelowParallelogram => "degree violates the super-parallelogram inequality",
        };
        write!(f, "{what} at members {} and {}", self.a, self.b)
    }
}

/// Outcome of an exhaustive axiom check.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<W> {
    /// Witnesses in canonical enumeration order, capped at
    /// [`MAX_WITNESSES`]; `violation_count` counts all of them.
    pub violations: Vec<W>,
    pub violation_count: usize,
    pub checked: usize,
}

pub const MAX_WITNESSES: usize = 64;

impl<W> ValidationReport<W> {
    fn new() -> Self {
        ValidationReport { violations: Vec::new(), violation_count: 0, checked: 0 }
    }

    fn record(&mut self, w: W) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(w);
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }
}

/// Pair combinations examined by the weak and strong validators.
pub fn validation_work(family: &AdmissibleFamily, strong: bool) -> u64 {
    let n = family.len() as u64;
    if strong {
        n * n * n
    } else {
        n * n
    }
}

/// Checks `μ(W₁/W₁') <= μ(W₂/W₂')` whenever `W₁' = inf{W₂', W₁}` and
/// `W₂ = sup{W₁, W₂'}`.
pub fn validate_slope_inequality(sf: &SlopeFunction) -> Result<ValidationReport<SlopeViolation>, SlopeError> {
    validate(sf, false, None)
}

/// As [`validate_slope_inequality`] with `W₂ ⊇ sup{W₁, W₂'}` in place of
/// equality.
pub fn validate_strong_slope_inequality(sf: &SlopeFunction) -> Result<ValidationReport<SlopeViolation>, SlopeError> {
    validate(sf, true, None)
}

/// Runs a validator, refusing up front when the work would exceed `limit`.
pub fn validate_bounded(
    sf: &SlopeFunction,
    strong: bool,
    limit: u64,
) -> Result<ValidationReport<SlopeViolation>, SlopeError> {
    validate(sf, strong, Some(limit))
}

fn validate(
    sf: &SlopeFunction,
    strong: bool,
    limit: Option<u64>,
) -> Result<ValidationReport<SlopeViolation>, SlopeError> {
    let fam = sf.family();
    if let Some(limit) = limit {
        let needed = validation_work(fam, strong);
        if needed > limit {
            return Err(SlopeError::TooManyPairs { needed, limit });
        }
    }
    let poset = sf.poset();
    let mut report = ValidationReport::new();
    // W₁' and the least admissible W₂ are determined by (W₁, W₂').
    for &w1 in fam.canonical() {
        for &w2p in fam.canonical() {
            if fam.is_subset(w1, w2p) {
                continue;
            }
            let w1p = fam.inf_pair(w2p, w1);
            let least = fam.sup_pair(w1, w2p);
            let lower_value = sf.eval(w1p, w1)?;
            let uppers: Vec<MemberId> =
                if strong { fam.between_unchecked(least, fam.top()).collect() } else { vec![least] };
            for w2 in uppers {
                report.checked += 1;
                let upper_value = sf.eval(w2p, w2)?;
                if poset.not_leq(&lower_value, &upper_value)? {
                    report.record(SlopeViolation {
                        lower: AdmissiblePair::new(w1p, w1),
                        upper: AdmissiblePair::new(w2p, w2),
                        lower_value: lower_value.clone(),
                        upper_value,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Checks rank modularity and the degree super-parallelogram inequality
/// over all pairs of members.
pub fn validate_classical_axioms(
    family: &AdmissibleFamily,
    labels: &DegreeRankLabels,
) -> ValidationReport<ClassicalViolation> {
    let mut report = ValidationReport::new();
    let canon = family.canonical();
    for (i, &a) in canon.iter().enumerate() {
        for &b in &canon[i..] {
            report.checked += 1;
            let (s, t) = (family.sup_pair(a, b), family.inf_pair(a, b));
            if labels.rk(s) + labels.rk(t) != labels.rk(a) + labels.rk(b) {
                report.record(ClassicalViolation { a, b, defect: ClassicalDefect::RankNotModular });
            }
            if labels.deg(s) + labels.deg(t) < labels.deg(a) + labels.deg(b) {
                report.record(ClassicalViolation { a, b, defect: ClassicalDefect::DegreeBelowParallelogram });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> PosetValue {
        PosetValue::integer(n)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// 0 ⊊ L ⊊ M with μ(L) = 2, μ(M) = 1, μ(M/L) = 3.
    fn counterexample() -> SlopeFunction {
        let fam = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
        SlopeFunction::from_table(
            fam,
            Arc::new(ValuePoset::exact_reals()),
            [
                (MemberId(0), MemberId(1), int(2)),
                (MemberId(0), MemberId(2), int(1)),
                (MemberId(1), MemberId(2), int(3)),
            ],
        )
        .unwrap()
    }

    fn z6() -> SlopeFunction {
        let fam = Arc::new(
            AdmissibleFamily::from_lists(6, &[vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]).unwrap(),
        );
        let poset = Arc::new(ValuePoset::reverse_inclusion(vec!["2".into(), "3".into()]).unwrap());
        SlopeFunction::prime_support(fam, poset).unwrap()
    }

    fn labels(sf: &SlopeFunction, names: &[&str]) -> PosetValue {
        PosetValue::Labels(LabelSet::from_indices(names.iter().map(|n| sf.poset().label_index(n).unwrap())))
    }

    #[test]
    fn counterexample_values() {
        let sf = counterexample();
        let (z, l, m) = (MemberId(0), MemberId(1), MemberId(2));
        assert_eq!(sf.eval(z, l).unwrap(), int(2));
        assert_eq!(sf.eval(z, m).unwrap(), int(1));
        assert_eq!(sf.eval(l, m).unwrap(), int(3));
        assert_eq!(sf.mu_min(z, m).unwrap(), int(1));
        assert_eq!(sf.mu_min(z, l).unwrap(), int(2));
        assert_eq!(sf.mu_min(l, m).unwrap(), int(3));
        assert!(matches!(sf.eval(l, l), Err(SlopeError::NonStrictPair { .. })));
        assert!(matches!(sf.eval(m, l), Err(SlopeError::NonStrictPair { .. })));
    }

    #[test]
    fn counterexample_is_weak_but_not_strong() {
        let sf = counterexample();
        assert!(validate_slope_inequality(&sf).unwrap().passed());
        let strong = validate_strong_slope_inequality(&sf).unwrap();
        assert_eq!(strong.violation_count, 1);
        let w = &strong.violations[0];
        assert_eq!(w.lower, AdmissiblePair::new(MemberId(0), MemberId(1)));
        assert_eq!(w.upper, AdmissiblePair::new(MemberId(0), MemberId(2)));
        assert_eq!((w.lower_value.clone(), w.upper_value.clone()), (int(2), int(1)));
        assert!(w.recheck(&sf, true));
        assert!(!w.recheck(&sf, false));
    }

    #[test]
    fn strengthen_counterexample() {
        let sf = counterexample().strengthen().unwrap();
        let (z, l, m) = (MemberId(0), MemberId(1), MemberId(2));
        assert_eq!(sf.eval(z, l).unwrap(), int(2));
        assert_eq!(sf.eval(z, m).unwrap(), int(2));
        assert_eq!(sf.eval(l, m).unwrap(), int(3));
        assert!(validate_strong_slope_inequality(&sf).unwrap().passed());
    }

    #[test]
    fn prime_support_on_z6() {
        let sf = z6();
        let bottom = sf.family().bottom();
        let top = sf.family().top();
        assert_eq!(sf.eval(bottom, MemberId(1)).unwrap(), labels(&sf, &["2"]));
        assert_eq!(sf.eval(bottom, MemberId(2)).unwrap(), labels(&sf, &["3"]));
        assert_eq!(sf.eval(bottom, top).unwrap(), labels(&sf, &[]));
        assert_eq!(sf.mu_min(bottom, top).unwrap(), labels(&sf, &["2", "3"]));
        assert!(validate_slope_inequality(&sf).unwrap().passed());
        let strong = sf.strengthen().unwrap();
        assert_eq!(strong.eval(bottom, top).unwrap(), labels(&sf, &[]));
    }

    #[test]
    fn planted_violation_is_found() {
        // Boolean lattice on two atoms; μ(E/{1}) is made smaller than μ({0}/∅).
        let fam = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap());
        let sf = SlopeFunction::from_fn(fam, Arc::new(ValuePoset::exact_reals()), |a, b| match (a.0, b.0) {
            (2, 3) => int(0),
            _ => int(5),
        })
        .unwrap();
        let r = validate_slope_inequality(&sf).unwrap();
        assert!(!r.passed());
        let w = &r.violations[0];
        assert_eq!(w.lower, AdmissiblePair::new(MemberId(0), MemberId(1)));
        assert_eq!(w.upper, AdmissiblePair::new(MemberId(2), MemberId(3)));
        assert!(r.violations.iter().all(|v| v.recheck(&sf, false)));
        assert!(matches!(sf.strengthen(), Err(SlopeError::WeakInequalityFails(_))));
    }

    #[test]
    fn table_must_be_complete() {
        let fam = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
        let poset = Arc::new(ValuePoset::exact_reals());
        let err =
            SlopeFunction::from_table(fam.clone(), poset.clone(), [(MemberId(0), MemberId(1), int(1))]).unwrap_err();
        assert_eq!(err, SlopeError::MissingTableEntry { sub: MemberId(0), sup: MemberId(2) });
        let err =
            SlopeFunction::from_table(fam.clone(), poset.clone(), [(MemberId(1), MemberId(1), int(1))]).unwrap_err();
        assert!(matches!(err, SlopeError::NonStrictPair { .. }));
        let err =
            SlopeFunction::from_table(fam, poset, [(MemberId(0), MemberId(1), PosetValue::Real(1.0))]).unwrap_err();
        assert!(matches!(err, SlopeError::ForeignValue { .. }));
    }

    #[test]
    fn degree_rank_arithmetic() {
        let chain = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
        let l = DegreeRankLabels::new(&chain, vec![q(0, 1), q(1, 1), q(1, 1)], vec![0, 1, 2]).unwrap();
        let sf = SlopeFunction::degree_rank(chain, l).unwrap();
        assert_eq!(sf.eval(MemberId(0), MemberId(1)).unwrap(), int(1));
        assert_eq!(sf.eval(MemberId(1), MemberId(2)).unwrap(), int(0));
        assert_eq!(sf.eval(MemberId(0), MemberId(2)).unwrap(), PosetValue::ratio(1, 2));

        let boolean = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap());
        let l = DegreeRankLabels::new(&boolean, vec![q(0, 1), q(2, 1), q(1, 1), q(3, 1)], vec![0, 1, 1, 2]).unwrap();
        assert!(validate_classical_axioms(&boolean, &l).passed());
        let sf = SlopeFunction::degree_rank(boolean.clone(), l).unwrap();
        assert_eq!(sf.eval(MemberId(0), MemberId(3)).unwrap(), PosetValue::ratio(3, 2));

        let err = DegreeRankLabels::new(&boolean, vec![q(0, 1); 4], vec![0, 1, 0, 2]).unwrap_err();
        assert_eq!(err, SlopeError::RankCollision { sub: MemberId(0), sup: MemberId(2) });
    }

    #[test]
    fn classical_axioms_detect_defects() {
        let boolean = AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap();
        // deg(E) + deg(∅) = 1 < deg{0} + deg{1} = 4
        let l = DegreeRankLabels::new(&boolean, vec![q(0, 1), q(2, 1), q(2, 1), q(1, 1)], vec![0, 1, 1, 2]).unwrap();
        let r = validate_classical_axioms(&boolean, &l);
        assert_eq!(r.violation_count, 1);
        assert_eq!(r.violations[0].defect, ClassicalDefect::DegreeBelowParallelogram);
        let l = DegreeRankLabels::new(&boolean, vec![q(0, 1); 4], vec![0, 1, 1, 3]).unwrap();
        let r = validate_classical_axioms(&boolean, &l);
        assert!(r.violations.iter().any(|v| v.defect == ClassicalDefect::RankNotModular));
    }

    #[test]
    fn eigen_rule_is_strong() {
        let lists: Vec<Vec<usize>> = (0..8u64).map(|b| crate::family::Subset(b).elements().collect()).collect();
        let fam = Arc::new(AdmissibleFamily::from_lists(3, &lists).unwrap());
        let poset = Arc::new(ValuePoset::float_reals(1e-9).unwrap());
        let sf = SlopeFunction::max_weight(fam, poset, vec![3.0, 1.0, -2.0]).unwrap();
        assert!(validate_strong_slope_inequality(&sf).unwrap().passed());
        assert_eq!(sf.eval(MemberId(0), MemberId(7)).unwrap(), PosetValue::Real(3.0));
        assert_eq!(sf.mu_min(MemberId(0), MemberId(7)).unwrap(), PosetValue::Real(-2.0));
    }

    #[test]
    fn validation_guard() {
        let sf = counterexample();
        assert!(matches!(validate_bounded(&sf, true, 10), Err(SlopeError::TooManyPairs { needed: 27, limit: 10 })));
        assert!(validate_bounded(&sf, false, 10).unwrap().passed());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(1), None);
        assert_eq!(prime_power_base(2), Some(2));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(49), Some(7));
        assert_eq!(prime_power_base(97), Some(97));
        assert_eq!(prime_power_base(12), None);
    }

    #[test]
    fn restriction_matches_parent() {
        let sf = z6();
        let fam = sf.family();
        let iv = fam.interval_family(MemberId(1), fam.top()).unwrap();
        let r = sf.restrict(&iv).unwrap();
        for p in r.family().strict_pairs() {
            assert_eq!(r.eval(p.sub, p.sup).unwrap(), sf.eval(iv.parent_of(p.sub), iv.parent_of(p.sup)).unwrap());
        }
    }
}
