//! Brute-force ground truth: chain enumeration, HN counting and exhaustive
//! theorem checks. Nothing here calls into the engine; minimal slopes and
//! semistability are recomputed from `eval` alone.

use std::fmt;

use thiserror::Error;

use crate::engine::{Filtration, Mode};
use crate::family::{AdmissibleFamily, MemberId};
use crate::poset::{PosetError, PosetValue};
use crate::slope::{validate_slope_inequality, validate_strong_slope_inequality, SlopeError, SlopeFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("budget exceeded: more than {limit} {what}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("{e1} does not satisfy {n} < {e1} <= {m}")]
    BadCandidate { n: MemberId, e1: MemberId, m: MemberId },
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_members: usize,
    pub max_filtrations: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_members: 64, max_filtrations: 1_000_000 }
    }
}

impl EnumerationBudget {
    fn check_members(&self, family: &AdmissibleFamily) -> Result<(), OracleError> {
        if family.len() > self.max_members {
            return Err(OracleError::BudgetExceeded { what: "members", limit: self.max_members as u64 });
        }
        Ok(())
    }
}

/// Members strictly above `m`, in canonical order.
fn strict_supersets(family: &AdmissibleFamily, m: MemberId) -> Vec<MemberId> {
    let s = family.subset(m);
    family.canonical().iter().copied().filter(|&x| x != m && s.is_subset_of(family.subset(x))).collect()
}

/// Depth-first enumeration of all chains from bottom to top.
pub struct Filtrations<'a> {
    family: &'a AdmissibleFamily,
    successors: Vec<Vec<MemberId>>,
    stack: Vec<(MemberId, usize)>,
    yielded: u64,
    limit: u64,
    done: bool,
}

impl Iterator for Filtrations<'_> {
    type Item = Result<Filtration, OracleError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let top = self.family.top();
        while let Some(&mut (node, ref mut cursor)) = self.stack.last_mut() {
            if node == top {
                let chain: Vec<MemberId> = self.stack.iter().map(|&(m, _)| m).collect();
                self.stack.pop();
                if self.yielded == self.limit {
                    self.done = true;
                    return Some(Err(OracleError::BudgetExceeded { what: "filtrations", limit: self.limit }));
                }
                self.yielded += 1;
                return Some(Ok(Filtration::new_unchecked(chain)));
            }
            match self.successors[node.0].get(*cursor) {
                Some(&next) => {
                    *cursor += 1;
                    self.stack.push((next, 0));
                }
                None => {
                    self.stack.pop();
                }
            }
        }
        self.done = true;
        None
    }
}

/// Every strictly increasing chain from bottom to top, of every length, in
/// lexicographic order of canonical positions.
pub fn enumerate_filtrations(
    family: &AdmissibleFamily,
    budget: EnumerationBudget,
) -> Result<Filtrations<'_>, OracleError> {
    budget.check_members(family)?;
    let successors = family.ids().map(|m| strict_supersets(family, m)).collect();
    Ok(Filtrations {
        family,
        successors,
        stack: vec![(family.bottom(), 0)],
        yielded: 0,
        limit: budget.max_filtrations,
        done: false,
    })
}

/// Number of bottom-to-top chains by dynamic programming over the inclusion
/// order, independent of [`enumerate_filtrations`].
pub fn count_chains_dp(family: &AdmissibleFamily) -> u128 {
    let mut ways = vec![0u128; family.len()];
    // supersets come later in canonical order, so go backwards
    for &m in family.canonical().iter().rev() {
        ways[m.0] = if m == family.top() {
            1
        } else {
            let s = family.subset(m);
            family.ids().filter(|&x| x != m && s.is_subset_of(family.subset(x))).map(|x| ways[x.0]).sum()
        };
    }
    ways[family.bottom().0]
}

/// Minimal slopes and semistability verdicts tabulated from `eval`.
struct Tables<'a> {
    sf: &'a SlopeFunction,
    n: usize,
    mu_min: Vec<Option<PosetValue>>,
    semistable: Vec<Option<Option<MemberId>>>,
}

impl<'a> Tables<'a> {
    fn new(sf: &'a SlopeFunction) -> Self {
        let n = sf.family().len();
        Tables { sf, n, mu_min: vec![None; n * n], semistable: vec![None; n * n] }
    }

    fn inside(&self, a: MemberId, b: MemberId) -> bool {
        let fam = self.sf.family();
        fam.subset(a).is_subset_of(fam.subset(b))
    }

    fn proper(&self, a: MemberId, b: MemberId) -> bool {
        a != b && self.inside(a, b)
    }

    fn mu_min(&mut self, sub: MemberId, sup: MemberId) -> Result<PosetValue, OracleError> {
        let k = sub.0 * self.n + sup.0;
        if let Some(v) = &self.mu_min[k] {
            return Ok(v.clone());
        }
        let mut values = Vec::new();
        for f in self.sf.family().ids() {
            if self.inside(sub, f) && self.proper(f, sup) {
                values.push(self.sf.eval(f, sup)?);
            }
        }
        let v = self.sf.poset().inf_set(&values)?;
        self.mu_min[k] = Some(v.clone());
        Ok(v)
    }

    /// `None` when semistable, otherwise the canonical-first witness.
    fn destabilizing(&mut self, sub: MemberId, sup: MemberId) -> Result<Option<MemberId>, OracleError> {
        let k = sub.0 * self.n + sup.0;
        if let Some(v) = self.semistable[k] {
            return Ok(v);
        }
        let whole = self.mu_min(sub, sup)?;
        let mut witness = None;
        for &f in self.sf.family().canonical() {
            if self.proper(sub, f) && self.proper(f, sup) {
                let v = self.mu_min(sub, f)?;
                if self.sf.poset().lt(&whole, &v)? {
                    witness = Some(f);
                    break;
                }
            }
        }
        self.semistable[k] = Some(witness);
        Ok(witness)
    }

    fn is_hn(&mut self, chain: &[MemberId], mode: Mode) -> Result<bool, OracleError> {
        let mut slopes = Vec::with_capacity(chain.len() - 1);
        for w in chain.windows(2) {
            if self.destabilizing(w[0], w[1])?.is_some() {
                return Ok(false);
            }
            slopes.push(self.mu_min(w[0], w[1])?);
        }
        let poset = self.sf.poset();
        for w in slopes.windows(2) {
            let ok = match mode {
                Mode::Total => poset.lt(&w[1], &w[0])?,
                Mode::Partial => poset.not_leq(&w[0], &w[1])?,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every HN filtration of `sf` in the given mode.
pub fn all_hn_filtrations(
    sf: &SlopeFunction,
    mode: Mode,
    budget: EnumerationBudget,
) -> Result<Vec<Filtration>, OracleError> {
    let mut tables = Tables::new(sf);
    let mut out = Vec::new();
    for f in enumerate_filtrations(sf.family(), budget)? {
        let f = f?;
        if tables.is_hn(f.members(), mode)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Verdict of [`certify_destabilizer`]. Each witness is the first failing
/// member in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestabilizerCertificate {
    /// Destabilizes `E₁/N`.
    pub semistability_witness: Option<MemberId>,
    /// `N ⊊ G ⊆ M` with `μ_min(G/N) >= μ_min(E₁/N)` but `G ⊄ E₁`.
    pub containment_witness: Option<MemberId>,
    /// `N ⊊ G ⊆ M` with `μ_min(G/N) > μ_min(E₁/N)`.
    pub maximality_witness: Option<MemberId>,
}

impl DestabilizerCertificate {
    pub fn passed(&self) -> bool {
        self.semistability_witness.is_none() && self.containment_witness.is_none() && self.maximality_witness.is_none()
    }
}

/// Checks the defining properties of the destabilizing member by
/// quantifying over every `G` between `N` and `M`.
pub fn certify_destabilizer(
    sf: &SlopeFunction,
    n: MemberId,
    m: MemberId,
    e1: MemberId,
) -> Result<DestabilizerCertificate, OracleError> {
    certify_with(&mut Tables::new(sf), n, m, e1)
}

fn certify_with(
    t: &mut Tables<'_>,
    n: MemberId,
    m: MemberId,
    e1: MemberId,
) -> Result<DestabilizerCertificate, OracleError> {
    let len = t.sf.family().len();
    if n.0 >= len || m.0 >= len || e1.0 >= len || !t.proper(n, e1) || !t.inside(e1, m) {
        return Err(OracleError::BadCandidate { n, e1, m });
    }
    let mut cert = DestabilizerCertificate {
        semistability_witness: t.destabilizing(n, e1)?,
        containment_witness: None,
        maximality_witness: None,
    };
    let value = t.mu_min(n, e1)?;
    for &g in t.sf.family().canonical() {
        if !t.proper(n, g) || !t.inside(g, m) {
            continue;
        }
        let v = t.mu_min(n, g)?;
        let poset = t.sf.poset();
        if cert.containment_witness.is_none() && poset.leq(&value, &v)? && !t.inside(g, e1) {
            cert.containment_witness = Some(g);
        }
        if cert.maximality_witness.is_none() && poset.lt(&value, &v)? {
            cert.maximality_witness = Some(g);
        }
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// `μ_min(E₁/E₂) <= μ_min(E₁/H)` for `E₂ ⊆ H ⊊ E₁`.
    MinimalSlopeInequality,
    /// `inf{μ_min(V/H), μ_min(W/H)} <= μ_min(sup{V,W}/H)`.
    SupOfSubobjects,
    /// Every strict pair has a member passing [`certify_destabilizer`].
    DestabilizerExistence,
    HnExistence,
    HnUniqueness,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::MinimalSlopeInequality => "minimal_slope_inequality",
            Suite::SupOfSubobjects => "sup_of_subobjects",
            Suite::DestabilizerExistence => "destabilizer_existence",
            Suite::HnExistence => "hn_existence",
            Suite::HnUniqueness => "hn_uniqueness",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuiteStatus {
    Passed,
    /// Hypotheses met and the claim fails. `witness` lists the members of
    /// the first counterexample in canonical order.
    Failed {
        witness: Vec<MemberId>,
        violations: usize,
    },
    /// The suite's hypotheses do not hold for this instance.
    HypothesisNotMet(&'static str),
    /// Several HN filtrations for a totally ordered slope function that
    /// satisfies only the weak inequality. Reported, not counted as a
    /// failure.
    Finding {
        hn_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub status: SuiteStatus,
    pub checked: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub mode: Mode,
    pub slope_inequality: bool,
    pub strong_slope_inequality: bool,
    pub hn_filtrations: Vec<Filtration>,
    pub suites: Vec<SuiteResult>,
}

impl CertificationReport {
    pub fn hn_count(&self) -> usize {
        self.hn_filtrations.len()
    }

    /// No suite failed with its hypotheses met.
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| !matches!(s.status, SuiteStatus::Failed { .. }))
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

impl fmt::Display for SuiteStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteStatus::Passed => write!(f, "passed"),
            SuiteStatus::Failed { .. } => write!(f, "failed"),
            SuiteStatus::HypothesisNotMet(_) => write!(f, "hypothesis_not_met"),
            SuiteStatus::Finding { .. } => write!(f, "finding"),
        }
    }
}

struct Tally {
    checked: usize,
    violations: usize,
    witness: Option<Vec<MemberId>>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, violations: 0, witness: None }
    }

    fn observe(&mut self, ok: bool, witness: impl FnOnce() -> Vec<MemberId>) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn finish(self, suite: Suite) -> SuiteResult {
        let status = match self.witness {
            None => SuiteStatus::Passed,
            Some(witness) => SuiteStatus::Failed { witness, violations: self.violations },
        };
        SuiteResult { suite, status, checked: self.checked }
    }
}

/// Runs every exhaustive suite on `sf` in the mode its poset implies.
pub fn certify_theorems(sf: &SlopeFunction, budget: EnumerationBudget) -> Result<CertificationReport, OracleError> {
    certify_theorems_in(sf, Mode::for_poset(sf.poset()), budget)
}

pub fn certify_theorems_in(
    sf: &SlopeFunction,
    mode: Mode,
    budget: EnumerationBudget,
) -> Result<CertificationReport, OracleError> {
    let fam = sf.family();
    budget.check_members(fam)?;
    let weak = validate_slope_inequality(sf)?.passed();
    let strong = validate_strong_slope_inequality(sf)?.passed();
    let mut t = Tables::new(sf);
    let canon: Vec<MemberId> = fam.canonical().to_vec();
    let mut suites = Vec::new();

    let mut tally = Tally::new();
    for &e1 in &canon {
        for &e2 in &canon {
            if !t.proper(e2, e1) {
                continue;
            }
            let whole = t.mu_min(e2, e1)?;
            for &h in &canon {
                if t.inside(e2, h) && t.proper(h, e1) {
                    let part = t.mu_min(h, e1)?;
                    tally.observe(sf.poset().leq(&whole, &part)?, || vec![e2, h, e1]);
                }
            }
        }
    }
    suites.push(tally.finish(Suite::MinimalSlopeInequality));

    if strong {
        let mut tally = Tally::new();
        for &h in &canon {
            for &v in &canon {
                if !t.proper(h, v) {
                    continue;
                }
                for &w in &canon {
                    if !t.proper(h, w) {
                        continue;
                    }
                    let s = fam.sup_pair(v, w);
                    let lhs = sf.poset().inf_set(&[t.mu_min(h, v)?, t.mu_min(h, w)?])?;
                    let rhs = t.mu_min(h, s)?;
                    tally.observe(sf.poset().leq(&lhs, &rhs)?, || vec![h, v, w]);
                }
            }
        }
        suites.push(tally.finish(Suite::SupOfSubobjects));

        let mut tally = Tally::new();
        for &n in &canon {
            for &m in &canon {
                if !t.proper(n, m) {
                    continue;
                }
                let mut found = false;
                for &e1 in &canon {
                    if t.proper(n, e1) && t.inside(e1, m) && certify_with(&mut t, n, m, e1)?.passed() {
                        found = true;
                        break;
                    }
                }
                tally.observe(found, || vec![n, m]);
            }
        }
        suites.push(tally.finish(Suite::DestabilizerExistence));
    } else {
        for suite in [Suite::SupOfSubobjects, Suite::DestabilizerExistence] {
            suites.push(SuiteResult {
                suite,
                status: SuiteStatus::HypothesisNotMet("strong slope inequality"),
                checked: 0,
            });
        }
    }

    let mut hn = Vec::new();
    for f in enumerate_filtrations(fam, budget)? {
        let f = f?;
        if t.is_hn(f.members(), mode)? {
            hn.push(f);
        }
    }

    suites.push(if strong {
        let status = if hn.is_empty() {
            SuiteStatus::Failed { witness: vec![fam.bottom(), fam.top()], violations: 1 }
        } else {
            SuiteStatus::Passed
        };
        SuiteResult { suite: Suite::HnExistence, status, checked: 1 }
    } else {
        SuiteResult {
            suite: Suite::HnExistence,
            status: SuiteStatus::HypothesisNotMet("strong slope inequality"),
            checked: 0,
        }
    });

    let total = mode == Mode::Total && sf.poset().is_total();
    let status = if !total {
        SuiteStatus::HypothesisNotMet("totally ordered value poset")
    } else if !weak {
        SuiteStatus::HypothesisNotMet("slope inequality")
    } else if hn.len() <= 1 {
        SuiteStatus::Passed
    } else if strong {
        SuiteStatus::Failed { witness: hn[1].members().to_vec(), violations: hn.len() - 1 }
    } else {
        SuiteStatus::Finding { hn_count: hn.len() }
    };
    suites.push(SuiteResult { suite: Suite::HnUniqueness, status, checked: usize::from(total && weak) });

    Ok(CertificationReport {
        mode,
        slope_inequality: weak,
        strong_slope_inequality: strong,
        hn_filtrations: hn,
        suites,
    })
}
