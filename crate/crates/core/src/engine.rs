//! Semistability, the destabilizing member, Harder-Narasimhan filtrations
//! and polygons.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::family::{AdmissibleFamily, FamilyError, MemberId};
use crate::poset::{PosetError, PosetKind, PosetValue, ValuePoset};
use crate::slope::{
    validate_classical_axioms, validate_slope_inequality, validate_strong_slope_inequality, ClassicalViolation,
    DegreeRankLabels, SlopeError, SlopeFunction, SlopeViolation,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("the strong slope inequality has not been verified for this slope function")]
    StrongInequalityUnverified,
    #[error("the strong slope inequality fails: {0}")]
    StrongInequalityFails(Box<SlopeViolation>),
    #[error("{0}")]
    ClassicalAxiomsFail(ClassicalViolation),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("pair {sup}/{sub} is not strict")]
    NonStrictPair { sub: MemberId, sup: MemberId },
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Which chain condition an HN filtration must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Step slopes strictly decreasing.
    Total,
    /// No step slope is `<=` the next one.
    Partial,
}

impl Mode {
    /// Total for the extended reals and for totally ordered explicit posets.
    pub fn for_poset(poset: &ValuePoset) -> Mode {
        match poset.kind() {
            PosetKind::ExtendedReal => Mode::Total,
            PosetKind::ReverseInclusion => Mode::Partial,
            PosetKind::ExplicitFinite if poset.is_total() => Mode::Total,
            PosetKind::ExplicitFinite => Mode::Partial,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Total => "total_order",
            Mode::Partial => "partial_order",
        }
    }
}

/// Whether the engine must verify the strong slope inequality first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trust {
    Verify,
    Trusted,
}

/// A chain `bottom = E₀ ⊊ E₁ ⊊ … ⊊ Eₙ = top` of members.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filtration(Vec<MemberId>);

impl Filtration {
    pub fn new(family: &AdmissibleFamily, chain: Vec<MemberId>) -> Result<Self, EngineError> {
        if chain.len() < 2 {
            return Err(EngineError::InvalidFiltration("a filtration needs at least one step".into()));
        }
        if let Some(&m) = chain.iter().find(|m| m.0 >= family.len()) {
            return Err(EngineError::InvalidFiltration(format!("unknown member {m}")));
        }
        if chain[0] != family.bottom() || chain[chain.len() - 1] != family.top() {
            return Err(EngineError::InvalidFiltration("a filtration must run from bottom to top".into()));
        }
        if let Some(w) = chain.windows(2).find(|w| !family.is_proper_subset(w[0], w[1])) {
            return Err(EngineError::InvalidFiltration(format!("{} is not a proper subset of {}", w[0], w[1])));
        }
        Ok(Filtration(chain))
    }

    pub(crate) fn new_unchecked(chain: Vec<MemberId>) -> Self {
        Filtration(chain)
    }

    pub fn members(&self) -> &[MemberId] {
        &self.0
    }

    pub fn steps(&self) -> usize {
        self.0.len() - 1
    }

    /// `(Eᵢ₋₁, Eᵢ)` for each step.
    pub fn step_pairs(&self) -> impl Iterator<Item = (MemberId, MemberId)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(" < "))
    }
}

/// Result of a semistability test.
#[derive(Debug, Clone, PartialEq)]
pub enum Semistability {
    Semistable,
    /// `witness` has strictly larger minimal slope over the base.
    Unstable {
        witness: MemberId,
    },
}

impl Semistability {
    pub fn is_semistable(&self) -> bool {
        matches!(self, Semistability::Semistable)
    }
}

/// Tests whether `sup/sub` is semistable. The witness is the first
/// destabilizing member in canonical order.
pub fn is_semistable(sf: &SlopeFunction, sub: MemberId, sup: MemberId) -> Result<Semistability, EngineError> {
    let fam = sf.family();
    if !fam.is_proper_subset(sub, sup) {
        return Err(EngineError::NonStrictPair { sub, sup });
    }
    let whole = sf.mu_min(sub, sup)?;
    for f in fam.members_between(sub, sup)? {
        if f == sub || f == sup {
            continue;
        }
        if sf.poset().lt(&whole, &sf.mu_min(sub, f)?)? {
            return Ok(Semistability::Unstable { witness: f });
        }
    }
    Ok(Semistability::Semistable)
}

fn require_strong(sf: &SlopeFunction) -> Result<(), EngineError> {
    let report = validate_strong_slope_inequality(sf)?;
    match report.violations.into_iter().next() {
        Some(v) => Err(EngineError::StrongInequalityFails(Box::new(v))),
        None => Ok(()),
    }
}

/// The destabilizing member `E₁` of `m/n`: `E₁/n` is semistable and contains
/// every `G ⊆ m` whose minimal slope over `n` is at least that of `E₁`.
pub fn destabilizer(sf: &SlopeFunction, n: MemberId, m: MemberId, trust: Trust) -> Result<MemberId, EngineError> {
    if !sf.family().is_proper_subset(n, m) {
        return Err(EngineError::NonStrictPair { sub: n, sup: m });
    }
    if trust == Trust::Verify && !validate_strong_slope_inequality(sf)?.passed() {
        return Err(EngineError::StrongInequalityUnverified);
    }
    destabilize(sf, n, m)
}

fn destabilize(sf: &SlopeFunction, n: MemberId, mut m: MemberId) -> Result<MemberId, EngineError> {
    let fam = sf.family();
    let poset = sf.poset();
    loop {
        let base = sf.mu_min(n, m)?;
        let inner: Vec<MemberId> = fam.members_between(n, m)?.into_iter().filter(|&f| f != n).collect();
        let mut start = None;
        for &f in &inner {
            if f == m {
                continue;
            }
            let v = sf.mu_min(n, f)?;
            if poset.lt(&base, &v)? {
                start = Some((f, v));
                break;
            }
        }
        let Some((mut cur, mut cur_val)) = start else {
            return Ok(m);
        };
        'ascend: loop {
            for &w in &inner {
                if w == cur || !fam.is_subset(cur, w) {
                    continue;
                }
                let v = sf.mu_min(n, w)?;
                if poset.leq(&cur_val, &v)? {
                    cur = w;
                    cur_val = v;
                    continue 'ascend;
                }
            }
            break;
        }
        m = cur;
    }
}

/// Per-step verdict of [`check_hn`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepCheck {
    pub sub: MemberId,
    pub sup: MemberId,
    pub slope: PosetValue,
    pub semistability: Semistability,
}

/// Verdict of [`check_hn`].
#[derive(Debug, Clone, PartialEq)]
pub struct HnCheck {
    pub steps: Vec<StepCheck>,
    /// `chain[i]` holds when steps `i` and `i + 1` satisfy the mode's
    /// slope condition.
    pub chain: Vec<bool>,
}

impl HnCheck {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.semistability.is_semistable()) && self.chain.iter().all(|&c| c)
    }
}

/// Checks that every step of `filtration` is semistable and that
/// consecutive step slopes satisfy the mode's condition.
pub fn check_hn(sf: &SlopeFunction, filtration: &Filtration, mode: Mode) -> Result<HnCheck, EngineError> {
    let poset = sf.poset();
    let mut steps = Vec::with_capacity(filtration.steps());
    for (sub, sup) in filtration.step_pairs() {
        steps.push(StepCheck { sub, sup, slope: sf.mu_min(sub, sup)?, semistability: is_semistable(sf, sub, sup)? });
    }
    let mut chain = Vec::new();
    for w in steps.windows(2) {
        let (a, b) = (&w[0].slope, &w[1].slope);
        chain.push(match mode {
            Mode::Total => poset.lt(b, a)?,
            Mode::Partial => poset.not_leq(a, b)?,
        });
    }
    Ok(HnCheck { steps, chain })
}

/// Weak and strong slope inequality verdicts; `None` when not run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AxiomChecks {
    pub slope_inequality: Option<bool>,
    pub strong_slope_inequality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HnReport {
    pub filtration: Filtration,
    pub step_slopes: Vec<PosetValue>,
    pub semistable: Vec<bool>,
    pub mode: Mode,
    pub axioms: AxiomChecks,
    pub check: HnCheck,
}

/// Builds the HN filtration by repeated destabilization over the intervals
/// `[Eᵢ₋₁, top]`.
///
/// With [`Trust::Verify`] the strong slope inequality is checked first and
/// a failure is returned with its witness. With [`Trust::Trusted`] the
/// construction always runs; `check` then says whether the result is an HN
/// filtration.
pub fn hn_filtration(sf: &SlopeFunction, mode: Mode, trust: Trust) -> Result<HnReport, EngineError> {
    let mut axioms = AxiomChecks::default();
    if trust == Trust::Verify {
        axioms.slope_inequality = Some(validate_slope_inequality(sf)?.passed());
        require_strong(sf)?;
        axioms.strong_slope_inequality = Some(true);
    }
    let fam = sf.family();
    let mut chain = vec![fam.bottom()];
    let mut cur = fam.bottom();
    while cur != fam.top() {
        let interval = fam.interval_family(cur, fam.top())?;
        let local = sf.restrict(&interval)?;
        let lf = local.family();
        let next = destabilize(&local, lf.bottom(), lf.top())?;
        cur = interval.parent_of(next);
        chain.push(cur);
    }
    let filtration = Filtration::new_unchecked(chain);
    let check = check_hn(sf, &filtration, mode)?;
    Ok(HnReport {
        step_slopes: check.steps.iter().map(|s| s.slope.clone()).collect(),
        semistable: check.steps.iter().map(|s| s.semistability.is_semistable()).collect(),
        filtration,
        mode,
        axioms,
        check,
    })
}

/// A polygon vertex `(rank, degree)`.
pub type Vertex = (u64, BigRational);

/// Upper convex hull of `points`, sorted by rank. Only the endpoints of
/// collinear runs are kept.
pub fn upper_hull(points: &[Vertex]) -> Vec<Vertex> {
    let mut pts: Vec<Vertex> = points.to_vec();
    pts.sort();
    // keep the highest degree at each rank
    let mut best: Vec<Vertex> = Vec::new();
    for p in pts {
        match best.last_mut() {
            Some(last) if last.0 == p.0 => *last = p,
            _ => best.push(p),
        }
    }
    let mut hull: Vec<Vertex> = Vec::new();
    for p in best {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            if cross(a, b, &p) >= BigRational::from_integer(BigInt::from(0)) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

fn cross(a: &Vertex, b: &Vertex, c: &Vertex) -> BigRational {
    let r = |x: u64| BigRational::from_integer(BigInt::from(x));
    (r(b.0) - r(a.0)) * (&c.1 - &a.1) - (&b.1 - &a.1) * (r(c.0) - r(a.0))
}

/// HN polygon: upper convex hull of `{(rk F, deg F)}` over the family.
pub fn hn_polygon(family: &AdmissibleFamily, labels: &DegreeRankLabels) -> Vec<Vertex> {
    let points: Vec<Vertex> = family.ids().map(|m| (labels.rk(m), labels.deg(m).clone())).collect();
    upper_hull(&points)
}

/// Slopes of consecutive hull edges.
pub fn polygon_slopes(vertices: &[Vertex]) -> Vec<BigRational> {
    vertices
        .windows(2)
        .map(|w| (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(w[1].0 - w[0].0)))
        .collect()
}

/// Filtration built from degree and rank directly.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalFiltration {
    pub filtration: Filtration,
    /// `μ(Eᵢ/Eᵢ₋₁)` for each step.
    pub step_slopes: Vec<BigRational>,
}

/// Classical HN filtration: each `Eᵢ₊₁` is the largest member above `Eᵢ`
/// maximizing `μ(F/Eᵢ)`.
pub fn classical_hn(family: &AdmissibleFamily, labels: &DegreeRankLabels) -> Result<ClassicalFiltration, EngineError> {
    let report = validate_classical_axioms(family, labels);
    if let Some(v) = report.violations.into_iter().next() {
        return Err(EngineError::ClassicalAxiomsFail(v));
    }
    let mut chain = vec![family.bottom()];
    let mut slopes = Vec::new();
    let mut cur = family.bottom();
    while cur != family.top() {
        let mut best: Option<(MemberId, BigRational)> = None;
        for f in family.members_between(cur, family.top())? {
            if f == cur {
                continue;
            }
            let s = labels.slope(cur, f);
            let better = match &best {
                None => true,
                Some((b, bs)) => s > *bs || (s == *bs && labels.rk(f) > labels.rk(*b)),
            };
            if better {
                best = Some((f, s));
            }
        }
        let (next, s) = best.expect("top lies strictly above cur");
        chain.push(next);
        slopes.push(s);
        cur = next;
    }
    Ok(ClassicalFiltration { filtration: Filtration::new_unchecked(chain), step_slopes: slopes })
}
