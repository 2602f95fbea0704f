//! Seeded random instance generators shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use hn_core::{
    AdmissibleFamily, DegreeRankLabels, GroundSet, LabelSet, MemberId, PosetValue, SlopeFunction, Subset, ValuePoset,
};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> PosetValue {
    PosetValue::integer(n)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn boolean(n: usize) -> Arc<AdmissibleFamily> {
    Arc::new(AdmissibleFamily::from_lists(n, &hn_core::instances::boolean_lists(n)).unwrap())
}

pub fn counterexample() -> SlopeFunction {
    let fam = Arc::new(AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0, 1]]).unwrap());
    SlopeFunction::from_table(
        fam,
        Arc::new(ValuePoset::exact_reals()),
        [(MemberId(0), MemberId(1), int(2)), (MemberId(0), MemberId(2), int(1)), (MemberId(1), MemberId(2), int(3))],
    )
    .unwrap()
}

fn close(mut members: Vec<Subset>, union_too: bool, limit: usize) -> Option<Vec<Subset>> {
    loop {
        let mut added = false;
        let snapshot = members.clone();
        for (i, &a) in snapshot.iter().enumerate() {
            for &b in &snapshot[i + 1..] {
                let mut new = vec![a.intersection(b)];
                if union_too {
                    new.push(a.union(b));
                }
                for s in new {
                    if !members.contains(&s) {
                        members.push(s);
                        added = true;
                    }
                }
            }
        }
        if members.len() > limit {
            return None;
        }
        if !added {
            return Some(members);
        }
    }
}

/// A random family closed under intersection that contains the ground set,
/// with at most `max_members` members.
pub fn closure_system(r: &mut ChaCha8Rng, max_members: usize) -> AdmissibleFamily {
    loop {
        let n = r.random_range(2..=5usize);
        let full = Subset::full(n);
        let mut members = vec![full];
        for _ in 0..r.random_range(2..=8) {
            let s = Subset(r.random_range(0..=full.0));
            if !members.contains(&s) {
                members.push(s);
            }
        }
        let Some(mut members) = close(members, false, max_members) else { continue };
        if members.len() < 4.min(max_members) {
            continue;
        }
        members.shuffle(r);
        return AdmissibleFamily::new(GroundSet::new(n).unwrap(), members).unwrap();
    }
}

/// A random ring of sets (closed under both union and intersection) that
/// contains the empty set and the ground set.
pub fn distributive_lattice(r: &mut ChaCha8Rng, max_members: usize) -> AdmissibleFamily {
    loop {
        let n = r.random_range(2..=5usize);
        let full = Subset::full(n);
        let mut members = vec![Subset(0), full];
        for _ in 0..r.random_range(1..=4) {
            let s = Subset(r.random_range(0..=full.0));
            if !members.contains(&s) {
                members.push(s);
            }
        }
        let Some(mut members) = close(members, true, max_members) else { continue };
        if members.len() < 4.min(max_members) {
            continue;
        }
        members.shuffle(r);
        return AdmissibleFamily::new(GroundSet::new(n).unwrap(), members).unwrap();
    }
}

/// Classical labels: rank is the cardinality and degree is a sum of element
/// weights plus nonnegative pair bonuses, which makes it supermodular.
pub fn classical_labels(r: &mut ChaCha8Rng, fam: &AdmissibleFamily) -> DegreeRankLabels {
    let n = fam.ground().size();
    let w: Vec<BigRational> =
        (0..n).map(|_| BigRational::new(r.random_range(-12..=12).into(), r.random_range(1..=4).into())).collect();
    let c: Vec<Vec<BigRational>> = (0..n)
        .map(|_| (0..n).map(|_| BigRational::new(r.random_range(0..=1).into(), r.random_range(1..=4).into())).collect())
        .collect();
    let mut deg = Vec::new();
    let mut rk = Vec::new();
    for m in fam.ids() {
        let els: Vec<usize> = fam.subset(m).elements().collect();
        let mut d = q(0);
        for (i, &a) in els.iter().enumerate() {
            d += &w[a];
            for &b in &els[i + 1..] {
                d += &c[a][b];
            }
        }
        deg.push(d);
        rk.push(els.len() as u64);
    }
    DegreeRankLabels::new(fam, deg, rk).unwrap()
}

/// Value poset flavors used by the randomized suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Total,
    ReverseInclusion,
}

/// How the random slope table is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// Independent random values.
    Arbitrary,
    /// A monotone function of `B ∖ A`, which is strong on closure systems.
    Monotone,
    /// The strengthening of a random table on a chain. Any table on a chain
    /// satisfies the slope inequality.
    Strengthened,
}

fn random_value(r: &mut ChaCha8Rng, flavor: Flavor, universe: usize) -> PosetValue {
    match flavor {
        Flavor::Total => PosetValue::ratio(r.random_range(-6..=6), r.random_range(1..=3)),
        Flavor::ReverseInclusion => PosetValue::Labels(LabelSet(r.random_range(0..1u64 << universe))),
    }
}

/// A table-backed slope function on a random closure system.
pub fn random_table_slope(r: &mut ChaCha8Rng, flavor: Flavor, shape: Shape, max_members: usize) -> SlopeFunction {
    let fam = Arc::new(closure_system(r, max_members));
    let universe = 3;
    let poset = Arc::new(match flavor {
        Flavor::Total => ValuePoset::exact_reals(),
        Flavor::ReverseInclusion => {
            ValuePoset::reverse_inclusion((0..universe).map(|i| format!("p{i}")).collect()).unwrap()
        }
    });
    let n = fam.ground().size();
    let weights: Vec<PosetValue> = (0..n).map(|_| random_value(r, flavor, universe)).collect();
    let monotone = |fam: &AdmissibleFamily, a: MemberId, b: MemberId| -> PosetValue {
        let diff = fam.subset(b).difference(fam.subset(a));
        match flavor {
            Flavor::Total => {
                let best = diff.elements().map(|e| weights[e].as_rational().unwrap().clone()).max().unwrap();
                PosetValue::Rational(best)
            }
            Flavor::ReverseInclusion => {
                let mut acc = LabelSet(u64::MAX >> (64 - universe));
                for e in diff.elements() {
                    let PosetValue::Labels(l) = weights[e] else { unreachable!() };
                    acc = LabelSet(acc.0 & l.0);
                }
                PosetValue::Labels(acc)
            }
        }
    };
    match shape {
        Shape::Arbitrary => {
            let values: Vec<PosetValue> = fam.strict_pairs().map(|_| random_value(r, flavor, universe)).collect();
            let mut it = values.into_iter();
            SlopeFunction::from_fn(fam.clone(), poset, |_, _| it.next().unwrap()).unwrap()
        }
        Shape::Monotone => {
            let f = fam.clone();
            SlopeFunction::from_fn(fam, poset, |a, b| monotone(&f, a, b)).unwrap()
        }
        Shape::Strengthened => {
            let len = r.random_range(2..=max_members.clamp(2, 8));
            let lists: Vec<Vec<usize>> = (0..len).map(|i| (0..i).collect()).collect();
            let chain = Arc::new(AdmissibleFamily::from_lists(len - 1, &lists).unwrap());
            let base = SlopeFunction::from_fn(chain, poset, |_, _| random_value(r, flavor, universe)).unwrap();
            base.strengthen().unwrap()
        }
    }
}

/// Runs every exhaustive suite on one instance and describes the first
/// problem found.
pub fn theorem_suite(sf: &SlopeFunction) -> Result<SuiteOutcome, String> {
    use hn_core::engine::{check_hn, destabilizer, hn_filtration, Mode, Trust};
    use hn_core::oracle::{
        all_hn_filtrations, certify_destabilizer, certify_theorems, EnumerationBudget, Suite, SuiteStatus,
    };

    let budget = EnumerationBudget::default();
    let report = certify_theorems(sf, budget).map_err(|e| e.to_string())?;
    let min_slope = report.suite(Suite::MinimalSlopeInequality).unwrap();
    if min_slope.status != SuiteStatus::Passed {
        return Err(format!("minimal slope inequality: {:?}", min_slope.status));
    }
    if let Some(s) = report.suites.iter().find(|s| matches!(s.status, SuiteStatus::Failed { .. })) {
        return Err(format!("{}: {:?}", s.suite.name(), s.status));
    }
    let mut outcome =
        SuiteOutcome { strong: report.strong_slope_inequality, hn_count: report.hn_count(), finding: false };
    outcome.finding = report.suites.iter().any(|s| matches!(s.status, SuiteStatus::Finding { .. }));
    if !report.strong_slope_inequality {
        return Ok(outcome);
    }
    if report.suite(Suite::SupOfSubobjects).unwrap().status != SuiteStatus::Passed {
        return Err("sup of subobjects suite did not run".into());
    }
    let fam = sf.family();
    for p in fam.strict_pairs() {
        let e1 = destabilizer(sf, p.sub, p.sup, Trust::Trusted).map_err(|e| e.to_string())?;
        let cert = certify_destabilizer(sf, p.sub, p.sup, e1).map_err(|e| e.to_string())?;
        if !cert.passed() {
            return Err(format!("destabilizer of {}/{} is {e1}: {cert:?}", p.sup, p.sub));
        }
    }
    let mode = Mode::for_poset(sf.poset());
    let hn = hn_filtration(sf, mode, Trust::Verify).map_err(|e| e.to_string())?;
    if !hn.check.passed() || !check_hn(sf, &hn.filtration, mode).map_err(|e| e.to_string())?.passed() {
        return Err(format!("engine output {} fails check_hn", hn.filtration));
    }
    let all = all_hn_filtrations(sf, mode, budget).map_err(|e| e.to_string())?;
    if !all.contains(&hn.filtration) {
        return Err(format!("engine output {} is not among the oracle's {} filtrations", hn.filtration, all.len()));
    }
    if mode == Mode::Total && sf.poset().is_total() && all.len() != 1 {
        return Err(format!("totally ordered strong slope has {} HN filtrations", all.len()));
    }
    Ok(outcome)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub strong: bool,
    pub hn_count: usize,
    pub finding: bool,
}

/// Compares the classical filtration with the engine's on the
/// strengthened degree/rank slope.
pub fn classical_agreement(fam: &Arc<AdmissibleFamily>, labels: &DegreeRankLabels) -> Result<(), String> {
    use hn_core::engine::{classical_hn, hn_filtration, Mode, Trust};

    let classical = classical_hn(fam, labels).map_err(|e| e.to_string())?;
    let sf = SlopeFunction::degree_rank(fam.clone(), labels.clone()).map_err(|e| e.to_string())?;
    let strong = sf.strengthen().map_err(|e| e.to_string())?;
    let hn = hn_filtration(&strong, Mode::Total, Trust::Verify).map_err(|e| e.to_string())?;
    if hn.filtration != classical.filtration {
        return Err(format!("classical {} vs engine {}", classical.filtration, hn.filtration));
    }
    let expected: Vec<PosetValue> = classical.step_slopes.iter().cloned().map(PosetValue::Rational).collect();
    if hn.step_slopes != expected {
        return Err(format!("classical slopes {:?} vs engine {:?}", expected, hn.step_slopes));
    }
    Ok(())
}
