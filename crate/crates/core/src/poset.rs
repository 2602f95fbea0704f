//! Value posets in which slopes live.
//!
//! Three kinds are supported: the extended real line (exact rationals or
//! floating point with a tolerance), subsets of a finite label universe
//! ordered by reverse inclusion, and explicitly tabulated finite posets.
//! Every kind has a greatest element and infima of all finite subsets.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Default tolerance for the floating point extended reals.
pub const DEFAULT_FLOAT_TOLERANCE: f64 = 1e-9;

/// Largest label universe for reverse-inclusion posets (one machine word).
pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PosetError {
    #[error("value {value} does not belong to the {kind} poset")]
    CrossPosetComparison { value: String, kind: &'static str },
    #[error("explicit poset is empty")]
    Empty,
    #[error("order matrix must be {expected}x{expected}, row {row} has length {found}")]
    NotSquare { expected: usize, row: usize, found: usize },
    #[error("order is not reflexive at element {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
    #[error("poset has no greatest element")]
    NoTop,
    #[error("elements {0} and {1} have no infimum")]
    NoInfimum(String, String),
    #[error("elements {0} and {1} have no supremum although joins were declared")]
    NoSupremum(String, String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("universe has {0} labels, at most {MAX_UNIVERSE} are supported")]
    UniverseTooLarge(usize),
    #[error("tolerance must be finite and non-negative, got {0}")]
    BadTolerance(f64),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

/// Which of the two numeric representations an extended real poset uses.
/// They are distinct posets and their values never mix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Numeric {
    Exact,
    Float { tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetKind {
    ExtendedReal,
    ReverseInclusion,
    ExplicitFinite,
}

impl PosetKind {
    pub fn name(self) -> &'static str {
        match self {
            PosetKind::ExtendedReal => "extended_real",
            PosetKind::ReverseInclusion => "reverse_inclusion",
            PosetKind::ExplicitFinite => "explicit_finite",
        }
    }
}

/// A set of labels drawn from a reverse-inclusion universe, one bit per label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LabelSet(pub u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    pub fn singleton(index: usize) -> Self {
        LabelSet(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        LabelSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn is_superset_of(self, other: LabelSet) -> bool {
        other.0 & !self.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }
}

/// An element of some [`ValuePoset`].
#[derive(Debug, Clone, PartialEq)]
pub enum PosetValue {
    Rational(BigRational),
    Real(f64),
    PlusInfinity,
    Labels(LabelSet),
    Element(usize),
}

impl PosetValue {
    pub fn integer(n: i64) -> Self {
        PosetValue::Rational(BigRational::from_integer(n.into()))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        PosetValue::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            PosetValue::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_real(&self) -> Option<f64> {
        match self {
            PosetValue::Real(x) => Some(*x),
            _ => None,
        }
    }
}

impl fmt::Display for PosetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetValue::Rational(r) => write!(f, "{r}"),
            PosetValue::Real(x) => write!(f, "{x}"),
            PosetValue::PlusInfinity => f.write_str("+inf"),
            PosetValue::Labels(s) => {
                f.write_str("{")?;
                for (k, i) in s.indices().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "#{i}")?;
                }
                f.write_str("}")
            }
            PosetValue::Element(i) => write!(f, "#{i}"),
        }
    }
}

/// A finite poset given by its order relation, validated to admit a top
/// element and all pairwise meets.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePoset {
    labels: Vec<String>,
    // leq[a * n + b] is true iff a <= b
    leq: Vec<bool>,
    top: usize,
    meet: Vec<usize>,
    join: Option<Vec<usize>>,
}

impl FinitePoset {
    /// Validates reflexivity, antisymmetry, transitivity, the existence of a
    /// greatest element and the existence of all pairwise meets. When
    /// `joins` is set, pairwise joins are tabulated as well and `sup_set`
    /// becomes available.
    pub fn new(labels: Vec<String>, order: Vec<Vec<bool>>, joins: bool) -> Result<Self, PosetError> {
        let n = labels.len();
        if n == 0 {
            return Err(PosetError::Empty);
        }
        check_unique(&labels)?;
        if order.len() != n {
            return Err(PosetError::NotSquare { expected: n, row: order.len(), found: 0 });
        }
        for (row, r) in order.iter().enumerate() {
            if r.len() != n {
                return Err(PosetError::NotSquare { expected: n, row, found: r.len() });
            }
        }
        let leq: Vec<bool> = order.into_iter().flatten().collect();
        let at = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(PosetError::NotReflexive(labels[a].clone()));
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(PosetError::NotAntisymmetric(labels[a].clone(), labels[b].clone()));
                }
                if !at(a, b) {
                    continue;
                }
                for c in 0..n {
                    if at(b, c) && !at(a, c) {
                        return Err(PosetError::NotTransitive(labels[a].clone(), labels[b].clone(), labels[c].clone()));
                    }
                }
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|a| at(a, t))).ok_or(PosetError::NoTop)?;

        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n).filter(|&m| at(m, a) && at(m, b)).collect();
                let g = lower
                    .iter()
                    .copied()
                    .find(|&g| lower.iter().all(|&m| at(m, g)))
                    .ok_or_else(|| PosetError::NoInfimum(labels[a].clone(), labels[b].clone()))?;
                meet[a * n + b] = g;
                meet[b * n + a] = g;
            }
        }
        let join = if joins {
            let mut join = vec![0; n * n];
            for a in 0..n {
                for b in a..n {
                    let upper: Vec<usize> = (0..n).filter(|&m| at(a, m) && at(b, m)).collect();
                    let l = upper
                        .iter()
                        .copied()
                        .find(|&l| upper.iter().all(|&m| at(l, m)))
                        .ok_or_else(|| PosetError::NoSupremum(labels[a].clone(), labels[b].clone()))?;
                    join[a * n + b] = l;
                    join[b * n + a] = l;
                }
            }
            Some(join)
        } else {
            None
        };
        Ok(FinitePoset { labels, leq, top, meet, join })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_joins(&self) -> bool {
        self.join.is_some()
    }

    /// Whether element `a` is below element `b`.
    pub fn leq_index(&self, a: usize, b: usize) -> bool {
        self.le(a, b)
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }
}

fn check_unique(labels: &[String]) -> Result<(), PosetError> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// The ordered set of slope values. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub enum ValuePoset {
    ExtendedReal(Numeric),
    /// Subsets of `universe`, with `A <= B` iff `A ⊇ B`. The empty set is
    /// the greatest element, infima are unions and suprema intersections.
    ReverseInclusion {
        universe: Vec<String>,
    },
    ExplicitFinite(FinitePoset),
}

impl ValuePoset {
    pub fn exact_reals() -> Self {
        ValuePoset::ExtendedReal(Numeric::Exact)
    }

    pub fn float_reals(tolerance: f64) -> Result<Self, PosetError> {
        if !tolerance.is_finite() || tolerance < 0.0 {
            return Err(PosetError::BadTolerance(tolerance));
        }
        Ok(ValuePoset::ExtendedReal(Numeric::Float { tolerance }))
    }

    pub fn reverse_inclusion(universe: Vec<String>) -> Result<Self, PosetError> {
        if universe.len() > MAX_UNIVERSE {
            return Err(PosetError::UniverseTooLarge(universe.len()));
        }
        check_unique(&universe)?;
        Ok(ValuePoset::ReverseInclusion { universe })
    }

    pub fn explicit_finite(labels: Vec<String>, order: Vec<Vec<bool>>, joins: bool) -> Result<Self, PosetError> {
        FinitePoset::new(labels, order, joins).map(ValuePoset::ExplicitFinite)
    }

    pub fn kind(&self) -> PosetKind {
        match self {
            ValuePoset::ExtendedReal(_) => PosetKind::ExtendedReal,
            ValuePoset::ReverseInclusion { .. } => PosetKind::ReverseInclusion,
            ValuePoset::ExplicitFinite(_) => PosetKind::ExplicitFinite,
        }
    }

    /// The greatest element `+∞`.
    pub fn top(&self) -> PosetValue {
        match self {
            ValuePoset::ExtendedReal(_) => PosetValue::PlusInfinity,
            ValuePoset::ReverseInclusion { .. } => PosetValue::Labels(LabelSet::EMPTY),
            ValuePoset::ExplicitFinite(p) => PosetValue::Element(p.top),
        }
    }

    /// Whether any two elements are comparable.
    pub fn is_total(&self) -> bool {
        match self {
            ValuePoset::ExtendedReal(_) => true,
            ValuePoset::ReverseInclusion { universe } => universe.is_empty(),
            ValuePoset::ExplicitFinite(p) => {
                let n = p.len();
                (0..n).all(|a| (0..n).all(|b| p.le(a, b) || p.le(b, a)))
            }
        }
    }

    pub fn universe(&self) -> Option<&[String]> {
        match self {
            ValuePoset::ReverseInclusion { universe } => Some(universe),
            _ => None,
        }
    }

    /// Looks up a reverse-inclusion label.
    pub fn label_index(&self, label: &str) -> Result<usize, PosetError> {
        self.universe()
            .and_then(|u| u.iter().position(|l| l == label))
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn contains(&self, v: &PosetValue) -> bool {
        match (self, v) {
            (_, PosetValue::PlusInfinity) => matches!(self, ValuePoset::ExtendedReal(_)),
            (ValuePoset::ExtendedReal(Numeric::Exact), PosetValue::Rational(_)) => true,
            (ValuePoset::ExtendedReal(Numeric::Float { .. }), PosetValue::Real(x)) => x.is_finite(),
            (ValuePoset::ReverseInclusion { universe }, PosetValue::Labels(s)) => {
                universe.len() >= 64 || s.0 >> universe.len() == 0
            }
            (ValuePoset::ExplicitFinite(p), PosetValue::Element(i)) => *i < p.len(),
            _ => false,
        }
    }

    pub fn check(&self, v: &PosetValue) -> Result<(), PosetError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(PosetError::CrossPosetComparison { value: v.to_string(), kind: self.kind().name() })
        }
    }

    /// `a <= b`.
    pub fn leq(&self, a: &PosetValue, b: &PosetValue) -> Result<bool, PosetError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (self, a, b) {
            (_, _, PosetValue::PlusInfinity) => true,
            (_, PosetValue::PlusInfinity, _) => false,
            (_, PosetValue::Rational(x), PosetValue::Rational(y)) => x <= y,
            (ValuePoset::ExtendedReal(Numeric::Float { tolerance }), PosetValue::Real(x), PosetValue::Real(y)) => {
                *x <= *y + *tolerance
            }
            (_, PosetValue::Labels(x), PosetValue::Labels(y)) => x.is_superset_of(*y),
            (ValuePoset::ExplicitFinite(p), PosetValue::Element(x), PosetValue::Element(y)) => p.le(*x, *y),
            _ => unreachable!("membership checked above"),
        })
    }

    /// `¬(a <= b)`: true when `b < a` and when the two are incomparable.
    pub fn not_leq(&self, a: &PosetValue, b: &PosetValue) -> Result<bool, PosetError> {
        self.leq(a, b).map(|r| !r)
    }

    /// Equality in the poset; for floats this is equality within tolerance.
    pub fn equiv(&self, a: &PosetValue, b: &PosetValue) -> Result<bool, PosetError> {
        Ok(self.leq(a, b)? && self.leq(b, a)?)
    }

    /// `a < b`, i.e. `a <= b` and `a != b`.
    pub fn lt(&self, a: &PosetValue, b: &PosetValue) -> Result<bool, PosetError> {
        Ok(self.leq(a, b)? && !self.leq(b, a)?)
    }

    /// Comparison result, `None` for incomparable pairs.
    pub fn compare(&self, a: &PosetValue, b: &PosetValue) -> Result<Option<Ordering>, PosetError> {
        Ok(match (self.leq(a, b)?, self.leq(b, a)?) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        })
    }

    fn meet2(&self, a: PosetValue, b: &PosetValue) -> PosetValue {
        match (self, a, b) {
            (_, PosetValue::PlusInfinity, b) => b.clone(),
            (_, a, PosetValue::PlusInfinity) => a,
            (_, PosetValue::Rational(x), PosetValue::Rational(y)) => {
                if &x <= y {
                    PosetValue::Rational(x)
                } else {
                    PosetValue::Rational(y.clone())
                }
            }
            (_, PosetValue::Real(x), PosetValue::Real(y)) => PosetValue::Real(x.min(*y)),
            (_, PosetValue::Labels(x), PosetValue::Labels(y)) => PosetValue::Labels(LabelSet(x.0 | y.0)),
            (ValuePoset::ExplicitFinite(p), PosetValue::Element(x), PosetValue::Element(y)) => {
                PosetValue::Element(p.meet[x * p.len() + y])
            }
            _ => unreachable!("membership checked by caller"),
        }
    }

    fn join2(&self, a: PosetValue, b: &PosetValue) -> Option<PosetValue> {
        Some(match (self, a, b) {
            (_, PosetValue::PlusInfinity, _) | (_, _, PosetValue::PlusInfinity) => PosetValue::PlusInfinity,
            (_, PosetValue::Rational(x), PosetValue::Rational(y)) => {
                if &x >= y {
                    PosetValue::Rational(x)
                } else {
                    PosetValue::Rational(y.clone())
                }
            }
            (_, PosetValue::Real(x), PosetValue::Real(y)) => PosetValue::Real(x.max(*y)),
            (_, PosetValue::Labels(x), PosetValue::Labels(y)) => PosetValue::Labels(LabelSet(x.0 & y.0)),
            (ValuePoset::ExplicitFinite(p), PosetValue::Element(x), PosetValue::Element(y)) => {
                PosetValue::Element(p.join.as_ref()?[x * p.len() + y])
            }
            _ => unreachable!("membership checked by caller"),
        })
    }

    /// Greatest lower bound of `values`; the empty collection yields `+∞`.
    pub fn inf_set<'a, I>(&self, values: I) -> Result<PosetValue, PosetError>
    where
        I: IntoIterator<Item = &'a PosetValue>,
    {
        let mut acc = self.top();
        for v in values {
            self.check(v)?;
            acc = self.meet2(acc, v);
        }
        Ok(acc)
    }

    /// Least upper bound of a non-empty collection, or `None` when the poset
    /// does not provide suprema.
    pub fn sup_set<'a, I>(&self, values: I) -> Result<Option<PosetValue>, PosetError>
    where
        I: IntoIterator<Item = &'a PosetValue>,
    {
        if !self.has_sup() {
            return Ok(None);
        }
        let mut acc: Option<PosetValue> = None;
        for v in values {
            self.check(v)?;
            acc = Some(match acc {
                None => v.clone(),
                Some(a) => match self.join2(a, v) {
                    Some(j) => j,
                    None => return Ok(None),
                },
            });
        }
        Ok(acc)
    }

    /// Whether `sup_set` is available.
    pub fn has_sup(&self) -> bool {
        match self {
            ValuePoset::ExplicitFinite(p) => p.has_joins(),
            _ => true,
        }
    }

    /// Human-readable rendering which resolves labels.
    pub fn render(&self, v: &PosetValue) -> String {
        match (self, v) {
            (ValuePoset::ReverseInclusion { universe }, PosetValue::Labels(s)) => {
                let names: Vec<&str> = s.indices().filter_map(|i| universe.get(i).map(String::as_str)).collect();
                format!("{{{}}}", names.join(","))
            }
            (ValuePoset::ExplicitFinite(p), PosetValue::Element(i)) => {
                p.labels.get(*i).cloned().unwrap_or_else(|| v.to_string())
            }
            (_, PosetValue::Rational(r)) if r.is_integer() => r.numer().to_string(),
            (_, PosetValue::Rational(r)) => {
                let sign = if r.is_negative() { "-" } else { "" };
                format!("{sign}{}/{}", r.numer().abs(), r.denom())
            }
            (_, PosetValue::Real(x)) if x.is_zero() => "0".into(),
            _ => v.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes() -> ValuePoset {
        ValuePoset::reverse_inclusion(vec!["2".into(), "3".into(), "5".into()]).unwrap()
    }

    fn labels(p: &ValuePoset, names: &[&str]) -> PosetValue {
        PosetValue::Labels(LabelSet::from_indices(names.iter().map(|n| p.label_index(n).unwrap())))
    }

    fn diamond(joins: bool) -> ValuePoset {
        // bot < a, b < top
        let t = true;
        let f = false;
        ValuePoset::explicit_finite(
            vec!["bot".into(), "a".into(), "b".into(), "top".into()],
            vec![vec![t, t, t, t], vec![f, t, f, t], vec![f, f, t, t], vec![f, f, f, t]],
            joins,
        )
        .unwrap()
    }

    #[test]
    fn real_order() {
        let p = ValuePoset::exact_reals();
        assert!(p.leq(&PosetValue::integer(1), &PosetValue::integer(3)).unwrap());
        assert!(p.not_leq(&PosetValue::integer(3), &PosetValue::integer(1)).unwrap());
        assert!(!p.not_leq(&PosetValue::integer(2), &PosetValue::integer(2)).unwrap());
        assert!(p.leq(&PosetValue::integer(7), &PosetValue::PlusInfinity).unwrap());
        assert!(!p.leq(&PosetValue::PlusInfinity, &PosetValue::integer(7)).unwrap());
    }

    #[test]
    fn reverse_inclusion_order() {
        let p = primes();
        let s23 = labels(&p, &["2", "3"]);
        let s2 = labels(&p, &["2"]);
        let s3 = labels(&p, &["3"]);
        assert!(p.leq(&s23, &s2).unwrap());
        assert!(!p.leq(&s2, &s3).unwrap());
        assert!(p.not_leq(&s2, &s3).unwrap());
        assert!(p.not_leq(&s3, &s2).unwrap());
        assert!(p.leq(&s2, &p.top()).unwrap());
        assert_eq!(p.compare(&s2, &s3).unwrap(), None);
    }

    #[test]
    fn infima_and_suprema() {
        let r = ValuePoset::exact_reals();
        let vals = [PosetValue::integer(1), PosetValue::integer(3), PosetValue::PlusInfinity];
        assert_eq!(r.inf_set(&vals).unwrap(), PosetValue::integer(1));
        assert_eq!(r.sup_set(&[PosetValue::integer(2), PosetValue::integer(1)]).unwrap(), Some(PosetValue::integer(2)));
        assert_eq!(r.inf_set(&[]).unwrap(), PosetValue::PlusInfinity);

        let p = primes();
        let vals = [labels(&p, &["3"]), labels(&p, &["2"]), labels(&p, &[])];
        assert_eq!(p.inf_set(&vals).unwrap(), labels(&p, &["2", "3"]));
        assert_eq!(p.sup_set(&vals[..2]).unwrap(), Some(labels(&p, &[])));
        let one = labels(&p, &["5"]);
        assert_eq!(p.inf_set(std::slice::from_ref(&one)).unwrap(), one);
    }

    #[test]
    fn float_tolerance() {
        let p = ValuePoset::float_reals(1e-9).unwrap();
        let a = PosetValue::Real(1.0);
        let b = PosetValue::Real(1.0 + 1e-12);
        assert!(p.equiv(&a, &b).unwrap());
        assert!(!p.lt(&a, &b).unwrap());
        assert!(p.lt(&a, &PosetValue::Real(1.1)).unwrap());
        assert!(ValuePoset::float_reals(-1.0).is_err());
    }

    #[test]
    fn cross_poset_values_are_rejected() {
        let r = ValuePoset::exact_reals();
        let err = r.leq(&PosetValue::Real(1.0), &PosetValue::integer(1)).unwrap_err();
        assert!(matches!(err, PosetError::CrossPosetComparison { .. }));
        let p = primes();
        assert!(p.leq(&PosetValue::Labels(LabelSet::singleton(3)), &p.top()).is_err());
        assert!(p.leq(&PosetValue::PlusInfinity, &p.top()).is_err());
    }

    #[test]
    fn explicit_diamond() {
        let p = diamond(true);
        let e = PosetValue::Element;
        assert_eq!(p.top(), e(3));
        assert_eq!(p.inf_set(&[e(1), e(2)]).unwrap(), e(0));
        assert_eq!(p.sup_set(&[e(1), e(2)]).unwrap(), Some(e(3)));
        assert!(p.not_leq(&e(1), &e(2)).unwrap());
        assert!(!p.is_total());

        let q = diamond(false);
        assert_eq!(q.sup_set(&[e(1), e(2)]).unwrap(), None);
    }

    #[test]
    fn explicit_validation_errors() {
        let t = true;
        let f = false;
        // two maximal elements: no top
        let err = FinitePoset::new(vec!["a".into(), "b".into()], vec![vec![t, f], vec![f, t]], false).unwrap_err();
        assert_eq!(err, PosetError::NoTop);
        // a, b both below c and d, c, d below top: a and b have no meet (no lower bound)
        let err = FinitePoset::new(
            vec!["a".into(), "b".into(), "top".into()],
            vec![vec![t, f, t], vec![f, t, t], vec![f, f, t]],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, PosetError::NoInfimum(..)));
        let err = FinitePoset::new(vec!["a".into(), "b".into()], vec![vec![t, t], vec![t, t]], false).unwrap_err();
        assert!(matches!(err, PosetError::NotAntisymmetric(..)));
        let err = FinitePoset::new(vec!["a".into()], vec![vec![f]], false).unwrap_err();
        assert!(matches!(err, PosetError::NotReflexive(..)));
        let err = FinitePoset::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![t, t, f], vec![f, t, t], vec![f, f, t]],
            false,
        )
        .unwrap_err();
        assert!(matches!(err, PosetError::NotTransitive(..)));
    }

    #[test]
    fn render_values() {
        let p = primes();
        assert_eq!(p.render(&labels(&p, &["2", "5"])), "{2,5}");
        let r = ValuePoset::exact_reals();
        assert_eq!(r.render(&PosetValue::ratio(-3, 2)), "-3/2");
        assert_eq!(r.render(&PosetValue::integer(4)), "4");
        assert_eq!(r.render(&PosetValue::PlusInfinity), "+inf");
    }
}
