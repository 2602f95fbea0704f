//! Finite admissible collections of subsets of a ground set.
//!
//! Members are stored as single-word bitsets. Pairwise infima (the largest
//! member inside an intersection) and suprema (the smallest member containing
//! a union) are tabulated once at construction.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: usize = 64;

/// Default cap on the number of members.
pub const DEFAULT_MAX_MEMBERS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("ground set must have between 1 and {MAX_GROUND} elements, got {0}")]
    BadGroundSize(usize),
    #[error("family has no members")]
    Empty,
    #[error("family has {found} members, the limit is {limit}")]
    TooManyMembers { found: usize, limit: usize },
    #[error("member {member} contains element {element} outside the ground set")]
    ElementOutOfRange { member: usize, element: usize },
    #[error("members {0} and {1} are the same subset")]
    Duplicate(usize, usize),
    #[error("the full ground set is not a member")]
    MissingTop,
    #[error("no member is contained in all others, or the least member is the full ground set")]
    MissingBottom,
    #[error("members {a} and {b} have no unique infimum: {w1} and {w2} are incomparable maximal lower bounds")]
    InfNotUnique { a: MemberId, b: MemberId, w1: MemberId, w2: MemberId },
    #[error("members {a} and {b} have no unique supremum: {w1} and {w2} are incomparable minimal upper bounds")]
    SupNotUnique { a: MemberId, b: MemberId, w1: MemberId, w2: MemberId },
    #[error("member {lo} is not contained in member {hi}")]
    NotComparable { lo: MemberId, hi: MemberId },
    #[error("interval bounds coincide at member {0}")]
    EmptyInterval(MemberId),
}

/// A subset of the ground set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Canonical order: ascending cardinality, then lexicographic on the
    /// sorted element lists.
    pub fn canonical_cmp(self, other: Subset) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }

    /// Re-encodes `self` relative to `frame`: the k-th element of `frame`
    /// becomes element k.
    pub fn compress(self, frame: Subset) -> Subset {
        Subset::from_elements(frame.elements().enumerate().filter(|&(_, e)| self.contains(e)).map(|(k, _)| k))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Index of a member in the order the family was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberId(pub usize);

impl fmt::Display for MemberId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A pair `sub ⊆ sup` of members, written `sup/sub`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    pub sub: MemberId,
    pub sup: MemberId,
}

impl AdmissiblePair {
    pub fn new(sub: MemberId, sup: MemberId) -> Self {
        AdmissiblePair { sub, sup }
    }

    pub fn is_strict(self) -> bool {
        self.sub != self.sup
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, FamilyError> {
        if n == 0 || n > MAX_GROUND {
            return Err(FamilyError::BadGroundSize(n));
        }
        Ok(GroundSet(n))
    }

    pub fn size(self) -> usize {
        self.0
    }
}

/// A validated admissible collection. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleFamily {
    ground: GroundSet,
    members: Vec<Subset>,
    canonical: Vec<MemberId>,
    position: Vec<usize>,
    bottom: MemberId,
    top: MemberId,
    inf: Vec<MemberId>,
    sup: Vec<MemberId>,
}

impl AdmissibleFamily {
    pub fn new(ground: GroundSet, subsets: Vec<Subset>) -> Result<Self, FamilyError> {
        Self::with_limit(ground, subsets, DEFAULT_MAX_MEMBERS)
    }

    /// Builds and validates a family; `max_members` overrides the default cap.
    pub fn with_limit(ground: GroundSet, subsets: Vec<Subset>, max_members: usize) -> Result<Self, FamilyError> {
        let n = subsets.len();
        if n == 0 {
            return Err(FamilyError::Empty);
        }
        if n > max_members {
            return Err(FamilyError::TooManyMembers { found: n, limit: max_members });
        }
        let full = Subset::full(ground.size());
        for (i, s) in subsets.iter().enumerate() {
            if !s.is_subset_of(full) {
                let element = s.difference(full).elements().next().unwrap_or(64);
                return Err(FamilyError::ElementOutOfRange { member: i, element });
            }
        }
        let mut canonical: Vec<MemberId> = (0..n).map(MemberId).collect();
        canonical.sort_by(|a, b| subsets[a.0].canonical_cmp(subsets[b.0]).then(a.cmp(b)));
        for w in canonical.windows(2) {
            if subsets[w[0].0] == subsets[w[1].0] {
                let (a, b) = (w[0].0.min(w[1].0), w[0].0.max(w[1].0));
                return Err(FamilyError::Duplicate(a, b));
            }
        }
        let mut position = vec![0; n];
        for (k, m) in canonical.iter().enumerate() {
            position[m.0] = k;
        }

        let top = subsets.iter().position(|&s| s == full).map(MemberId).ok_or(FamilyError::MissingTop)?;
        let bottom = canonical[0];
        if bottom == top || !subsets.iter().all(|s| subsets[bottom.0].is_subset_of(*s)) {
            return Err(FamilyError::MissingBottom);
        }

        let mut inf = vec![bottom; n * n];
        let mut sup = vec![top; n * n];
        for a in 0..n {
            for b in a..n {
                let (ia, ib) = (MemberId(a), MemberId(b));
                let i = greatest_below(&subsets, &canonical, subsets[a].intersection(subsets[b]))
                    .map_err(|(w1, w2)| FamilyError::InfNotUnique { a: ia, b: ib, w1, w2 })?;
                let s = least_above(&subsets, &canonical, subsets[a].union(subsets[b]))
                    .map_err(|(w1, w2)| FamilyError::SupNotUnique { a: ia, b: ib, w1, w2 })?;
                inf[a * n + b] = i;
                inf[b * n + a] = i;
                sup[a * n + b] = s;
                sup[b * n + a] = s;
            }
        }

        Ok(AdmissibleFamily { ground, members: subsets, canonical, position, bottom, top, inf, sup })
    }

    /// Convenience constructor from element lists.
    pub fn from_lists(ground_size: usize, lists: &[Vec<usize>]) -> Result<Self, FamilyError> {
        let ground = GroundSet::new(ground_size)?;
        let mut subsets = Vec::with_capacity(lists.len());
        for (i, l) in lists.iter().enumerate() {
            if let Some(&e) = l.iter().find(|&&e| e >= ground_size) {
                return Err(FamilyError::ElementOutOfRange { member: i, element: e });
            }
            subsets.push(Subset::from_elements(l.iter().copied()));
        }
        Self::new(ground, subsets)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bottom(&self) -> MemberId {
        self.bottom
    }

    pub fn top(&self) -> MemberId {
        self.top
    }

    pub fn subset(&self, m: MemberId) -> Subset {
        self.members[m.0]
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.members
    }

    /// Member ids in canonical order.
    pub fn canonical(&self) -> &[MemberId] {
        &self.canonical
    }

    /// Position of `m` in the canonical order; used for tie-breaking.
    pub fn canonical_position(&self, m: MemberId) -> usize {
        self.position[m.0]
    }

    pub fn find(&self, s: Subset) -> Option<MemberId> {
        self.members.iter().position(|&x| x == s).map(MemberId)
    }

    pub fn ids(&self) -> impl Iterator<Item = MemberId> + '_ {
        (0..self.len()).map(MemberId)
    }

    /// `a ⊆ b`.
    pub fn is_subset(&self, a: MemberId, b: MemberId) -> bool {
        self.members[a.0].is_subset_of(self.members[b.0])
    }

    /// `a ⊊ b`.
    pub fn is_proper_subset(&self, a: MemberId, b: MemberId) -> bool {
        a != b && self.is_subset(a, b)
    }

    pub fn inf_pair(&self, a: MemberId, b: MemberId) -> MemberId {
        self.inf[a.0 * self.len() + b.0]
    }

    pub fn sup_pair(&self, a: MemberId, b: MemberId) -> MemberId {
        self.sup[a.0 * self.len() + b.0]
    }

    /// All members `F` with `lo ⊆ F ⊆ hi`, in canonical order.
    pub fn members_between(&self, lo: MemberId, hi: MemberId) -> Result<Vec<MemberId>, FamilyError> {
        if !self.is_subset(lo, hi) {
            return Err(FamilyError::NotComparable { lo, hi });
        }
        Ok(self.between_unchecked(lo, hi).collect())
    }

    pub(crate) fn between_unchecked(&self, lo: MemberId, hi: MemberId) -> impl Iterator<Item = MemberId> + '_ {
        let (l, h) = (self.members[lo.0], self.members[hi.0]);
        self.canonical.iter().copied().filter(move |m| {
            let s = self.members[m.0];
            l.is_subset_of(s) && s.is_subset_of(h)
        })
    }

    /// Every strict pair `sub ⊊ sup`, ordered by canonical position of `sub`
    /// then of `sup`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = AdmissiblePair> + '_ {
        self.canonical.iter().flat_map(move |&a| {
            self.canonical
                .iter()
                .filter(move |&&b| self.is_proper_subset(a, b))
                .map(move |&b| AdmissiblePair::new(a, b))
        })
    }

    /// Pairs `a ⊊ b` with no member strictly between them.
    pub fn covers(&self) -> Vec<(MemberId, MemberId)> {
        let mut out = Vec::new();
        for p in self.strict_pairs() {
            let between = self.between_unchecked(p.sub, p.sup).count();
            if between == 2 {
                out.push((p.sub, p.sup));
            }
        }
        out
    }

    /// The sub-family of members between `lo` and `hi`, re-encoded over the
    /// elements of `hi`, with bottom `lo` and top `hi`.
    pub fn interval_family(&self, lo: MemberId, hi: MemberId) -> Result<IntervalFamily, FamilyError> {
        if lo == hi {
            return Err(FamilyError::EmptyInterval(lo));
        }
        let chosen = self.members_between(lo, hi)?;
        let frame = self.members[hi.0];
        let ground = GroundSet::new(frame.len() as usize)?;
        let subsets = chosen.iter().map(|m| self.members[m.0].compress(frame)).collect();
        let family = AdmissibleFamily::with_limit(ground, subsets, usize::MAX)?;
        Ok(IntervalFamily { family, parent: chosen })
    }
}

/// A family obtained by restricting to an interval, with the correspondence
/// to the parent family's members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalFamily {
    pub family: AdmissibleFamily,
    /// `parent[k]` is the parent member corresponding to member `k`.
    pub parent: Vec<MemberId>,
}

impl IntervalFamily {
    pub fn parent_of(&self, m: MemberId) -> MemberId {
        self.parent[m.0]
    }

    pub fn child_of(&self, parent: MemberId) -> Option<MemberId> {
        self.parent.iter().position(|&p| p == parent).map(MemberId)
    }
}

// Greatest member contained in `bound`; on failure two incomparable maximal
// candidates.
fn greatest_below(members: &[Subset], canonical: &[MemberId], bound: Subset) -> Result<MemberId, (MemberId, MemberId)> {
    let below: Vec<MemberId> = canonical.iter().copied().filter(|m| members[m.0].is_subset_of(bound)).collect();
    let best = *below.last().expect("bottom lies below every member");
    if let Some(&other) = below.iter().find(|m| !members[m.0].is_subset_of(members[best.0])) {
        let rival = below
            .iter()
            .rev()
            .copied()
            .find(|m| members[other.0].is_subset_of(members[m.0]) && !members[m.0].is_subset_of(members[best.0]))
            .unwrap_or(other);
        return Err((best, rival));
    }
    Ok(best)
}

fn least_above(members: &[Subset], canonical: &[MemberId], bound: Subset) -> Result<MemberId, (MemberId, MemberId)> {
    let above: Vec<MemberId> = canonical.iter().copied().filter(|m| bound.is_subset_of(members[m.0])).collect();
    let best = *above.first().expect("top contains every member");
    if let Some(&other) = above.iter().find(|m| !members[best.0].is_subset_of(members[m.0])) {
        let rival = above
            .iter()
            .copied()
            .find(|m| members[m.0].is_subset_of(members[other.0]) && !members[best.0].is_subset_of(members[m.0]))
            .unwrap_or(other);
        return Err((best, rival));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean2() -> AdmissibleFamily {
        AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![1], vec![0, 1]]).unwrap()
    }

    fn z6() -> AdmissibleFamily {
        AdmissibleFamily::from_lists(6, &[vec![0], vec![0, 3], vec![0, 2, 4], vec![0, 1, 2, 3, 4, 5]]).unwrap()
    }

    #[test]
    fn boolean_family() {
        let f = boolean2();
        assert_eq!(f.bottom(), MemberId(0));
        assert_eq!(f.top(), MemberId(3));
        assert_eq!(f.inf_pair(MemberId(1), MemberId(2)), MemberId(0));
        assert_eq!(f.sup_pair(MemberId(1), MemberId(2)), MemberId(3));
        assert_eq!(
            f.members_between(MemberId(0), MemberId(3)).unwrap(),
            vec![MemberId(0), MemberId(1), MemberId(2), MemberId(3)]
        );
        assert_eq!(f.members_between(MemberId(1), MemberId(1)).unwrap(), vec![MemberId(1)]);
        assert!(matches!(f.members_between(MemberId(1), MemberId(2)), Err(FamilyError::NotComparable { .. })));
    }

    #[test]
    fn cyclic_six() {
        let f = z6();
        assert_eq!(f.bottom(), MemberId(0));
        assert_eq!(f.inf_pair(MemberId(1), MemberId(2)), MemberId(0));
        assert_eq!(f.sup_pair(MemberId(1), MemberId(2)), MemberId(3));
        assert_eq!(f.members_between(f.bottom(), f.top()).unwrap().len(), 4);
        assert_eq!(f.inf_pair(MemberId(2), MemberId(2)), MemberId(2));
        assert_eq!(f.sup_pair(MemberId(1), f.top()), f.top());
    }

    #[test]
    fn chains_are_admissible() {
        let f = AdmissibleFamily::from_lists(3, &[vec![0], vec![0, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(f.covers().len(), 2);
    }

    #[test]
    fn missing_top_and_bottom() {
        assert_eq!(AdmissibleFamily::from_lists(2, &[vec![], vec![0]]).unwrap_err(), FamilyError::MissingTop);
        assert_eq!(
            AdmissibleFamily::from_lists(2, &[vec![0], vec![1], vec![0, 1]]).unwrap_err(),
            FamilyError::MissingBottom
        );
        assert_eq!(AdmissibleFamily::from_lists(1, &[vec![0]]).unwrap_err(), FamilyError::MissingBottom);
        assert_eq!(AdmissibleFamily::from_lists(2, &[]).unwrap_err(), FamilyError::Empty);
        assert_eq!(
            AdmissibleFamily::from_lists(2, &[vec![], vec![0], vec![0], vec![0, 1]]).unwrap_err(),
            FamilyError::Duplicate(1, 2)
        );
        assert!(matches!(
            AdmissibleFamily::from_lists(2, &[vec![], vec![2], vec![0, 1]]).unwrap_err(),
            FamilyError::ElementOutOfRange { member: 1, element: 2 }
        ));
    }

    #[test]
    fn non_unique_bounds_are_reported() {
        // {0} and {1} are both maximal members inside {0,1,2} ∩ {0,1,3}
        let err = AdmissibleFamily::from_lists(
            4,
            &[vec![0, 1, 2, 3], vec![0, 1, 2], vec![0, 1, 3], vec![], vec![0], vec![1]],
        )
        .unwrap_err();
        match err {
            FamilyError::InfNotUnique { a, b, w1, w2 } => {
                assert_eq!((a, b), (MemberId(1), MemberId(2)));
                let mut w = [w1.0, w2.0];
                w.sort();
                assert_eq!(w, [4, 5]);
            }
            e => panic!("unexpected {e:?}"),
        }
        // {0,2,3} and {1,2,3} are both minimal members containing {2} ∪ {3}
        let err = AdmissibleFamily::from_lists(
            4,
            &[vec![], vec![2], vec![3], vec![0, 2, 3], vec![1, 2, 3], vec![0, 1, 2, 3]],
        )
        .unwrap_err();
        assert!(matches!(err, FamilyError::SupNotUnique { a: MemberId(1), b: MemberId(2), .. }), "{err:?}");
    }

    #[test]
    fn interval_of_boolean_three() {
        let lists: Vec<Vec<usize>> = (0..8u64).map(|b| Subset(b).elements().collect()).collect();
        let f = AdmissibleFamily::from_lists(3, &lists).unwrap();
        let lo = f.find(Subset::from_elements([0])).unwrap();
        let iv = f.interval_family(lo, f.top()).unwrap();
        assert_eq!(iv.family.len(), 4);
        assert_eq!(iv.family.ground().size(), 3);
        assert_eq!(iv.parent_of(iv.family.bottom()), lo);
        assert_eq!(iv.parent_of(iv.family.top()), f.top());
        let whole = f.interval_family(f.bottom(), f.top()).unwrap();
        for m in whole.family.ids() {
            assert_eq!(whole.family.subset(m), f.subset(whole.parent_of(m)));
        }
        assert!(matches!(f.interval_family(lo, lo), Err(FamilyError::EmptyInterval(_))));
    }

    #[test]
    fn canonical_order() {
        let a = Subset::from_elements([0, 2]);
        let b = Subset::from_elements([1, 2]);
        let c = Subset::from_elements([3]);
        assert_eq!(a.canonical_cmp(b), Ordering::Less);
        assert_eq!(c.canonical_cmp(a), Ordering::Less);
        assert_eq!(a.canonical_cmp(a), Ordering::Equal);
        assert_eq!(Subset::from_elements([0, 3]).canonical_cmp(Subset::from_elements([1, 2])), Ordering::Less);
    }
}
