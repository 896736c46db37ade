//! The finite frame `C(G)` of convex ℓ-subgroups.
//!
//! Every convex ℓ-subgroup of `G` is a level cut `G ∩ ∏ C(λ_i)`: for a
//! convex ℓ-subgroup `H`, let `λ` be the componentwise largest level in `H`;
//! the join of the absolute values of a basis of `H` attains `λ` in every
//! fiber, and any element of `G` with levels at most `λ` is dominated by a
//! multiple of it. So the frame is finite, meets and joins are computed
//! on level vectors, and each element is identified by its minimal pattern.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::ambient::{AVec, Ambient, LevelPattern};
use crate::exact::IntLattice;
use crate::lgroup::{all_patterns, LGroup, LGroupError};

/// Default bound on the number of level cuts a frame may enumerate.
pub const DEFAULT_FRAME_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame would enumerate {cuts} level cuts, cap is {cap}")]
    TooLarge { cuts: usize, cap: usize },
    #[error(transparent)]
    Group(#[from] LGroupError),
}

/// Index of a convex ℓ-subgroup inside its [`Frame`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSubgroup {
    levels: LevelPattern,
    lattice: IntLattice,
}

impl ConvexSubgroup {
    /// The componentwise least level pattern cutting this subgroup.
    pub fn levels(&self) -> &LevelPattern {
        &self.levels
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }
}

/// A group together with an ℓ-subgroup structure map into it.
#[derive(Debug, Clone)]
pub struct CoordinateMap {
    pub group: LGroup,
    coords: Vec<usize>,
    source_dim: usize,
}

impl CoordinateMap {
    /// Image of an ambient vector of the source.
    pub fn apply(&self, v: &AVec) -> AVec {
        debug_assert_eq!(v.len(), self.source_dim);
        if self.coords.is_empty() {
            return AVec::zeros(self.group.ambient().total_dim());
        }
        AVec(self.coords.iter().map(|&c| v.0[c].clone()).collect())
    }

    /// Pads an element back into the source ambient (zero elsewhere).
    pub fn lift(&self, v: &AVec) -> AVec {
        let mut out = AVec::zeros(self.source_dim);
        for (k, &c) in self.coords.iter().enumerate() {
            out.0[c] = v.0[k].clone();
        }
        out
    }

    pub fn lift_lattice(&self, l: &IntLattice) -> IntLattice {
        let rows = l.basis().iter().map(|b| self.lift(&AVec(b.clone())).into_inner()).collect();
        IntLattice::new(self.source_dim, rows).expect("dimensions agree")
    }

    pub fn coordinates(&self) -> &[usize] {
        &self.coords
    }
}

/// Builds the ℓ-group living on the listed (fiber, kept range) coordinates.
fn coordinate_group(
    source: &Ambient,
    lattice: &IntLattice,
    keep: Vec<(usize, std::ops::Range<usize>)>,
) -> CoordinateMap {
    let keep: Vec<_> = keep.into_iter().filter(|(_, r)| !r.is_empty()).collect();
    if keep.is_empty() {
        return CoordinateMap { group: LGroup::trivial(), coords: Vec::new(), source_dim: source.total_dim() };
    }
    let depths: Vec<usize> = keep.iter().map(|(_, r)| r.len()).collect();
    let coords: Vec<usize> = keep.iter().flat_map(|(_, r)| r.clone()).collect();
    let ambient = Ambient::from_depths(&depths).expect("depths positive");
    let image = lattice.project(&coords).expect("coordinates in range");
    CoordinateMap { group: LGroup::closed(ambient, image), coords, source_dim: source.total_dim() }
}

/// The frame of convex ℓ-subgroups of an instance.
#[derive(Debug, Clone)]
pub struct Frame {
    group: LGroup,
    cap: usize,
    elements: Vec<ConvexSubgroup>,
    by_cut: HashMap<LevelPattern, SubgroupId>,
    witnesses: BTreeMap<LevelPattern, AVec>,
}

impl Frame {
    pub fn new(group: LGroup) -> Result<Frame, FrameError> {
        Self::with_cap(group, DEFAULT_FRAME_CAP)
    }

    /// Enumerates every level cut, deduplicated by canonical lattice.
    pub fn with_cap(group: LGroup, cap: usize) -> Result<Frame, FrameError> {
        let cuts = group.ambient().depths().iter().try_fold(1usize, |acc, d| acc.checked_mul(d + 1));
        match cuts {
            Some(c) if c <= cap => {}
            _ => return Err(FrameError::TooLarge { cuts: cuts.unwrap_or(usize::MAX), cap }),
        }
        let mut elements: Vec<ConvexSubgroup> = Vec::new();
        let mut by_lattice: HashMap<IntLattice, SubgroupId> = HashMap::new();
        let mut raw = Vec::new();
        for p in all_patterns(group.ambient()) {
            let lattice = group.section(&p);
            let id = *by_lattice.entry(lattice.clone()).or_insert_with(|| {
                let levels = group.support_levels(&lattice);
                elements.push(ConvexSubgroup { levels, lattice });
                SubgroupId(elements.len() - 1)
            });
            raw.push((p, id));
        }
        // Stable ids: order by total level, then by the pattern itself.
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| (elements[i].levels.0.iter().sum::<usize>(), elements[i].levels.clone()));
        let mut rename = vec![0; elements.len()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let mut sorted: Vec<Option<ConvexSubgroup>> = elements.into_iter().map(Some).collect();
        let elements: Vec<ConvexSubgroup> = order.iter().map(|&old| sorted[old].take().expect("once")).collect();
        let by_cut = raw.into_iter().map(|(p, id)| (p, SubgroupId(rename[id.0]))).collect();
        let witnesses = group.pattern_witnesses();
        Ok(Frame { group, cap, elements, by_cut, witnesses })
    }

    pub fn group(&self) -> &LGroup {
        &self.group
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubgroupId> {
        (0..self.elements.len()).map(SubgroupId)
    }

    pub fn get(&self, id: SubgroupId) -> &ConvexSubgroup {
        &self.elements[id.0]
    }

    pub fn levels(&self, id: SubgroupId) -> &LevelPattern {
        &self.elements[id.0].levels
    }

    pub fn lattice(&self, id: SubgroupId) -> &IntLattice {
        &self.elements[id.0].lattice
    }

    pub fn bottom(&self) -> SubgroupId {
        self.cut(&LevelPattern::zero(self.group.ambient().num_fibers()))
    }

    pub fn top(&self) -> SubgroupId {
        self.cut(&self.group.ambient().top_pattern())
    }

    /// The subgroup cut out by an arbitrary level pattern.
    pub fn cut(&self, p: &LevelPattern) -> SubgroupId {
        match self.by_cut.get(p) {
            Some(&id) => id,
            None => {
                let depths = self.group.ambient().depths();
                let clamped = LevelPattern(p.0.iter().zip(&depths).map(|(l, d)| *l.min(d)).collect());
                self.by_cut[&clamped]
            }
        }
    }

    /// Lookup by canonical lattice.
    pub fn find(&self, lattice: &IntLattice) -> Option<SubgroupId> {
        let id = self.cut(&self.group.support_levels(lattice));
        (self.lattice(id) == lattice).then_some(id)
    }

    /// Realizable level patterns with positive witnesses.
    pub fn witnesses(&self) -> &BTreeMap<LevelPattern, AVec> {
        &self.witnesses
    }

    pub fn le(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.levels(a).le(self.levels(b))
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.cut(&self.levels(a).meet(self.levels(b)))
    }

    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.cut(&self.levels(a).join(self.levels(b)))
    }

    pub fn meet_all(&self, ids: impl IntoIterator<Item = SubgroupId>) -> SubgroupId {
        ids.into_iter().fold(self.top(), |acc, id| self.meet(acc, id))
    }

    pub fn join_all(&self, ids: impl IntoIterator<Item = SubgroupId>) -> SubgroupId {
        ids.into_iter().fold(self.bottom(), |acc, id| self.join(acc, id))
    }

    /// Whether `v` (an element of `G`) lies in `h`.
    pub fn contains(&self, h: SubgroupId, v: &AVec) -> bool {
        self.group.ambient().levels(&v.0).le(self.levels(h))
    }

    /// Covering pairs `(lower, upper)` of the inclusion order.
    pub fn hasse_edges(&self) -> Vec<(SubgroupId, SubgroupId)> {
        let mut out = Vec::new();
        for a in self.ids() {
            for b in self.ids() {
                if a == b || !self.le(a, b) {
                    continue;
                }
                let covered = self.ids().any(|c| c != a && c != b && self.le(a, c) && self.le(c, b));
                if !covered {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `G(g)`, the convex ℓ-subgroup generated by `g`.
    pub fn principal(&self, g: &AVec) -> Result<SubgroupId, LGroupError> {
        self.group.check_member(g)?;
        Ok(self.cut(&self.group.ambient().levels(&g.0)))
    }

    /// Distinct principal convex ℓ-subgroups, one per realizable pattern.
    pub fn principals(&self) -> Vec<SubgroupId> {
        let mut out: Vec<SubgroupId> = self.witnesses.keys().map(|p| self.cut(p)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// A generator of `h` when it is principal.
    pub fn is_principal(&self, h: SubgroupId) -> Option<AVec> {
        self.witnesses.get(self.levels(h)).cloned()
    }

    /// The polar of any set of elements supported on `fibers`.
    pub fn polar_of_fibers(&self, fibers: &[usize]) -> SubgroupId {
        let mut p = self.group.ambient().top_pattern();
        for &i in fibers {
            p.0[i] = 0;
        }
        self.cut(&p)
    }

    /// `S^⊥`: elements vanishing on every fiber where some `s` is nonzero.
    pub fn polar(&self, s: &[AVec]) -> Result<SubgroupId, LGroupError> {
        let mut support = LevelPattern::zero(self.group.ambient().num_fibers());
        for v in s {
            self.group.check_member(v)?;
            support = support.join(&self.group.ambient().levels(&v.0));
        }
        Ok(self.polar_of_fibers(&support.support()))
    }

    pub fn polar_of(&self, h: SubgroupId) -> SubgroupId {
        self.polar_of_fibers(&self.levels(h).support())
    }

    pub fn double_polar(&self, g: &AVec) -> Result<SubgroupId, LGroupError> {
        Ok(self.polar_of(self.polar(std::slice::from_ref(g))?))
    }

    /// Double polar of an element with the given level pattern.
    pub fn double_polar_of_pattern(&self, p: &LevelPattern) -> SubgroupId {
        self.polar_of(self.polar_of_fibers(&p.support()))
    }

    /// `d(H)`: the join of `h^⊥⊥` over `h in H`, iterated to a fixpoint.
    pub fn d_closure(&self, h: SubgroupId) -> SubgroupId {
        let mut current = h;
        loop {
            let mut next = current;
            for p in self.witnesses.keys() {
                if p.le(self.levels(current)) {
                    next = self.join(next, self.double_polar_of_pattern(p));
                }
            }
            if next == current {
                return current;
            }
            current = next;
        }
    }

    pub fn is_d_subgroup(&self, h: SubgroupId) -> bool {
        self.d_closure(h) == h
    }

    /// `H ≠ G` is prime iff the subgroups above it form a chain.
    pub fn is_prime(&self, h: SubgroupId) -> bool {
        if h == self.top() {
            return false;
        }
        let above: Vec<SubgroupId> = self.ids().filter(|&k| self.le(h, k)).collect();
        above.iter().all(|&a| above.iter().all(|&b| self.le(a, b) || self.le(b, a)))
    }

    pub fn spec(&self) -> Vec<SubgroupId> {
        self.ids().filter(|&h| self.is_prime(h)).collect()
    }

    pub fn minimal_primes(&self) -> Vec<SubgroupId> {
        let spec = self.spec();
        spec.iter().copied().filter(|&p| !spec.iter().any(|&q| q != p && self.le(q, p))).collect()
    }

    /// Maximal members of `C(G) ∖ {G}`.
    pub fn max_convex(&self) -> Vec<SubgroupId> {
        let top = self.top();
        let proper: Vec<SubgroupId> = self.ids().filter(|&h| h != top).collect();
        proper.iter().copied().filter(|&h| !proper.iter().any(|&k| k != h && self.le(h, k))).collect()
    }

    /// Subgroups maximal with respect to not containing `g`.
    pub fn values(&self, g: &AVec) -> Result<Vec<SubgroupId>, LGroupError> {
        self.group.check_member(g)?;
        if g.is_zero() {
            return Err(LGroupError::Precondition("values of 0 are undefined".into()));
        }
        let avoid: Vec<SubgroupId> = self.ids().filter(|&h| !self.contains(h, g)).collect();
        Ok(avoid.iter().copied().filter(|&h| !avoid.iter().any(|&k| k != h && self.le(h, k))).collect())
    }

    pub fn spec_d(&self) -> Vec<SubgroupId> {
        self.spec().into_iter().filter(|&p| self.is_d_subgroup(p)).collect()
    }

    /// Maximal proper d-subgroups.
    pub fn max_d(&self) -> Vec<SubgroupId> {
        let top = self.top();
        let ds: Vec<SubgroupId> = self.ids().filter(|&h| h != top && self.is_d_subgroup(h)).collect();
        ds.iter().copied().filter(|&h| !ds.iter().any(|&k| k != h && self.le(h, k))).collect()
    }

    /// `G/H`, realized by truncating every fiber below the levels of `H`.
    pub fn quotient(&self, h: SubgroupId) -> CoordinateMap {
        let amb = self.group.ambient();
        let levels = self.levels(h);
        let keep = (0..amb.num_fibers())
            .map(|i| {
                let r = amb.fiber_range(i);
                (i, r.start..r.end - levels.0[i])
            })
            .collect();
        coordinate_group(amb, self.group.lattice(), keep)
    }

    /// `H` as a standalone instance on the low-order coordinates it uses.
    pub fn sub_as_lgroup(&self, h: SubgroupId) -> CoordinateMap {
        let amb = self.group.ambient();
        let levels = self.levels(h);
        let keep = (0..amb.num_fibers())
            .map(|i| {
                let r = amb.fiber_range(i);
                (i, r.end - levels.0[i]..r.end)
            })
            .collect();
        coordinate_group(amb, self.lattice(h), keep)
    }

    /// `A + B` as a lattice, for direct-sum checks.
    pub fn lattice_sum(&self, a: SubgroupId, b: SubgroupId) -> IntLattice {
        self.lattice(a).sum(self.lattice(b)).expect("same dimension")
    }

    /// A positive element with trivial polar (always exists here).
    pub fn weak_unit_exists(&self) -> Option<AVec> {
        self.witnesses.iter().find(|(p, _)| self.polar_of_fibers(&p.support()) == self.bottom()).map(|(_, w)| w.clone())
    }

    fn check_unit_candidate(&self, u: &AVec) -> Result<(), LGroupError> {
        self.group.check_member(u)?;
        if !self.group.ambient().is_nonneg(u) {
            return Err(LGroupError::Negative(u.clone()));
        }
        Ok(())
    }

    pub fn is_weak_unit(&self, u: &AVec) -> Result<bool, LGroupError> {
        self.check_unit_candidate(u)?;
        Ok(self.double_polar(u)? == self.top())
    }

    pub fn is_strong_unit(&self, u: &AVec) -> Result<bool, LGroupError> {
        self.check_unit_candidate(u)?;
        Ok(self.principal(u)? == self.top())
    }

    /// An element of `big ∖ small` for nested subgroups, if any.
    pub fn element_between(&self, big: SubgroupId, small: SubgroupId) -> Option<AVec> {
        let found = self.lattice(big).escapes_sections(&[self.lattice(small).clone()]).ok()??;
        Some(self.group.ambient().abs(&AVec(found)).expect("shape"))
    }
}
