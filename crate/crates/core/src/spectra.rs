//! Finite topologies on the prime spectrum.
//!
//! Basic opens are indexed by principal subgroups `A = G(a)`:
//! `U(a) = {P : a ∉ P}` and `V(a) = {P : a ∈ P}`, and `a ∈ P` iff `A ⊆ P`.
//! Point sets are bitmaps over the spectrum's point list.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::frame::{Frame, SubgroupId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    HullKernel,
    Inverse,
    Patch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("subgroup {0:?} is not a prime of this group")]
    UnknownPoint(SubgroupId),
}

/// Generator label of a basic open, in terms of principal subgroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpenLabel {
    U(SubgroupId),
    V(SubgroupId),
    /// `U(a) ∩ V(b)`.
    UV(SubgroupId, SubgroupId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicOpen {
    pub label: OpenLabel,
    pub members: FixedBitSet,
}

#[derive(Debug, Clone)]
pub struct FiniteSpectrum {
    points: Vec<SubgroupId>,
    topology: Topology,
    opens: Vec<BasicOpen>,
}

fn u_set(frame: &Frame, points: &[SubgroupId], a: SubgroupId) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(points.len());
    for (k, &p) in points.iter().enumerate() {
        s.set(k, !frame.le(a, p));
    }
    s
}

fn complement(s: &FixedBitSet) -> FixedBitSet {
    let mut c = s.clone();
    c.toggle_range(..);
    c
}

/// `Spec(G)` with the chosen topology.
pub fn spec_space(frame: &Frame, topology: Topology) -> FiniteSpectrum {
    FiniteSpectrum::on(frame, frame.spec(), topology)
}

impl FiniteSpectrum {
    /// The subspace topology induced on an arbitrary set of primes.
    pub fn on(frame: &Frame, points: Vec<SubgroupId>, topology: Topology) -> Self {
        let principals = frame.principals();
        let us: Vec<(SubgroupId, FixedBitSet)> = principals.iter().map(|&a| (a, u_set(frame, &points, a))).collect();
        let mut opens = Vec::new();
        match topology {
            Topology::HullKernel => {
                for (a, s) in &us {
                    opens.push(BasicOpen { label: OpenLabel::U(*a), members: s.clone() });
                }
            }
            Topology::Inverse => {
                for (a, s) in &us {
                    opens.push(BasicOpen { label: OpenLabel::V(*a), members: complement(s) });
                }
            }
            Topology::Patch => {
                for (a, sa) in &us {
                    for (b, sb) in &us {
                        let mut m = sa.clone();
                        m.intersect_with(&complement(sb));
                        opens.push(BasicOpen { label: OpenLabel::UV(*a, *b), members: m });
                    }
                }
            }
        }
        FiniteSpectrum { points, topology, opens }
    }

    pub fn points(&self) -> &[SubgroupId] {
        &self.points
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn basic_opens(&self) -> &[BasicOpen] {
        &self.opens
    }

    pub fn index_of(&self, p: SubgroupId) -> Option<usize> {
        self.points.iter().position(|&q| q == p)
    }

    pub fn set_of(&self, ids: &[SubgroupId]) -> Result<FixedBitSet, SpectrumError> {
        let mut s = FixedBitSet::with_capacity(self.points.len());
        for &id in ids {
            s.insert(self.index_of(id).ok_or(SpectrumError::UnknownPoint(id))?);
        }
        Ok(s)
    }

    pub fn ids_of(&self, s: &FixedBitSet) -> Vec<SubgroupId> {
        s.ones().map(|k| self.points[k]).collect()
    }

    /// A basic open containing point `k` and missing `s`.
    pub fn separating_open(&self, k: usize, s: &FixedBitSet) -> Option<&BasicOpen> {
        self.opens.iter().find(|o| o.members.contains(k) && o.members.is_disjoint(s))
    }

    pub fn closure(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.points.len());
        for k in 0..self.points.len() {
            if self.separating_open(k, s).is_none() {
                out.insert(k);
            }
        }
        out
    }

    pub fn is_dense(&self, s: &FixedBitSet) -> bool {
        self.closure(s).count_ones(..) == self.points.len()
    }
}

/// A patch-basic open `U(a) ∩ V(b)` around `q` avoiding `family`, as `(G(a), G(b))`.
pub fn patch_separation(
    frame: &Frame,
    q: SubgroupId,
    family: &[SubgroupId],
) -> Result<Option<(SubgroupId, SubgroupId)>, SpectrumError> {
    let space = spec_space(frame, Topology::Patch);
    let k = space.index_of(q).ok_or(SpectrumError::UnknownPoint(q))?;
    let s = space.set_of(family)?;
    Ok(space.separating_open(k, &s).map(|o| match o.label {
        OpenLabel::UV(a, b) => (a, b),
        _ => unreachable!("patch opens are labelled UV"),
    }))
}

pub fn patch_closure_membership(frame: &Frame, q: SubgroupId, family: &[SubgroupId]) -> Result<bool, SpectrumError> {
    Ok(patch_separation(frame, q, family)?.is_none())
}

/// Every prime lies in the patch closure of `Min(G)`.
pub fn min_patch_dense(frame: &Frame) -> bool {
    let space = spec_space(frame, Topology::Patch);
    let min = space.set_of(&frame.minimal_primes()).expect("minimal primes are primes");
    space.is_dense(&min)
}

/// Every nonempty patch-basic open contains a nonempty `U(g)`.
pub fn principal_pi_base(frame: &Frame) -> bool {
    let patch = spec_space(frame, Topology::Patch);
    let hk = spec_space(frame, Topology::HullKernel);
    patch
        .basic_opens()
        .iter()
        .filter(|o| !o.members.is_clear())
        .all(|o| hk.basic_opens().iter().any(|u| !u.members.is_clear() && u.members.is_subset(&o.members)))
}

/// Distinct compact opens `U(g)` have distinct hull-kernel closures.
pub fn compact_open_distinct_closures(frame: &Frame) -> bool {
    let hk = spec_space(frame, Topology::HullKernel);
    let mut sets: Vec<FixedBitSet> = hk.basic_opens().iter().map(|o| o.members.clone()).collect();
    sets.sort_by(|a, b| a.as_slice().cmp(b.as_slice()));
    sets.dedup();
    let closures: Vec<FixedBitSet> = sets.iter().map(|s| hk.closure(s)).collect();
    for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            if closures[i] == closures[j] {
                return false;
            }
        }
    }
    true
}

/// Every principal subgroup is the meet of the minimal primes above it.
pub fn principal_is_min_intersection(frame: &Frame) -> bool {
    let min = frame.minimal_primes();
    frame.principals().into_iter().all(|a| frame.meet_all(min.iter().copied().filter(|&p| frame.le(a, p))) == a)
}
