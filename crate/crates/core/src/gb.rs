//! The `G+B` construction over a family `𝒫` of primes with trivial meet.
//!
//! Elements live in `∏ G/P_i` over the index set `𝒫 × ℕ`. Each is stored
//! as a global part `g ∈ G` plus the finitely many indices where the value
//! differs from `π_P(g)`; cosets in `G/P` are represented by their image
//! under the truncation map of [`Frame::quotient`], which is canonical.
//! Indices are never truncated, so every operation is exact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::ambient::{AVec, Ambient, LevelPattern};
use crate::deciders;
use crate::exact::IntLattice;
use crate::frame::{CoordinateMap, Frame, SubgroupId};
use crate::lgroup::LGroupError;
use crate::spectra::{self, SpectrumError};

/// Largest family for which subsets of `𝒫` are enumerated.
pub const MAX_SUBSET_PRIMES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("subgroup {0} is not prime")]
    NotPrime(LevelPattern),
    #[error("prime {0} listed twice")]
    DuplicatePrime(LevelPattern),
    #[error("primes meet in {0}, not in 0")]
    NontrivialMeet(LevelPattern),
    #[error("element does not belong to this family: {0}")]
    Foreign(String),
    #[error("index ({0}, {1}) needs {2} to contain its prime")]
    NotAbove(usize, u64, LevelPattern),
    #[error("family of {0} primes is too large for subset enumeration")]
    TooManyPrimes(usize),
    #[error(transparent)]
    Group(#[from] LGroupError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// `(position of the prime in the family, copy number)`.
pub type Index = (usize, u64);

/// A finite or cofinite subset of `𝒫 × ℕ`, per prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CofiniteIndexSet {
    defaults: Vec<bool>,
    flips: BTreeSet<Index>,
}

impl CofiniteIndexSet {
    pub fn empty(primes: usize) -> Self {
        CofiniteIndexSet { defaults: vec![false; primes], flips: BTreeSet::new() }
    }

    pub fn full(primes: usize) -> Self {
        CofiniteIndexSet { defaults: vec![true; primes], flips: BTreeSet::new() }
    }

    /// Builds the set from per-prime defaults and explicit memberships.
    pub fn from_parts(defaults: Vec<bool>, members: impl IntoIterator<Item = (Index, bool)>) -> Self {
        let flips = members.into_iter().filter(|((k, _), m)| *m != defaults[*k]).map(|(i, _)| i).collect();
        CofiniteIndexSet { defaults, flips }
    }

    /// Whether `{P} × ℕ` is contained up to finitely many indices.
    pub fn cofinite_at(&self, prime: usize) -> bool {
        self.defaults[prime]
    }

    /// Indices whose membership differs from the cofinite default.
    pub fn exceptions(&self) -> &BTreeSet<Index> {
        &self.flips
    }

    pub fn contains(&self, i: Index) -> bool {
        self.defaults[i.0] != self.flips.contains(&i)
    }

    pub fn is_empty(&self) -> bool {
        self.defaults.iter().all(|d| !d) && self.flips.is_empty()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(self.defaults.len(), other.defaults.len(), "index sets over different families");
        let defaults: Vec<bool> = self.defaults.iter().zip(&other.defaults).map(|(&a, &b)| op(a, b)).collect();
        let members = self.flips.union(&other.flips).map(|&i| (i, op(self.contains(i), other.contains(i))));
        Self::from_parts(defaults, members.collect::<Vec<_>>())
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Display for CofiniteIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cof: Vec<String> = (0..self.defaults.len()).filter(|&k| self.defaults[k]).map(|k| k.to_string()).collect();
        let fl: Vec<String> = self.flips.iter().map(|(k, n)| format!("({k},{n})")).collect();
        write!(f, "cofinite[{}] toggled[{}]", cof.join(","), fl.join(","))
    }
}

/// An element `g + b` of `G+B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GbElement {
    global: AVec,
    exceptions: BTreeMap<Index, AVec>,
}

impl GbElement {
    pub fn global(&self) -> &AVec {
        &self.global
    }

    /// Values on the indices where the element differs from its global part.
    pub fn exceptions(&self) -> &BTreeMap<Index, AVec> {
        &self.exceptions
    }
}

impl fmt::Display for GbElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exceptions.iter().map(|((k, n), v)| format!("({k},{n})->{v}")).collect();
        write!(f, "{} + {{{}}}", self.global, parts.join(", "))
    }
}

/// `𝒫` together with its quotient maps.
#[derive(Debug, Clone)]
pub struct PrimeFamily {
    frame: Frame,
    primes: Vec<SubgroupId>,
    quotients: Vec<CoordinateMap>,
}

/// Checks that `primes` are distinct primes meeting in `0`.
pub fn validate_family(frame: &Frame, primes: &[SubgroupId]) -> Result<PrimeFamily, GbError> {
    let mut seen = BTreeSet::new();
    for &p in primes {
        if !frame.is_prime(p) {
            return Err(GbError::NotPrime(frame.levels(p).clone()));
        }
        if !seen.insert(p) {
            return Err(GbError::DuplicatePrime(frame.levels(p).clone()));
        }
    }
    let meet = frame.meet_all(primes.iter().copied());
    if meet != frame.bottom() {
        return Err(GbError::NontrivialMeet(frame.levels(meet).clone()));
    }
    let quotients = primes.iter().map(|&p| frame.quotient(p)).collect();
    Ok(PrimeFamily { frame: frame.clone(), primes: primes.to_vec(), quotients })
}

impl PrimeFamily {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn primes(&self) -> &[SubgroupId] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn quotient(&self, k: usize) -> &CoordinateMap {
        &self.quotients[k]
    }

    fn ambient(&self) -> &Ambient {
        self.frame.group().ambient()
    }

    fn q_ambient(&self, k: usize) -> &Ambient {
        self.quotients[k].group.ambient()
    }

    /// `π_P(g)` for the `k`-th prime.
    pub fn project(&self, k: usize, g: &AVec) -> AVec {
        self.quotients[k].apply(g)
    }

    fn check_index(&self, i: Index) -> Result<(), GbError> {
        if i.0 >= self.primes.len() {
            return Err(GbError::Foreign(format!("prime position {} of {}", i.0, self.primes.len())));
        }
        Ok(())
    }

    /// Builds `g + b` from an explicit value table, normalizing away defaults.
    pub fn element(&self, global: AVec, values: impl IntoIterator<Item = (Index, AVec)>) -> Result<GbElement, GbError> {
        self.frame.group().check_member(&global)?;
        let mut exceptions = BTreeMap::new();
        for (i, v) in values {
            self.check_index(i)?;
            if !self.quotients[i.0].group.contains(&v) {
                return Err(GbError::Foreign(format!("{v} is not in the quotient at prime {}", i.0)));
            }
            if v != self.project(i.0, &global) {
                exceptions.insert(i, v);
            }
        }
        Ok(GbElement { global, exceptions })
    }

    pub fn global(&self, g: &AVec) -> Result<GbElement, GbError> {
        self.element(g.clone(), [])
    }

    pub fn zero(&self) -> GbElement {
        GbElement { global: AVec::zeros(self.ambient().total_dim()), exceptions: BTreeMap::new() }
    }

    /// `g_i`: the value `π_{P_i}(g)` at `i` and zero elsewhere.
    pub fn generator(&self, g: &AVec, i: Index) -> Result<GbElement, GbError> {
        self.frame.group().check_member(g)?;
        self.check_index(i)?;
        self.element(AVec::zeros(self.ambient().total_dim()), [(i, self.project(i.0, g))])
    }

    fn check(&self, f: &GbElement) -> Result<(), GbError> {
        self.frame.group().check_member(&f.global)?;
        for (&i, v) in &f.exceptions {
            self.check_index(i)?;
            if v.len() != self.q_ambient(i.0).total_dim() {
                return Err(GbError::Foreign(format!("value {v} at ({}, {})", i.0, i.1)));
            }
        }
        Ok(())
    }

    /// `f(i)`.
    pub fn value_at(&self, f: &GbElement, i: Index) -> AVec {
        f.exceptions.get(&i).cloned().unwrap_or_else(|| self.project(i.0, &f.global))
    }

    fn combine(
        &self,
        f: &GbElement,
        h: &GbElement,
        op: impl Fn(&Ambient, &AVec, &AVec) -> AVec,
    ) -> Result<GbElement, GbError> {
        self.check(f)?;
        self.check(h)?;
        let global = op(self.ambient(), &f.global, &h.global);
        let keys: BTreeSet<Index> = f.exceptions.keys().chain(h.exceptions.keys()).copied().collect();
        let values = keys.into_iter().map(|i| {
            let v = op(self.q_ambient(i.0), &self.value_at(f, i), &self.value_at(h, i));
            (i, v)
        });
        let values: Vec<_> = values.collect();
        Ok(GbElement {
            exceptions: values.into_iter().filter(|(i, v)| *v != self.project(i.0, &global)).collect(),
            global,
        })
    }

    pub fn add(&self, f: &GbElement, h: &GbElement) -> Result<GbElement, GbError> {
        self.combine(f, h, |a, x, y| a.add(x, y).expect("shapes checked"))
    }

    pub fn sub(&self, f: &GbElement, h: &GbElement) -> Result<GbElement, GbError> {
        self.combine(f, h, |a, x, y| a.sub(x, y).expect("shapes checked"))
    }

    pub fn join(&self, f: &GbElement, h: &GbElement) -> Result<GbElement, GbError> {
        self.combine(f, h, |a, x, y| a.join(x, y).expect("shapes checked"))
    }

    pub fn meet(&self, f: &GbElement, h: &GbElement) -> Result<GbElement, GbError> {
        self.combine(f, h, |a, x, y| a.meet(x, y).expect("shapes checked"))
    }

    pub fn neg(&self, f: &GbElement) -> Result<GbElement, GbError> {
        self.sub(&self.zero(), f)
    }

    pub fn abs(&self, f: &GbElement) -> Result<GbElement, GbError> {
        self.join(f, &self.neg(f)?)
    }

    pub fn scale(&self, f: &GbElement, n: i64) -> Result<GbElement, GbError> {
        self.check(f)?;
        let n = BigInt::from(n);
        let global = self.ambient().scale(&f.global, &n).expect("checked");
        let exceptions = f
            .exceptions
            .iter()
            .map(|(&i, v)| (i, self.q_ambient(i.0).scale(v, &n).expect("checked")))
            .filter(|(i, v)| *v != self.project(i.0, &global))
            .collect();
        Ok(GbElement { global, exceptions })
    }

    pub fn is_zero(&self, f: &GbElement) -> bool {
        f.global.is_zero() && f.exceptions.is_empty()
    }

    /// `f ≥ 0`: every value, default or exceptional, is nonnegative.
    pub fn is_nonneg(&self, f: &GbElement) -> Result<bool, GbError> {
        self.check(f)?;
        let defaults = (0..self.len()).all(|k| self.q_ambient(k).is_nonneg(&self.project(k, &f.global)));
        Ok(defaults && f.exceptions.iter().all(|(i, v)| self.q_ambient(i.0).is_nonneg(v)))
    }

    /// The least `n ≤ bound` with `|h| ≤ n|f|`.
    pub fn domination(&self, h: &GbElement, f: &GbElement, bound: u64) -> Result<Option<u64>, GbError> {
        let (ah, af) = (self.abs(h)?, self.abs(f)?);
        let mut multiple = self.zero();
        for n in 1..=bound {
            multiple = self.add(&multiple, &af)?;
            if self.is_nonneg(&self.sub(&multiple, &ah)?)? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// `𝒞(f) = {i : f(i) ≠ 0}`.
    pub fn cozero_pattern(&self, f: &GbElement) -> Result<CofiniteIndexSet, GbError> {
        self.check(f)?;
        let defaults = (0..self.len()).map(|k| !self.project(k, &f.global).is_zero()).collect();
        let members: Vec<_> = f.exceptions.iter().map(|(&i, v)| (i, !v.is_zero())).collect();
        Ok(CofiniteIndexSet::from_parts(defaults, members))
    }

    /// `|f| ∧ |h| = 0`, decided on cozero sets.
    pub fn disjoint(&self, f: &GbElement, h: &GbElement) -> Result<bool, GbError> {
        Ok(self.cozero_pattern(f)?.intersection(&self.cozero_pattern(h)?).is_empty())
    }

    /// `h ∈ f^⊥⊥`, decided on cozero sets.
    pub fn in_double_polar(&self, h: &GbElement, f: &GbElement) -> Result<bool, GbError> {
        Ok(self.cozero_pattern(h)?.is_subset(&self.cozero_pattern(f)?))
    }

    /// `f ∈ Q + B`: membership is decided by the unique global part.
    pub fn in_p_plus_b(&self, f: &GbElement, q: SubgroupId) -> Result<bool, GbError> {
        self.check(f)?;
        Ok(self.frame.contains(q, &f.global))
    }

    /// `f ∈ Q̂_i`, i.e. `f(i) ∈ Q/P_i`, for a convex `Q ⊇ P_i`.
    pub fn in_q_hat(&self, f: &GbElement, q: SubgroupId, i: Index) -> Result<bool, GbError> {
        self.check(f)?;
        self.check_index(i)?;
        if !self.frame.le(self.primes[i.0], q) {
            return Err(GbError::NotAbove(i.0, i.1, self.frame.levels(q).clone()));
        }
        let lifted = self.quotients[i.0].lift(&self.value_at(f, i));
        Ok(self.ambient().levels(&lifted.0).le(self.frame.levels(q)))
    }

    /// `f ∈ M_i`, i.e. `f(i) = 0`.
    pub fn in_m(&self, f: &GbElement, i: Index) -> Result<bool, GbError> {
        self.check_index(i)?;
        self.in_q_hat(f, self.primes[i.0], i)
    }

    /// `V_𝒫(g)`: positions of the primes containing `g`.
    pub fn v_p(&self, g: &AVec) -> Result<Vec<usize>, GbError> {
        self.frame.group().check_member(g)?;
        Ok((0..self.len()).filter(|&k| self.frame.contains(self.primes[k], g)).collect())
    }

    fn v_p_pattern(&self, p: &LevelPattern) -> Vec<usize> {
        (0..self.len()).filter(|&k| p.le(self.frame.levels(self.primes[k]))).collect()
    }

    fn check_prime(&self, q: SubgroupId) -> Result<(), GbError> {
        if self.frame.is_prime(q) {
            Ok(())
        } else {
            Err(GbError::NotPrime(self.frame.levels(q).clone()))
        }
    }

    /// `Q` is a 𝒫-element, checked over pairs of realizable level patterns.
    pub fn is_p_element(&self, q: SubgroupId) -> Result<bool, GbError> {
        self.check_prime(q)?;
        let mq = self.frame.levels(q);
        let (inside, outside): (Vec<&LevelPattern>, Vec<&LevelPattern>) =
            self.frame.witnesses().keys().partition(|&p| p.le(mq));
        for h in &inside {
            let vh = self.v_p_pattern(h);
            for g in &outside {
                let vg = self.v_p_pattern(g);
                if vh.iter().all(|k| vg.contains(k)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `⋂ V_𝒫(q) ⊆ Q` for all `q ∈ Q`, over the subsets of `𝒫` realized as some `V_𝒫(q)`.
    pub fn intersection_condition(&self, q: SubgroupId) -> Result<bool, GbError> {
        self.check_prime(q)?;
        let n = self.len();
        if n > MAX_SUBSET_PRIMES {
            return Err(GbError::TooManyPrimes(n));
        }
        let f = &self.frame;
        for mask in 0u32..(1u32 << n) {
            let chosen: Vec<SubgroupId> = (0..n).filter(|k| mask >> k & 1 == 1).map(|k| self.primes[k]).collect();
            let meet_s = f.meet_all(chosen.iter().copied());
            let region = f.meet(q, meet_s);
            let excluded: Vec<IntLattice> = (0..n)
                .filter(|k| mask >> k & 1 == 0)
                .map(|k| f.lattice(f.meet(region, self.primes[k])).clone())
                .collect();
            let realized = f.lattice(region).escapes_sections(&excluded).expect("sections of the region");
            if realized.is_some() && !f.le(meet_s, q) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Q` lies in the patch closure of `𝒫`.
    pub fn patch_condition(&self, q: SubgroupId) -> Result<bool, GbError> {
        self.check_prime(q)?;
        Ok(spectra::patch_closure_membership(&self.frame, q, &self.primes)?)
    }

    /// `Q + B` is a d-subgroup of `G+B`.
    ///
    /// For `f = q + b ∈ Q+B` and `k = g + b' ∈ f^⊥⊥` the cofinite parts give
    /// `g ∈ q^⊥⊥` and `k ∈ Q+B` iff `g ∈ Q`, so global elements suffice; they
    /// are ranged over one witness per realizable level pattern.
    pub fn prime_plus_b_is_d(&self, q: SubgroupId) -> Result<bool, GbError> {
        self.check_prime(q)?;
        let ws = self.frame.witnesses();
        for qw in ws.values().filter(|w| self.frame.contains(q, w)) {
            let f = self.global(qw)?;
            for gw in ws.values() {
                let k = self.global(gw)?;
                if self.in_double_polar(&k, &f)? && !self.in_p_plus_b(&k, q)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every minimal prime lies in the patch closure of `𝒫`.
    pub fn min_in_patch_closure_check(&self) -> bool {
        self.frame
            .minimal_primes()
            .into_iter()
            .all(|m| spectra::patch_closure_membership(&self.frame, m, &self.primes).expect("primes"))
    }

    /// (M) for `G+B`, with an explicit failure witness.
    pub fn martinez_witness(&self) -> Option<GbWitness> {
        let f = &self.frame;
        let max = f.max_convex();
        for (k, &p) in self.primes.iter().enumerate() {
            if max.contains(&p) {
                continue;
            }
            let q = f.spec().into_iter().find(|&q| q != p && f.le(p, q)).expect("a prime strictly above");
            let g = f.element_between(q, p).expect("Q strictly contains P");
            let h = f.element_between(f.top(), q).expect("Q is proper");
            let b = self.generator(&g, (k, 1)).expect("g in G");
            let c = self.generator(&h, (k, 1)).expect("h in G");
            return Some(GbWitness { kind: WitnessKind::NonMaximal { prime: k, above: q }, f: b, h: c });
        }
        for q in f.spec() {
            if let Some((a, b)) = spectra::patch_separation(f, q, &self.primes).expect("primes") {
                let g = f.is_principal(a).expect("principal");
                let qv = f.is_principal(b).expect("principal");
                let fe = self.global(&qv).expect("in G");
                let he = self.global(&g).expect("in G");
                return Some(GbWitness { kind: WitnessKind::NotPatchDense { prime: q }, f: fe, h: he });
            }
        }
        None
    }

    pub fn is_martinez(&self) -> bool {
        self.martinez_witness().is_none()
    }

    /// (Y) for `G+B`: `G` is Yosida and `𝒫` is a patch dense subset of `Max(G)`.
    pub fn is_yosida(&self) -> bool {
        let f = &self.frame;
        let max = f.max_convex();
        deciders::is_yosida(f)
            && self.primes.iter().all(|p| max.contains(p))
            && max.iter().all(|&m| spectra::patch_closure_membership(f, m, &self.primes).expect("primes"))
    }

    /// A uniformly drawn element of `G` with small coefficients.
    fn random_in(&self, lattice: &IntLattice, rng: &mut SplitMix64, coeff: u64) -> AVec {
        let mut v = AVec::zeros(lattice.dim());
        for b in lattice.basis() {
            let c = BigInt::from((rng.next_u64() % (2 * coeff + 1)) as i64 - coeff as i64);
            for (x, y) in v.0.iter_mut().zip(b) {
                *x += &c * y;
            }
        }
        v
    }

    /// A random element with up to three exceptions among copies `1..=4`.
    pub fn random_element(&self, rng: &mut SplitMix64, coeff: u64) -> GbElement {
        let global = self.random_in(self.frame.group().lattice(), rng, coeff);
        if self.is_empty() {
            return self.global(&global).expect("in G");
        }
        let count = rng.next_u64() % 4;
        let mut values = Vec::new();
        for _ in 0..count {
            let k = (rng.next_u64() % self.len() as u64) as usize;
            let n = 1 + rng.next_u64() % 4;
            values.push(((k, n), self.random_in(self.quotients[k].group.lattice(), rng, coeff)));
        }
        self.element(global, values).expect("values in quotients")
    }

    /// A random element of `f^⊥⊥`.
    pub fn random_in_double_polar(&self, f: &GbElement, rng: &mut SplitMix64, coeff: u64) -> GbElement {
        let fr = &self.frame;
        let containing = (0..self.len()).filter(|&k| fr.contains(self.primes[k], &f.global)).map(|k| self.primes[k]);
        let room = fr.meet_all(containing);
        let global = self.random_in(fr.lattice(room), rng, coeff);
        let mut keys: BTreeSet<Index> = f.exceptions.keys().copied().collect();
        if !self.is_empty() {
            for _ in 0..2 {
                keys.insert(((rng.next_u64() % self.len() as u64) as usize, 1 + rng.next_u64() % 4));
            }
        }
        let values: Vec<(Index, AVec)> = keys
            .into_iter()
            .map(|i| {
                let v = if self.value_at(f, i).is_zero() {
                    AVec::zeros(self.q_ambient(i.0).total_dim())
                } else {
                    self.random_in(self.quotients[i.0].group.lattice(), rng, coeff)
                };
                (i, v)
            })
            .collect();
        self.element(global, values).expect("values in quotients")
    }

    /// Samples pairs `h ∈ f^⊥⊥` and searches `|h| ≤ n|f|` up to `bound`.
    ///
    /// When (M) fails for `G+B` the emitted witness is confirmed instead.
    pub fn sample_martinez_check(&self, samples: usize, bound: u64, seed: u64) -> Result<SampleReport, GbError> {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut report = SampleReport { martinez: self.is_martinez(), ..SampleReport::default() };
        if let Some(w) = self.martinez_witness() {
            let inside = self.in_double_polar(&w.h, &w.f)?;
            report.witness_confirmed = Some(inside && self.domination(&w.h, &w.f, bound)?.is_none());
            return Ok(report);
        }
        for _ in 0..samples {
            let f = self.random_element(&mut rng, 3);
            let h = self.random_in_double_polar(&f, &mut rng, 3);
            if !self.in_double_polar(&h, &f)? {
                report.outside += 1;
                continue;
            }
            match self.domination(&h, &f, bound)? {
                Some(_) => report.dominated += 1,
                None => report.inconclusive += 1,
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// A prime of the family lies strictly below the prime `above`.
    NonMaximal { prime: usize, above: SubgroupId },
    /// A prime of `G` outside the patch closure of the family.
    NotPatchDense { prime: SubgroupId },
}

/// `h ∈ f^⊥⊥` that no multiple of `|f|` dominates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbWitness {
    pub kind: WitnessKind,
    pub f: GbElement,
    pub h: GbElement,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SampleReport {
    pub martinez: bool,
    pub dominated: usize,
    pub inconclusive: usize,
    /// Sampled `h` that fell outside `f^⊥⊥`; nonzero means a bug in sampling.
    pub outside: usize,
    pub witness_confirmed: Option<bool>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.outside == 0 && self.witness_confirmed != Some(false)
    }
}

/// Whether the maximal subgroups among the values of `u` meet in `0`.
pub fn gb_in_w(frame: &Frame, u: &AVec) -> Result<bool, GbError> {
    if !frame.is_weak_unit(u)? {
        return Err(GbError::Foreign(format!("{u} is not a weak unit")));
    }
    let max = frame.max_convex();
    let yg = frame.values(u)?;
    Ok(frame.meet_all(yg.into_iter().filter(|v| max.contains(v))) == frame.bottom())
}
