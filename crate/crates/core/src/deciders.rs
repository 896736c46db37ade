//! Deciders for the Martínez property (M), the Yosida property (Y) and
//! their neighbours, plus cross-checks between equivalent formulations.
//!
//! Each numbered condition is evaluated by its own route so that the
//! equivalence harnesses compare genuinely different computations.

use std::fmt;

use thiserror::Error;

use crate::ambient::AVec;
use crate::frame::{Frame, FrameError, SubgroupId};
use crate::lgroup::{LGroup, LGroupError};
use crate::spectra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    Group(#[from] LGroupError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("{0} is not a weak unit")]
    NotWeakUnit(AVec),
    #[error("the group is not archimedean")]
    NotArchimedean,
}

/// `h ∈ g^⊥⊥ ∖ G(g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub g: AVec,
    pub h: AVec,
}

/// Conditions of the (M) characterization that are implemented separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MainCondition {
    /// Every prime is a d-subgroup.
    PrimesAreD = 2,
    /// `G(g) = g^⊥⊥` for all `g`.
    PrincipalIsPolar = 4,
    /// Wallman disjunction on principal subgroups.
    Wallman = 6,
    /// `Min(G)` is patch dense.
    MinPatchDense = 9,
    /// The `U(g)` form a patch π-base.
    PiBase = 10,
    /// Distinct compact opens have distinct closures.
    DistinctClosures = 11,
    /// Principal subgroups are meets of minimal primes.
    MinIntersection = 12,
}

impl MainCondition {
    pub const ALL: [MainCondition; 7] = [
        MainCondition::PrimesAreD,
        MainCondition::PrincipalIsPolar,
        MainCondition::Wallman,
        MainCondition::MinPatchDense,
        MainCondition::PiBase,
        MainCondition::DistinctClosures,
        MainCondition::MinIntersection,
    ];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.number() == n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YosidaCondition {
    /// Principal subgroups are meets of maximal convex subgroups.
    MaxIntersection = 1,
    /// Some `ℳ ⊆ Max(G)` with trivial meet is patch dense.
    PatchDenseMax = 4,
    /// Every `G/G(a)` has emc.
    QuotientsHaveEmc = 6,
}

impl YosidaCondition {
    pub const ALL: [YosidaCondition; 3] =
        [YosidaCondition::MaxIntersection, YosidaCondition::PatchDenseMax, YosidaCondition::QuotientsHaveEmc];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.number() == n)
    }
}

/// Values of several conditions that ought to coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub name: &'static str,
    pub values: Vec<(u8, bool)>,
}

impl Equivalence {
    pub fn consistent(&self) -> bool {
        self.values.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn value(&self) -> Option<bool> {
        self.consistent().then(|| self.values.first().is_none_or(|v| v.1))
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(n, v)| format!("({n})={v}")).collect();
        write!(f, "{}: {}", self.name, parts.join(" "))
    }
}

/// Outcome of one theorem check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name, passed, detail: detail.into() }
    }
}

fn abs(frame: &Frame, v: &AVec) -> AVec {
    frame.group().ambient().abs(v).expect("element of G")
}

fn sub_frame(frame: &Frame, group: LGroup) -> Result<Frame, FrameError> {
    Frame::with_cap(group, frame.cap())
}

/// (M), with a witness `h ∈ g^⊥⊥ ∖ G(g)` on failure.
pub fn martinez_witness(frame: &Frame) -> Option<Witness> {
    for (p, g) in frame.witnesses() {
        let principal = frame.cut(p);
        let dp = frame.double_polar_of_pattern(p);
        if principal != dp {
            let h = frame.element_between(dp, principal).expect("strictly larger subgroup");
            return Some(Witness { g: g.clone(), h });
        }
    }
    None
}

pub fn is_martinez(frame: &Frame) -> bool {
    martinez_witness(frame).is_none()
}

fn wallman(frame: &Frame) -> bool {
    let l = frame.principals();
    let zero = frame.bottom();
    l.iter().all(|&a| {
        l.iter()
            .filter(|&&b| b != a && frame.le(a, b))
            .all(|&b| l.iter().any(|&c| frame.meet(a, c) == zero && frame.meet(b, c) != zero))
    })
}

pub fn is_martinez_via(frame: &Frame, condition: MainCondition) -> bool {
    match condition {
        MainCondition::PrimesAreD => frame.spec().into_iter().all(|p| frame.is_d_subgroup(p)),
        MainCondition::PrincipalIsPolar => is_martinez(frame),
        MainCondition::Wallman => wallman(frame),
        MainCondition::MinPatchDense => spectra::min_patch_dense(frame),
        MainCondition::PiBase => spectra::principal_pi_base(frame),
        MainCondition::DistinctClosures => spectra::compact_open_distinct_closures(frame),
        MainCondition::MinIntersection => spectra::principal_is_min_intersection(frame),
    }
}

/// A principal `G(a)` and `b` lying in every maximal subgroup above it but not in `G(a)`.
pub fn yosida_witness(frame: &Frame) -> Option<Witness> {
    let max = frame.max_convex();
    for (p, a) in frame.witnesses() {
        let principal = frame.cut(p);
        let above = frame.meet_all(max.iter().copied().filter(|&m| frame.le(principal, m)));
        if above != principal {
            let b = frame.element_between(above, principal).expect("strictly larger subgroup");
            return Some(Witness { g: a.clone(), h: b });
        }
    }
    None
}

pub fn is_yosida(frame: &Frame) -> bool {
    yosida_witness(frame).is_none()
}

/// Whether `∩ Max(G) = 0`.
pub fn has_emc(frame: &Frame) -> bool {
    frame.meet_all(frame.max_convex()) == frame.bottom()
}

pub fn emc_witness(frame: &Frame) -> Option<AVec> {
    let m = frame.meet_all(frame.max_convex());
    frame.element_between(m, frame.bottom())
}

pub fn is_yosida_via(frame: &Frame, condition: YosidaCondition) -> Result<bool, FrameError> {
    Ok(match condition {
        YosidaCondition::MaxIntersection => is_yosida(frame),
        YosidaCondition::PatchDenseMax => {
            // Both requirements only get easier as ℳ grows, so ℳ = Max(G) decides.
            let max = frame.max_convex();
            let space = spectra::spec_space(frame, spectra::Topology::Patch);
            let set = space.set_of(&max).expect("maximal subgroups are prime");
            frame.meet_all(max.iter().copied()) == frame.bottom() && space.is_dense(&set)
        }
        YosidaCondition::QuotientsHaveEmc => {
            for p in frame.witnesses().keys() {
                let q = frame.quotient(frame.cut(p));
                if !has_emc(&sub_frame(frame, q.group)?) {
                    return Ok(false);
                }
            }
            true
        }
    })
}

/// An element `g` with `G(g) ⊕ g^⊥ ≠ G`.
pub fn hyperarchimedean_witness(frame: &Frame) -> Option<AVec> {
    let whole = frame.group().lattice();
    frame.witnesses().iter().find_map(|(p, g)| {
        let (a, b) = (frame.cut(p), frame.polar_of_fibers(&p.support()));
        let splits = frame.meet(a, b) == frame.bottom() && &frame.lattice_sum(a, b) == whole;
        (!splits).then(|| g.clone())
    })
}

pub fn is_hyperarchimedean(frame: &Frame) -> bool {
    hyperarchimedean_witness(frame).is_none()
}

/// An element `g` with `g^⊥⊥ ⊕ g^⊥ ≠ G`.
pub fn projectable_witness(frame: &Frame) -> Option<AVec> {
    let whole = frame.group().lattice();
    frame.witnesses().iter().find_map(|(p, g)| {
        let (a, b) = (frame.double_polar_of_pattern(p), frame.polar_of_fibers(&p.support()));
        let splits = frame.meet(a, b) == frame.bottom() && &frame.lattice_sum(a, b) == whole;
        (!splits).then(|| g.clone())
    })
}

pub fn is_projectable(frame: &Frame) -> bool {
    projectable_witness(frame).is_none()
}

/// `Spec_d(G) = Min(G)`.
pub fn is_complemented(frame: &Frame) -> bool {
    let mut d = frame.spec_d();
    let mut m = frame.minimal_primes();
    d.sort();
    m.sort();
    d == m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub martinez: bool,
    pub yosida: bool,
    pub hyperarchimedean: bool,
    pub projectable: bool,
    pub archimedean: bool,
    pub emc: bool,
    pub complemented: bool,
    pub main: Equivalence,
    pub yosida_conditions: Equivalence,
    pub martinez_witness: Option<Witness>,
    pub yosida_witness: Option<Witness>,
    pub archimedean_witness: Option<Witness>,
    pub hyperarchimedean_witness: Option<AVec>,
    pub projectable_witness: Option<AVec>,
    pub emc_witness: Option<AVec>,
}

pub fn property_report(frame: &Frame) -> Result<PropertyReport, FrameError> {
    let archimedean_witness = frame.group().archimedean_witness().map(|(g, h)| Witness { g, h });
    Ok(PropertyReport {
        martinez: is_martinez(frame),
        yosida: is_yosida(frame),
        hyperarchimedean: is_hyperarchimedean(frame),
        projectable: is_projectable(frame),
        archimedean: archimedean_witness.is_none(),
        emc: has_emc(frame),
        complemented: is_complemented(frame),
        main: check_main_theorem(frame),
        yosida_conditions: check_yosida_theorem(frame)?,
        martinez_witness: martinez_witness(frame),
        yosida_witness: yosida_witness(frame),
        archimedean_witness,
        hyperarchimedean_witness: hyperarchimedean_witness(frame),
        projectable_witness: projectable_witness(frame),
        emc_witness: emc_witness(frame),
    })
}

pub fn check_main_theorem(frame: &Frame) -> Equivalence {
    let values = MainCondition::ALL.iter().map(|&c| (c.number(), is_martinez_via(frame, c))).collect();
    Equivalence { name: "martinez", values }
}

pub fn check_yosida_theorem(frame: &Frame) -> Result<Equivalence, FrameError> {
    let mut values = Vec::new();
    for c in YosidaCondition::ALL {
        values.push((c.number(), is_yosida_via(frame, c)?));
    }
    Ok(Equivalence { name: "yosida", values })
}

/// Hyperarchimedean iff projectable and (M).
pub fn check_bigard(frame: &Frame) -> Check {
    let (h, p, m) = (is_hyperarchimedean(frame), is_projectable(frame), is_martinez(frame));
    Check::new("bigard", h == (p && m), format!("hyper={h} projectable={p} martinez={m}"))
}

/// emc and (M) imply (Y).
pub fn check_mart_yos(frame: &Frame) -> Check {
    let (e, m, y) = (has_emc(frame), is_martinez(frame), is_yosida(frame));
    Check::new("mart_yos", !(e && m) || y, format!("emc={e} martinez={m} yosida={y}"))
}

fn pattern_units(frame: &Frame) -> impl Iterator<Item = (&AVec, bool, bool)> {
    frame.witnesses().iter().map(move |(p, w)| {
        let weak = frame.polar_of_fibers(&p.support()) == frame.bottom();
        let strong = frame.cut(p) == frame.top();
        (w, weak, strong)
    })
}

/// The first positive weak unit that is not a strong unit.
pub fn weak_not_strong(frame: &Frame) -> Option<AVec> {
    pattern_units(frame).find(|(_, weak, strong)| *weak && !*strong).map(|(w, _, _)| w.clone())
}

/// In (M) every weak unit is a strong unit.
pub fn check_wu_su(frame: &Frame) -> Check {
    let m = is_martinez(frame);
    match weak_not_strong(frame) {
        Some(u) if m => Check::new("wu_su", false, format!("{u} is a weak but not a strong unit")),
        Some(u) => Check::new("wu_su", true, format!("not (M); {u} is weak but not strong")),
        None => Check::new("wu_su", true, format!("martinez={m}; weak units are strong")),
    }
}

/// (M) and (Y) pass to the direct sum of the two groups.
pub fn check_preservation(a: &Frame, b: &LGroup) -> Result<Check, FrameError> {
    let fb = sub_frame(a, b.clone())?;
    let sum = sub_frame(a, a.group().direct_sum(b))?;
    let (ma, mb, ms) = (is_martinez(a), is_martinez(&fb), is_martinez(&sum));
    let (ya, yb, ys) = (is_yosida(a), is_yosida(&fb), is_yosida(&sum));
    let passed = (!(ma && mb) || ms) && (!(ya && yb) || ys);
    Ok(Check::new("preservation", passed, format!("martinez {ma},{mb} -> {ms}; yosida {ya},{yb} -> {ys}")))
}

/// Which convex subgroups are in (M) as groups in their own right.
pub fn martinez_subgroups(frame: &Frame) -> Result<Vec<bool>, FrameError> {
    frame.ids().map(|h| Ok(is_martinez(&sub_frame(frame, frame.sub_as_lgroup(h).group)?))).collect()
}

/// Joins of convex subgroups in (M) stay in (M).
pub fn check_radical_closure(frame: &Frame) -> Result<Check, FrameError> {
    let m = martinez_subgroups(frame)?;
    for h in frame.ids() {
        for k in frame.ids() {
            if k < h || !m[h.0] || !m[k.0] {
                continue;
            }
            let j = frame.join(h, k);
            if !m[j.0] {
                return Ok(Check::new(
                    "radical_closure",
                    false,
                    format!(
                        "{} and {} in (M) but not their join {}",
                        frame.levels(h),
                        frame.levels(k),
                        frame.levels(j)
                    ),
                ));
            }
        }
    }
    let count = m.iter().filter(|&&b| b).count();
    Ok(Check::new("radical_closure", true, format!("{count} of {} convex subgroups in (M)", m.len())))
}

/// For `G` in (M): `G/G(x)` is in (M), and `G(x) ∨ G(y)` is in (M) when `|x| ∧ |y| = 0`.
pub fn check_quotient_lemma(frame: &Frame, x: &AVec, y: &AVec) -> Result<Check, DecideError> {
    let gx = frame.principal(x)?;
    let gy = frame.principal(y)?;
    if !is_martinez(frame) {
        return Ok(Check::new("quotient_lemma", true, "premise fails: G not in (M)"));
    }
    let quotient_ok = is_martinez(&sub_frame(frame, frame.quotient(gx).group)?);
    let amb = frame.group().ambient();
    let disjoint = amb.meet(&abs(frame, x), &abs(frame, y)).map_err(LGroupError::from)?.is_zero();
    let join_ok = !disjoint || is_martinez(&sub_frame(frame, frame.sub_as_lgroup(frame.join(gx, gy)).group)?);
    Ok(Check::new(
        "quotient_lemma",
        quotient_ok && join_ok,
        format!("quotient in (M)={quotient_ok}; disjoint={disjoint} join in (M)={join_ok}"),
    ))
}

/// For archimedean `G` with weak unit `u`: (M), (Y) with `Max ⊆ Spec_d`, and (Y) with weak units strong.
pub fn check_w_theorem(frame: &Frame, u: &AVec) -> Result<Equivalence, DecideError> {
    if !frame.is_weak_unit(u)? {
        return Err(DecideError::NotWeakUnit(u.clone()));
    }
    if !frame.group().is_archimedean() {
        return Err(DecideError::NotArchimedean);
    }
    let y = is_yosida(frame);
    let max_d = frame.max_convex().into_iter().all(|m| frame.is_d_subgroup(m));
    let units = weak_not_strong(frame).is_none();
    Ok(Equivalence { name: "w_theorem", values: vec![(1, is_martinez(frame)), (3, y && max_d), (4, y && units)] })
}

/// Subgroups listed by their minimal levels, for messages.
pub fn describe(frame: &Frame, ids: &[SubgroupId]) -> String {
    let parts: Vec<String> = ids.iter().map(|&i| frame.levels(i).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::Ambient;

    fn frame(d: &[usize]) -> Frame {
        Frame::new(LGroup::full(Ambient::from_depths(d).unwrap())).unwrap()
    }

    fn diag() -> Frame {
        let amb = Ambient::from_depths(&[1, 1]).unwrap();
        Frame::new(LGroup::generate(amb, &[AVec::from_i64(&[1, 1])], 3).unwrap()).unwrap()
    }

    #[test]
    fn martinez_examples() {
        assert!(is_martinez(&frame(&[1, 1])));
        let lex = frame(&[2]);
        assert_eq!(martinez_witness(&lex), Some(Witness { g: AVec::from_i64(&[0, 1]), h: AVec::from_i64(&[1, 0]) }));
        assert!(is_martinez(&diag()));
    }

    #[test]
    fn martinez_via_examples() {
        let f = frame(&[1, 1]);
        assert!(is_martinez_via(&f, MainCondition::Wallman));
        let lex = frame(&[2]);
        assert!(!is_martinez_via(&lex, MainCondition::PrimesAreD));
        assert!(!is_martinez_via(&lex, MainCondition::MinIntersection));
        for c in MainCondition::ALL {
            assert!(is_martinez_via(&f, c));
            assert!(!is_martinez_via(&lex, c));
        }
    }

    #[test]
    fn yosida_examples() {
        let f = frame(&[1, 1]);
        let lex = frame(&[2]);
        let z = frame(&[1]);
        for c in YosidaCondition::ALL {
            assert!(is_yosida_via(&f, c).unwrap());
            assert!(!is_yosida_via(&lex, c).unwrap());
            assert!(is_yosida_via(&z, c).unwrap());
        }
        assert!(yosida_witness(&lex).is_some());
    }

    #[test]
    fn hyper_projectable_emc_examples() {
        let f = frame(&[1, 1]);
        assert!(is_hyperarchimedean(&f) && is_projectable(&f) && has_emc(&f));
        let lex = frame(&[2]);
        assert!(!is_hyperarchimedean(&lex));
        assert!(is_projectable(&lex));
        assert!(!has_emc(&lex));
        assert_eq!(emc_witness(&lex).map(|v| v.len()), Some(2));
        assert!(is_hyperarchimedean(&diag()));
        assert!(is_complemented(&f));
        assert!(is_complemented(&lex));
    }

    #[test]
    fn theorem_harness_examples() {
        assert_eq!(check_main_theorem(&frame(&[1, 1])).value(), Some(true));
        assert_eq!(check_main_theorem(&frame(&[2])).value(), Some(false));
        let ext = Frame::new(diag().group().lex_extension()).unwrap();
        assert!(check_main_theorem(&ext).consistent());
        assert!(check_bigard(&frame(&[2])).passed);
        let z = frame(&[1]);
        assert!(check_preservation(&z, z.group()).unwrap().passed);
        let f = frame(&[1, 1]);
        let x = AVec::from_i64(&[1, 0]);
        assert!(check_quotient_lemma(&f, &x, &AVec::from_i64(&[0, 1])).unwrap().passed);
        assert!(check_mart_yos(&f).passed);
        assert!(check_wu_su(&frame(&[2])).passed);
        assert!(check_radical_closure(&frame(&[2, 1])).unwrap().passed);
    }

    #[test]
    fn w_theorem_examples() {
        let eq = check_w_theorem(&frame(&[1, 1]), &AVec::from_i64(&[1, 1])).unwrap();
        assert_eq!(eq.value(), Some(true));
        let eq = check_w_theorem(&frame(&[1, 1, 1]), &AVec::from_i64(&[1, 1, 1])).unwrap();
        assert_eq!(eq.value(), Some(true));
        let eq = check_w_theorem(&frame(&[1]), &AVec::from_i64(&[1])).unwrap();
        assert_eq!(eq.value(), Some(true));
        assert!(matches!(check_w_theorem(&frame(&[1, 1]), &AVec::from_i64(&[1, 0])), Err(DecideError::NotWeakUnit(_))));
        assert!(matches!(check_w_theorem(&frame(&[2]), &AVec::from_i64(&[1, 0])), Err(DecideError::NotArchimedean)));
    }

    #[test]
    fn totally_ordered_cases() {
        for depth in 1..=4 {
            let f = frame(&[depth]);
            let arch = f.group().is_archimedean();
            assert_eq!(arch, depth == 1);
            assert_eq!(is_martinez(&f), arch);
            assert_eq!(is_yosida(&f), arch);
        }
    }

    #[test]
    fn lex_extension_breaks_martinez() {
        let g = frame(&[1, 1]);
        let ext = Frame::new(g.group().lex_extension()).unwrap();
        let w = martinez_witness(&ext).expect("lex extension of a unital group");
        let dp = ext.double_polar(&w.g).unwrap();
        assert!(ext.contains(dp, &w.h));
        assert!(!ext.contains(ext.principal(&w.g).unwrap(), &w.h));
    }
}
