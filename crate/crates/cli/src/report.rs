//! Analysis reports for a single instance.

use ellgroup::deciders::{self, Check, Equivalence, Witness};
use ellgroup::gb::{self, PrimeFamily, WitnessKind};
use ellgroup::spectra::{self, OpenLabel, Topology};
use ellgroup::{AVec, ClosureStatus, Frame, FrameError, Int, LGroup, SubgroupId};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use crate::format::{FormatError, Instance};

/// Integers that fit in `i64` are JSON numbers, larger ones are strings.
pub fn json_int(v: &Int) -> Value {
    match v.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(v.to_string()),
    }
}

pub fn json_vec(v: &[Int]) -> Value {
    Value::Array(v.iter().map(json_int).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceEcho {
    pub name: String,
    pub ambient: Vec<usize>,
    pub dimension: usize,
    pub rank: usize,
    pub closure_status: String,
    pub basis: Vec<Value>,
    pub unit: Option<Value>,
    pub primes: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Properties {
    pub martinez: bool,
    pub yosida: bool,
    pub hyperarchimedean: bool,
    pub projectable: bool,
    pub archimedean: bool,
    pub emc: bool,
    pub complemented: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConditionValue {
    pub condition: u8,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conditions {
    pub martinez: Vec<ConditionValue>,
    pub yosida: Vec<ConditionValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairJson {
    pub g: Value,
    pub h: Value,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Witnesses {
    pub martinez: Option<PairJson>,
    pub yosida: Option<PairJson>,
    pub archimedean: Option<PairJson>,
    pub hyperarchimedean: Option<Value>,
    pub projectable: Option<Value>,
    pub emc: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupJson {
    pub id: usize,
    pub levels: Vec<usize>,
    pub basis: Vec<Value>,
    pub prime: bool,
    pub minimal_prime: bool,
    pub maximal: bool,
    pub d_subgroup: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameSummary {
    pub elements: usize,
    pub subgroups: Vec<SubgroupJson>,
    pub hasse_edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OpenJson {
    pub label: String,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumJson {
    pub topology: String,
    pub points: Vec<usize>,
    pub opens: Vec<OpenJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<Check> for CheckJson {
    fn from(c: Check) -> Self {
        CheckJson { name: c.name.to_string(), passed: c.passed, detail: c.detail }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimeJson {
    pub levels: Vec<usize>,
    pub p_element: bool,
    pub intersection_condition: bool,
    pub patch_condition: bool,
    pub prime_plus_b_is_d: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GbWitnessJson {
    pub kind: String,
    pub f: String,
    pub h: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleJson {
    pub samples: usize,
    pub bound: u64,
    pub dominated: usize,
    pub inconclusive: usize,
    pub witness_confirmed: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GbJson {
    pub primes: Vec<Vec<usize>>,
    pub martinez: bool,
    pub yosida: bool,
    pub witness: Option<GbWitnessJson>,
    pub per_prime: Vec<PrimeJson>,
    pub min_in_patch_closure: bool,
    pub sample: SampleJson,
    pub in_w: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub instance: InstanceEcho,
    pub properties: Properties,
    pub conditions: Conditions,
    pub witnesses: Witnesses,
    pub frame: FrameSummary,
    pub spectra: Vec<SpectrumJson>,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gb: Option<GbJson>,
    pub defects: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub cap: usize,
    pub topologies: &'static [Topology],
    pub samples: usize,
    pub bound: u64,
    pub seed: u64,
}

pub const ALL_TOPOLOGIES: &[Topology] = &[Topology::HullKernel, Topology::Inverse, Topology::Patch];

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            cap: ellgroup::DEFAULT_FRAME_CAP,
            topologies: ALL_TOPOLOGIES,
            samples: 200,
            bound: 64,
            seed: 0,
        }
    }
}

pub fn topology_name(t: Topology) -> &'static str {
    match t {
        Topology::HullKernel => "hk",
        Topology::Inverse => "inv",
        Topology::Patch => "patch",
    }
}

fn pair(w: &Witness) -> PairJson {
    PairJson { g: json_vec(&w.g.0), h: json_vec(&w.h.0) }
}

fn conditions(e: &Equivalence) -> Vec<ConditionValue> {
    e.values.iter().map(|&(condition, holds)| ConditionValue { condition, holds }).collect()
}

pub fn echo(inst: &Instance) -> InstanceEcho {
    let g = &inst.group;
    InstanceEcho {
        name: inst.name.clone(),
        ambient: g.ambient().depths(),
        dimension: g.ambient().total_dim(),
        rank: g.lattice().rank(),
        closure_status: match g.closure_status() {
            ClosureStatus::ClosedByConstruction => "closed_by_construction".into(),
            ClosureStatus::Certified { box_checked } => format!("certified(box {box_checked})"),
        },
        basis: g.lattice().basis().iter().map(|b| json_vec(b)).collect(),
        unit: inst.unit.as_ref().map(|u| json_vec(&u.0)),
        primes: inst.primes.as_ref().map(|ps| ps.iter().map(|p| p.0.clone()).collect()),
    }
}

pub fn frame_summary(frame: &Frame) -> FrameSummary {
    let spec = frame.spec();
    let min = frame.minimal_primes();
    let max = frame.max_convex();
    let subgroups = frame
        .ids()
        .map(|h| SubgroupJson {
            id: h.0,
            levels: frame.levels(h).0.clone(),
            basis: frame.lattice(h).basis().iter().map(|b| json_vec(b)).collect(),
            prime: spec.contains(&h),
            minimal_prime: min.contains(&h),
            maximal: max.contains(&h),
            d_subgroup: frame.is_d_subgroup(h),
        })
        .collect();
    let hasse_edges = frame.hasse_edges().into_iter().map(|(a, b)| [a.0, b.0]).collect();
    FrameSummary { elements: frame.len(), subgroups, hasse_edges }
}

fn principal_label(frame: &Frame, a: SubgroupId) -> String {
    frame.is_principal(a).map_or_else(|| format!("#{}", a.0), |w| w.to_string())
}

pub fn spectrum_summaries(frame: &Frame, topologies: &[Topology]) -> Vec<SpectrumJson> {
    topologies
        .iter()
        .map(|&t| {
            let s = spectra::spec_space(frame, t);
            let mut opens: Vec<OpenJson> = s
                .basic_opens()
                .iter()
                .map(|o| OpenJson {
                    label: match o.label {
                        OpenLabel::U(a) => format!("U({})", principal_label(frame, a)),
                        OpenLabel::V(a) => format!("V({})", principal_label(frame, a)),
                        OpenLabel::UV(a, b) => {
                            format!("U({})&V({})", principal_label(frame, a), principal_label(frame, b))
                        }
                    },
                    members: s.ids_of(&o.members).into_iter().map(|p| p.0).collect(),
                })
                .collect();
            opens.sort_by(|a, b| a.label.cmp(&b.label));
            SpectrumJson { topology: topology_name(t).into(), points: s.points().iter().map(|p| p.0).collect(), opens }
        })
        .collect()
}

fn frame_for(frame: &Frame, g: LGroup) -> Result<Frame, FrameError> {
    Frame::with_cap(g, frame.cap())
}

/// Theorem checks that hold for every instance; a failure is a defect.
pub fn theorem_checks(frame: &Frame, unit: Option<&AVec>) -> Vec<Check> {
    let mut out = Vec::new();
    let main = deciders::check_main_theorem(frame);
    out.push(Check { name: "main_equivalence", passed: main.consistent(), detail: main.to_string() });
    match deciders::check_yosida_theorem(frame) {
        Ok(y) => out.push(Check { name: "yosida_equivalence", passed: y.consistent(), detail: y.to_string() }),
        Err(e) => out.push(skipped("yosida_equivalence", &e)),
    }
    out.push(deciders::check_bigard(frame));
    out.push(deciders::check_mart_yos(frame));
    out.push(deciders::check_wu_su(frame));
    if let Some(w) = deciders::martinez_witness(frame) {
        let ok = frame.double_polar(&w.g).is_ok_and(|dp| frame.contains(dp, &w.h))
            && frame.principal(&w.g).is_ok_and(|p| !frame.contains(p, &w.h));
        out.push(Check { name: "martinez_witness", passed: ok, detail: format!("g={} h={}", w.g, w.h) });
    }
    let spec_d = frame.spec_d();
    let max_d = frame.max_d();
    out.push(Check {
        name: "max_d_in_spec_d",
        passed: max_d.iter().all(|m| spec_d.contains(m)),
        detail: format!("Max_d={} Spec_d={}", deciders::describe(frame, &max_d), deciders::describe(frame, &spec_d)),
    });
    let chain = frame.ids().all(|a| frame.ids().all(|b| frame.le(a, b) || frame.le(b, a)));
    if chain {
        let (m, y, a) = (deciders::is_martinez(frame), deciders::is_yosida(frame), frame.group().is_archimedean());
        out.push(Check {
            name: "totally_ordered",
            passed: m == y && y == a,
            detail: format!("martinez={m} yosida={y} archimedean={a}"),
        });
    }
    match deciders::check_radical_closure(frame) {
        Ok(c) => out.push(c),
        Err(e) => out.push(skipped("radical_closure", &e)),
    }
    let ws: Vec<&AVec> = frame.witnesses().values().take(4).collect();
    for x in &ws {
        for y in &ws {
            match deciders::check_quotient_lemma(frame, x, y) {
                Ok(c) if !c.passed => out.push(c),
                Ok(_) => {}
                Err(e) => out.push(Check { name: "quotient_lemma", passed: true, detail: format!("skipped: {e}") }),
            }
        }
    }
    out.push(Check { name: "quotient_lemma", passed: true, detail: format!("{} pairs", ws.len() * ws.len()) });
    match deciders::check_preservation(frame, frame.group()) {
        Ok(c) => out.push(c),
        Err(e) => out.push(skipped("preservation", &e)),
    }
    if deciders::is_martinez(frame) && !frame.group().is_trivial() {
        out.push(match frame_for(frame, frame.group().lex_extension()) {
            Ok(ext) => lex_extension_check(&ext),
            Err(e) => skipped("lex_extension", &e),
        });
    }
    if frame.group().is_archimedean() {
        let u = unit.cloned().or_else(|| frame.weak_unit_exists());
        if let Some(u) = u {
            match deciders::check_w_theorem(frame, &u) {
                Ok(eq) => out.push(Check { name: "w_theorem", passed: eq.consistent(), detail: eq.to_string() }),
                Err(e) => out.push(Check { name: "w_theorem", passed: true, detail: format!("skipped: {e}") }),
            }
        }
    }
    out
}

fn skipped(name: &'static str, e: &dyn std::fmt::Display) -> Check {
    Check { name, passed: true, detail: format!("skipped: {e}") }
}

/// The lex extension of a unital (M) group fails (M) with a verifiable witness.
pub fn lex_extension_check(ext: &Frame) -> Check {
    match deciders::martinez_witness(ext) {
        Some(w) => {
            let ok = ext.double_polar(&w.g).is_ok_and(|dp| ext.contains(dp, &w.h))
                && ext.principal(&w.g).is_ok_and(|p| !ext.contains(p, &w.h));
            Check { name: "lex_extension", passed: ok, detail: format!("g={} h={}", w.g, w.h) }
        }
        None => Check { name: "lex_extension", passed: false, detail: "lex extension satisfies (M)".into() },
    }
}

/// Resolves level vectors to a validated family.
pub fn family_of(frame: &Frame, primes: &[ellgroup::LevelPattern]) -> Result<PrimeFamily, FormatError> {
    let ids: Vec<SubgroupId> = primes.iter().map(|p| frame.cut(p)).collect();
    gb::validate_family(frame, &ids).map_err(|e| FormatError::Build(e.to_string()))
}

/// G+B results, with any theorem violations appended to `defects`.
pub fn gb_section(fam: &PrimeFamily, unit: Option<&AVec>, opts: &AnalyzeOptions, defects: &mut Vec<String>) -> GbJson {
    let frame = fam.frame();
    let mut per_prime = Vec::new();
    for q in frame.spec() {
        let row = PrimeJson {
            levels: frame.levels(q).0.clone(),
            p_element: fam.is_p_element(q).expect("prime"),
            intersection_condition: fam.intersection_condition(q).expect("prime"),
            patch_condition: fam.patch_condition(q).expect("prime"),
            prime_plus_b_is_d: fam.prime_plus_b_is_d(q).expect("prime"),
        };
        let v = [row.p_element, row.intersection_condition, row.patch_condition, row.prime_plus_b_is_d];
        if v.iter().any(|&b| b != v[0]) {
            defects.push(format!("p_element: conditions disagree at prime {}: {v:?}", frame.levels(q)));
        }
        per_prime.push(row);
    }
    let min_ok = fam.min_in_patch_closure_check();
    if !min_ok {
        defects.push("p_element: a minimal prime lies outside the patch closure of the family".into());
    }
    let (m, y) = (fam.is_martinez(), fam.is_yosida());
    if m != y {
        defects.push(format!("gb: martinez={m} but yosida={y}"));
    }
    let witness = fam.martinez_witness().map(|w| GbWitnessJson {
        kind: match w.kind {
            WitnessKind::NonMaximal { prime, .. } => format!("non_maximal({})", frame.levels(fam.primes()[prime])),
            WitnessKind::NotPatchDense { prime } => format!("not_patch_dense({})", frame.levels(prime)),
        },
        f: w.f.to_string(),
        h: w.h.to_string(),
    });
    let sample = fam.sample_martinez_check(opts.samples, opts.bound, opts.seed).expect("family elements");
    if !sample.passed() {
        defects.push(format!("gb: sampled domination check failed: {sample:?}"));
    }
    let in_w = unit.and_then(|u| gb::gb_in_w(frame, u).ok());
    GbJson {
        primes: fam.primes().iter().map(|&p| frame.levels(p).0.clone()).collect(),
        martinez: m,
        yosida: y,
        witness,
        per_prime,
        min_in_patch_closure: min_ok,
        sample: SampleJson {
            samples: opts.samples,
            bound: opts.bound,
            dominated: sample.dominated,
            inconclusive: sample.inconclusive,
            witness_confirmed: sample.witness_confirmed,
        },
        in_w,
    }
}

/// Runs every decider and harness on an instance.
pub fn analyze(inst: &Instance, opts: &AnalyzeOptions) -> Result<Report, FormatError> {
    let frame = Frame::with_cap(inst.group.clone(), opts.cap)?;
    let props = deciders::property_report(&frame)?;
    let mut defects = Vec::new();
    let checks: Vec<CheckJson> = theorem_checks(&frame, inst.unit.as_ref())
        .into_iter()
        .inspect(|c| {
            if !c.passed {
                defects.push(format!("{}: {}", c.name, c.detail));
            }
        })
        .map(CheckJson::from)
        .collect();
    let gb = match &inst.primes {
        Some(ps) => Some(gb_section(&family_of(&frame, ps)?, inst.unit.as_ref(), opts, &mut defects)),
        None => None,
    };
    Ok(Report {
        instance: echo(inst),
        properties: Properties {
            martinez: props.martinez,
            yosida: props.yosida,
            hyperarchimedean: props.hyperarchimedean,
            projectable: props.projectable,
            archimedean: props.archimedean,
            emc: props.emc,
            complemented: props.complemented,
        },
        conditions: Conditions { martinez: conditions(&props.main), yosida: conditions(&props.yosida_conditions) },
        witnesses: Witnesses {
            martinez: props.martinez_witness.as_ref().map(pair),
            yosida: props.yosida_witness.as_ref().map(pair),
            archimedean: props.archimedean_witness.as_ref().map(pair),
            hyperarchimedean: props.hyperarchimedean_witness.as_ref().map(|v| json_vec(&v.0)),
            projectable: props.projectable_witness.as_ref().map(|v| json_vec(&v.0)),
            emc: props.emc_witness.as_ref().map(|v| json_vec(&v.0)),
        },
        frame: frame_summary(&frame),
        spectra: spectrum_summaries(&frame, opts.topologies),
        checks,
        gb,
        defects,
    })
}

/// Plain-text rendering of a report.
pub fn render_text(r: &Report) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let i = &r.instance;
    let _ = writeln!(s, "instance {}  ambient {:?}  rank {}  {}", i.name, i.ambient, i.rank, i.closure_status);
    let p = &r.properties;
    let _ = writeln!(
        s,
        "martinez {}  yosida {}  hyperarchimedean {}  projectable {}  archimedean {}  emc {}  complemented {}",
        p.martinez, p.yosida, p.hyperarchimedean, p.projectable, p.archimedean, p.emc, p.complemented
    );
    let fmt_conds =
        |c: &[ConditionValue]| c.iter().map(|v| format!("({})={}", v.condition, v.holds)).collect::<Vec<_>>().join(" ");
    let _ = writeln!(s, "(M) conditions: {}", fmt_conds(&r.conditions.martinez));
    let _ = writeln!(s, "(Y) conditions: {}", fmt_conds(&r.conditions.yosida));
    if let Some(w) = &r.witnesses.martinez {
        let _ = writeln!(s, "(M) witness: g={} h={}", w.g, w.h);
    }
    let _ = writeln!(s, "frame: {} convex subgroups, {} covering pairs", r.frame.elements, r.frame.hasse_edges.len());
    for c in &r.checks {
        let _ = writeln!(s, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    if let Some(g) = &r.gb {
        let _ = writeln!(s, "G+B over {:?}: martinez {}  yosida {}", g.primes, g.martinez, g.yosida);
        if let Some(w) = &g.witness {
            let _ = writeln!(s, "  witness {}: f={} h={}", w.kind, w.f, w.h);
        }
    }
    let _ = writeln!(s, "defects: {}", r.defects.len());
    for d in &r.defects {
        let _ = writeln!(s, "  {d}");
    }
    s
}
