//! Seeded random instances and the corpus-wide harness.

use ellgroup::deciders;
use ellgroup::{AVec, Frame, FrameError, Int, IntVec, LGroup, SubgroupId};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::format::{build, Body, Expr, FormatError, Instance, InstanceFile};
use crate::report::{self, AnalyzeOptions, CheckJson, GbJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzParams {
    pub count: usize,
    pub max_indices: usize,
    pub max_depth: usize,
    pub max_gens: usize,
    pub coeff_bound: u64,
    pub seed: u64,
    #[serde(skip)]
    pub cap: usize,
    /// Samples per G+B domination check.
    pub gb_samples: usize,
}

impl Default for FuzzParams {
    fn default() -> Self {
        FuzzParams {
            count: 300,
            max_indices: 3,
            max_depth: 2,
            max_gens: 3,
            coeff_bound: 3,
            seed: 0,
            cap: ellgroup::DEFAULT_FRAME_CAP,
            gb_samples: 30,
        }
    }
}

fn below(rng: &mut SplitMix64, n: u64) -> u64 {
    rng.next_u64() % n.max(1)
}

fn coeff(rng: &mut SplitMix64, bound: u64) -> Int {
    Int::from(below(rng, 2 * bound + 1) as i64 - bound as i64)
}

fn random_depths(rng: &mut SplitMix64, p: &FuzzParams) -> Vec<usize> {
    let k = 1 + below(rng, p.max_indices as u64) as usize;
    (0..k).map(|_| 1 + below(rng, p.max_depth as u64) as usize).collect()
}

fn random_gens(rng: &mut SplitMix64, p: &FuzzParams, dim: usize) -> Vec<IntVec> {
    let n = 1 + below(rng, p.max_gens as u64) as usize;
    (0..n).map(|_| (0..dim).map(|_| coeff(rng, p.coeff_bound)).collect()).collect()
}

fn random_leaf(rng: &mut SplitMix64, p: &FuzzParams) -> Result<(Expr, LGroup), FormatError> {
    let depths = random_depths(rng, p);
    if below(rng, 3) == 0 {
        let amb = ellgroup::Ambient::from_depths(&depths).map_err(|e| FormatError::Build(e.to_string()))?;
        return Ok((Expr::Full(depths), LGroup::full(amb)));
    }
    let dim = depths.iter().sum();
    let gens = random_gens(rng, p, dim);
    let amb = ellgroup::Ambient::from_depths(&depths).map_err(|e| FormatError::Build(e.to_string()))?;
    let avs: Vec<AVec> = gens.iter().map(|g| AVec(g.clone())).collect();
    let g = LGroup::generate(amb, &avs, crate::format::DEFAULT_VERIFY_BOX)?;
    Ok((Expr::Gens(depths, gens), g))
}

fn random_levels(rng: &mut SplitMix64, g: &LGroup) -> Vec<usize> {
    g.ambient().depths().iter().map(|&d| below(rng, d as u64 + 1) as usize).collect()
}

/// A random construction whose ambient stays within the size parameters.
fn random_expr(rng: &mut SplitMix64, p: &FuzzParams, budget: u32) -> Result<(Expr, LGroup), FormatError> {
    if budget == 0 {
        return random_leaf(rng, p);
    }
    match below(rng, 5) {
        0 => random_leaf(rng, p),
        1 => {
            let (a, ga) = random_expr(rng, p, budget - 1)?;
            let (b, gb) = random_expr(rng, p, budget - 1)?;
            if ga.ambient().num_fibers() + gb.ambient().num_fibers() <= p.max_indices {
                let g = ga.direct_sum(&gb);
                Ok((Expr::Sum(Box::new(a), Box::new(b)), g))
            } else {
                Ok((a, ga))
            }
        }
        2 => {
            let (a, ga) = random_expr(rng, p, budget - 1)?;
            if ga.ambient().depths().iter().all(|&d| d < p.max_depth) {
                let g = ga.lex_extension();
                Ok((Expr::Lex(Box::new(a)), g))
            } else {
                Ok((a, ga))
            }
        }
        k => {
            let (a, ga) = random_expr(rng, p, budget - 1)?;
            let levels = random_levels(rng, &ga);
            let frame = Frame::with_cap(ga, p.cap)?;
            let h = frame.cut(&ellgroup::LevelPattern(levels.clone()));
            if k == 3 {
                Ok((Expr::Quotient(Box::new(a), levels), frame.quotient(h).group))
            } else {
                Ok((Expr::Sub(Box::new(a), levels), frame.sub_as_lgroup(h).group))
            }
        }
    }
}

/// One random instance file: half constructions, half raw generators.
pub fn random_instance(rng: &mut SplitMix64, p: &FuzzParams, id: usize) -> Result<InstanceFile, FormatError> {
    let name = format!("fuzz-{id}");
    if below(rng, 2) == 0 {
        let (expr, _) = random_expr(rng, p, 2)?;
        Ok(InstanceFile {
            name,
            ambient: None,
            body: Body::Construction { lets: Vec::new(), expr },
            verify_box: None,
            unit: None,
            primes: None,
        })
    } else {
        let depths = random_depths(rng, p);
        let gens = random_gens(rng, p, depths.iter().sum());
        Ok(InstanceFile {
            name,
            ambient: Some(depths),
            body: Body::Generators(gens),
            verify_box: None,
            unit: None,
            primes: None,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub id: usize,
    pub file: InstanceFile,
    pub instance: Instance,
}

/// The seeded corpus, with a count of instances dropped by the frame guard.
pub fn corpus(p: &FuzzParams) -> Result<(Vec<CorpusItem>, usize), FormatError> {
    let mut rng = SplitMix64::seed_from_u64(p.seed);
    let mut items = Vec::with_capacity(p.count);
    let mut guarded = 0;
    let mut id = 0;
    while items.len() < p.count {
        let made = random_instance(&mut rng, p, id).and_then(|f| build(&f, p.cap).map(|i| (f, i)));
        match made {
            Ok((file, instance)) => items.push(CorpusItem { id, file, instance }),
            Err(FormatError::Guard(_)) => guarded += 1,
            Err(e) => return Err(e),
        }
        id += 1;
    }
    Ok((items, guarded))
}

/// A random family of primes meeting in zero, or `None` when the spectrum is empty.
pub fn random_family(rng: &mut SplitMix64, frame: &Frame) -> Option<Vec<SubgroupId>> {
    let spec = frame.spec();
    if spec.is_empty() {
        return None;
    }
    let mut fam: Vec<SubgroupId> = spec.iter().copied().filter(|_| below(rng, 2) == 0).collect();
    if frame.meet_all(fam.iter().copied()) != frame.bottom() {
        fam.extend(frame.minimal_primes());
    }
    fam.sort();
    fam.dedup();
    Some(fam)
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzEntry {
    pub id: usize,
    pub source: String,
    pub ambient: Vec<usize>,
    pub rank: usize,
    pub frame_elements: usize,
    pub martinez: bool,
    pub yosida: bool,
    pub hyperarchimedean: bool,
    pub projectable: bool,
    pub archimedean: bool,
    pub emc: bool,
    pub checks: Vec<CheckJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gb: Option<GbJson>,
    pub defects: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub instances: usize,
    pub guarded: usize,
    pub martinez: usize,
    pub yosida: usize,
    pub gb_families: usize,
    pub yosida_not_martinez: Vec<usize>,
    pub defects: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub params: FuzzParams,
    pub summary: FuzzSummary,
    pub entries: Vec<FuzzEntry>,
}

fn entry(
    item: &CorpusItem,
    prev: Option<&LGroup>,
    rng: &mut SplitMix64,
    p: &FuzzParams,
) -> Result<FuzzEntry, FrameError> {
    let frame = Frame::with_cap(item.instance.group.clone(), p.cap)?;
    let props = deciders::property_report(&frame)?;
    let mut checks = report::theorem_checks(&frame, None);
    if let Some(prev) = prev {
        match deciders::check_preservation(&frame, prev) {
            Ok(c) => checks.push(c),
            Err(FrameError::TooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let mut defects: Vec<String> =
        checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let fam = random_family(rng, &frame);
    let sample_seed = rng.next_u64();
    let gb = match fam {
        Some(ids) if !frame.group().is_trivial() => {
            let fam = ellgroup::gb::validate_family(&frame, &ids).expect("random families meet in zero");
            let opts = AnalyzeOptions {
                cap: p.cap,
                samples: p.gb_samples,
                bound: 64,
                seed: sample_seed,
                ..Default::default()
            };
            Some(report::gb_section(&fam, None, &opts, &mut defects))
        }
        _ => None,
    };
    Ok(FuzzEntry {
        id: item.id,
        source: item.file.to_string(),
        ambient: frame.group().ambient().depths(),
        rank: frame.group().lattice().rank(),
        frame_elements: frame.len(),
        martinez: props.martinez,
        yosida: props.yosida,
        hyperarchimedean: props.hyperarchimedean,
        projectable: props.projectable,
        archimedean: props.archimedean,
        emc: props.emc,
        checks: checks.into_iter().map(CheckJson::from).collect(),
        gb,
        defects,
    })
}

/// Builds the corpus and runs every harness on each instance.
pub fn run(p: &FuzzParams) -> Result<FuzzReport, FormatError> {
    let (items, mut guarded) = corpus(p)?;
    let mut rng = SplitMix64::seed_from_u64(p.seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut entries = Vec::with_capacity(items.len());
    for (k, item) in items.iter().enumerate() {
        let prev = k.checked_sub(1).map(|j| &items[j].instance.group);
        match entry(item, prev, &mut rng, p) {
            Ok(e) => entries.push(e),
            Err(FrameError::TooLarge { .. }) => guarded += 1,
            Err(e) => return Err(e.into()),
        }
    }
    entries.sort_by_key(|e| e.id);
    let summary = FuzzSummary {
        instances: entries.len(),
        guarded,
        martinez: entries.iter().filter(|e| e.martinez).count(),
        yosida: entries.iter().filter(|e| e.yosida).count(),
        gb_families: entries.iter().filter(|e| e.gb.is_some()).count(),
        yosida_not_martinez: entries.iter().filter(|e| e.yosida && !e.martinez).map(|e| e.id).collect(),
        defects: entries.iter().map(|e| e.defects.len()).sum(),
    };
    Ok(FuzzReport { params: *p, summary, entries })
}

pub fn render_text(r: &FuzzReport) -> String {
    use std::fmt::Write as _;
    let s = &r.summary;
    let mut out = format!(
        "fuzz seed {}: {} instances ({} guarded), {} in (M), {} in (Y), {} G+B families, {} defects\n",
        r.params.seed, s.instances, s.guarded, s.martinez, s.yosida, s.gb_families, s.defects
    );
    if !s.yosida_not_martinez.is_empty() {
        let _ = writeln!(out, "(Y) but not (M): {:?}", s.yosida_not_martinez);
    }
    for e in r.entries.iter().filter(|e| !e.defects.is_empty()) {
        let _ = writeln!(out, "instance {}:", e.id);
        for d in &e.defects {
            let _ = writeln!(out, "  {d}");
        }
        let _ = writeln!(out, "{}", e.source);
    }
    out
}
