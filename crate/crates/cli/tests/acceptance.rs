//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ellgroup::deciders::{self, MainCondition, YosidaCondition};
use ellgroup::gb::{self, GbElement, PrimeFamily};
use ellgroup::{AVec, Ambient, Frame, Int, IntLattice, LGroup};
use ellgroup_cli::fuzz::{self, CorpusItem, FuzzParams};
use ellgroup_cli::report;
use num_traits::ToPrimitive;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

const CORPUS_SIZE: usize = 300;
const CORPUS_SEED: u64 = 1;
const RUNTIME_LIMIT: Duration = Duration::from_secs(300);
const PRESERVATION_PAIRS: usize = 100;
const LEMMA_SAMPLES: usize = 100;
const MIN_GB_PAIRS: usize = 100;
const GB_BOUND: u64 = 64;
const GB_ELEMENT_PAIRS: usize = 1000;
const PERP_SAMPLES: usize = 200;
const IDENTITY_DRAWS: usize = 1000;
const ORACLE_RADIUS: i64 = 3;
const ORACLE_MAX_DIM: usize = 3;
const DETERMINISM_ARGS: [&str; 5] = ["fuzz", "--count", "50", "--seed", "7"];

struct Suite {
    failures: usize,
}

impl Suite {
    fn record(&mut self, id: &str, passed: bool, detail: String) {
        println!("{id:<26} {}  {detail}", if passed { "PASS" } else { "FAIL" });
        if !passed {
            self.failures += 1;
        }
    }
}

struct Item {
    item: CorpusItem,
    frame: Frame,
}

fn below(rng: &mut SplitMix64, n: usize) -> usize {
    (rng.next_u64() % n.max(1) as u64) as usize
}

fn random_in(lattice: &IntLattice, rng: &mut SplitMix64, c: i64) -> AVec {
    let mut v = AVec::zeros(lattice.dim());
    for b in lattice.basis() {
        let k = Int::from(rng.next_u64() as i64 % (2 * c + 1) - c);
        for (x, y) in v.0.iter_mut().zip(b) {
            *x += &k * y;
        }
    }
    v
}

fn full(depths: &[usize]) -> Frame {
    Frame::new(LGroup::full(Ambient::from_depths(depths).unwrap())).unwrap()
}

/// Independent small-integer model of the ambient order: lex per fiber, product across fibers.
mod oracle {
    pub type V = Vec<i64>;

    pub fn fibers(depths: &[usize], v: &[i64]) -> Vec<V> {
        let mut out = Vec::new();
        let mut at = 0;
        for &d in depths {
            out.push(v[at..at + d].to_vec());
            at += d;
        }
        out
    }

    fn zero(f: &[i64]) -> V {
        vec![0; f.len()]
    }

    fn fiber_abs(f: &[i64]) -> V {
        if f < zero(f).as_slice() {
            f.iter().map(|x| -x).collect()
        } else {
            f.to_vec()
        }
    }

    fn map(depths: &[usize], v: &[i64], op: impl Fn(&[i64]) -> V) -> V {
        fibers(depths, v).iter().flat_map(|f| op(f)).collect()
    }

    fn map2(depths: &[usize], a: &[i64], b: &[i64], op: impl Fn(&[i64], &[i64]) -> V) -> V {
        fibers(depths, a).iter().zip(fibers(depths, b)).flat_map(|(x, y)| op(x, &y)).collect()
    }

    pub fn abs(depths: &[usize], v: &[i64]) -> V {
        map(depths, v, fiber_abs)
    }

    pub fn pos(depths: &[usize], v: &[i64]) -> V {
        map(depths, v, |f| if f > zero(f).as_slice() { f.to_vec() } else { zero(f) })
    }

    pub fn neg_part(depths: &[usize], v: &[i64]) -> V {
        map(depths, v, |f| if f < zero(f).as_slice() { f.iter().map(|x| -x).collect() } else { zero(f) })
    }

    pub fn join(depths: &[usize], a: &[i64], b: &[i64]) -> V {
        map2(depths, a, b, |x, y| x.max(y).to_vec())
    }

    pub fn meet(depths: &[usize], a: &[i64], b: &[i64]) -> V {
        map2(depths, a, b, |x, y| x.min(y).to_vec())
    }

    pub fn le(depths: &[usize], a: &[i64], b: &[i64]) -> bool {
        fibers(depths, a).iter().zip(fibers(depths, b)).all(|(x, y)| x <= &y)
    }

    pub fn is_nonneg(depths: &[usize], a: &[i64]) -> bool {
        fibers(depths, a).iter().all(|f| f.as_slice() >= zero(f).as_slice())
    }

    pub fn add(a: &[i64], b: &[i64]) -> V {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[i64], b: &[i64]) -> V {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    /// Box points of `G` and the convex ℓ-subgroups generated by subsets of them, cut to the box.
    ///
    /// The subgroup generated by `S` is `{z : |z| <= n u}` with `u` the sum of `|s|`; inside a box
    /// of radius `r` the multiplier `n = r + 1` suffices, and `n u` may leave the box.
    pub struct BoxModel {
        pub depths: Vec<usize>,
        pub points: Vec<V>,
        multiplier: i64,
        abs: Vec<V>,
    }

    impl BoxModel {
        pub fn new(depths: &[usize], points: Vec<V>, radius: i64) -> Self {
            let abs = points.iter().map(|p| abs(depths, p)).collect();
            BoxModel { depths: depths.to_vec(), points, multiplier: radius + 1, abs }
        }

        /// Box points dominated by a multiple of the positive element `u`.
        pub fn dominated(&self, u: &[i64]) -> Vec<bool> {
            let nu: V = u.iter().map(|x| x * self.multiplier).collect();
            self.abs.iter().map(|z| le(&self.depths, z, &nu)).collect()
        }

        pub fn abs_of(&self, k: usize) -> &[i64] {
            &self.abs[k]
        }
    }
}

fn to_i64(v: &AVec) -> Vec<i64> {
    v.0.iter().map(|x| x.to_i64().expect("small entries")).collect()
}

fn from_i64(v: &[i64]) -> AVec {
    AVec::from_i64(v)
}

fn main_conditions(s: &mut Suite, items: &[Item], fuzz_defects: usize, elapsed: Duration) {
    let mut disagreements = Vec::new();
    for it in items {
        let vals: Vec<bool> = MainCondition::ALL.iter().map(|&c| deciders::is_martinez_via(&it.frame, c)).collect();
        if vals.iter().any(|&v| v != vals[0]) {
            disagreements.push(it.item.id);
        }
    }
    let ok = disagreements.is_empty() && fuzz_defects == 0 && elapsed < RUNTIME_LIMIT && items.len() >= CORPUS_SIZE;
    s.record(
        "01 main-conditions",
        ok,
        format!(
            "{} instances, {} conditions, disagreements {:?}, harness defects {}, runtime {:.1}s (limit {}s)",
            items.len(),
            MainCondition::ALL.len(),
            disagreements,
            fuzz_defects,
            elapsed.as_secs_f64(),
            RUNTIME_LIMIT.as_secs()
        ),
    );
}

fn totally_ordered(s: &mut Suite) {
    let mut rows = Vec::new();
    let mut ok = true;
    for d in 1..=4 {
        let f = full(&[d]);
        let (m, y, a) = (deciders::is_martinez(&f), deciders::is_yosida(&f), f.group().is_archimedean());
        ok &= m == y && y == a && a == (d == 1);
        rows.push(format!("depth {d}: {m}/{y}/{a}"));
    }
    s.record("02 totally-ordered", ok, format!("martinez/yosida/archimedean {}", rows.join(", ")));
}

fn hyperarchimedean_split(s: &mut Suite, items: &[Item]) {
    let bad: Vec<usize> = items
        .iter()
        .filter(|it| {
            deciders::is_hyperarchimedean(&it.frame)
                != (deciders::is_projectable(&it.frame) && deciders::is_martinez(&it.frame))
        })
        .map(|it| it.item.id)
        .collect();
    let lex = full(&[2]);
    let (p, m, h) = (deciders::is_projectable(&lex), deciders::is_martinez(&lex), deciders::is_hyperarchimedean(&lex));
    s.record(
        "03 hyperarchimedean-split",
        bad.is_empty() && p && !m && !h,
        format!("violations {bad:?}; lex Z^2 projectable={p} martinez={m} hyperarchimedean={h}"),
    );
}

fn direct_sums(s: &mut Suite, items: &[Item], rng: &mut SplitMix64) {
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, pred) in [
        ("martinez", deciders::is_martinez as fn(&Frame) -> bool),
        ("yosida", deciders::is_yosida as fn(&Frame) -> bool),
    ] {
        let pool: Vec<&Item> = items.iter().filter(|it| pred(&it.frame)).collect();
        let (mut tested, mut failed, mut guarded) = (0, 0, 0);
        while tested < PRESERVATION_PAIRS && !pool.is_empty() && guarded < 10 * PRESERVATION_PAIRS {
            let a = pool[below(rng, pool.len())];
            let b = pool[below(rng, pool.len())];
            match Frame::new(a.frame.group().direct_sum(b.frame.group())) {
                Ok(sum) => {
                    tested += 1;
                    if !pred(&sum) {
                        failed += 1;
                    }
                }
                Err(_) => guarded += 1,
            }
        }
        ok &= tested == PRESERVATION_PAIRS && failed == 0;
        detail.push(format!("{name}: {tested} pairs, {failed} failures, {guarded} over cap"));
    }
    s.record("04 direct-sums", ok, detail.join("; "));
}

fn lex_extension(s: &mut Suite, items: &[Item]) {
    let (mut tested, mut bad) = (0, Vec::new());
    for it in items.iter().filter(|it| deciders::is_martinez(&it.frame) && !it.frame.group().is_trivial()) {
        let ext = Frame::new(it.frame.group().lex_extension()).expect("lex extensions of corpus groups are small");
        tested += 1;
        if !report::lex_extension_check(&ext).passed {
            bad.push(it.item.id);
        }
    }
    s.record(
        "05 lex-extension",
        tested > 0 && bad.is_empty(),
        format!("{tested} nonzero (M) instances, failures {bad:?}"),
    );
}

fn radical_class(s: &mut Suite, items: &[Item], rng: &mut SplitMix64) {
    let mut radical_bad = Vec::new();
    for it in items {
        if !deciders::check_radical_closure(&it.frame).unwrap().passed {
            radical_bad.push(it.item.id);
        }
    }
    let pool: Vec<&Item> = items.iter().filter(|it| deciders::is_martinez(&it.frame)).collect();
    let (mut failed, mut disjoint) = (0, 0);
    for k in 0..LEMMA_SAMPLES {
        let it = pool[below(rng, pool.len())];
        let g = it.frame.group();
        let amb = g.ambient();
        let x = random_in(g.lattice(), rng, 2);
        let mut y = random_in(g.lattice(), rng, 2);
        let mut x2 = x.clone();
        if k % 2 == 0 {
            let (a, b) = g.disjointify(&amb.abs(&x).unwrap(), &amb.abs(&y).unwrap()).unwrap();
            x2 = a;
            y = b;
        }
        if amb.meet(&amb.abs(&x2).unwrap(), &amb.abs(&y).unwrap()).unwrap().is_zero() {
            disjoint += 1;
        }
        if !deciders::check_quotient_lemma(&it.frame, &x2, &y).unwrap().passed {
            failed += 1;
        }
    }
    s.record(
        "06 radical-class",
        radical_bad.is_empty() && failed == 0,
        format!(
            "radical closure failures {radical_bad:?}; lemma {LEMMA_SAMPLES} samples ({disjoint} disjoint), {failed} failures"
        ),
    );
}

fn yosida_conditions(s: &mut Suite, items: &[Item]) {
    let mut disagree = Vec::new();
    let mut emc_bad = Vec::new();
    for it in items {
        let v: Vec<bool> =
            YosidaCondition::ALL.iter().map(|&c| deciders::is_yosida_via(&it.frame, c).unwrap()).collect();
        if v.iter().any(|&b| b != v[0]) {
            disagree.push(it.item.id);
        }
        if deciders::has_emc(&it.frame) && deciders::is_martinez(&it.frame) && !deciders::is_yosida(&it.frame) {
            emc_bad.push(it.item.id);
        }
    }
    s.record(
        "07 yosida-conditions",
        disagree.is_empty() && emc_bad.is_empty(),
        format!("{} instances, disagreements {disagree:?}, emc+(M) without (Y) {emc_bad:?}", items.len()),
    );
}

fn weak_unit_conditions(s: &mut Suite, items: &[Item]) {
    let (mut tested, mut bad) = (0, Vec::new());
    for it in items.iter().filter(|it| it.frame.group().is_archimedean()) {
        let Some(u) = it.frame.weak_unit_exists() else { continue };
        tested += 1;
        if !deciders::check_w_theorem(&it.frame, &u).unwrap().consistent() {
            bad.push(it.item.id);
        }
    }
    s.record(
        "08 weak-unit-conditions",
        tested > 0 && bad.is_empty(),
        format!("{tested} archimedean instances with a weak unit, failures {bad:?}"),
    );
}

fn families(items: &[Item], rng: &mut SplitMix64) -> Vec<(usize, PrimeFamily)> {
    let mut out = Vec::new();
    for (k, it) in items.iter().enumerate() {
        if it.frame.group().is_trivial() {
            continue;
        }
        if let Some(ids) = fuzz::random_family(rng, &it.frame) {
            out.push((k, gb::validate_family(&it.frame, &ids).expect("random families are valid")));
        }
    }
    out
}

fn p_element_conditions(s: &mut Suite, fams: &[(usize, PrimeFamily)]) {
    let (mut primes, mut bad, mut min_bad) = (0, Vec::new(), Vec::new());
    for (k, fam) in fams {
        for q in fam.frame().spec() {
            primes += 1;
            let v =
                [fam.is_p_element(q).unwrap(), fam.intersection_condition(q).unwrap(), fam.patch_condition(q).unwrap()];
            if v.iter().any(|&b| b != v[0]) {
                bad.push(*k);
            }
        }
        if !fam.min_in_patch_closure_check() {
            min_bad.push(*k);
        }
    }
    s.record(
        "09 p-element-conditions",
        bad.is_empty() && min_bad.is_empty(),
        format!("{} families, {primes} primes, disagreements {bad:?}, Min outside closure {min_bad:?}", fams.len()),
    );
}

fn gb_martinez_yosida(s: &mut Suite, fams: &[(usize, PrimeFamily)]) {
    let (mut mismatch, mut unconfirmed, mut negatives) = (Vec::new(), Vec::new(), 0);
    for (k, fam) in fams {
        let m = fam.is_martinez();
        if m != fam.is_yosida() {
            mismatch.push(*k);
        }
        if !m {
            negatives += 1;
            let r = fam.sample_martinez_check(0, GB_BOUND, 0).unwrap();
            if r.witness_confirmed != Some(true) {
                unconfirmed.push(*k);
            }
        }
    }
    let sq = full(&[1, 1]);
    let sq_fam = gb::validate_family(&sq, &sq.spec()).unwrap();
    let lex = full(&[2]);
    let lex_fam = gb::validate_family(&lex, &[lex.bottom()]).unwrap();
    let examples = sq_fam.is_martinez() && sq_fam.is_yosida() && !lex_fam.is_martinez() && !lex_fam.is_yosida();
    s.record(
        "10 gb-martinez-yosida",
        fams.len() >= MIN_GB_PAIRS && mismatch.is_empty() && unconfirmed.is_empty() && examples,
        format!(
            "{} pairs ({negatives} negative), mismatches {mismatch:?}, unconfirmed witnesses {unconfirmed:?} at bound {GB_BOUND}; examples {}",
            fams.len(),
            if examples { "reproduced" } else { "wrong" }
        ),
    );
}

fn sparse(fam: &PrimeFamily, rng: &mut SplitMix64) -> GbElement {
    let g = fam.frame().group();
    let count = 1 + below(rng, 2);
    let values: Vec<_> = (0..count)
        .map(|_| {
            let k = below(rng, fam.len());
            let n = 1 + rng.next_u64() % 3;
            ((k, n), fam.project(k, &random_in(g.lattice(), rng, 2)))
        })
        .collect();
    fam.element(AVec::zeros(g.ambient().total_dim()), values).unwrap()
}

fn gb_draw(fam: &PrimeFamily, rng: &mut SplitMix64) -> GbElement {
    if below(rng, 2) == 0 {
        sparse(fam, rng)
    } else {
        fam.random_element(rng, 2)
    }
}

fn gb_polars(s: &mut Suite, fams: &[(usize, PrimeFamily)], rng: &mut SplitMix64) {
    let (mut disjoint, mut bad_disjoint, mut bad_reflexive, mut bad_monotone) = (0, 0, 0, 0);
    for _ in 0..GB_ELEMENT_PAIRS {
        let (_, fam) = &fams[below(rng, fams.len())];
        let f = gb_draw(fam, rng);
        let h = gb_draw(fam, rng);
        let d = fam.disjoint(&f, &h).unwrap();
        let m = fam.meet(&fam.abs(&f).unwrap(), &fam.abs(&h).unwrap()).unwrap();
        disjoint += d as usize;
        if d != fam.is_zero(&m) {
            bad_disjoint += 1;
        }
        if !fam.in_double_polar(&f, &f).unwrap() {
            bad_reflexive += 1;
        }
        let inner = fam.random_in_double_polar(&f, rng, 2);
        let j = fam.join(&fam.abs(&f).unwrap(), &fam.abs(&h).unwrap()).unwrap();
        if fam.in_double_polar(&inner, &f).unwrap() && !fam.in_double_polar(&inner, &j).unwrap() {
            bad_monotone += 1;
        }
        if fam.in_double_polar(&h, &f).unwrap() && !fam.in_double_polar(&h, &j).unwrap() {
            bad_monotone += 1;
        }
    }
    s.record(
        "11 gb-polars",
        bad_disjoint + bad_reflexive + bad_monotone == 0,
        format!(
            "{GB_ELEMENT_PAIRS} pairs ({disjoint} disjoint): disjointness mismatches {bad_disjoint}, reflexivity {bad_reflexive}, monotonicity {bad_monotone}"
        ),
    );
}

fn lattice_eq(a: &IntLattice, b: &IntLattice) -> bool {
    a.is_sublattice_of(b) && b.is_sublattice_of(a)
}

fn polars_and_identities(s: &mut Suite, items: &[Item], rng: &mut SplitMix64) {
    let pool: Vec<&Item> = items.iter().filter(|it| !it.frame.group().is_trivial()).collect();
    let mut perp_bad = 0;
    for _ in 0..PERP_SAMPLES {
        let it = pool[below(rng, pool.len())];
        let f = &it.frame;
        let ids: Vec<_> = f.ids().collect();
        let hsub = ids[below(rng, ids.len())];
        let h = random_in(f.lattice(hsub), rng, 2);
        let sub = f.sub_as_lgroup(hsub);
        let sf = Frame::new(sub.group.clone()).unwrap();
        let inner = sf.double_polar(&sub.apply(&h)).unwrap();
        let lhs = sub.lift_lattice(sf.lattice(inner));
        let rhs = f.lattice(hsub).intersect(f.lattice(f.double_polar(&h).unwrap())).unwrap();
        if !lattice_eq(&lhs, &rhs) {
            perp_bad += 1;
        }
    }
    let (mut id_bad, mut riesz_bad, mut riesz_draws) = (0, 0, 0);
    let depth_one: Vec<&Item> =
        pool.iter().copied().filter(|it| it.frame.group().ambient().depths().iter().all(|&d| d == 1)).collect();
    for _ in 0..IDENTITY_DRAWS {
        let it = pool[below(rng, pool.len())];
        let g = it.frame.group();
        let amb = g.ambient();
        let d = amb.depths();
        let a = random_in(g.lattice(), rng, 2);
        let b = random_in(g.lattice(), rng, 2);
        let (ai, bi) = (to_i64(&a), to_i64(&b));
        let pos = amb.pos_part(&a).unwrap();
        let neg = amb.neg_part(&a).unwrap();
        let abs = amb.abs(&a).unwrap();
        let mut ok = to_i64(&pos) == oracle::pos(&d, &ai)
            && to_i64(&neg) == oracle::neg_part(&d, &ai)
            && to_i64(&abs) == oracle::abs(&d, &ai)
            && oracle::sub(&to_i64(&pos), &to_i64(&neg)) == ai
            && oracle::join(&d, &to_i64(&pos), &to_i64(&neg)) == to_i64(&abs)
            && to_i64(&amb.join(&a, &b).unwrap()) == oracle::join(&d, &ai, &bi)
            && to_i64(&amb.meet(&a, &b).unwrap()) == oracle::meet(&d, &ai, &bi);
        let (pa, pb) = (oracle::abs(&d, &ai), oracle::abs(&d, &bi));
        let (x, y) = g.disjointify(&from_i64(&pa), &from_i64(&pb)).unwrap();
        let (xi, yi) = (to_i64(&x), to_i64(&y));
        ok &= oracle::is_nonneg(&d, &xi)
            && oracle::is_nonneg(&d, &yi)
            && oracle::meet(&d, &xi, &yi).iter().all(|&c| c == 0)
            && oracle::sub(&pa, &xi) == oracle::sub(&pb, &yi)
            && g.contains(&x)
            && g.contains(&y);
        if !ok {
            id_bad += 1;
        }
        if !depth_one.is_empty() {
            let it = depth_one[below(rng, depth_one.len())];
            let g = it.frame.group();
            let d = g.ambient().depths();
            let parts: Vec<Vec<i64>> =
                (0..2 + below(rng, 2)).map(|_| oracle::abs(&d, &to_i64(&random_in(g.lattice(), rng, 2)))).collect();
            let total = parts.iter().fold(vec![0; d.len()], |acc, p| oracle::add(&acc, p));
            let c = oracle::meet(&d, &oracle::abs(&d, &to_i64(&random_in(g.lattice(), rng, 3))), &total);
            let ds: Vec<AVec> = parts.iter().map(|p| from_i64(p)).collect();
            let out = g.riesz_decompose(&from_i64(&c), &ds).unwrap();
            let sum = out.iter().fold(vec![0; d.len()], |acc, p| oracle::add(&acc, &to_i64(p)));
            let fits = out.iter().zip(&parts).all(|(p, dp)| {
                let pi = to_i64(p);
                oracle::is_nonneg(&d, &pi) && oracle::le(&d, &pi, dp) && g.contains(p)
            });
            riesz_draws += 1;
            if sum != c || !fits {
                riesz_bad += 1;
            }
        }
    }
    s.record(
        "12 polars-and-identities",
        perp_bad == 0 && id_bad == 0 && riesz_bad == 0 && riesz_draws == IDENTITY_DRAWS,
        format!(
            "polar lemma {PERP_SAMPLES} samples, {perp_bad} failures; identities {IDENTITY_DRAWS} draws, {id_bad} failures; Riesz {riesz_draws} draws, {riesz_bad} failures"
        ),
    );
}

fn box_points(g: &LGroup) -> Vec<Vec<i64>> {
    let n = g.ambient().total_dim();
    let side = (2 * ORACLE_RADIUS + 1) as usize;
    let mut out = Vec::new();
    for code in 0..side.pow(n as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..n)
            .map(|_| {
                let x = (c % side) as i64 - ORACLE_RADIUS;
                c /= side;
                x
            })
            .collect();
        if g.contains(&from_i64(&v)) {
            out.push(v);
        }
    }
    out
}

fn oracle_subgroups(model: &oracle::BoxModel) -> BTreeSet<Vec<bool>> {
    let mut found: BTreeMap<Vec<bool>, Vec<i64>> = BTreeMap::new();
    for k in 0..model.points.len() {
        let u = model.abs_of(k).to_vec();
        found.entry(model.dominated(&u)).or_insert(u);
    }
    loop {
        let sets: Vec<(Vec<bool>, Vec<i64>)> = found.iter().map(|(s, u)| (s.clone(), u.clone())).collect();
        let mut grew = false;
        for (i, (_, u)) in sets.iter().enumerate() {
            for (_, w) in &sets[i + 1..] {
                let sum = oracle::add(u, w);
                let joined = model.dominated(&sum);
                if let std::collections::btree_map::Entry::Vacant(e) = found.entry(joined) {
                    e.insert(sum);
                    grew = true;
                }
            }
        }
        if !grew {
            return found.into_keys().collect();
        }
    }
}

fn frame_enumeration(s: &mut Suite, items: &[Item]) {
    let (mut tested, mut bad) = (0, Vec::new());
    for it in items.iter().filter(|it| it.frame.group().ambient().total_dim() <= ORACLE_MAX_DIM) {
        let g = it.frame.group();
        let model = oracle::BoxModel::new(&g.ambient().depths(), box_points(g), ORACLE_RADIUS);
        let oracle_sets = oracle_subgroups(&model);
        let frame_sets: BTreeSet<Vec<bool>> = it
            .frame
            .ids()
            .map(|h| model.points.iter().map(|p| it.frame.lattice(h).contains(&from_i64(p).0)).collect())
            .collect();
        tested += 1;
        if oracle_sets != frame_sets {
            bad.push(it.item.id);
        }
    }
    s.record(
        "13 frame-enumeration",
        tested > 0 && bad.is_empty(),
        format!("{tested} instances of dimension <= {ORACLE_MAX_DIM}, box radius {ORACLE_RADIUS}, mismatches {bad:?}"),
    );
}

fn determinism(s: &mut Suite) {
    let bin = env!("CARGO_BIN_EXE_ellgroup");
    let run = || Command::new(bin).args(DETERMINISM_ARGS).arg("--json").output().expect("binary runs");
    let (a, b) = (run(), run());
    let same = a.stdout == b.stdout && !a.stdout.is_empty();
    s.record(
        "14 determinism",
        same && a.status.success() && b.status.success(),
        format!(
            "`{} --json` twice: {} bytes, identical={same}, exit {:?}/{:?}",
            DETERMINISM_ARGS.join(" "),
            a.stdout.len(),
            a.status.code(),
            b.status.code()
        ),
    );
}

fn main() -> ExitCode {
    let mut suite = Suite { failures: 0 };
    let params = FuzzParams { count: CORPUS_SIZE, seed: CORPUS_SEED, ..FuzzParams::default() };
    let start = Instant::now();
    let run = fuzz::run(&params).expect("corpus builds");
    let (corpus, _) = fuzz::corpus(&params).expect("corpus builds");
    let items: Vec<Item> =
        corpus.into_iter().map(|item| Item { frame: Frame::new(item.instance.group.clone()).unwrap(), item }).collect();
    let mut rng = SplitMix64::seed_from_u64(CORPUS_SEED);
    main_conditions(&mut suite, &items, run.summary.defects, start.elapsed());
    totally_ordered(&mut suite);
    hyperarchimedean_split(&mut suite, &items);
    direct_sums(&mut suite, &items, &mut rng);
    lex_extension(&mut suite, &items);
    radical_class(&mut suite, &items, &mut rng);
    yosida_conditions(&mut suite, &items);
    weak_unit_conditions(&mut suite, &items);
    let fams = families(&items, &mut rng);
    p_element_conditions(&mut suite, &fams);
    gb_martinez_yosida(&mut suite, &fams);
    gb_polars(&mut suite, &fams, &mut rng);
    polars_and_identities(&mut suite, &items, &mut rng);
    frame_enumeration(&mut suite, &items);
    determinism(&mut suite);
    println!("{} of 14 criteria failed", suite.failures);
    if suite.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
