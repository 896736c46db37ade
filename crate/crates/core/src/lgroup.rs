//! Finitely generated ℓ-subgroups of an ambient product of lex fibers.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ambient::{AVec, Ambient, AmbientError, LevelPattern};
use crate::exact::{Int, IntLattice, IntVec, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LGroupError {
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("element {0} is not in the group")]
    NotMember(AVec),
    #[error("element {0} is not positive")]
    Negative(AVec),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// How the lattice closure of an instance is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosureStatus {
    /// Built by an operation that preserves lattice closure.
    ClosedByConstruction,
    /// Saturated from generators; closure is certified exactly over every
    /// sign region, and `box_checked` records the radius of the extra
    /// exhaustive check `h in G => h⁺ in G`.
    Certified { box_checked: u32 },
}

/// An ℓ-subgroup `G` of an [`Ambient`], stored as its underlying lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LGroup {
    ambient: Ambient,
    lattice: IntLattice,
    closure: ClosureStatus,
}

/// All level patterns within the fiber depths, in lexicographic order.
pub fn all_patterns(ambient: &Ambient) -> Vec<LevelPattern> {
    let depths = ambient.depths();
    let mut out = vec![Vec::new()];
    for d in depths {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=d).map(move |l| {
                    let mut p = prefix.clone();
                    p.push(l);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(LevelPattern).collect()
}

impl LGroup {
    pub(crate) fn closed(ambient: Ambient, lattice: IntLattice) -> Self {
        debug_assert_eq!(ambient.total_dim(), lattice.dim());
        LGroup { ambient, lattice, closure: ClosureStatus::ClosedByConstruction }
    }

    /// The whole ambient product.
    pub fn full(ambient: Ambient) -> Self {
        let lattice = IntLattice::full(ambient.total_dim());
        Self::closed(ambient, lattice)
    }

    /// The trivial group, housed in a single depth-1 fiber.
    pub fn trivial() -> Self {
        Self::closed(Ambient::from_depths(&[1]).expect("valid"), IntLattice::zero(1))
    }

    /// The smallest ℓ-subgroup containing `gens`.
    ///
    /// The generators are first saturated pairwise (positive parts, joins and
    /// meets of basis vectors and of their sums and differences). Closure is
    /// then certified exactly: inside each level cut, every lex sign region
    /// that meets the group spans that cut as a group, so `h ↦ h⁺` maps the
    /// region into `G` iff the projection onto its positive fibers maps the
    /// whole cut into `G`. Any missing projection is adjoined (it is a
    /// difference of two positive parts of group elements). Finally every
    /// lattice point with `‖h‖∞ <= verify_box` is checked directly.
    pub fn generate(ambient: Ambient, gens: &[AVec], verify_box: u32) -> Result<Self, LGroupError> {
        for g in gens {
            ambient.check(g)?;
        }
        let dim = ambient.total_dim();
        let mut vectors: Vec<IntVec> = gens.iter().map(|g| g.0.clone()).collect();
        loop {
            let lattice = IntLattice::new(dim, vectors.clone())?;
            let missing = pairwise_missing(&ambient, &lattice);
            if !missing.is_empty() {
                vectors = lattice.basis().to_vec();
                vectors.extend(missing.into_iter().map(AVec::into_inner));
                continue;
            }
            if let Some(v) = sign_region_defect(&ambient, &lattice) {
                vectors = lattice.basis().to_vec();
                vectors.push(v.into_inner());
                continue;
            }
            if let Some(h) = box_counterexample(&ambient, &lattice, verify_box) {
                vectors = lattice.basis().to_vec();
                vectors.push(ambient.pos_part(&h)?.into_inner());
                continue;
            }
            return Ok(LGroup { ambient, lattice, closure: ClosureStatus::Certified { box_checked: verify_box } });
        }
    }

    /// `G1 ⊕ G2` on the concatenated ambient.
    pub fn direct_sum(&self, other: &LGroup) -> LGroup {
        let ambient = self.ambient.concat(&other.ambient);
        let (d1, d2) = (self.ambient.total_dim(), other.ambient.total_dim());
        let mut rows = Vec::new();
        for b in self.lattice.basis() {
            let mut v = b.clone();
            v.extend(std::iter::repeat_n(Int::zero(), d2));
            rows.push(v);
        }
        for b in other.lattice.basis() {
            let mut v = vec![Int::zero(); d1];
            v.extend(b.iter().cloned());
            rows.push(v);
        }
        let lattice = IntLattice::new(d1 + d2, rows).expect("dimensions agree");
        Self::closed(ambient, lattice)
    }

    /// Lex extension `G × Z` ordered by the new `Z` first.
    ///
    /// Every fiber gains a new most significant entry; `(g, n)` is embedded
    /// as `g` padded with `n` in every new slot.
    pub fn lex_extension(&self) -> LGroup {
        let depths: Vec<usize> = self.ambient.depths().iter().map(|d| d + 1).collect();
        let ambient = Ambient::from_depths(&depths).expect("depths positive");
        let pad = |v: &[Int], top: i64| -> IntVec {
            let mut out = Vec::with_capacity(ambient.total_dim());
            for i in 0..self.ambient.num_fibers() {
                out.push(Int::from(top));
                out.extend_from_slice(self.ambient.fiber_part(v, i));
            }
            out
        };
        let mut rows: Vec<IntVec> = self.lattice.basis().iter().map(|b| pad(b, 0)).collect();
        rows.push(pad(&vec![Int::zero(); self.ambient.total_dim()], 1));
        let lattice = IntLattice::new(ambient.total_dim(), rows).expect("dimensions agree");
        Self::closed(ambient, lattice)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn closure_status(&self) -> ClosureStatus {
        self.closure
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice.is_zero()
    }

    pub fn contains(&self, v: &AVec) -> bool {
        v.len() == self.ambient.total_dim() && self.lattice.contains(&v.0)
    }

    pub fn check_member(&self, v: &AVec) -> Result<(), LGroupError> {
        self.ambient.check(v)?;
        if self.lattice.contains(&v.0) {
            Ok(())
        } else {
            Err(LGroupError::NotMember(v.clone()))
        }
    }

    /// `G ∩ ∏ C(levels)`.
    pub fn section(&self, levels: &LevelPattern) -> IntLattice {
        self.lattice.section(&self.ambient.zeroed_coordinates(levels)).expect("coordinates in range")
    }

    /// Componentwise largest level attained by a sublattice, i.e. the least
    /// pattern whose cut contains it.
    pub fn support_levels(&self, sub: &IntLattice) -> LevelPattern {
        let mut out = LevelPattern::zero(self.ambient.num_fibers());
        for b in sub.basis() {
            out = out.join(&self.ambient.levels(b));
        }
        out
    }

    /// An element whose levels are exactly `pattern`, if one exists.
    pub fn realize_pattern(&self, pattern: &LevelPattern) -> Option<AVec> {
        let cut = self.section(pattern);
        let lowered: Vec<IntLattice> = pattern
            .support()
            .into_iter()
            .map(|i| {
                let mut p = pattern.clone();
                p.0[i] -= 1;
                self.section(&p)
            })
            .collect();
        cut.escapes_sections(&lowered).expect("cuts of a lattice are sections").map(AVec)
    }

    /// Every realizable level pattern with a positive witness.
    pub fn pattern_witnesses(&self) -> BTreeMap<LevelPattern, AVec> {
        all_patterns(&self.ambient)
            .into_iter()
            .filter_map(|p| {
                let w = self.realize_pattern(&p)?;
                let w = self.ambient.abs(&w).expect("shape");
                Some((p, w))
            })
            .collect()
    }

    pub fn realizable_level_patterns(&self) -> Vec<LevelPattern> {
        self.pattern_witnesses().into_keys().collect()
    }

    /// `G` is archimedean iff no realizable `λa ≠ 0` sits strictly below a
    /// realizable `λb` on its support.
    pub fn is_archimedean(&self) -> bool {
        self.archimedean_witness().is_none()
    }

    /// Positive `(a, b)` with `n a <= b` for every `n`, when not archimedean.
    pub fn archimedean_witness(&self) -> Option<(AVec, AVec)> {
        let w = self.pattern_witnesses();
        for (pa, a) in &w {
            if pa.is_zero() {
                continue;
            }
            for (pb, b) in &w {
                let below = pa.0.iter().zip(&pb.0).all(|(x, y)| *x == 0 || x < y);
                if below {
                    return Some((a.clone(), b.clone()));
                }
            }
        }
        None
    }

    fn check_positive(&self, v: &AVec) -> Result<(), LGroupError> {
        self.check_member(v)?;
        if self.ambient.is_nonneg(v) {
            Ok(())
        } else {
            Err(LGroupError::Negative(v.clone()))
        }
    }

    /// Greedy Riesz decomposition `c = c_1 + ... + c_k` with `0 <= c_i <= d_i`.
    /// Only for ambients whose fibers all have depth 1.
    pub fn riesz_decompose(&self, c: &AVec, ds: &[AVec]) -> Result<Vec<AVec>, LGroupError> {
        if self.ambient.fibers().iter().any(|f| f.depth() != 1) {
            return Err(LGroupError::Precondition("Riesz decomposition needs depth-1 fibers".into()));
        }
        self.check_positive(c)?;
        let mut total = AVec::zeros(self.ambient.total_dim());
        for d in ds {
            self.check_positive(d)?;
            total = self.ambient.add(&total, d)?;
        }
        if !self.ambient.le(c, &total)? {
            return Err(LGroupError::Precondition("c is not below the sum of the parts".into()));
        }
        let mut rest = c.clone();
        let mut parts = Vec::with_capacity(ds.len());
        for d in ds {
            let part = self.ambient.meet(&rest, d)?;
            rest = self.ambient.sub(&rest, &part)?;
            parts.push(part);
        }
        debug_assert!(rest.is_zero());
        Ok(parts)
    }

    /// `(a - a∧b, b - a∧b)` for positive `a, b`.
    pub fn disjointify(&self, a: &AVec, b: &AVec) -> Result<(AVec, AVec), LGroupError> {
        self.check_positive(a)?;
        self.check_positive(b)?;
        let m = self.ambient.meet(a, b)?;
        Ok((self.ambient.sub(a, &m)?, self.ambient.sub(b, &m)?))
    }
}

/// Positive parts, joins and meets of the basis and of pairwise sums and
/// differences that fall outside the lattice.
fn pairwise_missing(ambient: &Ambient, lattice: &IntLattice) -> Vec<AVec> {
    let basis: Vec<AVec> = lattice.basis().iter().cloned().map(AVec).collect();
    let mut cands = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            cands.push(ambient.add(&basis[i], &basis[j]).expect("shape"));
            cands.push(ambient.sub(&basis[i], &basis[j]).expect("shape"));
        }
    }
    let mut out = Vec::new();
    let mut push = |v: AVec| {
        if !lattice.contains(&v.0) && !out.contains(&v) {
            out.push(v);
        }
    };
    for c in &cands {
        push(ambient.pos_part(c).expect("shape"));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            push(ambient.join(&basis[i], &basis[j]).expect("shape"));
            push(ambient.meet(&basis[i], &basis[j]).expect("shape"));
        }
    }
    out
}

/// Exact closure certificate; returns a vector of the lattice closure that
/// is missing from `lattice`, or `None` when `lattice` is closed under `⁺`.
pub(crate) fn sign_region_defect(ambient: &Ambient, lattice: &IntLattice) -> Option<AVec> {
    for pattern in all_patterns(ambient) {
        let cut = lattice.section(&ambient.zeroed_coordinates(&pattern)).expect("in range");
        if cut.is_zero() {
            continue;
        }
        let support = pattern.support();
        // Leading admissible coordinate of each supported fiber.
        let leads: Vec<usize> = support.iter().map(|&i| ambient.fiber_range(i).end - pattern.0[i]).collect();
        let columns: Vec<IntVec> = leads.iter().map(|&c| cut.basis().iter().map(|b| b[c].clone()).collect()).collect();
        for mask in 0u64..(1u64 << support.len()) {
            let rows: Vec<IntVec> = columns
                .iter()
                .enumerate()
                .map(|(k, col)| if mask >> k & 1 == 1 { col.clone() } else { col.iter().map(|x| -x).collect() })
                .collect();
            if !strictly_feasible(rows) {
                continue;
            }
            let positive: Vec<usize> = (0..support.len()).filter(|&k| mask >> k & 1 == 1).map(|k| support[k]).collect();
            for b in cut.basis() {
                let p = ambient.restrict_to_fibers(&AVec(b.clone()), &positive);
                if !lattice.contains(&p.0) {
                    return Some(p);
                }
            }
        }
    }
    None
}

fn normalize_row(mut r: IntVec) -> IntVec {
    let g = r.iter().fold(Int::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    if !g.is_zero() && g != Int::from(1) {
        for x in r.iter_mut() {
            *x /= &g;
        }
    }
    r
}

/// Whether some rational `x` has `r · x > 0` for every row, by
/// Fourier-Motzkin elimination on the homogeneous strict system.
pub(crate) fn strictly_feasible(rows: Vec<IntVec>) -> bool {
    let Some(width) = rows.first().map(Vec::len) else { return true };
    let mut rows: Vec<IntVec> = rows.into_iter().map(normalize_row).collect();
    rows.sort();
    rows.dedup();
    for var in 0..width {
        if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
            return false;
        }
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r[var].is_positive() {
                pos.push(r);
            } else if r[var].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let (a, b) = (-&n[var], p[var].clone());
                let combo: IntVec = p.iter().zip(n).map(|(x, y)| x * &a + y * &b).collect();
                next.push(normalize_row(combo));
            }
        }
        next.sort();
        next.dedup();
        rows = next;
    }
    rows.iter().all(|r| r.iter().any(|x| !x.is_zero()))
}

/// Some lattice point in the box whose positive part escapes the lattice.
fn box_counterexample(ambient: &Ambient, lattice: &IntLattice, radius: u32) -> Option<AVec> {
    let mut found = None;
    for_each_point_in_box(lattice, radius, &mut |v| {
        let h = AVec(v.to_vec());
        let p = ambient.pos_part(&h).expect("shape");
        if !lattice.contains(&p.0) {
            found = Some(h);
            false
        } else {
            true
        }
    });
    found
}

/// Visits every lattice point with all entries in `[-radius, radius]`,
/// stopping early when `visit` returns false.
pub fn for_each_point_in_box(lattice: &IntLattice, radius: u32, visit: &mut dyn FnMut(&[Int]) -> bool) {
    let pivots = lattice.pivots();
    let dim = lattice.dim();
    let r = Int::from(radius);
    // Columns fully determined once row k is chosen: [pivots[k], pivots[k+1]).
    let mut ranges = Vec::with_capacity(pivots.len());
    for k in 0..pivots.len() {
        let end = if k + 1 < pivots.len() { pivots[k + 1] } else { dim };
        ranges.push(pivots[k]..end);
    }
    let mut v = vec![Int::zero(); dim];
    fn rec(
        k: usize,
        basis: &[IntVec],
        pivots: &[usize],
        ranges: &[std::ops::Range<usize>],
        r: &Int,
        v: &mut IntVec,
        visit: &mut dyn FnMut(&[Int]) -> bool,
    ) -> bool {
        if k == basis.len() {
            return visit(v);
        }
        let row = &basis[k];
        let p = pivots[k];
        let piv = &row[p];
        // v[p] + c * piv in [-r, r]
        let lo = num_integer::Integer::div_ceil(&(-r - &v[p]), piv);
        let hi = num_integer::Integer::div_floor(&(r - &v[p]), piv);
        let mut c = lo;
        while c <= hi {
            for (x, y) in v.iter_mut().zip(row) {
                *x += &c * y;
            }
            let inside = ranges[k].clone().all(|j| v[j].abs() <= *r);
            let keep_going = !inside || rec(k + 1, basis, pivots, ranges, r, v, visit);
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &c * y;
            }
            if !keep_going {
                return false;
            }
            c += 1;
        }
        true
    }
    if pivots.is_empty() {
        visit(&v);
        return;
    }
    rec(0, lattice.basis(), &pivots, &ranges, &r, &mut v, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(d: &[usize]) -> Ambient {
        Ambient::from_depths(d).unwrap()
    }

    fn basis(rows: &[&[i64]]) -> Vec<IntVec> {
        rows.iter().map(|r| AVec::from_i64(r).0).collect()
    }

    #[test]
    fn full_examples() {
        assert_eq!(LGroup::full(amb(&[1, 1])).lattice().basis(), &basis(&[&[1, 0], &[0, 1]])[..]);
        let lex = LGroup::full(amb(&[2]));
        assert_eq!(lex.lattice().basis(), &basis(&[&[1, 0], &[0, 1]])[..]);
        assert!(!lex.is_archimedean());
        assert_eq!(LGroup::full(amb(&[1])).lattice().rank(), 1);
    }

    #[test]
    fn generate_examples() {
        let g =
            LGroup::generate(amb(&[1, 1, 1]), &[AVec::from_i64(&[1, 1, 0]), AVec::from_i64(&[3, 0, 0])], 5).unwrap();
        assert_eq!(g.lattice().basis(), &basis(&[&[1, 0, 0], &[0, 1, 0]])[..]);
        assert_eq!(g.closure_status(), ClosureStatus::Certified { box_checked: 5 });

        let g = LGroup::generate(amb(&[1, 1]), &[AVec::from_i64(&[1, 0])], 5).unwrap();
        assert_eq!(g.lattice().basis(), &basis(&[&[1, 0]])[..]);

        let g = LGroup::generate(amb(&[1, 1]), &[AVec::from_i64(&[1, 1])], 5).unwrap();
        assert_eq!(g.lattice().basis(), &basis(&[&[1, 1]])[..]);
    }

    #[test]
    fn generate_in_lex_fibers() {
        // (1,1 | 0) and (0,1 | 1): the difference (1,0 | -1) has positive
        // part (1,0 | 0), which forces the whole first fiber.
        let g = LGroup::generate(amb(&[2, 1]), &[AVec::from_i64(&[1, 1, 0]), AVec::from_i64(&[0, 1, 1])], 3).unwrap();
        assert!(g.contains(&AVec::from_i64(&[1, 0, 0])));
        assert!(box_counterexample(g.ambient(), g.lattice(), 4).is_none());
        // A lex-diagonal stays closed: every element has equal fiber signs.
        let d =
            LGroup::generate(amb(&[2, 2]), &[AVec::from_i64(&[1, 0, 1, 0]), AVec::from_i64(&[0, 1, 0, 1])], 3).unwrap();
        assert_eq!(d.lattice().rank(), 2);
    }

    #[test]
    fn feasibility_basics() {
        assert!(strictly_feasible(basis(&[&[1, 0], &[0, 1]])));
        assert!(!strictly_feasible(basis(&[&[1, 1], &[-1, -1]])));
        assert!(!strictly_feasible(basis(&[&[1, 0], &[-1, 1], &[0, -1]])));
        assert!(strictly_feasible(basis(&[&[1, 0], &[-1, 1]])));
        assert!(!strictly_feasible(basis(&[&[0, 0]])));
    }

    #[test]
    fn direct_sum_and_lex_extension_examples() {
        let z = LGroup::full(amb(&[1]));
        assert_eq!(z.direct_sum(&z), LGroup::full(amb(&[1, 1])));
        let s = LGroup::full(amb(&[2])).direct_sum(&z);
        assert_eq!(s.ambient().depths(), vec![2, 1]);

        assert_eq!(z.lex_extension(), LGroup::full(amb(&[2])));
        let e = LGroup::full(amb(&[1, 1])).lex_extension();
        let expected = IntLattice::new(4, basis(&[&[0, 1, 0, 0], &[0, 0, 0, 1], &[1, 0, 1, 0]])).unwrap();
        assert_eq!(e.lattice(), &expected);
        assert!(!e.is_archimedean());
    }

    #[test]
    fn lex_extension_order_matches_lex_product() {
        let g = LGroup::full(amb(&[1, 1]));
        let e = g.lex_extension();
        for n in -2i64..=2 {
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    let image = AVec::from_i64(&[n, a, n, b]);
                    assert!(e.contains(&image));
                    let expected = n > 0 || (n == 0 && a >= 0 && b >= 0);
                    assert_eq!(e.ambient().is_nonneg(&image), expected);
                }
            }
        }
    }

    #[test]
    fn archimedean_examples() {
        assert!(LGroup::full(amb(&[1, 1])).is_archimedean());
        let (a, b) = LGroup::full(amb(&[2])).archimedean_witness().unwrap();
        assert_eq!(LGroup::full(amb(&[2])).ambient().levels(&a.0), LevelPattern(vec![1]));
        assert_eq!(LGroup::full(amb(&[2])).ambient().levels(&b.0), LevelPattern(vec![2]));
        assert!(LGroup::full(amb(&[1])).is_archimedean());
    }

    #[test]
    fn realizable_pattern_examples() {
        let p = |v: &[usize]| LevelPattern(v.to_vec());
        assert_eq!(
            LGroup::full(amb(&[1, 1])).realizable_level_patterns(),
            vec![p(&[0, 0]), p(&[0, 1]), p(&[1, 0]), p(&[1, 1])]
        );
        assert_eq!(LGroup::full(amb(&[2])).realizable_level_patterns(), vec![p(&[0]), p(&[1]), p(&[2])]);
        let diag = LGroup::generate(amb(&[1, 1]), &[AVec::from_i64(&[1, 1])], 3).unwrap();
        assert_eq!(diag.realizable_level_patterns(), vec![p(&[0, 0]), p(&[1, 1])]);
    }

    #[test]
    fn riesz_examples() {
        let g = LGroup::full(amb(&[1, 1]));
        let d = AVec::from_i64(&[1, 1]);
        let parts = g.riesz_decompose(&AVec::from_i64(&[1, 2]), &[d.clone(), d.clone()]).unwrap();
        assert_eq!(parts, vec![AVec::from_i64(&[1, 1]), AVec::from_i64(&[0, 1])]);
        let parts = g.riesz_decompose(&AVec::zeros(2), &[d.clone(), d.clone()]).unwrap();
        assert!(parts.iter().all(AVec::is_zero));
        let parts = g.riesz_decompose(&d, &[d.clone(), AVec::from_i64(&[2, 0])]).unwrap();
        assert_eq!(parts, vec![d.clone(), AVec::zeros(2)]);
        assert!(g.riesz_decompose(&AVec::from_i64(&[3, 0]), std::slice::from_ref(&d)).is_err());
        assert!(LGroup::full(amb(&[2])).riesz_decompose(&AVec::zeros(2), &[]).is_err());
    }

    #[test]
    fn disjointify_examples() {
        let g = LGroup::full(amb(&[1, 1]));
        let (a, b) = g.disjointify(&AVec::from_i64(&[2, 1]), &AVec::from_i64(&[1, 3])).unwrap();
        assert_eq!((a, b), (AVec::from_i64(&[1, 0]), AVec::from_i64(&[0, 2])));
        let (a, b) = g.disjointify(&AVec::from_i64(&[2, 0]), &AVec::from_i64(&[0, 3])).unwrap();
        assert_eq!((a, b), (AVec::from_i64(&[2, 0]), AVec::from_i64(&[0, 3])));
        let (a, b) = g.disjointify(&AVec::from_i64(&[2, 5]), &AVec::from_i64(&[2, 5])).unwrap();
        assert!(a.is_zero() && b.is_zero());
        assert!(matches!(g.disjointify(&AVec::from_i64(&[-1, 0]), &AVec::zeros(2)), Err(LGroupError::Negative(_))));
    }

    #[test]
    fn box_enumeration_counts_points() {
        let mut n = 0;
        for_each_point_in_box(&IntLattice::full(2), 2, &mut |_| {
            n += 1;
            true
        });
        assert_eq!(n, 25);
        let diag = IntLattice::new(2, basis(&[&[1, 1], &[0, 2]])).unwrap();
        let mut m = 0;
        for_each_point_in_box(&diag, 1, &mut |_| {
            m += 1;
            true
        });
        // Points of the even-sum lattice in [-1,1]^2.
        assert_eq!(m, 5);
    }
}
