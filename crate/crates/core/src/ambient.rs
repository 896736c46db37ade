//! Lexicographically ordered fibers `Z^k` and finite products of them.
//!
//! Inside a fiber the first entry is the most significant one. The level of
//! a nonzero tuple counts the entries from its leading nonzero entry to the
//! end, so the convex subgroups of a depth-`k` fiber are exactly the tuples of
//! level at most `j` for `j = 0..=k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{join_ints, Int, IntVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmbientError {
    #[error("an ambient needs at least one fiber")]
    Empty,
    #[error("fiber depth must be at least 1")]
    ZeroDepth,
    #[error("vector has {found} entries, ambient has dimension {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("level pattern has {found} entries, ambient has {expected} fibers")]
    PatternMismatch { expected: usize, found: usize },
}

/// A lexicographically ordered `Z^depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fiber {
    depth: usize,
}

impl Fiber {
    pub fn new(depth: usize) -> Result<Self, AmbientError> {
        if depth == 0 {
            Err(AmbientError::ZeroDepth)
        } else {
            Ok(Fiber { depth })
        }
    }

    pub fn depth(self) -> usize {
        self.depth
    }

    fn check(self, t: &[Int]) -> Result<(), AmbientError> {
        if t.len() == self.depth {
            Ok(())
        } else {
            Err(AmbientError::ShapeMismatch { expected: self.depth, found: t.len() })
        }
    }

    /// Sign of the leading nonzero entry.
    pub fn lex_sign(self, t: &[Int]) -> Result<i8, AmbientError> {
        self.check(t)?;
        Ok(lex_sign(t))
    }

    pub fn level(self, t: &[Int]) -> Result<usize, AmbientError> {
        self.check(t)?;
        Ok(level(t))
    }
}

pub(crate) fn lex_sign(t: &[Int]) -> i8 {
    match t.iter().find(|x| !x.is_zero()) {
        None => 0,
        Some(x) if x.is_positive() => 1,
        Some(_) => -1,
    }
}

pub(crate) fn level(t: &[Int]) -> usize {
    match t.iter().position(|x| !x.is_zero()) {
        None => 0,
        Some(p) => t.len() - p,
    }
}

fn lex_cmp(a: &[Int], b: &[Int]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// One admissible level per fiber; the pattern cuts out the convex subgroup
/// of all ambient vectors whose fiber `i` has level at most `levels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelPattern(pub Vec<usize>);

impl LevelPattern {
    pub fn zero(len: usize) -> Self {
        LevelPattern(vec![0; len])
    }

    pub fn levels(&self) -> &[usize] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }

    /// Fibers with a positive level.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn le(&self, other: &LevelPattern) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &LevelPattern) -> LevelPattern {
        LevelPattern(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn join(&self, other: &LevelPattern) -> LevelPattern {
        LevelPattern(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

impl fmt::Display for LevelPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// An element of an ambient product: the concatenation of its fiber tuples.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVec(pub IntVec);

impl AVec {
    pub fn from_i64(values: &[i64]) -> Self {
        AVec(values.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        AVec(vec![Int::zero(); len])
    }

    pub fn as_slice(&self) -> &[Int] {
        &self.0
    }

    pub fn into_inner(self) -> IntVec {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Debug for AVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join_ints(&self.0))
    }
}

impl fmt::Display for AVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join_ints(&self.0))
    }
}

/// A finite product of lex fibers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    fibers: Vec<Fiber>,
    offsets: Vec<usize>,
    total_dim: usize,
}

impl Ambient {
    pub fn new(fibers: Vec<Fiber>) -> Result<Self, AmbientError> {
        if fibers.is_empty() {
            return Err(AmbientError::Empty);
        }
        let mut offsets = Vec::with_capacity(fibers.len());
        let mut total_dim = 0;
        for f in &fibers {
            offsets.push(total_dim);
            total_dim += f.depth();
        }
        Ok(Ambient { fibers, offsets, total_dim })
    }

    /// Convenience constructor from fiber depths.
    pub fn from_depths(depths: &[usize]) -> Result<Self, AmbientError> {
        Self::new(depths.iter().map(|&d| Fiber::new(d)).collect::<Result<_, _>>()?)
    }

    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn depths(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.depth()).collect()
    }

    pub fn num_fibers(&self) -> usize {
        self.fibers.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn fiber_range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i] + self.fibers[i].depth()
    }

    /// Concatenation of the two fiber lists.
    pub fn concat(&self, other: &Ambient) -> Ambient {
        let mut fibers = self.fibers.clone();
        fibers.extend_from_slice(&other.fibers);
        Ambient::new(fibers).expect("nonempty")
    }

    pub fn check(&self, v: &AVec) -> Result<(), AmbientError> {
        if v.len() == self.total_dim {
            Ok(())
        } else {
            Err(AmbientError::ShapeMismatch { expected: self.total_dim, found: v.len() })
        }
    }

    pub fn check_pattern(&self, p: &LevelPattern) -> Result<(), AmbientError> {
        if p.0.len() != self.fibers.len() {
            return Err(AmbientError::PatternMismatch { expected: self.fibers.len(), found: p.0.len() });
        }
        Ok(())
    }

    pub fn fiber_part<'a>(&self, v: &'a [Int], i: usize) -> &'a [Int] {
        &v[self.fiber_range(i)]
    }

    /// Level of every fiber tuple.
    pub fn levels(&self, v: &[Int]) -> LevelPattern {
        debug_assert_eq!(v.len(), self.total_dim);
        LevelPattern((0..self.fibers.len()).map(|i| level(self.fiber_part(v, i))).collect())
    }

    pub fn signs(&self, v: &[Int]) -> Vec<i8> {
        (0..self.fibers.len()).map(|i| lex_sign(self.fiber_part(v, i))).collect()
    }

    /// The pattern giving every fiber its full depth.
    pub fn top_pattern(&self) -> LevelPattern {
        LevelPattern(self.depths())
    }

    /// Coordinates forced to zero by a level pattern: the top
    /// `depth - level` entries of each fiber.
    pub fn zeroed_coordinates(&self, p: &LevelPattern) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, f) in self.fibers.iter().enumerate() {
            let start = self.offsets[i];
            out.extend(start..start + (f.depth() - p.0[i].min(f.depth())));
        }
        out
    }

    fn zip_fibers(&self, a: &AVec, b: &AVec, pick: impl Fn(Ordering) -> bool) -> Result<AVec, AmbientError> {
        self.check(a)?;
        self.check(b)?;
        let mut out = Vec::with_capacity(self.total_dim);
        for i in 0..self.fibers.len() {
            let (x, y) = (self.fiber_part(&a.0, i), self.fiber_part(&b.0, i));
            out.extend_from_slice(if pick(lex_cmp(x, y)) { x } else { y });
        }
        Ok(AVec(out))
    }

    /// Fiberwise lex maximum.
    pub fn join(&self, a: &AVec, b: &AVec) -> Result<AVec, AmbientError> {
        self.zip_fibers(a, b, |o| o.is_ge())
    }

    /// Fiberwise lex minimum.
    pub fn meet(&self, a: &AVec, b: &AVec) -> Result<AVec, AmbientError> {
        self.zip_fibers(a, b, |o| o.is_le())
    }

    pub fn add(&self, a: &AVec, b: &AVec) -> Result<AVec, AmbientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(AVec(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect()))
    }

    pub fn sub(&self, a: &AVec, b: &AVec) -> Result<AVec, AmbientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(AVec(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect()))
    }

    pub fn neg(&self, a: &AVec) -> Result<AVec, AmbientError> {
        self.check(a)?;
        Ok(AVec(a.0.iter().map(|x| -x).collect()))
    }

    pub fn scale(&self, a: &AVec, n: &Int) -> Result<AVec, AmbientError> {
        self.check(a)?;
        Ok(AVec(a.0.iter().map(|x| x * n).collect()))
    }

    /// `a ∨ 0`: keeps exactly the positive fibers.
    pub fn pos_part(&self, a: &AVec) -> Result<AVec, AmbientError> {
        self.check(a)?;
        Ok(self.keep_fibers(a, |s| s > 0))
    }

    /// `(-a) ∨ 0`.
    pub fn neg_part(&self, a: &AVec) -> Result<AVec, AmbientError> {
        self.pos_part(&self.neg(a)?)
    }

    pub fn abs(&self, a: &AVec) -> Result<AVec, AmbientError> {
        self.check(a)?;
        let mut out = a.0.clone();
        for i in 0..self.fibers.len() {
            if lex_sign(self.fiber_part(&a.0, i)) < 0 {
                for x in &mut out[self.fiber_range(i)] {
                    *x = -&*x;
                }
            }
        }
        Ok(AVec(out))
    }

    fn keep_fibers(&self, a: &AVec, keep: impl Fn(i8) -> bool) -> AVec {
        let mut out = a.0.clone();
        for i in 0..self.fibers.len() {
            if !keep(lex_sign(self.fiber_part(&a.0, i))) {
                for x in &mut out[self.fiber_range(i)] {
                    *x = Int::zero();
                }
            }
        }
        AVec(out)
    }

    /// Projection keeping the fibers listed in `keep` and zeroing the rest.
    pub fn restrict_to_fibers(&self, a: &AVec, keep: &[usize]) -> AVec {
        let mut out = AVec::zeros(self.total_dim);
        for &i in keep {
            let r = self.fiber_range(i);
            out.0[r.clone()].clone_from_slice(&a.0[r]);
        }
        out
    }

    pub fn is_nonneg(&self, a: &AVec) -> bool {
        (0..self.fibers.len()).all(|i| lex_sign(self.fiber_part(&a.0, i)) >= 0)
    }

    /// `a <= b` in the product order.
    pub fn le(&self, a: &AVec, b: &AVec) -> Result<bool, AmbientError> {
        Ok(self.is_nonneg(&self.sub(b, a)?))
    }
}
