//! Exact integer lattices (subgroups of `Z^n`) in Hermite normal form.
//!
//! Every [`IntLattice`] keeps its basis in row-style Hermite normal form:
//! rows are in echelon form, each pivot is positive and entries above a
//! pivot lie in `[0, pivot)`. That form is unique, so two lattices are equal
//! iff their bases are identical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision integer used throughout the crate.
pub type Int = BigInt;

/// An integer vector.
pub type IntVec = Vec<Int>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {position} out of range for dimension {dim}")]
    InvalidPosition { position: usize, dim: usize },
    #[error("supplied sublattice is not contained in the lattice")]
    NotContained,
    #[error("supplied sublattices are not coordinate sections of the lattice")]
    NotSaturated,
}

/// A subgroup of `Z^dim` with its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntLattice {
    dim: usize,
    basis: Vec<IntVec>,
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLattice[{}]{{", self.dim)?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})", join_ints(row))?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn join_ints(v: &[Int]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Converts small integers into an [`IntVec`].
pub fn ivec(values: &[i64]) -> IntVec {
    values.iter().map(|&x| Int::from(x)).collect()
}

fn check_dim(v: &[Int], dim: usize) -> Result<(), LatticeError> {
    if v.len() == dim {
        Ok(())
    } else {
        Err(LatticeError::DimensionMismatch { expected: dim, found: v.len() })
    }
}

/// `target -= q * row`, over the whole row.
fn sub_multiple(target: &mut [Int], row: &[Int], q: &Int) {
    if q.is_zero() {
        return;
    }
    for (t, r) in target.iter_mut().zip(row) {
        if !r.is_zero() {
            *t -= q * r;
        }
    }
}

/// Row-style Hermite normal form of `rows` (all of length `width`).
/// Zero rows are dropped.
fn hermite_rows(mut rows: Vec<IntVec>, width: usize) -> Vec<IntVec> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let n = rows.len();
    let mut rank = 0;
    for col in 0..width {
        if rank == n {
            break;
        }
        loop {
            let pivot = (rank..n)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            let mut clean = true;
            for i in rank + 1..n {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[rank][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[rank], &q);
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rank < n && !rows[rank][col].is_zero() {
            if rows[rank][col].is_negative() {
                for x in rows[rank].iter_mut() {
                    *x = -&*x;
                }
            }
            for i in 0..rank {
                let q = rows[i][col].div_floor(&rows[rank][col]);
                let (head, tail) = rows.split_at_mut(rank);
                sub_multiple(&mut head[i], &tail[0], &q);
            }
            rank += 1;
        }
    }
    rows.truncate(rank);
    rows
}

/// Hermite form of `[prefix | suffix]` rows; returns the suffixes of the rows
/// whose prefix vanishes, which span `{ suffix : prefix = 0 }`.
fn kernel_of_prefix(rows: Vec<(IntVec, IntVec)>, prefix_len: usize, dim: usize) -> Vec<IntVec> {
    let joined: Vec<IntVec> = rows
        .into_iter()
        .map(|(mut p, s)| {
            p.extend(s);
            p
        })
        .collect();
    hermite_rows(joined, prefix_len + dim)
        .into_iter()
        .filter(|r| r[..prefix_len].iter().all(Zero::is_zero))
        .map(|r| r[prefix_len..].to_vec())
        .collect()
}

impl IntLattice {
    /// Canonical basis of the subgroup of `Z^dim` generated by `vectors`.
    pub fn new(dim: usize, vectors: Vec<IntVec>) -> Result<Self, LatticeError> {
        for v in &vectors {
            check_dim(v, dim)?;
        }
        Ok(Self::from_rows(dim, vectors))
    }

    fn from_rows(dim: usize, vectors: Vec<IntVec>) -> Self {
        IntLattice { dim, basis: hermite_rows(vectors, dim) }
    }

    pub fn zero(dim: usize) -> Self {
        IntLattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect();
        IntLattice { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[IntVec] {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero")).collect()
    }

    /// Membership test; the vector must have the lattice dimension.
    pub fn member(&self, v: &[Int]) -> Result<bool, LatticeError> {
        check_dim(v, self.dim)?;
        Ok(self.contains(v))
    }

    /// Unchecked membership (dimensions are asserted in debug builds).
    pub fn contains(&self, v: &[Int]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let mut rest = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = rest[p].div_mod_floor(&row[p]);
            if !r.is_zero() {
                return false;
            }
            sub_multiple(&mut rest, row, &q);
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &IntLattice) -> bool {
        self.dim == other.dim && self.basis.iter().all(|b| other.contains(b))
    }

    fn same_dim(&self, other: &IntLattice) -> Result<(), LatticeError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch { expected: self.dim, found: other.dim })
        }
    }

    /// Canonical form of `self + other`.
    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice, LatticeError> {
        self.same_dim(other)?;
        let rows = self.basis.iter().chain(other.basis.iter()).cloned().collect();
        Ok(Self::from_rows(self.dim, rows))
    }

    /// Canonical form of `self ∩ other`, from the kernel of the stacked bases.
    pub fn intersect(&self, other: &IntLattice) -> Result<IntLattice, LatticeError> {
        self.same_dim(other)?;
        let zero = vec![Int::zero(); self.dim];
        let rows = self
            .basis
            .iter()
            .map(|b| (b.clone(), b.clone()))
            .chain(other.basis.iter().map(|b| (b.clone(), zero.clone())))
            .collect();
        let kernel = kernel_of_prefix(rows, self.dim, self.dim);
        Ok(Self::from_rows(self.dim, kernel))
    }

    /// `{ v in self : v_j = 0 for every j in zeroed }`.
    pub fn section(&self, zeroed: &[usize]) -> Result<IntLattice, LatticeError> {
        if let Some(&position) = zeroed.iter().find(|&&j| j >= self.dim) {
            return Err(LatticeError::InvalidPosition { position, dim: self.dim });
        }
        if zeroed.is_empty() || self.is_zero() {
            return Ok(self.clone());
        }
        let rows = self.basis.iter().map(|b| (zeroed.iter().map(|&j| b[j].clone()).collect(), b.clone())).collect();
        let kernel = kernel_of_prefix(rows, zeroed.len(), self.dim);
        Ok(Self::from_rows(self.dim, kernel))
    }

    /// Image of the lattice under the coordinate projection onto `coords`
    /// (in the given order).
    pub fn project(&self, coords: &[usize]) -> Result<IntLattice, LatticeError> {
        if let Some(&position) = coords.iter().find(|&&j| j >= self.dim) {
            return Err(LatticeError::InvalidPosition { position, dim: self.dim });
        }
        let rows = self.basis.iter().map(|b| coords.iter().map(|&j| b[j].clone()).collect()).collect();
        Ok(Self::from_rows(coords.len(), rows))
    }

    /// Finds `v` in `self` outside every listed section, or `None` when
    /// `self` equals one of them.
    ///
    /// Each section must be `self ∩ W` for a rational subspace `W`, so a
    /// proper section has infinite index and finitely many of them cannot
    /// cover `self`. Candidates are the basis vectors followed by points
    /// `sum_k t^k b_k` on the moment curve: a proper section meets that curve
    /// in at most `rank - 1` values of `t`.
    pub fn escapes_sections(&self, sections: &[IntLattice]) -> Result<Option<IntVec>, LatticeError> {
        for s in sections {
            self.same_dim(s)?;
            if !s.is_sublattice_of(self) {
                return Err(LatticeError::NotContained);
            }
        }
        if sections.iter().any(|s| s == self) {
            return Ok(None);
        }
        let avoids = |v: &IntVec| sections.iter().all(|s| !s.contains(v));
        if sections.is_empty() {
            return Ok(Some(self.basis.first().cloned().unwrap_or_else(|| vec![Int::zero(); self.dim])));
        }
        if let Some(b) = self.basis.iter().find(|b| avoids(b)) {
            return Ok(Some(b.clone()));
        }
        let d = self.rank();
        let tries = sections.len() * d.saturating_sub(1) + 1;
        for t in 1..=tries as i64 {
            let t = Int::from(t);
            let mut v = vec![Int::zero(); self.dim];
            let mut power = Int::one();
            for b in &self.basis {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &power * y;
                }
                power *= &t;
            }
            if avoids(&v) {
                return Ok(Some(v));
            }
        }
        Err(LatticeError::NotSaturated)
    }
}
