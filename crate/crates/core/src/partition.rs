//! Integer partitions and finite index sequences.
//!
//! A partition is a weakly decreasing sequence of positive integers; the
//! empty partition is allowed. Zero parts are stripped at construction, so
//! `(1,0)` and `(1)` are the same value and equality is structural.
//!
//! All values here are immutable and all operations are pure, so they can be
//! shared freely between concurrent workers.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotWeaklyDecreasing(Vec<u32>),
    #[error("partition {partition} has more than {max_len} parts")]
    LengthOverflow { partition: String, max_len: u32 },
    #[error("index sequence has repeated entries: {0:?}")]
    RepeatedEntries(Vec<u32>),
    #[error("malformed partition literal {0:?}, expected e.g. [2,1] or []")]
    BadLiteral(String),
}

/// A partition: weakly decreasing positive parts, zero parts stripped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Canonicalizes `seq`: zeros are dropped, the rest must already be
    /// weakly decreasing.
    pub fn new(seq: impl IntoIterator<Item = u32>) -> Result<Self, PartitionError> {
        let parts: Vec<u32> = seq.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotWeaklyDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    /// Builds from parts known to be weakly decreasing; panics otherwise.
    pub fn from_parts(seq: impl IntoIterator<Item = u32>) -> Self {
        Self::new(seq).expect("invalid partition")
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The staircase (k, k-1, ..., 2, 1); `k = 0` gives the empty partition.
    ///
    /// `staircase(n)` and `staircase(n-1)` are the two staircases attached to
    /// an instance size `n` ((n,...,1) and (n-1,...,1,0) after stripping).
    pub fn staircase(k: u32) -> Self {
        Partition {
            parts: (1..=k).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part at `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiplicity of the part value `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == i).count() as u32
    }

    pub fn first_part(&self) -> u32 {
        self.part(0)
    }

    /// Conjugate partition: column lengths of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let cols = self.first_part() as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            parts.push(self.parts.iter().filter(|&&p| p >= j).count() as u32);
        }
        Partition { parts }
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Partition) -> Self {
        let mut parts: Vec<u32> = self.parts.iter().chain(&other.parts).copied().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The part-wise combination `c*self + other`, both padded with zeros to
    /// length `n`. Fails if either argument has more than `n` parts.
    pub fn scale_add(&self, c: u32, other: &Partition, n: u32) -> Result<Self, PartitionError> {
        for p in [self, other] {
            if p.len() as u32 > n {
                return Err(PartitionError::LengthOverflow {
                    partition: p.to_string(),
                    max_len: n,
                });
            }
        }
        Partition::new((0..n as usize).map(|i| c * self.part(i) + other.part(i)))
    }

    /// All ordered pairs `(eta, zeta)` with `eta ∪ zeta = self`, each exactly
    /// once. There are `prod_i (m_i + 1)` of them.
    pub fn splits(&self) -> Vec<(Partition, Partition)> {
        // Distinct part values in descending order with multiplicities.
        let mut values: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match values.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => values.push((p, 1)),
            }
        }
        let mut out = Vec::new();
        let mut take = vec![0u32; values.len()];
        loop {
            let mut eta = Vec::new();
            let mut zeta = Vec::new();
            for (idx, &(v, m)) in values.iter().enumerate() {
                for _ in 0..take[idx] {
                    eta.push(v);
                }
                for _ in 0..m - take[idx] {
                    zeta.push(v);
                }
            }
            out.push((Partition { parts: eta }, Partition { parts: zeta }));
            // Odometer over 0..=m_i per value.
            let mut i = 0;
            loop {
                if i == values.len() {
                    return out;
                }
                if take[i] < values[i].1 {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }

    /// Index-sequence view padded with zeros to length `n`.
    pub fn to_index_seq(&self, n: usize) -> IndexSeq {
        IndexSeq::new((0..n).map(|i| self.part(i)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| PartitionError::BadLiteral(s.to_string()))?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let v: u32 = piece
                .trim()
                .parse()
                .map_err(|_| PartitionError::BadLiteral(s.to_string()))?;
            parts.push(v);
        }
        Partition::new(parts).map_err(|_| PartitionError::BadLiteral(s.to_string()))
    }
}

/// All partitions of `weight` with at most `max_length` parts, each part at
/// most `max_part`, in descending lexicographic order.
pub fn enumerate_partitions(weight: u32, max_length: u32, max_part: u32) -> Vec<Partition> {
    fn rec(rem: u32, max_part: u32, slots: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition {
                parts: acc.clone(),
            });
            return;
        }
        if slots == 0 {
            return;
        }
        let hi = rem.min(max_part);
        for p in (1..=hi).rev() {
            // Remaining weight must fit in the remaining slots.
            if (rem - p) <= p.saturating_mul(slots - 1) {
                acc.push(p);
                rec(rem - p, p, slots - 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(weight, max_part, max_length, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `weight` with length at most `n` (no part bound).
pub fn partitions_max_length(weight: u32, n: u32) -> Vec<Partition> {
    enumerate_partitions(weight, n, weight.max(1))
}

/// Partitions of `weight` with every part at most `n` (no length bound).
pub fn partitions_max_part(weight: u32, n: u32) -> Vec<Partition> {
    enumerate_partitions(weight, weight.max(1), n)
}

/// A finite sequence of non-negative integers. Unlike [`Partition`], explicit
/// zeros are kept and order matters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSeq {
    entries: Vec<u32>,
}

impl IndexSeq {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        IndexSeq {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// True when all entries are pairwise distinct (membership in A_n).
    pub fn is_distinct(&self) -> bool {
        let mut seen = self.entries.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Sorts into strictly decreasing order, returning the sorted sequence
    /// together with the sign of the sorting permutation. Fails on repeated
    /// entries.
    pub fn sort_with_sign(&self) -> Result<SignedSort, PartitionError> {
        if !self.is_distinct() {
            return Err(PartitionError::RepeatedEntries(self.entries.clone()));
        }
        let mut inversions = 0usize;
        for i in 0..self.entries.len() {
            for j in i + 1..self.entries.len() {
                if self.entries[i] < self.entries[j] {
                    inversions += 1;
                }
            }
        }
        let mut sorted = self.entries.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SignedSort {
            sorted: IndexSeq { entries: sorted },
            sign: if inversions % 2 == 0 { 1 } else { -1 },
        })
    }

    /// Entry-wise difference with the staircase (n-1, ..., 1, 0), viewed as a
    /// partition. Only valid for strictly decreasing sequences.
    pub fn strict_to_partition(&self) -> Result<Partition, PartitionError> {
        let n = self.entries.len() as u32;
        let parts: Vec<u32> = self
            .entries
            .iter()
            .enumerate()
            .map(|(j, &e)| e - (n - 1 - j as u32))
            .collect();
        Partition::new(parts)
    }
}

impl fmt::Display for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for IndexSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSeq{self}")
    }
}

/// Result of sorting an [`IndexSeq`] with distinct entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSort {
    pub sorted: IndexSeq,
    pub sign: i8,
}
