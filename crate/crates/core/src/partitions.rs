//! Partitions, exponent vectors and the small amount of Young-diagram
//! combinatorics the bundle computations need: monomial bases, horizontal
//! strips and single-box Pieri additions.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers, stored without
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails if `parts` is not
    /// weakly decreasing.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(k)`, indexing the symmetric power `S^k`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![k] }
        }
    }

    /// Two-row partition `(a, b)` from signed entries; `None` unless
    /// `a >= b >= 0`.
    pub fn two_rows(a: i64, b: i64) -> Option<Self> {
        if b < 0 || a < b {
            return None;
        }
        Partition::new(vec![u32::try_from(a).ok()?, u32::try_from(b).ok()?]).ok()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|μ|`, the number of boxes.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// True when `self ⊆ larger` and the skew shape `larger / self` has no
    /// two boxes in one column.
    pub fn is_horizontal_strip_of(&self, larger: &Partition) -> bool {
        (0..larger.len().max(self.len()))
            .all(|i| larger.part(i) >= self.part(i) && self.part(i) >= larger.part(i + 1))
    }

    /// Subtracts the last column when the partition has exactly `ambient`
    /// rows. Two partitions give isomorphic `SL(ambient)`-modules iff their
    /// normalizations agree.
    pub fn sl_normalized(&self, ambient: usize) -> Partition {
        if self.len() == ambient && ambient > 0 {
            let last = self.parts[ambient - 1];
            Partition::new(self.parts.iter().map(|p| p - last).collect::<Vec<_>>())
                .expect("subtracting a constant keeps the order")
        } else {
            self.clone()
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// An exponent vector in `Z^{n+1}`. Polynomial monomials have nonnegative
/// entries; Laurent monomials may not.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn new(exponents: impl Into<Vec<i64>>) -> Self {
        MultiIndex(exponents.into())
    }

    pub fn zero(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    /// The unit vector `e_j` of length `len`.
    pub fn unit(len: usize, j: usize) -> Self {
        let mut v = vec![0; len];
        v[j] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// `∏ e_j!` for a polynomial multi-index.
    pub fn factorial(&self) -> u128 {
        self.0
            .iter()
            .map(|&e| (1..=e as u128).product::<u128>())
            .product()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 1..=k as u128 {
        // exact at every step: acc * (n-k+t) / t is binom(n-k+t, t)
        acc = acc * (n as u128 - k as u128 + t) / t;
    }
    acc
}

/// `m! / (i_0! ⋯ i_n!)`.
pub fn multinomial(m: u64, index: &MultiIndex) -> Result<u128> {
    if !index.is_polynomial() {
        return Err(Error::InvalidArgument(format!(
            "multinomial needs a nonnegative multi-index, got {index}"
        )));
    }
    if index.degree() != m as i64 {
        return Err(Error::DegreeMismatch {
            expected: m as i64,
            found: index.degree(),
        });
    }
    let mut acc: u128 = 1;
    let mut running: u64 = 0;
    for &e in &index.0 {
        running += e as u64;
        acc = acc
            .checked_mul(binomial(running, e as u64))
            .ok_or(Error::Overflow("multinomial"))?;
    }
    Ok(acc)
}

/// All exponent vectors of length `n + 1` and degree `k`, in graded-lex
/// order with `x_0 > x_1 > ⋯ > x_n`.
pub fn monomial_basis(n: usize, k: u32) -> Vec<MultiIndex> {
    fn fill(prefix: &mut Vec<i64>, slots: usize, remaining: i64, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(MultiIndex(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, slots - 1, remaining - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(k as u64 + n as u64, n as u64) as usize);
    fill(&mut Vec::with_capacity(n + 1), n + 1, k as i64, &mut out);
    out
}

/// Every `ν ⊆ μ` with at most `max_rows` parts such that `μ / ν` is a
/// horizontal strip, i.e. `μ_i >= ν_i >= μ_{i+1}`. Sorted by size
/// descending, then lexicographically descending.
pub fn horizontal_strips(mu: &Partition, max_rows: usize) -> Vec<Partition> {
    let rows = mu.len();
    let mut out = Vec::new();
    let mut current = vec![0u32; rows];
    fn go(
        i: usize,
        mu: &Partition,
        max_rows: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if i == current.len() {
            let nu = Partition::new(current.clone()).expect("interlacing keeps order");
            if nu.len() <= max_rows {
                out.push(nu);
            }
            return;
        }
        for v in (mu.part(i + 1)..=mu.part(i)).rev() {
            current[i] = v;
            go(i + 1, mu, max_rows, current, out);
        }
    }
    go(0, mu, max_rows, &mut current, &mut out);
    out.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| b.cmp(a)));
    out
}

/// All partitions obtained from `nu` by adding one box, keeping at most
/// `max_rows` rows. Ordered by the row receiving the box.
pub fn pieri_add_one(nu: &Partition, max_rows: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for row in 0..=nu.len() {
        if row >= max_rows {
            break;
        }
        if row > 0 && nu.part(row - 1) <= nu.part(row) {
            continue;
        }
        let mut parts = nu.parts().to_vec();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        out.push(Partition::new(parts).expect("addable corner keeps order"));
    }
    out
}

/// Partitions of `size` with at most `max_parts` parts, lex-descending.
pub fn partitions_of(size: u32, max_parts: usize) -> Vec<Partition> {
    fn go(remaining: u32, cap: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            cur.push(p);
            go(remaining - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, max_parts, &mut Vec::new(), &mut out);
    out
}
