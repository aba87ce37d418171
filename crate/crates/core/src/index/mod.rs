//! Indices, shift vectors and exact formal sums of indices.
//!
//! An [`Index`] is a finite sequence of positive integers. The empty index is
//! a legitimate value: it is the unit of the shuffle-type product [`sha`] and
//! is rejected by every operation that needs a nonempty or admissible index.
//!
//! [`IndexCombination`] is a finite ℚ-linear combination of indices with
//! canonical ordering, so its text form is deterministic.

mod combination;
mod product;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use combination::{Coefficient, IndexCombination};
pub use product::{hast, sha, sha_all, star_single};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("index entries must be positive, got {0:?}")]
    ZeroEntry(Vec<u32>),
    #[error("index {0} is not admissible (needs a nonempty index whose last entry is at least 2)")]
    NotAdmissible(Index),
    #[error("depth mismatch: index {index} has depth {depth}, shift vector has length {shift_len}")]
    DepthMismatch {
        index: Index,
        depth: usize,
        shift_len: usize,
    },
    #[error("hast is undefined on the empty index")]
    HastOnEmpty,
    #[error("cannot distribute a positive total {0} over zero slots")]
    NoSlots(u32),
    #[error("cannot parse index {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("entry overflow while building index")]
    Overflow,
}

/// A finite sequence of positive integers.
///
/// Ordering is canonical: first by depth, then lexicographically by entries.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Self, AlgebraError> {
        if entries.contains(&0) {
            return Err(AlgebraError::ZeroEntry(entries));
        }
        Ok(Self(entries))
    }

    /// The empty index ∅.
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `{a}^l`: the entry `a` repeated `l` times. `l = 0` gives ∅.
    ///
    /// # Panics
    /// If `a == 0`.
    pub fn repeat(a: u32, l: usize) -> Self {
        assert!(a > 0, "index entries must be positive");
        Self(vec![a; l])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        matches!(self.0.last(), Some(&last) if last >= 2)
    }

    pub fn ensure_admissible(&self) -> Result<(), AlgebraError> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(AlgebraError::NotAdmissible(self.clone()))
        }
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Index) -> Index {
        let mut entries = Vec::with_capacity(self.depth() + other.depth());
        entries.extend_from_slice(&self.0);
        entries.extend_from_slice(&other.0);
        Index(entries)
    }

    pub fn push(&mut self, entry: u32) {
        assert!(entry > 0, "index entries must be positive");
        self.0.push(entry);
    }

    /// The dual index under the run decomposition
    /// `({1}^{a_1-1}, b_1+1, …, {1}^{a_n-1}, b_n+1) ↦ ({1}^{b_n-1}, a_n+1, …, {1}^{b_1-1}, a_1+1)`.
    pub fn dual(&self) -> Result<Index, AlgebraError> {
        self.ensure_admissible()?;
        // (a_p, b_p) runs, read left to right.
        let mut runs = Vec::new();
        let mut ones = 0u32;
        for &e in &self.0 {
            if e == 1 {
                ones += 1;
            } else {
                runs.push((ones + 1, e - 1));
                ones = 0;
            }
        }
        let mut out = Vec::with_capacity(self.weight() as usize - self.depth());
        for &(a, b) in runs.iter().rev() {
            out.extend(std::iter::repeat_n(1, b as usize - 1));
            out.push(a + 1);
        }
        Ok(Index(out))
    }

    /// Componentwise addition `self ⊕ e`.
    pub fn oplus(&self, e: &ShiftVector) -> Result<Index, AlgebraError> {
        if self.depth() != e.len() {
            return Err(AlgebraError::DepthMismatch {
                index: self.clone(),
                depth: self.depth(),
                shift_len: e.len(),
            });
        }
        let entries = self
            .0
            .iter()
            .zip(e.entries())
            .map(|(&k, &d)| k.checked_add(d).ok_or(AlgebraError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Index(entries))
    }

    /// Adds `k` to the entry at `position`.
    pub(crate) fn bumped(&self, position: usize, k: u32) -> Index {
        let mut entries = self.0.clone();
        entries[position] += k;
        Index(entries)
    }
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.depth().cmp(&other.depth()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Index{self}")
    }
}

/// Parses `"1,3"`, `"(1,3)"` or `"()"`.
impl FromStr for Index {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| AlgebraError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let inner = match trimmed.strip_prefix('(') {
            Some(rest) => rest.strip_suffix(')').ok_or_else(|| err("unbalanced parenthesis"))?,
            None => trimmed,
        };
        if inner.trim().is_empty() {
            return Ok(Index::empty());
        }
        let entries = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| err(&format!("bad entry {:?}: {e}", part.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Index::new(entries)
    }
}

impl TryFrom<Vec<u32>> for Index {
    type Error = AlgebraError;

    fn try_from(entries: Vec<u32>) -> Result<Self, Self::Error> {
        Index::new(entries)
    }
}

/// Builds an index from literal entries, panicking on a zero entry.
#[macro_export]
macro_rules! idx {
    () => { $crate::index::Index::empty() };
    ($($e:expr),+ $(,)?) => {
        $crate::index::Index::new(vec![$($e),+]).expect("positive entries")
    };
}

/// A sequence of nonnegative integers added componentwise to an index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftVector(Vec<u32>);

impl ShiftVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All length-`r` nonnegative vectors with entry sum `m`, in lexicographic order.
pub fn enumerate_shifts(r: usize, m: u32) -> Result<Vec<ShiftVector>, AlgebraError> {
    if r == 0 {
        return if m == 0 {
            Ok(vec![ShiftVector(Vec::new())])
        } else {
            Err(AlgebraError::NoSlots(m))
        };
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; r];
    fill_shifts(&mut current, 0, m, &mut out);
    Ok(out)
}

fn fill_shifts(current: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<ShiftVector>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(ShiftVector(current.to_vec()));
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill_shifts(current, pos + 1, remaining - v, out);
    }
}

/// Visits every composition of `total` into `parts` nonnegative parts, lexicographically.
pub fn for_each_composition(parts: usize, total: u32, mut f: impl FnMut(&[u32])) {
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    let mut current = vec![0u32; parts];
    visit_compositions(&mut current, 0, total, &mut f);
}

fn visit_compositions(current: &mut [u32], pos: usize, remaining: u32, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        f(current);
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        visit_compositions(current, pos + 1, remaining - v, f);
    }
}

/// All indices of the given weight (compositions into positive parts), canonical order.
pub fn indices_of_weight(weight: u32) -> Vec<Index> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_indices(weight, &mut current, &mut out);
    out.sort();
    out
}

fn collect_indices(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Index>) {
    if remaining == 0 {
        out.push(Index(current.clone()));
        return;
    }
    for first in 1..=remaining {
        current.push(first);
        collect_indices(remaining - first, current, out);
        current.pop();
    }
}

/// All admissible indices of the given weight, canonical order.
pub fn admissible_indices(weight: u32) -> Vec<Index> {
    indices_of_weight(weight)
        .into_iter()
        .filter(Index::is_admissible)
        .collect()
}

/// All admissible indices with weight in `2..=max_weight`, canonical order.
pub fn admissible_up_to(max_weight: u32) -> Vec<Index> {
    let mut all: Vec<Index> = (2..=max_weight).flat_map(admissible_indices).collect();
    all.sort();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_examples() {
        assert_eq!(idx![1, 3].weight(), 4);
        assert_eq!(Index::empty().weight(), 0);
        assert_eq!(idx![2, 2, 2].weight(), 6);
    }

    #[test]
    fn zero_entry_rejected() {
        assert!(matches!(Index::new(vec![1, 0]), Err(AlgebraError::ZeroEntry(_))));
    }

    #[test]
    fn admissibility() {
        assert!(idx![1, 2].is_admissible());
        assert!(!idx![2, 1].is_admissible());
        assert!(!Index::empty().is_admissible());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(idx![2].dual().unwrap(), idx![2]);
        assert_eq!(idx![3].dual().unwrap(), idx![1, 2]);
        assert_eq!(idx![2, 3].dual().unwrap(), idx![1, 2, 2]);
        assert_eq!(idx![3, 2].dual().unwrap(), idx![2, 1, 2]);
    }

    #[test]
    fn dual_rejects_non_admissible() {
        let err = idx![2, 1].dual().unwrap_err();
        assert_eq!(err, AlgebraError::NotAdmissible(idx![2, 1]));
        assert!(err.to_string().contains("(2,1)"));
        assert!(Index::empty().dual().is_err());
    }

    #[test]
    fn oplus_examples() {
        let e = |v: Vec<u32>| ShiftVector::new(v);
        assert_eq!(idx![2, 3].oplus(&e(vec![1, 0])).unwrap(), idx![3, 3]);
        assert_eq!(idx![2].oplus(&e(vec![0])).unwrap(), idx![2]);
        assert_eq!(idx![1, 2].oplus(&e(vec![0, 2])).unwrap(), idx![1, 4]);
        assert!(matches!(
            idx![1, 2].oplus(&e(vec![1])),
            Err(AlgebraError::DepthMismatch { .. })
        ));
    }

    #[test]
    fn shift_enumeration_examples() {
        let got: Vec<Vec<u32>> = enumerate_shifts(2, 2)
            .unwrap()
            .into_iter()
            .map(|s| s.entries().to_vec())
            .collect();
        assert_eq!(got, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(enumerate_shifts(3, 0).unwrap(), vec![ShiftVector::new(vec![0, 0, 0])]);
        assert_eq!(enumerate_shifts(1, 5).unwrap(), vec![ShiftVector::new(vec![5])]);
        assert_eq!(enumerate_shifts(0, 0).unwrap(), vec![ShiftVector::new(vec![])]);
        assert_eq!(enumerate_shifts(0, 3), Err(AlgebraError::NoSlots(3)));
    }

    #[test]
    fn repeat_examples() {
        assert_eq!(Index::repeat(2, 3), idx![2, 2, 2]);
        assert_eq!(Index::repeat(2, 0), Index::empty());
        assert_eq!(Index::repeat(1, 2), idx![1, 1]);
    }

    #[test]
    fn canonical_order_is_depth_first() {
        let mut v = vec![idx![1, 2], idx![5], idx![1, 1, 2], idx![2, 1]];
        v.sort();
        assert_eq!(v, vec![idx![5], idx![1, 2], idx![2, 1], idx![1, 1, 2]]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1,3".parse::<Index>().unwrap(), idx![1, 3]);
        assert_eq!("(1, 3)".parse::<Index>().unwrap(), idx![1, 3]);
        assert_eq!("()".parse::<Index>().unwrap(), Index::empty());
        assert_eq!(Index::empty().to_string(), "()");
        assert_eq!(idx![2, 3].to_string(), "(2,3)");
        assert!("1,x".parse::<Index>().is_err());
        assert!("0,2".parse::<Index>().is_err());
    }

    #[test]
    fn admissible_counts() {
        // 2^(w-2) admissible indices of weight w
        for w in 2..=9 {
            assert_eq!(admissible_indices(w).len(), 1 << (w - 2));
        }
    }

    #[test]
    fn compositions_visit_all() {
        let mut seen = Vec::new();
        for_each_composition(3, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 0, 2]);
        let mut none = 0;
        for_each_composition(0, 1, |_| none += 1);
        assert_eq!(none, 0);
    }
}
