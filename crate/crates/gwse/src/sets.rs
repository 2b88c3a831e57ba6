//! Dense sets of small indices, backed by bit vectors.
//!
//! The solver and the arena builders manipulate sets of vertices addressed by
//! contiguous `u32` indices. [`DenseSet`] provides the handful of operations
//! they need — membership, insertion, set algebra, ordered iteration — with a
//! fixed universe size so that complement-style reasoning stays well-defined.

use std::fmt;

/// A set of indices drawn from a fixed universe `0..universe()`.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl DenseSet {
    /// The empty set over a universe of `universe` indices.
    pub fn new(universe: usize) -> Self {
        DenseSet { words: vec![0; universe.div_ceil(64)], universe, len: 0 }
    }

    /// The full set `{0, …, universe-1}`.
    pub fn full(universe: usize) -> Self {
        let mut set = DenseSet::new(universe);
        for i in 0..universe {
            set.insert(i as u32);
        }
        set
    }

    /// Builds a set over `universe` from the given members.
    pub fn from_members(universe: usize, members: impl IntoIterator<Item = u32>) -> Self {
        let mut set = DenseSet::new(universe);
        for m in members {
            set.insert(m);
        }
        set
    }

    /// Number of indices the universe holds (not the member count).
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Whether the set has no members.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Membership test. Indices outside the universe are never members.
    pub fn contains(&self, index: u32) -> bool {
        let index = index as usize;
        index < self.universe && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    /// Inserts an index; returns whether it was newly added.
    pub fn insert(&mut self, index: u32) -> bool {
        let index = index as usize;
        assert!(index < self.universe, "index {index} outside universe {}", self.universe);
        let word = &mut self.words[index / 64];
        let mask = 1u64 << (index % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes an index; returns whether it was present.
    pub fn remove(&mut self, index: u32) -> bool {
        let index = index as usize;
        assert!(index < self.universe, "index {index} outside universe {}", self.universe);
        let word = &mut self.words[index / 64];
        let mask = 1u64 << (index % 64);
        if *word & mask != 0 {
            *word &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Ascending iteration over the members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(move |(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some((w * 64) as u32 + b)
            })
        })
    }

    /// `self ← self ∪ other`. Panics if the universes differ.
    pub fn union_with(&mut self, other: &DenseSet) {
        self.binary(other, |a, b| a | b);
    }

    /// `self ← self ∖ other`. Panics if the universes differ.
    pub fn difference_with(&mut self, other: &DenseSet) {
        self.binary(other, |a, b| a & !b);
    }

    /// `self ← self ∩ other`. Panics if the universes differ.
    pub fn intersect_with(&mut self, other: &DenseSet) {
        self.binary(other, |a, b| a & b);
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &DenseSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Whether the two sets share no member.
    pub fn is_disjoint(&self, other: &DenseSet) -> bool {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn binary(&mut self, other: &DenseSet, op: impl Fn(u64, u64) -> u64) {
        assert_eq!(self.universe, other.universe, "universe mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a = op(*a, *b);
        }
        // Mask out any bits beyond the universe that the op may have set.
        if self.universe % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.universe % 64)) - 1;
            }
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u32> for DenseSet {
    /// Collects indices into a set whose universe is just large enough.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let members: Vec<u32> = iter.into_iter().collect();
        let universe = members.iter().map(|&m| m as usize + 1).max().unwrap_or(0);
        DenseSet::from_members(universe, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_roundtrip() {
        let mut s = DenseSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.len(), 2);
        assert!(s.contains(0) && s.contains(129) && !s.contains(64));
        assert!(s.remove(0));
        assert!(!s.remove(0));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![129]);
    }

    #[test]
    fn algebra_respects_universe() {
        let mut a = DenseSet::from_members(70, [1, 3, 65]);
        let b = DenseSet::from_members(70, [3, 65, 69]);
        a.union_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![1, 3, 65, 69]);
        a.intersect_with(&b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 65, 69]);
        a.difference_with(&DenseSet::from_members(70, [65]));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 69]);
        assert!(a.is_subset(&b));
        assert!(a.is_disjoint(&DenseSet::from_members(70, [1, 65])));
    }

    #[test]
    fn full_set_counts_every_index() {
        let s = DenseSet::full(67);
        assert_eq!(s.len(), 67);
        assert!(s.contains(66));
        assert!(!s.contains(67));
    }
}
