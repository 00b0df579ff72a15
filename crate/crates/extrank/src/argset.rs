//! Bit sets over dense argument indices.
//!
//! A framework with at most 64 arguments stores each set in a single machine
//! word; larger frameworks fall back to a vector of words. Both
//! representations compare equal when they hold the same members.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

const WORD: usize = 64;

/// A subset of the argument indices `0..n` of one framework.
///
/// The same type also indexes attacks when a relation needs a set of
/// attacks (see [`crate::relations::RelationValue`]).
#[derive(Clone)]
pub enum ArgSet {
    /// Members of a universe with at most 64 elements.
    Word(u64),
    /// Members of a larger universe, 64 per word, least significant first.
    Wide(Vec<u64>),
}

impl ArgSet {
    /// The empty set over a universe of `n` elements.
    pub fn empty(n: usize) -> Self {
        if n <= WORD {
            ArgSet::Word(0)
        } else {
            ArgSet::Wide(vec![0; n.div_ceil(WORD)])
        }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    /// Builds a set from a bit mask; bit `i` stands for index `i`.
    ///
    /// Only valid for universes of at most 64 elements.
    pub fn from_mask(mask: u64) -> Self {
        ArgSet::Word(mask)
    }

    /// Builds a set over a universe of `n` elements from member indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for i in members {
            s.insert(i);
        }
        s
    }

    /// The bit mask of a word-sized set, or `None` for a wide set.
    pub fn mask(&self) -> Option<u64> {
        match self {
            ArgSet::Word(w) => Some(*w),
            ArgSet::Wide(ws) => {
                if ws.iter().skip(1).all(|w| *w == 0) {
                    Some(ws.first().copied().unwrap_or(0))
                } else {
                    None
                }
            }
        }
    }

    fn words(&self) -> &[u64] {
        match self {
            ArgSet::Word(w) => std::slice::from_ref(w),
            ArgSet::Wide(ws) => ws,
        }
    }

    fn word(&self, k: usize) -> u64 {
        self.words().get(k).copied().unwrap_or(0)
    }

    /// Whether index `i` is a member.
    pub fn contains(&self, i: usize) -> bool {
        self.word(i / WORD) >> (i % WORD) & 1 == 1
    }

    /// Adds index `i`.
    pub fn insert(&mut self, i: usize) {
        match self {
            ArgSet::Word(w) if i < WORD => *w |= 1 << i,
            ArgSet::Word(w) => {
                let mut ws = vec![0; i / WORD + 1];
                ws[0] = *w;
                ws[i / WORD] |= 1 << (i % WORD);
                *self = ArgSet::Wide(ws);
            }
            ArgSet::Wide(ws) => {
                if ws.len() <= i / WORD {
                    ws.resize(i / WORD + 1, 0);
                }
                ws[i / WORD] |= 1 << (i % WORD);
            }
        }
    }

    /// Removes index `i`.
    pub fn remove(&mut self, i: usize) {
        match self {
            ArgSet::Word(w) => {
                if i < WORD {
                    *w &= !(1 << i)
                }
            }
            ArgSet::Wide(ws) => {
                if let Some(w) = ws.get_mut(i / WORD) {
                    *w &= !(1 << (i % WORD));
                }
            }
        }
    }

    /// A copy with index `i` added.
    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    /// A copy with index `i` removed.
    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words().iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Whether the set has no members.
    pub fn is_empty(&self) -> bool {
        self.words().iter().all(|w| *w == 0)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        match (self, other) {
            (ArgSet::Word(a), ArgSet::Word(b)) => ArgSet::Word(f(*a, *b)),
            _ => {
                let len = self.words().len().max(other.words().len());
                ArgSet::Wide((0..len).map(|k| f(self.word(k), other.word(k))).collect())
            }
        }
    }

    /// Set union.
    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    /// Set intersection.
    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    /// In-place union.
    pub fn union_with(&mut self, other: &Self) {
        match (&mut *self, other) {
            (ArgSet::Word(a), ArgSet::Word(b)) => *a |= *b,
            _ => *self = self.union(other),
        }
    }

    /// Whether every member of `self` is in `other`.
    pub fn is_subset(&self, other: &Self) -> bool {
        match (self, other) {
            (ArgSet::Word(a), ArgSet::Word(b)) => a & !b == 0,
            _ => {
                let len = self.words().len().max(other.words().len());
                (0..len).all(|k| self.word(k) & !other.word(k) == 0)
            }
        }
    }

    /// Whether the two sets share no member.
    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            words: self.words(),
            k: 0,
            current: self.word(0),
        }
    }

    /// Member indices collected into a vector.
    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over the members of an [`ArgSet`].
pub struct Members<'a> {
    words: &'a [u64],
    k: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.k * WORD + bit);
            }
            self.k += 1;
            if self.k >= self.words.len() {
                return None;
            }
            self.current = self.words[self.k];
        }
    }
}

impl PartialEq for ArgSet {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ArgSet::Word(a), ArgSet::Word(b)) => a == b,
            _ => {
                let len = self.words().len().max(other.words().len());
                (0..len).all(|k| self.word(k) == other.word(k))
            }
        }
    }
}

impl Eq for ArgSet {}

impl Hash for ArgSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let words = self.words();
        let used = words.iter().rposition(|w| *w != 0).map_or(0, |p| p + 1);
        words[..used].hash(state);
    }
}

/// Canonical order: by cardinality, then lexicographically by member index.
impl Ord for ArgSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ArgSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ArgSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates every subset of `{0, .., n-1}` as a word-sized set, in mask order.
///
/// Callers must keep `n` small enough for `2^n` iterations to be feasible.
pub fn all_subsets(n: usize) -> impl Iterator<Item = ArgSet> {
    assert!(n < WORD, "subset enumeration needs n < 64");
    (0..1u64 << n).map(ArgSet::Word)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_and_wide_agree() {
        let a = ArgSet::from_indices(10, [1, 3, 5]);
        let b = ArgSet::Wide(vec![0b101010, 0]);
        assert_eq!(a, b);
        let mut h1 = std::collections::hash_map::DefaultHasher::new();
        let mut h2 = std::collections::hash_map::DefaultHasher::new();
        a.hash(&mut h1);
        b.hash(&mut h2);
        assert_eq!(h1.finish(), h2.finish());
    }

    #[test]
    fn wide_operations() {
        let a = ArgSet::from_indices(130, [0, 64, 129]);
        let b = ArgSet::from_indices(130, [64, 100]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 64, 100, 129]);
        assert_eq!(a.intersection(&b).to_vec(), vec![64]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 129]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.len(), 3);
        assert!(a.contains(129) && !a.contains(128));
    }

    #[test]
    fn insert_grows_word_to_wide() {
        let mut s = ArgSet::from_mask(1);
        s.insert(70);
        assert_eq!(s.to_vec(), vec![0, 70]);
        s.remove(70);
        assert_eq!(s, ArgSet::from_mask(1));
    }

    #[test]
    fn canonical_order_is_cardinality_first() {
        let mut v = [
            ArgSet::from_indices(4, [0, 1]),
            ArgSet::from_indices(4, [3]),
            ArgSet::empty(4),
            ArgSet::from_indices(4, [0, 2]),
        ];
        v.sort();
        let got: Vec<Vec<usize>> = v.iter().map(ArgSet::to_vec).collect();
        assert_eq!(got, vec![vec![], vec![3], vec![0, 1], vec![0, 2]]);
    }

    #[test]
    fn subsets_cover_power_set() {
        assert_eq!(all_subsets(4).count(), 16);
        assert!(all_subsets(0).next().unwrap().is_empty());
    }
}
