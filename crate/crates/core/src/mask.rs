//! Fixed-width element sets for groups of order at most 256.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_ORDER: usize = 256;
const WORDS: usize = MAX_ORDER / 64;

/// A set of element indices, stored as a 256-bit mask.
///
/// Masks order numerically (as 256-bit integers); that ordering is the
/// canonical order used for subgroups everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mask([u64; WORDS]);

impl Mask {
    pub const EMPTY: Mask = Mask([0; WORDS]);

    pub fn singleton(i: usize) -> Self {
        let mut m = Self::EMPTY;
        m.insert(i);
        m
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ORDER);
        let mut m = Self::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                m.0[w] = u64::MAX;
            } else if n > lo {
                m.0[w] = (1u64 << (n - lo)) - 1;
            }
        }
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = Self::EMPTY;
        for i in it {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.0[i >> 6] |= 1 << (i & 63);
        fresh
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn and(&self, other: &Mask) -> Mask {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    pub fn or(&self, other: &Mask) -> Mask {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    pub fn and_not(&self, other: &Mask) -> Mask {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Mask) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    /// Smallest index in the set.
    pub fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> MaskIter {
        MaskIter {
            words: self.0,
            word: 0,
        }
    }
}

pub struct MaskIter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl Ord for Mask {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Mask {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_len() {
        assert_eq!(Mask::full(0).len(), 0);
        assert_eq!(Mask::full(64).len(), 64);
        assert_eq!(Mask::full(65).len(), 65);
        assert_eq!(Mask::full(256).len(), 256);
        assert!(Mask::full(200).contains(199));
        assert!(!Mask::full(200).contains(200));
    }

    #[test]
    fn numeric_order() {
        let a = Mask::from_indices([0, 1, 2, 3]);
        let b = Mask::from_indices([0, 4]);
        let c = Mask::from_indices([0, 70]);
        assert!(a < b);
        assert!(b < c);
    }

    proptest! {
        #[test]
        fn iter_roundtrip(v in proptest::collection::btree_set(0usize..256, 0..40)) {
            let m = Mask::from_indices(v.iter().copied());
            let back: Vec<usize> = m.iter().collect();
            prop_assert_eq!(back, v.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(m.len(), v.len());
            prop_assert_eq!(m.first(), v.iter().next().copied());
        }

        #[test]
        fn and_or_match_sets(
            a in proptest::collection::btree_set(0usize..256, 0..40),
            b in proptest::collection::btree_set(0usize..256, 0..40),
        ) {
            let ma = Mask::from_indices(a.iter().copied());
            let mb = Mask::from_indices(b.iter().copied());
            let inter: Vec<usize> = a.intersection(&b).copied().collect();
            let uni: Vec<usize> = a.union(&b).copied().collect();
            prop_assert_eq!(ma.and(&mb).iter().collect::<Vec<_>>(), inter);
            prop_assert_eq!(ma.or(&mb).iter().collect::<Vec<_>>(), uni);
            prop_assert_eq!(ma.is_subset(&mb), a.is_subset(&b));
        }
    }
}
