use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::Elem;

/// A subset of a finite carrier.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet(FixedBitSet);

impl ElemSet {
    pub fn empty(n: usize) -> Self {
        ElemSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        ElemSet(s)
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(n);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Size of the carrier this set lives in.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, e: Elem) {
        self.0.insert(e);
    }

    pub fn remove(&mut self, e: Elem) {
        self.0.set(e, false);
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.0.minimum()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ElemSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        self.0.union_with(&other.0);
    }

    pub fn intersect_with(&mut self, other: &ElemSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &ElemSet) {
        self.0.difference_with(&other.0);
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> ElemSet {
        let mut s = self.clone();
        s.0.toggle_range(..);
        s
    }

    /// Number of elements shared with `other`.
    pub fn intersection_len(&self, other: &ElemSet) -> usize {
        self.0.intersection_count(&other.0)
    }
}

/// Sets compare by their sorted member lists, lexicographically.
impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
