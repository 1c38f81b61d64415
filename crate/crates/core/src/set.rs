//! Subsets of an indexed group stored as bitsets over dense indices.

use fixedbitset::FixedBitSet;

use crate::group::IndexedGroup;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn singleton(n: usize, x: u32) -> Self {
        let mut s = Self::empty(n);
        s.insert(x);
        s
    }

    pub fn from_iter(n: usize, it: impl IntoIterator<Item = u32>) -> Self {
        let mut s = Self::empty(n);
        for x in it {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    /// Returns true if `x` was not already present.
    pub fn insert(&mut self, x: u32) -> bool {
        !self.bits.put(x as usize)
    }

    pub fn contains(&self, x: u32) -> bool {
        self.bits.contains(x as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|i| i as u32)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElementSet { bits }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// `{ab : a ∈ self, b ∈ other}`.
    pub fn product(&self, other: &ElementSet, g: &IndexedGroup) -> ElementSet {
        let n = g.order();
        let mut out = Self::empty(n);
        let (left, right): (Vec<u32>, Vec<u32>) = (self.iter().collect(), other.iter().collect());
        for &b in &right {
            for &a in &left {
                out.insert(g.mul(a, b));
            }
            if out.len() == n {
                break;
            }
        }
        out
    }

    /// `{a x : a ∈ self}`.
    pub fn right_translate(&self, x: u32, g: &IndexedGroup) -> ElementSet {
        Self::from_iter(self.universe(), self.iter().map(|a| g.mul(a, x)))
    }

    pub fn inverse(&self, g: &IndexedGroup) -> ElementSet {
        Self::from_iter(self.universe(), self.iter().map(|a| g.inv(a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn basic_ops() {
        let mut s = ElementSet::empty(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(7);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 7]);
        assert_eq!(s.len(), 2);
        assert!(s.is_subset(&ElementSet::full(10)));
        assert_eq!(ElementSet::full(10).difference(&s).len(), 8);
    }

    #[test]
    fn product_of_subgroup_with_itself() {
        let g = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let h = g.closure(&[g.gens()[0]]);
        assert_eq!(h.len(), 3);
        assert_eq!(h.product(&h, &g), h);
        let all = g.all();
        assert_eq!(h.product(&all, &g).len(), 60);
    }
}
