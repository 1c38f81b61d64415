use std::collections::{HashMap, VecDeque};

use rand::Rng;
use rayon::prelude::*;

use super::{Element, GroupHandle};
use crate::error::{Error, Result};
use crate::set::ElementSet;

pub const DEFAULT_INDEX_CAP: usize = 1 << 20;
const TABLE_LIMIT: usize = 2600;

/// A group whose elements have been enumerated and assigned dense indices.
/// The identity has index 0.
#[derive(Debug)]
pub struct IndexedGroup {
    handle: GroupHandle,
    elements: Vec<Element>,
    index: HashMap<Element, u32>,
    inv: Vec<u32>,
    table: Option<Vec<u32>>,
    gens: Vec<u32>,
}

impl IndexedGroup {
    pub fn new(handle: GroupHandle, cap: usize) -> Result<Self> {
        if handle.order() > &num_bigint::BigUint::from(cap) {
            return Err(Error::OrderExceedsCap { order: handle.order().to_string(), cap });
        }
        let expected: usize = handle.order().try_into().expect("order fits under cap");
        let id = handle.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::with_capacity(expected);
        index.insert(id, 0u32);
        let mut queue = VecDeque::from([0u32]);
        let gens_elems = handle.generators().to_vec();
        while let Some(i) = queue.pop_front() {
            for g in &gens_elems {
                let y = handle.mul(&elements[i as usize], g);
                if !index.contains_key(&y) {
                    let n = elements.len() as u32;
                    index.insert(y.clone(), n);
                    elements.push(y);
                    queue.push_back(n);
                    if elements.len() > expected {
                        return Err(Error::InvalidInput(format!(
                            "closure of {} exceeds its nominal order {expected}",
                            handle.name()
                        )));
                    }
                }
            }
        }
        if elements.len() != expected {
            return Err(Error::InvalidInput(format!(
                "generators of {} produce {} elements, expected {expected}",
                handle.name(),
                elements.len()
            )));
        }
        let inv: Vec<u32> = elements.par_iter().map(|x| index[&handle.inv(x)]).collect();
        let gens = gens_elems.iter().map(|g| index[g]).collect();
        let table = (expected <= TABLE_LIMIT).then(|| {
            elements
                .par_iter()
                .flat_map_iter(|a| elements.iter().map(|b| index[&handle.mul(a, b)]).collect::<Vec<_>>())
                .collect()
        });
        Ok(IndexedGroup { handle, elements, index, inv, table, gens })
    }

    pub fn handle(&self) -> &GroupHandle {
        &self.handle
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn index_of_parsed(&self, text: &str) -> Result<u32> {
        let x = self.handle.parse_element(text)?;
        self.index_of(&x)
            .ok_or_else(|| Error::InvalidInput(format!("{} is not in {}", text.trim(), self.handle.name())))
    }

    pub fn format_index(&self, i: u32) -> String {
        self.handle.format(self.element(i))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.handle.mul(&self.elements[a as usize], &self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut e = e.unsigned_abs();
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(sq, sq);
            }
        }
        acc
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn elem_order(&self, x: u32) -> u64 {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.order() as u32)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order())
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut set = ElementSet::singleton(self.order(), 0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Smallest subset containing `seed` and closed under conjugation by the generators.
    pub fn normal_closure_of_set(&self, seed: &ElementSet) -> ElementSet {
        let mut set = seed.clone();
        let mut queue: VecDeque<u32> = seed.iter().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &self.gens {
                let y = self.conj(x, g);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set
    }

    pub fn centralizer(&self, x: u32) -> ElementSet {
        ElementSet::from_iter(self.order(), (0..self.order() as u32).filter(|&g| self.mul(x, g) == self.mul(g, x)))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formulas() {
        for (h, n) in [
            (GroupHandle::alternating(5), 60),
            (GroupHandle::alternating(6), 360),
            (GroupHandle::symmetric(4), 24),
            (GroupHandle::cyclic(7), 7),
            (GroupHandle::psl2(7).unwrap(), 168),
            (GroupHandle::psl2(8).unwrap(), 504),
            (GroupHandle::psl2(9).unwrap(), 360),
            (GroupHandle::pgl2(5).unwrap(), 120),
        ] {
            let g = IndexedGroup::new(h, DEFAULT_INDEX_CAP).unwrap();
            assert_eq!(g.order(), n);
            assert_eq!(g.element(0), &g.handle().identity());
        }
    }

    #[test]
    fn inverse_and_table_agree() {
        let g = IndexedGroup::new(GroupHandle::psl2(5).unwrap(), DEFAULT_INDEX_CAP).unwrap();
        for a in 0..g.order() as u32 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert!(!g.is_abelian());
        assert_eq!(g.closure(g.gens()).len(), 60);
    }

    #[test]
    fn cap_is_enforced() {
        let err = IndexedGroup::new(GroupHandle::alternating(9), 1000).unwrap_err();
        assert!(matches!(err, Error::OrderExceedsCap { .. }));
    }
}
