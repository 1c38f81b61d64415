//! Reports on the hypotheses under which twisted commutator maps are onto.

use serde::Serialize;

use crate::group::{DenseAut, IndexedGroup, NAut};
use crate::perm::{orbits, Perm};
use crate::set::ElementSet;

use super::twisted::twisted_class;

#[derive(Clone, Debug, Serialize)]
pub struct FactorCount {
    pub cycles: usize,
    pub fixed: usize,
    /// `c_i ≤ (k + n_i) / 2`.
    pub cycle_bound: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub k: usize,
    pub m: usize,
    pub per_element: Vec<FactorCount>,
    pub transitive: bool,
    pub cycle_sum: usize,
    pub fixed_sum: usize,
    pub d: i64,
    /// `k (m − 2) − 2D`.
    pub bound: i64,
    pub cycle_sum_within_bound: bool,
}

/// Cycle and fixed-point counts of the factor permutations and the inequality
/// `Σ c_i ≤ k(m − 2) − 2D`.
pub fn surjectivity_hypotheses(perms: &[Perm], k: usize, d: i64) -> HypothesisReport {
    let per_element: Vec<FactorCount> = perms
        .iter()
        .map(|p| {
            let cycles = p.cycle_count();
            let fixed = p.fixed_points();
            FactorCount { cycles, fixed, cycle_bound: 2 * cycles <= k + fixed }
        })
        .collect();
    let m = perms.len();
    let cycle_sum = per_element.iter().map(|c| c.cycles).sum::<usize>();
    let bound = k as i64 * (m as i64 - 2) - 2 * d;
    HypothesisReport {
        k,
        m,
        transitive: orbits(k, perms).len() <= 1,
        fixed_sum: per_element.iter().map(|c| c.fixed).sum(),
        cycle_sum,
        per_element,
        d,
        bound,
        cycle_sum_within_bound: (cycle_sum as i64) <= bound,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObserveReport {
    pub transitive: bool,
    /// Number of pairs (element, fixed factor) whose induced automorphism lies in the supplied set.
    pub condition1_count: Option<usize>,
    pub condition1: Option<bool>,
    pub condition2: bool,
    pub condition2_factor: Option<usize>,
}

impl ObserveReport {
    pub fn applies(&self) -> bool {
        self.transitive && (self.condition1 == Some(true) || self.condition2)
    }
}

/// Evaluates the two alternative sufficient conditions for `N = ∏ [g_i, N]`.
/// `gs` are the automorphisms of `S^k` induced by the `g_i`. Condition (1)
/// takes a set `C` of automorphisms, claimed to satisfy `S = ∏_{i≤m} [α_i, S]`
/// for all choices in `C`, together with `m`. Condition (2) is decided here.
pub fn observe_conditions(s: &IndexedGroup, gs: &[NAut<DenseAut>], class: Option<(&[DenseAut], usize)>) -> ObserveReport {
    let k = gs.first().map_or(0, |g| g.k());
    let perms: Vec<Perm> = gs.iter().map(|g| g.perm.clone()).collect();
    let transitive = orbits(k, &perms).len() <= 1;
    let stabilising = |j: usize| gs.iter().filter(move |g| g.perm.image(j as u32) == j as u32).map(move |g| &g.per[j]);
    let (condition1_count, condition1) = match class {
        Some((c, m)) => {
            let count = (0..k).map(|j| stabilising(j).filter(|a| c.contains(a)).count()).sum::<usize>();
            (Some(count), Some(count >= m))
        }
        None => (None, None),
    };
    let condition2_factor = (0..k).find(|&j| {
        let mut prod = ElementSet::singleton(s.order(), 0);
        for a in stabilising(j) {
            prod = prod.product(&twisted_class(s, a), s);
            if prod.is_full() {
                return true;
            }
        }
        false
    });
    ObserveReport { transitive, condition1_count, condition1, condition2: condition2_factor.is_some(), condition2_factor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Automorphism, GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn counts() {
        let c = Perm::parse_cycles("(0 1 2)", 3).unwrap();
        let r = surjectivity_hypotheses(&[c.clone(), c.clone(), c], 3, 1);
        assert!(r.per_element.iter().all(|e| e.cycles == 1 && e.fixed == 0));
        assert!(r.transitive);
        assert_eq!(r.bound, 1);
        let id = surjectivity_hypotheses(&[Perm::identity(3)], 3, 1);
        assert_eq!((id.per_element[0].cycles, id.per_element[0].fixed), (3, 3));
        assert!(!id.transitive);
    }

    #[test]
    fn condition_two_on_a5() {
        let s = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let g1 = Automorphism::parse("perm=(0 1); all=inner:(0 1 2 3 4)", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let g2 = Automorphism::parse("all=inner:(0 1 2 3 4)", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let g3 = Automorphism::parse("all=inner:(0 1 2)", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let r = observe_conditions(&s, &[g1, g2.clone(), g2, g3.clone(), g3], None);
        assert!(r.transitive);
        assert!(r.applies());
    }
}
