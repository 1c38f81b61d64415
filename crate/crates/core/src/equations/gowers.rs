//! Randomized check that `n` large subsets multiply to the whole group.

use rand::seq::index::sample;
use rayon::prelude::*;
use serde::Serialize;

use crate::group::IndexedGroup;
use crate::rng::stream;
use crate::set::ElementSet;

/// `⌈|G| · r^{−(n−2)/n}⌉`.
pub fn gowers_set_size(order: usize, r: u32, n: u32) -> usize {
    let x = order as f64 * (r as f64).powf(-((n as f64 - 2.0) / n as f64));
    (x - 1e-9).ceil() as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct GowersReport {
    pub set_size: usize,
    pub factors: u32,
    pub trials: u64,
    pub covered: u64,
    pub failures: u64,
}

/// Draws `n` random subsets of the given size (the bound by default) and
/// counts the trials whose product is all of `G`.
pub fn gowers_check(g: &IndexedGroup, r: u32, n: u32, trials: u64, seed: u64, size: Option<usize>) -> GowersReport {
    let set_size = size.unwrap_or_else(|| gowers_set_size(g.order(), r, n)).min(g.order());
    let covered = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = stream(seed, "gowers", t);
            let mut prod = ElementSet::singleton(g.order(), 0);
            for _ in 0..n {
                let x = ElementSet::from_iter(g.order(), sample(&mut rng, g.order(), set_size).into_iter().map(|i| i as u32));
                prod = prod.product(&x, g);
            }
            prod.is_full()
        })
        .count() as u64;
    GowersReport { set_size, factors: n, trials, covered, failures: trials - covered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn sizes() {
        assert_eq!(gowers_set_size(60, 3, 3), 42);
        assert_eq!(gowers_set_size(60, 1, 3), 60);
    }

    #[test]
    fn whole_group_and_undersized_sets() {
        let g = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(gowers_check(&g, 3, 3, 5, 1, Some(60)).failures, 0);
        assert!(gowers_check(&g, 3, 3, 50, 1, Some(3)).failures > 0);
    }
}
