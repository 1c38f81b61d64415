use std::sync::Arc;

use super::IndexedGroup;
use crate::error::{Error, Result};
use crate::set::ElementSet;

const TABLE_LIMIT: usize = 1 << 24;

/// Right action of `L` on the right cosets `Ω = H\L` of a subgroup `H`.
/// Point 0 is the coset `H` itself.
#[derive(Debug)]
pub struct CosetAction {
    top: Arc<IndexedGroup>,
    subgroup: ElementSet,
    reps: Vec<u32>,
    coset_of: Vec<u32>,
    table: Option<Vec<u32>>,
}

/// Builds the action of `top` on the cosets of the subgroup generated by `subgens`.
pub fn coset_action(top: Arc<IndexedGroup>, subgens: &[u32]) -> Result<CosetAction> {
    let subgroup = top.closure(subgens);
    let n = top.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for h in subgroup.iter() {
            coset_of[top.mul(h, x) as usize] = id;
        }
    }
    if reps.len() * subgroup.len() != n {
        return Err(Error::InvalidInput("coset decomposition does not partition the group".into()));
    }
    let mut action = CosetAction { top, subgroup, reps, coset_of, table: None };
    let d = action.degree();
    if n.saturating_mul(d) <= TABLE_LIMIT {
        let mut table = vec![0u32; n * d];
        for l in 0..n as u32 {
            for w in 0..d as u32 {
                table[l as usize * d + w as usize] = action.compute_image(w, l);
            }
        }
        action.table = Some(table);
    }
    Ok(action)
}

impl CosetAction {
    pub fn top(&self) -> &Arc<IndexedGroup> {
        &self.top
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    /// True when the subgroup is all of `L`, so `Ω` is a single point.
    pub fn is_degenerate(&self) -> bool {
        self.degree() == 1
    }

    pub fn subgroup(&self) -> &ElementSet {
        &self.subgroup
    }

    pub fn representative(&self, w: u32) -> u32 {
        self.reps[w as usize]
    }

    pub fn coset_of(&self, l: u32) -> u32 {
        self.coset_of[l as usize]
    }

    fn compute_image(&self, w: u32, l: u32) -> u32 {
        self.coset_of[self.top.mul(self.reps[w as usize], l) as usize]
    }

    /// `ω · l`.
    #[inline]
    pub fn image(&self, w: u32, l: u32) -> u32 {
        match &self.table {
            Some(t) => t[l as usize * self.degree() + w as usize],
            None => self.compute_image(w, l),
        }
    }

    /// Orbits of the subgroup generated by `gens` on `Ω`.
    pub fn orbits_of(&self, gens: &[u32]) -> Vec<Vec<u32>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d as u32 {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                for &g in gens {
                    let y = self.image(orbit[i], g);
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn action_is_transitive_right_action() {
        let l = Arc::new(IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap());
        let x = l.gens()[0];
        let act = coset_action(l.clone(), &[x]).unwrap();
        assert_eq!(act.degree(), 20);
        assert_eq!(act.orbits_of(l.gens()).len(), 1);
        for a in 0..60 {
            for b in [1u32, 7, 33] {
                for w in 0..20 {
                    assert_eq!(act.image(act.image(w, a), b), act.image(w, l.mul(a, b)));
                }
            }
        }
        // the generating element fixes the base coset
        assert_eq!(act.image(0, x), 0);
        assert!(!act.is_degenerate());
        assert!(coset_action(l.clone(), l.gens()).unwrap().is_degenerate());
    }
}
