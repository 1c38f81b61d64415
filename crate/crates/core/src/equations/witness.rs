//! Elements whose odd powers act nontrivially.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{DenseAut, DenseCtx, HolElem, IndexedGroup, NAut};

/// Whether the automorphism `x ↦ g⁻¹ a(x) g` has `n`-th power different from the identity.
fn power_is_nontrivial(s: &IndexedGroup, a: &DenseAut, g: u32, n: u64) -> bool {
    let gi = s.inv(g);
    s.gens().iter().any(|&x| {
        let mut y = x;
        for _ in 0..n {
            y = s.mul(s.mul(gi, a.apply(y)), g);
        }
        y != x
    })
}

/// The first `g ∈ S` (in index order) with `(a g)^n ≠ 1` in `Aut(S)`.
pub fn pth_power_witness(s: &IndexedGroup, a: &DenseAut, n: u64) -> Result<u32> {
    if n % 2 == 0 {
        return Err(Error::InvalidInput(format!("exponent {n} must be odd")));
    }
    (0..s.order() as u32)
        .find(|&g| power_is_nontrivial(s, a, g, n))
        .ok_or_else(|| Error::SearchFailed(format!("(a g)^{n} = 1 for every g in {}", s.handle().name())))
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistWitness {
    pub b: Vec<u32>,
    /// `(cycle, planted position)` for every factor cycle whose length divides `p`.
    pub planted: Vec<(Vec<u32>, u32)>,
}

/// `b ∈ S^k` such that `(h b)^p` centralizes no simple factor, where `h`
/// acts on `S^k` as a holomorph element.
pub fn power_twist_witness(s: &IndexedGroup, h: &HolElem<u32, DenseAut>, p: u64) -> Result<TwistWitness> {
    if p % 2 == 0 {
        return Err(Error::InvalidInput(format!("exponent {p} must be odd")));
    }
    let ctx = DenseCtx { s };
    let k = h.k();
    let mut b = vec![0u32; k];
    let mut planted = Vec::new();
    let check = |b: &[u32], cycle: &[u32]| {
        let hb = h.mul(&ctx, &HolElem { aut: NAut::identity(&ctx, k), n: b.to_vec() });
        let cen = hb.pow(&ctx, p).centralized_factors(&ctx);
        cycle.iter().all(|&j| !cen[j as usize])
    };
    for cycle in h.aut.perm.cycles() {
        let c = cycle.len() as u64;
        if p % c != 0 {
            continue;
        }
        let p1 = p / c;
        let hc = h.pow(&ctx, c).induced(&ctx);
        let mut found = None;
        for &i0 in &cycle {
            let a1 = &hc.per[i0 as usize];
            let u = pth_power_witness(s, a1, p1)?;
            let mut trial = b.clone();
            trial[i0 as usize] = u;
            if check(&trial, &cycle) {
                found = Some((i0, u));
                break;
            }
        }
        if found.is_none() {
            let i0 = cycle[0];
            found = (0..s.order() as u32)
                .find(|&u| {
                    let mut trial = b.clone();
                    trial[i0 as usize] = u;
                    check(&trial, &cycle)
                })
                .map(|u| (i0, u));
        }
        let (i0, u) = found.ok_or_else(|| Error::SearchFailed(format!("no witness on factor cycle {cycle:?}")))?;
        b[i0 as usize] = u;
        planted.push((cycle, i0));
    }
    let all: Vec<u32> = (0..k as u32).collect();
    if !check(&b, &all) {
        return Err(Error::Certificate("(h b)^p centralizes a factor".into()));
    }
    Ok(TwistWitness { b, planted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Automorphism, FactorAut, GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn transposition_twist_on_a5() {
        let s = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let a = FactorAut::parse("graph", s.handle()).unwrap().to_dense(&s).unwrap();
        for n in [3, 5, 15] {
            let g = pth_power_witness(&s, &a, n).unwrap();
            assert!(power_is_nontrivial(&s, &a, g, n));
        }
        assert!(pth_power_witness(&s, &a, 4).is_err());
    }

    #[test]
    fn cyclic_factor_permutation() {
        let s = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let ctx = DenseCtx { s: &s };
        let aut = Automorphism::parse("perm=(0 1 2)", s.handle(), 3).unwrap().to_dense(&s).unwrap();
        let h = HolElem::from_aut(&ctx, aut);
        let w = power_twist_witness(&s, &h, 3).unwrap();
        assert_eq!(w.b.iter().filter(|&&x| x != 0).count(), 1);
        let swap = Automorphism::parse("perm=(0 1)", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let w2 = power_twist_witness(&s, &HolElem::from_aut(&ctx, swap), 3).unwrap();
        assert_eq!(w2.b, vec![0, 0]);
    }
}
