//! Coset witnesses for alternating socles with twists in `⟨t⟩ ≀ Sym(m)`.
//!
//! With `t = (0 1)` the subgroup `A₀ = Alt({2, .., n-1})` centralizes `t`, so
//! diagonal elements `v̄ = (v, .., v)` with `v ∈ A₀` commute with every twist.
//! Then `w(g_i v̄_i) = w(g) · z̄` with `z = w(v)`, and `z ≠ 1` is enough.

use rand::Rng;
use serde::Serialize;

use super::brute::is_coset_witness;
use crate::error::{Error, Result};
use crate::group::{AutComponent, Automorphism, DenseAut, FactorAut, GroupHandle, IndexedGroup, NAut};
use crate::rng::stream;
use crate::words::Word;

#[derive(Clone, Debug, Serialize)]
pub struct AltWitness {
    pub n: usize,
    pub m: usize,
    /// The chosen `v_i ∈ A₀`.
    pub v: Vec<String>,
    pub z: String,
    /// `a[i][β]` as element indices of `Alt(n)`.
    pub a: Vec<Vec<u32>>,
    pub verified: bool,
}

pub fn alt_case_witness(
    w: &Word,
    twists: &[Automorphism],
    n: usize,
    m: usize,
    seed: u64,
    budget: u64,
) -> Result<AltWitness> {
    if n < 5 {
        return Err(Error::InvalidInput(format!("Alt({n}) is not a nonabelian simple group")));
    }
    if twists.len() != w.arity() {
        return Err(Error::InvalidInput(format!("word has {} letters but {} twists given", w.arity(), twists.len())));
    }
    let s = IndexedGroup::new(GroupHandle::alternating(n), crate::group::DEFAULT_INDEX_CAP)?;
    let t_conj = FactorAut(vec![AutComponent::Graph]).to_dense(&s)?;
    let dense: Vec<NAut<DenseAut>> = twists.iter().map(|g| g.to_dense(&s)).collect::<Result<_>>()?;
    for g in &dense {
        if g.k() != m {
            return Err(Error::InvalidInput(format!("twist acts on {} factors, expected {m}", g.k())));
        }
        if g.per.iter().any(|r| !r.is_identity() && *r != t_conj) {
            return Err(Error::Hypothesis("twists must act on each factor trivially or by conjugation with (0 1)".into()));
        }
    }

    let a0: Vec<u32> = (0..s.order() as u32)
        .filter(|&x| match s.element(x) {
            crate::group::Element::Perm(p) => p.image(0) == 0 && p.image(1) == 1,
            _ => false,
        })
        .collect();
    let d = w.arity();
    let value = |v: &[u32]| w.evaluate(&s, v);
    let mut found = None;
    let mut rng = stream(seed, "alt-case", 0);
    for _ in 0..budget.min(2000) {
        let v: Vec<u32> = (0..d).map(|_| a0[rng.gen_range(0..a0.len())]).collect();
        if value(&v)? != 0 {
            found = Some(v);
            break;
        }
    }
    if found.is_none() {
        let space = (a0.len() as u128).saturating_pow(d as u32);
        if space > budget as u128 {
            return Err(Error::BudgetExceeded { needed: space.to_string(), budget });
        }
        let mut idx = vec![0usize; d];
        'outer: loop {
            let v: Vec<u32> = idx.iter().map(|&i| a0[i]).collect();
            if value(&v)? != 0 {
                found = Some(v);
                break;
            }
            let mut pos = d;
            loop {
                if pos == 0 {
                    break 'outer;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < a0.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
    let v = found.ok_or_else(|| {
        Error::Hypothesis(format!("A0 = Alt({}) has only trivial values of {w}", n - 2))
    })?;
    let z = value(&v)?;
    let a: Vec<Vec<u32>> = v.iter().map(|&x| vec![x; m]).collect();
    let verified = is_coset_witness(w, &dense, &s, &a);
    if !verified {
        return Err(Error::Certificate("diagonal witness failed verification".into()));
    }
    Ok(AltWitness {
        n,
        m,
        v: v.iter().map(|&x| s.format_index(x)).collect(),
        z: s.format_index(z),
        a,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn twists(s: &GroupHandle, m: usize, texts: &[&str]) -> Vec<Automorphism> {
        texts.iter().map(|t| Automorphism::parse(t, s, m).unwrap()).collect()
    }

    #[test]
    fn commutator_on_two_factors() {
        let s = GroupHandle::alternating(7);
        let w = Word::parse("[x1,x2]", None).unwrap();
        let r = alt_case_witness(&w, &twists(&s, 2, &["perm=(0 1); 0=graph", "1=graph"]), 7, 2, 1, 1 << 20).unwrap();
        assert!(r.verified);
        assert_ne!(r.z, "()");
    }

    #[test]
    fn exponent_thirty_is_too_small() {
        let s = GroupHandle::alternating(7);
        let w = Word::parse("x1^30", None).unwrap();
        let e = alt_case_witness(&w, &twists(&s, 2, &["all=graph"]), 7, 2, 1, 1 << 20).unwrap_err();
        assert!(e.is_hypothesis());
    }

    #[test]
    fn cube() {
        let s = GroupHandle::alternating(7);
        let w = Word::parse("x1^3", None).unwrap();
        let r = alt_case_witness(&w, &twists(&s, 2, &["perm=(0 1)"]), 7, 2, 1, 1 << 20).unwrap();
        assert!(r.verified);
    }

    #[test]
    fn rejects_other_twists() {
        let s = GroupHandle::alternating(7);
        let w = Word::parse("x1^3", None).unwrap();
        assert!(alt_case_witness(&w, &twists(&s, 1, &["0=inner:(0 1 2)"]), 7, 1, 1, 1 << 20).is_err());
    }
}
