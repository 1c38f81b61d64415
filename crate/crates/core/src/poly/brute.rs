//! Direct search for coset witnesses over an indexed simple group.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{DenseAut, DenseCtx, HolElem, IndexedGroup, NAut};
use crate::rng::stream;
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BruteMode {
    /// Tuples in lexicographic index order, starting from the identity.
    Exhaustive,
    Randomized { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct BruteResult {
    /// `a[i][β]` as element indices.
    pub witness: Option<Vec<Vec<u32>>>,
    pub tried: u64,
    /// Size of the tuple space, as a decimal string.
    pub space: String,
}

/// Precomputed form of `w(g_1 a_1, ..)`: the `N`-part at factor `j` is
/// `∏_s r_{s,j}(a_{i_s}[π_s(j)]^{ε_s})` and factor `j` is centralized
/// exactly when that product equals a fixed element.
struct FastWord {
    /// `(letter, ε, route)` per letter.
    steps: Vec<(usize, i8, NAut<DenseAut>)>,
    /// `(j, forbidden value of the N-part)` for factors where `w(g)` is inner.
    watch: Vec<(usize, u32)>,
}

fn inner_conjugator(s: &IndexedGroup, r: &DenseAut) -> Option<u32> {
    // the centre is trivial so the conjugator is unique when it exists
    (0..s.order() as u32).find(|&c| s.gens().iter().all(|&x| s.conj(x, c) == r.apply(x)))
}

impl FastWord {
    fn new(w: &Word, twists: &[NAut<DenseAut>], s: &IndexedGroup, m: usize) -> Self {
        let ctx = DenseCtx { s };
        let letters = w.expand();
        let mut steps = Vec::with_capacity(letters.len());
        let mut tail = NAut::identity(&ctx, m);
        for &(i, e) in letters.iter().rev() {
            let gi = &twists[i - 1];
            let inv = gi.inverse(&ctx);
            let route = if e > 0 { tail.clone() } else { inv.then(&ctx, &tail) };
            steps.push((i, e, route));
            tail = if e > 0 { gi.then(&ctx, &tail) } else { inv.then(&ctx, &tail) };
        }
        steps.reverse();
        let watch = (0..m)
            .filter(|&j| tail.perm.image(j as u32) == j as u32)
            .filter_map(|j| inner_conjugator(s, &tail.per[j]).map(|c| (j, s.inv(c))))
            .collect();
        FastWord { steps, watch }
    }

    fn is_witness(&self, s: &IndexedGroup, a: &[Vec<u32>]) -> bool {
        self.watch.iter().all(|&(j, bad)| {
            let n = self.steps.iter().fold(0u32, |acc, (i, e, r)| {
                let x = a[i - 1][r.perm.image(j as u32) as usize];
                let x = if *e > 0 { x } else { s.inv(x) };
                s.mul(acc, r.per[j].apply(x))
            });
            n != bad
        })
    }
}

/// `w(g_1 a_1, .., g_d a_d)` as a holomorph element.
pub fn word_value_dense(
    w: &Word,
    twists: &[NAut<DenseAut>],
    s: &IndexedGroup,
    a: &[Vec<u32>],
) -> HolElem<u32, DenseAut> {
    let ctx = DenseCtx { s };
    let m = a.first().map_or(0, |r| r.len());
    let gens: Vec<HolElem<u32, DenseAut>> =
        twists.iter().zip(a).map(|(g, n)| HolElem { aut: g.clone(), n: n.clone() }).collect();
    w.expand().iter().fold(HolElem::identity(&ctx, m), |acc, &(i, e)| {
        let x = if e > 0 { gens[i - 1].clone() } else { gens[i - 1].inv(&ctx) };
        acc.mul(&ctx, &x)
    })
}

/// True when `w(g a)` centralizes no factor, by direct holomorph arithmetic.
pub fn is_coset_witness(w: &Word, twists: &[NAut<DenseAut>], s: &IndexedGroup, a: &[Vec<u32>]) -> bool {
    !word_value_dense(w, twists, s, a).centralized_factors(&DenseCtx { s }).iter().any(|&c| c)
}

/// Searches `a ∈ (S^m)^d` with `w(g_1 a_1, .., g_d a_d)` centralizing no
/// factor. `budget` caps the number of tuples examined; running out of it
/// before the space is exhausted is an error.
pub fn coset_witness_bruteforce(
    w: &Word,
    twists: &[NAut<DenseAut>],
    s: &IndexedGroup,
    m: usize,
    mode: &BruteMode,
    budget: u64,
) -> Result<BruteResult> {
    if twists.len() != w.arity() {
        return Err(Error::InvalidInput(format!("word has {} letters but {} twists given", w.arity(), twists.len())));
    }
    if let Some(g) = twists.iter().find(|g| g.k() != m) {
        return Err(Error::InvalidInput(format!("twist acts on {} factors, expected {m}", g.k())));
    }
    let d = twists.len();
    let order = s.order() as u32;
    let space = num_bigint::BigUint::from(order).pow((d * m) as u32);
    let fast = FastWord::new(w, twists, s, m);
    let shape = |flat: &[u32]| -> Vec<Vec<u32>> { flat.chunks(m.max(1)).map(|c| c.to_vec()).take(d).collect() };
    let confirm = |a: Vec<Vec<u32>>, tried: u64| -> Result<BruteResult> {
        if !is_coset_witness(w, twists, s, &a) {
            return Err(Error::Certificate("fast witness test disagrees with holomorph arithmetic".into()));
        }
        Ok(BruteResult { witness: Some(a), tried, space: space.to_string() })
    };
    let mut tried = 0u64;
    match mode {
        BruteMode::Exhaustive => {
            let mut flat = vec![0u32; d * m];
            loop {
                if tried >= budget {
                    return Err(Error::BudgetExceeded { needed: space.to_string(), budget });
                }
                tried += 1;
                let a = shape(&flat);
                if fast.is_witness(s, &a) {
                    return confirm(a, tried);
                }
                // odometer
                let mut pos = flat.len();
                loop {
                    if pos == 0 {
                        return Ok(BruteResult { witness: None, tried, space: space.to_string() });
                    }
                    pos -= 1;
                    flat[pos] += 1;
                    if flat[pos] < order {
                        break;
                    }
                    flat[pos] = 0;
                }
            }
        }
        BruteMode::Randomized { samples, seed } => {
            if *samples > budget {
                return Err(Error::BudgetExceeded { needed: samples.to_string(), budget });
            }
            let mut rng = stream(*seed, "coset-brute", 0);
            for _ in 0..*samples {
                tried += 1;
                let flat: Vec<u32> = (0..d * m).map(|_| rng.gen_range(0..order)).collect();
                let a = shape(&flat);
                if fast.is_witness(s, &a) {
                    return confirm(a, tried);
                }
            }
            Ok(BruteResult { witness: None, tried, space: space.to_string() })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub socle: String,
    pub word: String,
    pub twists: String,
    pub witness_found: bool,
    pub tried: u64,
}

/// Runs the exhaustive search with trivial twists (`m = 1`) for each socle
/// and word; rows with `witness_found = false` are coset identities.
pub fn probe_identity_twists(socles: &[&IndexedGroup], words: &[Word], budget: u64) -> Result<Vec<ProbeRow>> {
    let mut rows = Vec::new();
    for s in socles {
        let ctx = DenseCtx { s };
        for w in words {
            let twists = vec![NAut::identity(&ctx, 1); w.arity()];
            let r = coset_witness_bruteforce(w, &twists, s, 1, &BruteMode::Exhaustive, budget)?;
            rows.push(ProbeRow {
                socle: s.handle().name().to_string(),
                word: format!("{w}"),
                twists: "identity".into(),
                witness_found: r.witness.is_some(),
                tried: r.tried,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Automorphism, GroupHandle, DEFAULT_INDEX_CAP};
    use crate::rng::stream;

    fn a5() -> IndexedGroup {
        IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap()
    }

    #[test]
    fn commutator_with_outer_twist() {
        let s = a5();
        let w = Word::parse("[x1,x2]", None).unwrap();
        let g1 = Automorphism::parse("0=graph", s.handle(), 1).unwrap().to_dense(&s).unwrap();
        let g2 = Automorphism::identity(1).to_dense(&s).unwrap();
        let r = coset_witness_bruteforce(&w, &[g1, g2], &s, 1, &BruteMode::Exhaustive, 1 << 20).unwrap();
        assert!(r.witness.is_some());
    }

    #[test]
    fn fast_test_agrees_with_holomorph() {
        let s = a5();
        let w = Word::parse("x1^2 x2^-1 x1", None).unwrap();
        let g1 = Automorphism::parse("perm=(0 1); 0=graph", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let g2 = Automorphism::parse("1=inner:(0 1 2)", s.handle(), 2).unwrap().to_dense(&s).unwrap();
        let twists = [g1, g2];
        let fast = FastWord::new(&w, &twists, &s, 2);
        let mut rng = stream(3, "fast", 0);
        for _ in 0..300 {
            let a: Vec<Vec<u32>> = (0..2).map(|_| (0..2).map(|_| rng.gen_range(0..60)).collect()).collect();
            assert_eq!(fast.is_witness(&s, &a), is_coset_witness(&w, &twists, &s, &a));
        }
    }

    #[test]
    fn exponent_word_is_a_coset_identity_on_a5() {
        let s = a5();
        let rows = probe_identity_twists(&[&s], &[Word::parse("x1^30", None).unwrap(), Word::parse("x1^2", None).unwrap()], 1 << 20).unwrap();
        assert!(!rows[0].witness_found);
        assert!(rows[1].witness_found);
    }

    #[test]
    fn budget_is_enforced() {
        let s = a5();
        let ctx = DenseCtx { s: &s };
        let w = Word::parse("x1^30", None).unwrap();
        let r = coset_witness_bruteforce(&w, &[NAut::identity(&ctx, 1)], &s, 1, &BruteMode::Exhaustive, 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}
