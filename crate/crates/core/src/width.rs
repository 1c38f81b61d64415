//! Verbal subgroups, exact width by layered closure, and the wreath-type
//! construction with a checkable lower bound on width.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{coset_action, CosetAction, Element, GroupHandle, IndexedGroup, SemidirectElement};
use crate::rng::stream;
use crate::set::ElementSet;
use crate::words::{ValueStrategy, Word};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WidthReport {
    pub group: String,
    pub word: String,
    pub verbal_order: usize,
    pub width: usize,
    pub value_count: usize,
    pub layer_sizes: Vec<usize>,
    pub strategy: String,
}

/// The subgroup generated by a set of values.
pub fn verbal_subgroup(g: &IndexedGroup, values: &ElementSet) -> Result<ElementSet> {
    if values.is_empty() {
        return Err(Error::InvalidInput("value set is empty".into()));
    }
    let mut gens = Vec::new();
    let mut h = ElementSet::singleton(g.order(), 0);
    for x in values.iter() {
        if !h.contains(x) {
            gens.push(x);
            h = g.closure(&gens);
        }
    }
    Ok(h)
}

/// `L_t = W^t` for `t = 0, 1, ...` until the layers stop growing.
pub fn layers(g: &IndexedGroup, values: &ElementSet) -> Vec<ElementSet> {
    let n = g.order();
    let w: Vec<u32> = values.iter().collect();
    let mut out = vec![ElementSet::singleton(n, 0)];
    let mut frontier: Vec<u32> = vec![0];
    loop {
        let cur = out.last().unwrap();
        let grown = frontier
            .par_chunks(64)
            .fold(
                || ElementSet::empty(n),
                |mut acc, chunk| {
                    for &d in chunk {
                        for &x in &w {
                            acc.insert(g.mul(d, x));
                        }
                    }
                    acc
                },
            )
            .reduce(
                || ElementSet::empty(n),
                |mut a, b| {
                    a.union_with(&b);
                    a
                },
            );
        let fresh = grown.difference(cur);
        if fresh.is_empty() {
            return out;
        }
        frontier = fresh.iter().collect();
        let mut next = cur.clone();
        next.union_with(&fresh);
        out.push(next);
    }
}

pub fn width_from_values(g: &IndexedGroup, w: &Word, values: &ElementSet, strategy: &str) -> WidthReport {
    let ls = layers(g, values);
    WidthReport {
        group: g.handle().name().to_string(),
        word: w.to_string(),
        verbal_order: ls.last().unwrap().len(),
        width: ls.len() - 1,
        value_count: values.len(),
        layer_sizes: ls.iter().map(ElementSet::len).collect(),
        strategy: strategy.to_string(),
    }
}

/// Exact width of `w` on `g`. A randomized strategy yields an upper bound on the
/// true value set's closure depth only if it happens to find every value.
pub fn width(g: &IndexedGroup, w: &Word, strategy: &ValueStrategy, budget: u64) -> Result<WidthReport> {
    let values = w.value_set(g, strategy, budget)?;
    Ok(width_from_values(g, w, &values, &strategy.to_string()))
}

/// How to choose the nontrivial coordinates of `κ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaChoice {
    /// The same element (a dense fiber index) in every coordinate.
    Fixed(u32),
    /// Independent uniformly random nontrivial coordinates.
    Random(u64),
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub group: GroupHandle,
    pub fiber: Arc<IndexedGroup>,
    pub top: Arc<IndexedGroup>,
    pub action: Arc<CosetAction>,
    pub top_tuple: Vec<u32>,
    pub kappa: Element,
    pub word: Word,
    /// Whether `w(top) = top` was verified; `None` when the check was out of budget.
    pub top_verbal_full: Option<bool>,
}

/// `G = fiber^Ω ⋊ top` with `Ω` the right cosets of `⟨top_tuple⟩`, and `κ`
/// nontrivial in every coordinate.
pub fn build_counterexample(
    fiber: Arc<IndexedGroup>,
    top: Arc<IndexedGroup>,
    w: &Word,
    top_tuple: &[u32],
    kappa: KappaChoice,
    budget: u64,
) -> Result<Counterexample> {
    let fv = w.value_set(&fiber, &ValueStrategy::ConjugacyReduced, budget)?;
    if fv.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "{w} has {} values on {}, expected only the identity",
            fv.len(),
            fiber.handle().name()
        )));
    }
    if fiber.order() < 2 {
        return Err(Error::Hypothesis("the fiber group is trivial".into()));
    }
    let action = Arc::new(coset_action(top.clone(), top_tuple)?);
    if action.is_degenerate() {
        return Err(Error::Hypothesis("the top tuple generates the whole top group".into()));
    }
    let top_verbal_full = match w.value_set(&top, &ValueStrategy::ConjugacyReduced, budget) {
        Ok(v) => Some(verbal_subgroup(&top, &v)?.len() == top.order()),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let omega = action.degree() as u32;
    let coords: BTreeMap<u32, u32> = match kappa {
        KappaChoice::Fixed(x) => {
            if x == 0 || x as usize >= fiber.order() {
                return Err(Error::InvalidInput("κ coordinate must be a nontrivial fiber element".into()));
            }
            (0..omega).map(|i| (i, x)).collect()
        }
        KappaChoice::Random(seed) => {
            let mut rng = stream(seed, "kappa", 0);
            (0..omega).map(|i| (i, rng.gen_range(1..fiber.order() as u32))).collect()
        }
    };
    let group = GroupHandle::semidirect(fiber.clone(), action.clone());
    Ok(Counterexample {
        group,
        fiber,
        top,
        action,
        top_tuple: top_tuple.to_vec(),
        kappa: Element::Semi(SemidirectElement { fiber: coords, top: 0 }),
        word: w.clone(),
        top_verbal_full,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCertificate {
    pub fiber: String,
    pub word: String,
    pub omega_size: usize,
    pub stabilizer_order: usize,
    pub values: usize,
    pub bound: usize,
    pub fiber_values_trivial: bool,
    pub kappa_everywhere_nontrivial: bool,
    pub projection_samples: u64,
    pub projection_trivial: bool,
    pub statement: String,
}

/// Replays the projection argument: every product of `n` values whose
/// arguments have top parts in the stabilizer of the base coset has trivial
/// base coordinate, so `κ` is not such a product.
pub fn certify_lower_bound(
    ce: &Counterexample,
    kappa: &Element,
    n: usize,
    samples: u64,
    seed: u64,
    budget: u64,
) -> Result<LowerBoundCertificate> {
    let w = &ce.word;
    let fv = w.value_set(&ce.fiber, &ValueStrategy::ConjugacyReduced, budget)?;
    if fv.len() != 1 {
        return Err(Error::Hypothesis(format!("{w} takes nontrivial values on the fiber")));
    }
    let Element::Semi(k) = kappa else {
        return Err(Error::BackendMismatch("κ must be an element of the semidirect product".into()));
    };
    let omega = ce.action.degree();
    if k.top != 0 || k.fiber.len() != omega {
        return Err(Error::Hypothesis(format!(
            "κ must lie in the base with all {omega} coordinates nontrivial ({} are)",
            k.fiber.len()
        )));
    }
    let stab: Vec<u32> = ce.action.subgroup().iter().collect();
    let g = &ce.group;
    let bad = (0..samples).into_par_iter().find_any(|&t| {
        let mut rng = stream(seed, "projection", t);
        let mut prod = g.identity();
        for _ in 0..n {
            let args: Vec<Element> = (0..w.arity())
                .map(|_| {
                    let fiber = (0..omega as u32)
                        .filter_map(|i| {
                            let v = rng.gen_range(0..ce.fiber.order() as u32);
                            (v != 0).then_some((i, v))
                        })
                        .collect();
                    Element::Semi(SemidirectElement { fiber, top: stab[rng.gen_range(0..stab.len())] })
                })
                .collect();
            let v = w.evaluate_with(&args, g.identity(), |a, b| g.mul(a, b), |a, e| g.pow(a, e));
            prod = g.mul(&prod, &v);
        }
        match prod {
            Element::Semi(p) => p.fiber.contains_key(&0),
            _ => true,
        }
    });
    if let Some(t) = bad {
        return Err(Error::Certificate(format!("sample {t} has a nontrivial base coordinate")));
    }
    Ok(LowerBoundCertificate {
        fiber: ce.fiber.handle().name().to_string(),
        word: w.to_string(),
        omega_size: omega,
        stabilizer_order: stab.len(),
        values: n,
        bound: n + 1,
        fiber_values_trivial: true,
        kappa_everywhere_nontrivial: true,
        projection_samples: samples,
        projection_trivial: true,
        statement: format!(
            "kappa is not a product of {n} values of {w} whose arguments have top parts in the stabilizer \
             of the base coset; with one block for every tuple of the top group this extends to all \
             products, giving width at least {}",
            n + 1
        ),
    })
}

/// Samples products of `n` values at uniformly random arguments and reports
/// whether none of them equals `κ`. This is evidence, not proof.
pub fn random_product_refute(
    g: &GroupHandle,
    kappa: &Element,
    w: &Word,
    n: usize,
    trials: u64,
    seed: u64,
) -> Result<bool> {
    if g.is_identity(kappa) {
        return Ok(false);
    }
    if n >= 1 && w.is_silly() && !w.is_empty() {
        return Ok(false);
    }
    g.check_element(kappa)?;
    if g.random_element(&mut stream(seed, "probe", 0)).is_none() {
        return Err(Error::InvalidInput(format!("{} does not support random sampling", g.name())));
    }
    let hit = (0..trials).into_par_iter().any(|t| {
        let mut rng = stream(seed, "refute", t);
        let mut prod = g.identity();
        for _ in 0..n {
            let args: Vec<Element> = (0..w.arity()).map(|_| g.random_element(&mut rng).unwrap()).collect();
            let v = w.evaluate_with(&args, g.identity(), |a, b| g.mul(a, b), |a, e| g.pow(a, e));
            prod = g.mul(&prod, &v);
        }
        prod == *kappa
    });
    Ok(!hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};
    use crate::words::DEFAULT_TUPLE_BUDGET;

    fn idx(h: GroupHandle) -> Arc<IndexedGroup> {
        Arc::new(IndexedGroup::new(h, DEFAULT_INDEX_CAP).unwrap())
    }

    #[test]
    fn widths_in_a5() {
        let g = idx(GroupHandle::alternating(5));
        let run = |s: &str| width(&g, &Word::parse(s, None).unwrap(), &ValueStrategy::ConjugacyReduced, DEFAULT_TUPLE_BUDGET).unwrap();
        let c = run("[x1,x2]");
        assert_eq!((c.width, c.verbal_order), (1, 60));
        let p = run("x1^30");
        assert_eq!((p.width, p.verbal_order, p.layer_sizes.clone()), (0, 1, vec![1]));
        let s = run("x1^2");
        assert_eq!(s.layer_sizes, vec![1, 45, 60]);
    }

    #[test]
    fn verbal_subgroup_of_trivial_set() {
        let g = idx(GroupHandle::alternating(5));
        assert_eq!(verbal_subgroup(&g, &ElementSet::singleton(60, 0)).unwrap().len(), 1);
        assert!(verbal_subgroup(&g, &ElementSet::empty(60)).is_err());
    }

    #[test]
    fn small_counterexample() {
        let fiber = idx(GroupHandle::cyclic(2));
        let top = idx(GroupHandle::alternating(5));
        let y = top.index_of_parsed("(0 1 2 3 4)").unwrap();
        let w = Word::parse("x1^2", None).unwrap();
        let ce = build_counterexample(fiber, top, &w, &[y], KappaChoice::Fixed(1), DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(ce.action.degree(), 12);
        assert_eq!(ce.top_verbal_full, Some(true));
        let cert = certify_lower_bound(&ce, &ce.kappa, 3, 200, 1, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(cert.bound, 4);
        let Element::Semi(mut k) = ce.kappa.clone() else { unreachable!() };
        k.fiber.remove(&5);
        let err = certify_lower_bound(&ce, &Element::Semi(k), 3, 10, 1, DEFAULT_TUPLE_BUDGET).unwrap_err();
        assert!(err.is_hypothesis());
    }

    #[test]
    fn refute_shortcuts() {
        let g = GroupHandle::alternating(5);
        let w = Word::parse("x1^2", None).unwrap();
        assert!(!random_product_refute(&g, &g.identity(), &w, 0, 10, 0).unwrap());
        let x = Word::parse("x1", None).unwrap();
        let k = g.parse_element("(0 1 2)").unwrap();
        assert!(!random_product_refute(&g, &k, &x, 1, 10, 0).unwrap());
    }
}
