//! Values cross-checked against computations that share no code with the
//! library routines they test.

use std::collections::BTreeSet;

use verbal_core::equations::{check_r_table, irreducible_characters, min_real_rep_degree};
use verbal_core::group::{make_indexed, Element, GroupHandle, IndexedGroup, DEFAULT_INDEX_CAP};
use verbal_core::poly::{coset_witness_bruteforce, coset_witness_psl2, psl2_to_dense, random_problem, BruteMode, CaseChoice};
use verbal_core::rng::stream;
use verbal_core::width::width;
use verbal_core::words::{ValueStrategy, Word, DEFAULT_TUPLE_BUDGET};

type P6 = [u8; 6];

fn even_perms() -> Vec<P6> {
    let mut out = Vec::new();
    let mut p: P6 = [0, 1, 2, 3, 4, 5];
    fn rec(k: usize, p: &mut P6, out: &mut Vec<P6>) {
        if k == p.len() {
            let inversions = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            if inversions % 2 == 0 {
                out.push(*p);
            }
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

fn compose(a: &P6, b: &P6) -> P6 {
    std::array::from_fn(|i| b[a[i] as usize])
}

#[test]
fn power_word_layers_on_a6_by_naive_closure() {
    let g = even_perms();
    assert_eq!(g.len(), 360);
    let id: P6 = [0, 1, 2, 3, 4, 5];
    let values: BTreeSet<P6> = g.iter().map(|x| (0..30).fold(id, |acc, _| compose(&acc, x))).collect();
    let mut layers = vec![BTreeSet::from([id])];
    loop {
        let last = layers.last().unwrap();
        let next: BTreeSet<P6> = last.iter().flat_map(|x| values.iter().map(move |v| compose(x, v))).chain(last.iter().copied()).collect();
        if next.len() == last.len() {
            break;
        }
        layers.push(next);
    }
    let sizes: Vec<usize> = layers.iter().map(BTreeSet::len).collect();

    let a6 = make_indexed("Alt(6)", DEFAULT_INDEX_CAP).unwrap();
    let r = width(&a6, &Word::parse("x1^30", None).unwrap(), &ValueStrategy::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
    assert_eq!(r.layer_sizes, sizes);
    assert_eq!(r.width, sizes.len() - 1);
    assert_eq!(r.width, verbal_core::acceptance::A6_POWER30_WIDTH);
}

#[test]
fn r_table_against_character_oracle() {
    let checks = check_r_table(DEFAULT_INDEX_CAP).unwrap();
    let get = |n: &str| checks.iter().find(|c| c.group == n).unwrap();
    assert!(checks.iter().all(|c| c.verified), "{checks:?}");
    assert_eq!(get("Alt(5)").oracle, 3);
    assert_eq!(get("Alt(6)").oracle, 5);
    // the degree-3 characters of PSL(2,7) are not real valued, so the least
    // real degree comes from the rational character of degree 6
    assert_eq!(get("PSL(2,7)").oracle, 6);
    let g = make_indexed("PSL(2,7)", DEFAULT_INDEX_CAP).unwrap();
    let three: Vec<i8> = irreducible_characters(&g).unwrap().iter().filter(|c| c.degree == 3).map(|c| c.indicator).collect();
    assert_eq!(three, vec![0, 0]);
}

#[test]
fn character_degrees_of_small_groups() {
    let degrees = |h: GroupHandle| -> Vec<u64> {
        let g = IndexedGroup::new(h, DEFAULT_INDEX_CAP).unwrap();
        irreducible_characters(&g).unwrap().iter().map(|c| c.degree).collect()
    };
    assert_eq!(degrees(GroupHandle::alternating(6)), vec![1, 5, 5, 8, 8, 9, 10]);
    assert_eq!(degrees(GroupHandle::symmetric(5)), vec![1, 1, 4, 4, 5, 5, 6]);
    let q8 = IndexedGroup::new(GroupHandle::psl2(8).unwrap(), DEFAULT_INDEX_CAP).unwrap();
    assert_eq!(min_real_rep_degree(&q8).unwrap(), 7);
}

/// For every factor fixed by `w(δ)`, the conjugator found by search over
/// all of PSL(2,q) agrees with the closed form, and no other factor admits one.
#[test]
fn conjugators_match_exhaustive_search() {
    for (q, m, text) in [(7u32, 2usize, "[x1,x2]"), (9, 2, "x1^3"), (11, 3, "x1^2 x2")] {
        let s = IndexedGroup::new(GroupHandle::psl2(q).unwrap(), DEFAULT_INDEX_CAP).unwrap();
        let w = Word::parse(text, None).unwrap();
        for t in 0..20 {
            let prob = random_problem(&mut stream(5, text, t), &w, q, m).unwrap();
            let an = prob.analyze().unwrap();
            let w0 = psl2_to_dense(&s, &an.w0).unwrap();
            for j in 0..m {
                let fixed = w0.perm.image(j as u32) == j as u32;
                let found = (0..s.order() as u32)
                    .find(|&c| (0..s.order() as u32).all(|x| w0.per[j].apply(x) == s.mul(s.mul(c, x), s.inv(c))));
                let expected = if fixed { found } else { None };
                let got = an.h.get(&j).map(|h| s.index_of(&Element::Mat(*h)).unwrap());
                assert_eq!(got, expected, "q={q} {text} problem {t} factor {j}");
            }
        }
    }
}

#[test]
fn forced_brute_case_agrees_with_search_for_q9() {
    let s = IndexedGroup::new(GroupHandle::psl2(9).unwrap(), DEFAULT_INDEX_CAP).unwrap();
    for text in ["[x1,x2]", "x1^3"] {
        let w = Word::parse(text, None).unwrap();
        for t in 0..10 {
            let prob = random_problem(&mut stream(9, text, t), &w, 9, 1).unwrap();
            let dense: Vec<_> = prob.twists.iter().map(|g| psl2_to_dense(&s, g).unwrap()).collect();
            let oracle = coset_witness_bruteforce(&w, &dense, &s, 1, &BruteMode::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
            let res = coset_witness_psl2(&prob, CaseChoice::Brute, DEFAULT_TUPLE_BUDGET);
            assert_eq!(res.is_ok(), oracle.witness.is_some(), "{text} problem {t}");
            if let Ok(r) = res {
                assert!(r.verification.ok);
                assert_eq!(r.regime, "brute force requested");
            }
        }
    }
}

#[test]
fn value_sets_are_inverse_closed() {
    for spec in ["Alt(5)", "PSL(2,7)", "Alt(6)"] {
        let g = make_indexed(spec, DEFAULT_INDEX_CAP).unwrap();
        for text in ["[x1,x2]", "x1^2", "x1^3", "x1^2 x2^2", "x1^30"] {
            let v = Word::parse(text, None).unwrap().value_set(&g, &ValueStrategy::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
            let inv: BTreeSet<u32> = v.iter().map(|x| g.inv(x)).collect();
            assert_eq!(inv, v.iter().collect::<BTreeSet<u32>>(), "{text} on {spec}");
        }
    }
}
