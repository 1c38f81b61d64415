use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use verbal_core::field::Gf;
use verbal_core::poly::{MultiPoly, Var};

fn field() -> Arc<Gf> {
    Arc::new(Gf::new(27).unwrap())
}

/// `(coefficient, [(variable, exponent)])` terms over three variables.
fn terms() -> impl Strategy<Value = Vec<(u32, Vec<(u16, u32)>)>> {
    prop::collection::vec((1u32..27, prop::collection::vec((1u16..=3, 0u32..40), 0..3)), 0..5)
}

fn build(f: &Arc<Gf>, t: &[(u32, Vec<(u16, u32)>)]) -> MultiPoly {
    t.iter().fold(MultiPoly::zero(f), |acc, (c, mono)| {
        let mono = mono.iter().map(|&(v, e)| (Var::plain(v), e)).collect();
        acc.add(&MultiPoly::monomial(f, *c, mono)).unwrap()
    })
}

fn point(f: &Arc<Gf>, y: [u32; 3]) -> BTreeMap<Var, u32> {
    (1..=3).map(|i| (Var::plain(i), y[i as usize - 1] % f.q())).collect()
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(a in terms(), b in terms(), y in prop::array::uniform3(0u32..27)) {
        let f = field();
        let (p, q) = (build(&f, &a), build(&f, &b));
        let y = point(&f, y);
        prop_assert_eq!(p.mul(&q).unwrap().evaluate(&y), f.mul(p.evaluate(&y), q.evaluate(&y)));
        prop_assert_eq!(p.add(&q).unwrap().evaluate(&y), f.add(p.evaluate(&y), q.evaluate(&y)));
        prop_assert_eq!(p.sub(&q).unwrap().evaluate(&y), f.sub(p.evaluate(&y), q.evaluate(&y)));
    }

    #[test]
    fn frobenius_commutes_with_evaluation(a in terms(), y in prop::array::uniform3(0u32..27), n in 0u32..3) {
        let f = field();
        let p = build(&f, &a);
        let y = point(&f, y);
        prop_assert_eq!(p.frobenius_power(n).evaluate(&y), f.frob(p.evaluate(&y), n));
    }

    #[test]
    fn reduction_preserves_functions(a in terms(), y in prop::array::uniform3(0u32..27)) {
        let f = field();
        let p = build(&f, &a);
        let r = p.reduce_functional();
        prop_assert!(r.max_var_degree() < f.q());
        prop_assert_eq!(r.evaluate(&point(&f, y)), p.evaluate(&point(&f, y)));
    }

    #[test]
    fn substitution_then_evaluation(a in terms(), y in prop::array::uniform3(0u32..27)) {
        let f = field();
        let p = build(&f, &a);
        let y = point(&f, y);
        let v = Var::plain(2);
        prop_assert_eq!(p.substitute(v, y[&v]).evaluate(&y), p.evaluate(&y));
    }
}
