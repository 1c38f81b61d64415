//! Twisted commutators `x⁻¹y⁻¹x^α y^β` and twisted classes `[α,S] = {(g⁻¹)^α g}`.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AutAction, AutComponent, Backend, DenseAut, Element, FactorAut, IndexedGroup};
use crate::perm::Perm;
use crate::set::ElementSet;

/// `x⁻¹ y⁻¹ x^α y^β`.
pub fn twisted_commutator<C: AutAction>(ctx: &C, a: &C::Aut, b: &C::Aut, x: &C::Elem, y: &C::Elem) -> C::Elem {
    let left = ctx.mul(&ctx.inv(x), &ctx.inv(y));
    ctx.mul(&left, &ctx.mul(&ctx.apply(a, x), &ctx.apply(b, y)))
}

/// `[α, g] = (g⁻¹)^α · g`.
pub fn twisted_bracket(s: &IndexedGroup, a: &DenseAut, g: u32) -> u32 {
    s.mul(a.apply(s.inv(g)), g)
}

/// The twisted class `[α, S]`.
pub fn twisted_class(s: &IndexedGroup, a: &DenseAut) -> ElementSet {
    ElementSet::from_iter(s.order(), (0..s.order() as u32).map(|g| twisted_bracket(s, a, g)))
}

/// Fixed points of `α`; the twisted class has `|S| / |C_S(α)|` elements.
pub fn aut_centralizer(s: &IndexedGroup, a: &DenseAut) -> ElementSet {
    ElementSet::from_iter(s.order(), (0..s.order() as u32).filter(|&g| a.apply(g) == g))
}

/// `{x g : x ∈ X}` as `g`-translated copy; `left` selects `{g x}` instead.
fn translate(s: &IndexedGroup, set: &ElementSet, g: u32, left: bool) -> ElementSet {
    ElementSet::from_iter(set.universe(), set.iter().map(|x| if left { s.mul(g, x) } else { s.mul(x, g) }))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub composite_in_product: bool,
    pub translation: bool,
    pub conjugates_in_product: bool,
    pub inner_is_class_translate: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.composite_in_product && self.translation && self.conjugates_in_product && self.inner_is_class_translate
    }
}

/// Checks, exhaustively over `S`:
/// 1. `[α_n ⋯ α_1, S] ⊆ [α_1,S] ⋯ [α_n,S]` where the composite applies `α_n` first;
/// 2. `[α,S] g = g^α [α,S]` for every `g`, with `α = α_1`;
/// 3. `h⁻¹ [α,S] h ⊆ [α,S][α⁻¹,S]` for every `h`;
/// 4. `[ι_g, S] = g⁻¹ g^S` for inner `ι_g`.
pub fn basic_identities(s: &IndexedGroup, auts: &[DenseAut], inner_by: u32) -> IdentityReport {
    let n = s.order();
    let composite = auts.iter().rev().skip(1).fold(auts.last().unwrap().clone(), |acc, a| acc.then(a));
    let mut product = ElementSet::singleton(n, 0);
    for a in auts {
        product = product.product(&twisted_class(s, a), s);
    }
    let composite_in_product = twisted_class(s, &composite).is_subset(&product);

    let a = &auts[0];
    let cls = twisted_class(s, a);
    let translation = (0..n as u32)
        .into_par_iter()
        .all(|g| translate(s, &cls, g, false) == translate(s, &cls, a.apply(g), true));

    let both = cls.product(&twisted_class(s, &a.inverse()), s);
    let conjugates_in_product = (0..n as u32).into_par_iter().all(|h| {
        let conj = ElementSet::from_iter(n, cls.iter().map(|x| s.conj(x, h)));
        conj.is_subset(&both)
    });

    let inner = DenseAut::inner(s, inner_by);
    let class = s.normal_closure_of_set(&ElementSet::singleton(n, inner_by));
    let inner_is_class_translate = twisted_class(s, &inner) == translate(s, &class, s.inv(inner_by), true);

    IdentityReport { composite_in_product, translation, conjugates_in_product, inner_is_class_translate }
}

/// A uniformly chosen automorphism word for the supported simple groups:
/// conjugation by a random element of `Sym(n)` for `Alt(n)`, and
/// `field * diag * inner` for PSL(2,q).
pub fn random_factor_aut<R: Rng + ?Sized>(s: &IndexedGroup, rng: &mut R) -> Result<FactorAut> {
    match s.handle().backend() {
        Backend::Perm { degree, .. } => {
            let mut images: Vec<u32> = (0..*degree as u32).collect();
            images.shuffle(rng);
            Ok(FactorAut(vec![AutComponent::Inner(Element::Perm(Perm::from_images(images)?))]))
        }
        Backend::Proj { field, .. } => {
            let mut comps = Vec::new();
            if field.degree() > 1 {
                comps.push(AutComponent::Field(rng.gen_range(0..field.degree())));
            }
            comps.push(AutComponent::Diag(rng.gen_range(1..field.q())));
            comps.push(AutComponent::Inner(s.element(s.random(rng)).clone()));
            Ok(FactorAut(comps))
        }
        _ => Err(Error::InvalidInput("random automorphisms need a simple permutation or matrix group".into())),
    }
}

/// Random automorphism that is not the identity.
pub fn random_nontrivial_aut<R: Rng + ?Sized>(s: &IndexedGroup, rng: &mut R) -> Result<DenseAut> {
    loop {
        let a = random_factor_aut(s, rng)?.to_dense(s)?;
        if !a.is_identity() {
            return Ok(a);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivityReport {
    pub surjective: bool,
    pub image_size: usize,
    pub missing: Vec<u32>,
    pub factor_image_sizes: Vec<usize>,
}

/// Whether `(x, y) ↦ ∏ T_{a_i,b_i}(x_i, y_i)` is onto `N`. Since the factors
/// use disjoint variables the image is the product of the per-factor images.
pub fn twisted_map_surjective(n: &IndexedGroup, a: &[DenseAut], b: &[DenseAut], budget: u64) -> Result<SurjectivityReport> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::InvalidInput("automorphism tuples must be nonempty and of equal length".into()));
    }
    let size = n.order() as u64;
    let needed = (size * size).saturating_mul(a.len() as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed: needed.to_string(), budget });
    }
    let order = n.order();
    let images: Vec<ElementSet> = a
        .iter()
        .zip(b)
        .map(|(ai, bi)| {
            (0..order as u32)
                .into_par_iter()
                .fold(
                    || ElementSet::empty(order),
                    |mut acc, x| {
                        let xi = n.inv(x);
                        let ax = ai.apply(x);
                        for y in 0..order as u32 {
                            let v = n.mul(n.mul(xi, n.inv(y)), n.mul(ax, bi.apply(y)));
                            acc.insert(v);
                        }
                        acc
                    },
                )
                .reduce(
                    || ElementSet::empty(order),
                    |mut p, q| {
                        p.union_with(&q);
                        p
                    },
                )
        })
        .collect();
    let mut total = ElementSet::singleton(order, 0);
    for img in &images {
        total = total.product(img, n);
    }
    let missing: Vec<u32> = ElementSet::full(order).difference(&total).iter().collect();
    Ok(SurjectivityReport {
        surjective: missing.is_empty(),
        image_size: total.len(),
        missing,
        factor_image_sizes: images.iter().map(ElementSet::len).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub covers: bool,
    /// `|M_j|` for each prefix product.
    pub growth: Vec<usize>,
    /// Smallest `j` with `M_j = S`.
    pub first_cover: Option<usize>,
}

/// Prefix products `M_j = ∏_{i ≤ j} r_i [v_i, S] r'_i`.
pub fn class_product_covers(s: &IndexedGroup, factors: &[(u32, ElementSet, u32)]) -> CoverReport {
    let n = s.order();
    let mut growth = Vec::with_capacity(factors.len());
    let mut first_cover = None;
    let mut m = ElementSet::singleton(n, 0);
    for (j, (r, t, r2)) in factors.iter().enumerate() {
        let piece = translate(s, &translate(s, t, *r, true), *r2, false);
        m = m.product(&piece, s);
        growth.push(m.len());
        if m.is_full() {
            first_cover = Some(j + 1);
            growth.extend(std::iter::repeat(n).take(factors.len() - j - 1));
            break;
        }
    }
    CoverReport { covers: first_cover.is_some(), growth, first_cover }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{DenseCtx, GroupHandle, DEFAULT_INDEX_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a5() -> IndexedGroup {
        IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap()
    }

    #[test]
    fn trivial_twists_give_commutators() {
        let s = a5();
        let ctx = DenseCtx { s: &s };
        let id = DenseAut::identity(60);
        for (x, y) in [(3, 17), (0, 0), (22, 41)] {
            assert_eq!(twisted_commutator(&ctx, &id, &id, &x, &y), s.commutator(x, y));
        }
        assert_eq!(twisted_class(&s, &id).len(), 1);
    }

    #[test]
    fn class_size_is_index_of_fixed_points() {
        let s = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let a = random_factor_aut(&s, &mut rng).unwrap().to_dense(&s).unwrap();
            assert_eq!(twisted_class(&s, &a).len() * aut_centralizer(&s, &a).len(), 60);
        }
    }

    #[test]
    fn identities_on_a5() {
        let s = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let auts: Vec<DenseAut> = (0..3).map(|_| random_factor_aut(&s, &mut rng).unwrap().to_dense(&s).unwrap()).collect();
        assert!(basic_identities(&s, &auts, 7).all());
    }

    #[test]
    fn ore_and_abelian_failure() {
        let s = a5();
        let id = DenseAut::identity(60);
        assert!(twisted_map_surjective(&s, &[id.clone()], &[id], 1 << 30).unwrap().surjective);
        let c3 = IndexedGroup::new(GroupHandle::cyclic(3), DEFAULT_INDEX_CAP).unwrap();
        let id3 = DenseAut::identity(3);
        let r = twisted_map_surjective(&c3, &[id3.clone()], &[id3], 1 << 30).unwrap();
        assert!(!r.surjective);
        assert_eq!(r.missing.len(), 2);
    }

    #[test]
    fn covering_profile_is_monotone() {
        let s = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let factors: Vec<_> = (0..10)
            .map(|_| (0, twisted_class(&s, &random_nontrivial_aut(&s, &mut rng).unwrap()), 0))
            .collect();
        let r = class_product_covers(&s, &factors);
        assert!(r.covers);
        assert!(r.growth.windows(2).all(|w| w[0] <= w[1]));
    }
}
