//! The holomorph `Aut(S^k) ⋉ S^k`, generic over how `S` and its automorphisms are represented.

use std::fmt::Debug;
use std::hash::Hash;

use super::{DenseAut, IndexedGroup, Psl2Aut};
use crate::field::Gf;
use crate::matrix::ProjMat2;
use crate::perm::Perm;

/// A group `S` together with a representation of (a subgroup of) `Aut(S)`.
pub trait AutAction {
    type Elem: Clone + PartialEq + Eq + Hash + Debug;
    type Aut: Clone + PartialEq + Debug;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn aut_identity(&self) -> Self::Aut;
    fn apply(&self, r: &Self::Aut, x: &Self::Elem) -> Self::Elem;
    /// `a` followed by `b`.
    fn then(&self, a: &Self::Aut, b: &Self::Aut) -> Self::Aut;
    fn aut_inverse(&self, a: &Self::Aut) -> Self::Aut;
    /// `x ↦ g⁻¹ x g`.
    fn inner(&self, g: &Self::Elem) -> Self::Aut;
    fn aut_is_identity(&self, a: &Self::Aut) -> bool;

    fn conj(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(g), x), g)
    }
}

pub struct DenseCtx<'a> {
    pub s: &'a IndexedGroup,
}

impl AutAction for DenseCtx<'_> {
    type Elem = u32;
    type Aut = DenseAut;

    fn identity(&self) -> u32 {
        0
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.s.mul(*a, *b)
    }
    fn inv(&self, a: &u32) -> u32 {
        self.s.inv(*a)
    }
    fn aut_identity(&self) -> DenseAut {
        DenseAut::identity(self.s.order())
    }
    fn apply(&self, r: &DenseAut, x: &u32) -> u32 {
        r.apply(*x)
    }
    fn then(&self, a: &DenseAut, b: &DenseAut) -> DenseAut {
        a.then(b)
    }
    fn aut_inverse(&self, a: &DenseAut) -> DenseAut {
        a.inverse()
    }
    fn inner(&self, g: &u32) -> DenseAut {
        DenseAut::inner(self.s, *g)
    }
    fn aut_is_identity(&self, a: &DenseAut) -> bool {
        a.is_identity()
    }
}

pub struct Psl2Ctx<'a> {
    pub f: &'a Gf,
}

impl AutAction for Psl2Ctx<'_> {
    type Elem = ProjMat2;
    type Aut = Psl2Aut;

    fn identity(&self) -> ProjMat2 {
        ProjMat2::IDENTITY
    }
    fn mul(&self, a: &ProjMat2, b: &ProjMat2) -> ProjMat2 {
        a.mul(b, self.f)
    }
    fn inv(&self, a: &ProjMat2) -> ProjMat2 {
        a.inv(self.f)
    }
    fn aut_identity(&self) -> Psl2Aut {
        Psl2Aut::identity()
    }
    fn apply(&self, r: &Psl2Aut, x: &ProjMat2) -> ProjMat2 {
        r.apply(x, self.f)
    }
    fn then(&self, a: &Psl2Aut, b: &Psl2Aut) -> Psl2Aut {
        a.then(b, self.f)
    }
    fn aut_inverse(&self, a: &Psl2Aut) -> Psl2Aut {
        a.inverse(self.f)
    }
    fn inner(&self, g: &ProjMat2) -> Psl2Aut {
        Psl2Aut::inner(*g)
    }
    fn aut_is_identity(&self, a: &Psl2Aut) -> bool {
        a.is_identity()
    }
}

/// `(x_j) ↦ (r_j(x_{π(j)}))`.
#[derive(Clone, PartialEq, Debug)]
pub struct NAut<A> {
    pub perm: Perm,
    pub per: Vec<A>,
}

impl<A: Clone + PartialEq + Debug> NAut<A> {
    pub fn k(&self) -> usize {
        self.per.len()
    }

    pub fn identity<C: AutAction<Aut = A>>(ctx: &C, k: usize) -> Self {
        NAut { perm: Perm::identity(k), per: vec![ctx.aut_identity(); k] }
    }

    pub fn apply<C: AutAction<Aut = A>>(&self, ctx: &C, xs: &[C::Elem]) -> Vec<C::Elem> {
        (0..self.k()).map(|j| ctx.apply(&self.per[j], &xs[self.perm.image(j as u32) as usize])).collect()
    }

    /// `self` followed by `other`.
    pub fn then<C: AutAction<Aut = A>>(&self, ctx: &C, other: &Self) -> Self {
        let perm = other.perm.compose(&self.perm);
        let per = (0..self.k())
            .map(|j| ctx.then(&self.per[other.perm.image(j as u32) as usize], &other.per[j]))
            .collect();
        NAut { perm, per }
    }

    pub fn inverse<C: AutAction<Aut = A>>(&self, ctx: &C) -> Self {
        // out_j = r_j(in_{π(j)}) so in_i = r_{π⁻¹(i)}⁻¹(out_{π⁻¹(i)})
        let back = self.perm.inverse();
        let per = (0..self.k())
            .map(|i| ctx.aut_inverse(&self.per[back.image(i as u32) as usize]))
            .collect();
        NAut { perm: back, per }
    }

    pub fn is_identity<C: AutAction<Aut = A>>(&self, ctx: &C) -> bool {
        self.perm.is_identity() && self.per.iter().all(|r| ctx.aut_is_identity(r))
    }
}

/// The holomorph element acting as `x ↦ (x^α)^n`, i.e. `α` followed by conjugation by `n`.
#[derive(Clone, PartialEq, Debug)]
pub struct HolElem<E, A> {
    pub aut: NAut<A>,
    pub n: Vec<E>,
}

impl<E: Clone + PartialEq + Eq + Hash + Debug, A: Clone + PartialEq + Debug> HolElem<E, A> {
    pub fn identity<C: AutAction<Elem = E, Aut = A>>(ctx: &C, k: usize) -> Self {
        HolElem { aut: NAut::identity(ctx, k), n: vec![ctx.identity(); k] }
    }

    pub fn from_aut<C: AutAction<Elem = E, Aut = A>>(ctx: &C, aut: NAut<A>) -> Self {
        let k = aut.k();
        HolElem { aut, n: vec![ctx.identity(); k] }
    }

    pub fn k(&self) -> usize {
        self.n.len()
    }

    /// `(α, n)(β, m) = (αβ, β(n) m)`.
    pub fn mul<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C, other: &Self) -> Self {
        let bn = other.aut.apply(ctx, &self.n);
        HolElem {
            aut: self.aut.then(ctx, &other.aut),
            n: bn.iter().zip(&other.n).map(|(a, b)| ctx.mul(a, b)).collect(),
        }
    }

    pub fn inv<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C) -> Self {
        let ai = self.aut.inverse(ctx);
        let ninv: Vec<E> = self.n.iter().map(|x| ctx.inv(x)).collect();
        HolElem { n: ai.apply(ctx, &ninv), aut: ai }
    }

    pub fn pow<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C, e: u64) -> Self {
        let mut acc = Self::identity(ctx, self.k());
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(ctx, &sq);
            }
        }
        acc
    }

    /// The image of a tuple `x` under this element.
    pub fn act<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C, x: &[E]) -> Vec<E> {
        self.aut.apply(ctx, x).iter().zip(&self.n).map(|(y, n)| ctx.conj(y, n)).collect()
    }

    /// The automorphism of `S^k` this element induces.
    pub fn induced<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C) -> NAut<A> {
        let per = (0..self.k()).map(|j| ctx.then(&self.aut.per[j], &ctx.inner(&self.n[j]))).collect();
        NAut { perm: self.aut.perm.clone(), per }
    }

    /// Factors `j` fixed by the permutation on which the induced automorphism is trivial.
    pub fn centralized_factors<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C) -> Vec<bool> {
        let ind = self.induced(ctx);
        (0..self.k())
            .map(|j| ind.perm.image(j as u32) == j as u32 && ctx.aut_is_identity(&ind.per[j]))
            .collect()
    }

    pub fn is_identity<C: AutAction<Elem = E, Aut = A>>(&self, ctx: &C) -> bool {
        self.aut.is_identity(ctx) && self.n.iter().all(|x| *x == ctx.identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Automorphism, GroupHandle, DEFAULT_INDEX_CAP};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn holomorph_product_matches_action() {
        let s = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let ctx = DenseCtx { s: &s };
        let a = Automorphism::parse("perm=(0 1 2); 1=graph", s.handle(), 3).unwrap().to_dense(&s).unwrap();
        let b = Automorphism::parse("perm=(0 1); 2=inner:(0 1 2)", s.handle(), 3).unwrap().to_dense(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut r = || (0..3).map(|_| rng.gen_range(0..60u32)).collect::<Vec<_>>();
        let g = HolElem { aut: a, n: r() };
        let h = HolElem { aut: b, n: r() };
        let x = r();
        assert_eq!(g.mul(&ctx, &h).act(&ctx, &x), h.act(&ctx, &g.act(&ctx, &x)));
        assert!(g.mul(&ctx, &g.inv(&ctx)).is_identity(&ctx));
        assert!(g.pow(&ctx, 0).is_identity(&ctx));
        assert_eq!(g.pow(&ctx, 3), g.mul(&ctx, &g).mul(&ctx, &g));
    }

    #[test]
    fn inner_elements_centralize_when_cancelled() {
        let s = GroupHandle::psl2(7).unwrap();
        let f = s.field().unwrap().clone();
        let ctx = Psl2Ctx { f: &f };
        let g = ProjMat2::from_mat(crate::matrix::Mat2::new(1, 2, 3, 0), &f).unwrap();
        let aut = NAut { perm: Perm::identity(2), per: vec![Psl2Aut::inner(g), Psl2Aut::identity()] };
        let h = HolElem { aut, n: vec![g.inv(&f), ProjMat2::IDENTITY] };
        assert_eq!(h.centralized_factors(&ctx), vec![true, true]);
    }
}
