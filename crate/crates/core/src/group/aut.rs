//! Automorphisms of `S` and of `S^k`.

use std::fmt;

use super::{Backend, Element, GroupHandle, IndexedGroup, NAut};
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::matrix::{Mat2, ProjMat2};
use crate::perm::Perm;

/// A generator of `Aut(S)`.
///
/// * `Inner(g)`: `x ↦ g⁻¹ x g`; for PSL, `g` may be any PGL element.
/// * `Diag(δ)`: conjugation by `diag(δ, 1)`.
/// * `Field(n)`: entrywise `x ↦ x^{p^n}`.
/// * `Graph`: transpose-inverse on PSL(2,q), conjugation by `(0 1)` on permutation groups.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AutComponent {
    Inner(Element),
    Diag(u32),
    Field(u32),
    Graph,
}

/// A word in [`AutComponent`]s, applied left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FactorAut(pub Vec<AutComponent>);

/// `(x_1..x_k) ↦ (x_{π(1)}^{r_1}, .., x_{π(k)}^{r_k})`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    pub factor_perm: Perm,
    pub per_factor: Vec<FactorAut>,
}

fn graph_matrix(f: &Gf) -> ProjMat2 {
    ProjMat2::from_mat(Mat2::new(0, 1, f.neg(1), 0), f).expect("invertible")
}

fn mismatch(what: &str, s: &GroupHandle) -> Error {
    Error::BackendMismatch(format!("{what} is not an automorphism of {}", s.name()))
}

impl AutComponent {
    pub fn apply(&self, s: &GroupHandle, x: &Element) -> Result<Element> {
        match (s.backend(), self, x) {
            (Backend::Perm { .. }, AutComponent::Inner(Element::Perm(g)), Element::Perm(p)) => {
                Ok(Element::Perm(p.conjugate_by(g)))
            }
            (Backend::Perm { degree, .. }, AutComponent::Graph, Element::Perm(p)) if *degree >= 2 => {
                Ok(Element::Perm(p.conjugate_by(&Perm::from_cycles(*degree, &[vec![0, 1]])?)))
            }
            (Backend::Proj { field, .. }, c, Element::Mat(m)) => {
                Ok(Element::Mat(Psl2Aut::from_component(c, field).ok_or_else(|| mismatch("component", s))?.apply(m, field)))
            }
            (Backend::Power { .. } | Backend::Semidirect { .. }, AutComponent::Inner(g), x) => Ok(s.conj(x, g)),
            _ => Err(mismatch("component", s)),
        }
    }

    pub fn inverse(&self, s: &GroupHandle) -> Result<AutComponent> {
        Ok(match self {
            AutComponent::Inner(g) => AutComponent::Inner(s.inv(g)),
            AutComponent::Diag(d) => {
                let f = s.field().ok_or_else(|| mismatch("diagonal automorphism", s))?;
                AutComponent::Diag(f.inv(*d))
            }
            AutComponent::Field(n) => {
                let f = s.field().ok_or_else(|| mismatch("field automorphism", s))?;
                AutComponent::Field((f.degree() - n % f.degree()) % f.degree())
            }
            AutComponent::Graph => AutComponent::Graph,
        })
    }

    /// Parses `id`, `inner:<elem>`, `diag:<int>`, `field:<int>` or `graph`.
    /// Returns `None` for `id`.
    pub fn parse(text: &str, s: &GroupHandle) -> Result<Option<AutComponent>> {
        let text = text.trim();
        let (head, arg) = match text.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (text, None),
        };
        let num = |a: Option<&str>| -> Result<i64> {
            a.ok_or_else(|| Error::Parse(format!("{head} needs an argument")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer in {text:?}")))
        };
        Ok(Some(match head {
            "id" | "1" => return Ok(None),
            "graph" => AutComponent::Graph,
            "inner" => {
                let a = arg.ok_or_else(|| Error::Parse("inner needs an element".into()))?;
                let g = match s.backend() {
                    Backend::Proj { field, .. } => Element::Mat(ProjMat2::from_mat(Mat2::parse(a, field)?, field)?),
                    Backend::Perm { degree, .. } => Element::Perm(Perm::parse_cycles(a, *degree)?),
                    _ => s.parse_element(a)?,
                };
                AutComponent::Inner(g)
            }
            "diag" => {
                let f = s.field().ok_or_else(|| mismatch("diagonal automorphism", s))?;
                let d = num(arg)?;
                let d = if d < 0 { f.from_int(d) } else { d as u32 };
                if d == 0 || !f.contains(d) {
                    return Err(Error::InvalidInput(format!("diag:{d} is not a nonzero field element")));
                }
                AutComponent::Diag(d)
            }
            "field" => {
                let f = s.field().ok_or_else(|| mismatch("field automorphism", s))?;
                AutComponent::Field(num(arg)?.rem_euclid(f.degree() as i64) as u32)
            }
            other => return Err(Error::Parse(format!("unknown automorphism component {other:?}"))),
        }))
    }
}

impl FactorAut {
    pub fn identity() -> Self {
        FactorAut(Vec::new())
    }

    pub fn parse(text: &str, s: &GroupHandle) -> Result<Self> {
        let mut comps = Vec::new();
        for part in text.split('*') {
            if let Some(c) = AutComponent::parse(part, s)? {
                comps.push(c);
            }
        }
        Ok(FactorAut(comps))
    }

    pub fn apply(&self, s: &GroupHandle, x: &Element) -> Result<Element> {
        let mut y = x.clone();
        for c in &self.0 {
            y = c.apply(s, &y)?;
        }
        Ok(y)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FactorAut) -> FactorAut {
        FactorAut(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn inverse(&self, s: &GroupHandle) -> Result<FactorAut> {
        Ok(FactorAut(self.0.iter().rev().map(|c| c.inverse(s)).collect::<Result<_>>()?))
    }

    pub fn to_dense(&self, s: &IndexedGroup) -> Result<DenseAut> {
        let map = s
            .elements()
            .iter()
            .map(|x| {
                let y = self.apply(s.handle(), x)?;
                s.index_of(&y).ok_or_else(|| mismatch("map", s.handle()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DenseAut(map))
    }

    pub fn to_psl2(&self, f: &Gf) -> Result<Psl2Aut> {
        let mut acc = Psl2Aut::identity();
        for c in &self.0 {
            let a = Psl2Aut::from_component(c, f)
                .ok_or_else(|| Error::BackendMismatch("component is not a PSL(2,q) automorphism".into()))?;
            acc = acc.then(&a, f);
        }
        Ok(acc)
    }
}

impl fmt::Display for FactorAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|c| match c {
                AutComponent::Inner(Element::Perm(p)) => format!("inner:{p}"),
                AutComponent::Inner(Element::Mat(m)) => format!("inner:{m}"),
                AutComponent::Inner(x) => format!("inner:{x:?}"),
                AutComponent::Diag(d) => format!("diag:{d}"),
                AutComponent::Field(n) => format!("field:{n}"),
                AutComponent::Graph => "graph".to_string(),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl Automorphism {
    pub fn identity(k: usize) -> Self {
        Automorphism { factor_perm: Perm::identity(k), per_factor: vec![FactorAut::identity(); k] }
    }

    pub fn diagonal(k: usize, r: FactorAut) -> Self {
        Automorphism { factor_perm: Perm::identity(k), per_factor: vec![r; k] }
    }

    pub fn k(&self) -> usize {
        self.per_factor.len()
    }

    /// Parses `perm=<cycles>; <j>=<components>; ...`. Unlisted factors are the identity.
    pub fn parse(text: &str, s: &GroupHandle, k: usize) -> Result<Self> {
        let mut aut = Automorphism::identity(k);
        for item in text.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("automorphism item needs key=value: {item:?}")))?;
            match key.trim() {
                "perm" => aut.factor_perm = Perm::parse_cycles(val, k)?,
                "all" => aut.per_factor = vec![FactorAut::parse(val, s)?; k],
                j => {
                    let j: usize = j.parse().map_err(|_| Error::Parse(format!("bad factor index {j:?}")))?;
                    if j >= k {
                        return Err(Error::InvalidInput(format!("factor {j} out of range for k = {k}")));
                    }
                    aut.per_factor[j] = FactorAut::parse(val, s)?;
                }
            }
        }
        Ok(aut)
    }

    pub fn apply(&self, s: &GroupHandle, xs: &[Element]) -> Result<Vec<Element>> {
        if xs.len() != self.k() {
            return Err(Error::InvalidInput(format!("expected {} coordinates, got {}", self.k(), xs.len())));
        }
        (0..self.k())
            .map(|j| self.per_factor[j].apply(s, &xs[self.factor_perm.image(j as u32) as usize]))
            .collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        let perm = other.factor_perm.compose(&self.factor_perm);
        let per_factor = (0..self.k())
            .map(|j| self.per_factor[other.factor_perm.image(j as u32) as usize].then(&other.per_factor[j]))
            .collect();
        Automorphism { factor_perm: perm, per_factor }
    }

    pub fn to_dense(&self, s: &IndexedGroup) -> Result<NAut<DenseAut>> {
        Ok(NAut {
            perm: self.factor_perm.clone(),
            per: self.per_factor.iter().map(|r| r.to_dense(s)).collect::<Result<_>>()?,
        })
    }

    pub fn to_psl2(&self, f: &Gf) -> Result<NAut<Psl2Aut>> {
        Ok(NAut {
            perm: self.factor_perm.clone(),
            per: self.per_factor.iter().map(|r| r.to_psl2(f)).collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm={}", self.factor_perm)?;
        for (j, r) in self.per_factor.iter().enumerate() {
            if !r.0.is_empty() {
                write!(f, "; {j}={r}")?;
            }
        }
        Ok(())
    }
}

/// An automorphism of an indexed group as an explicit index map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DenseAut(pub Vec<u32>);

impl DenseAut {
    pub fn identity(n: usize) -> Self {
        DenseAut((0..n as u32).collect())
    }

    pub fn inner(s: &IndexedGroup, g: u32) -> Self {
        DenseAut((0..s.order() as u32).map(|x| s.conj(x, g)).collect())
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn then(&self, other: &DenseAut) -> DenseAut {
        DenseAut(self.0.iter().map(|&y| other.0[y as usize]).collect())
    }

    pub fn inverse(&self) -> DenseAut {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        DenseAut(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    /// Checks the homomorphism property on all pairs of generators-by-elements.
    pub fn is_automorphism_of(&self, s: &IndexedGroup) -> bool {
        let mut seen = vec![false; s.order()];
        for &y in &self.0 {
            if seen[y as usize] {
                return false;
            }
            seen[y as usize] = true;
        }
        s.gens().iter().all(|&g| (0..s.order() as u32).all(|x| self.apply(s.mul(x, g)) == s.mul(self.apply(x), self.apply(g))))
    }
}

/// An automorphism of PSL(2,q) or PGL(2,q) in the form `x ↦ g⁻¹ F^n(x) g`
/// where `F` is the Frobenius map and `g ∈ PGL(2,q)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Psl2Aut {
    pub field_exp: u32,
    pub conj: ProjMat2,
}

impl Psl2Aut {
    pub fn identity() -> Self {
        Psl2Aut { field_exp: 0, conj: ProjMat2::IDENTITY }
    }

    pub fn inner(g: ProjMat2) -> Self {
        Psl2Aut { field_exp: 0, conj: g }
    }

    pub fn from_component(c: &AutComponent, f: &Gf) -> Option<Self> {
        Some(match c {
            AutComponent::Inner(Element::Mat(g)) => Self::inner(*g),
            AutComponent::Diag(d) => Self::inner(ProjMat2::from_mat(Mat2::diag(*d, 1), f).ok()?),
            AutComponent::Field(n) => Psl2Aut { field_exp: n % f.degree(), conj: ProjMat2::IDENTITY },
            AutComponent::Graph => Self::inner(graph_matrix(f)),
            _ => return None,
        })
    }

    pub fn apply(&self, x: &ProjMat2, f: &Gf) -> ProjMat2 {
        x.frob(self.field_exp, f).conjugate_by(&self.conj, f)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Psl2Aut, f: &Gf) -> Psl2Aut {
        Psl2Aut {
            field_exp: (self.field_exp + other.field_exp) % f.degree(),
            conj: self.conj.frob(other.field_exp, f).mul(&other.conj, f),
        }
    }

    pub fn inverse(&self, f: &Gf) -> Psl2Aut {
        let back = (f.degree() - self.field_exp) % f.degree();
        Psl2Aut { field_exp: back, conj: self.conj.frob(back, f).inv(f) }
    }

    pub fn is_identity(&self) -> bool {
        self.field_exp == 0 && self.conj.is_identity()
    }

    /// Inner for PSL(2,q): trivial field part and a conjugator inside PSL.
    pub fn is_inner_psl(&self, f: &Gf) -> bool {
        self.field_exp == 0 && self.conj.in_psl(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_INDEX_CAP;

    #[test]
    fn graph_is_transpose_inverse() {
        let s = GroupHandle::psl2(7).unwrap();
        let f = s.field().unwrap().clone();
        let m = ProjMat2::from_mat(Mat2::new(2, 3, 1, 2), &f).unwrap();
        let y = AutComponent::Graph.apply(&s, &Element::Mat(m)).unwrap();
        let expect = ProjMat2::from_mat(m.mat().inverse(&f).transpose(), &f).unwrap();
        assert_eq!(y, Element::Mat(expect));
    }

    #[test]
    fn normal_form_matches_component_words() {
        let s = IndexedGroup::new(GroupHandle::psl2(9).unwrap(), DEFAULT_INDEX_CAP).unwrap();
        let f = s.handle().field().unwrap().clone();
        let r = FactorAut::parse("field:1*diag:2*graph*inner:[[1,1],[0,1]]", s.handle()).unwrap();
        let nf = r.to_psl2(&f).unwrap();
        for x in s.elements() {
            let Element::Mat(m) = x else { unreachable!() };
            assert_eq!(r.apply(s.handle(), x).unwrap(), Element::Mat(nf.apply(m, &f)));
        }
        let inv = nf.inverse(&f);
        assert!(nf.then(&inv, &f).is_identity());
        let d = r.to_dense(&s).unwrap();
        assert!(d.is_automorphism_of(&s));
        assert!(d.then(&d.inverse()).is_identity());
    }

    #[test]
    fn composition_order() {
        let s = GroupHandle::alternating(5);
        let x: Vec<Element> = ["(0 1 2)", "(0 1)(2 3)", "()"].iter().map(|t| s.parse_element(t).unwrap()).collect();
        let a = Automorphism::parse("perm=(0 1 2); 0=inner:(0 1 2 3 4)", &s, 3).unwrap();
        let b = Automorphism::parse("perm=(1 2); 2=graph", &s, 3).unwrap();
        let lhs = a.then(&b).apply(&s, &x).unwrap();
        let rhs = b.apply(&s, &a.apply(&s, &x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
