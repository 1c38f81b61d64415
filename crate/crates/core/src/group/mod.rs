//! Finite groups: permutation groups, PSL/PGL(2,q), direct powers with a
//! permuting top group, and semidirect products over coset actions.

mod aut;
mod classes;
mod coset;
mod holomorph;
mod indexed;
mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

pub use aut::{AutComponent, Automorphism, DenseAut, FactorAut, Psl2Aut};
pub use classes::conjugacy_classes;
pub use coset::{coset_action, CosetAction};
pub use holomorph::{AutAction, DenseCtx, HolElem, NAut, Psl2Ctx};
pub use indexed::{IndexedGroup, DEFAULT_INDEX_CAP};
pub use spec::{make_group, make_indexed, split_top_level};

use crate::error::{Error, Result};
use crate::field::Gf;
use crate::matrix::{Mat2, ProjMat2};
use crate::perm::Perm;

/// Coordinates of a direct power `S^k` (dense indices into the indexed base)
/// together with the permutation of the factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PowerElem {
    pub coords: Vec<u32>,
    pub top: Perm,
}

/// An element `k·l` of `S^Ω ⋊ L`. The fiber `k` is sparse: coordinates that
/// are absent hold the identity, and the identity is never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SemidirectElement {
    pub fiber: BTreeMap<u32, u32>,
    pub top: u32,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Element {
    Perm(Perm),
    Mat(ProjMat2),
    Power(PowerElem),
    Semi(SemidirectElement),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProjKind {
    Psl,
    Pgl,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PermFamily {
    Alt,
    Sym,
    Cyclic,
}

#[derive(Clone, Debug)]
pub enum Backend {
    Perm { degree: usize, family: PermFamily },
    Proj { field: Arc<Gf>, kind: ProjKind },
    Power { base: Arc<IndexedGroup>, k: usize, cyclic_top: bool },
    Semidirect { fiber: Arc<IndexedGroup>, top: Arc<IndexedGroup>, action: Arc<CosetAction> },
}

/// A finite group with working multiplication, inversion and identity.
#[derive(Clone, Debug)]
pub struct GroupHandle {
    name: String,
    backend: Backend,
    generators: Vec<Element>,
    order: BigUint,
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, i| acc * i)
}

impl GroupHandle {
    pub fn alternating(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1, 2]]).unwrap());
            if n >= 4 {
                let cyc: Vec<u32> = if n % 2 == 1 { (0..n as u32).collect() } else { (1..n as u32).collect() };
                gens.push(Perm::from_cycles(n, &[cyc]).unwrap());
            }
        }
        let order = if n < 2 { BigUint::from(1u32) } else { factorial(n) / 2u32 };
        GroupHandle {
            name: format!("Alt({n})"),
            backend: Backend::Perm { degree: n, family: PermFamily::Alt },
            generators: gens.into_iter().map(Element::Perm).collect(),
            order,
        }
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
            if n >= 3 {
                gens.push(Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
            }
        }
        GroupHandle {
            name: format!("Sym({n})"),
            backend: Backend::Perm { degree: n, family: PermFamily::Sym },
            generators: gens.into_iter().map(Element::Perm).collect(),
            order: factorial(n),
        }
    }

    pub fn cyclic(n: usize) -> Self {
        let n = n.max(1);
        let gen = Perm::from_cycles(n, &[(0..n as u32).collect()]).unwrap();
        GroupHandle {
            name: format!("Cyclic({n})"),
            backend: Backend::Perm { degree: n, family: PermFamily::Cyclic },
            generators: vec![Element::Perm(gen)],
            order: BigUint::from(n),
        }
    }

    pub fn psl2(q: u32) -> Result<Self> {
        Self::projective(q, ProjKind::Psl)
    }

    pub fn pgl2(q: u32) -> Result<Self> {
        Self::projective(q, ProjKind::Pgl)
    }

    fn projective(q: u32, kind: ProjKind) -> Result<Self> {
        let f = Gf::new(q)?;
        let z = f.primitive();
        let mut mats = vec![Mat2::upper(1), Mat2::lower(1)];
        if f.degree() > 1 {
            mats.push(Mat2::diag(z, f.inv(z)));
        }
        if kind == ProjKind::Pgl {
            mats.push(Mat2::diag(z, 1));
        }
        let gens = mats
            .into_iter()
            .map(|m| ProjMat2::from_mat(m, &f).map(Element::Mat))
            .collect::<Result<Vec<_>>>()?;
        let q = q as u64;
        let sl = BigUint::from(q * (q * q - 1));
        let order = match kind {
            ProjKind::Psl if q % 2 == 1 => sl / 2u32,
            _ => sl,
        };
        let name = match kind {
            ProjKind::Psl => format!("PSL(2,{q})"),
            ProjKind::Pgl => format!("PGL(2,{q})"),
        };
        Ok(GroupHandle { name, backend: Backend::Proj { field: Arc::new(f), kind }, generators: gens, order })
    }

    /// `S^k ⋊ T` where `T` is either the cyclic group rotating the factors or trivial.
    pub fn power(base: Arc<IndexedGroup>, k: usize, cyclic_top: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("power exponent must be positive".into()));
        }
        let id = Perm::identity(k);
        let mut gens = Vec::new();
        let slots = if cyclic_top { 1 } else { k };
        for slot in 0..slots {
            for &g in base.gens() {
                let mut coords = vec![0u32; k];
                coords[slot] = g;
                gens.push(Element::Power(PowerElem { coords, top: id.clone() }));
            }
        }
        if cyclic_top && k > 1 {
            let rot = Perm::from_cycles(k, &[(0..k as u32).collect()]).unwrap();
            gens.push(Element::Power(PowerElem { coords: vec![0; k], top: rot }));
        }
        let mut order = BigUint::from(base.order()).pow(k as u32);
        if cyclic_top {
            order *= k;
        }
        let name = format!("{}^{} : {}", base.handle().name(), k, if cyclic_top { "cyclic" } else { "trivial" });
        Ok(GroupHandle { name, backend: Backend::Power { base, k, cyclic_top }, generators: gens, order })
    }

    /// `S^Ω ⋊ L` with `L` permuting the coordinates through its action on `Ω`.
    pub fn semidirect(fiber: Arc<IndexedGroup>, action: Arc<CosetAction>) -> Self {
        let top = action.top().clone();
        let mut gens = Vec::new();
        for &g in fiber.gens() {
            if g != 0 {
                gens.push(Element::Semi(SemidirectElement { fiber: BTreeMap::from([(0, g)]), top: 0 }));
            }
        }
        for &l in top.gens() {
            gens.push(Element::Semi(SemidirectElement { fiber: BTreeMap::new(), top: l }));
        }
        let order = BigUint::from(fiber.order()).pow(action.degree() as u32) * top.order();
        let name = format!("wreath({}, {}, cosets of index {})", fiber.handle().name(), top.handle().name(), action.degree());
        GroupHandle { name, backend: Backend::Semidirect { fiber, top, action }, generators: gens, order }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn field(&self) -> Option<&Arc<Gf>> {
        match &self.backend {
            Backend::Proj { field, .. } => Some(field),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.backend {
            Backend::Perm { degree, .. } => Element::Perm(Perm::identity(*degree)),
            Backend::Proj { .. } => Element::Mat(ProjMat2::IDENTITY),
            Backend::Power { k, .. } => Element::Power(PowerElem { coords: vec![0; *k], top: Perm::identity(*k) }),
            Backend::Semidirect { .. } => Element::Semi(SemidirectElement { fiber: BTreeMap::new(), top: 0 }),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.backend, a, b) {
            (Backend::Perm { .. }, Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose(y)),
            (Backend::Proj { field, .. }, Element::Mat(x), Element::Mat(y)) => Element::Mat(x.mul(y, field)),
            (Backend::Power { base, .. }, Element::Power(x), Element::Power(y)) => {
                // coordinate i of k1 · k2^{l1⁻¹} is k1(i) · k2(l1(i))
                let coords = x
                    .coords
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| base.mul(c, y.coords[x.top.image(i as u32) as usize]))
                    .collect();
                Element::Power(PowerElem { coords, top: x.top.compose(&y.top) })
            }
            (Backend::Semidirect { fiber, top, action }, Element::Semi(x), Element::Semi(y)) => {
                let mut out = x.fiber.clone();
                let back = top.inv(x.top);
                for (&j, &v) in &y.fiber {
                    let i = action.image(j, back);
                    let slot = out.entry(i).or_insert(0);
                    *slot = fiber.mul(*slot, v);
                    if *slot == 0 {
                        out.remove(&i);
                    }
                }
                Element::Semi(SemidirectElement { fiber: out, top: top.mul(x.top, y.top) })
            }
            _ => panic!("element backend does not match group {}", self.name),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (&self.backend, a) {
            (Backend::Perm { .. }, Element::Perm(x)) => Element::Perm(x.inverse()),
            (Backend::Proj { field, .. }, Element::Mat(x)) => Element::Mat(x.inv(field)),
            (Backend::Power { base, .. }, Element::Power(x)) => {
                let back = x.top.inverse();
                let coords = (0..x.coords.len() as u32)
                    .map(|i| base.inv(x.coords[back.image(i) as usize]))
                    .collect();
                Element::Power(PowerElem { coords, top: back })
            }
            (Backend::Semidirect { fiber, top, action }, Element::Semi(x)) => {
                let out = x.fiber.iter().map(|(&i, &v)| (action.image(i, x.top), fiber.inv(v))).collect();
                Element::Semi(SemidirectElement { fiber: out, top: top.inv(x.top) })
            }
            _ => panic!("element backend does not match group {}", self.name),
        }
    }

    pub fn pow(&self, a: &Element, e: i64) -> Element {
        let base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `g⁻¹ x g`.
    pub fn conj(&self, x: &Element, g: &Element) -> Element {
        self.mul(&self.mul(&self.inv(g), x), g)
    }

    pub fn element_order(&self, x: &Element) -> u64 {
        match x {
            Element::Perm(p) => p.order(),
            _ => {
                let id = self.identity();
                let mut y = x.clone();
                let mut n = 1;
                while y != id {
                    y = self.mul(&y, x);
                    n += 1;
                }
                n
            }
        }
    }

    /// Checks that `x` has this group's backend shape and satisfies its membership test.
    pub fn check_element(&self, x: &Element) -> Result<()> {
        let ok = match (&self.backend, x) {
            (Backend::Perm { degree, family }, Element::Perm(p)) => {
                p.degree() == *degree
                    && match family {
                        PermFamily::Sym => true,
                        PermFamily::Alt => p.is_even(),
                        PermFamily::Cyclic => {
                            let gen = match &self.generators[0] {
                                Element::Perm(g) => g,
                                _ => unreachable!(),
                            };
                            (0..*degree as i64).any(|e| gen.pow(e) == *p)
                        }
                    }
            }
            (Backend::Proj { field, kind }, Element::Mat(m)) => *kind == ProjKind::Pgl || m.in_psl(field),
            (Backend::Power { base, k, cyclic_top }, Element::Power(pe)) => {
                pe.coords.len() == *k
                    && pe.coords.iter().all(|&c| (c as usize) < base.order())
                    && pe.top.degree() == *k
                    && (if *cyclic_top {
                        let shift = pe.top.image(0);
                        (0..*k as u32).all(|i| pe.top.image(i) == (i + shift) % *k as u32)
                    } else {
                        pe.top.is_identity()
                    })
            }
            (Backend::Semidirect { fiber, top, action }, Element::Semi(se)) => {
                (se.top as usize) < top.order()
                    && se.fiber.iter().all(|(&i, &v)| (i as usize) < action.degree() && v != 0 && (v as usize) < fiber.order())
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::BackendMismatch(format!("{} is not an element of {}", self.format(x), self.name)))
        }
    }

    /// Uniform random element, available for groups whose shape allows direct sampling.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Element> {
        match &self.backend {
            Backend::Power { base, k, cyclic_top } => {
                let coords = (0..*k).map(|_| rng.gen_range(0..base.order() as u32)).collect();
                let shift = if *cyclic_top { rng.gen_range(0..*k as u32) } else { 0 };
                let top = Perm::from_images((0..*k as u32).map(|i| (i + shift) % *k as u32).collect()).ok()?;
                Some(Element::Power(PowerElem { coords, top }))
            }
            Backend::Semidirect { fiber, top, action } => {
                let mut map = BTreeMap::new();
                for i in 0..action.degree() as u32 {
                    let v = rng.gen_range(0..fiber.order() as u32);
                    if v != 0 {
                        map.insert(i, v);
                    }
                }
                Some(Element::Semi(SemidirectElement { fiber: map, top: rng.gen_range(0..top.order() as u32) }))
            }
            _ => None,
        }
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let text = text.trim();
        let x = match &self.backend {
            Backend::Perm { degree, .. } => Element::Perm(Perm::parse_cycles(text, *degree)?),
            Backend::Proj { field, .. } => Element::Mat(ProjMat2::from_mat(Mat2::parse(text, field)?, field)?),
            Backend::Power { base, k, .. } => {
                let (body, top) = split_at_top(text);
                let body = body
                    .trim()
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("power element must look like {{e1; ..; ek}}: {text:?}")))?;
                let coords = body
                    .split(';')
                    .map(|c| base.index_of_parsed(c))
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() != *k {
                    return Err(Error::Parse(format!("expected {k} coordinates in {text:?}")));
                }
                let top = match top {
                    Some(t) => Perm::parse_cycles(t, *k)?,
                    None => Perm::identity(*k),
                };
                Element::Power(PowerElem { coords, top })
            }
            Backend::Semidirect { fiber, top, .. } => {
                let (body, top_text) = split_at_top(text);
                let body = body
                    .trim()
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| Error::Parse(format!("fiber must look like {{i: e; ..}}: {text:?}")))?;
                let mut map = BTreeMap::new();
                for entry in body.split(';').filter(|s| !s.trim().is_empty()) {
                    let (i, e) = entry
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("fiber entry needs 'coord: element': {entry:?}")))?;
                    let i: u32 = i.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate {i:?}")))?;
                    let v = fiber.index_of_parsed(e)?;
                    if v != 0 {
                        map.insert(i, v);
                    }
                }
                let t = match top_text {
                    Some(t) => top.index_of_parsed(t)?,
                    None => 0,
                };
                Element::Semi(SemidirectElement { fiber: map, top: t })
            }
        };
        self.check_element(&x)?;
        Ok(x)
    }

    pub fn format(&self, x: &Element) -> String {
        match (&self.backend, x) {
            (_, Element::Perm(p)) => p.to_string(),
            (_, Element::Mat(m)) => m.to_string(),
            (Backend::Power { base, .. }, Element::Power(pe)) => {
                let body: Vec<String> = pe.coords.iter().map(|&c| base.format_index(c)).collect();
                if pe.top.is_identity() {
                    format!("{{{}}}", body.join("; "))
                } else {
                    format!("{{{}}} @ {}", body.join("; "), pe.top)
                }
            }
            (Backend::Semidirect { fiber, top, .. }, Element::Semi(se)) => {
                let body: Vec<String> =
                    se.fiber.iter().map(|(i, &v)| format!("{i}: {}", fiber.format_index(v))).collect();
                format!("{{{}}} @ {}", body.join("; "), top.format_index(se.top))
            }
            (_, other) => format!("{other:?}"),
        }
    }
}

fn split_at_top(text: &str) -> (&str, Option<&str>) {
    match text.rfind('@') {
        Some(i) => (&text[..i], Some(text[i + 1..].trim())),
        None => (text, None),
    }
}

impl fmt::Display for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}
