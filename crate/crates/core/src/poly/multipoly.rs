//! Sparse multivariate polynomials over GF(q).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Gf};

/// A polynomial variable `t[α,β,l]` or `v[α,β,l]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    pub family: Family,
    pub alpha: u16,
    pub beta: u16,
    pub l: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    T,
    V,
}

impl Var {
    pub fn t(alpha: u16, beta: u16, l: u8) -> Self {
        Var { family: Family::T, alpha, beta, l }
    }

    pub fn v(alpha: u16, beta: u16, l: u8) -> Self {
        Var { family: Family::V, alpha, beta, l }
    }

    /// A free-standing variable `t_i`.
    pub fn plain(i: u16) -> Self {
        Var::t(i, 0, 0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::T => 't',
            Family::V => 'v',
        };
        if self.beta == 0 && self.l == 0 {
            write!(f, "{name}{}", self.alpha)
        } else {
            write!(f, "{name}[{},{},{}]", self.alpha, self.beta, self.l)
        }
    }
}

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Arc<Gf>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<Gf>) -> Self {
        MultiPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<Gf>, c: FieldElem) -> Self {
        let mut p = Self::zero(field);
        if c != 0 {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn one(field: &Arc<Gf>) -> Self {
        Self::constant(field, 1)
    }

    pub fn var(field: &Arc<Gf>, v: Var) -> Self {
        Self::monomial(field, 1, vec![(v, 1)])
    }

    pub fn monomial(field: &Arc<Gf>, c: FieldElem, mono: Monomial) -> Self {
        let mut p = Self::zero(field);
        let mono = mono.into_iter().filter(|m| m.1 > 0).fold(Vec::new(), |acc, m| mono_mul(&acc, &vec![m]));
        if c != 0 {
            p.terms.insert(mono, c);
        }
        p
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> FieldElem {
        self.terms.get(&Vec::new()).copied().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    fn check(&self, o: &MultiPoly) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch(self.field.q(), o.field.q()));
        }
        Ok(())
    }

    fn add_term(&mut self, mono: Monomial, c: FieldElem) {
        if c == 0 {
            return;
        }
        let f = &self.field;
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = f.add(*e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let f = &self.field;
        MultiPoly { field: f.clone(), terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect() }
    }

    pub fn sub(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: FieldElem) -> MultiPoly {
        if s == 0 {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        MultiPoly { field: f.clone(), terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.mul(c, s))).collect() }
    }

    pub fn mul(&self, o: &MultiPoly) -> Result<MultiPoly> {
        self.check(o)?;
        let mut out = Self::zero(&self.field);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// The ring endomorphism `f ↦ f^{p^n}`: coefficients go through the
    /// Frobenius and every exponent is multiplied by `p^n`.
    pub fn frobenius_power(&self, n: u32) -> MultiPoly {
        let f = &self.field;
        let scale = (f.p() as u64).pow(n);
        let mut out = Self::zero(f);
        for (m, &c) in &self.terms {
            let mono = m.iter().map(|&(v, e)| (v, u32::try_from(e as u64 * scale).expect("exponent overflow"))).collect();
            out.add_term(mono, f.frob(c, n));
        }
        out
    }

    /// Applies the Frobenius to coefficients only. On arguments from the
    /// prime subfield this agrees with [`MultiPoly::frobenius_power`].
    pub fn frobenius_coefficients(&self, n: u32) -> MultiPoly {
        let f = &self.field;
        MultiPoly { field: f.clone(), terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.frob(c, n))).collect() }
    }

    /// Reduces exponents using `x^q = x`, giving the canonical representative
    /// of the polynomial function on `GF(q)`: every exponent ends up in `1..q`.
    pub fn reduce_functional(&self) -> MultiPoly {
        let q = self.field.q();
        let mut out = Self::zero(&self.field);
        for (m, &c) in &self.terms {
            let mono = m.iter().map(|&(v, e)| (v, if e >= q { (e - 1) % (q - 1) + 1 } else { e })).collect();
            out.add_term(mono, c);
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .filter_map(|m| m.iter().find(|x| x.0 == v).map(|x| x.1))
            .max()
            .unwrap_or(0)
    }

    /// Largest per-variable degree over all variables.
    pub fn max_var_degree(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.iter().map(|x| x.1)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|x| x.1).sum()).max()
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|x| x.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Substitutes `v = value`.
    pub fn substitute(&self, v: Var, value: FieldElem) -> MultiPoly {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (m, &c) in &self.terms {
            match m.iter().position(|x| x.0 == v) {
                None => out.add_term(m.clone(), c),
                Some(i) => {
                    let mut rest = m.clone();
                    let (_, e) = rest.remove(i);
                    out.add_term(rest, f.mul(c, f.pow(value, e as u64)));
                }
            }
        }
        out
    }

    /// The image under the ring map sending each variable `x` to `c_x · y_x^{e_x}`
    /// where `map(x) = (c_x, y_x, e_x)`.
    pub fn map_vars(&self, map: impl Fn(Var) -> (FieldElem, Var, u32)) -> MultiPoly {
        let f = &self.field;
        let mut out = Self::zero(f);
        for (m, &c) in &self.terms {
            let mut coeff = c;
            let mut mono = Vec::new();
            for &(v, e) in m {
                let (cv, y, ey) = map(v);
                coeff = f.mul(coeff, f.pow(cv, e as u64));
                mono = mono_mul(&mono, &vec![(y, ey * e)]);
            }
            out.add_term(mono.into_iter().filter(|x| x.1 > 0).collect(), coeff);
        }
        out
    }

    /// Evaluates with unassigned variables read as 0.
    pub fn evaluate(&self, y: &BTreeMap<Var, FieldElem>) -> FieldElem {
        let f = &self.field;
        self.terms.iter().fold(0, |acc, (m, &c)| {
            let v = m.iter().fold(c, |a, &(x, e)| f.mul(a, f.pow(y.get(&x).copied().unwrap_or(0), e as u64)));
            f.add(acc, v)
        })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mono: Vec<String> =
                    m.iter().map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") }).collect();
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono.join("*"),
                    _ => format!("{c}*{}", mono.join("*")),
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[GF({})]({self})", self.field.q())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Arc<Gf> {
        Arc::new(Gf::new(q).unwrap())
    }

    #[test]
    fn square_in_characteristic_two() {
        let f = gf(2);
        let (t1, t2) = (MultiPoly::var(&f, Var::plain(1)), MultiPoly::var(&f, Var::plain(2)));
        let s = t1.add(&t2).unwrap().pow(2);
        let expect = t1.pow(2).add(&t2.pow(2)).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn frobenius_of_variable() {
        let f = gf(25);
        let t1 = MultiPoly::var(&f, Var::plain(1));
        assert_eq!(t1.frobenius_power(1), t1.pow(5));
    }

    #[test]
    fn degree_in_variable() {
        let f = gf(7);
        let (t1, t2) = (MultiPoly::var(&f, Var::plain(1)), MultiPoly::var(&f, Var::plain(2)));
        let p = t1.pow(2).mul(&t2).unwrap().add(&t2.pow(3)).unwrap();
        assert_eq!(p.degree_in(Var::plain(2)), 3);
        assert_eq!(p.degree_in(Var::plain(1)), 2);
        assert_eq!(p.degree_in(Var::plain(9)), 0);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = MultiPoly::one(&gf(5));
        let b = MultiPoly::one(&gf(7));
        assert_eq!(a.add(&b), Err(Error::FieldMismatch(5, 7)));
    }

    #[test]
    fn frobenius_is_multiplicative() {
        let f = gf(9);
        let t = |i| MultiPoly::var(&f, Var::plain(i));
        let a = t(1).scale(4).add(&t(2)).unwrap().add(&MultiPoly::constant(&f, 7)).unwrap();
        let b = t(1).mul(&t(3)).unwrap().scale(5).add(&t(2).pow(2)).unwrap();
        let lhs = a.mul(&b).unwrap().frobenius_power(1);
        let rhs = a.frobenius_power(1).mul(&b.frobenius_power(1)).unwrap();
        assert_eq!(lhs, rhs);
        let sum = a.add(&b).unwrap().frobenius_power(1);
        assert_eq!(sum, a.frobenius_power(1).add(&b.frobenius_power(1)).unwrap());
    }

    #[test]
    fn functional_reduction_preserves_values() {
        let f = gf(8);
        let t1 = MultiPoly::var(&f, Var::plain(1));
        let p = t1.pow(9).scale(3).add(&t1.pow(15)).unwrap();
        let r = p.reduce_functional();
        assert!(r.max_var_degree() < 8);
        for y in 0..8 {
            let a = BTreeMap::from([(Var::plain(1), y)]);
            assert_eq!(p.evaluate(&a), r.evaluate(&a));
        }
    }
}
