//! Square matrices with polynomial entries.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::multipoly::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::field::{FieldElem, Gf};
use crate::matrix::Mat2;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMat {
    n: usize,
    entries: Vec<MultiPoly>,
}

/// Which entry of a matrix witnesses that it is not scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Off-diagonal entry `(row, col)`, 0-based.
    Off(usize, usize),
    /// Difference of diagonal entries `(i,i) − (j,j)`.
    DiagDiff(usize, usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Off(i, j) => write!(f, "entry({},{})", i + 1, j + 1),
            Witness::DiagDiff(i, j) => write!(f, "entry({},{})-entry({},{})", i + 1, i + 1, j + 1, j + 1),
        }
    }
}

impl SymMat {
    pub fn from_entries(n: usize, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::InvalidInput(format!("{} entries do not make a {n}x{n} matrix", entries.len())));
        }
        let q = entries[0].field().q();
        if let Some(e) = entries.iter().find(|e| e.field().q() != q) {
            return Err(Error::FieldMismatch(q, e.field().q()));
        }
        Ok(SymMat { n, entries })
    }

    pub fn identity(field: &Arc<Gf>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { MultiPoly::one(field) } else { MultiPoly::zero(field) })
            .collect();
        SymMat { n, entries }
    }

    pub fn constant2(field: &Arc<Gf>, m: &Mat2) -> Self {
        SymMat { n: 2, entries: m.0.iter().map(|&c| MultiPoly::constant(field, c)).collect() }
    }

    /// `u_-(t) = [[1, 0], [t, 1]]`.
    pub fn lower(t: MultiPoly) -> Self {
        let f = t.field().clone();
        SymMat { n: 2, entries: vec![MultiPoly::one(&f), MultiPoly::zero(&f), t, MultiPoly::one(&f)] }
    }

    /// `u_+(t) = [[1, t], [0, 1]]`.
    pub fn upper(t: MultiPoly) -> Self {
        let f = t.field().clone();
        SymMat { n: 2, entries: vec![MultiPoly::one(&f), t, MultiPoly::zero(&f), MultiPoly::one(&f)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<Gf> {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn mul(&self, o: &SymMat) -> Result<SymMat> {
        if self.n != o.n {
            return Err(Error::InvalidInput(format!("cannot multiply {0}x{0} by {1}x{1}", self.n, o.n)));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MultiPoly::zero(self.field());
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(SymMat { n, entries })
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> SymMat {
        SymMat { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> SymMat {
        let n = self.n;
        SymMat { n, entries: (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect() }
    }

    /// Inverse of a 2×2 matrix of determinant one: `[[d, −b], [−c, a]]`.
    pub fn inverse_sl2(&self) -> Result<SymMat> {
        if self.n != 2 {
            return Err(Error::InvalidInput("inverse_sl2 needs a 2x2 matrix".into()));
        }
        let [a, b, c, d] = [&self.entries[0], &self.entries[1], &self.entries[2], &self.entries[3]];
        Ok(SymMat { n: 2, entries: vec![d.clone(), b.neg(), c.neg(), a.clone()] })
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<MultiPoly> {
        fn minor(m: &SymMat, rows: &[usize], cols: &[usize]) -> Result<MultiPoly> {
            if rows.len() == 1 {
                return Ok(m.get(rows[0], cols[0]).clone());
            }
            let mut acc = MultiPoly::zero(m.field());
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = e.mul(&minor(m, &rows[1..], &rest)?)?;
                acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
            }
            Ok(acc)
        }
        let idx: Vec<usize> = (0..self.n).collect();
        minor(self, &idx, &idx)
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Less => self.get(i, j).is_zero(),
                std::cmp::Ordering::Equal => self.get(i, j).as_constant() == Some(1),
                std::cmp::Ordering::Greater => true,
            })
        })
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        self.transpose().is_lower_unitriangular()
    }

    /// The first entry, in the order off-diagonals by row then diagonal
    /// differences against `(1,1)`, that is a nonzero polynomial. For 2×2 this
    /// is `b`, then `c`, then `a − d`. `None` means the matrix is scalar.
    pub fn noncentral_witness(&self) -> Result<Option<(Witness, MultiPoly)>> {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j).is_zero() {
                    return Ok(Some((Witness::Off(i, j), self.get(i, j).clone())));
                }
            }
        }
        for i in 1..self.n {
            let d = self.get(0, 0).sub(self.get(i, i))?;
            if !d.is_zero() {
                return Ok(Some((Witness::DiagDiff(0, i), d)));
            }
        }
        Ok(None)
    }

    pub fn max_var_degree(&self) -> u32 {
        self.entries.iter().map(|e| e.max_var_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.entries.iter().map(|e| e.degree_in(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.entries.iter().flat_map(|e| e.vars()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn term_count(&self) -> usize {
        self.entries.iter().map(|e| e.term_count()).sum()
    }

    pub fn evaluate(&self, y: &BTreeMap<Var, FieldElem>) -> Vec<FieldElem> {
        self.entries.iter().map(|e| e.evaluate(y)).collect()
    }

    pub fn evaluate2(&self, y: &BTreeMap<Var, FieldElem>) -> Result<Mat2> {
        if self.n != 2 {
            return Err(Error::InvalidInput("evaluate2 needs a 2x2 matrix".into()));
        }
        let v = self.evaluate(y);
        Ok(Mat2([v[0], v[1], v[2], v[3]]))
    }
}

impl fmt::Display for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_times_upper() {
        let f = Arc::new(Gf::new(7).unwrap());
        let (a, b) = (MultiPoly::var(&f, Var::plain(1)), MultiPoly::var(&f, Var::plain(2)));
        let m = SymMat::lower(a.clone()).mul(&SymMat::upper(b.clone())).unwrap();
        let expect = SymMat::from_entries(
            2,
            vec![MultiPoly::one(&f), b.clone(), a.clone(), MultiPoly::one(&f).add(&a.mul(&b).unwrap()).unwrap()],
        )
        .unwrap();
        assert_eq!(m, expect);
        assert_eq!(m.det().unwrap(), MultiPoly::one(&f));
        assert_eq!(m.mul(&m.inverse_sl2().unwrap()).unwrap(), SymMat::identity(&f, 2));
    }

    #[test]
    fn witness_order() {
        let f = Arc::new(Gf::new(5).unwrap());
        let t = MultiPoly::var(&f, Var::plain(1));
        let (w, p) = SymMat::lower(t.clone()).noncentral_witness().unwrap().unwrap();
        assert_eq!(w, Witness::Off(1, 0));
        assert_eq!(p, t);
        assert_eq!(SymMat::identity(&f, 4).noncentral_witness().unwrap(), None);
    }
}
