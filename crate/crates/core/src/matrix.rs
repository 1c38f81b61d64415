//! 2×2 matrices over GF(q) and their projective classes.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Gf};

/// A 2×2 matrix `[[a, b], [c, d]]` stored row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat2(pub [FieldElem; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Mat2([a, b, c, d])
    }

    pub fn diag(x: FieldElem, y: FieldElem) -> Self {
        Mat2([x, 0, 0, y])
    }

    /// Upper unitriangular `[[1, t], [0, 1]]`.
    pub fn upper(t: FieldElem) -> Self {
        Mat2([1, t, 0, 1])
    }

    /// Lower unitriangular `[[1, 0], [t, 1]]`.
    pub fn lower(t: FieldElem) -> Self {
        Mat2([1, 0, t, 1])
    }

    pub fn mul(&self, o: &Mat2, f: &Gf) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, g, h, k] = o.0;
        Mat2([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    pub fn det(&self, f: &Gf) -> FieldElem {
        let [a, b, c, d] = self.0;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn inverse(&self, f: &Gf) -> Mat2 {
        let [a, b, c, d] = self.0;
        let di = f.inv(self.det(f));
        Mat2([f.mul(d, di), f.neg(f.mul(b, di)), f.neg(f.mul(c, di)), f.mul(a, di)])
    }

    pub fn scale(&self, s: FieldElem, f: &Gf) -> Mat2 {
        Mat2(self.0.map(|x| f.mul(x, s)))
    }

    /// Entrywise Frobenius `x ↦ x^{p^n}`.
    pub fn frob(&self, n: u32, f: &Gf) -> Mat2 {
        Mat2(self.0.map(|x| f.frob(x, n)))
    }

    pub fn transpose(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([a, c, b, d])
    }

    pub fn is_scalar(&self) -> bool {
        let [a, b, c, d] = self.0;
        b == 0 && c == 0 && a == d
    }

    pub fn pow(&self, e: u64, f: &Gf) -> Mat2 {
        let (mut acc, mut sq, mut e) = (Mat2::IDENTITY, *self, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq, f);
            }
            sq = sq.mul(&sq, f);
            e >>= 1;
        }
        acc
    }

    /// Parses `[[a,b],[c,d]]`; negative entries are read in the prime subfield.
    pub fn parse(text: &str, f: &Gf) -> Result<Mat2> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = cleaned
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("matrix must look like [[a,b],[c,d]]: {text:?}")))?;
        let vals = inner
            .split(|c| c == ',' || c == '[' || c == ']')
            .filter(|s| !s.is_empty())
            .map(|s| {
                let v: i64 = s.parse().map_err(|_| Error::Parse(format!("bad matrix entry {s:?}")))?;
                if v < 0 {
                    Ok(f.from_int(v))
                } else if (v as u64) < f.q() as u64 {
                    Ok(v as u32)
                } else {
                    Err(Error::Parse(format!("entry {v} outside GF({})", f.q())))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != 4 {
            return Err(Error::Parse(format!("matrix needs 4 entries: {text:?}")));
        }
        Ok(Mat2([vals[0], vals[1], vals[2], vals[3]]))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// An element of PGL(2,q): the class of an invertible matrix modulo scalars,
/// stored with the first nonzero entry (row-major) scaled to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjMat2(Mat2);

impl ProjMat2 {
    pub const IDENTITY: ProjMat2 = ProjMat2(Mat2::IDENTITY);

    pub fn from_mat(m: Mat2, f: &Gf) -> Result<Self> {
        if m.det(f) == 0 {
            return Err(Error::InvalidInput(format!("singular matrix {m}")));
        }
        Ok(Self::normalize(m, f))
    }

    fn normalize(m: Mat2, f: &Gf) -> Self {
        let lead = *m.0.iter().find(|&&x| x != 0).expect("invertible matrix has a nonzero entry");
        ProjMat2(m.scale(f.inv(lead), f))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn mul(&self, o: &ProjMat2, f: &Gf) -> ProjMat2 {
        Self::normalize(self.0.mul(&o.0, f), f)
    }

    pub fn inv(&self, f: &Gf) -> ProjMat2 {
        Self::normalize(self.0.inverse(f), f)
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &ProjMat2, f: &Gf) -> ProjMat2 {
        g.inv(f).mul(self, f).mul(g, f)
    }

    pub fn frob(&self, n: u32, f: &Gf) -> ProjMat2 {
        Self::normalize(self.0.frob(n, f), f)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat2::IDENTITY
    }

    /// True when the class meets SL(2,q), i.e. lies in PSL(2,q).
    pub fn in_psl(&self, f: &Gf) -> bool {
        f.is_square(self.0.det(f))
    }

    /// A determinant-one representative, when the class lies in PSL(2,q).
    pub fn lift_sl(&self, f: &Gf) -> Option<Mat2> {
        let s = f.sqrt(self.0.det(f))?;
        Some(self.0.scale(f.inv(s), f))
    }

    pub fn pow(&self, e: u64, f: &Gf) -> ProjMat2 {
        Self::normalize(self.0.pow(e, f), f)
    }
}

impl fmt::Display for ProjMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitriangular_product() {
        let f = Gf::new(7).unwrap();
        let m = Mat2::lower(3).mul(&Mat2::upper(5), &f);
        // u_-(a) u_+(b) = [[1, b], [a, 1 + ab]]
        assert_eq!(m, Mat2::new(1, 5, 3, f.add(1, f.mul(3, 5))));
        assert_eq!(m.det(&f), 1);
    }

    #[test]
    fn canonical_representative() {
        let f = Gf::new(11).unwrap();
        let m = Mat2::new(0, 3, 4, 5);
        let a = ProjMat2::from_mat(m, &f).unwrap();
        let b = ProjMat2::from_mat(m.scale(7, &f), &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mat().0[1], 1);
        assert!(ProjMat2::from_mat(Mat2::new(1, 2, 2, 4), &f).is_err());
    }

    #[test]
    fn lift_to_sl() {
        let f = Gf::new(9).unwrap();
        for a in 1..9 {
            let m = ProjMat2::from_mat(Mat2::new(a, 1, 0, 1), &f).unwrap();
            match m.lift_sl(&f) {
                Some(s) => {
                    assert_eq!(s.det(&f), 1);
                    assert!(m.in_psl(&f));
                }
                None => assert!(!m.in_psl(&f)),
            }
        }
    }

    #[test]
    fn parse_matrix() {
        let f = Gf::new(5).unwrap();
        assert_eq!(Mat2::parse("[[1, -1], [0, 1]]", &f).unwrap(), Mat2::upper(4));
        assert!(Mat2::parse("[[1,2],[3]]", &f).is_err());
        assert!(Mat2::parse("[[1,9],[0,1]]", &f).is_err());
    }
}
