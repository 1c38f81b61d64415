//! Arithmetic in the finite field GF(q), q = p^e.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial in the generator of the extension, lowest
//! degree first. The prime subfield is therefore `0..p`.

use crate::error::{Error, Result};

pub type FieldElem = u32;

#[derive(Debug, Clone)]
pub struct Gf {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Gf {}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

impl Gf {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        if q > 1 << 20 {
            return Err(Error::InvalidInput(format!("field size {q} too large")));
        }
        let modulus = if e == 1 { vec![0, 1] } else { find_irreducible(p, e) };
        let mulx = |a: u32| -> u32 {
            // multiply the digit vector of `a` by x and reduce by the monic modulus
            let mut digits = to_digits(a, p, e);
            let top = digits[e as usize - 1];
            for i in (1..e as usize).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for i in 0..e as usize {
                digits[i] = (digits[i] + (p - top) * modulus[i]) % p;
            }
            from_digits(&digits, p)
        };
        let mul_raw = |a: u32, b: u32| -> u32 {
            let bd = to_digits(b, p, e);
            let mut acc = vec![0u32; e as usize];
            let mut shifted = a;
            for &c in bd.iter() {
                if c != 0 {
                    let sd = to_digits(shifted, p, e);
                    for i in 0..e as usize {
                        acc[i] = (acc[i] + c * sd[i]) % p;
                    }
                }
                shifted = mulx(shifted);
            }
            from_digits(&acc, p)
        };
        // search for a primitive element
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        'cand: for g in 2..q.max(3) {
            let g = if q == 2 { 1 } else { g };
            let mut x = 1u32;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    continue 'cand;
                }
                exp[i as usize] = x;
                log[x as usize] = i;
                x = mul_raw(x, g);
            }
            if x == 1 {
                break;
            }
        }
        exp[q as usize - 1] = 1;
        Ok(Gf { p, e, q, exp, log })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> FieldElem {
        0
    }

    pub fn one(&self) -> FieldElem {
        1
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        0..self.q
    }

    pub fn prime_subfield(&self) -> impl Iterator<Item = FieldElem> {
        0..self.p
    }

    /// Reduces an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: FieldElem) -> FieldElem {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElem, n: u64) -> FieldElem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (n % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// The Frobenius power `a ↦ a^{p^n}`.
    pub fn frob(&self, a: FieldElem, n: u32) -> FieldElem {
        let n = n % self.e;
        if n == 0 {
            return a;
        }
        self.pow(a, (self.p as u64).pow(n))
    }

    pub fn is_square(&self, a: FieldElem) -> bool {
        a == 0 || self.p == 2 || self.log[a as usize] % 2 == 0
    }

    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if a == 0 {
            return Some(0);
        }
        if self.p == 2 {
            // squaring is a bijection in characteristic 2
            let l = self.log[a as usize] as u64;
            let half = if l % 2 == 0 { l / 2 } else { (l + self.q as u64 - 1) / 2 };
            return Some(self.exp[half as usize]);
        }
        let l = self.log[a as usize];
        (l % 2 == 0).then(|| self.exp[(l / 2) as usize])
    }
}

fn to_digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = vec![0; e as usize];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Lowest monic irreducible polynomial of degree `e` over GF(p), returned as
/// its `e` low coefficients (the leading 1 is implicit).
fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    (0..count)
        .map(|c| to_digits(c, p, e))
        .find(|low| {
            let mut f = low.clone();
            f.push(1);
            is_irreducible(&f, p)
        })
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    // trial division by all monic polynomials of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for c in 0..p.pow(d as u32) {
            let mut g = to_digits(c, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * gc) % p;
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(q: u32) {
        let f = Gf::new(q).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1] {
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c)),
                        "distributivity in GF({q})"
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            check_axioms(q);
        }
    }

    #[test]
    fn frobenius_is_automorphism_of_order_e() {
        for q in [4, 8, 9, 25, 27, 32] {
            let f = Gf::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.frob(a, f.degree()), a);
                for b in f.elements().step_by(3) {
                    assert_eq!(f.frob(f.mul(a, b), 1), f.mul(f.frob(a, 1), f.frob(b, 1)));
                    assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
                }
            }
            // order exactly e: some element is moved by every smaller power
            let g = f.primitive();
            for n in 1..f.degree() {
                assert_ne!(f.frob(g, n), g);
            }
        }
    }

    #[test]
    fn prime_subfield_is_fixed_by_frobenius() {
        let f = Gf::new(49).unwrap();
        for a in f.prime_subfield() {
            assert_eq!(f.frob(a, 1), a);
        }
    }

    #[test]
    fn square_roots() {
        for q in [5, 9, 13, 16] {
            let f = Gf::new(q).unwrap();
            for a in f.elements() {
                let sq = f.mul(a, a);
                let r = f.sqrt(sq).unwrap();
                assert_eq!(f.mul(r, r), sq);
                assert!(f.is_square(sq));
            }
        }
        let f = Gf::new(7).unwrap();
        assert!(f.sqrt(3).is_none());
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Gf::new(6).is_err());
        assert!(Gf::new(1).is_err());
        assert!(Gf::new(12).is_err());
    }
}
