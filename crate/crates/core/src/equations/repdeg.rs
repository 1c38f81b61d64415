//! Character degrees from class multiplication coefficients, worked modulo a
//! prime `p ≡ 1 (mod exp G)` with `p > 2√|G|`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, IndexedGroup};

/// Built-in values of the least degree of a nontrivial real representation.
pub const R_TABLE: &[(&str, u32)] = &[("Alt(5)", 3), ("Alt(6)", 5), ("PSL(2,7)", 6)];

pub fn r_table(name: &str) -> Option<u32> {
    R_TABLE.iter().find(|(n, _)| *n == name).map(|&(_, r)| r)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IrrChar {
    pub degree: u64,
    pub trivial: bool,
    /// Frobenius–Schur indicator.
    pub indicator: i8,
}

impl IrrChar {
    /// Degree of the smallest real representation containing this character.
    pub fn real_degree(&self) -> u64 {
        if self.indicator == 1 {
            self.degree
        } else {
            2 * self.degree
        }
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Reduced row echelon basis of the null space of `m` (rows × cols).
fn null_space(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(row, r);
        let iv = inv_mod(m[row][c], p);
        for x in &mut m[row] {
            *x = *x * iv % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] + p - f * m[row][k] % p) % p;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][free]) % p;
            }
            v
        })
        .collect()
}

/// Degrees and indicators of all irreducible complex characters.
pub fn irreducible_characters(g: &IndexedGroup) -> Result<Vec<IrrChar>> {
    let n = g.order() as u64;
    let classes = conjugacy_classes(g);
    let k = classes.len();
    let mut cls = vec![0usize; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for x in c.iter() {
            cls[x as usize] = i;
        }
    }
    let reps: Vec<u32> = classes.iter().map(|c| c.iter().next().unwrap()).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let inv_class: Vec<usize> = reps.iter().map(|&x| cls[g.inv(x) as usize]).collect();
    let sq_class: Vec<usize> = reps.iter().map(|&x| cls[g.mul(x, x) as usize]).collect();
    let exponent = reps.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, g.elem_order(x)));
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * n) {
        p += exponent;
    }

    // a[r][s][t] = #{x ∈ C_r : x⁻¹ g_t ∈ C_s}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (r, c) in classes.iter().enumerate() {
        for x in c.iter() {
            let xi = g.inv(x);
            for (t, &gt) in reps.iter().enumerate() {
                a[r][cls[g.mul(xi, gt) as usize]][t] += 1;
            }
        }
    }

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for ar in &a {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let image = |v: &[u64]| -> Vec<u64> {
                (0..k).map(|s| (0..k).map(|t| ar[s][t] * v[t] % p).sum::<u64>() % p).collect()
            };
            let images: Vec<Vec<u64>> = basis.iter().map(|b| image(b)).collect();
            let mut covered = 0;
            for lambda in 0..p {
                // coefficients c with Σ c_i (A b_i − λ b_i) = 0
                let m: Vec<Vec<u64>> = (0..k)
                    .map(|s| {
                        basis
                            .iter()
                            .zip(&images)
                            .map(|(b, ab)| (ab[s] + p - lambda * b[s] % p) % p)
                            .collect()
                    })
                    .collect();
                let ns = null_space(m, basis.len(), p);
                if ns.is_empty() {
                    continue;
                }
                covered += ns.len();
                next.push(
                    ns.iter()
                        .map(|c| (0..k).map(|s| c.iter().zip(&basis).map(|(ci, b)| ci * b[s] % p).sum::<u64>() % p).collect())
                        .collect(),
                );
            }
            if covered != basis.len() {
                return Err(Error::Certificate("class matrix is not diagonalizable modulo p".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|b| b.len() != 1) {
        return Err(Error::Certificate("class sums do not separate the characters".into()));
    }

    let id = cls[0];
    let mut out = Vec::with_capacity(k);
    for sp in spaces {
        let v = &sp[0];
        if v[id] == 0 {
            return Err(Error::Certificate("eigenvector vanishes at the identity class".into()));
        }
        let s = inv_mod(v[id], p);
        let omega: Vec<u64> = v.iter().map(|x| x * s % p).collect();
        let norm = (0..k).fold(0, |acc, r| (acc + omega[r] * omega[inv_class[r]] % p * inv_mod(sizes[r], p)) % p);
        let d2 = n % p * inv_mod(norm, p) % p;
        let degree = (1..)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2 && n % d == 0)
            .ok_or_else(|| Error::Certificate("no integral degree matches the norm".into()))?;
        // χ(g_r) = ω_r d / |C_r|, ν = |G|⁻¹ Σ_r |C_r| χ(g_r²)
        let chi = |r: usize| omega[r] * degree % p * inv_mod(sizes[r], p) % p;
        let nu = (0..k).fold(0, |acc, r| (acc + sizes[r] * chi(sq_class[r]) % p) % p) * inv_mod(n % p, p) % p;
        let indicator = match nu {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            _ => return Err(Error::Certificate("indicator is not in {-1, 0, 1}".into())),
        };
        let trivial = (0..k).all(|r| omega[r] == sizes[r] % p);
        out.push(IrrChar { degree, trivial, indicator });
    }
    if out.iter().map(|c| c.degree * c.degree).sum::<u64>() != n {
        return Err(Error::Certificate("squared degrees do not sum to the group order".into()));
    }
    out.sort_by_key(|c| (c.degree, !c.trivial, -c.indicator));
    Ok(out)
}

/// Least degree of a nontrivial real representation.
pub fn min_real_rep_degree(g: &IndexedGroup) -> Result<u64> {
    irreducible_characters(g)?
        .iter()
        .filter(|c| !c.trivial)
        .map(IrrChar::real_degree)
        .min()
        .ok_or_else(|| Error::InvalidInput("the trivial group has no nontrivial representation".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct RTableCheck {
    pub group: String,
    pub table: u32,
    pub oracle: u64,
    pub verified: bool,
}

/// Compares every table entry with [`min_real_rep_degree`].
pub fn check_r_table(cap: usize) -> Result<Vec<RTableCheck>> {
    R_TABLE
        .iter()
        .map(|&(name, table)| {
            let g = crate::group::make_indexed(name, cap)?;
            let oracle = min_real_rep_degree(&g)?;
            Ok(RTableCheck { group: name.to_string(), table, oracle, verified: oracle == table as u64 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};

    fn degrees(h: GroupHandle) -> Vec<u64> {
        let g = IndexedGroup::new(h, DEFAULT_INDEX_CAP).unwrap();
        irreducible_characters(&g).unwrap().iter().map(|c| c.degree).collect()
    }

    #[test]
    fn known_degrees() {
        assert_eq!(degrees(GroupHandle::alternating(5)), vec![1, 3, 3, 4, 5]);
        assert_eq!(degrees(GroupHandle::symmetric(4)), vec![1, 1, 2, 3, 3]);
        assert_eq!(degrees(GroupHandle::cyclic(3)), vec![1, 1, 1]);
        assert_eq!(degrees(GroupHandle::psl2(7).unwrap()), vec![1, 3, 3, 6, 7, 8]);
    }

    #[test]
    fn cyclic_three_needs_a_plane() {
        let g = IndexedGroup::new(GroupHandle::cyclic(3), DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(min_real_rep_degree(&g).unwrap(), 2);
    }
}
