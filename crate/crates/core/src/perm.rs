use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`, acting on the right: `(a * b)(i) = b(a(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(Error::InvalidInput(format!("point {a} outside degree {n}")));
                }
                if touched[a as usize] {
                    return Err(Error::InvalidInput(format!("point {a} repeated in cycles")));
                }
                touched[a as usize] = true;
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let pts = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| Error::Parse(format!("bad point {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start];
            while j as usize != start {
                seen[j as usize] = true;
                cyc.push(j);
                j = self.images[j as usize];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{self}")
    }
}

/// Orbits of the group generated by `gens` on `{0, .., n-1}`.
pub fn orbits(n: usize, gens: &[Perm]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as u32];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_five_cycle() {
        let g = Perm::parse_cycles("(0 1 2 3 4)", 5).unwrap();
        assert_eq!(g.pow(2).to_string(), "(0 2 4 1 3)");
    }

    #[test]
    fn inverse_and_order() {
        let g = Perm::parse_cycles("(0 1 2)(3 4)", 6).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        assert_eq!(g.order(), 6);
        assert_eq!(g.pow(6), Perm::identity(6));
        assert_eq!(g.pow(-1), g.inverse());
        assert_eq!(g.fixed_points(), 1);
        assert_eq!(g.cycle_count(), 3);
        assert!(!g.is_even());
    }

    #[test]
    fn right_action_convention() {
        let a = Perm::parse_cycles("(0 1)", 3).unwrap();
        let b = Perm::parse_cycles("(1 2)", 3).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).image(0), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::parse_cycles("(0 1", 3).is_err());
        assert!(Perm::parse_cycles("(0 5)", 3).is_err());
        assert!(Perm::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn orbits_of_generators() {
        let g = Perm::parse_cycles("(0 1)(2 3 4)", 6).unwrap();
        assert_eq!(orbits(6, &[g]), vec![vec![0, 1], vec![2, 3, 4], vec![5]]);
    }
}
