//! Solving `κ = ∏_i [f_i, z_i]` in `S^n` coordinatewise:
//!
//! ```text
//! E_j:  k_j = ∏_i u_{i,j}(z(i)_{π_i(j)}⁻¹) · z(i)_j
//! ```
//!
//! Variables are eliminated one at a time until each orbit of the `π_i` is a
//! single equation, which is then solved as a product of twisted classes.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{DenseAut, IndexedGroup, NAut};
use crate::perm::{orbits, Perm};
use crate::rng::stream;

use super::twisted::random_nontrivial_aut;

pub const DEFAULT_RETRIES: usize = 32;

/// The twist `f_i`: `(f_i(a))_j = u_{i,j}(a_{π_i(j)})`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub perm: Perm,
    pub auts: Vec<DenseAut>,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub kappa: Vec<u32>,
    pub twists: Vec<Twist>,
}

impl EquationSystem {
    pub fn n(&self) -> usize {
        self.kappa.len()
    }

    pub fn validate(&self, s: &IndexedGroup) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(Error::InvalidInput("system has no equations".into()));
        }
        for (i, t) in self.twists.iter().enumerate() {
            if t.perm.degree() != n || t.auts.len() != n {
                return Err(Error::InvalidInput(format!("twist {i} does not act on {n} factors")));
            }
            if t.auts.iter().any(|a| a.0.len() != s.order()) {
                return Err(Error::InvalidInput(format!("twist {i} has an automorphism of the wrong group")));
            }
        }
        if self.kappa.iter().any(|&k| k as usize >= s.order()) {
            return Err(Error::InvalidInput("target coordinate outside the group".into()));
        }
        Ok(())
    }

    /// Right-hand sides of all `E_j` at the assignment `z[i][j]`.
    pub fn evaluate(&self, s: &IndexedGroup, z: &[Vec<u32>]) -> Vec<u32> {
        (0..self.n())
            .map(|j| {
                self.twists.iter().zip(z).fold(0, |acc, (t, zi)| {
                    let moved = t.auts[j].apply(s.inv(zi[t.perm.image(j as u32) as usize]));
                    s.mul(acc, s.mul(moved, zi[j]))
                })
            })
            .collect()
    }

    pub fn is_solution(&self, s: &IndexedGroup, z: &[Vec<u32>]) -> bool {
        self.evaluate(s, z) == self.kappa
    }

    /// `{(i, j) : π_i(j) = j}`.
    pub fn fixed_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, t) in self.twists.iter().enumerate() {
            for j in 0..self.n() {
                if t.perm.image(j as u32) == j as u32 {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub z: Vec<Vec<u32>>,
    pub orbits: Vec<Vec<u32>>,
    pub eliminated: Vec<(usize, usize)>,
    pub live_brackets: usize,
    pub attempts: usize,
    pub verified: bool,
    pub transcript: Vec<String>,
}

/// `aut(z^{±1})` or a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    Const(u32),
    Var { var: usize, inv: bool, aut: u32 },
}

struct Auts<'a> {
    s: &'a IndexedGroup,
    list: Vec<DenseAut>,
    ids: HashMap<DenseAut, u32>,
    then: HashMap<(u32, u32), u32>,
    inverse: HashMap<u32, u32>,
}

impl<'a> Auts<'a> {
    fn new(s: &'a IndexedGroup) -> Self {
        let mut a = Auts { s, list: Vec::new(), ids: HashMap::new(), then: HashMap::new(), inverse: HashMap::new() };
        a.intern(DenseAut::identity(s.order()));
        a
    }

    fn intern(&mut self, d: DenseAut) -> u32 {
        if let Some(&id) = self.ids.get(&d) {
            return id;
        }
        let id = self.list.len() as u32;
        self.ids.insert(d.clone(), id);
        self.list.push(d);
        id
    }

    fn then(&mut self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        if let Some(&c) = self.then.get(&(a, b)) {
            return c;
        }
        let c = self.intern(self.list[a as usize].then(&self.list[b as usize]));
        self.then.insert((a, b), c);
        c
    }

    fn inverse(&mut self, a: u32) -> u32 {
        if let Some(&c) = self.inverse.get(&a) {
            return c;
        }
        let c = self.intern(self.list[a as usize].inverse());
        self.inverse.insert(a, c);
        c
    }

    fn apply(&self, a: u32, x: u32) -> u32 {
        if a == 0 {
            x
        } else {
            self.list[a as usize].apply(x)
        }
    }

    fn apply_terms(&mut self, terms: &[Term], a: u32) -> Vec<Term> {
        terms
            .iter()
            .map(|&t| match t {
                Term::Const(c) => Term::Const(self.apply(a, c)),
                Term::Var { var, inv, aut } => Term::Var { var, inv, aut: self.then(aut, a) },
            })
            .collect()
    }

    fn invert_terms(&self, terms: &[Term]) -> Vec<Term> {
        terms
            .iter()
            .rev()
            .map(|&t| match t {
                Term::Const(c) => Term::Const(self.s.inv(c)),
                Term::Var { var, inv, aut } => Term::Var { var, inv: !inv, aut },
            })
            .collect()
    }

    fn simplify(&self, terms: Vec<Term>) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match (out.last_mut(), t) {
                (_, Term::Const(0)) => {}
                (Some(Term::Const(a)), Term::Const(b)) => {
                    *a = self.s.mul(*a, b);
                    if *a == 0 {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        out
    }

    fn eval_term(&self, t: &Term, values: &[Option<u32>]) -> u32 {
        match *t {
            Term::Const(c) => c,
            Term::Var { var, inv, aut } => {
                let z = values[var].expect("variable assigned before evaluation");
                self.apply(aut, if inv { self.s.inv(z) } else { z })
            }
        }
    }

    fn eval(&self, terms: &[Term], values: &[Option<u32>]) -> u32 {
        terms.iter().fold(0, |acc, t| self.s.mul(acc, self.eval_term(t, values)))
    }
}

struct Equation {
    lhs: u32,
    terms: Vec<Term>,
}

fn var_of(t: &Term) -> Option<usize> {
    match t {
        Term::Var { var, .. } => Some(*var),
        Term::Const(_) => None,
    }
}

/// Solves the system; every returned assignment satisfies all `E_j`.
pub fn eliminate_and_solve(s: &IndexedGroup, sys: &EquationSystem, seed: u64, retries: usize) -> Result<Solution> {
    sys.validate(s)?;
    let n = sys.n();
    let l = sys.twists.len();
    let perms: Vec<Perm> = sys.twists.iter().map(|t| t.perm.clone()).collect();
    let orbs = orbits(n, &perms);
    let mut transcript = Vec::new();
    if sys.kappa.iter().all(|&k| k == 0) {
        let z = vec![vec![0; n]; l];
        transcript.push("target is trivial; all variables set to the identity".to_string());
        return Ok(Solution { z, orbits: orbs, eliminated: vec![], live_brackets: 0, attempts: 0, verified: true, transcript });
    }
    let mut auts = Auts::new(s);
    let mut values: Vec<Option<u32>> = vec![None; l * n];
    let mut eliminated = Vec::new();
    let mut live_total = 0;
    let mut attempts_total = 0;
    let var = |i: usize, j: usize| i * n + j;

    for (oi, orbit) in orbs.iter().enumerate() {
        let mut eqs: Vec<Option<Equation>> = Vec::new();
        for &j in orbit {
            let j = j as usize;
            let mut terms = Vec::with_capacity(2 * l);
            for (i, t) in sys.twists.iter().enumerate() {
                let u = auts.intern(t.auts[j].clone());
                terms.push(Term::Var { var: var(i, t.perm.image(j as u32) as usize), inv: true, aut: u });
                terms.push(Term::Var { var: var(i, j), inv: false, aut: 0 });
            }
            eqs.push(Some(Equation { lhs: sys.kappa[j], terms }));
        }

        // elimination
        let mut solved: Vec<(usize, Vec<Term>)> = Vec::new();
        loop {
            let active: Vec<usize> = (0..eqs.len()).filter(|&e| eqs[e].is_some()).collect();
            if active.len() <= 1 {
                break;
            }
            let mut hosts: HashMap<usize, Vec<usize>> = HashMap::new();
            for &e in &active {
                for t in &eqs[e].as_ref().unwrap().terms {
                    if let Some(v) = var_of(t) {
                        hosts.entry(v).or_default().push(e);
                    }
                }
            }
            let choice = hosts
                .iter()
                .filter(|(_, es)| es.len() == 2 && es[0] != es[1])
                .map(|(&v, es)| {
                    let size = eqs[es[0]].as_ref().unwrap().terms.len() + eqs[es[1]].as_ref().unwrap().terms.len();
                    (size, v, es[0].min(es[1]), es[0].max(es[1]))
                })
                .min();
            let Some((_, v, r, t)) = choice else {
                return Err(Error::Hypothesis("equations split into independent groups; the factor action is not transitive".into()));
            };
            let er = eqs[r].take().unwrap();
            let pos = er.terms.iter().position(|x| var_of(x) == Some(v)).unwrap();
            let Term::Var { inv, aut, .. } = er.terms[pos] else { unreachable!() };
            // aut(z^{±1}) = P⁻¹ k Q⁻¹
            let mut rhs = auts.invert_terms(&er.terms[..pos]);
            rhs.push(Term::Const(er.lhs));
            rhs.extend(auts.invert_terms(&er.terms[pos + 1..]));
            let back = auts.inverse(aut);
            let mut expr = auts.apply_terms(&rhs, back);
            if inv {
                expr = auts.invert_terms(&expr);
            }
            let expr = auts.simplify(expr);
            let es = eqs[t].as_mut().unwrap();
            let at = es.terms.iter().position(|x| var_of(x) == Some(v)).unwrap();
            let Term::Var { inv: inv2, aut: aut2, .. } = es.terms[at] else { unreachable!() };
            let piece = if inv2 { auts.invert_terms(&expr) } else { expr.clone() };
            let piece = auts.apply_terms(&piece, aut2);
            let mut merged = es.terms[..at].to_vec();
            merged.extend(piece);
            merged.extend_from_slice(&es.terms[at + 1..]);
            es.terms = auts.simplify(merged);
            solved.push((v, expr));
            eliminated.push((v / n, v % n));
        }
        let fin = eqs.into_iter().flatten().next().unwrap();

        // the final equation: live brackets are variables whose two occurrences are adjacent
        let mut occ: HashMap<usize, Vec<usize>> = HashMap::new();
        for (p, t) in fin.terms.iter().enumerate() {
            if let Some(v) = var_of(t) {
                occ.entry(v).or_default().push(p);
            }
        }
        let mut live: Vec<(usize, usize)> = occ
            .iter()
            .filter(|(_, ps)| ps.len() == 2 && ps[1] == ps[0] + 1)
            .map(|(&v, ps)| (ps[0], v))
            .collect();
        live.sort_unstable();
        let mut free: Vec<usize> = occ.keys().copied().filter(|v| !live.iter().any(|x| x.1 == *v)).collect();
        free.sort_unstable();
        let scan = if live.is_empty() { free.first().copied() } else { None };
        live_total += live.len();
        transcript.push(format!(
            "orbit {oi}: {} equation(s) reduced to one with {} terms, {} live bracket(s), {} free variable(s)",
            orbit.len(),
            fin.terms.len(),
            live.len(),
            free.len()
        ));

        // value tables for the live brackets
        let tables: Vec<(Vec<u32>, Vec<u32>)> = live
            .iter()
            .map(|&(p, v)| {
                let (a, b) = (fin.terms[p], fin.terms[p + 1]);
                let mut vals = vec![0u32; s.order()];
                let mut pre = vec![u32::MAX; s.order()];
                let mut tmp = vec![None; l * n];
                for z in 0..s.order() as u32 {
                    tmp[v] = Some(z);
                    let x = s.mul(auts.eval_term(&a, &tmp), auts.eval_term(&b, &tmp));
                    vals[z as usize] = x;
                    if pre[x as usize] == u32::MAX {
                        pre[x as usize] = z;
                    }
                }
                let image: Vec<u32> = (0..s.order() as u32).filter(|&x| pre[x as usize] != u32::MAX).collect();
                (image, pre)
            })
            .collect();

        let mut success = false;
        for attempt in 0..retries.max(1) {
            attempts_total += 1;
            let mut rng = stream(seed, "final-equation", (oi * 1_000_000 + attempt) as u64);
            for &v in &free {
                if Some(v) != scan {
                    values[v] = Some(rng.gen_range(0..s.order() as u32));
                }
            }
            if let Some(v) = scan {
                let hit = (0..s.order() as u32).find(|&z| {
                    let mut vals = values.clone();
                    vals[v] = Some(z);
                    auts.eval(&fin.terms, &vals) == fin.lhs
                });
                if let Some(z) = hit {
                    values[v] = Some(z);
                    success = true;
                    break;
                }
                continue;
            }
            if live.is_empty() {
                if auts.eval(&fin.terms, &values) == fin.lhs {
                    success = true;
                    break;
                }
                continue;
            }
            // constants between consecutive brackets
            let mut consts = Vec::with_capacity(live.len() + 1);
            let mut start = 0;
            for &(p, _) in &live {
                consts.push(auts.eval(&fin.terms[start..p], &values));
                start = p + 2;
            }
            consts.push(auts.eval(&fin.terms[start..], &values));
            // reachable sets with parent pointers
            let order = s.order();
            let mut parents: Vec<Vec<(u32, u32)>> = Vec::with_capacity(live.len());
            let mut current: Vec<u32> = vec![consts[0]];
            for (b, (image, _)) in tables.iter().enumerate() {
                let mut par = vec![(u32::MAX, 0u32); order];
                let mut next = Vec::new();
                for &y in &current {
                    for &t in image {
                        let x = s.mul(s.mul(y, t), consts[b + 1]);
                        if par[x as usize].0 == u32::MAX {
                            par[x as usize] = (y, t);
                            next.push(x);
                        }
                    }
                }
                parents.push(par);
                current = next;
            }
            let target = fin.lhs;
            if parents.last().unwrap()[target as usize].0 == u32::MAX {
                continue;
            }
            let mut x = target;
            for (b, par) in parents.iter().enumerate().rev() {
                let (y, t) = par[x as usize];
                values[live[b].1] = Some(tables[b].1[t as usize]);
                x = y;
            }
            success = true;
            break;
        }
        if !success {
            return Err(Error::SearchFailed(format!(
                "orbit {oi}: final equation not solved within {} attempt(s)",
                retries.max(1)
            )));
        }
        for (v, expr) in solved.iter().rev() {
            values[*v] = Some(auts.eval(expr, &values));
        }
        for &j in orbit {
            for i in 0..l {
                values[var(i, j as usize)].get_or_insert(0);
            }
        }
    }

    let z: Vec<Vec<u32>> = (0..l).map(|i| (0..n).map(|j| values[var(i, j)].unwrap_or(0)).collect()).collect();
    let verified = sys.is_solution(s, &z);
    transcript.push(format!(
        "substitution check of all {n} equation(s): {}",
        if verified { "pass" } else { "FAIL" }
    ));
    if !verified {
        return Err(Error::Certificate("assignment does not satisfy the system".into()));
    }
    Ok(Solution { z, orbits: orbs, eliminated, live_brackets: live_total, attempts: attempts_total, verified, transcript })
}

/// `∏_i [f_i, z_i]` with `[f, z] = f(z⁻¹) z` computed coordinatewise.
pub fn commutator_product(s: &IndexedGroup, f: &[NAut<DenseAut>], z: &[Vec<u32>]) -> Vec<u32> {
    let k = z.first().map_or(0, Vec::len);
    let mut acc = vec![0u32; k];
    for (fi, zi) in f.iter().zip(z) {
        for j in 0..k {
            let moved = fi.per[j].apply(s.inv(zi[fi.perm.image(j as u32) as usize]));
            acc[j] = s.mul(acc[j], s.mul(moved, zi[j]));
        }
    }
    acc
}

/// Finds `z_i ∈ S^k` with `κ = ∏ [f_i, z_i]`.
pub fn commutator_system_solve(
    s: &IndexedGroup,
    kappa: &[u32],
    f: &[NAut<DenseAut>],
    seed: u64,
    retries: usize,
) -> Result<Solution> {
    let sys = EquationSystem {
        kappa: kappa.to_vec(),
        twists: f.iter().map(|a| Twist { perm: a.perm.clone(), auts: a.per.clone() }).collect(),
    };
    let mut sol = eliminate_and_solve(s, &sys, seed, retries)?;
    let ok = commutator_product(s, f, &sol.z) == kappa;
    sol.transcript.push(format!("direct evaluation of the commutator product: {}", if ok { "pass" } else { "FAIL" }));
    if !ok {
        return Err(Error::Certificate("commutator product differs from the target".into()));
    }
    Ok(sol)
}

/// A random system over `S^n` with `l` twists, all `u_{i,j}` nontrivial and a
/// transitive factor action.
pub fn random_system<R: Rng + ?Sized>(s: &IndexedGroup, n: usize, l: usize, rng: &mut R) -> Result<EquationSystem> {
    use rand::seq::SliceRandom;
    loop {
        let perms: Vec<Perm> = (0..l)
            .map(|_| {
                let mut images: Vec<u32> = (0..n as u32).collect();
                images.shuffle(rng);
                Perm::from_images(images)
            })
            .collect::<Result<_>>()?;
        if orbits(n, &perms).len() != 1 {
            continue;
        }
        let twists = perms
            .into_iter()
            .map(|perm| {
                let auts = (0..n).map(|_| random_nontrivial_aut(s, rng)).collect::<Result<_>>()?;
                Ok(Twist { perm, auts })
            })
            .collect::<Result<_>>()?;
        let kappa = (0..n).map(|_| s.random(rng)).collect();
        return Ok(EquationSystem { kappa, twists });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Automorphism, GroupHandle, DEFAULT_INDEX_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a5() -> IndexedGroup {
        IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap()
    }

    #[test]
    fn single_bracket() {
        let s = a5();
        let u = Automorphism::parse("0=inner:(0 1 2 3 4)", s.handle(), 1).unwrap().to_dense(&s).unwrap();
        let target = super::super::twisted_bracket(&s, &u.per[0], 17);
        let sol = commutator_system_solve(&s, &[target], &[u.clone()], 0, 4).unwrap();
        assert!(sol.verified);
        let outside = (0..60).find(|&x| !super::super::twisted_class(&s, &u.per[0]).contains(x)).unwrap();
        assert!(commutator_system_solve(&s, &[outside], &[u], 0, 4).unwrap_err().is_hypothesis());
    }

    #[test]
    fn trivial_target() {
        let s = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut sys = random_system(&s, 3, 4, &mut rng).unwrap();
        sys.kappa = vec![0; 3];
        let sol = eliminate_and_solve(&s, &sys, 0, 1).unwrap();
        assert!(sol.z.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn random_systems_verify() {
        let s = a5();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=4 {
            for _ in 0..5 {
                let sys = random_system(&s, n, 8, &mut rng).unwrap();
                let sol = eliminate_and_solve(&s, &sys, 7, DEFAULT_RETRIES).unwrap();
                assert!(sys.is_solution(&s, &sol.z));
                assert_eq!(sol.eliminated.len(), n - 1);
            }
        }
    }

    #[test]
    fn intransitive_system_is_split_into_orbits() {
        let s = a5();
        let f = vec![
            Automorphism::parse("perm=(0 1); 0=graph; 1=graph; 2=graph; 3=graph", s.handle(), 4).unwrap().to_dense(&s).unwrap(),
            Automorphism::parse("perm=(2 3); all=inner:(0 1 2)", s.handle(), 4).unwrap().to_dense(&s).unwrap(),
            Automorphism::parse("all=inner:(0 1 2 3 4)", s.handle(), 4).unwrap().to_dense(&s).unwrap(),
        ];
        let kappa = vec![5, 9, 13, 40];
        let sol = commutator_system_solve(&s, &kappa, &f, 3, DEFAULT_RETRIES).unwrap();
        assert_eq!(sol.orbits.len(), 2);
    }
}
