//! Free-group words and word maps.
//!
//! Grammar: letters `x1..xd`, juxtaposition, `^<int>`, `[u,v]` for
//! `u⁻¹v⁻¹uv`, parentheses and `1` for the empty word.

use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, IndexedGroup};
use crate::set::ElementSet;

pub const DEFAULT_TUPLE_BUDGET: u64 = 1_000_000_000;

/// A freely reduced word. Letters are numbered from 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    syllables: Vec<(usize, i64)>,
    arity: usize,
}

fn push_syllable(out: &mut Vec<(usize, i64)>, letter: usize, exp: i64) {
    if exp == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.0 == letter {
            last.1 += exp;
            if last.1 == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push((letter, exp));
}

fn reduce(syl: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut out = Vec::with_capacity(syl.len());
    for &(l, e) in syl {
        push_syllable(&mut out, l, e);
    }
    out
}

impl Word {
    pub fn from_syllables(syl: &[(usize, i64)], arity: usize) -> Result<Self> {
        if let Some(&(l, _)) = syl.iter().find(|(l, _)| *l == 0 || *l > arity) {
            return Err(Error::ArityExceeded { letter: l, arity });
        }
        Ok(Word { syllables: reduce(syl), arity })
    }

    /// Parses a word; `arity` defaults to the largest letter used.
    pub fn parse(text: &str, arity: Option<usize>) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &chars, i: 0 };
        let syl = p.sequence()?;
        if p.i != chars.len() {
            return Err(Error::Parse(format!("unexpected {:?} at position {} in {text:?}", chars[p.i], p.i)));
        }
        let used = syl.iter().map(|s| s.0).max().unwrap_or(0);
        let arity = match arity {
            Some(a) if used > a => return Err(Error::ArityExceeded { letter: used, arity: a }),
            Some(a) => a,
            None => used.max(1),
        };
        Ok(Word { syllables: syl, arity })
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total length as a product of letters with exponents ±1.
    pub fn length(&self) -> usize {
        self.syllables.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    /// The word as `x_{i_1}^{ε_1} … x_{i_k}^{ε_k}` with `ε_s = ±1` (letters 1-based).
    pub fn expand(&self) -> Vec<(usize, i8)> {
        self.syllables
            .iter()
            .flat_map(|&(l, e)| std::iter::repeat((l, e.signum() as i8)).take(e.unsigned_abs() as usize))
            .collect()
    }

    pub fn inverse(&self) -> Word {
        Word { syllables: self.syllables.iter().rev().map(|&(l, e)| (l, -e)).collect(), arity: self.arity }
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut c = vec![0; self.arity];
        for &(l, e) in &self.syllables {
            c[l - 1] += e;
        }
        c
    }

    pub fn silliness(&self) -> Silliness {
        if self.is_empty() {
            return Silliness { silly: true, reason: SillyReason::Trivial, gcd: 0 };
        }
        let g = self.exponent_sums().iter().fold(0i64, |a, &c| a.gcd(&c));
        if g == 1 {
            Silliness { silly: true, reason: SillyReason::Surjective, gcd: 1 }
        } else {
            Silliness { silly: false, reason: SillyReason::CommonDivisor(if g == 0 { 2 } else { g }), gcd: g }
        }
    }

    pub fn is_silly(&self) -> bool {
        self.silliness().silly
    }

    /// Substitutes `tuple[i]` for `x_{i+1}`.
    pub fn evaluate(&self, g: &IndexedGroup, tuple: &[u32]) -> Result<u32> {
        if tuple.len() != self.arity {
            return Err(Error::InvalidInput(format!("word has arity {}, got {} values", self.arity, tuple.len())));
        }
        Ok(self
            .syllables
            .iter()
            .fold(0, |acc, &(l, e)| g.mul(acc, g.pow(tuple[l - 1], e))))
    }

    /// Evaluation in an arbitrary group given by closures.
    pub fn evaluate_with<T: Clone>(
        &self,
        tuple: &[T],
        identity: T,
        mul: impl Fn(&T, &T) -> T,
        pow: impl Fn(&T, i64) -> T,
    ) -> T {
        self.syllables.iter().fold(identity, |acc, &(l, e)| mul(&acc, &pow(&tuple[l - 1], e)))
    }

    /// Number of tuple evaluations `strategy` needs on `g`, saturating.
    pub fn tuple_count(&self, g: &IndexedGroup, strategy: &ValueStrategy) -> u128 {
        let n = g.order() as u128;
        let d = self.arity as u32;
        match strategy {
            ValueStrategy::Exhaustive => n.saturating_pow(d),
            ValueStrategy::ConjugacyReduced => {
                conjugacy_classes(g).len() as u128 * n.saturating_pow(d.saturating_sub(1))
            }
            ValueStrategy::Randomized { samples, .. } => *samples as u128,
        }
    }

    /// The set of values of the word map on `g`.
    pub fn value_set(&self, g: &IndexedGroup, strategy: &ValueStrategy, budget: u64) -> Result<ElementSet> {
        let n = g.order();
        let needed = self.tuple_count(g, strategy);
        if !matches!(strategy, ValueStrategy::Randomized { .. }) && needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed: needed.to_string(), budget });
        }
        let powers = PowerTables::new(self, g);
        let raw = match strategy {
            ValueStrategy::Exhaustive => self.sweep(g, &powers, (0..n as u32).collect()),
            ValueStrategy::ConjugacyReduced => {
                let reps = conjugacy_classes(g).iter().map(|c| c.iter().next().unwrap()).collect();
                self.sweep(g, &powers, reps)
            }
            ValueStrategy::Randomized { samples, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut set = ElementSet::singleton(n, 0);
                let mut tuple = vec![0u32; self.arity];
                for _ in 0..*samples {
                    for t in tuple.iter_mut() {
                        *t = rng.gen_range(0..n as u32);
                    }
                    set.insert(powers.eval(self, g, &tuple));
                }
                set
            }
        };
        if matches!(strategy, ValueStrategy::Exhaustive) {
            Ok(raw)
        } else {
            Ok(g.normal_closure_of_set(&raw))
        }
    }

    /// Evaluates on all tuples whose first coordinate is in `firsts`.
    fn sweep(&self, g: &IndexedGroup, powers: &PowerTables, firsts: Vec<u32>) -> ElementSet {
        let n = g.order();
        let d = self.arity;
        firsts
            .par_iter()
            .fold(
                || ElementSet::singleton(n, 0),
                |mut acc, &first| {
                    let mut tuple = vec![0u32; d];
                    tuple[0] = first;
                    loop {
                        acc.insert(powers.eval(self, g, &tuple));
                        let mut i = 1;
                        while i < d {
                            tuple[i] += 1;
                            if (tuple[i] as usize) < n {
                                break;
                            }
                            tuple[i] = 0;
                            i += 1;
                        }
                        if i >= d {
                            break;
                        }
                    }
                    acc
                },
            )
            .reduce(
                || ElementSet::empty(n),
                |mut a, b| {
                    a.union_with(&b);
                    a
                },
            )
    }
}

/// Lookup tables `x ↦ x^e` for each exponent occurring in a word.
struct PowerTables {
    tables: Vec<(i64, Vec<u32>)>,
}

impl PowerTables {
    fn new(w: &Word, g: &IndexedGroup) -> Self {
        let mut exps: Vec<i64> = w.syllables.iter().map(|s| s.1).filter(|&e| e != 1).collect();
        exps.sort_unstable();
        exps.dedup();
        let tables = exps
            .into_iter()
            .map(|e| (e, (0..g.order() as u32).map(|x| g.pow(x, e)).collect()))
            .collect();
        PowerTables { tables }
    }

    #[inline]
    fn eval(&self, w: &Word, g: &IndexedGroup, tuple: &[u32]) -> u32 {
        let mut acc = 0;
        for &(l, e) in &w.syllables {
            let x = tuple[l - 1];
            let y = if e == 1 {
                x
            } else {
                let t = &self.tables[self.tables.binary_search_by_key(&e, |t| t.0).unwrap()].1;
                t[x as usize]
            };
            acc = g.mul(acc, y);
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueStrategy {
    Exhaustive,
    ConjugacyReduced,
    Randomized { samples: u64, seed: u64 },
}

impl fmt::Display for ValueStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueStrategy::Exhaustive => f.write_str("exhaustive"),
            ValueStrategy::ConjugacyReduced => f.write_str("conjugacy-reduced"),
            ValueStrategy::Randomized { samples, seed } => write!(f, "randomized({samples},{seed})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SillyReason {
    /// The word reduces to the empty word.
    Trivial,
    /// The exponent sums are coprime, so every element is a value.
    Surjective,
    /// Every exponent sum is divisible by this integer greater than one.
    CommonDivisor(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Silliness {
    pub silly: bool,
    pub reason: SillyReason,
    pub gcd: i64,
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {c:?} at position {}", self.i)))
        }
    }

    fn sequence(&mut self) -> Result<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, ')' | ']' | ',') {
                break;
            }
            let factor = self.factor()?;
            for (l, e) in factor {
                push_syllable(&mut out, l, e);
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Vec<(usize, i64)>> {
        let base = match self.peek() {
            Some('x') => {
                self.i += 1;
                let n = self.integer(false)?;
                if n <= 0 {
                    return Err(Error::Parse("letters are numbered from 1".into()));
                }
                vec![(n as usize, 1)]
            }
            Some('1') => {
                self.i += 1;
                Vec::new()
            }
            Some('(') => {
                self.i += 1;
                let inner = self.sequence()?;
                self.expect(')')?;
                inner
            }
            Some('[') => {
                self.i += 1;
                let u = self.sequence()?;
                self.expect(',')?;
                let v = self.sequence()?;
                self.expect(']')?;
                let inv = |w: &[(usize, i64)]| w.iter().rev().map(|&(l, e)| (l, -e)).collect::<Vec<_>>();
                reduce(&[inv(&u), inv(&v), u, v].concat())
            }
            Some(c) => return Err(Error::Parse(format!("unexpected {c:?} at position {}", self.i))),
            None => return Err(Error::Parse("unexpected end of word".into())),
        };
        if self.peek() == Some('^') {
            self.i += 1;
            let e = self.integer(true)?;
            return Ok(power(&base, e));
        }
        Ok(base)
    }

    fn integer(&mut self, signed: bool) -> Result<i64> {
        let start = self.i;
        if signed && matches!(self.peek(), Some('-') | Some('+')) {
            self.i += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let text: String = self.s[start..self.i].iter().collect();
        text.parse().map_err(|_| Error::Parse(format!("expected an integer at position {start}")))
    }
}

fn power(base: &[(usize, i64)], e: i64) -> Vec<(usize, i64)> {
    if base.len() == 1 {
        return reduce(&[(base[0].0, base[0].1 * e)]);
    }
    let unit: Vec<(usize, i64)> =
        if e < 0 { base.iter().rev().map(|&(l, x)| (l, -x)).collect() } else { base.to_vec() };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        for &(l, x) in &unit {
            push_syllable(&mut out, l, x);
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|&(l, e)| if e == 1 { format!("x{l}") } else { format!("x{l}^{e}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};
    use proptest::prelude::*;

    fn a5() -> IndexedGroup {
        IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(Word::parse("[x1,x2]", None).unwrap().syllables(), &[(1, -1), (2, -1), (1, 1), (2, 1)]);
        assert_eq!(Word::parse("x1^30", None).unwrap().syllables(), &[(1, 30)]);
        assert!(Word::parse("x1 x1^-1", None).unwrap().is_empty());
        assert_eq!(Word::parse("(x1 x2)^-2", None).unwrap().to_string(), "x2^-1 x1^-1 x2^-1 x1^-1");
        assert_eq!(Word::parse("[[x1,x2],x3]", None).unwrap().length(), 10);
        assert!(matches!(Word::parse("x3", Some(2)), Err(Error::ArityExceeded { letter: 3, arity: 2 })));
        assert!(Word::parse("x1^", None).is_err());
        assert!(Word::parse("[x1 x2]", None).is_err());
        assert!(Word::parse("y1", None).is_err());
    }

    #[test]
    fn sums_and_silliness() {
        let w = |s: &str| Word::parse(s, None).unwrap();
        assert_eq!(w("[x1,x2]").exponent_sums(), vec![0, 0]);
        assert_eq!(w("x1^2 x2^2").exponent_sums(), vec![2, 2]);
        assert!(w("x1").is_silly());
        assert!(w("x1^2 x2^3").is_silly());
        assert!(w("x1 x1^-1").is_silly());
        let c = w("[x1,x2]").silliness();
        assert!(!c.silly);
        assert_eq!(c.gcd, 0);
        assert_eq!(w("x1^30").silliness().reason, SillyReason::CommonDivisor(30));
    }

    #[test]
    fn value_sets_in_a5() {
        let g = a5();
        let w = |s: &str| Word::parse(s, None).unwrap();
        let sq = w("x1^2").value_set(&g, &ValueStrategy::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(sq.len(), 45);
        let com = w("[x1,x2]").value_set(&g, &ValueStrategy::ConjugacyReduced, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(com.len(), 60);
        let p30 = w("x1^30").value_set(&g, &ValueStrategy::Exhaustive, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(p30.len(), 1);
        let five = g.index_of_parsed("(0 1 2 3 4)").unwrap();
        let sq5 = w("x1^2").evaluate(&g, &[five]).unwrap();
        assert_eq!(g.format_index(sq5), "(0 2 4 1 3)");
    }

    #[test]
    fn budget_is_enforced() {
        let g = a5();
        let w = Word::parse("[x1,x2] x3", None).unwrap();
        assert!(matches!(
            w.value_set(&g, &ValueStrategy::Exhaustive, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(syl in proptest::collection::vec((1usize..4, -3i64..4), 0..20)) {
            let w = Word::from_syllables(&syl, 3).unwrap();
            let again = Word::from_syllables(w.syllables(), 3).unwrap();
            prop_assert_eq!(&w, &again);
            prop_assert!(w.syllables().iter().all(|s| s.1 != 0));
            prop_assert!(w.syllables().windows(2).all(|p| p[0].0 != p[1].0));
        }

        #[test]
        fn inverse_word_evaluates_to_inverse(syl in proptest::collection::vec((1usize..3, -3i64..4), 0..12),
                                              a in 0u32..60, b in 0u32..60) {
            let g = a5();
            let w = Word::from_syllables(&syl, 2).unwrap();
            let x = w.evaluate(&g, &[a, b]).unwrap();
            let y = w.inverse().evaluate(&g, &[a, b]).unwrap();
            prop_assert_eq!(g.mul(x, y), 0);
        }
    }
}
