//! Coset witnesses for `N = PSL(2,q)^m` from noncentral polynomial matrices.
//!
//! Given `g_1, .., g_d ∈ Aut(N)` and a word `w`, we look for `a_i ∈ N` such
//! that `w(g_1 a_1, .., g_d a_d)` centralizes no simple factor of `N`. Each
//! `a_i` is written symbolically as a product of unitriangular matrices
//! with fresh variables, the `N`-part of the word value is expanded per
//! factor, and a field point is chosen where the relevant entries do not vanish.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::brute::{coset_witness_bruteforce, BruteMode};
use super::multipoly::{MultiPoly, Var};
use super::specialize::specialize_nonzero;
use super::symmat::SymMat;
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::group::{Automorphism, GroupHandle, HolElem, IndexedGroup, NAut, Psl2Aut, Psl2Ctx};
use crate::matrix::{Mat2, ProjMat2};
use crate::words::Word;

#[derive(Clone, Debug)]
pub struct CosetWitnessProblem {
    pub word: Word,
    pub field: Arc<Gf>,
    pub m: usize,
    pub twists: Vec<NAut<Psl2Aut>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseChoice {
    Auto,
    A,
    B,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    Brute,
}

/// How a field automorphism acts on a symbolic matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldMode {
    /// Only coefficients move; exact for arguments in the prime subfield.
    Coefficients,
    /// `f ↦ f^{p^n}` followed by reduction with `x^q = x`.
    Full,
}

/// One letter `x_{i_s}^{ε_s}` of the word with the automorphism `R_s`
/// through which `a_{i_s}` reaches the final product.
#[derive(Clone, Debug)]
struct Step {
    letter: usize,
    eps: i8,
    route: NAut<Psl2Aut>,
}

/// Data derived from a problem: the split `g_i = δ_i · n_i` with `δ_i`
/// diagonal-and-field, `w₀ = w(δ)`, the set `J` and the conjugators `h_j`.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub k: usize,
    pub delta: Vec<NAut<Psl2Aut>>,
    pub inner_parts: Vec<Vec<ProjMat2>>,
    pub w0: NAut<Psl2Aut>,
    /// Factors (0-based) fixed by `w₀` on which it induces an inner automorphism.
    pub j_set: Vec<usize>,
    /// `h_j` with `w₀` acting on factor `j` as `u ↦ h_j u h_j⁻¹`.
    pub h: BTreeMap<usize, ProjMat2>,
    steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub alpha: usize,
    pub beta: usize,
    /// `(j, s)` pairs, both 1-based.
    pub members: Vec<(usize, usize)>,
    /// Field exponent of `r_{s,j}` for each member, before the shift.
    pub field_exps: Vec<u32>,
    pub shift: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateInfo {
    pub j: usize,
    pub entry: String,
    pub terms: usize,
    pub max_var_degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub centralized: Vec<bool>,
    pub evaluation_consistent: bool,
    pub ok: bool,
    pub transcript: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetWitness {
    pub case: Case,
    pub regime: String,
    pub q: u32,
    pub k: usize,
    pub j_set: Vec<usize>,
    pub ledger: Vec<LedgerEntry>,
    pub max_ledger_size: usize,
    pub degree_max: u32,
    pub degree_bound: u64,
    pub certificates: Vec<CertificateInfo>,
    pub product_terms: usize,
    pub assignment: Vec<(String, u32)>,
    /// `a[i][β]` as matrices.
    pub a: Vec<Vec<String>>,
    #[serde(skip)]
    pub elements: Vec<Vec<ProjMat2>>,
    pub verification: Verification,
}

impl CosetWitnessProblem {
    pub fn new(word: Word, q: u32, m: usize, twists: Vec<NAut<Psl2Aut>>) -> Result<Self> {
        let field = Arc::new(Gf::new(q)?);
        if q < 4 {
            return Err(Error::InvalidInput(format!("PSL(2,{q}) is not simple")));
        }
        if twists.len() != word.arity() {
            return Err(Error::InvalidInput(format!("word has {} letters but {} twists given", word.arity(), twists.len())));
        }
        if let Some(g) = twists.iter().find(|g| g.k() != m) {
            return Err(Error::InvalidInput(format!("twist acts on {} factors, expected {m}", g.k())));
        }
        Ok(CosetWitnessProblem { word, field, m, twists })
    }

    /// Parses twists in the [`Automorphism`] syntax.
    pub fn parse(word: &str, q: u32, m: usize, twists: &[&str]) -> Result<Self> {
        let s = GroupHandle::psl2(q)?;
        let f = s.field().expect("projective group has a field").clone();
        let gs = twists
            .iter()
            .map(|t| Automorphism::parse(t, &s, m)?.to_psl2(&f))
            .collect::<Result<Vec<_>>>()?;
        let w = Word::parse(word, None)?;
        let w = if w.arity() < gs.len() { Word::from_syllables(w.syllables(), gs.len())? } else { w };
        Self::new(w, q, m, gs)
    }

    pub fn d(&self) -> usize {
        self.twists.len()
    }

    pub fn k(&self) -> usize {
        self.word.length()
    }

    fn ctx(&self) -> Psl2Ctx<'_> {
        Psl2Ctx { f: &self.field }
    }

    /// Splits each twist, evaluates `w₀` and finds `J` with its conjugators.
    pub fn analyze(&self) -> Result<Analysis> {
        let f = &*self.field;
        let ctx = self.ctx();
        let mut delta = Vec::new();
        let mut inner_parts = Vec::new();
        for g in &self.twists {
            let mut per = Vec::new();
            let mut inner = Vec::new();
            for r in &g.per {
                let (d, h) = split_conjugator(&r.conj, f)?;
                per.push(Psl2Aut { field_exp: r.field_exp, conj: d });
                inner.push(h);
            }
            delta.push(NAut { perm: g.perm.clone(), per });
            inner_parts.push(inner);
        }
        let letters = self.word.expand();
        let k = letters.len();
        let ident = NAut::identity(&ctx, self.m);
        let letter_aut = |i: usize, e: i8| if e > 0 { delta[i - 1].clone() } else { delta[i - 1].inverse(&ctx) };
        let mut steps = Vec::with_capacity(k);
        let mut tail = ident.clone();
        for &(i, e) in letters.iter().rev() {
            let route = if e > 0 { tail.clone() } else { delta[i - 1].inverse(&ctx).then(&ctx, &tail) };
            steps.push(Step { letter: i, eps: e, route });
            tail = letter_aut(i, e).then(&ctx, &tail);
        }
        steps.reverse();
        let w0 = tail;
        let mut j_set = Vec::new();
        let mut h = BTreeMap::new();
        for j in 0..self.m {
            let r = &w0.per[j];
            if w0.perm.image(j as u32) == j as u32 && r.is_inner_psl(f) {
                j_set.push(j);
                h.insert(j, r.conj.inv(f));
            }
        }
        Ok(Analysis { k, delta, inner_parts, w0, j_set, h, steps })
    }

    /// The case `auto` resolves to, with a description of the regime.
    pub fn select_case(&self, choice: CaseChoice) -> (Case, String) {
        let (p, l, k) = (self.field.p() as usize, self.field.degree() as usize, self.k());
        let proved_a = p > 3 * k;
        let proved_b = l > k * k;
        match choice {
            CaseChoice::Auto if proved_a => (Case::A, "proved: p > 3k".into()),
            CaseChoice::Auto if proved_b => (Case::B, "proved: L > k^2".into()),
            CaseChoice::Auto => (Case::Brute, "outside proved regime".into()),
            CaseChoice::Brute => (Case::Brute, "brute force requested".into()),
            CaseChoice::A if proved_a => (Case::A, "proved: p > 3k".into()),
            CaseChoice::A => (Case::A, "forced: p <= 3k".into()),
            CaseChoice::B if proved_b => (Case::B, "proved: L > k^2".into()),
            CaseChoice::B => (Case::B, "forced: L <= k^2".into()),
        }
    }
}

/// A problem with seeded random twists: a random factor permutation and on
/// each factor a random field power, diagonal automorphism and inner part.
pub fn random_problem<R: rand::Rng + ?Sized>(rng: &mut R, word: &Word, q: u32, m: usize) -> Result<CosetWitnessProblem> {
    use rand::seq::SliceRandom;
    let f = Gf::new(q)?;
    let twists = (0..word.arity())
        .map(|_| {
            let mut images: Vec<u32> = (0..m as u32).collect();
            images.shuffle(rng);
            let per = (0..m)
                .map(|_| {
                    let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..q));
                    let u = Mat2::lower(a).mul(&Mat2::upper(b), &f).mul(&Mat2::lower(c), &f);
                    let inner = Psl2Aut::inner(ProjMat2::from_mat(u, &f)?);
                    let diag = Psl2Aut::inner(ProjMat2::from_mat(Mat2::diag(rng.gen_range(1..q), 1), &f)?);
                    let field = Psl2Aut { field_exp: rng.gen_range(0..f.degree()), conj: ProjMat2::IDENTITY };
                    Ok(field.then(&diag, &f).then(&inner, &f))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(NAut { perm: crate::perm::Perm::from_images(images)?, per })
        })
        .collect::<Result<Vec<_>>>()?;
    CosetWitnessProblem::new(word.clone(), q, m, twists)
}

/// Writes `g ∈ PGL(2,q)` as `d · h` with `d` diagonal and `h ∈ PSL(2,q)`.
fn split_conjugator(g: &ProjMat2, f: &Gf) -> Result<(ProjMat2, ProjMat2)> {
    if g.in_psl(f) {
        return Ok((ProjMat2::IDENTITY, *g));
    }
    let d = ProjMat2::from_mat(Mat2::diag(f.primitive(), 1), f)?;
    let h = d.inv(f).mul(g, f);
    debug_assert!(h.in_psl(f));
    Ok((d, h))
}

pub fn var_t(alpha: usize, beta: usize, l: u8) -> Var {
    Var::t(alpha as u16, beta as u16, l)
}

/// `A_{α,β} = u_-(t_1) u_+(t_2) u_-(t_3)` in the variables `t_{α,β,l}^{p^{shift}}`.
pub fn build_a(field: &Arc<Gf>, alpha: usize, beta: usize, shift: u32) -> SymMat {
    let e = field.p().pow(shift);
    let t = |l| MultiPoly::monomial(field, 1, vec![(var_t(alpha, beta, l), e)]);
    SymMat::lower(t(1))
        .mul(&SymMat::upper(t(2)))
        .and_then(|m| m.mul(&SymMat::lower(t(3))))
        .expect("entries share a field")
}

/// `A^{ε r}` for `r` a field automorphism followed by conjugation by a diagonal matrix.
pub fn twist_symbolic(a: &SymMat, r: &Psl2Aut, eps: i8, mode: FieldMode) -> Result<SymMat> {
    let mut m = if eps < 0 { a.inverse_sl2()? } else { a.clone() };
    if r.field_exp != 0 {
        m = match mode {
            FieldMode::Coefficients => m.map(|e| e.frobenius_coefficients(r.field_exp)),
            FieldMode::Full => m.map(|e| e.frobenius_power(r.field_exp).reduce_functional()),
        };
    }
    let [x, b, c, d] = r.conj.mat().0;
    if b != 0 || c != 0 {
        return Err(Error::InvalidInput(format!("twist conjugator {} is not diagonal", r.conj)));
    }
    // conjugation by diag(x, d): [[a, b], [c, d']] ↦ [[a, b·d/x], [c·x/d, d']]
    let f = a.field().clone();
    let lam = f.div(d, x);
    if lam != 1 {
        let e = m.entries();
        m = SymMat::from_entries(2, vec![e[0].clone(), e[1].scale(lam), e[2].scale(f.inv(lam)), e[3].clone()])?;
    }
    Ok(m)
}

/// `h⁻¹ U` and its first non-scalar witness among `b`, `c`, `a − d`.
pub fn noncentrality_certificate(h: &Mat2, u: &SymMat) -> Result<(String, MultiPoly)> {
    let f = u.field().clone();
    if h.det(&f) == 0 {
        return Err(Error::InvalidInput(format!("{h} is singular")));
    }
    let prod = SymMat::constant2(&f, &h.inverse(&f)).mul(u)?;
    match prod.noncentral_witness()? {
        Some((w, p)) => Ok((w.to_string(), p)),
        None => Err(Error::Certificate(format!("h^-1 U is central for h = {h}"))),
    }
}

struct Symbolic {
    ledger: Vec<LedgerEntry>,
    shifts: BTreeMap<(usize, usize), u32>,
    u: BTreeMap<usize, SymMat>,
}

impl CosetWitnessProblem {
    /// The sets `C_{α,β}` of `(j, s)` with `(i_s, π_s(j)) = (α, β)`, `j ∈ J`.
    fn ledger(&self, an: &Analysis) -> Vec<LedgerEntry> {
        let mut map: BTreeMap<(usize, usize), LedgerEntry> = BTreeMap::new();
        for &j in &an.j_set {
            for (s, st) in an.steps.iter().enumerate() {
                let beta = st.route.perm.image(j as u32) as usize + 1;
                let e = map.entry((st.letter, beta)).or_insert_with(|| LedgerEntry {
                    alpha: st.letter,
                    beta,
                    members: Vec::new(),
                    field_exps: Vec::new(),
                    shift: 0,
                });
                e.members.push((j + 1, s + 1));
                e.field_exps.push(st.route.per[j].field_exp);
            }
        }
        map.into_values().collect()
    }

    fn symbolic(&self, an: &Analysis, case: Case) -> Result<Symbolic> {
        let f = &self.field;
        let (k, l) = (an.k, f.degree());
        let mut ledger = self.ledger(an);
        if let Some(e) = ledger.iter().find(|e| e.members.len() > k) {
            return Err(Error::Certificate(format!(
                "|C_({},{})| = {} exceeds the word length {k}",
                e.alpha,
                e.beta,
                e.members.len()
            )));
        }
        let mut shifts = BTreeMap::new();
        if case == Case::B {
            for e in &mut ledger {
                let bad = |n: u32| n + (k as u32) > l && n < l;
                let shift = (0..l)
                    .find(|s| e.field_exps.iter().all(|&n| !bad((s + n) % l)))
                    .ok_or_else(|| Error::Hypothesis(format!("no shift avoids the window for C_({},{})", e.alpha, e.beta)))?;
                e.shift = shift;
            }
        }
        for e in &ledger {
            shifts.insert((e.alpha, e.beta), e.shift);
        }
        let mode = if case == Case::B { FieldMode::Full } else { FieldMode::Coefficients };
        let mut u = BTreeMap::new();
        for &j in &an.j_set {
            let mut acc = SymMat::identity(f, 2);
            for st in &an.steps {
                let beta = st.route.perm.image(j as u32) as usize + 1;
                let a = build_a(f, st.letter, beta, shifts[&(st.letter, beta)]);
                acc = acc.mul(&twist_symbolic(&a, &st.route.per[j], st.eps, mode)?)?;
                if mode == FieldMode::Full {
                    acc = acc.map(|e| e.reduce_functional());
                }
            }
            u.insert(j, acc);
        }
        Ok(Symbolic { ledger, shifts, u })
    }

    /// Builds `U_j` for `j ∈ J` with the ledger of variable occurrences.
    pub fn build_uj(&self, case: Case) -> Result<(BTreeMap<usize, SymMat>, Vec<LedgerEntry>)> {
        let an = self.analyze()?;
        let sym = self.symbolic(&an, case)?;
        Ok((sym.u, sym.ledger))
    }

    /// Evaluates `w(g_1 a_1, .., g_d a_d)` in the holomorph.
    pub fn word_value(&self, twists: &[NAut<Psl2Aut>], a: &[Vec<ProjMat2>]) -> HolElem<ProjMat2, Psl2Aut> {
        let ctx = self.ctx();
        let gens: Vec<HolElem<ProjMat2, Psl2Aut>> =
            twists.iter().zip(a).map(|(g, n)| HolElem { aut: g.clone(), n: n.clone() }).collect();
        self.word.expand().iter().fold(HolElem::identity(&ctx, self.m), |acc, &(i, e)| {
            let x = if e > 0 { gens[i - 1].clone() } else { gens[i - 1].inv(&ctx) };
            acc.mul(&ctx, &x)
        })
    }

    /// Checks that `w(g a)` centralizes no factor.
    pub fn verify(&self, a: &[Vec<ProjMat2>]) -> Vec<bool> {
        self.word_value(&self.twists, a).centralized_factors(&self.ctx())
    }
}

/// Runs the polynomial method and verifies the result in the group.
pub fn coset_witness_psl2(prob: &CosetWitnessProblem, choice: CaseChoice, budget: u64) -> Result<CosetWitness> {
    if prob.word.is_empty() {
        return Err(Error::Hypothesis("the trivial word is a coset identity".into()));
    }
    let (case, regime) = prob.select_case(choice);
    if case == Case::Brute {
        return brute_fallback(prob, regime, budget);
    }
    let f = &prob.field;
    let an = prob.analyze()?;
    let k = an.k;
    let sym = prob.symbolic(&an, case)?;

    let degree_max = sym.u.values().map(|u| u.max_var_degree()).max().unwrap_or(0);
    let (p, l) = (f.p() as u64, f.degree() as u64);
    let degree_bound = match case {
        Case::A => k as u64,
        _ => k as u64 * p.pow(l.saturating_sub(k as u64) as u32),
    };
    if degree_max as u64 > degree_bound {
        return Err(Error::Certificate(format!("U_j has per-variable degree {degree_max} > {degree_bound}")));
    }

    let mut certificates = Vec::new();
    let mut product = MultiPoly::one(f);
    for &j in &an.j_set {
        let (entry, fj) = noncentrality_certificate(an.h[&j].mat(), &sym.u[&j])?;
        certificates.push(CertificateInfo {
            j: j + 1,
            entry,
            terms: fj.term_count(),
            max_var_degree: fj.max_var_degree(),
        });
        product = product.mul(&fj)?;
        if case == Case::B {
            product = product.reduce_functional();
        }
    }
    let values: Vec<u32> = match case {
        Case::A => f.prime_subfield().collect(),
        _ => f.elements().collect(),
    };
    let y = if product.as_constant().is_some() { BTreeMap::new() } else { specialize_nonzero(&product, &values)? };

    let d = prob.d();
    let mut a_twisted = vec![vec![ProjMat2::IDENTITY; prob.m]; d];
    for (alpha, row) in a_twisted.iter_mut().enumerate() {
        for (beta, slot) in row.iter_mut().enumerate() {
            let shift = sym.shifts.get(&(alpha + 1, beta + 1)).copied().unwrap_or(0);
            let m = build_a(f, alpha + 1, beta + 1, shift).evaluate2(&y)?;
            *slot = ProjMat2::from_mat(m, f)?;
        }
    }
    let elements: Vec<Vec<ProjMat2>> = a_twisted
        .iter()
        .zip(&an.inner_parts)
        .map(|(row, inner)| row.iter().zip(inner).map(|(a, n)| n.inv(f).mul(a, f)).collect())
        .collect();

    let mut transcript = Vec::new();
    let reduced = prob.word_value(&an.delta, &a_twisted);
    let mut evaluation_consistent = reduced.aut == an.w0;
    for &j in &an.j_set {
        let uj = ProjMat2::from_mat(sym.u[&j].evaluate2(&y)?, f)?;
        let same = uj == reduced.n[j];
        evaluation_consistent &= same;
        let h = an.h[&j];
        transcript.push(format!(
            "factor {}: h = {h}, U(y) = {uj}, h^-1 U(y) = {}, evaluation {}",
            j + 1,
            h.inv(f).mul(&uj, f),
            if same { "matches" } else { "DIFFERS" }
        ));
    }
    let centralized = prob.verify(&elements);
    for j in 0..prob.m {
        if !an.j_set.contains(&j) {
            transcript.push(format!("factor {}: w0 not inner there, cannot be centralized", j + 1));
        }
    }
    let ok = !centralized.iter().any(|&c| c) && evaluation_consistent;
    transcript.push(format!("verification: {}", if ok { "passed" } else { "FAILED" }));
    let witness = CosetWitness {
        case,
        regime,
        q: f.q(),
        k,
        j_set: an.j_set.iter().map(|j| j + 1).collect(),
        max_ledger_size: sym.ledger.iter().map(|e| e.members.len()).max().unwrap_or(0),
        ledger: sym.ledger,
        degree_max,
        degree_bound,
        certificates,
        product_terms: product.term_count(),
        assignment: y.iter().map(|(v, c)| (v.to_string(), *c)).collect(),
        a: elements.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        elements,
        verification: Verification { centralized, evaluation_consistent, ok, transcript },
    };
    if !ok {
        return Err(Error::Certificate(format!(
            "symbolic witness failed group verification: {}",
            witness.verification.transcript.join("; ")
        )));
    }
    Ok(witness)
}

fn brute_fallback(prob: &CosetWitnessProblem, regime: String, budget: u64) -> Result<CosetWitness> {
    let f = &prob.field;
    let s = IndexedGroup::new(GroupHandle::psl2(f.q())?, crate::group::DEFAULT_INDEX_CAP)?;
    let dense = prob
        .twists
        .iter()
        .map(|g| psl2_to_dense(&s, g))
        .collect::<Result<Vec<_>>>()?;
    let res = coset_witness_bruteforce(&prob.word, &dense, &s, prob.m, &BruteMode::Exhaustive, budget)?;
    let found = res
        .witness
        .ok_or_else(|| Error::SearchFailed("w is a coset identity for these twists".into()))?;
    let elements: Vec<Vec<ProjMat2>> = found
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| match s.element(x) {
                    crate::group::Element::Mat(m) => *m,
                    _ => unreachable!("PSL(2,q) elements are matrices"),
                })
                .collect()
        })
        .collect();
    let centralized = prob.verify(&elements);
    let ok = !centralized.iter().any(|&c| c);
    if !ok {
        return Err(Error::Certificate("brute-force witness failed verification".into()));
    }
    let an = prob.analyze()?;
    Ok(CosetWitness {
        case: Case::Brute,
        regime,
        q: f.q(),
        k: prob.k(),
        j_set: an.j_set.iter().map(|j| j + 1).collect(),
        ledger: Vec::new(),
        max_ledger_size: 0,
        degree_max: 0,
        degree_bound: 0,
        certificates: Vec::new(),
        product_terms: 0,
        assignment: Vec::new(),
        a: elements.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        elements,
        verification: Verification {
            centralized,
            evaluation_consistent: true,
            ok,
            transcript: vec![format!("exhaustive search examined {} tuples", res.tried)],
        },
    })
}

/// Converts a PSL(2,q)-automorphism of `S^m` to explicit index maps.
pub fn psl2_to_dense(s: &IndexedGroup, g: &NAut<Psl2Aut>) -> Result<NAut<crate::group::DenseAut>> {
    let f = s.handle().field().ok_or_else(|| Error::BackendMismatch("expected PSL(2,q)".into()))?.clone();
    let per = g
        .per
        .iter()
        .map(|r| {
            let map = s
                .elements()
                .iter()
                .map(|x| match x {
                    crate::group::Element::Mat(m) => s
                        .index_of(&crate::group::Element::Mat(r.apply(m, &f)))
                        .ok_or_else(|| Error::BackendMismatch("automorphism leaves the group".into())),
                    _ => Err(Error::BackendMismatch("expected matrices".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(crate::group::DenseAut(map))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NAut { perm: g.perm.clone(), per })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_a_at_zero_is_identity() {
        let f = Arc::new(Gf::new(7).unwrap());
        let a = build_a(&f, 1, 1, 0);
        assert_eq!(a.evaluate2(&BTreeMap::new()).unwrap(), Mat2::IDENTITY);
        assert_eq!(a.det().unwrap(), MultiPoly::one(&f));
        assert!(a.max_var_degree() <= 1);
    }

    #[test]
    fn twist_identity_and_inverse() {
        let f = Arc::new(Gf::new(9).unwrap());
        let a = build_a(&f, 1, 1, 0);
        let id = Psl2Aut::identity();
        assert_eq!(twist_symbolic(&a, &id, 1, FieldMode::Full).unwrap(), a);
        let inv = twist_symbolic(&a, &id, -1, FieldMode::Full).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), SymMat::identity(&f, 2));
    }

    #[test]
    fn twist_matches_concrete_automorphism() {
        let f = Arc::new(Gf::new(9).unwrap());
        let a = build_a(&f, 1, 1, 0);
        let r = Psl2Aut { field_exp: 1, conj: ProjMat2::from_mat(Mat2::diag(f.primitive(), 1), &f).unwrap() };
        for eps in [1i8, -1] {
            let tw = twist_symbolic(&a, &r, eps, FieldMode::Full).unwrap();
            for y in [[1u32, 2, 3], [4, 0, 8], [7, 7, 5]] {
                let asg: BTreeMap<Var, u32> = (0..3).map(|l| (var_t(1, 1, l as u8 + 1), y[l])).collect();
                let base = ProjMat2::from_mat(a.evaluate2(&asg).unwrap(), &f).unwrap();
                let base = if eps < 0 { base.inv(&f) } else { base };
                let want = r.apply(&base, &f);
                let got = ProjMat2::from_mat(tw.evaluate2(&asg).unwrap(), &f).unwrap();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn identity_certificate_of_lower() {
        let f = Arc::new(Gf::new(5).unwrap());
        let t = MultiPoly::var(&f, Var::plain(1));
        let (e, p) = noncentrality_certificate(&Mat2::IDENTITY, &SymMat::lower(t.clone())).unwrap();
        assert_eq!(e, "entry(2,1)");
        assert_eq!(p, t);
        assert!(noncentrality_certificate(&Mat2::IDENTITY, &SymMat::identity(&f, 2)).is_err());
    }

    #[test]
    fn commutator_single_factor() {
        let prob = CosetWitnessProblem::parse("[x1,x2]", 5, 1, &["0=inner:[[1,1],[0,1]]", "0=diag:2"]).unwrap();
        let w = coset_witness_psl2(&prob, CaseChoice::A, 1_000_000).unwrap();
        assert!(w.verification.ok);
        assert!(w.degree_max as usize <= prob.k());
    }

    #[test]
    fn cube_with_swapped_factors() {
        let prob = CosetWitnessProblem::parse("x1^3", 7, 2, &["perm=(0 1)"]).unwrap();
        let w = coset_witness_psl2(&prob, CaseChoice::A, 1_000_000).unwrap();
        assert!(w.j_set.is_empty());
        assert!(w.verification.ok);
    }

    #[test]
    fn large_field_case() {
        let prob = CosetWitnessProblem::parse("x1^2", 32, 1, &["0=field:1"]).unwrap();
        assert_eq!(prob.select_case(CaseChoice::Auto).0, Case::B);
        let w = coset_witness_psl2(&prob, CaseChoice::Auto, 1_000_000).unwrap();
        assert!(w.verification.ok);
        assert!(w.degree_max as u64 <= w.degree_bound);
    }
}
