//! The acceptance suite: twelve fixed-seed checks, each reduced to one
//! pass/fail record.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::equations::{
    basic_identities, class_product_covers, eliminate_and_solve, gowers_check, gowers_set_size, pth_power_witness,
    r_table, random_factor_aut, random_nontrivial_aut, random_system, twisted_class, DEFAULT_RETRIES,
};
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::group::{make_indexed, DenseAut, FactorAut, GroupHandle, IndexedGroup, DEFAULT_INDEX_CAP};
use crate::poly::{
    coset_witness_bruteforce, coset_witness_psl2, is_coset_witness, psl2_to_dense, random_problem, specialize_nonzero,
    suzuki_symbolic_suite, BruteMode, CaseChoice, MultiPoly, Var,
};
use crate::rng::stream;
use crate::width::{build_counterexample, certify_lower_bound, random_product_refute, width, KappaChoice};
use crate::words::{ValueStrategy, Word, DEFAULT_TUPLE_BUDGET};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Width of `x1^30` on `Alt(6)` and its layer sizes `|W^t|`.
pub const A6_POWER30_WIDTH: usize = 2;
pub const A6_POWER30_LAYERS: [usize; 3] = [1, 46, 360];

pub const PROJECTION_SAMPLES: u64 = 100_000;
pub const REFUTE_TRIALS: u64 = 100_000;
pub const IDENTITY_CHOICES: usize = 100;
pub const COVER_FACTORS: usize = 61;
pub const COVER_TRIALS: usize = 100;
pub const ODD_EXPONENTS: [u64; 5] = [3, 5, 7, 9, 15];
pub const SYSTEMS: usize = 200;
pub const SYSTEMS_REQUIRED: usize = 195;
pub const SYSTEM_FACTORS: usize = 61;
pub const PIPELINE_PROBLEMS: usize = 50;
pub const SPECIALIZE_POLYS: usize = 1000;
pub const SUZUKI_INSTANCES: usize = 500;
pub const SUZUKI_MAX_K: usize = 4;
pub const GOWERS_TRIALS: u64 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: Option<u64>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

pub const CRITERIA: [(u8, &str, Option<u64>, Check); 12] = [
    (1, "commutator width", Some(60), commutator_width),
    (2, "power word x1^30", Some(600), power_word),
    (3, "silly-word lower bound", None, silly_lower_bound),
    (4, "wreath instance A5 by A6", Some(300), wreath_instance),
    (5, "twisted-class identities", None, class_identities),
    (6, "class-product covering", None, class_covering),
    (7, "odd-power witnesses", None, odd_power_witnesses),
    (8, "elimination solver", None, elimination_solver),
    (9, "polynomial pipeline", Some(1800), polynomial_pipeline),
    (10, "specialization", None, specialization),
    (11, "Suzuki symbolic suite", None, suzuki_suite),
    (12, "Gowers covering", None, gowers),
];

pub fn run_criterion(id: u8, seed: u64) -> Result<CriterionResult> {
    let &(id, name, limit, check) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| Error::InvalidInput(format!("no criterion {id}")))?;
    let start = Instant::now();
    let (mut passed, mut detail) = match check(seed) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    if let Some(l) = limit {
        if elapsed > Duration::from_secs(l) {
            passed = false;
            detail.push_str(&format!("; over the {l}s limit"));
        }
    }
    Ok(CriterionResult { id, name, passed, detail, seconds: elapsed.as_secs_f64(), limit_seconds: limit })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0, seed).expect("listed criterion")).collect()
}

fn indexed(spec: &str) -> Result<Arc<IndexedGroup>> {
    make_indexed(spec, DEFAULT_INDEX_CAP)
}

fn commutator_width(_seed: u64) -> Result<(bool, String)> {
    let w = Word::parse("[x1,x2]", None)?;
    let mut ok = true;
    let mut parts = Vec::new();
    for spec in ["Alt(5)", "Alt(6)", "PSL(2,7)"] {
        let r = width(&*indexed(spec)?, &w, &ValueStrategy::ConjugacyReduced, DEFAULT_TUPLE_BUDGET)?;
        ok &= r.width == 1 && r.verbal_order == r.layer_sizes[1];
        parts.push(format!("{spec}: {}", r.width));
    }
    Ok((ok, parts.join(", ")))
}

fn power_word(_seed: u64) -> Result<(bool, String)> {
    let w = Word::parse("x1^30", None)?;
    let a5 = width(&*indexed("Alt(5)")?, &w, &ValueStrategy::ConjugacyReduced, DEFAULT_TUPLE_BUDGET)?;
    let a6 = width(&*indexed("Alt(6)")?, &w, &ValueStrategy::ConjugacyReduced, DEFAULT_TUPLE_BUDGET)?;
    let ok = a5.width == 0
        && a5.verbal_order == 1
        && a6.verbal_order == 360
        && a6.width == A6_POWER30_WIDTH
        && a6.layer_sizes == A6_POWER30_LAYERS;
    Ok((
        ok,
        format!(
            "Alt(5): width {} order {}; Alt(6): width {} order {} layers {:?}",
            a5.width, a5.verbal_order, a6.width, a6.verbal_order, a6.layer_sizes
        ),
    ))
}

fn silly_lower_bound(seed: u64) -> Result<(bool, String)> {
    let fiber = indexed("Cyclic(2)")?;
    let top = indexed("Alt(5)")?;
    let y = top.index_of_parsed("(0 1 2 3 4)")?;
    let w = Word::parse("x1^2", None)?;
    let ce = build_counterexample(fiber, top, &w, &[y], KappaChoice::Fixed(1), DEFAULT_TUPLE_BUDGET)?;
    let mut bounds = Vec::new();
    for n in 1..=3 {
        let cert = certify_lower_bound(&ce, &ce.kappa, n, PROJECTION_SAMPLES, seed, DEFAULT_TUPLE_BUDGET)?;
        if !(cert.fiber_values_trivial && cert.kappa_everywhere_nontrivial && cert.projection_trivial) {
            return Ok((false, format!("n = {n}: hypothesis check failed")));
        }
        bounds.push(cert.bound);
    }
    Ok((
        ce.top_verbal_full == Some(true),
        format!("|Omega| = {}, {PROJECTION_SAMPLES} samples each, bounds {bounds:?}", ce.action.degree()),
    ))
}

fn wreath_instance(seed: u64) -> Result<(bool, String)> {
    let fiber = indexed("Alt(5)")?;
    let top = indexed("Alt(6)")?;
    let tuple = ["(0 1 2)", "(0 1)(2 3)", "(1 2 3)", "(0 1 2 3 4)"]
        .iter()
        .map(|t| top.index_of_parsed(t))
        .collect::<Result<Vec<_>>>()?;
    let w = Word::parse("x1^30", None)?;
    let ce = build_counterexample(fiber, top, &w, &tuple, KappaChoice::Random(seed), DEFAULT_TUPLE_BUDGET)?;
    let cert = certify_lower_bound(&ce, &ce.kappa, 3, PROJECTION_SAMPLES, seed, DEFAULT_TUPLE_BUDGET)?;
    let refuted = random_product_refute(&ce.group, &ce.kappa, &w, 3, REFUTE_TRIALS, seed)?;
    Ok((
        cert.projection_trivial && ce.top_verbal_full == Some(true) && refuted,
        format!(
            "|Omega| = {}, stabilizer order {}, bound {}, random refutation {}",
            cert.omega_size, cert.stabilizer_order, cert.bound, refuted
        ),
    ))
}

fn class_identities(seed: u64) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for spec in ["Alt(5)", "PSL(2,7)"] {
        let s = indexed(spec)?;
        let mut rng = stream(seed, "identities", 0);
        let mut bad = 0;
        for _ in 0..IDENTITY_CHOICES {
            let count = rng.gen_range(2..=3);
            let auts: Vec<DenseAut> =
                (0..count).map(|_| random_factor_aut(&s, &mut rng)?.to_dense(&s)).collect::<Result<_>>()?;
            let g = s.random(&mut rng);
            if !basic_identities(&s, &auts, g).all() {
                bad += 1;
            }
        }
        ok &= bad == 0;
        parts.push(format!("{spec}: {bad} violations"));
    }
    Ok((ok, parts.join(", ")))
}

fn class_covering(seed: u64) -> Result<(bool, String)> {
    let s = indexed("Alt(5)")?;
    let mut covered = 0;
    let mut worst = 0;
    for t in 0..COVER_TRIALS {
        let mut rng = stream(seed, "covering", t as u64);
        let factors = (0..COVER_FACTORS)
            .map(|_| Ok((0, twisted_class(&s, &random_nontrivial_aut(&s, &mut rng)?), 0)))
            .collect::<Result<Vec<_>>>()?;
        let r = class_product_covers(&s, &factors);
        if let Some(m) = r.first_cover {
            covered += 1;
            worst = worst.max(m);
        }
    }
    Ok((
        covered == COVER_TRIALS && worst <= COVER_FACTORS,
        format!("{covered}/{COVER_TRIALS} covered, largest minimal prefix {worst}"),
    ))
}

/// Outer-coset representatives for the catalog groups, including the trivial coset.
pub fn outer_catalog() -> Result<Vec<(String, Arc<IndexedGroup>, Vec<(String, DenseAut)>)>> {
    let mut out = Vec::new();
    for (spec, reps) in [
        ("Alt(5)", vec!["id", "graph"]),
        ("Alt(6)", vec!["id", "graph"]),
        ("PSL(2,5)", vec!["id", "diag:{z}"]),
        ("PSL(2,9)", vec!["id", "diag:{z}", "field:1", "diag:{z}*field:1"]),
    ] {
        let s = indexed(spec)?;
        let z = s.handle().field().map(|f| f.primitive()).unwrap_or(0);
        let auts = reps
            .iter()
            .map(|r| {
                let text = r.replace("{z}", &z.to_string());
                let a = FactorAut::parse(&text, s.handle())?.to_dense(&s)?;
                Ok((text, a))
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((spec.to_string(), s, auts));
    }
    Ok(out)
}

/// `(x ↦ g⁻¹ a(x) g)^n` is the identity map on all of `S`.
fn power_is_identity(s: &IndexedGroup, a: &DenseAut, g: u32, n: u64) -> bool {
    let gi = s.inv(g);
    let step = DenseAut((0..s.order() as u32).map(|x| s.mul(s.mul(gi, a.apply(x)), g)).collect());
    let mut acc = DenseAut::identity(s.order());
    for _ in 0..n {
        acc = acc.then(&step);
    }
    acc.is_identity()
}

fn odd_power_witnesses(_seed: u64) -> Result<(bool, String)> {
    let mut cases = 0;
    let mut failures = Vec::new();
    for (spec, s, auts) in outer_catalog()? {
        for (name, a) in &auts {
            for n in ODD_EXPONENTS {
                cases += 1;
                match pth_power_witness(&s, a, n) {
                    Ok(g) if !power_is_identity(&s, a, g, n) => {}
                    Ok(_) => failures.push(format!("{spec} {name} n={n}: witness does not recheck")),
                    Err(e) => failures.push(format!("{spec} {name} n={n}: {e}")),
                }
            }
        }
    }
    Ok((failures.is_empty(), format!("{cases} cases, {} failures {}", failures.len(), failures.join("; "))))
}

fn elimination_solver(seed: u64) -> Result<(bool, String)> {
    let s = indexed("Alt(5)")?;
    let mut solved = 0;
    let mut bad = 0;
    for t in 0..SYSTEMS {
        let n = 2 + t % 3;
        let mut rng = stream(seed, "systems", t as u64);
        let sys = random_system(&s, n, SYSTEM_FACTORS, &mut rng)?;
        if let Ok(sol) = eliminate_and_solve(&s, &sys, seed ^ t as u64, DEFAULT_RETRIES) {
            if sol.verified && sys.is_solution(&s, &sol.z) {
                solved += 1;
            } else {
                bad += 1;
            }
        }
    }
    Ok((
        solved >= SYSTEMS_REQUIRED && bad == 0,
        format!("{solved}/{SYSTEMS} solved and verified, {bad} returned solutions failed substitution"),
    ))
}

fn polynomial_pipeline(seed: u64) -> Result<(bool, String)> {
    let mut attempted = 0;
    let mut found = 0;
    let mut misses = Vec::new();
    let mut max_ledger = 0;
    let mut max_degree = 0;
    for q in [5u32, 7, 11, 13] {
        let s = IndexedGroup::new(GroupHandle::psl2(q)?, DEFAULT_INDEX_CAP)?;
        for m in [1usize, 2] {
            for text in ["[x1,x2]", "x1^3"] {
                let w = Word::parse(text, None)?;
                let k = w.length();
                for t in 0..PIPELINE_PROBLEMS {
                    let mut rng = stream(seed, &format!("pipeline-{q}-{m}-{text}"), t as u64);
                    let prob = random_problem(&mut rng, &w, q, m)?;
                    let dense = prob.twists.iter().map(|g| psl2_to_dense(&s, g)).collect::<Result<Vec<_>>>()?;
                    let oracle = coset_witness_bruteforce(&w, &dense, &s, m, &BruteMode::Exhaustive, DEFAULT_TUPLE_BUDGET)?;
                    if oracle.witness.is_none() {
                        continue;
                    }
                    attempted += 1;
                    let tag = format!("q={q} m={m} {text} #{t}");
                    let res = match coset_witness_psl2(&prob, CaseChoice::A, DEFAULT_TUPLE_BUDGET) {
                        Ok(r) => r,
                        Err(e) => {
                            misses.push(format!("{tag}: {e}"));
                            continue;
                        }
                    };
                    let a = res
                        .elements
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|x| s.index_of(&crate::group::Element::Mat(*x)))
                                .collect::<Option<Vec<u32>>>()
                        })
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| Error::Certificate("witness entry outside PSL(2,q)".into()))?;
                    max_ledger = max_ledger.max(res.max_ledger_size);
                    max_degree = max_degree.max(res.degree_max);
                    if !is_coset_witness(&w, &dense, &s, &a) {
                        misses.push(format!("{tag}: witness rejected by direct evaluation"));
                    } else if res.max_ledger_size > k || res.degree_max as usize > k {
                        misses.push(format!("{tag}: ledger {} degree {} exceed k = {k}", res.max_ledger_size, res.degree_max));
                    } else {
                        found += 1;
                    }
                }
            }
        }
    }
    Ok((
        misses.is_empty(),
        format!(
            "{found}/{attempted} oracle-solvable problems solved symbolically, max ledger {max_ledger}, max degree {max_degree}{}",
            misses.first().map(|m| format!("; first miss {m}")).unwrap_or_default()
        ),
    ))
}

fn specialization(seed: u64) -> Result<(bool, String)> {
    let fields: Vec<Arc<Gf>> = [5u32, 7, 9, 11, 25, 27, 49, 64].iter().map(|&q| Gf::new(q).map(Arc::new)).collect::<Result<_>>()?;
    let mut rng = stream(seed, "specialize", 0);
    let mut failures = 0;
    for _ in 0..SPECIALIZE_POLYS {
        let f = &fields[rng.gen_range(0..fields.len())];
        let values: Vec<u32> = if rng.gen_bool(0.5) { f.prime_subfield().collect() } else { f.elements().collect() };
        let max_deg = values.len() as u32 - 1;
        let nvars = rng.gen_range(1..=4u16);
        let poly = loop {
            let mut p = MultiPoly::zero(f);
            for _ in 0..rng.gen_range(1..=6) {
                let mono: Vec<(Var, u32)> = (1..=nvars).map(|i| (Var::plain(i), rng.gen_range(0..=max_deg))).collect();
                p = p.add(&MultiPoly::monomial(f, rng.gen_range(1..f.q()), mono))?;
            }
            if !p.is_zero() {
                break p;
            }
        };
        match specialize_nonzero(&poly, &values) {
            Ok(y) if poly.evaluate(&y) != 0 => {}
            _ => failures += 1,
        }
    }
    Ok((failures == 0, format!("{SPECIALIZE_POLYS} polynomials, {failures} failures")))
}

fn suzuki_suite(seed: u64) -> Result<(bool, String)> {
    let r = suzuki_symbolic_suite(seed, SUZUKI_INSTANCES, SUZUKI_INSTANCES, SUZUKI_MAX_K)?;
    Ok((
        r.passed(),
        format!(
            "entry (4,1) {}, uv {}/{} hold, chains {}/{} noncentral ({} fully expanded)",
            if r.entry41_matches { "matches" } else { "differs" },
            r.uv_instances - r.uv_failures,
            r.uv_instances,
            r.chain_noncentral,
            r.chain_instances,
            r.full_symbolic_checks
        ),
    ))
}

fn gowers(seed: u64) -> Result<(bool, String)> {
    let g = indexed("Alt(5)")?;
    let r = r_table("Alt(5)").ok_or_else(|| Error::InvalidInput("Alt(5) missing from the r table".into()))?;
    let size = gowers_set_size(g.order(), r, 3);
    let rep = gowers_check(&g, r, 3, GOWERS_TRIALS, seed, None);
    Ok((
        size == 42 && rep.set_size == 42 && rep.failures == 0,
        format!("set size {}, {}/{} trials covered", rep.set_size, rep.covered, rep.trials),
    ))
}
