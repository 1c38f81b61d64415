use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};
use verbal_core::acceptance::{run_criterion, CRITERIA, DEFAULT_SEED};
use verbal_core::equations::{aut_centralizer, eliminate_and_solve, twisted_class, EquationSystem, Twist};
use verbal_core::group::{make_indexed, split_top_level, FactorAut, IndexedGroup};
use verbal_core::perm::Perm;
use verbal_core::poly::{coset_witness_psl2, random_problem, CaseChoice, CosetWitnessProblem};
use verbal_core::rng::stream;
use verbal_core::width::{build_counterexample, certify_lower_bound, random_product_refute, width, KappaChoice};
use verbal_core::words::{SillyReason, ValueStrategy, Word};

use crate::report::{cell, Report};
use crate::{CaseArg, Cli, Command, Strategy};

pub fn run(cli: &Cli) -> Result<ExitCode> {
    let seed = cli.seed.unwrap_or(0);
    let mut code = ExitCode::SUCCESS;
    let report = match &cli.command {
        Command::Width { group, word, strategy, samples } => cmd_width(cli, group, word, *strategy, *samples, seed)?,
        Command::Values { group, word, strategy, samples } => cmd_values(cli, group, word, *strategy, *samples, seed)?,
        Command::Silly { word } => cmd_silly(word)?,
        Command::Solve { group, system, retries } => cmd_solve(cli, group, system, *retries, seed)?,
        Command::Twisted { group, aut } => cmd_twisted(cli, group, aut)?,
        Command::CosetWitness { word, q, m, twists, case } => {
            cmd_coset_witness(cli, word, *q, *m, twists.as_deref(), *case, seed)?
        }
        Command::Construct { fiber, top, word, tuple, n, samples, refute_trials } => {
            cmd_construct(cli, fiber, top, word, tuple, *n, *samples, *refute_trials, seed)?
        }
        Command::Verify { only, .. } => {
            let (r, ok) = cmd_verify(only, cli.seed.unwrap_or(DEFAULT_SEED))?;
            if !ok {
                code = ExitCode::from(1);
            }
            r
        }
    };
    report.emit(cli)?;
    Ok(code)
}

fn strategy(s: Strategy, samples: u64, seed: u64) -> ValueStrategy {
    match s {
        Strategy::Exhaustive => ValueStrategy::Exhaustive,
        Strategy::Conjugacy => ValueStrategy::ConjugacyReduced,
        Strategy::Random => ValueStrategy::Randomized { samples, seed },
    }
}

fn indexed(cli: &Cli, spec: &str) -> Result<Arc<IndexedGroup>> {
    Ok(make_indexed(spec, cli.budget_index)?)
}

fn cmd_width(cli: &Cli, group: &str, word: &str, s: Strategy, samples: u64, seed: u64) -> Result<Report> {
    let g = indexed(cli, group)?;
    let w = Word::parse(word, None)?;
    let r = width(&g, &w, &strategy(s, samples, seed), cli.budget_tuples)?;
    let mut rep = Report::new("width");
    rep.set("group", r.group.clone());
    rep.set("word", r.word.clone());
    rep.set("width", r.width);
    rep.set("verbal_order", r.verbal_order);
    rep.set("value_count", r.value_count);
    rep.set("layers", r.layer_sizes.clone());
    rep.set("strategy", r.strategy.clone());
    rep.table(
        &["group", "word", "width", "verbal_order", "value_count", "layers", "strategy"],
        vec![vec![
            r.group,
            r.word,
            r.width.to_string(),
            r.verbal_order.to_string(),
            r.value_count.to_string(),
            cell(&json!(r.layer_sizes)),
            r.strategy,
        ]],
    );
    Ok(rep)
}

fn cmd_values(cli: &Cli, group: &str, word: &str, s: Strategy, samples: u64, seed: u64) -> Result<Report> {
    let g = indexed(cli, group)?;
    let w = Word::parse(word, None)?;
    let strat = strategy(s, samples, seed);
    let values = w.value_set(&g, &strat, cli.budget_tuples)?;
    let listed: Vec<(u32, String)> = values.iter().map(|x| (x, g.format_index(x))).collect();
    let mut rep = Report::new("values");
    rep.set("group", g.handle().name());
    rep.set("word", w.to_string());
    rep.set("strategy", strat.to_string());
    rep.set("value_count", listed.len());
    rep.set("values", listed.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>());
    rep.table(
        &["group", "word", "index", "element"],
        listed
            .into_iter()
            .map(|(i, e)| vec![g.handle().name().to_string(), w.to_string(), i.to_string(), e])
            .collect(),
    );
    Ok(rep)
}

fn cmd_silly(word: &str) -> Result<Report> {
    let w = Word::parse(word, None)?;
    let s = w.silliness();
    let (reason, divisor) = match s.reason {
        SillyReason::Trivial => ("trivial", Value::Null),
        SillyReason::Surjective => ("coprime exponent sums", Value::Null),
        SillyReason::CommonDivisor(d) => ("common divisor of exponent sums", d.into()),
    };
    let mut rep = Report::new("silly");
    rep.set("word", w.to_string());
    rep.set("silly", s.silly);
    rep.set("divisor", divisor.clone());
    rep.set("exponent_gcd", s.gcd);
    rep.set("reason", reason);
    rep.table(
        &["word", "silly", "divisor", "exponent_gcd", "reason"],
        vec![vec![w.to_string(), s.silly.to_string(), cell(&divisor), s.gcd.to_string(), reason.into()]],
    );
    Ok(rep)
}

#[derive(Deserialize)]
struct SystemJson {
    kappa: Vec<String>,
    twists: Vec<TwistJson>,
}

#[derive(Deserialize)]
struct TwistJson {
    #[serde(default)]
    perm: Option<String>,
    auts: Vec<String>,
}

fn read_json_arg(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with(['{', '[']) {
        Ok(arg.to_string())
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
    }
}

fn parse_system(s: &IndexedGroup, text: &str) -> Result<EquationSystem> {
    let raw: SystemJson = serde_json::from_str(text).context("system JSON")?;
    let n = raw.kappa.len();
    let kappa = raw.kappa.iter().map(|k| s.index_of_parsed(k)).collect::<verbal_core::Result<Vec<_>>>()?;
    let twists = raw
        .twists
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if t.auts.len() != n {
                bail!("twist {i} lists {} automorphisms for {n} factors", t.auts.len());
            }
            let perm = match &t.perm {
                Some(p) => Perm::parse_cycles(p, n)?,
                None => Perm::identity(n),
            };
            let auts = t
                .auts
                .iter()
                .map(|a| FactorAut::parse(a, s.handle())?.to_dense(s))
                .collect::<verbal_core::Result<Vec<_>>>()?;
            Ok(Twist { perm, auts })
        })
        .collect::<Result<Vec<_>>>()?;
    let sys = EquationSystem { kappa, twists };
    sys.validate(s)?;
    Ok(sys)
}

fn cmd_solve(cli: &Cli, group: &str, system: &str, retries: usize, seed: u64) -> Result<Report> {
    let s = indexed(cli, group)?;
    let sys = parse_system(&s, &read_json_arg(system)?)?;
    let sol = eliminate_and_solve(&s, &sys, seed, retries)?;
    let verified = sol.verified && sys.is_solution(&s, &sol.z);
    let z: Vec<Vec<String>> = sol.z.iter().map(|row| row.iter().map(|&x| s.format_index(x)).collect()).collect();
    let mut rep = Report::new("solve");
    rep.set("group", s.handle().name());
    rep.set("equations", sys.n());
    rep.set("brackets", sys.twists.len());
    rep.set("z", json!(z));
    rep.set("orbits", json!(sol.orbits));
    rep.set("attempts", sol.attempts);
    rep.set("verified", verified);
    rep.set("transcript", json!(sol.transcript));
    let mut rows = Vec::new();
    for (i, row) in z.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            rows.push(vec![(i + 1).to_string(), (j + 1).to_string(), x.clone(), verified.to_string()]);
        }
    }
    rep.table(&["twist", "factor", "value", "verified"], rows);
    if !verified {
        bail!(verbal_core::Error::Certificate("returned assignment does not satisfy the system".into()));
    }
    Ok(rep)
}

fn cmd_twisted(cli: &Cli, group: &str, aut: &str) -> Result<Report> {
    let s = indexed(cli, group)?;
    let a = FactorAut::parse(aut, s.handle())?.to_dense(&s)?;
    if !a.is_automorphism_of(&s) {
        bail!(verbal_core::Error::InvalidInput(format!("{aut} is not an automorphism of {group}")));
    }
    let class = twisted_class(&s, &a);
    let cent = aut_centralizer(&s, &a);
    let elements: Vec<String> = class.iter().map(|x| s.format_index(x)).collect();
    let mut rep = Report::new("twisted");
    rep.set("group", s.handle().name());
    rep.set("aut", aut);
    rep.set("class_size", class.len());
    rep.set("centralizer_order", cent.len());
    rep.set("index_check", class.len() * cent.len() == s.order());
    rep.set("elements", json!(elements));
    rep.table(
        &["group", "aut", "class_size", "centralizer_order", "element"],
        elements
            .into_iter()
            .map(|e| vec![s.handle().name().into(), aut.into(), class.len().to_string(), cent.len().to_string(), e])
            .collect(),
    );
    Ok(rep)
}

fn cmd_coset_witness(
    cli: &Cli,
    word: &str,
    q: u32,
    m: usize,
    twists: Option<&str>,
    case: CaseArg,
    seed: u64,
) -> Result<Report> {
    let prob = match twists {
        Some(t) => {
            let list: Vec<String> = serde_json::from_str(&read_json_arg(t)?).context("twist descriptors")?;
            let refs: Vec<&str> = list.iter().map(String::as_str).collect();
            CosetWitnessProblem::parse(word, q, m, &refs)?
        }
        None => random_problem(&mut stream(seed, "coset-witness", 0), &Word::parse(word, None)?, q, m)?,
    };
    let choice = match case {
        CaseArg::Auto => CaseChoice::Auto,
        CaseArg::A => CaseChoice::A,
        CaseArg::B => CaseChoice::B,
        CaseArg::Brute => CaseChoice::Brute,
    };
    let w = coset_witness_psl2(&prob, choice, cli.budget_tuples)?;
    let mut rep = Report::new("coset-witness");
    rep.set("word", prob.word.to_string());
    rep.set(
        "twists",
        json!(prob
            .twists
            .iter()
            .map(|g| g.per.iter().map(|r| format!("field^{} conj {}", r.field_exp, r.conj)).collect::<Vec<_>>())
            .collect::<Vec<_>>()),
    );
    rep.merge(&w)?;
    let mut rows = Vec::new();
    for (i, row) in w.a.iter().enumerate() {
        for (beta, x) in row.iter().enumerate() {
            rows.push(vec![
                (i + 1).to_string(),
                (beta + 1).to_string(),
                x.clone(),
                cell(&json!(w.case)),
                w.verification.ok.to_string(),
            ]);
        }
    }
    rep.table(&["letter", "factor", "matrix", "case", "verified"], rows);
    Ok(rep)
}

#[allow(clippy::too_many_arguments)]
fn cmd_construct(
    cli: &Cli,
    fiber: &str,
    top: &str,
    word: &str,
    tuple: &str,
    n: usize,
    samples: u64,
    refute_trials: u64,
    seed: u64,
) -> Result<Report> {
    let fiber = indexed(cli, fiber)?;
    let top = indexed(cli, top)?;
    let w = Word::parse(word, None)?;
    let gens = split_top_level(tuple, ',')
        .into_iter()
        .filter(|t| !t.trim().is_empty())
        .map(|t| top.index_of_parsed(t))
        .collect::<verbal_core::Result<Vec<_>>>()?;
    let ce = build_counterexample(fiber, top, &w, &gens, KappaChoice::Random(seed), cli.budget_tuples)?;
    let cert = certify_lower_bound(&ce, &ce.kappa, n, samples, seed, cli.budget_tuples)?;
    let refuted = if refute_trials > 0 {
        Some(random_product_refute(&ce.group, &ce.kappa, &w, n, refute_trials, seed)?)
    } else {
        None
    };
    let mut rep = Report::new("construct");
    rep.set("group", ce.group.name());
    rep.set("kappa", ce.group.format(&ce.kappa));
    rep.set("top_verbal_full", json!(ce.top_verbal_full));
    rep.merge(&cert)?;
    rep.set("refute_trials", refute_trials);
    rep.set("refuted", json!(refuted));
    rep.table(
        &["fiber", "top", "word", "omega_size", "stabilizer_order", "bound", "projection_samples", "projection_trivial", "refuted"],
        vec![vec![
            cert.fiber.clone(),
            ce.top.handle().name().into(),
            cert.word.clone(),
            cert.omega_size.to_string(),
            cert.stabilizer_order.to_string(),
            cert.bound.to_string(),
            cert.projection_samples.to_string(),
            cert.projection_trivial.to_string(),
            refuted.map(|r| r.to_string()).unwrap_or_default(),
        ]],
    );
    Ok(rep)
}

fn cmd_verify(only: &[u8], seed: u64) -> Result<(Report, bool)> {
    let ids: Vec<u8> = if only.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { only.to_vec() };
    let mut results = Vec::new();
    for id in ids {
        let r = run_criterion(id, seed)?;
        eprintln!("{}", r.line());
        results.push(r);
    }
    let ok = results.iter().all(|r| r.passed);
    let mut rep = Report::new("verify");
    rep.set("suite", "acceptance");
    rep.set("seed", seed);
    // timings stay on stderr so reports are reproducible byte for byte
    rep.set(
        "criteria",
        json!(results
            .iter()
            .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail, "limit_seconds": r.limit_seconds}))
            .collect::<Vec<_>>()),
    );
    rep.set("passed", ok);
    rep.table(
        &["id", "name", "passed", "detail"],
        results.iter().map(|r| vec![r.id.to_string(), r.name.into(), r.passed.to_string(), r.detail.clone()]).collect(),
    );
    Ok((rep, ok))
}
