//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use wsc::constraints::{Atom, BaseVar, Interner, Store, Var};
use wsc::engine::{load, solve, solve_with, Priority, RuleId, Solver, Verdict};
use wsc::frontend::{generate, parse_problem, GenConfig, ProblemFile};
use wsc::oracles::{
    check_witness, naive_solve, rational_unify, structure_probe, witness_search_with, NaiveOutcome,
    SearchConfig, SearchOutcome,
};
use wsc::terms::{instance_member, meet, parse_term, weak_subsumes, Node, Symbol, TermGraph};

const TERMINATION_RUNS: u64 = 1_000;
const UNIFY_RUNS: u64 = 1_000;
const TRIANGULATION_RUNS: u64 = 500;
const INCREMENTAL_RUNS: u64 = 500;
const ORDERS_PER_INSTANCE: usize = 5;
const SIMULATION_TRIPLES: u64 = 200;
const ENTAILMENT_RUNS: u64 = 200;
/// Safety net only: a run hitting it counts as non-terminating.
const STEP_LIMIT: usize = 1_000_000;
const LOOP_STEP_BOUND: usize = 100;
const NAIVE_BUDGET: usize = 200;
const PROBE_DEPTH: usize = 10;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 worked examples", worked_examples),
        ("2 forbidden derivations", forbidden_derivations),
        ("3 termination", termination),
        ("4 equational fragment vs unification", equational_agreement),
        ("5 oracle triangulation", triangulation),
        ("6 incremental = batch", incremental_equals_batch),
        ("7 strategy invariance", strategy_invariance),
        ("8 simulation checker", simulation_checker),
        ("9 entailment", entailment),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let out = run();
        let ms = start.elapsed().as_millis();
        let tag = if out.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {} ({ms} ms)", out.detail);
        if !out.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn problem(src: &str) -> (ProblemFile, Interner) {
    let mut names = Interner::new();
    let p = parse_problem(src, &mut names).expect("valid example");
    (p, names)
}

fn verdict(store: &Store) -> Verdict {
    solve(store).expect("base-only input").verdict
}

/// Instance shape for the random suites, drawn from the seed.
fn shape(
    seed: u64,
    max_vars: usize,
    symbols: usize,
    max_atoms: usize,
    sub_free: bool,
) -> GenConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000);
    GenConfig {
        vars: rng.gen_range(1..=max_vars),
        symbols,
        max_arity: 2,
        atoms: rng.gen_range(1..=max_atoms),
        sub_free,
    }
}

fn suite3(seed: u64) -> Store {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    let symbols = rng.gen_range(1..=3);
    generate(seed, &shape(seed, 6, symbols, 12, false))
        .0
        .store()
}

fn same_class(s: &Solver, a: BaseVar, b: BaseVar) -> bool {
    s.classes()
        .iter()
        .any(|c| c.members.contains(&a) && c.members.contains(&b))
}

fn expect(notes: &mut Vec<String>, src: &str, want: Verdict) -> Option<(Solver, Interner)> {
    let (p, names) = problem(src);
    let mut s = Solver::new();
    load(&mut s, p.atoms.clone()).expect("base-only");
    let got = s.run();
    if got != want {
        notes.push(format!("{src}: got {got}"));
        return None;
    }
    Some((s, names))
}

fn worked_examples() -> Outcome {
    let mut notes = Vec::new();
    expect(&mut notes, "x <= z. y <= z. x = a(). y = b()", Verdict::Sat);
    expect(
        &mut notes,
        "y = f(u). u = a(). z = f(x). x <= y. x <= z",
        Verdict::Unsat,
    );
    let shared = "x = f(u, v). x <= y. y = f(z, z)";
    if let Some((s, n)) = expect(&mut notes, shared, Verdict::Sat) {
        if same_class(&s, n.get("u").unwrap(), n.get("v").unwrap()) {
            notes.push("u and v merged".into());
        }
    }
    let mut loop_steps = Vec::new();
    for src in ["x <= y. y = f(x)", "x <= y. y = f(y)"] {
        if let Some((s, _)) = expect(&mut notes, src, Verdict::Sat) {
            loop_steps.push(s.steps());
            if s.steps() >= LOOP_STEP_BOUND {
                notes.push(format!("{src}: {} steps", s.steps()));
            }
        }
    }
    Outcome {
        pass: notes.is_empty(),
        detail: if notes.is_empty() {
            format!("4 verdicts as expected, loop inputs took {loop_steps:?} steps (< {LOOP_STEP_BOUND})")
        } else {
            notes.join("; ")
        },
    }
}

fn forbidden_derivations() -> Outcome {
    let cases: [(&str, &str); 3] = [
        ("x = f(u)", "x <= f(u)"),
        ("x <= y. x = f(x). x <= f(y)", "x <= y"),
        ("x = f(y)", "y <= y"),
    ];
    let mut bad = Vec::new();
    for (src, forbidden) in cases {
        let (p, mut names) = problem(src);
        let target = wsc::frontend::parse_store(forbidden, &mut names)
            .unwrap()
            .atoms()
            .next()
            .unwrap()
            .clone();
        let mut s = Solver::new().with_trace(true);
        load(&mut s, p.atoms.clone()).unwrap();
        s.run();
        for t in s.trace() {
            if matches!(t.rule, RuleId::Descend1 | RuleId::Descend2) && t.produced.contains(&target)
            {
                bad.push(format!("{src}: {}", t.render(&names)));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            "no Descend firing adds a forbidden atom on the 3 inputs".into()
        } else {
            bad.join("; ")
        },
    }
}

fn run_limited(store: &Store, priority: Priority) -> (Verdict, usize) {
    let mut s = Solver::new()
        .with_priority(priority)
        .with_step_limit(Some(STEP_LIMIT));
    load(&mut s, store.atoms().cloned()).unwrap();
    let v = s.run();
    (v, s.steps())
}

fn termination() -> Outcome {
    let results: Vec<(Verdict, usize)> = (0..TERMINATION_RUNS)
        .into_par_iter()
        .map(|seed| run_limited(&suite3(seed), Priority::DEFAULT))
        .collect();
    let stuck = results
        .iter()
        .filter(|(v, _)| *v == Verdict::Unknown)
        .count();
    let max = results.iter().map(|r| r.1).max().unwrap_or(0);
    let mean = results.iter().map(|r| r.1).sum::<usize>() as f64 / results.len() as f64;
    let unsat = results.iter().filter(|(v, _)| *v == Verdict::Unsat).count();
    Outcome {
        pass: stuck == 0,
        detail: format!(
            "{}/{} reached a fixpoint, steps max {max} mean {mean:.1}, {unsat} unsat",
            results.len() - stuck,
            results.len()
        ),
    }
}

fn equational_agreement() -> Outcome {
    let mismatches: Vec<(u64, bool)> = (0..UNIFY_RUNS)
        .into_par_iter()
        .filter_map(|seed| {
            let store = generate(seed, &shape(seed, 6, 3, 12, true)).0.store();
            let engine = verdict(&store) == Verdict::Unsat;
            let unify = rational_unify(&store).unwrap().is_clash();
            (engine != unify).then_some((seed, engine))
        })
        .collect();
    let unsat = (0..UNIFY_RUNS)
        .into_par_iter()
        .filter(|&seed| {
            let store = generate(seed, &shape(seed, 6, 3, 12, true)).0.store();
            rational_unify(&store).unwrap().is_clash()
        })
        .count();
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "{}/{UNIFY_RUNS} agree ({unsat} unsat){}",
            UNIFY_RUNS as usize - mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(", first mismatch seed {}", mismatches[0].0)
            }
        ),
    }
}

#[derive(Default)]
struct Tally {
    found: usize,
    engine_unsat: usize,
    naive_unsat: usize,
    naive_sat: usize,
    naive_open: usize,
    probe_clash: usize,
    capped: usize,
    violations: Vec<String>,
}

fn triangulation() -> Outcome {
    let cfg = SearchConfig {
        max_depth: 2,
        max_holes: 1,
        cap: 200_000,
    };
    let per: Vec<Tally> = (0..TRIANGULATION_RUNS)
        .into_par_iter()
        .map(|seed| {
            let seed = seed + 50_000;
            let store = generate(seed, &shape(seed, 4, 2, 8, false)).0.store();
            let mut t = Tally::default();
            let unsat = verdict(&store) == Verdict::Unsat;
            t.engine_unsat += unsat as usize;
            match witness_search_with(&store, &cfg).unwrap() {
                SearchOutcome::Found(w) => {
                    t.found += 1;
                    if !check_witness(&w, &store) {
                        t.violations
                            .push(format!("seed {seed}: witness fails its own check"));
                    }
                    if unsat {
                        t.violations
                            .push(format!("seed {seed}: witness found but engine unsat"));
                    }
                }
                SearchOutcome::CapExceeded => t.capped += 1,
                SearchOutcome::NotInSpace => {}
            }
            match naive_solve(&store, NAIVE_BUDGET).unwrap() {
                NaiveOutcome::Unsat { .. } => {
                    t.naive_unsat += 1;
                    if !unsat {
                        t.violations
                            .push(format!("seed {seed}: naive unsat but engine sat"));
                    }
                }
                NaiveOutcome::Exhausted { fixpoint: true, .. } => {
                    t.naive_sat += 1;
                    if unsat {
                        t.violations
                            .push(format!("seed {seed}: naive sat but engine unsat"));
                    }
                }
                NaiveOutcome::Exhausted { .. } => t.naive_open += 1,
            }
            if structure_probe(&store, PROBE_DEPTH).unwrap().is_clash() {
                t.probe_clash += 1;
                if !unsat {
                    t.violations
                        .push(format!("seed {seed}: probe clash but engine sat"));
                }
            } else if unsat {
                t.violations
                    .push(format!("seed {seed}: engine unsat but no probe clash"));
            }
            t
        })
        .collect();
    let mut total = Tally::default();
    for t in per {
        total.found += t.found;
        total.engine_unsat += t.engine_unsat;
        total.naive_unsat += t.naive_unsat;
        total.naive_sat += t.naive_sat;
        total.naive_open += t.naive_open;
        total.probe_clash += t.probe_clash;
        total.capped += t.capped;
        total.violations.extend(t.violations);
    }
    let sat = TRIANGULATION_RUNS as usize - total.engine_unsat;
    Outcome {
        pass: total.violations.is_empty(),
        detail: format!(
            "{} violations; engine sat {sat} / unsat {}; witnesses found {} (every one on a sat instance); \
             naive unsat {} / sat {} / open {}; probe conflicts {}; search capped {}{}",
            total.violations.len(),
            total.engine_unsat,
            total.found,
            total.naive_unsat,
            total.naive_sat,
            total.naive_open,
            total.probe_clash,
            total.capped,
            total
                .violations
                .first()
                .map_or(String::new(), |v| format!("; first: {v}"))
        ),
    }
}

fn incremental_equals_batch() -> Outcome {
    let bad: Vec<u64> = (0..INCREMENTAL_RUNS)
        .into_par_iter()
        .filter(|&seed| {
            let seed = seed + 100_000;
            let (p, _) = generate(seed, &shape(seed, 6, 3, 12, false));
            let batch = verdict(&p.store());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..ORDERS_PER_INSTANCE).any(|_| {
                let mut atoms: Vec<Atom> = p.atoms.clone();
                atoms.shuffle(&mut rng);
                let mut s = Solver::new();
                let mut v = Verdict::Sat;
                for a in atoms {
                    v = s.assert_atom(a).unwrap();
                }
                v != batch
            })
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{}/{} instances agree over {ORDERS_PER_INSTANCE} orders each{}",
            INCREMENTAL_RUNS as usize - bad.len(),
            INCREMENTAL_RUNS,
            bad.first()
                .map_or(String::new(), |s| format!(", first mismatch seed {s}"))
        ),
    }
}

fn strategy_invariance() -> Outcome {
    let bad: Vec<u64> = (0..TERMINATION_RUNS)
        .into_par_iter()
        .filter(|&seed| {
            let store = suite3(seed);
            let a = solve_with(&store, Priority::DEFAULT).unwrap().verdict;
            let (b, _) = run_limited(&store, Priority::SCRAMBLED);
            a != b
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{}/{} identical verdicts under the scrambled priority{}",
            TERMINATION_RUNS as usize - bad.len(),
            TERMINATION_RUNS,
            bad.first()
                .map_or(String::new(), |s| format!(", first mismatch seed {s}"))
        ),
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> TermGraph {
    let syms = [
        Symbol::new("a", 0),
        Symbol::new("f", 1),
        Symbol::new("g", 2),
    ];
    let n = rng.gen_range(1..=5);
    let nodes: Vec<Node> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Node::Hole(["H", "K"][rng.gen_range(0..2)].into())
            } else {
                let f = syms.choose(rng).unwrap().clone();
                let kids = (0..f.arity()).map(|_| rng.gen_range(0..n)).collect();
                Node::App(f, kids)
            }
        })
        .collect();
    TermGraph::from_nodes(nodes, 0).expect("valid random graph")
}

/// `Inst(t) ⊆ Inst(s)`, built by intersecting `s` with a random graph.
fn below(s: &TermGraph, rng: &mut ChaCha8Rng) -> TermGraph {
    for _ in 0..20 {
        if let Some(m) = meet(s, &random_graph(rng)) {
            return m;
        }
    }
    s.clone()
}

fn simulation_checker() -> Outcome {
    let mut bad = Vec::new();
    let mut chained = 0;
    for seed in 0..SIMULATION_TRIPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_graph(&mut rng);
        let (t, u) = if seed % 2 == 0 {
            let t = below(&s, &mut rng);
            let u = below(&t, &mut rng);
            (t, u)
        } else {
            (random_graph(&mut rng), random_graph(&mut rng))
        };
        for g in [&s, &t, &u] {
            if !weak_subsumes(g, g) {
                bad.push(format!("seed {seed}: not reflexive on {g}"));
            }
        }
        if seed % 2 == 0 && !(weak_subsumes(&s, &t) && weak_subsumes(&t, &u)) {
            bad.push(format!("seed {seed}: meet not below its operand"));
        }
        let pairs = [(&s, &t), (&t, &u), (&s, &u), (&t, &s), (&u, &t), (&u, &s)];
        for (a, b) in pairs {
            for c in [&s, &t, &u] {
                if weak_subsumes(a, b) && weak_subsumes(b, c) {
                    chained += 1;
                    if !weak_subsumes(a, c) {
                        bad.push(format!("seed {seed}: not transitive"));
                    }
                }
            }
        }
    }
    let g = |src: &str| parse_term(src).unwrap();
    let facts = [
        (
            "f(a(), b()) ∈ Inst(f(x, x))",
            weak_subsumes(&g("f(x, x)"), &g("f(a(), b())")),
        ),
        (
            "bounded member check agrees",
            instance_member(&g("f(a(), b())"), &g("f(x, x)"), 8),
        ),
        (
            "hole subsumes a constant",
            weak_subsumes(&g("x"), &g("a()")),
        ),
        (
            "hole subsumes a cycle",
            weak_subsumes(&g("x"), &g("rec X. f(X, X)")),
        ),
        ("hole subsumes a hole", weak_subsumes(&g("x"), &g("y"))),
        (
            "f/1 and f/2 are unrelated",
            !weak_subsumes(&g("f(a())"), &g("f(a(), a())")),
        ),
        (
            "f/2 and f/1 are unrelated",
            !weak_subsumes(&g("f(a(), a())"), &g("f(a())")),
        ),
        (
            "labeled does not subsume a hole",
            !weak_subsumes(&g("a()"), &g("x")),
        ),
    ];
    for (label, ok) in facts {
        if !ok {
            bad.push(label.to_string());
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{SIMULATION_TRIPLES} triples, {chained} chained pairs checked for transitivity, {} instance facts, {} violations{}",
            facts.len(),
            bad.len(),
            bad.first().map_or(String::new(), |b| format!("; first: {b}"))
        ),
    }
}

fn entailment() -> Outcome {
    let mut bad: Vec<String> = Vec::new();
    for (kind, offset) in [
        ("x = y", 200_000u64),
        ("x ⊑ y ⊑ z", 300_000),
        ("x = f(ȳ)", 400_000),
    ] {
        let mismatches = (0..ENTAILMENT_RUNS)
            .into_par_iter()
            .filter(|&i| {
                let seed = offset + i;
                let (p, _) = generate(seed, &shape(seed, 6, 3, 10, false));
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let vars: Vec<BaseVar> = (0..6u32).map(BaseVar).collect();
                let pick = |rng: &mut ChaCha8Rng| Var::base(*vars[..3].choose(rng).unwrap());
                let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let mut phi = p.atoms.clone();
                let entailed = match kind {
                    "x = y" => {
                        phi.push(Atom::Eq(x.clone(), y.clone()).canonical());
                        Atom::Sub(x, y)
                    }
                    "x ⊑ y ⊑ z" => {
                        phi.push(Atom::Sub(x.clone(), y.clone()));
                        phi.push(Atom::Sub(y, z.clone()));
                        Atom::Sub(x, z)
                    }
                    _ => {
                        let f = Symbol::new("f", 2);
                        let args = vec![y, z];
                        phi.push(Atom::EqApp(x.clone(), f.clone(), args.clone()));
                        Atom::SubApp(x, f, args)
                    }
                };
                let before = verdict(&Store::from_atoms(phi.clone()));
                phi.push(entailed);
                before != verdict(&Store::from_atoms(phi))
            })
            .count();
        if mismatches > 0 {
            bad.push(format!("{kind}: {mismatches} verdict changes"));
        }
    }
    for (src, a, b) in [
        ("x <= y. y <= x", "x", "y"),
        ("x = f(u, v). x <= y. y = f(z, z)", "u", "v"),
    ] {
        let (p, n) = problem(src);
        let mut s = Solver::new();
        load(&mut s, p.atoms.clone()).unwrap();
        s.run();
        if same_class(&s, n.get(a).unwrap(), n.get(b).unwrap()) {
            bad.push(format!("{src}: {a} and {b} share a class"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("3 × {ENTAILMENT_RUNS} additions kept their verdicts; 2 non-entailments keep classes apart")
        } else {
            bad.join("; ")
        },
    }
}
