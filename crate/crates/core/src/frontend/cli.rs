use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::constraints::{AtomKind, Store};
use crate::engine::{load, solve, Solver, Verdict};
use crate::oracles::{
    check_witness, naive_solve, rational_unify, structure_probe, witness_search_with, NaiveOutcome,
    SearchConfig, SearchOutcome,
};

use super::{corpus, generate, parse, print_problem, GenConfig, Report};

pub const EXIT_SAT: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;

const NAIVE_BUDGET: usize = 200;
const PROBE_DEPTH: usize = 8;
const SEARCH_MAX_VARS: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "wsc",
    version,
    about = "Solve equations and weak subsumption constraints over rational trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve a constraint file. Exits 0 when satisfiable, 1 when not.
    Solve {
        file: PathBuf,
        /// Print the result as JSON.
        #[arg(long)]
        json: bool,
        /// Include every rule firing.
        #[arg(long)]
        trace: bool,
        /// Cross-check the verdict with the reference procedures; exits 3
        /// on disagreement.
        #[arg(long)]
        oracle_check: bool,
        /// Assert atoms one at a time instead of loading them all first.
        #[arg(long)]
        incremental: bool,
    },
    /// Print seeded random instances, each labeled with its verdict.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        vars: usize,
        #[arg(long, default_value_t = 3)]
        symbols: usize,
        #[arg(long, default_value_t = 8)]
        atoms: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
        /// Only equations.
        #[arg(long)]
        sub_free: bool,
        /// Number of instances, with seeds `seed`, `seed + 1`, ...
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Solve the bundled examples and compare with their expected verdicts.
    Corpus,
}

/// Runs the command line. Returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_SAT };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve {
            file,
            json,
            trace,
            oracle_check,
            incremental,
        } => run_solve(&file, json, trace, oracle_check, incremental, out, err),
        Command::Random {
            seed,
            vars,
            symbols,
            atoms,
            max_arity,
            sub_free,
            count,
        } => {
            let cfg = GenConfig {
                vars,
                symbols,
                max_arity,
                atoms,
                sub_free,
            };
            run_random(seed, count, &cfg, out)
        }
        Command::Corpus => run_corpus(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Unsat => EXIT_UNSAT,
        _ => EXIT_SAT,
    }
}

fn run_solve(
    file: &PathBuf,
    json: bool,
    trace: bool,
    oracle_check: bool,
    incremental: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    let (problem, names) = parse(&text).map_err(|e| format!("{}:{e}", file.display()))?;
    let mut solver = Solver::new().with_trace(trace);
    let verdict = if incremental {
        let mut v = Verdict::Sat;
        for a in &problem.atoms {
            v = solver.assert_atom(a.clone()).map_err(|e| e.to_string())?;
        }
        v
    } else {
        load(&mut solver, problem.atoms.iter().cloned()).map_err(|e| e.to_string())?;
        solver.run()
    };
    let report = Report::new(&problem, &solver, &names, trace);
    if json {
        writeln!(out, "{}", report.to_json()).map_err(|e| e.to_string())?;
    } else {
        let mut text = String::new();
        for line in report.trace.iter().flatten() {
            text.push_str(&format!("{line}\n"));
        }
        text.push_str(&format!("{verdict}\nsteps: {}\n", report.steps));
        for a in &report.atoms {
            text.push_str(&format!("  {a}\n"));
        }
        write!(out, "{text}").map_err(|e| e.to_string())?;
    }
    if oracle_check {
        let (notes, agree) = cross_check(&problem.store(), verdict);
        for n in notes {
            let _ = writeln!(err, "oracle: {n}");
        }
        if !agree {
            return Ok(EXIT_DISAGREE);
        }
    }
    Ok(exit_code(verdict))
}

/// Runs every applicable reference procedure. Returns a note per oracle
/// and whether all of them are consistent with `verdict`.
fn cross_check(phi: &Store, verdict: Verdict) -> (Vec<String>, bool) {
    let mut notes = Vec::new();
    let mut agree = true;
    let unsat = verdict == Verdict::Unsat;

    match naive_solve(phi, NAIVE_BUDGET) {
        Ok(NaiveOutcome::Unsat { descends }) => {
            agree &= unsat;
            notes.push(format!("naive: unsat after {descends} descents"));
        }
        Ok(NaiveOutcome::Exhausted { fixpoint, .. }) => notes.push(if fixpoint {
            "naive: no contradiction at fixpoint".to_string()
        } else {
            format!("naive: no contradiction within {NAIVE_BUDGET} descents")
        }),
        Err(e) => notes.push(format!("naive: skipped ({e})")),
    }

    let sub_free = phi
        .atoms()
        .all(|a| matches!(a.kind(), AtomKind::Eq | AtomKind::EqApp));
    if sub_free {
        if let Ok(u) = rational_unify(phi) {
            agree &= u.is_clash() == unsat;
            notes.push(format!(
                "unification: {}",
                if u.is_clash() { "unsat" } else { "sat" }
            ));
        }
    }

    match structure_probe(phi, PROBE_DEPTH) {
        Ok(p) if p.is_clash() => {
            agree &= unsat;
            notes.push("probe: constructor conflict".to_string());
        }
        Ok(_) => notes.push(format!("probe: no conflict up to depth {PROBE_DEPTH}")),
        Err(e) => notes.push(format!("probe: skipped ({e})")),
    }

    if phi.comp_vars().len() <= SEARCH_MAX_VARS {
        let cfg = SearchConfig {
            cap: 200_000,
            ..SearchConfig::default()
        };
        match witness_search_with(phi, &cfg) {
            Ok(SearchOutcome::Found(w)) => {
                agree &= !unsat && check_witness(&w, phi);
                notes.push("search: witness found".to_string());
            }
            Ok(SearchOutcome::NotInSpace) => notes.push("search: no witness in space".to_string()),
            Ok(SearchOutcome::CapExceeded) => notes.push("search: cap exceeded".to_string()),
            Err(e) => notes.push(format!("search: skipped ({e})")),
        }
    } else {
        notes.push(format!(
            "search: skipped (more than {SEARCH_MAX_VARS} variables)"
        ));
    }

    if !agree {
        notes.push(format!("disagreement with engine verdict {verdict}"));
    }
    (notes, agree)
}

fn run_random(seed: u64, count: u64, cfg: &GenConfig, out: &mut dyn Write) -> Result<i32, String> {
    let texts: Vec<String> = (seed..seed.saturating_add(count))
        .into_par_iter()
        .map(|s| {
            let (mut problem, names) = generate(s, cfg);
            let solved = solve(&problem.store()).expect("generated atoms are base-only");
            problem.expect = Some(solved.verdict);
            print_problem(&problem, &names)
        })
        .collect();
    write!(out, "{}", texts.join("\n")).map_err(|e| e.to_string())?;
    Ok(EXIT_SAT)
}

fn run_corpus(out: &mut dyn Write) -> Result<i32, String> {
    let mut failures = 0;
    for entry in corpus() {
        let (problem, _) = parse(entry.text).map_err(|e| format!("{}:{e}", entry.file))?;
        let solved = solve(&problem.store()).map_err(|e| e.to_string())?;
        let ok = problem.expect == Some(solved.verdict);
        if !ok {
            failures += 1;
        }
        let expect = problem.expect.map_or("none".to_string(), |v| v.to_string());
        writeln!(
            out,
            "{} {:<26} expected {:<5} got {:<5} ({} steps)",
            if ok { "ok  " } else { "FAIL" },
            entry.file,
            expect,
            solved.verdict,
            solved.steps
        )
        .map_err(|e| e.to_string())?;
    }
    Ok(if failures == 0 { EXIT_SAT } else { EXIT_UNSAT })
}
