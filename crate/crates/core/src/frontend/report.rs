use serde::Serialize;

use crate::constraints::{Interner, Var};
use crate::engine::{Solver, Verdict};

use super::ProblemFile;

/// JSON form of a finished run.
///
/// ```json
/// {"name": "demo", "status": "sat", "steps": 3,
///  "classes": [{"members": ["x", "y"], "term": "f(u)"}],
///  "atoms": ["x = y", "y = f(u)"],
///  "trace": ["step 1: Elim on x = y => y = f(u)"]}
/// ```
///
/// `trace` is present only when tracing was on. On `unsat`, `classes` and
/// `atoms` are empty.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Report {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub status: Verdict,
    pub steps: usize,
    pub classes: Vec<ClassReport>,
    pub atoms: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassReport {
    pub members: Vec<String>,
    pub term: Option<String>,
}

impl Report {
    pub fn new(problem: &ProblemFile, solver: &Solver, names: &Interner, traced: bool) -> Self {
        let sat = solver.verdict() != Verdict::Unsat;
        let mut classes: Vec<ClassReport> = if sat {
            solver
                .classes()
                .into_iter()
                .map(|c| {
                    let mut members: Vec<String> = c
                        .members
                        .iter()
                        .map(|&m| names.name(m).to_string())
                        .collect();
                    members.sort();
                    ClassReport {
                        members,
                        term: c.term.map(|(f, args)| render_app(f.name(), &args, names)),
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        classes.sort_by(|a, b| a.members.cmp(&b.members));
        let mut atoms: Vec<String> = solver
            .store()
            .atoms()
            .map(|a| a.display(names).to_string())
            .collect();
        atoms.sort();
        Report {
            name: problem.name.clone(),
            status: solver.verdict(),
            steps: solver.steps(),
            classes,
            atoms,
            trace: traced.then(|| solver.trace().iter().map(|t| t.render(names)).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn render_app(f: &str, args: &[Var], names: &Interner) -> String {
    let args: Vec<String> = args.iter().map(|a| a.display(names).to_string()).collect();
    format!("{f}({})", args.join(", "))
}
