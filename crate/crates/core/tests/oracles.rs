use wsc::constraints::Interner;
use wsc::engine::{solve, Verdict};
use wsc::frontend::{corpus, parse, parse_problem};
use wsc::oracles::{
    check_witness, naive_solve, parse_witness, structure_probe, witness_search, SearchOutcome,
};

#[test]
fn hand_built_witness_for_pair_example() {
    let mut names = Interner::new();
    let src = "p = pair(u, v). v = cons(x, u). y <= u. y <= v. x = f(y, z)";
    let phi = parse_problem(src, &mut names).unwrap().store();
    let w = parse_witness(
        "y := rec Y. cons(f(Y, Z), W)\n\
         z := Z\n\
         x := f(rec Y. cons(f(Y, Z), W), Z)\n\
         u := U\n\
         v := cons(f(rec Y. cons(f(Y, Z), W), Z), U)\n\
         p := pair(U, cons(f(rec Y. cons(f(Y, Z), W), Z), U))",
        &mut names,
    )
    .unwrap();
    assert!(check_witness(&w, &phi));
    let mut broken = w.clone();
    let y = names.get("y").unwrap();
    broken.insert(y, wsc::terms::parse_term("a()").unwrap());
    assert!(!check_witness(&broken, &phi));
    assert_eq!(solve(&phi).unwrap().verdict, Verdict::Sat);
}

#[test]
fn corpus_verdicts_match_oracles() {
    for entry in corpus() {
        let (p, _) = parse(entry.text).unwrap();
        let phi = p.store();
        let unsat = p.expect == Some(Verdict::Unsat);
        assert_eq!(
            structure_probe(&phi, 8).unwrap().is_clash(),
            unsat,
            "{}",
            entry.file
        );
        if unsat {
            assert!(naive_solve(&phi, 200).unwrap().is_unsat(), "{}", entry.file);
        }
        if phi.comp_vars().len() <= 4 {
            if let SearchOutcome::Found(w) = witness_search(&phi, 2, 1).unwrap() {
                assert!(!unsat, "{}", entry.file);
                assert!(check_witness(&w, &phi));
            }
        }
    }
}
