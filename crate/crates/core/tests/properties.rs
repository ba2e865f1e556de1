use proptest::prelude::*;

use wsc::constraints::Store;
use wsc::engine::solve;
use wsc::frontend::{generate, parse_problem, print_problem, GenConfig};
use wsc::terms::{
    graph_equal, instance_member, meet, parse_term, weak_subsumes, Node, Symbol, TermGraph,
};

fn symbols() -> [Symbol; 3] {
    [
        Symbol::new("a", 0),
        Symbol::new("f", 1),
        Symbol::new("g", 2),
    ]
}

/// Possibly cyclic graphs with up to five nodes, rooted at node 0.
fn graph() -> impl Strategy<Value = TermGraph> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec((0u8..4, 0usize..3, 0usize..n, 0usize..n), n).prop_map(
            move |layout| {
                let nodes = layout
                    .into_iter()
                    .map(|(kind, s, c0, c1)| {
                        if kind == 0 {
                            Node::Hole(["H", "K", "L"][s].into())
                        } else {
                            let f = symbols()[s].clone();
                            let kids = [c0, c1][..f.arity()].to_vec();
                            Node::App(f, kids)
                        }
                    })
                    .collect();
                TermGraph::from_nodes(nodes, 0).unwrap()
            },
        )
    })
}

/// Finite trees without holes.
fn ground() -> impl Strategy<Value = TermGraph> {
    let leaf = Just(TermGraph::app(Symbol::new("a", 0), vec![]));
    leaf.prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            inner
                .clone()
                .prop_map(|t| TermGraph::app(Symbol::new("f", 1), vec![t])),
            (inner.clone(), inner)
                .prop_map(|(l, r)| TermGraph::app(Symbol::new("g", 2), vec![l, r])),
        ]
    })
}

proptest! {
    #[test]
    fn subsumption_of_ground_trees_is_membership(s in graph(), g in ground()) {
        prop_assert_eq!(weak_subsumes(&s, &g), instance_member(&g, &s, 12));
    }

    #[test]
    fn subsumption_is_sound_for_ground_instances(s in graph(), t in graph(), g in ground()) {
        if weak_subsumes(&s, &t) && weak_subsumes(&t, &g) {
            prop_assert!(weak_subsumes(&s, &g));
        }
    }

    #[test]
    fn equal_graphs_subsume_each_other(s in graph()) {
        let copy = parse_term(&s.to_string()).unwrap();
        prop_assert!(graph_equal(&s, &copy), "{} vs {}", s, copy);
        prop_assert!(weak_subsumes(&s, &copy) && weak_subsumes(&copy, &s));
    }

    #[test]
    fn meet_is_intersection_on_ground_trees(s in graph(), t in graph(), g in ground()) {
        let both = weak_subsumes(&s, &g) && weak_subsumes(&t, &g);
        match meet(&s, &t) {
            Some(m) => {
                prop_assert!(weak_subsumes(&s, &m) && weak_subsumes(&t, &m));
                prop_assert_eq!(weak_subsumes(&m, &g), both);
            }
            None => prop_assert!(!both),
        }
    }

    #[test]
    fn problems_print_and_parse_back(seed in any::<u64>(), vars in 1usize..6, atoms in 1usize..10) {
        let cfg = GenConfig { vars, atoms, ..GenConfig::default() };
        let (p, names) = generate(seed, &cfg);
        let text = print_problem(&p, &names);
        let mut names = names;
        let back = parse_problem(&text, &mut names).unwrap();
        prop_assert_eq!(&back.atoms, &p.atoms);
        prop_assert_eq!(print_problem(&back, &names), text);
    }

    #[test]
    fn verdicts_ignore_atom_order(seed in any::<u64>(), vars in 1usize..6, atoms in 1usize..12) {
        let cfg = GenConfig { vars, atoms, ..GenConfig::default() };
        let (p, _) = generate(seed, &cfg);
        let first = solve(&p.store()).unwrap();
        prop_assert_eq!(solve(&p.store()).unwrap().store.sorted_atoms(), first.store.sorted_atoms());
        let reversed = Store::from_atoms(p.atoms.iter().rev().cloned());
        prop_assert_eq!(solve(&reversed).unwrap().verdict, first.verdict);
    }
}
