//! Property and invariant suites: exhaustive sweeps at small sizes for the
//! structural laws, plus randomized round-trip checks.

use std::collections::HashMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use tamari::calculus::{from_json, is_focused, to_json, validate};
use tamari::count::{dp_tables, intervals};
use tamari::focusing::{admit_times_r, count_focused, decide, identity_expansion, search_focused};
use tamari::lattice::{enumerate_trees, join_formula, leq_context, meet_formula};
use tamari::oracle::{
    count_intervals_oracle_limited, enumerate_contexts, join_oracle, meet_oracle,
};
use tamari::{Atom, Context, Derivation, Formula, Frontier, Sequent};

fn canonical_trees(size: usize) -> Vec<Formula> {
    enumerate_trees(&Frontier::canonical(size + 1)).unwrap()
}

#[test]
fn frontier_length_law_up_to_size_10() {
    let mut seen = 0u64;
    for n in 0..=10 {
        for tree in canonical_trees(n) {
            assert_eq!(tree.frontier().len(), tree.size() + 1);
            seen += 1;
        }
    }
    assert_eq!(seen, 23_714);
}

#[test]
fn right_action_matches_concatenated_product() {
    // product(G ++ D) = product(G).extend(D) for all context pairs over up
    // to 9 atoms.
    for atoms in 1..=9 {
        let frontier = Frontier::canonical(atoms);
        for cut in 1..=atoms {
            let left = Frontier::new(frontier.atoms()[..cut].to_vec());
            let right = Frontier::new(frontier.atoms()[cut..].to_vec());
            for gamma in enumerate_contexts(&left) {
                if gamma.is_empty() {
                    continue;
                }
                for delta in enumerate_contexts(&right) {
                    let whole: Context = gamma.iter().chain(delta.iter()).cloned().collect();
                    assert_eq!(
                        gamma.product().unwrap().extend(&delta),
                        whole.product().unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn frontier_invariance_of_the_decision() {
    // Collapsing every atom to one name never changes the answer, and
    // distinct frontiers never compare.
    let collapse = |tree: &Formula| {
        let sigma: HashMap<Atom, Atom> = tree
            .frontier()
            .atoms()
            .iter()
            .map(|a| (a.clone(), Atom::new("p").unwrap()))
            .collect();
        tree.relabel(&sigma)
    };
    for n in 0..=5 {
        let trees = canonical_trees(n);
        for a in &trees {
            for b in &trees {
                assert_eq!(decide(a, b), decide(&collapse(a), &collapse(b)));
            }
        }
    }
    assert!(!decide(&"p*q".parse().unwrap(), &"p*r".parse().unwrap()));
    assert!(!decide(&"p".parse().unwrap(), &"p*q".parse().unwrap()));
}

#[test]
fn frontier_preservation_inside_found_derivations() {
    fn check(d: &Derivation) {
        assert_eq!(
            d.conclusion.context.frontier(),
            d.conclusion.goal.frontier()
        );
        d.premises.iter().for_each(check);
    }
    for n in 0..=4 {
        let trees = canonical_trees(n);
        for a in &trees {
            for b in &trees {
                let s = Sequent::new(Context::from(vec![a.clone()]), b.clone());
                if let Some(d) = search_focused(&s).unwrap() {
                    check(&d);
                }
            }
        }
    }
}

#[test]
fn join_and_meet_universal_properties() {
    for n in 1..=5 {
        let trees = canonical_trees(n);
        for a in &trees {
            for b in &trees {
                let join = join_formula(a, b).unwrap();
                assert!(decide(a, &join) && decide(b, &join));
                let meet = meet_formula(a, b).unwrap();
                assert!(decide(&meet, a) && decide(&meet, b));
                for c in &trees {
                    if decide(a, c) && decide(b, c) {
                        assert!(decide(&join, c), "{join} is not least below {c}");
                    }
                    if decide(c, a) && decide(c, b) {
                        assert!(decide(c, &meet), "{meet} is not greatest above {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_bounds_are_unique_at_size_6() {
    // The exhaustive scans panic if minimal upper or maximal lower bounds
    // are ever non-unique; sweep them to witness the lattice property.
    let trees = canonical_trees(6);
    for a in &trees {
        for b in &trees {
            let join = join_oracle(a, b).unwrap();
            let meet = meet_oracle(a, b).unwrap();
            assert!(decide(a, &join) && decide(b, &join));
            assert!(decide(&meet, a) && decide(&meet, b));
        }
    }
}

#[test]
fn multicut_monotonicity() {
    // If G1 <= G2 and G2 |- A then G1 |- A.
    for atoms in 1..=4 {
        let frontier = Frontier::canonical(atoms);
        let contexts = enumerate_contexts(&frontier);
        let goals = enumerate_trees(&frontier).unwrap();
        for g2 in &contexts {
            if g2.is_empty() {
                continue;
            }
            for goal in &goals {
                let s2 = Sequent::new(g2.clone(), goal.clone());
                if search_focused(&s2).unwrap().is_none() {
                    continue;
                }
                for g1 in &contexts {
                    if !g1.is_empty() && leq_context(g1, g2) {
                        let s1 = Sequent::new(g1.clone(), goal.clone());
                        assert!(
                            search_focused(&s1).unwrap().is_some(),
                            "multicut fails: {g1} <= {g2} |- {goal}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn hasse_edges_are_the_reduction_of_the_decision_order() {
    use tamari::lattice::hasse;
    use tamari::oracle::transitive_reduction;
    for n in 1..=4 {
        let graph = hasse(&Frontier::canonical(n + 1)).unwrap();
        let reduced = transitive_reduction(&graph.nodes, decide);
        assert_eq!(graph.edges, reduced.edges);
    }
}

#[test]
fn atom_context_is_least() {
    for atoms in 1..=6 {
        let frontier = Frontier::canonical(atoms);
        let least: Context = frontier
            .atoms()
            .iter()
            .map(|a| Formula::Atom(a.clone()))
            .collect();
        for context in enumerate_contexts(&frontier) {
            if !context.is_empty() {
                assert!(leq_context(&least, &context));
            }
        }
    }
}

#[test]
fn per_length_focused_counts_match_the_tables() {
    // r[n][k] counts derivable (irreducible context of length k, goal of
    // size n) pairs over a fixed frontier, each contributing exactly one
    // focused derivation.
    let table = dp_tables(5);
    for n in 0..=5 {
        let frontier = Frontier::canonical(n + 1);
        let goals = enumerate_trees(&frontier).unwrap();
        let contexts = enumerate_contexts(&frontier);
        let mut by_length: HashMap<usize, u64> = HashMap::new();
        for context in &contexts {
            if context.is_empty() || !context.is_irreducible() {
                continue;
            }
            for goal in &goals {
                let s = Sequent::new(context.clone(), goal.clone());
                let count = count_focused(&s).unwrap();
                assert!(count <= 1);
                *by_length.entry(context.len()).or_default() += count;
            }
        }
        for k in 1..=n + 1 {
            assert_eq!(
                BigUint::from(by_length.get(&k).copied().unwrap_or(0)),
                table.r(n, k),
                "r[{n}][{k}] disagrees with brute force"
            );
        }
    }
}

#[test]
fn interval_counts_agree_with_the_oracle() {
    for n in 0..=5 {
        assert_eq!(
            intervals(n),
            BigUint::from(count_intervals_oracle_limited(n, 6).unwrap())
        );
    }
}

#[test]
fn admissible_right_rule_on_random_focused_pairs() {
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    let mut rng = StdRng::seed_from_u64(42);
    let tree = |rng: &mut StdRng| {
        let n = rng.random_range(0..=3);
        let trees = canonical_trees(n);
        trees[rng.random_range(0..trees.len())].clone()
    };
    for _ in 0..1000 {
        let a = tree(&mut rng);
        let b = tree(&mut rng);
        let left = identity_expansion(&a);
        let right = identity_expansion(&b);
        let combined = admit_times_r(&left, &right).unwrap();
        assert!(is_focused(&combined));
        let mut ctx = left.conclusion.context.items().to_vec();
        ctx.extend_from_slice(right.conclusion.context.items());
        assert_eq!(combined.conclusion.context.items(), ctx.as_slice());
        assert_eq!(
            combined.conclusion.goal,
            Formula::product(a.clone(), b.clone())
        );
        assert_eq!(
            Some(combined),
            search_focused(&Sequent::new(Context::from(ctx), Formula::product(a, b))).unwrap()
        );
    }
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(vec!["p", "q", "r", "s", "t"])
        .prop_map(|name| Formula::Atom(Atom::new(name).unwrap()));
    leaf.prop_recursive(6, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Formula::product(l, r))
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_round_trips(formula in formula_strategy()) {
        let printed = formula.to_string();
        prop_assert_eq!(printed.parse::<Formula>().unwrap(), formula);
    }

    #[test]
    fn mirror_is_a_frontier_reversing_involution(formula in formula_strategy()) {
        let mirrored = formula.mirror();
        prop_assert_eq!(mirrored.size(), formula.size());
        prop_assert_eq!(mirrored.frontier(), formula.frontier().reversed());
        prop_assert_eq!(mirrored.mirror(), formula);
    }

    #[test]
    fn decomposition_inverts_product_on_random_formulas(formula in formula_strategy()) {
        let decomposition = formula.max_decomposition();
        prop_assert!(decomposition.is_irreducible());
        prop_assert_eq!(decomposition.product().unwrap(), formula);
    }

    #[test]
    fn derivation_json_round_trips(formula in formula_strategy()) {
        let derivation = identity_expansion(&formula);
        let restored = from_json(to_json(&derivation).as_bytes()).unwrap();
        prop_assert_eq!(&restored, &derivation);
        prop_assert!(is_focused(&restored));
    }

    #[test]
    fn relabelling_keeps_derivations_valid(formula in formula_strategy()) {
        let derivation = identity_expansion(&formula);
        let sigma: HashMap<Atom, Atom> = formula
            .frontier()
            .atoms()
            .iter()
            .map(|a| (a.clone(), Atom::new("z").unwrap()))
            .collect();
        let relabelled = derivation.relabel(&sigma);
        prop_assert_eq!(validate(&relabelled), Ok(()));
        prop_assert!(is_focused(&relabelled));
    }

    #[test]
    fn reflexivity_and_extremes(formula in formula_strategy()) {
        prop_assert!(decide(&formula, &formula));
        let frontier = formula.frontier();
        let bottom = tamari::lattice::bottom(&frontier).unwrap();
        let top = tamari::lattice::top(&frontier).unwrap();
        prop_assert!(decide(&bottom, &formula));
        prop_assert!(decide(&formula, &top));
    }
}
