//! The brute-force oracle as a referee: rotation closure vs the focused
//! decision procedure, exhaustive bounds vs the recursive join, and
//! rotation edges vs the transitive reduction.
//!
//! ```bash
//! cargo run -p tamari --example oracle_referee
//! ```

use tamari::focusing::decide;
use tamari::lattice::{enumerate_trees, hasse, join_formula};
use tamari::oracle::{join_oracle, leq_oracle, rotations, transitive_reduction};
use tamari::term::Frontier;

fn main() {
    let size = 4;
    let frontier = Frontier::canonical(size + 1);
    let trees = enumerate_trees(&frontier).expect("non-empty frontier");
    println!("{} trees of size {size}", trees.len());

    let mut intervals = 0u32;
    for a in &trees {
        for b in &trees {
            let fast = decide(a, b);
            let brute = leq_oracle(a, b);
            assert_eq!(fast, brute, "decision mismatch on {a} vs {b}");
            intervals += u32::from(fast);
            assert_eq!(
                join_formula(a, b).unwrap(),
                join_oracle(a, b).unwrap(),
                "join mismatch on {a} vs {b}"
            );
        }
    }
    println!("decision procedure = rotation closure on all pairs");
    println!("recursive join = exhaustive minimal upper bound on all pairs");
    println!("{intervals} intervals (expected 68)");

    let graph = hasse(&frontier).expect("within limit");
    let reduced = transitive_reduction(&graph.nodes, leq_oracle);
    println!(
        "rotation edges = transitive reduction: {} ({} edges)",
        graph.edges == reduced.edges,
        graph.edges.len()
    );

    let comb = &trees[trees.len() - 1];
    println!();
    println!("single right rotations of {comb}:");
    for r in rotations(comb) {
        println!("  -> {r}");
    }
}
