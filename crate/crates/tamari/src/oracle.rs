//! Brute-force ground truth, deliberately naive: the rotation-closure
//! order, exhaustive join/meet scans, interval counts, and transitive
//! reduction. Everything here is independent of the sequent engine so it
//! can referee it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Error;
use crate::lattice::{enumerate_trees, HasseGraph};
use crate::term::{Atom, Context, Formula, Frontier};

/// Default size cap for [`count_intervals_oracle`].
pub const DEFAULT_ORACLE_LIMIT: usize = 6;

/// All formulas reachable from `formula` by one right rotation
/// `(X*Y)*Z -> X*(Y*Z)` at a single position.
pub fn rotations(formula: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    if let Formula::Product(l, r) = formula {
        if let Formula::Product(x, y) = &**l {
            out.push(Formula::product(
                (**x).clone(),
                Formula::product((**y).clone(), (**r).clone()),
            ));
        }
        for rotated_left in rotations(l) {
            out.push(Formula::product(rotated_left, (**r).clone()));
        }
        for rotated_right in rotations(r) {
            out.push(Formula::product((**l).clone(), rotated_right));
        }
    }
    out
}

/// Reflexive-transitive reachability table over the rotation graph of one
/// frontier, with trees indexed in enumeration order. Built once per
/// frontier and cached; queries are lock-free bitset lookups afterwards.
struct ReachTable {
    index: HashMap<Formula, usize>,
    words: usize,
    reach: Vec<u64>,
}

impl ReachTable {
    fn build(frontier: &Frontier) -> ReachTable {
        let trees = enumerate_trees(frontier).expect("non-empty frontier");
        let n = trees.len();
        let index: HashMap<Formula, usize> = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let successors: Vec<Vec<usize>> = trees
            .iter()
            .map(|t| rotations(t).iter().map(|r| index[r]).collect())
            .collect();
        let words = n.div_ceil(64);
        let mut reach = vec![0u64; n * words];
        let mut stack = Vec::new();
        for start in 0..n {
            let row = &mut reach[start * words..(start + 1) * words];
            row[start / 64] |= 1 << (start % 64);
            stack.push(start);
            while let Some(i) = stack.pop() {
                for &j in &successors[i] {
                    if row[j / 64] & (1 << (j % 64)) == 0 {
                        row[j / 64] |= 1 << (j % 64);
                        stack.push(j);
                    }
                }
            }
        }
        ReachTable {
            index,
            words,
            reach,
        }
    }

    fn le(&self, from: usize, to: usize) -> bool {
        self.reach[from * self.words + to / 64] & (1 << (to % 64)) != 0
    }

    fn count(&self) -> u64 {
        self.reach.iter().map(|w| u64::from(w.count_ones())).sum()
    }
}

fn reach_table(frontier: &Frontier) -> Arc<ReachTable> {
    static CACHE: OnceLock<Mutex<HashMap<Frontier, Arc<ReachTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("oracle cache poisoned");
    guard
        .entry(frontier.clone())
        .or_insert_with(|| Arc::new(ReachTable::build(frontier)))
        .clone()
}

/// Breadth-first reachability through right rotations; false when the
/// frontiers differ.
pub fn leq_oracle(lower: &Formula, upper: &Formula) -> bool {
    let frontier = lower.frontier();
    if frontier != upper.frontier() {
        return false;
    }
    let table = reach_table(&frontier);
    table.le(table.index[lower], table.index[upper])
}

/// The unique minimal common upper bound, found by scanning every tree
/// over the frontier.
///
/// Panics if minimal upper bounds are not unique, which would falsify the
/// lattice property.
pub fn join_oracle(a: &Formula, b: &Formula) -> Result<Formula, Error> {
    extremal_bound(a, b, true)
}

/// The unique maximal common lower bound, by the dual scan.
pub fn meet_oracle(a: &Formula, b: &Formula) -> Result<Formula, Error> {
    extremal_bound(a, b, false)
}

fn extremal_bound(a: &Formula, b: &Formula, upper: bool) -> Result<Formula, Error> {
    let (fa, fb) = (a.frontier(), b.frontier());
    if fa != fb {
        return Err(Error::FrontierMismatch {
            left: fa.to_string(),
            right: fb.to_string(),
        });
    }
    let table = reach_table(&fa);
    let trees = enumerate_trees(&fa).expect("non-empty frontier");
    let (ia, ib) = (table.index[a], table.index[b]);
    let le = |x: usize, y: usize| {
        if upper {
            table.le(x, y)
        } else {
            table.le(y, x)
        }
    };
    let bounds: Vec<usize> = (0..trees.len())
        .filter(|&c| le(ia, c) && le(ib, c))
        .collect();
    let extremal: Vec<usize> = bounds
        .iter()
        .copied()
        .filter(|&c| bounds.iter().all(|&d| d == c || !le(d, c)))
        .collect();
    assert_eq!(
        extremal.len(),
        1,
        "lattice property violated: {} candidates for the {} of {a} and {b}",
        extremal.len(),
        if upper { "join" } else { "meet" },
    );
    Ok(trees[extremal[0]].clone())
}

/// Number of ordered pairs `A <= B` over all trees of size `n` with a
/// fixed frontier, counted by brute force. Guarded by
/// [`DEFAULT_ORACLE_LIMIT`].
pub fn count_intervals_oracle(n: usize) -> Result<u64, Error> {
    count_intervals_oracle_limited(n, DEFAULT_ORACLE_LIMIT)
}

pub fn count_intervals_oracle_limited(n: usize, limit: usize) -> Result<u64, Error> {
    if n > limit {
        return Err(Error::SizeLimit { size: n, limit });
    }
    Ok(reach_table(&Frontier::canonical(n + 1)).count())
}

/// Minimal edge set whose reflexive-transitive closure restricted to
/// `nodes` equals `leq`, which must be a partial order.
pub fn transitive_reduction(
    nodes: &[Formula],
    leq: impl Fn(&Formula, &Formula) -> bool,
) -> HasseGraph {
    let n = nodes.len();
    let mut closure = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            closure[i * n + j] = i != j && leq(&nodes[i], &nodes[j]);
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if closure[i * n + j] && !(0..n).any(|k| closure[i * n + k] && closure[k * n + j]) {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    HasseGraph {
        nodes: nodes.to_vec(),
        edges,
    }
}

/// All contexts with the given frontier: every ordered partition into
/// contiguous blocks, every tree over each block. The empty frontier
/// yields the empty context.
pub fn enumerate_contexts(frontier: &Frontier) -> Vec<Context> {
    fn go(atoms: &[Atom]) -> Vec<Vec<Formula>> {
        if atoms.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first_block in 1..=atoms.len() {
            let heads = enumerate_trees(&Frontier::new(atoms[..first_block].to_vec()))
                .expect("non-empty block");
            let tails = go(&atoms[first_block..]);
            for head in &heads {
                for tail in &tails {
                    let mut items = Vec::with_capacity(tail.len() + 1);
                    items.push(head.clone());
                    items.extend(tail.iter().cloned());
                    out.push(items);
                }
            }
        }
        out
    }
    go(frontier.atoms())
        .into_iter()
        .map(Context::from)
        .collect()
}
