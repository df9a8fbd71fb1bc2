//! The substitution order on contexts, composition pushouts, join and meet
//! computation, extremal elements, tree enumeration, and Hasse diagrams.
//!
//! Joins are computed recursively: reduce a join of formulas to a join of
//! their maximal decompositions, push the underlying compositions out to
//! their finest common coarsening, and recurse per block. The recursion
//! shrinks because maximal decompositions over a shared frontier always
//! split off the same first atom. Meets go through [`Formula::mirror`],
//! which swaps the order with its dual.

use std::collections::HashMap;
use std::fmt;

use crate::error::Error;
use crate::focusing::derivable;
use crate::oracle;
use crate::stack;
use crate::term::{Atom, Context, Formula, Frontier};

/// Largest frontier [`hasse`] accepts by default (1430 trees).
pub const DEFAULT_HASSE_LIMIT: usize = 9;

/// An ordered partition of a frontier into non-empty contiguous blocks,
/// stored as the list of block lengths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    blocks: Vec<usize>,
}

impl Composition {
    /// Panics if any block is empty.
    pub fn new(blocks: Vec<usize>) -> Composition {
        assert!(
            blocks.iter().all(|&b| b > 0),
            "composition blocks must be positive"
        );
        Composition { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Sum of the block lengths.
    pub fn total(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Interior boundary positions, strictly between 0 and the total. Two
    /// compositions of the same total are equal iff their boundary sets
    /// are; fewer boundaries means a coarser composition.
    pub fn boundaries(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len().saturating_sub(1));
        let mut acc = 0;
        for &b in &self.blocks[..self.blocks.len().saturating_sub(1)] {
            acc += b;
            out.push(acc);
        }
        out
    }

    fn from_boundaries(total: usize, boundaries: &[usize]) -> Composition {
        if total == 0 {
            return Composition { blocks: Vec::new() };
        }
        let mut blocks = Vec::with_capacity(boundaries.len() + 1);
        let mut prev = 0;
        for &b in boundaries {
            blocks.push(b - prev);
            prev = b;
        }
        blocks.push(total - prev);
        Composition { blocks }
    }

    /// True when this composition refines `coarser`: every boundary of
    /// `coarser` is also a boundary here.
    pub fn refines(&self, coarser: &Composition) -> bool {
        if self.total() != coarser.total() {
            return false;
        }
        let fine = self.boundaries();
        coarser
            .boundaries()
            .iter()
            .all(|b| fine.binary_search(b).is_ok())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        let mut first = true;
        for b in &self.blocks {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// All trees over a fixed frontier together with the covering edges, as
/// indices into `nodes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseGraph {
    pub nodes: Vec<Formula>,
    /// Pairs `(lower, upper)` of node indices, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// Decides the substitution order on contexts: the lower context must
/// split into consecutive non-empty segments, one per formula of the upper
/// context, with each segment deriving its formula. The segment lengths
/// are forced by frontiers, so no search over partitions is needed.
pub fn leq_context(lower: &Context, upper: &Context) -> bool {
    if lower.frontier() != upper.frontier() {
        return false;
    }
    let items = lower.items();
    let mut start = 0;
    for target in upper.iter() {
        let want = target.size() + 1;
        let mut atoms = 0;
        let mut end = start;
        while atoms < want {
            match items.get(end) {
                Some(f) => {
                    atoms += f.size() + 1;
                    end += 1;
                }
                None => return false,
            }
        }
        if atoms != want {
            return false;
        }
        if !derivable(&items[start..end], target) {
            return false;
        }
        start = end;
    }
    start == items.len()
}

/// The composition recording each formula's frontier length.
pub fn composition_of(context: &Context) -> Composition {
    Composition {
        blocks: context.iter().map(|f| f.size() + 1).collect(),
    }
}

/// Pushout of two compositions of the same frontier: returns `(b1, b2, j)`
/// where `j` is the finest common coarsening (its boundaries are the
/// intersection of the input boundary sets) and `b1`, `b2` are the
/// mediating compositions grouping the blocks of each input into the
/// blocks of `j`.
pub fn pushout(
    first: &Composition,
    second: &Composition,
) -> Result<(Composition, Composition, Composition), Error> {
    if first.total() != second.total() {
        return Err(Error::FrontierMismatch {
            left: first.to_string(),
            right: second.to_string(),
        });
    }
    let fine1 = first.boundaries();
    let fine2 = second.boundaries();
    let common: Vec<usize> = fine1
        .iter()
        .copied()
        .filter(|b| fine2.binary_search(b).is_ok())
        .collect();
    let join = Composition::from_boundaries(first.total(), &common);
    Ok((mediator(first, &join), mediator(second, &join), join))
}

/// Groups the blocks of `fine` into the blocks of `coarse`; `coarse` must
/// coarsen `fine`.
fn mediator(fine: &Composition, coarse: &Composition) -> Composition {
    let mut out = Vec::with_capacity(coarse.len());
    let mut it = fine.blocks.iter();
    for &want in &coarse.blocks {
        let mut atoms = 0;
        let mut count = 0;
        while atoms < want {
            atoms += it.next().expect("coarse composition must coarsen fine");
            count += 1;
        }
        debug_assert_eq!(atoms, want);
        out.push(count);
    }
    Composition { blocks: out }
}

/// Least upper bound of two formulas with the same frontier.
pub fn join_formula(a: &Formula, b: &Formula) -> Result<Formula, Error> {
    check_frontiers(a, b)?;
    Ok(stack::with_headroom(a.size() + 2, || join_rec(a, b)))
}

/// Greatest lower bound, computed by mirroring the join of the mirrors.
pub fn meet_formula(a: &Formula, b: &Formula) -> Result<Formula, Error> {
    check_frontiers(a, b)?;
    Ok(stack::with_headroom(a.size() + 2, || {
        join_rec(&a.mirror(), &b.mirror()).mirror()
    }))
}

fn check_frontiers(a: &Formula, b: &Formula) -> Result<(), Error> {
    let (fa, fb) = (a.frontier(), b.frontier());
    if fa != fb {
        return Err(Error::FrontierMismatch {
            left: fa.to_string(),
            right: fb.to_string(),
        });
    }
    Ok(())
}

fn join_rec(a: &Formula, b: &Formula) -> Formula {
    if a.is_atom() {
        debug_assert_eq!(a, b);
        return a.clone();
    }
    let joined = join_context_rec(&a.max_decomposition(), &b.max_decomposition());
    // Maximal decompositions over a shared frontier both start with the
    // same lone atom, so the pushout keeps that boundary and the recursion
    // strictly shrinks.
    assert!(
        joined.len() >= 2,
        "pushout of maximal decompositions failed to split"
    );
    joined.product().expect("joined context is non-empty")
}

/// Blockwise join of two contexts with the same frontier: group both by
/// the pushout of their compositions, then join the block products.
pub fn join_context(first: &Context, second: &Context) -> Result<Context, Error> {
    let (f1, f2) = (first.frontier(), second.frontier());
    if f1 != f2 {
        return Err(Error::FrontierMismatch {
            left: f1.to_string(),
            right: f2.to_string(),
        });
    }
    Ok(stack::with_headroom(f1.len() + 2, || {
        join_context_rec(first, second)
    }))
}

fn join_context_rec(first: &Context, second: &Context) -> Context {
    let (group1, group2, join) = pushout(&composition_of(first), &composition_of(second))
        .expect("contexts share a frontier");
    let mut out = Vec::with_capacity(join.len());
    let mut items1 = first.items();
    let mut items2 = second.items();
    for (&take1, &take2) in group1.blocks().iter().zip(group2.blocks()) {
        let (seg1, rest1) = items1.split_at(take1);
        let (seg2, rest2) = items2.split_at(take2);
        items1 = rest1;
        items2 = rest2;
        let left = Context::from(seg1.to_vec())
            .product()
            .expect("non-empty block");
        let right = Context::from(seg2.to_vec())
            .product()
            .expect("non-empty block");
        out.push(join_rec(&left, &right));
    }
    Context::from(out)
}

/// The left comb over the frontier: the least formula.
pub fn bottom(frontier: &Frontier) -> Result<Formula, Error> {
    let mut atoms = frontier.atoms().iter();
    let first = atoms.next().ok_or(Error::EmptyFrontier)?;
    Ok(atoms.fold(Formula::Atom(first.clone()), |acc, a| {
        Formula::product(acc, Formula::Atom(a.clone()))
    }))
}

/// The right comb over the frontier: the greatest formula.
pub fn top(frontier: &Frontier) -> Result<Formula, Error> {
    let atoms = frontier.atoms();
    let last = atoms.last().ok_or(Error::EmptyFrontier)?;
    Ok(atoms[..atoms.len() - 1]
        .iter()
        .rev()
        .fold(Formula::Atom(last.clone()), |acc, a| {
            Formula::product(Formula::Atom(a.clone()), acc)
        }))
}

/// All trees over the frontier, in a fixed order: by ascending left
/// subtree size, recursively.
pub fn enumerate_trees(frontier: &Frontier) -> Result<Vec<Formula>, Error> {
    if frontier.is_empty() {
        return Err(Error::EmptyFrontier);
    }
    Ok(enumerate_range(frontier.atoms()))
}

fn enumerate_range(atoms: &[Atom]) -> Vec<Formula> {
    if atoms.len() == 1 {
        return vec![Formula::Atom(atoms[0].clone())];
    }
    let mut out = Vec::new();
    for split in 1..atoms.len() {
        let lefts = enumerate_range(&atoms[..split]);
        let rights = enumerate_range(&atoms[split..]);
        for l in &lefts {
            for r in &rights {
                out.push(Formula::product(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Hasse diagram over the frontier with the default size limit.
pub fn hasse(frontier: &Frontier) -> Result<HasseGraph, Error> {
    hasse_limited(frontier, DEFAULT_HASSE_LIMIT)
}

/// Hasse diagram over the frontier: nodes in enumeration order, edges the
/// single right-rotation steps. Covering edges coincide with rotations;
/// the test suites verify this against the transitive reduction of the
/// decision procedure rather than assuming it.
pub fn hasse_limited(frontier: &Frontier, limit: usize) -> Result<HasseGraph, Error> {
    if frontier.is_empty() {
        return Err(Error::EmptyFrontier);
    }
    if frontier.len() > limit {
        return Err(Error::SizeLimit {
            size: frontier.len(),
            limit,
        });
    }
    let nodes = enumerate_trees(frontier)?;
    let index: HashMap<&Formula, usize> = nodes.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut edges = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        for rotated in oracle::rotations(node) {
            let j = index[&rotated];
            edges.push((i, j));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(HasseGraph { nodes, edges })
}

/// Renders the graph as a DOT digraph, nodes labelled by the formula
/// printer, one edge per covering pair, byte-stable across runs.
pub fn to_dot(graph: &HasseGraph) -> String {
    if graph.nodes.is_empty() {
        return "digraph { }\n".to_owned();
    }
    let mut out = String::from("digraph {\n");
    for (i, node) in graph.nodes.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{node}\"];\n"));
    }
    for (lower, upper) in &graph.edges {
        out.push_str(&format!("  n{lower} -> n{upper};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::focusing::decide;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn ctx(items: &[&str]) -> Context {
        items.iter().map(|s| f(s)).collect()
    }

    fn comp(blocks: &[usize]) -> Composition {
        Composition::new(blocks.to_vec())
    }

    #[test]
    fn leq_context_examples() {
        assert!(leq_context(&ctx(&["p", "q", "r"]), &ctx(&["p*q", "r"])));
        assert!(leq_context(&Context::default(), &Context::default()));
        // The frontier blocks line up but [p*q] does not derive p.
        assert!(!leq_context(&ctx(&["p*q", "r"]), &ctx(&["p", "q*r"])));
        assert!(!leq_context(&ctx(&["p"]), &ctx(&["q"])));
        assert!(!leq_context(&ctx(&["p"]), &Context::default()));
    }

    #[test]
    fn composition_of_examples() {
        assert_eq!(composition_of(&ctx(&["p*q", "r"])), comp(&[2, 1]));
        assert_eq!(composition_of(&ctx(&["p", "q", "r"])), comp(&[1, 1, 1]));
        assert_eq!(composition_of(&Context::default()), comp(&[]));
    }

    #[test]
    fn pushout_examples() {
        let (b1, b2, j) = pushout(&comp(&[1, 2]), &comp(&[2, 1])).unwrap();
        assert_eq!(j, comp(&[3]));
        assert_eq!(b1, comp(&[2]));
        assert_eq!(b2, comp(&[2]));

        let alpha = comp(&[2, 1, 3]);
        let (b1, b2, j) = pushout(&alpha, &alpha).unwrap();
        assert_eq!(j, alpha);
        assert_eq!(b1, comp(&[1, 1, 1]));
        assert_eq!(b2, comp(&[1, 1, 1]));

        let (_, _, j) = pushout(&comp(&[1, 1, 1]), &comp(&[3])).unwrap();
        assert_eq!(j, comp(&[3]));

        assert!(matches!(
            pushout(&comp(&[1]), &comp(&[2])),
            Err(Error::FrontierMismatch { .. })
        ));
    }

    #[test]
    fn pushout_matches_exhaustive_coarsening_search() {
        // Over 4 atoms, compare against a scan of all common coarsenings.
        let all: Vec<Composition> = (0u32..8)
            .map(|bits| {
                let bounds: Vec<usize> = (1..4).filter(|i| bits & (1 << (i - 1)) != 0).collect();
                Composition::from_boundaries(4, &bounds)
            })
            .collect();
        for a in &all {
            for b in &all {
                let (_, _, j) = pushout(a, b).unwrap();
                let mut best: Option<&Composition> = None;
                for c in &all {
                    if a.refines(c) && b.refines(c) && best.is_none_or(|cur| c.refines(cur)) {
                        best = Some(c);
                    }
                }
                assert_eq!(&j, best.unwrap());
            }
        }
    }

    #[test]
    fn join_formula_worked_example() {
        let a = f("p*((q*(r*((s*t)*u)))*v)");
        let b = f("(p*(q*r))*((s*t)*(u*v))");
        let joined = join_formula(&a, &b).unwrap();
        assert_eq!(joined, f("p*(q*(r*((s*t)*(u*v))))"));
    }

    #[test]
    fn join_formula_simple_cases() {
        let a = f("(p*q)*(r*s)");
        assert_eq!(join_formula(&a, &a).unwrap(), a);
        assert_eq!(
            join_formula(&f("(p*q)*r"), &f("p*(q*r)")).unwrap(),
            f("p*(q*r)")
        );
        assert!(matches!(
            join_formula(&f("p*q"), &f("q*p")),
            Err(Error::FrontierMismatch { .. })
        ));
    }

    #[test]
    fn join_context_examples() {
        assert_eq!(
            join_context(&ctx(&["p", "q", "r"]), &ctx(&["p", "q", "r"])).unwrap(),
            ctx(&["p", "q", "r"])
        );
        // Relatively prime compositions collapse to one block.
        assert_eq!(
            join_context(&ctx(&["p*q", "r"]), &ctx(&["p", "q*r"])).unwrap(),
            ctx(&["p*(q*r)"])
        );
        // Aligned compositions join per block.
        assert_eq!(
            join_context(&ctx(&["p", "(q*r)*s"]), &ctx(&["p", "q*(r*s)"])).unwrap(),
            ctx(&["p", "q*(r*s)"])
        );
        assert_eq!(
            join_context(&Context::default(), &Context::default()).unwrap(),
            Context::default()
        );
    }

    #[test]
    fn meet_formula_examples() {
        assert_eq!(
            meet_formula(&f("(p*q)*r"), &f("p*(q*r)")).unwrap(),
            f("(p*q)*r")
        );
        let a = f("p*((q*r)*s)");
        assert_eq!(meet_formula(&a, &a).unwrap(), a);
    }

    #[test]
    fn bottom_and_top_examples() {
        let fr = Frontier::canonical(4);
        let named: Frontier = ["p", "q", "r", "s"]
            .iter()
            .map(|n| Atom::new(n).unwrap())
            .collect::<Vec<_>>()
            .into();
        assert_eq!(bottom(&named).unwrap(), f("((p*q)*r)*s"));
        assert_eq!(top(&named).unwrap(), f("p*(q*(r*s))"));
        assert_eq!(bottom(&Frontier::canonical(1)).unwrap(), f("a1"));
        assert_eq!(bottom(&fr).unwrap(), f("((a1*a2)*a3)*a4"));
        assert!(matches!(
            bottom(&Frontier::default()),
            Err(Error::EmptyFrontier)
        ));
        // Everything sits between bottom and top.
        for tree in enumerate_trees(&fr).unwrap() {
            assert!(decide(&bottom(&fr).unwrap(), &tree));
            assert!(decide(&tree, &top(&fr).unwrap()));
        }
    }

    #[test]
    fn enumerate_trees_counts_catalan() {
        for (n_atoms, expect) in [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14), (6, 42)] {
            let trees = enumerate_trees(&Frontier::canonical(n_atoms)).unwrap();
            assert_eq!(trees.len(), expect);
            // Enumeration order is deterministic and duplicate-free.
            let mut seen = trees.clone();
            seen.sort_by_key(|t| t.to_string());
            seen.dedup();
            assert_eq!(seen.len(), expect);
        }
    }

    #[test]
    fn hasse_goldens() {
        let t3 = hasse(&Frontier::canonical(4)).unwrap();
        assert_eq!(t3.nodes.len(), 5);
        assert_eq!(t3.edges.len(), 5);

        let t4 = hasse(&Frontier::canonical(5)).unwrap();
        assert_eq!(t4.nodes.len(), 14);
        assert_eq!(t4.edges.len(), 21);

        let t1 = hasse(&Frontier::canonical(2)).unwrap();
        assert_eq!(t1.nodes.len(), 1);
        assert!(t1.edges.is_empty());

        assert!(matches!(
            hasse(&Frontier::canonical(10)),
            Err(Error::SizeLimit { size: 10, limit: 9 })
        ));
        assert!(hasse_limited(&Frontier::canonical(10), 10).is_ok());
    }

    #[test]
    fn hasse_edges_point_upward() {
        let g = hasse(&Frontier::canonical(5)).unwrap();
        for &(lo, hi) in &g.edges {
            assert_ne!(lo, hi);
            assert!(decide(&g.nodes[lo], &g.nodes[hi]));
        }
    }

    #[test]
    fn dot_output() {
        let t3 = hasse(&Frontier::canonical(4)).unwrap();
        let dot = to_dot(&t3);
        assert_eq!(dot.lines().filter(|l| l.contains("label=")).count(), 5);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 5);
        assert_eq!(dot, to_dot(&t3));

        let empty = HasseGraph {
            nodes: vec![],
            edges: vec![],
        };
        assert_eq!(to_dot(&empty), "digraph { }\n");
    }

    #[test]
    fn composition_refinement_is_monotone() {
        let fr = Frontier::canonical(4);
        let contexts = oracle::enumerate_contexts(&fr);
        for g in &contexts {
            for t in &contexts {
                if leq_context(g, t) {
                    assert!(composition_of(g).refines(&composition_of(t)));
                }
            }
        }
    }
}
