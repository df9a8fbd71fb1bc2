//! Focused proof search and the focusing normalizer.
//!
//! A focused derivation uses only `L`, the restricted right rule whose left
//! premise context is irreducible, and identity on atoms. Every derivable
//! sequent has exactly one focused derivation, which makes focused search a
//! decision procedure for the Tamari order: `A <= B` iff `[A] ⊢ B` has a
//! focused derivation.
//!
//! [`search_focused`] finds that derivation deterministically: on a
//! left-inverting sequent the `L` rule is forced; on a right-focusing
//! sequent the context split is pinned down by frontier lengths; an atomic
//! sequent closes iff it is an atomic identity. [`count_focused`] ignores
//! the frontier shortcut and backtracks over every split, providing an
//! independent witness that the count is at most one.
//!
//! The admissibility transformations ([`identity_expansion`],
//! [`admit_cut`], [`admit_times_r`]) rewrite focused derivations without
//! leaving the focused fragment; [`focus`] applies them premises-first to
//! normalize an arbitrary valid derivation.

use crate::calculus::{is_focused, validate, Derivation, Rule, Sequent};
use crate::error::Error;
use crate::stack;
use crate::term::{frontier_of_slice, Formula};

/// Finds the unique focused derivation of the sequent, or `None` if the
/// sequent is not derivable. Fails only on an empty context.
pub fn search_focused(sequent: &Sequent) -> Result<Option<Derivation>, Error> {
    if sequent.context.is_empty() {
        return Err(Error::EmptyContext);
    }
    Ok(stack::with_headroom(sequent.total_size() + 1, || {
        search(sequent.context.items(), &sequent.goal)
    }))
}

/// Decides `A <= B` in the Tamari order without materializing the
/// derivation.
pub fn decide(lower: &Formula, upper: &Formula) -> bool {
    stack::with_headroom(lower.size() + upper.size() + 1, || {
        check_sequent(std::slice::from_ref(lower), upper)
    })
}

/// Derivability check for non-empty contexts, shared with the lattice
/// operations.
pub(crate) fn derivable(context: &[Formula], goal: &Formula) -> bool {
    debug_assert!(!context.is_empty());
    check_sequent(context, goal)
}

fn search(ctx: &[Formula], goal: &Formula) -> Option<Derivation> {
    match &ctx[0] {
        Formula::Product(a, b) => {
            // Left-inverting: the L rule is forced.
            let mut items = Vec::with_capacity(ctx.len() + 1);
            items.push((**a).clone());
            items.push((**b).clone());
            items.extend_from_slice(&ctx[1..]);
            let premise = search(&items, goal)?;
            Some(Derivation::times_l(premise))
        }
        Formula::Atom(_) => match goal {
            Formula::Atom(_) => {
                // Atomic: closes iff the sequent is an atomic identity.
                (ctx.len() == 1 && ctx[0] == *goal).then(|| Derivation::id(goal.clone()))
            }
            Formula::Product(ga, gb) => {
                // Right-focusing: the split is pinned by frontier lengths.
                let split = frontier_split(ctx, ga.size() + 1)?;
                if frontier_of_slice(&ctx[..split]) != ga.frontier() {
                    return None;
                }
                let left = search(&ctx[..split], ga)?;
                let right = search(&ctx[split..], gb)?;
                Some(Derivation::times_r(left, right))
            }
        },
    }
}

/// Derivability along the same deterministic strategy as [`search`], but
/// over borrowed formulas on an explicit work stack: `L` steps pop a
/// product and push its parts, `R` splits budget the goal's frontier
/// length against whole context formulas. Nothing is cloned, so deep
/// inputs stay cheap.
fn check_sequent(ctx: &[Formula], goal: &Formula) -> bool {
    let total: usize = ctx.iter().map(|f| f.size() + 1).sum();
    if total != goal.size() + 1 {
        return false;
    }
    // Head of the context lives at the end of the buffer.
    let mut buf: Vec<&Formula> = ctx.iter().rev().collect();
    check(&mut buf, goal, total) && buf.is_empty()
}

fn check(buf: &mut Vec<&Formula>, goal: &Formula, budget: usize) -> bool {
    match goal {
        Formula::Atom(_) => match buf.pop() {
            // The budget here is one atom, so the head formula must be
            // exactly the goal atom; a product would straddle a split.
            Some(f) => f == goal,
            None => false,
        },
        Formula::Product(ga, gb) => {
            loop {
                let front = match buf.last() {
                    Some(f) => *f,
                    None => return false,
                };
                match front {
                    Formula::Atom(_) => break,
                    Formula::Product(l, r) => {
                        if front.size() + 1 > budget {
                            // The head formula extends past this subgoal's
                            // atoms: no context split can align.
                            return false;
                        }
                        buf.pop();
                        buf.push(r);
                        buf.push(l);
                    }
                }
            }
            let left_budget = ga.size() + 1;
            check(buf, ga, left_budget) && check(buf, gb, budget - left_budget)
        }
    }
}

/// Index splitting `ctx` so the prefix holds exactly `target` atoms, if any.
/// Cumulative frontier lengths are strictly increasing, so the index is
/// unique; both sides must stay non-empty.
fn frontier_split(ctx: &[Formula], target: usize) -> Option<usize> {
    let mut atoms = 0;
    for (i, item) in ctx.iter().enumerate() {
        atoms += item.size() + 1;
        if atoms == target {
            let split = i + 1;
            return (split < ctx.len()).then_some(split);
        }
        if atoms > target {
            return None;
        }
    }
    None
}

/// Counts focused derivations by exhaustive backtracking over every context
/// split at right-focusing sequents, deliberately not using the frontier
/// shortcut. Fails only on an empty context.
pub fn count_focused(sequent: &Sequent) -> Result<u64, Error> {
    if sequent.context.is_empty() {
        return Err(Error::EmptyContext);
    }
    Ok(stack::with_headroom(sequent.total_size() + 1, || {
        count(sequent.context.items(), &sequent.goal)
    }))
}

fn count(ctx: &[Formula], goal: &Formula) -> u64 {
    match &ctx[0] {
        Formula::Product(a, b) => {
            let mut items = Vec::with_capacity(ctx.len() + 1);
            items.push((**a).clone());
            items.push((**b).clone());
            items.extend_from_slice(&ctx[1..]);
            count(&items, goal)
        }
        Formula::Atom(_) => match goal {
            Formula::Atom(_) => u64::from(ctx.len() == 1 && ctx[0] == *goal),
            Formula::Product(ga, gb) => (1..ctx.len())
                .map(|split| count(&ctx[..split], ga) * count(&ctx[split..], gb))
                .sum(),
        },
    }
}

/// Builds the focused derivation of `A ⊢ A` by structural recursion: an
/// atom gives the atomic identity, and a product unfolds through `L` and
/// the restricted `R` rule. By uniqueness it equals what `search_focused`
/// returns for `[A] ⊢ A`.
pub fn identity_expansion(formula: &Formula) -> Derivation {
    stack::with_headroom(formula.size() + 1, || expand(formula))
}

fn expand(formula: &Formula) -> Derivation {
    deduce(formula, &|d| d)
}

/// Deduction recursion: `use_hyp` turns any focused derivation of
/// `G ⊢ A` with `G` irreducible into a focused derivation of `G, D ⊢ B`
/// for the fixed tail `D` and goal `B` of the caller; the result is a
/// focused derivation of `A, D ⊢ B`.
fn deduce(formula: &Formula, use_hyp: &dyn Fn(Derivation) -> Derivation) -> Derivation {
    match formula {
        Formula::Atom(_) => use_hyp(Derivation::id(formula.clone())),
        Formula::Product(a1, a2) => {
            let premise = deduce(a1, &|left| {
                let right = expand(a2);
                use_hyp(Derivation::times_r(left, right))
            });
            Derivation::times_l(premise)
        }
    }
}

/// Cuts two focused derivations into a focused derivation: given
/// `theta_side : T ⊢ A` and `host : G, A, D ⊢ B` with `A` at index `pos`
/// in the host context, produces `G, T, D ⊢ B`.
pub fn admit_cut(
    theta_side: &Derivation,
    host: &Derivation,
    pos: usize,
) -> Result<Derivation, Error> {
    if !is_focused(theta_side) || !is_focused(host) {
        return Err(Error::Precondition(
            "admit_cut requires focused derivations".to_owned(),
        ));
    }
    let host_ctx = host.conclusion.context.items();
    if pos >= host_ctx.len() {
        return Err(Error::Precondition(format!(
            "cut position {pos} out of range for a context of length {}",
            host_ctx.len()
        )));
    }
    if host_ctx[pos] != theta_side.conclusion.goal {
        return Err(Error::Precondition(format!(
            "host context formula at {pos} does not match the cut goal {}",
            theta_side.conclusion.goal
        )));
    }
    let hint = theta_side.height() + host.height() + theta_side.conclusion.goal.size() + 1;
    Ok(stack::with_headroom(hint, || {
        cut_rec(theta_side, host, pos)
    }))
}

/// Lexicographic recursion, first on the cut formula, then on the pair of
/// derivations. Both inputs are focused and the result stays focused.
fn cut_rec(d: &Derivation, e: &Derivation, pos: usize) -> Derivation {
    // Atomic cut: frontier preservation forces the theta side to be the
    // single atom, so the host already is the conclusion.
    if d.conclusion.goal.is_atom() {
        return e.clone();
    }
    match e.rule {
        Rule::Id => unreachable!("focused id concludes on an atom, but the cut formula is not"),
        Rule::Cut { .. } => unreachable!("focused derivations are cut-free"),
        Rule::TimesR { split } => {
            if pos < split {
                let left = cut_rec(d, &e.premises[0], pos);
                Derivation::times_r(left, e.premises[1].clone())
            } else {
                let right = cut_rec(d, &e.premises[1], pos - split);
                Derivation::times_r(e.premises[0].clone(), right)
            }
        }
        Rule::TimesL => {
            if pos > 0 {
                // The fused head stays in place; the cut moves one step in.
                Derivation::times_l(cut_rec(d, &e.premises[0], pos + 1))
            } else {
                // The head of the host context is the cut formula itself;
                // E = L(E') with E' : A1, A2, D ⊢ B. Analyze the theta side.
                match d.rule {
                    Rule::TimesL => Derivation::times_l(cut_rec(&d.premises[0], e, 0)),
                    Rule::TimesR { .. } => {
                        // D = R(D1 : T1 ⊢ A1, D2 : T2 ⊢ A2). Cut both into
                        // E'; the cut formulas shrink, so order is free.
                        let e_unfolded = &e.premises[0];
                        let after_a2 = cut_rec(&d.premises[1], e_unfolded, 1);
                        cut_rec(&d.premises[0], &after_a2, 0)
                    }
                    Rule::Id => {
                        unreachable!("focused id concludes on an atom, but the cut formula is not")
                    }
                    Rule::Cut { .. } => unreachable!("focused derivations are cut-free"),
                }
            }
        }
    }
}

/// Combines focused derivations of `G ⊢ A` and `D ⊢ B` into the focused
/// derivation of `G, D ⊢ A*B`: apply the restricted right rule once the
/// left context is irreducible, unfolding `L` steps until then.
pub fn admit_times_r(left: &Derivation, right: &Derivation) -> Result<Derivation, Error> {
    if !is_focused(left) || !is_focused(right) {
        return Err(Error::Precondition(
            "admit_times_r requires focused derivations".to_owned(),
        ));
    }
    Ok(stack::with_headroom(left.height() + 1, || {
        times_r_rec(left, right)
    }))
}

fn times_r_rec(left: &Derivation, right: &Derivation) -> Derivation {
    if left.conclusion.context.is_irreducible() {
        Derivation::times_r(left.clone(), right.clone())
    } else {
        // A focused derivation of a left-inverting sequent must end in L.
        Derivation::times_l(times_r_rec(&left.premises[0], right))
    }
}

/// Normalizes a valid derivation to the focused derivation of the same
/// conclusion: premises first, each cut is replaced through [`admit_cut`],
/// each unrestricted identity through [`identity_expansion`], and each
/// unrestricted right rule through [`admit_times_r`]. Idempotent, and by
/// coherence the output equals `search_focused` on the conclusion.
pub fn focus(derivation: &Derivation) -> Result<Derivation, Error> {
    validate(derivation).map_err(Error::InvalidDerivation)?;
    let hint = derivation.height() + derivation.conclusion.total_size() + 1;
    Ok(stack::with_headroom(hint, || focus_rec(derivation)))
}

fn focus_rec(d: &Derivation) -> Derivation {
    match d.rule {
        Rule::Id => {
            if d.conclusion.goal.is_atom() {
                d.clone()
            } else {
                expand(&d.conclusion.goal)
            }
        }
        Rule::TimesL => Derivation::times_l(focus_rec(&d.premises[0])),
        Rule::TimesR { .. } => {
            let left = focus_rec(&d.premises[0]);
            let right = focus_rec(&d.premises[1]);
            times_r_rec(&left, &right)
        }
        Rule::Cut { at, .. } => {
            let theta_side = focus_rec(&d.premises[0]);
            let host = focus_rec(&d.premises[1]);
            cut_rec(&theta_side, &host, at)
        }
    }
}
