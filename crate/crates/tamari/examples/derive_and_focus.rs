//! Focused derivations: searching for them, composing valid derivations
//! with cut, normalizing back to focused form, and the JSON interchange.
//!
//! ```bash
//! cargo run -p tamari --example derive_and_focus
//! ```

use tamari::calculus::{is_focused, to_json};
use tamari::focusing::{focus, identity_expansion, search_focused};
use tamari::{Context, Derivation, Error, Formula, Sequent};

fn main() -> Result<(), Error> {
    let lower: Formula = "((p*q)*r)*s".parse()?;
    let middle: Formula = "(p*(q*r))*s".parse()?;
    let upper: Formula = "p*((q*r)*s)".parse()?;

    // The unique focused derivations of the two rotation steps.
    let first = search_focused(&Sequent::new(
        Context::from(vec![lower.clone()]),
        middle.clone(),
    ))?
    .expect("one right rotation");
    let second = search_focused(&Sequent::new(
        Context::from(vec![middle.clone()]),
        upper.clone(),
    ))?
    .expect("one right rotation");

    // Compose them with an explicit cut. The result is a valid derivation
    // of the two-step entailment, but not a focused one.
    let composed = Derivation::cut(first, second, 0);
    println!("composed derivation (cut at the root):\n{composed}");
    println!("is_focused(composed) = {}", is_focused(&composed));

    // Normalizing removes the cut; by coherence the output is exactly what
    // direct search finds.
    let normalized = focus(&composed)?;
    println!("normalized:\n{normalized}");
    let direct = search_focused(&Sequent::new(Context::from(vec![lower]), upper))?
        .expect("derivable by transitivity");
    println!("normalized == direct search: {}", normalized == direct);

    // Identity expansion unfolds A |- A into its focused form; one line of
    // JSON round-trips the whole tree.
    let expanded = identity_expansion(&"p*(q*r)".parse()?);
    println!();
    println!("identity expansion as JSON:\n{}", to_json(&expanded));
    Ok(())
}
