//! Lattice operations: joins and meets of formulas, the substitution order
//! on contexts, and blockwise joins through composition pushouts.
//!
//! ```bash
//! cargo run -p tamari --example join_meet
//! ```

use tamari::lattice::{
    composition_of, join_context, join_formula, leq_context, meet_formula, pushout,
};
use tamari::{Context, Error, Formula};

fn ctx(items: &[&str]) -> Context {
    items.iter().map(|s| s.parse().unwrap()).collect()
}

fn main() -> Result<(), Error> {
    // A six-product example whose join needs several recursion rounds.
    let a: Formula = "p*((q*(r*((s*t)*u)))*v)".parse()?;
    let b: Formula = "(p*(q*r))*((s*t)*(u*v))".parse()?;
    println!("a          = {a}");
    println!("b          = {b}");
    println!("a join b   = {}", join_formula(&a, &b)?);
    println!("a meet b   = {}", meet_formula(&a, &b)?);

    // Joins of contexts go block by block after pushing the compositions
    // out to their finest common coarsening.
    let gamma = ctx(&["p*q", "r"]);
    let theta = ctx(&["p", "q*r"]);
    let (via_gamma, via_theta, coarsening) =
        pushout(&composition_of(&gamma), &composition_of(&theta))?;
    println!();
    println!("composition of {gamma}  = {}", composition_of(&gamma));
    println!("composition of {theta}  = {}", composition_of(&theta));
    println!("pushout: {via_gamma} / {via_theta} over {coarsening}");
    println!("context join = {}", join_context(&gamma, &theta)?);

    // The substitution order relates contexts blockwise.
    println!();
    println!(
        "[p, q, r] <= [p*q, r]  ?  {}",
        leq_context(&ctx(&["p", "q", "r"]), &gamma)
    );
    println!("[p*q, r] <= [p, q*r]  ?  {}", leq_context(&gamma, &theta));
    Ok(())
}
