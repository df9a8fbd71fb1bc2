//! Deciding the Tamari order between fully bracketed words.
//!
//! ```bash
//! cargo run -p tamari --example decide_order
//! ```

use tamari::focusing::decide;
use tamari::lattice::{bottom, top};
use tamari::term::Frontier;
use tamari::{Error, Formula};

fn main() -> Result<(), Error> {
    let lower: Formula = "(p*(q*r))*s".parse()?;
    let upper: Formula = "p*(q*(r*s))".parse()?;

    println!("{lower} <= {upper}  ?  {}", decide(&lower, &upper));
    println!("{upper} <= {lower}  ?  {}", decide(&upper, &lower));

    // The order only relates words with the same frontier.
    let other: Formula = "q*(p*(r*s))".parse()?;
    println!("{lower} <= {other}  ?  {}", decide(&lower, &other));

    // Every word sits between the left comb and the right comb.
    let frontier = Frontier::canonical(5);
    let least = bottom(&frontier)?;
    let greatest = top(&frontier)?;
    let middle: Formula = "(a1*a2)*((a3*a4)*a5)".parse()?;
    println!();
    println!("bottom: {least}");
    println!("top:    {greatest}");
    println!(
        "bottom <= {middle} <= top  ?  {}",
        decide(&least, &middle) && decide(&middle, &greatest)
    );
    Ok(())
}
