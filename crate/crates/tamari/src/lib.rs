//! Sequent-calculus toolkit for the Tamari order: the partial order on
//! fully bracketed words generated by the semi-associative law
//! `(A*B)*C <= A*(B*C)` — equivalently, right rotation on binary trees.
//!
//! The calculus has one left rule, one right rule, identity, and cut.
//! Restricting the right rule to irreducible left contexts and identity to
//! atoms yields *focused* derivations, of which every derivable sequent
//! has exactly one. That uniqueness drives everything here:
//!
//! - [`focusing::decide`] decides `A <= B` by deterministic focused
//!   search, and [`focusing::focus`] normalizes any valid derivation to
//!   the focused one.
//! - [`lattice`] computes joins and meets recursively through maximal
//!   decompositions and composition pushouts, builds Hasse diagrams, and
//!   exports DOT.
//! - [`count`] counts lattice intervals three independent ways: a dynamic
//!   program over focused-derivation counts, a truncated bivariate series
//!   solving the functional equations, and the closed formula
//!   `2(4n+1)!/((n+1)!(3n+2)!)`.
//! - [`oracle`] is the deliberately naive referee (rotation closure,
//!   exhaustive scans) that the test suites compare everything against.
//!
//! # Quick start
//!
//! ```
//! use tamari::{focusing, lattice, term};
//!
//! let a: term::Formula = "(p*(q*r))*s".parse()?;
//! let b: term::Formula = "p*(q*(r*s))".parse()?;
//! assert!(focusing::decide(&a, &b));
//! assert!(!focusing::decide(&b, &a));
//!
//! let join = lattice::join_formula(&a, &b)?;
//! assert_eq!(join, b);
//! # Ok::<(), tamari::Error>(())
//! ```
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p tamari --example decide_order       # decision procedure
//! cargo run -p tamari --example derive_and_focus   # derivations, JSON, normalizer
//! cargo run -p tamari --example join_meet          # lattice operations
//! cargo run -p tamari --example hasse_dot          # Hasse diagrams as DOT
//! cargo run -p tamari --example interval_counts    # three counting routes
//! cargo run -p tamari --example oracle_referee     # brute-force cross-checks
//! ```
//!
//! The `tamari` binary wraps the same functionality as subcommands; see
//! the README or `tamari --help`.

pub mod calculus;
pub mod cli;
pub mod count;
mod error;
pub mod focusing;
pub mod lattice;
pub mod oracle;
mod stack;
pub mod term;

pub use calculus::{Derivation, Rule, RuleName, Sequent};
pub use error::Error;
pub use term::{Atom, Context, Formula, Frontier};
