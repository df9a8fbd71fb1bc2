//! Atoms, formulas, contexts, frontiers, and the structural maps between
//! them.
//!
//! A formula is a fully bracketed word: a binary tree whose leaves are named
//! atoms and whose internal nodes are the product `*`. A context is an
//! ordered list of formulas, read as a left-associated product via
//! [`Context::product`]. The concrete grammar (whitespace between tokens is
//! ignored) is
//!
//! ```text
//! formula := term ( "*" term )*        -- "*" chains associate to the left
//! term    := atom | "(" formula ")"
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! The printer is minimal: parentheses recoverable from left-associativity
//! are omitted, so `(p*q)*r` prints as `p*q*r` while `p*(q*r)` keeps its
//! parentheses. Printing and parsing are mutually inverse on all formulas.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::stack;

/// An atom name matching `[a-z][a-zA-Z0-9_]*`. Equality is string equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: &str) -> Result<Atom, Error> {
        let mut chars = name.chars();
        let ok = match chars.next() {
            Some(c) if c.is_ascii_lowercase() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if ok {
            Ok(Atom(name.to_owned()))
        } else {
            Err(Error::Syntax {
                pos: 0,
                msg: format!("invalid atom name {name:?}"),
            })
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A fully bracketed word: either an atom or a product of two formulas.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atom),
    Product(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn product(left: Formula, right: Formula) -> Formula {
        Formula::Product(Box::new(left), Box::new(right))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Number of products in the formula; an atom has size 0.
    pub fn size(&self) -> usize {
        let mut count = 0;
        let mut todo = vec![self];
        while let Some(f) = todo.pop() {
            if let Formula::Product(l, r) = f {
                count += 1;
                todo.push(l);
                todo.push(r);
            }
        }
        count
    }

    /// The ordered list of atoms, left to right. Its length is `size() + 1`.
    pub fn frontier(&self) -> Frontier {
        let mut atoms = Vec::new();
        let mut todo = vec![self];
        while let Some(f) = todo.pop() {
            match f {
                Formula::Atom(a) => atoms.push(a.clone()),
                Formula::Product(l, r) => {
                    todo.push(r);
                    todo.push(l);
                }
            }
        }
        Frontier(atoms)
    }

    /// Applies an atom substitution homomorphically. Atoms missing from the
    /// map pass through unchanged.
    pub fn relabel(&self, map: &HashMap<Atom, Atom>) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(map.get(a).unwrap_or(a).clone()),
            Formula::Product(l, r) => Formula::product(l.relabel(map), r.relabel(map)),
        }
    }

    /// Reverses the formula: `mirror(A*B) = mirror(B)*mirror(A)`. An
    /// involution that reverses the frontier and preserves size; it swaps
    /// the order with its dual, so meets can be computed from joins.
    pub fn mirror(&self) -> Formula {
        match self {
            Formula::Atom(_) => self.clone(),
            Formula::Product(l, r) => Formula::product(r.mirror(), l.mirror()),
        }
    }

    /// The maximal decomposition: the greatest irreducible context whose
    /// left-associated product gives back the formula. The left spine is
    /// unfolded completely: an atom maps to the singleton context, and
    /// `A*B` maps to `max_decomposition(A)` followed by `B`.
    pub fn max_decomposition(&self) -> Context {
        let mut rights = Vec::new();
        let mut spine = self;
        while let Formula::Product(l, r) = spine {
            rights.push((**r).clone());
            spine = l;
        }
        let mut items = Vec::with_capacity(rights.len() + 1);
        items.push(spine.clone());
        items.extend(rights.into_iter().rev());
        Context(items)
    }

    /// Right action of a context: multiplies the context's formulas onto the
    /// right, one at a time, so `phi(G ++ D) = phi(G).extend(D)` where `phi`
    /// is [`Context::product`]. An empty context acts as the identity.
    pub fn extend(&self, suffix: &Context) -> Formula {
        suffix
            .items()
            .iter()
            .fold(self.clone(), |acc, b| Formula::product(acc, b.clone()))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula, Error> {
        parse_formula(s)
    }
}

/// An ordered list of formulas, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Context(Vec<Formula>);

impl Context {
    pub fn new(items: Vec<Formula>) -> Context {
        Context(items)
    }

    pub fn items(&self) -> &[Formula] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Formula> {
        self.0.iter()
    }

    /// Concatenation of the item frontiers.
    pub fn frontier(&self) -> Frontier {
        frontier_of_slice(&self.0)
    }

    /// A context is irreducible when it is empty or its leftmost formula is
    /// an atom.
    pub fn is_irreducible(&self) -> bool {
        match self.0.first() {
            None => true,
            Some(f) => f.is_atom(),
        }
    }

    /// The left-associated product of the items: `[A] -> A` and
    /// `[G, A] -> product(G) * A`. Fails on the empty context.
    pub fn product(&self) -> Result<Formula, Error> {
        let mut it = self.0.iter();
        let first = it.next().ok_or(Error::EmptyContext)?;
        Ok(it.fold(first.clone(), |acc, f| Formula::product(acc, f.clone())))
    }

    pub fn relabel(&self, map: &HashMap<Atom, Atom>) -> Context {
        Context(self.0.iter().map(|f| f.relabel(map)).collect())
    }
}

impl From<Vec<Formula>> for Context {
    fn from(items: Vec<Formula>) -> Context {
        Context(items)
    }
}

impl FromIterator<Formula> for Context {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Context {
        Context(iter.into_iter().collect())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for item in &self.0 {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{item}")?;
        }
        Ok(())
    }
}

/// An ordered list of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Frontier(Vec<Atom>);

impl Frontier {
    pub fn new(atoms: Vec<Atom>) -> Frontier {
        Frontier(atoms)
    }

    /// The frontier `a1, ..., an`, used by the integer-indexed commands.
    pub fn canonical(n_atoms: usize) -> Frontier {
        Frontier((1..=n_atoms).map(|i| Atom(format!("a{i}"))).collect())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Frontier {
        Frontier(self.0.iter().rev().cloned().collect())
    }
}

impl From<Vec<Atom>> for Frontier {
    fn from(atoms: Vec<Atom>) -> Frontier {
        Frontier(atoms)
    }
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for atom in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str(atom.as_str())?;
        }
        Ok(())
    }
}

pub(crate) fn frontier_of_slice(items: &[Formula]) -> Frontier {
    let mut atoms = Vec::new();
    for f in items {
        atoms.extend(f.frontier().0);
    }
    Frontier(atoms)
}

/// Parses a formula from the concrete grammar.
pub fn parse_formula(text: &str) -> Result<Formula, Error> {
    stack::with_headroom(text.len(), || Parser::new(text).parse_full())
}

/// Prints with minimal parentheses; re-parsing yields an equal formula.
pub fn print_formula(formula: &Formula) -> String {
    stack::with_headroom(formula.size(), || {
        let mut out = String::new();
        write_minimal(formula, &mut out);
        out
    })
}

fn write_minimal(formula: &Formula, out: &mut String) {
    match formula {
        Formula::Atom(a) => out.push_str(a.as_str()),
        Formula::Product(l, r) => {
            write_minimal(l, out);
            out.push('*');
            if matches!(**r, Formula::Product(..)) {
                out.push('(');
                write_minimal(r, out);
                out.push(')');
            } else {
                write_minimal(r, out);
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            src: text.as_bytes(),
            text,
            pos: 0,
        }
    }

    fn parse_full(mut self) -> Result<Formula, Error> {
        let formula = self.formula()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected input after formula"));
        }
        Ok(formula)
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn formula(&mut self) -> Result<Formula, Error> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'*') {
                self.pos += 1;
                let rhs = self.term()?;
                acc = Formula::product(acc, rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Formula, Error> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_lowercase() => self.atom(),
            Some(_) => Err(self.err("expected atom or '('")),
            None => Err(self.err("expected atom or '(', found end of input")),
        }
    }

    fn atom(&mut self) -> Result<Formula, Error> {
        let start = self.pos;
        self.pos += 1;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        Ok(Formula::Atom(Atom(self.text[start..self.pos].to_owned())))
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_owned(),
        }
    }
}
