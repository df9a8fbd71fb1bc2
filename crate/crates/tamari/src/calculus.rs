//! Derivation trees for the four sequent rules, structural validation,
//! sequent classification, the focused-form check, and a JSON interchange
//! format.
//!
//! The calculus has one left rule and one right rule for the product,
//! plus identity and cut:
//!
//! ```text
//!  A, B, D |- C                G |- A   D |- B
//! --------------- L           ----------------- R
//!  A*B, D |- C                  G, D |- A*B
//!
//!                              T |- A   G, A, D |- B
//! --------- id                ------------------------ cut
//!  A |- A                          G, T, D |- B
//! ```
//!
//! `R` nodes record the index splitting the conclusion context into the two
//! premise contexts, and `cut` nodes record where the premise segment was
//! spliced in (`at`) and how long it is (`len`). Storing the indices keeps
//! validation deterministic on arbitrary candidate trees, where the split
//! cannot be recovered from frontiers.
//!
//! # JSON schema
//!
//! Each node is an object with keys `rule` (one of `"L"`, `"R"`, `"id"`,
//! `"cut"`), `sequent` (`{"ctx": [formula strings], "goal": formula
//! string}`), and `premises` (array of nodes). `"R"` nodes carry
//! `"split"`; `"cut"` nodes carry `"at"` and `"len"`. Formula strings use
//! the grammar from [`crate::term`].

use std::collections::HashMap;
use std::fmt;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::stack;
use crate::term::{parse_formula, Atom, Context, Formula};

/// A context paired with a goal formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Context,
    pub goal: Formula,
}

impl Sequent {
    pub fn new(context: Context, goal: Formula) -> Sequent {
        Sequent { context, goal }
    }

    /// Total number of products on both sides; bounds derivation height for
    /// cut-free derivations, so it serves as a recursion-depth hint.
    pub fn total_size(&self) -> usize {
        self.context.iter().map(Formula::size).sum::<usize>() + self.goal.size()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊢ {}", self.context, self.goal)
    }
}

/// The four rule names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleName {
    TimesL,
    TimesR,
    Id,
    Cut,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleName::TimesL => "L",
            RuleName::TimesR => "R",
            RuleName::Id => "id",
            RuleName::Cut => "cut",
        })
    }
}

/// A rule instance together with its split metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    TimesL,
    /// `split` is the length of the left premise context.
    TimesR {
        split: usize,
    },
    Id,
    /// `at` is the start of the replaced segment in the conclusion context
    /// (equally, the index of the cut formula in the second premise), and
    /// `len` is the segment length.
    Cut {
        at: usize,
        len: usize,
    },
}

impl Rule {
    pub fn name(&self) -> RuleName {
        match self {
            Rule::TimesL => RuleName::TimesL,
            Rule::TimesR { .. } => RuleName::TimesR,
            Rule::Id => RuleName::Id,
            Rule::Cut { .. } => RuleName::Cut,
        }
    }
}

/// A rule-labelled tree of sequents.
///
/// The fields are public so that arbitrary candidate trees can be built and
/// fed to [`validate`]; the associated constructors below build nodes whose
/// conclusions are computed from the premises and are correct by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// `id` node concluding `A |- A`.
    pub fn id(formula: Formula) -> Derivation {
        Derivation {
            rule: Rule::Id,
            conclusion: Sequent::new(Context::from(vec![formula.clone()]), formula),
            premises: Vec::new(),
        }
    }

    /// `L` node: fuses the first two context formulas of the premise.
    ///
    /// Panics if the premise context has fewer than two formulas.
    pub fn times_l(premise: Derivation) -> Derivation {
        let items = premise.conclusion.context.items();
        assert!(
            items.len() >= 2,
            "times_l needs at least two context formulas, got {}",
            items.len()
        );
        let mut ctx = Vec::with_capacity(items.len() - 1);
        ctx.push(Formula::product(items[0].clone(), items[1].clone()));
        ctx.extend_from_slice(&items[2..]);
        let goal = premise.conclusion.goal.clone();
        Derivation {
            rule: Rule::TimesL,
            conclusion: Sequent::new(Context::from(ctx), goal),
            premises: vec![premise],
        }
    }

    /// `R` node: concatenates the premise contexts and multiplies the goals.
    pub fn times_r(left: Derivation, right: Derivation) -> Derivation {
        let split = left.conclusion.context.len();
        let mut ctx = left.conclusion.context.items().to_vec();
        ctx.extend_from_slice(right.conclusion.context.items());
        let goal = Formula::product(left.conclusion.goal.clone(), right.conclusion.goal.clone());
        Derivation {
            rule: Rule::TimesR { split },
            conclusion: Sequent::new(Context::from(ctx), goal),
            premises: vec![left, right],
        }
    }

    /// `cut` node: splices `theta`'s context in place of `host`'s context
    /// formula at `pos`, which must equal `theta`'s goal.
    ///
    /// Panics if `pos` is out of range or the formulas don't match.
    pub fn cut(theta: Derivation, host: Derivation, pos: usize) -> Derivation {
        let host_items = host.conclusion.context.items();
        assert!(pos < host_items.len(), "cut position {pos} out of range");
        assert_eq!(
            host_items[pos], theta.conclusion.goal,
            "cut formula does not match the context formula at position {pos}"
        );
        let theta_items = theta.conclusion.context.items();
        let mut ctx = Vec::with_capacity(host_items.len() - 1 + theta_items.len());
        ctx.extend_from_slice(&host_items[..pos]);
        ctx.extend_from_slice(theta_items);
        ctx.extend_from_slice(&host_items[pos + 1..]);
        let rule = Rule::Cut {
            at: pos,
            len: theta_items.len(),
        };
        let goal = host.conclusion.goal.clone();
        Derivation {
            rule,
            conclusion: Sequent::new(Context::from(ctx), goal),
            premises: vec![theta, host],
        }
    }

    pub fn rule_name(&self) -> RuleName {
        self.rule.name()
    }

    /// Height of the tree, computed without recursion.
    pub fn height(&self) -> usize {
        let mut max = 0;
        let mut todo = vec![(self, 1usize)];
        while let Some((node, depth)) = todo.pop() {
            max = max.max(depth);
            for premise in &node.premises {
                todo.push((premise, depth + 1));
            }
        }
        max
    }

    /// Applies an atom substitution to every sequent in the tree.
    pub fn relabel(&self, map: &HashMap<Atom, Atom>) -> Derivation {
        stack::with_headroom(self.height(), || self.relabel_rec(map))
    }

    fn relabel_rec(&self, map: &HashMap<Atom, Atom>) -> Derivation {
        Derivation {
            rule: self.rule,
            conclusion: Sequent::new(
                self.conclusion.context.relabel(map),
                self.conclusion.goal.relabel(map),
            ),
            premises: self.premises.iter().map(|p| p.relabel_rec(map)).collect(),
        }
    }
}

/// Indented plain-text rendering, one sequent per line, premises below
/// their conclusion.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut todo = vec![(self, 0usize)];
        while let Some((node, depth)) = todo.pop() {
            for _ in 0..depth {
                f.write_str("  ")?;
            }
            writeln!(f, "{}: {}", node.rule.name(), node.conclusion)?;
            for premise in node.premises.iter().rev() {
                todo.push((premise, depth + 1));
            }
        }
        Ok(())
    }
}

/// A report naming the offending node and the schema clause it violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Premise indices from the root down to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("at root")?;
        for i in &self.path {
            write!(f, ".premises[{i}]")?;
        }
        write!(f, ": {}", self.reason)
    }
}

/// Checks that every node instantiates its rule schema exactly. Reports the
/// first offending node in pre-order.
pub fn validate(derivation: &Derivation) -> Result<(), Violation> {
    stack::with_headroom(derivation.height(), || {
        validate_rec(derivation, &mut Vec::new())
    })
}

fn validate_rec(d: &Derivation, path: &mut Vec<usize>) -> Result<(), Violation> {
    if let Err(reason) = check_node(d) {
        return Err(Violation {
            path: path.clone(),
            reason,
        });
    }
    for (i, premise) in d.premises.iter().enumerate() {
        path.push(i);
        validate_rec(premise, path)?;
        path.pop();
    }
    Ok(())
}

fn check_node(d: &Derivation) -> Result<(), String> {
    let ctx = d.conclusion.context.items();
    if ctx.is_empty() {
        return Err("empty context".to_owned());
    }
    let arity = match d.rule {
        Rule::Id => 0,
        Rule::TimesL => 1,
        Rule::TimesR { .. } | Rule::Cut { .. } => 2,
    };
    if d.premises.len() != arity {
        return Err(format!(
            "{} expects {} premise(s), found {}",
            d.rule.name(),
            arity,
            d.premises.len()
        ));
    }
    match d.rule {
        Rule::Id => {
            if ctx.len() != 1 || ctx[0] != d.conclusion.goal {
                return Err("id must conclude A ⊢ A".to_owned());
            }
        }
        Rule::TimesL => {
            let (a, b) = match &ctx[0] {
                Formula::Product(a, b) => (&**a, &**b),
                Formula::Atom(_) => return Err("L conclusion must start with a product".to_owned()),
            };
            let premise = &d.premises[0].conclusion;
            let pitems = premise.context.items();
            let shape_ok = pitems.len() == ctx.len() + 1
                && pitems[0] == *a
                && pitems[1] == *b
                && pitems[2..] == ctx[1..];
            if !shape_ok {
                return Err("L premise context must unfold the leading product".to_owned());
            }
            if premise.goal != d.conclusion.goal {
                return Err("L premise goal must equal the conclusion goal".to_owned());
            }
        }
        Rule::TimesR { split } => {
            let (a, b) = match &d.conclusion.goal {
                Formula::Product(a, b) => (&**a, &**b),
                Formula::Atom(_) => return Err("R goal must be a product".to_owned()),
            };
            if split == 0 || split >= ctx.len() {
                return Err(format!(
                    "R split {split} must lie strictly inside the context of length {}",
                    ctx.len()
                ));
            }
            let left = &d.premises[0].conclusion;
            let right = &d.premises[1].conclusion;
            if left.context.items() != &ctx[..split] || left.goal != *a {
                return Err(
                    "R left premise must be the context prefix deriving the left factor".to_owned(),
                );
            }
            if right.context.items() != &ctx[split..] || right.goal != *b {
                return Err(
                    "R right premise must be the context suffix deriving the right factor"
                        .to_owned(),
                );
            }
        }
        Rule::Cut { at, len } => {
            if len == 0 {
                return Err("cut segment must be non-empty".to_owned());
            }
            if at + len > ctx.len() {
                return Err(format!(
                    "cut segment {at}..{} exceeds the context of length {}",
                    at + len,
                    ctx.len()
                ));
            }
            let theta = &d.premises[0].conclusion;
            let host = &d.premises[1].conclusion;
            if theta.context.items() != &ctx[at..at + len] {
                return Err("cut first premise context must equal the recorded segment".to_owned());
            }
            let hitems = host.context.items();
            let shape_ok = hitems.len() == ctx.len() - len + 1
                && hitems[..at] == ctx[..at]
                && hitems[at] == theta.goal
                && hitems[at + 1..] == ctx[at + len..];
            if !shape_ok {
                return Err(
                    "cut second premise context must hold the cut formula at the recorded position"
                        .to_owned(),
                );
            }
            if host.goal != d.conclusion.goal {
                return Err("cut second premise goal must equal the conclusion goal".to_owned());
            }
        }
    }
    Ok(())
}

/// The three mutually exclusive sequent classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequentClass {
    /// The context's leftmost formula is a product.
    LeftInverting,
    /// Irreducible context, product goal.
    RightFocusing,
    /// Irreducible context, atomic goal.
    Atomic,
}

/// Classifies a non-empty sequent.
pub fn classify(sequent: &Sequent) -> Result<SequentClass, Error> {
    let first = sequent.context.items().first().ok_or(Error::EmptyContext)?;
    Ok(match (first, &sequent.goal) {
        (Formula::Product(..), _) => SequentClass::LeftInverting,
        (Formula::Atom(_), Formula::Product(..)) => SequentClass::RightFocusing,
        (Formula::Atom(_), Formula::Atom(_)) => SequentClass::Atomic,
    })
}

/// True iff the derivation is valid, cut-free, every `R` node has an
/// irreducible left premise context, and every `id` concludes on an atom.
pub fn is_focused(derivation: &Derivation) -> bool {
    validate(derivation).is_ok()
        && stack::with_headroom(derivation.height(), || focused_rec(derivation))
}

fn focused_rec(d: &Derivation) -> bool {
    let here = match d.rule {
        Rule::Cut { .. } => false,
        Rule::Id => d.conclusion.goal.is_atom(),
        Rule::TimesR { .. } => d.premises[0].conclusion.context.is_irreducible(),
        Rule::TimesL => true,
    };
    here && d.premises.iter().all(focused_rec)
}

/// A schema violation found while reading derivation JSON.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at {path}: {msg}")]
pub struct JsonError {
    /// JSON path of the offending value, e.g. `$.premises[0].sequent.goal`.
    pub path: String,
    pub msg: String,
}

fn json_err(path: &str, msg: impl Into<String>) -> JsonError {
    JsonError {
        path: path.to_owned(),
        msg: msg.into(),
    }
}

/// Serializes a derivation to one line of JSON.
pub fn to_json(derivation: &Derivation) -> String {
    stack::with_headroom(derivation.height(), || {
        let value = node_to_value(derivation);
        serde_json::to_string(&value).expect("derivation JSON serialization cannot fail")
    })
}

fn node_to_value(d: &Derivation) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("rule".to_owned(), json!(d.rule.name().to_string()));
    match d.rule {
        Rule::TimesR { split } => {
            obj.insert("split".to_owned(), json!(split));
        }
        Rule::Cut { at, len } => {
            obj.insert("at".to_owned(), json!(at));
            obj.insert("len".to_owned(), json!(len));
        }
        Rule::TimesL | Rule::Id => {}
    }
    let ctx: Vec<String> = d.conclusion.context.iter().map(|f| f.to_string()).collect();
    obj.insert(
        "sequent".to_owned(),
        json!({"ctx": ctx, "goal": d.conclusion.goal.to_string()}),
    );
    obj.insert(
        "premises".to_owned(),
        Value::Array(d.premises.iter().map(node_to_value).collect()),
    );
    Value::Object(obj)
}

/// Reads a derivation from JSON, enforcing the schema. The result is not
/// necessarily valid; run [`validate`] to check rule instantiation.
pub fn from_json(bytes: &[u8]) -> Result<Derivation, JsonError> {
    stack::with_headroom(bytes.len() / 8, || {
        let mut de = serde_json::Deserializer::from_slice(bytes);
        de.disable_recursion_limit();
        let value = Value::deserialize(&mut de).map_err(|e| json_err("$", e.to_string()))?;
        de.end().map_err(|e| json_err("$", e.to_string()))?;
        node_from_value(&value, "$")
    })
}

fn node_from_value(value: &Value, path: &str) -> Result<Derivation, JsonError> {
    let obj = value
        .as_object()
        .ok_or_else(|| json_err(path, "expected an object"))?;

    let rule_str = obj
        .get("rule")
        .ok_or_else(|| json_err(path, "missing field \"rule\""))?
        .as_str()
        .ok_or_else(|| json_err(&format!("{path}.rule"), "expected a string"))?;

    let rule = match rule_str {
        "L" => Rule::TimesL,
        "id" => Rule::Id,
        "R" => Rule::TimesR {
            split: require_index(obj, "split", path)?,
        },
        "cut" => Rule::Cut {
            at: require_index(obj, "at", path)?,
            len: require_index(obj, "len", path)?,
        },
        other => {
            return Err(json_err(
                &format!("{path}.rule"),
                format!("unknown rule {other:?} (expected \"L\", \"R\", \"id\", or \"cut\")"),
            ))
        }
    };

    let allowed: &[&str] = match rule {
        Rule::TimesR { .. } => &["rule", "sequent", "premises", "split"],
        Rule::Cut { .. } => &["rule", "sequent", "premises", "at", "len"],
        Rule::TimesL | Rule::Id => &["rule", "sequent", "premises"],
    };
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(json_err(path, format!("unknown field {key:?}")));
        }
    }

    let seq_path = format!("{path}.sequent");
    let seq = obj
        .get("sequent")
        .ok_or_else(|| json_err(path, "missing field \"sequent\""))?
        .as_object()
        .ok_or_else(|| json_err(&seq_path, "expected an object"))?;
    for key in seq.keys() {
        if key != "ctx" && key != "goal" {
            return Err(json_err(&seq_path, format!("unknown field {key:?}")));
        }
    }
    let ctx_values = seq
        .get("ctx")
        .ok_or_else(|| json_err(&seq_path, "missing field \"ctx\""))?
        .as_array()
        .ok_or_else(|| json_err(&format!("{seq_path}.ctx"), "expected an array"))?;
    let mut ctx = Vec::with_capacity(ctx_values.len());
    for (i, v) in ctx_values.iter().enumerate() {
        let item_path = format!("{seq_path}.ctx[{i}]");
        let text = v
            .as_str()
            .ok_or_else(|| json_err(&item_path, "expected a formula string"))?;
        ctx.push(parse_formula(text).map_err(|e| json_err(&item_path, e.to_string()))?);
    }
    let goal_path = format!("{seq_path}.goal");
    let goal_text = seq
        .get("goal")
        .ok_or_else(|| json_err(&seq_path, "missing field \"goal\""))?
        .as_str()
        .ok_or_else(|| json_err(&goal_path, "expected a formula string"))?;
    let goal = parse_formula(goal_text).map_err(|e| json_err(&goal_path, e.to_string()))?;

    let premise_values = obj
        .get("premises")
        .ok_or_else(|| json_err(path, "missing field \"premises\""))?
        .as_array()
        .ok_or_else(|| json_err(&format!("{path}.premises"), "expected an array"))?;
    let mut premises = Vec::with_capacity(premise_values.len());
    for (i, v) in premise_values.iter().enumerate() {
        premises.push(node_from_value(v, &format!("{path}.premises[{i}]"))?);
    }

    Ok(Derivation {
        rule,
        conclusion: Sequent::new(Context::from(ctx), goal),
        premises,
    })
}

fn require_index(
    obj: &serde_json::Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<usize, JsonError> {
    let v = obj
        .get(key)
        .ok_or_else(|| json_err(path, format!("missing field {key:?}")))?;
    let n = v
        .as_u64()
        .ok_or_else(|| json_err(&format!("{path}.{key}"), "expected a non-negative integer"))?;
    usize::try_from(n).map_err(|_| json_err(&format!("{path}.{key}"), "index too large"))
}
