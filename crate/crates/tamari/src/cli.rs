//! Command-line front end.
//!
//! Subcommands: `decide`, `derive`, `normalize`, `join`, `meet`, `bottom`,
//! `top`, `count`, `series`, `hasse`, and `selfcheck`. Exit codes: 0 on
//! success (including `decide` printing `true`), 1 for a false or
//! non-derivable answer, 2 for usage, parse, or input errors.
//!
//! Integer-indexed commands work over the canonical frontier
//! `a1, ..., a(n+1)`; by frontier invariance the choice of names does not
//! affect any answer, and a fixed one keeps output stable.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::calculus::{from_json, to_json, validate, Sequent};
use crate::count::{chapoton_check, dp_tables, format_x_polynomial, series_solve, tutte_formula};
use crate::focusing::{count_focused, decide, focus, search_focused};
use crate::lattice::{
    bottom, hasse_limited, join_formula, meet_formula, to_dot, top, DEFAULT_HASSE_LIMIT,
};
use crate::oracle::{
    count_intervals_oracle_limited, enumerate_contexts, join_oracle, leq_oracle, meet_oracle,
    transitive_reduction, DEFAULT_ORACLE_LIMIT,
};
use crate::term::{parse_formula, Context, Formula, Frontier};

#[derive(Parser)]
#[command(
    name = "tamari",
    about = "Sequent-calculus decision procedure, lattice operations, and interval counting for the Tamari order"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether A <= B in the Tamari order (exit 0 = true, 1 = false)
    Decide { a: String, b: String },
    /// Print the focused derivation of [A] |- B, if derivable
    Derive {
        a: String,
        b: String,
        /// Emit derivation JSON instead of indented text
        #[arg(long)]
        json: bool,
    },
    /// Read derivation JSON, validate it, and write the focused form
    Normalize {
        /// Read from this file instead of standard input
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Least upper bound of two formulas with the same frontier
    Join { a: String, b: String },
    /// Greatest lower bound of two formulas with the same frontier
    Meet { a: String, b: String },
    /// Least formula of size n: the left comb over a1..a(n+1)
    Bottom { n: usize },
    /// Greatest formula of size n: the right comb over a1..a(n+1)
    Top { n: usize },
    /// Interval counts of the size-n lattice
    Count {
        /// Single size to count
        n: Option<usize>,
        /// Count every size from 0 through N
        #[arg(long, value_name = "N")]
        upto: Option<usize>,
        /// Emit `n,count` rows instead of bare counts
        #[arg(long)]
        csv: bool,
        /// Use the closed formula instead of the dynamic program
        #[arg(long)]
        formula: bool,
        /// Use the brute-force oracle (size-limited)
        #[arg(long)]
        oracle: bool,
        /// Override the oracle size limit
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
    },
    /// Print the truncated series coefficients R[n] and L1[n]
    Series {
        #[arg(long, value_name = "N")]
        order: usize,
    },
    /// Hasse diagram of the size-n lattice as DOT
    Hasse {
        n: usize,
        /// Write DOT here instead of standard output
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
        /// Override the frontier-size limit
        #[arg(long, value_name = "K")]
        limit: Option<usize>,
    },
    /// Run the oracle-equivalence suites and print a summary
    Selfcheck {
        /// Largest formula size to sweep exhaustively
        #[arg(long = "max-size", value_name = "K")]
        max_size: Option<usize>,
    },
}

/// Runs the CLI on the given arguments (without the program name), writing
/// to the supplied streams, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv = std::iter::once(OsString::from("tamari")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Decide { a, b } => {
            let a = parse(&a)?;
            let b = parse(&b)?;
            if decide(&a, &b) {
                let _ = writeln!(out, "true");
                Ok(0)
            } else {
                let _ = writeln!(out, "false");
                Ok(1)
            }
        }
        Command::Derive { a, b, json } => {
            let a = parse(&a)?;
            let b = parse(&b)?;
            let sequent = Sequent::new(Context::from(vec![a]), b);
            match search_focused(&sequent).map_err(|e| e.to_string())? {
                Some(derivation) => {
                    if json {
                        let _ = writeln!(out, "{}", to_json(&derivation));
                    } else {
                        let _ = write!(out, "{derivation}");
                    }
                    Ok(0)
                }
                None => {
                    let _ = writeln!(err, "not derivable: {sequent}");
                    Ok(1)
                }
            }
        }
        Command::Normalize { input } => {
            let bytes = match input {
                Some(path) => {
                    fs::read(&path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
                }
                None => {
                    let mut buf = Vec::new();
                    std::io::stdin()
                        .read_to_end(&mut buf)
                        .map_err(|e| format!("cannot read standard input: {e}"))?;
                    buf
                }
            };
            let derivation = from_json(&bytes).map_err(|e| e.to_string())?;
            validate(&derivation).map_err(|v| v.to_string())?;
            let focused = focus(&derivation).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{}", to_json(&focused));
            Ok(0)
        }
        Command::Join { a, b } => {
            let joined = join_formula(&parse(&a)?, &parse(&b)?).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{joined}");
            Ok(0)
        }
        Command::Meet { a, b } => {
            let met = meet_formula(&parse(&a)?, &parse(&b)?).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{met}");
            Ok(0)
        }
        Command::Bottom { n } => {
            let formula = bottom(&Frontier::canonical(n + 1)).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{formula}");
            Ok(0)
        }
        Command::Top { n } => {
            let formula = top(&Frontier::canonical(n + 1)).map_err(|e| e.to_string())?;
            let _ = writeln!(out, "{formula}");
            Ok(0)
        }
        Command::Count {
            n,
            upto,
            csv,
            formula,
            oracle,
            limit,
        } => {
            let sizes: Vec<usize> = match (n, upto) {
                (Some(n), None) => vec![n],
                (None, Some(upper)) => (0..=upper).collect(),
                _ => return Err("pass either a single size or --upto N".to_owned()),
            };
            if formula && oracle {
                return Err("--formula and --oracle are mutually exclusive".to_owned());
            }
            let counts: Vec<BigUint> = if formula {
                sizes.iter().map(|&n| tutte_formula(n)).collect()
            } else if oracle {
                let cap = limit.unwrap_or(DEFAULT_ORACLE_LIMIT);
                sizes
                    .iter()
                    .map(|&n| {
                        count_intervals_oracle_limited(n, cap)
                            .map(BigUint::from)
                            .map_err(|e| e.to_string())
                    })
                    .collect::<Result<_, _>>()?
            } else {
                let table = dp_tables(sizes.iter().copied().max().unwrap_or(0));
                sizes.iter().map(|&n| table.intervals(n)).collect()
            };
            for (size, count) in sizes.iter().zip(&counts) {
                if csv {
                    let _ = writeln!(out, "{size},{count}");
                } else {
                    let _ = writeln!(out, "{count}");
                }
            }
            Ok(0)
        }
        Command::Series { order } => {
            let (r, l) = series_solve(order);
            for n in 0..=order {
                let _ = writeln!(out, "R[{n}] = {}", format_x_polynomial(r.row(n)));
            }
            for n in 0..=order {
                let _ = writeln!(out, "L1[{n}] = {}", l.coeff(n, 1));
            }
            Ok(0)
        }
        Command::Hasse { n, dot, limit } => {
            let frontier = Frontier::canonical(n + 1);
            let graph = hasse_limited(&frontier, limit.unwrap_or(DEFAULT_HASSE_LIMIT))
                .map_err(|e| e.to_string())?;
            let text = to_dot(&graph);
            match dot {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => {
                    let _ = write!(out, "{text}");
                }
            }
            Ok(0)
        }
        Command::Selfcheck { max_size } => {
            let max = max_size.unwrap_or(4);
            Ok(selfcheck(max, out))
        }
    }
}

fn parse(text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| e.to_string())
}

/// Exhaustive oracle-equivalence sweeps up to the given size; returns the
/// process exit code.
fn selfcheck(max_size: usize, out: &mut dyn Write) -> i32 {
    let mut all_ok = true;
    let mut report = |name: &str, outcome: Result<String, String>| match outcome {
        Ok(detail) => {
            let _ = writeln!(out, "ok   {name}: {detail}");
        }
        Err(detail) => {
            let _ = writeln!(out, "FAIL {name}: {detail}");
            all_ok = false;
        }
    };

    report("decision vs rotation closure", {
        let mut pairs = 0u64;
        let mut outcome = Ok(());
        'sweep: for n in 0..=max_size {
            let trees = crate::lattice::enumerate_trees(&Frontier::canonical(n + 1))
                .expect("non-empty frontier");
            for a in &trees {
                for b in &trees {
                    pairs += 1;
                    if decide(a, b) != leq_oracle(a, b) {
                        outcome = Err(format!("mismatch on {a} vs {b}"));
                        break 'sweep;
                    }
                }
            }
        }
        outcome.map(|()| format!("{pairs} pairs, size <= {max_size}"))
    });

    report("coherence (focused-derivation counts)", {
        let mut outcome = Ok(());
        'sweep: for n in 0..=max_size.min(5) {
            let trees = crate::lattice::enumerate_trees(&Frontier::canonical(n + 1))
                .expect("non-empty frontier");
            let mut total = 0u64;
            for a in &trees {
                for b in &trees {
                    let s = Sequent::new(Context::from(vec![a.clone()]), b.clone());
                    let count = count_focused(&s).expect("non-empty context");
                    if count > 1 || (count == 1) != leq_oracle(a, b) {
                        outcome = Err(format!("count {count} on {a} vs {b}"));
                        break 'sweep;
                    }
                    total += count;
                }
            }
            let intervals = dp_tables(n).intervals(n);
            if BigUint::from(total) != intervals {
                outcome = Err(format!(
                    "size {n}: {total} focused vs {intervals} intervals"
                ));
                break 'sweep;
            }
        }
        outcome.map(|()| format!("unique derivations, size <= {}", max_size.min(5)))
    });

    report("join/meet vs exhaustive scan", {
        let mut outcome = Ok(());
        'sweep: for n in 1..=max_size {
            let trees = crate::lattice::enumerate_trees(&Frontier::canonical(n + 1))
                .expect("non-empty frontier");
            for a in &trees {
                for b in &trees {
                    let join = join_formula(a, b).expect("same frontier");
                    let meet = meet_formula(a, b).expect("same frontier");
                    if join != join_oracle(a, b).expect("same frontier")
                        || meet != meet_oracle(a, b).expect("same frontier")
                    {
                        outcome = Err(format!("bound mismatch on {a} vs {b}"));
                        break 'sweep;
                    }
                }
            }
        }
        outcome.map(|()| format!("all pairs, size <= {max_size}"))
    });

    report("hasse edges vs transitive reduction", {
        let mut outcome = Ok(());
        for n in 1..=max_size {
            let frontier = Frontier::canonical(n + 1);
            let graph = hasse_limited(&frontier, frontier.len()).expect("within limit");
            let reduced = transitive_reduction(&graph.nodes, leq_oracle);
            if graph.edges != reduced.edges {
                outcome = Err(format!("edge sets differ at size {n}"));
                break;
            }
        }
        outcome.map(|()| format!("rotation edges are covers, size <= {max_size}"))
    });

    report("substitution order sanity", {
        let frontier = Frontier::canonical(max_size.min(4) + 1);
        let contexts = enumerate_contexts(&frontier);
        let atoms: Context = frontier
            .atoms()
            .iter()
            .map(|a| Formula::Atom(a.clone()))
            .collect();
        let mut outcome = Ok(());
        for context in &contexts {
            if !crate::lattice::leq_context(&atoms, context) {
                outcome = Err(format!("atom context not below {context}"));
                break;
            }
        }
        outcome.map(|()| format!("{} contexts over {} atoms", contexts.len(), frontier.len()))
    });

    report("interval counts agree", {
        let order = (2 * max_size).max(12);
        let table = dp_tables(order);
        let (_, l1) = series_solve(order);
        let mut outcome = Ok(());
        for n in 0..=order {
            let dp = table.intervals(n);
            if dp != l1.coeff(n, 1) || dp != tutte_formula(n) {
                outcome = Err(format!("routes disagree at size {n}"));
                break;
            }
        }
        if outcome.is_ok() {
            for n in 0..=max_size.min(DEFAULT_ORACLE_LIMIT) {
                let brute =
                    count_intervals_oracle_limited(n, DEFAULT_ORACLE_LIMIT).expect("within limit");
                if table.intervals(n) != BigUint::from(brute) {
                    outcome = Err(format!("oracle disagrees at size {n}"));
                    break;
                }
            }
        }
        outcome.map(|()| {
            format!(
                "dp = series = formula up to {order}, oracle up to {}",
                max_size.min(DEFAULT_ORACLE_LIMIT)
            )
        })
    });

    report("functional equation", {
        chapoton_check(12)
            .map(|()| "coefficients match through z^12".to_owned())
            .map_err(|e| e.to_string())
    });

    if all_ok {
        let _ = writeln!(out, "selfcheck passed");
        0
    } else {
        let _ = writeln!(out, "selfcheck FAILED");
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().map(OsString::from), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn decide_true_false_and_error() {
        let (code, out, _) = run_cli(&["decide", "(p*(q*r))*s", "p*(q*(r*s))"]);
        assert_eq!((code, out.as_str()), (0, "true\n"));

        let (code, out, _) = run_cli(&["decide", "p", "q"]);
        assert_eq!((code, out.as_str()), (1, "false\n"));

        let (code, _, err) = run_cli(&["decide", "p*", "q"]);
        assert_eq!(code, 2);
        assert!(err.contains("syntax error"));
    }

    #[test]
    fn count_upto_golden() {
        let (code, out, _) = run_cli(&["count", "--upto", "7"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1\n1\n3\n13\n68\n399\n2530\n16965\n");

        let (code, out, _) = run_cli(&["count", "4"]);
        assert_eq!((code, out.as_str()), (0, "68\n"));

        let (code, out, _) = run_cli(&["count", "--upto", "3", "--csv"]);
        assert_eq!((code, out.as_str()), (0, "0,1\n1,1\n2,3\n3,13\n"));

        let (code, out, _) = run_cli(&["count", "--upto", "5", "--formula"]);
        assert_eq!((code, out.as_str()), (0, "1\n1\n3\n13\n68\n399\n"));

        let (code, out, _) = run_cli(&["count", "3", "--oracle"]);
        assert_eq!((code, out.as_str()), (0, "13\n"));

        let (code, _, _) = run_cli(&["count"]);
        assert_eq!(code, 2);

        let (code, _, err) = run_cli(&["count", "9", "--oracle"]);
        assert_eq!(code, 2);
        assert!(err.contains("limit"));
    }

    #[test]
    fn derive_and_normalize_round_trip() {
        let (code, derived, _) = run_cli(&["derive", "(p*(q*r))*s", "p*(q*(r*s))", "--json"]);
        assert_eq!(code, 0);

        let dir = std::env::temp_dir().join("tamari-cli-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("derivation.json");
        fs::write(&path, &derived).unwrap();
        let (code, normalized, _) = run_cli(&["normalize", "--in", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert_eq!(normalized, derived);

        let (code, _, err) = run_cli(&["derive", "p*(q*r)", "(p*q)*r"]);
        assert_eq!(code, 1);
        assert!(err.contains("not derivable"));
    }

    #[test]
    fn derive_text_output() {
        let (code, out, _) = run_cli(&["derive", "p*q", "p*q"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "L: p*q ⊢ p*q\n  R: p, q ⊢ p*q\n    id: p ⊢ p\n    id: q ⊢ q\n"
        );
    }

    #[test]
    fn lattice_commands() {
        let (code, out, _) = run_cli(&["join", "(p*q)*r", "p*(q*r)"]);
        assert_eq!((code, out.as_str()), (0, "p*(q*r)\n"));

        let (code, out, _) = run_cli(&["meet", "(p*q)*r", "p*(q*r)"]);
        assert_eq!((code, out.as_str()), (0, "p*q*r\n"));

        let (code, _, err) = run_cli(&["join", "p*q", "q*p"]);
        assert_eq!(code, 2);
        assert!(err.contains("frontier mismatch"));

        let (code, out, _) = run_cli(&["bottom", "3"]);
        assert_eq!((code, out.as_str()), (0, "a1*a2*a3*a4\n"));

        let (code, out, _) = run_cli(&["top", "3"]);
        assert_eq!((code, out.as_str()), (0, "a1*(a2*(a3*a4))\n"));
    }

    #[test]
    fn hasse_and_series_output() {
        let (code, out, _) = run_cli(&["hasse", "2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "digraph {\n  n0 [label=\"a1*(a2*a3)\"];\n  n1 [label=\"a1*a2*a3\"];\n  n1 -> n0;\n}\n"
        );

        let (code, _, err) = run_cli(&["hasse", "9"]);
        assert_eq!(code, 2);
        assert!(err.contains("limit"));

        let (code, out, _) = run_cli(&["series", "--order", "2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "R[0] = x\nR[1] = x^2\nR[2] = x^2 + 2*x^3\nL1[0] = 1\nL1[1] = 1\nL1[2] = 3\n"
        );
    }

    #[test]
    fn selfcheck_passes_quickly() {
        let (code, out, _) = run_cli(&["selfcheck", "--max-size", "3"]);
        assert_eq!(code, 0, "selfcheck output:\n{out}");
        assert!(out.ends_with("selfcheck passed\n"));
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_cli(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("decide"));

        let (code, _, _) = run_cli(&["no-such-command"]);
        assert_eq!(code, 2);
    }
}
