//! Hasse diagrams of the rotation lattices, exported as DOT.
//!
//! ```bash
//! cargo run -p tamari --example hasse_dot            # pentagon to stdout
//! cargo run -p tamari --example hasse_dot -- 4 t4.dot
//! ```

use tamari::lattice::{hasse, to_dot};
use tamari::term::Frontier;

fn main() {
    let mut args = std::env::args().skip(1);
    let size: usize = args
        .next()
        .map(|s| s.parse().expect("size must be a number"))
        .unwrap_or(3);
    let graph = hasse(&Frontier::canonical(size + 1)).expect("size within the default limit");
    eprintln!(
        "lattice of size {size}: {} trees, {} covering edges",
        graph.nodes.len(),
        graph.edges.len()
    );
    let dot = to_dot(&graph);
    match args.next() {
        Some(path) => {
            std::fs::write(&path, dot).expect("write DOT file");
            eprintln!("wrote {path}");
        }
        None => print!("{dot}"),
    }
}
