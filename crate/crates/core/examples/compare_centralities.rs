//! Quasi-centrality next to the classical measures.
//!
//! ```sh
//! cargo run --example compare_centralities -- path/to/edges.csv
//! ```

use dowker_centrality::centrality::CompareParams;
use dowker_centrality::{compare_all, parse_edge_list};

fn main() -> dowker_centrality::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/star_edges.csv").to_string());
    let g = parse_edge_list(&std::fs::read_to_string(path)?)?;
    let reports = compare_all(&g, &CompareParams::default())?;

    print!("{:<6}", "node");
    for r in &reports {
        print!(" {:>17}", r.measure.name());
    }
    println!();
    for (i, node) in g.nodes().iter().enumerate() {
        print!("{node:<6}");
        for r in &reports {
            print!(" {:>17.4}", r.scores[i].1);
        }
        println!();
    }
    for r in &reports {
        println!("{:>17} top: {}", r.measure.name(), r.ranking()[0]);
    }
    Ok(())
}
