//! Maps the star network of the fixture to effective distances.
//!
//! ```sh
//! cargo run --example effective_distance
//! ```

use dowker_centrality::network::DEFAULT_EPSILON;
use dowker_centrality::{effective_distance, parse_edge_list};

fn main() -> dowker_centrality::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/star_edges.csv"))?;
    let g = parse_edge_list(&text)?;
    let m = effective_distance(&g, DEFAULT_EPSILON)?;

    println!("sentinel = {:.4}", m.sentinel());
    for (i, a) in m.nodes().iter().enumerate() {
        for (j, b) in m.nodes().iter().enumerate() {
            if g.has_edge(i, j) {
                println!("{a} -> {b}: flow {:>3}  distance {:.2}", g.weight(i, j), m.distance(i, j));
            }
        }
    }
    Ok(())
}
