//! Topological-impact dendrogram of the star network.
//!
//! Prints the Newick tree, the join time of every node with `STANDARD`,
//! and the blocks at a few scales.

use dowker_centrality::bottleneck::DEFAULT_DIMS;
use dowker_centrality::hierarchy::ObjectSetOptions;
use dowker_centrality::network::DEFAULT_EPSILON;
use dowker_centrality::{build_object_set, effective_distance, parse_edge_list, single_linkage, STANDARD};

fn main() -> dowker_centrality::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/star_edges.csv"))?;
    let m = effective_distance(&parse_edge_list(&text)?, DEFAULT_EPSILON)?;

    let objects = build_object_set(&m, &ObjectSetOptions::default())?;
    let dist = objects.distance_matrix(&DEFAULT_DIMS)?;
    let tree = single_linkage(&dist, objects.labels())?;

    println!("{}", tree.to_newick());
    println!("\njoin time with {STANDARD}:");
    for (node, t) in tree.join_times(STANDARD)? {
        println!("  {node:<4} {t:.4}");
    }
    for t in [0.0, 0.5, 1.0, tree.final_height()] {
        println!("blocks at t = {t:.3}: {:?}", tree.partition(t));
    }
    Ok(())
}
