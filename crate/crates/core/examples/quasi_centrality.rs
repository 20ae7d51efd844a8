//! Quasi-centrality of the star network.
//!
//! Runs twice: once from the raw flows, once from the two-decimal distance
//! table shipped in `fixtures/star_distances.json`.

use dowker_centrality::centrality::quasi_centrality_distances;
use dowker_centrality::network::DEFAULT_EPSILON;
use dowker_centrality::persistence::EssentialDeath;
use dowker_centrality::{parse_edge_list, quasi_centrality, DirectedNetwork, EffectiveDistanceNetwork};

const DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn main() -> dowker_centrality::Result<()> {
    let flows = parse_edge_list(&std::fs::read_to_string(format!("{DIR}/star_edges.csv"))?)?;
    let exact = quasi_centrality(&flows, DEFAULT_EPSILON)?;

    let table = DirectedNetwork::from_json(&std::fs::read_to_string(format!("{DIR}/star_distances.json"))?)?;
    let rounded = quasi_centrality_distances(&EffectiveDistanceNetwork::from_dissimilarity(table)?, EssentialDeath::Cap)?;

    println!("{:<4} {:>12} {:>12}", "node", "from flows", "from table");
    for (node, c) in &exact.scores {
        println!("{node:<4} {c:>12.6} {:>12.6}", rounded.score(node).unwrap_or(f64::NAN));
    }
    println!("ranking: {}", exact.ranking().join(" > "));
    Ok(())
}
