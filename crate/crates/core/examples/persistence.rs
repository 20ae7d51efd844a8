//! Persistence diagrams of the star network, with and without its hub.
//!
//! Deleting the hub disconnects everything, so the dimension-zero bars of
//! the remaining leaves all die at the sentinel.

use dowker_centrality::network::DEFAULT_EPSILON;
use dowker_centrality::{
    build_filtration, compute_persistence, effective_distance, h0_deaths_unionfind,
    parse_edge_list, total_persistence, EffectiveDistanceNetwork,
};

fn report(name: &str, m: &EffectiveDistanceNetwork) -> dowker_centrality::Result<()> {
    let f = build_filtration(m, 2)?;
    let diagrams = compute_persistence(&f, 1)?;
    println!("{name}");
    for d in &diagrams {
        let bars: Vec<String> = d
            .bars()
            .iter()
            .map(|b| format!("[{:.2}, {:.2}{})", b.birth, b.death, if b.essential { "*" } else { "" }))
            .collect();
        println!("  H{}: {}  (total {:.3})", d.dimension(), bars.join(" "), total_persistence(d));
    }
    let fast = h0_deaths_unionfind(m)?;
    println!("  union-find H0 deaths: {fast:.2?}");
    Ok(())
}

fn main() -> dowker_centrality::Result<()> {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/star_edges.csv"))?;
    let m = effective_distance(&parse_edge_list(&text)?, DEFAULT_EPSILON)?;
    report("full network", &m)?;
    report("without x3", &m.delete_node("x3")?)?;
    Ok(())
}
