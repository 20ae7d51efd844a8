//! Full pipeline on the bundled 32-node trade table: adjacency import,
//! quasi-centrality, impact dendrogram. Writes the artifacts to a
//! directory.
//!
//! ```sh
//! cargo run --release --example trade_pipeline -- out/
//! ```

use std::path::PathBuf;

use dowker_centrality::cli::{cmd_centrality, cmd_dendrogram, Command, InputFormat, RunConfig};

fn main() -> dowker_centrality::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "trade_out".into()));
    std::fs::create_dir_all(&out)?;
    let input = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/trade32_adjacency.csv").to_string();

    let mut cfg = RunConfig::new(Command::Centrality, vec![input.clone()]);
    cfg.format = InputFormat::Adjacency;
    for a in cmd_centrality(&cfg)? {
        std::fs::write(out.join("quasi.csv"), a.contents)?;
    }

    let mut cfg = RunConfig::new(Command::Dendrogram, vec![input]);
    cfg.format = InputFormat::Adjacency;
    let artifacts = cmd_dendrogram(&cfg)?;
    for a in &artifacts {
        std::fs::write(out.join(&a.name), &a.contents)?;
    }

    let times = artifacts.iter().find(|a| a.name == "join_times.csv").expect("always produced");
    println!("highest topological impact:");
    for line in times.contents.lines().skip(2).take(5) {
        println!("  {line}");
    }
    println!("wrote {} files to {}", artifacts.len() + 1, out.display());
    Ok(())
}
