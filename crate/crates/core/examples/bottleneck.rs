//! Bottleneck distance between two hand-written diagrams, with the optimal
//! matching and the brute-force check.

use dowker_centrality::bottleneck::{bottleneck_matching, Endpoint};
use dowker_centrality::{bottleneck_oracle, PersistenceDiagram};

fn show(e: Endpoint, d: &PersistenceDiagram) -> String {
    match e {
        Endpoint::Point(i) => {
            let b = d.bars()[i];
            format!("({:.1}, {:.1})", b.birth, b.death)
        }
        Endpoint::Diagonal => "diagonal".into(),
    }
}

fn main() -> dowker_centrality::Result<()> {
    let a = PersistenceDiagram::from_points(1, 10.0, &[(0.0, 4.0), (1.0, 2.0), (3.0, 9.0)])?;
    let b = PersistenceDiagram::from_points(1, 10.0, &[(0.5, 4.5), (3.0, 7.0)])?;

    let m = bottleneck_matching(&a, &b)?;
    println!("bottleneck distance {:.3}", m.cost);
    for &(x, y) in &m.pairs {
        println!("  {} <-> {}", show(x, &a), show(y, &b));
    }
    println!("oracle agrees: {}", bottleneck_oracle(&a, &b)? == m.cost);
    Ok(())
}
