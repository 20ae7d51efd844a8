//! Lists the Dowker sink filtration of a small network, simplex by simplex.

use dowker_centrality::network::DEFAULT_EPSILON;
use dowker_centrality::{build_filtration, effective_distance, parse_edge_list};

fn main() -> dowker_centrality::Result<()> {
    let g = parse_edge_list(
        "source,target,weight\n\
         a,b,5\n\
         b,c,3\n\
         c,a,4\n\
         a,c,1\n\
         c,d,2\n",
    )?;
    let m = effective_distance(&g, DEFAULT_EPSILON)?;
    let f = build_filtration(&m, 2)?;

    println!("{} simplices, cap {:.3}", f.len(), f.cap());
    for s in f.simplices() {
        let names: Vec<&str> = s.vertices().iter().map(|&v| f.labels()[v].as_str()).collect();
        println!("dim {}  {:<12} {:.4}", s.dim(), names.join(","), s.value());
    }
    Ok(())
}
