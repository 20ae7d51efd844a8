//! Topological centrality for directed weighted networks.
//!
//! Flow networks are mapped to effective distances, turned into Dowker
//! sink filtrations and summarized by persistence diagrams. From those
//! diagrams the crate derives quasi-centrality scores and a single-linkage
//! hierarchy of nodes ordered by how much their removal reshapes the
//! network's topology. Classical centralities are included for comparison.

pub mod bottleneck;
pub mod centrality;
pub mod cli;
pub mod dowker;
pub mod error;
pub mod hierarchy;
pub mod matching;
pub mod network;
pub mod persistence;
pub mod render;
pub mod union_find;

pub use bottleneck::{bottleneck_distance, bottleneck_oracle, diagram_distance, Matching};
pub use centrality::{
    compare_all, degree_centrality, hits, katz, pagerank, quasi_centrality, CentralityReport, Measure,
};
pub use dowker::{build_filtration, simplex_value, FilteredComplex, Simplex};
pub use error::{Error, Result};
pub use hierarchy::{build_object_set, single_linkage, Dendrogram, LabeledObjectSet, STANDARD};
pub use network::{
    effective_distance, parse_adjacency_csv, parse_edge_list, DirectedNetwork,
    EffectiveDistanceNetwork, NetworkKind,
};
pub use persistence::{
    compute_persistence, h0_deaths_unionfind, total_persistence, Barcode, PersistenceDiagram,
};
