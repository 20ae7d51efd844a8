#![allow(dead_code)]

use dowker_centrality::{DirectedNetwork, EffectiveDistanceNetwork, NetworkKind};
use proptest::prelude::*;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Flow matrix with roughly half the off-diagonal entries present.
pub fn flow_network(max_n: usize) -> impl Strategy<Value = DirectedNetwork> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![Just(0.0), 0.125f64..64.0], n * n).prop_map(move |flat| {
            let w = (0..n)
                .map(|i| (0..n).map(|j| if i == j { 0.0 } else { flat[i * n + j] }).collect())
                .collect();
            DirectedNetwork::new(labels(n), w, NetworkKind::Flow).unwrap()
        })
    })
}

pub const SENTINEL: f64 = 12.0;

/// Distance network; entries drawn from a small grid so ties are common,
/// with some pairs at the sentinel.
pub fn distance_network(min_n: usize, max_n: usize) -> impl Strategy<Value = EffectiveDistanceNetwork> {
    (min_n..=max_n).prop_flat_map(|n| {
        prop::collection::vec(prop_oneof![Just(SENTINEL), (1u32..40).prop_map(|k| k as f64 * 0.25)], n * n)
            .prop_map(move |flat| {
                let d = (0..n)
                    .map(|i| (0..n).map(|j| if i == j { 0.0 } else { flat[i * n + j] }).collect())
                    .collect();
                EffectiveDistanceNetwork::from_matrix(labels(n), d, SENTINEL).unwrap()
            })
    })
}

pub fn symmetric_network(max_n: usize) -> impl Strategy<Value = EffectiveDistanceNetwork> {
    distance_network(2, max_n).prop_map(|m| {
        let n = m.len();
        let d = (0..n)
            .map(|i| (0..n).map(|j| m.distance(i.min(j), i.max(j))).collect())
            .collect();
        EffectiveDistanceNetwork::from_matrix(labels(n), d, SENTINEL).unwrap()
    })
}
