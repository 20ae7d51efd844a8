//! Quasi-centrality and the classical centralities it is compared against.
//!
//! Quasi-centrality of `x` is the change in total dimension-zero
//! persistence caused by deleting `x`, plus the smallest distance between
//! `x` and any other node:
//!
//! ```text
//! C(x) = TP0(f(m, x)) - TP0(m) + mu(x)
//! ```
//!
//! The classical measures all read the adjacency with `A[i][j]` holding
//! the contribution of `j` to `i`, i.e. the weight of the edge `j -> i`.

use std::fmt;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::network::{effective_distance, DirectedNetwork, EffectiveDistanceNetwork, NetworkKind};
use crate::persistence::{h0_deaths_unionfind, EssentialDeath};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Quasi,
    InDegree,
    OutDegree,
    Katz,
    PageRank,
    PageRankReversed,
    HitsHub,
    HitsAuthority,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Quasi,
        Measure::InDegree,
        Measure::OutDegree,
        Measure::Katz,
        Measure::PageRank,
        Measure::PageRankReversed,
        Measure::HitsHub,
        Measure::HitsAuthority,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Quasi => "quasi",
            Measure::InDegree => "in_degree",
            Measure::OutDegree => "out_degree",
            Measure::Katz => "katz",
            Measure::PageRank => "pagerank",
            Measure::PageRankReversed => "pagerank_reversed",
            Measure::HitsHub => "hits_hub",
            Measure::HitsAuthority => "hits_authority",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-node scores for one measure, in network node order.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityReport {
    pub measure: Measure,
    pub scores: Vec<(String, f64)>,
    pub params: Vec<(String, f64)>,
}

impl CentralityReport {
    pub fn score(&self, label: &str) -> Option<f64> {
        self.scores.iter().find(|(n, _)| n == label).map(|&(_, s)| s)
    }

    pub fn values(&self) -> Vec<f64> {
        self.scores.iter().map(|&(_, s)| s).collect()
    }

    /// Labels sorted by descending score; ties keep node order.
    pub fn ranking(&self) -> Vec<&str> {
        let mut idx: Vec<usize> = (0..self.scores.len()).collect();
        idx.sort_by(|&a, &b| self.scores[b].1.total_cmp(&self.scores[a].1).then(a.cmp(&b)));
        idx.into_iter().map(|i| self.scores[i].0.as_str()).collect()
    }

    fn from_values(
        measure: Measure,
        nodes: &[String],
        values: Vec<f64>,
        params: Vec<(&str, f64)>,
    ) -> Self {
        Self {
            measure,
            scores: nodes.iter().cloned().zip(values).collect(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

struct OrderedMap<'a>(&'a [(String, f64)]);

impl Serialize for OrderedMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for CentralityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("measure", self.measure.name())?;
        map.serialize_entry("scores", &OrderedMap(&self.scores))?;
        map.serialize_entry("params", &OrderedMap(&self.params))?;
        map.end()
    }
}

/// Quasi-centrality of every node. Flow networks are first mapped through
/// the effective-distance transform with `epsilon`; dissimilarity networks
/// are used as given.
pub fn quasi_centrality(g: &DirectedNetwork, epsilon: f64) -> Result<CentralityReport> {
    match g.kind() {
        NetworkKind::Flow => {
            let m = effective_distance(g, epsilon)?;
            let mut report = quasi_centrality_distances(&m, EssentialDeath::Cap)?;
            report.params.insert(0, ("epsilon".into(), epsilon));
            Ok(report)
        }
        NetworkKind::Dissimilarity => {
            let m = EffectiveDistanceNetwork::from_dissimilarity(g.clone())?;
            quasi_centrality_distances(&m, EssentialDeath::Cap)
        }
    }
}

/// Quasi-centrality on a distance network.
///
/// Deaths shared by the full and the node-deleted diagram cancel exactly
/// before summation, so a node whose removal only drops its own merge
/// scores exactly zero.
pub fn quasi_centrality_distances(
    m: &EffectiveDistanceNetwork,
    essential: EssentialDeath,
) -> Result<CentralityReport> {
    if m.len() < 2 {
        return Err(Error::Domain(
            "quasi-centrality needs at least two nodes".into(),
        ));
    }
    let baseline = finite_h0_deaths(m, essential)?;
    let values = m
        .nodes()
        .par_iter()
        .enumerate()
        .map(|(x, label)| {
            let deleted = m.delete_node(label)?;
            let deaths = finite_h0_deaths(&deleted, essential)?;
            let mu = m.min_incident_distance_at(x)?;
            let (only_deleted, only_full) = multiset_difference(&deaths, &baseline);
            Ok(only_deleted.iter().sum::<f64>() + mu - only_full.iter().sum::<f64>())
        })
        .collect::<Result<Vec<f64>>>()?;
    let params = vec![
        ("sentinel", m.sentinel()),
        ("essential_at_cap", (essential == EssentialDeath::Cap) as u8 as f64),
    ];
    Ok(CentralityReport::from_values(
        Measure::Quasi,
        m.nodes(),
        values,
        params,
    ))
}

fn finite_h0_deaths(m: &EffectiveDistanceNetwork, essential: EssentialDeath) -> Result<Vec<f64>> {
    let mut deaths = h0_deaths_unionfind(m)?;
    if essential == EssentialDeath::Infinite {
        // the surviving component is the last (largest) entry
        deaths.pop();
    }
    Ok(deaths)
}

/// Elements of sorted `a` not matched in sorted `b`, and vice versa.
fn multiset_difference(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].total_cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                only_a.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                only_b.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    only_a.extend_from_slice(&a[i..]);
    only_b.extend_from_slice(&b[j..]);
    (only_a, only_b)
}

/// `W[i][j]` is the weight of the edge `i -> j`; distance networks count
/// each real relation as weight 1.
fn edge_weights(g: &DirectedNetwork) -> Vec<Vec<f64>> {
    let n = g.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if !g.has_edge(i, j) {
                        0.0
                    } else if g.kind() == NetworkKind::Flow {
                        g.weight(i, j)
                    } else {
                        1.0
                    }
                })
                .collect()
        })
        .collect()
}

/// In- and out-degree: number of real incoming and outgoing edges.
pub fn degree_centrality(g: &DirectedNetwork) -> (CentralityReport, CentralityReport) {
    let n = g.len();
    let mut indeg = vec![0.0; n];
    let mut outdeg = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            if g.has_edge(i, j) {
                outdeg[i] += 1.0;
                indeg[j] += 1.0;
            }
        }
    }
    (
        CentralityReport::from_values(Measure::InDegree, g.nodes(), indeg, vec![]),
        CentralityReport::from_values(Measure::OutDegree, g.nodes(), outdeg, vec![]),
    )
}

#[derive(Clone, Copy, Debug)]
pub struct KatzParams {
    pub alpha: f64,
    pub beta: f64,
    /// Count every edge as 1 instead of using its weight.
    pub binary: bool,
}

impl Default for KatzParams {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            beta: 1.0,
            binary: true,
        }
    }
}

/// Solves `x = alpha * A x + beta` exactly and scales to unit L2 norm.
pub fn katz(g: &DirectedNetwork, p: &KatzParams) -> Result<CentralityReport> {
    if !(p.beta > 0.0) {
        return Err(Error::Domain(format!("Katz beta must be positive, got {}", p.beta)));
    }
    if !(p.alpha > 0.0) {
        return Err(Error::Domain(format!("Katz alpha must be positive, got {}", p.alpha)));
    }
    let n = g.len();
    let w = edge_weights(g);
    let a = DMatrix::from_fn(n, n, |i, j| {
        let v = w[j][i];
        if p.binary && v > 0.0 {
            1.0
        } else {
            v
        }
    });
    // A is nonnegative, so the series converges (alpha * rho(A) < 1) exactly
    // when I - alpha A is a nonsingular M-matrix. Then the solution is
    // beta times a sum of nonnegative terms starting at 1, so every entry is
    // at least beta; any other outcome means the series diverges.
    let system = DMatrix::identity(n, n) - &a * p.alpha;
    let rhs = nalgebra::DVector::from_element(n, p.beta);
    let x = system.lu().solve(&rhs).unwrap_or_else(|| rhs.map(|_| f64::NAN));
    let floor = x.iter().copied().fold(f64::INFINITY, f64::min);
    if !(floor.is_finite() && floor >= p.beta * (1.0 - 1e-9)) {
        return Err(Error::Convergence {
            measure: "katz",
            iterations: 0,
            residual: floor,
        });
    }
    let values = l2_normalized(x.iter().copied().collect());
    Ok(CentralityReport::from_values(
        Measure::Katz,
        g.nodes(),
        values,
        vec![
            ("alpha", p.alpha),
            ("beta", p.beta),
            ("binary", p.binary as u8 as f64),
        ],
    ))
}

#[derive(Clone, Copy, Debug)]
pub struct PageRankParams {
    pub alpha: f64,
    /// Teleport term; `None` means `(1 - alpha) / n`.
    pub beta: Option<f64>,
    pub reversed: bool,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            alpha: 0.85,
            beta: None,
            reversed: false,
            tolerance: 1e-12,
            max_iterations: 10_000,
        }
    }
}

/// Weighted PageRank by power iteration, scaled to sum to one.
///
/// Mass on nodes without outgoing weight is spread uniformly.
pub fn pagerank(g: &DirectedNetwork, p: &PageRankParams) -> Result<CentralityReport> {
    if !(p.alpha > 0.0 && p.alpha < 1.0) {
        return Err(Error::Domain(format!(
            "PageRank alpha must lie in (0, 1), got {}",
            p.alpha
        )));
    }
    let transposed;
    let net = if p.reversed {
        transposed = g.transpose();
        &transposed
    } else {
        g
    };
    let n = net.len();
    let nf = n as f64;
    let beta = p.beta.unwrap_or((1.0 - p.alpha) / nf);
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("PageRank beta must be positive, got {beta}")));
    }
    let w = edge_weights(net);
    let out_strength: Vec<f64> = w.iter().map(|row| row.iter().fold(0.0, |a, b| a + b)).collect();

    let mut x = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=p.max_iterations {
        let dangling: f64 = (0..n).filter(|&j| out_strength[j] == 0.0).map(|j| x[j]).fold(0.0, |a, b| a + b);
        next.iter_mut().for_each(|v| *v = p.alpha * dangling / nf + beta);
        for j in 0..n {
            if out_strength[j] > 0.0 {
                let share = p.alpha * x[j] / out_strength[j];
                for i in 0..n {
                    if w[j][i] > 0.0 {
                        next[i] += share * w[j][i];
                    }
                }
            }
        }
        let total: f64 = next.iter().fold(0.0, |a, b| a + b);
        next.iter_mut().for_each(|v| *v /= total);
        residual = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).fold(0.0, |a, b| a + b);
        std::mem::swap(&mut x, &mut next);
        if residual < p.tolerance {
            let measure = if p.reversed {
                Measure::PageRankReversed
            } else {
                Measure::PageRank
            };
            return Ok(CentralityReport::from_values(
                measure,
                g.nodes(),
                x,
                vec![
                    ("alpha", p.alpha),
                    ("beta", beta),
                    ("reversed", p.reversed as u8 as f64),
                    ("tolerance", p.tolerance),
                    ("iterations", iteration as f64),
                ],
            ));
        }
    }
    Err(Error::Convergence {
        measure: "pagerank",
        iterations: p.max_iterations,
        residual,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct HitsParams {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for HitsParams {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 10_000,
        }
    }
}

/// Weighted HITS: hubs `y = W x`, authorities `x = W^T y`, both kept at
/// unit L2 norm. Returns `(hubs, authorities)`.
pub fn hits(g: &DirectedNetwork, p: &HitsParams) -> Result<(CentralityReport, CentralityReport)> {
    let n = g.len();
    let w = edge_weights(g);
    if w.iter().flatten().all(|&v| v == 0.0) {
        return Err(Error::Domain("HITS needs at least one edge".into()));
    }
    let mut hubs = vec![1.0 / (n as f64).sqrt(); n];
    let mut auth = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=p.max_iterations {
        let new_auth = l2_normalized((0..n).map(|j| (0..n).map(|i| w[i][j] * hubs[i]).fold(0.0, |a, b| a + b)).collect());
        let new_hubs = l2_normalized((0..n).map(|i| (0..n).map(|j| w[i][j] * new_auth[j]).fold(0.0, |a, b| a + b)).collect());
        residual = max_abs_diff(&new_auth, &auth) + max_abs_diff(&new_hubs, &hubs);
        auth = new_auth;
        hubs = new_hubs;
        if residual < p.tolerance {
            let params = vec![("tolerance", p.tolerance), ("iterations", iteration as f64)];
            return Ok((
                CentralityReport::from_values(Measure::HitsHub, g.nodes(), hubs, params.clone()),
                CentralityReport::from_values(Measure::HitsAuthority, g.nodes(), auth, params),
            ));
        }
    }
    Err(Error::Convergence {
        measure: "hits",
        iterations: p.max_iterations,
        residual,
    })
}

fn l2_normalized(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    v
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Parameters for running every measure side by side.
#[derive(Clone, Copy, Debug)]
pub struct CompareParams {
    pub epsilon: f64,
    pub katz: KatzParams,
    pub pagerank: PageRankParams,
    pub hits: HitsParams,
}

impl Default for CompareParams {
    fn default() -> Self {
        Self {
            epsilon: crate::network::DEFAULT_EPSILON,
            katz: KatzParams::default(),
            pagerank: PageRankParams::default(),
            hits: HitsParams::default(),
        }
    }
}

/// All eight measures, in [`Measure::ALL`] order.
pub fn compare_all(g: &DirectedNetwork, p: &CompareParams) -> Result<Vec<CentralityReport>> {
    let quasi = quasi_centrality(g, p.epsilon)?;
    let (indeg, outdeg) = degree_centrality(g);
    let katz = katz(g, &p.katz)?;
    let forward = pagerank(g, &PageRankParams { reversed: false, ..p.pagerank })?;
    let reversed = pagerank(g, &PageRankParams { reversed: true, ..p.pagerank })?;
    let (hub, authority) = hits(g, &p.hits)?;
    Ok(vec![quasi, indeg, outdeg, katz, forward, reversed, hub, authority])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{parse_edge_list, DEFAULT_EPSILON};
    use approx::assert_abs_diff_eq;

    fn star() -> DirectedNetwork {
        parse_edge_list(
            "source,target,weight\nx3,x1,2\nx3,x2,1\nx3,x5,1\nx3,x6,4\nx3,x4,3\nx4,x6,6\n",
        )
        .unwrap()
    }

    fn flow(n: usize, edges: &[(usize, usize, f64)]) -> DirectedNetwork {
        let mut w = vec![vec![0.0; n]; n];
        for &(i, j, v) in edges {
            w[i][j] = v;
        }
        DirectedNetwork::new((0..n).map(|i| format!("n{i}")).collect(), w, NetworkKind::Flow).unwrap()
    }

    #[test]
    fn quasi_on_star_flows() {
        let r = quasi_centrality(&star(), DEFAULT_EPSILON).unwrap();
        for x in ["x1", "x2", "x4", "x5"] {
            assert_eq!(r.score(x), Some(0.0), "{x}");
        }
        // exact transform: C(x6) = 1 - ln(3/11) + 1 - ... rounds to 0.29
        assert_abs_diff_eq!(r.score("x6").unwrap(), 0.29, epsilon = 0.005);
        assert_abs_diff_eq!(r.score("x3").unwrap(), 62.578, epsilon = 2e-3);
        assert_eq!(r.ranking()[..2], ["x3", "x6"]);
    }

    #[test]
    fn quasi_rejects_single_node() {
        let g = flow(1, &[]);
        assert!(matches!(quasi_centrality(&g, 0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn quasi_is_flow_scale_invariant() {
        let g = star();
        let scaled = DirectedNetwork::new(
            g.nodes().to_vec(),
            g.weights().iter().map(|r| r.iter().map(|w| w * 7.25).collect()).collect(),
            NetworkKind::Flow,
        )
        .unwrap();
        let a = quasi_centrality(&g, DEFAULT_EPSILON).unwrap();
        let b = quasi_centrality(&scaled, DEFAULT_EPSILON).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-9);
        }
    }

    #[test]
    fn isolated_node_scores_zero() {
        let g = flow(4, &[(0, 1, 2.0), (1, 2, 1.0)]);
        let r = quasi_centrality(&g, 1e-6).unwrap();
        assert_eq!(r.score("n3"), Some(0.0));
    }

    #[test]
    fn infinite_essential_mode_agrees_up_to_cap() {
        let m = effective_distance(&star(), DEFAULT_EPSILON).unwrap();
        let capped = quasi_centrality_distances(&m, EssentialDeath::Cap).unwrap();
        let open = quasi_centrality_distances(&m, EssentialDeath::Infinite).unwrap();
        for (a, b) in capped.values().iter().zip(open.values()) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn degree_examples() {
        let (indeg, outdeg) = degree_centrality(&star());
        assert_eq!(outdeg.score("x3"), Some(5.0));
        assert_eq!(indeg.score("x6"), Some(2.0));

        let (i, o) = degree_centrality(&flow(3, &[]));
        assert!(i.values().iter().chain(o.values().iter()).all(|&v| v == 0.0));

        let n = 5;
        let all: Vec<_> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j, 1.0)))
            .collect();
        let (i, o) = degree_centrality(&flow(n, &all));
        assert!(i.values().iter().chain(o.values().iter()).all(|&v| v == 4.0));
    }

    #[test]
    fn katz_edgeless_is_uniform() {
        let r = katz(&flow(4, &[]), &KatzParams::default()).unwrap();
        for v in r.values() {
            assert_abs_diff_eq!(v, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn katz_two_nodes_closed_form() {
        let r = katz(&flow(2, &[(0, 1, 3.0)]), &KatzParams { alpha: 0.1, beta: 1.0, binary: true })
            .unwrap();
        let norm = (1.0f64 + 1.1 * 1.1).sqrt();
        assert_abs_diff_eq!(r.values()[0], 1.0 / norm, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values()[1], 1.1 / norm, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values()[0], 0.673, epsilon = 1e-3);
        assert_abs_diff_eq!(r.values()[1], 0.740, epsilon = 1e-3);
    }

    #[test]
    fn katz_rejects_alpha_beyond_radius() {
        // 2-cycle has spectral radius 1
        let g = flow(2, &[(0, 1, 1.0), (1, 0, 1.0)]);
        assert!(katz(&g, &KatzParams { alpha: 0.5, ..Default::default() }).is_ok());
        assert!(matches!(
            katz(&g, &KatzParams { alpha: 1.0, ..Default::default() }),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn pagerank_symmetric_pair() {
        let r = pagerank(&flow(2, &[(0, 1, 2.0), (1, 0, 2.0)]), &PageRankParams::default()).unwrap();
        for v in r.values() {
            assert_abs_diff_eq!(v, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn pagerank_edgeless_uniform() {
        let r = pagerank(&flow(5, &[]), &PageRankParams::default()).unwrap();
        for v in r.values() {
            assert_abs_diff_eq!(v, 0.2, epsilon = 1e-12);
        }
    }

    #[test]
    fn pagerank_star_into_hub() {
        // hand-solved stationary equations for three leaves feeding a hub
        let a = 0.85;
        let g = flow(4, &[(1, 0, 1.0), (2, 0, 1.0), (3, 0, 1.0)]);
        let r = pagerank(&g, &PageRankParams::default()).unwrap();
        let hub = (1.0 + 3.0 * a) / (4.0 + 3.0 * a);
        let leaf = 1.0 / (4.0 + 3.0 * a);
        assert_abs_diff_eq!(r.values()[0], hub, epsilon = 1e-10);
        for v in &r.values()[1..] {
            assert_abs_diff_eq!(*v, leaf, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(r.values()[0] / r.values()[1], 1.0 + 3.0 * a, epsilon = 1e-9);
    }

    #[test]
    fn pagerank_reversed_matches_transpose() {
        let g = star();
        let rev = pagerank(&g, &PageRankParams { reversed: true, ..Default::default() }).unwrap();
        let tr = pagerank(&g.transpose(), &PageRankParams::default()).unwrap();
        assert_eq!(rev.values(), tr.values());
        assert_abs_diff_eq!(rev.values().iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pagerank_non_convergence_is_reported() {
        let g = star();
        let err = pagerank(&g, &PageRankParams { max_iterations: 2, ..Default::default() }).unwrap_err();
        assert!(matches!(err, Error::Convergence { iterations: 2, .. }));
        assert_eq!(err.exit_code(), 4);
    }

    #[test]
    fn hits_single_edge() {
        let (h, a) = hits(&flow(3, &[(0, 1, 5.0)]), &HitsParams::default()).unwrap();
        assert_eq!(h.values(), vec![1.0, 0.0, 0.0]);
        assert_eq!(a.values(), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn hits_out_star() {
        let k = 4;
        let edges: Vec<_> = (1..=k).map(|j| (0, j, 1.0)).collect();
        let (h, a) = hits(&flow(k + 1, &edges), &HitsParams::default()).unwrap();
        assert_abs_diff_eq!(h.values()[0], 1.0, epsilon = 1e-12);
        for v in &a.values()[1..] {
            assert_abs_diff_eq!(*v, 1.0 / (k as f64).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn hits_star_ordering() {
        let (h, a) = hits(&star(), &HitsParams::default()).unwrap();
        let hub = |x| h.score(x).unwrap();
        assert!(hub("x4") > hub("x3") && hub("x3") > 0.0);
        for x in ["x1", "x2", "x5", "x6"] {
            assert_eq!(hub(x), 0.0);
        }
        assert_eq!(a.ranking()[0], "x6");
        let norm: f64 = h.values().iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hits_rejects_edgeless() {
        assert!(matches!(hits(&flow(3, &[]), &HitsParams::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn compare_emits_all_measures() {
        let reports = compare_all(&star(), &CompareParams::default()).unwrap();
        let measures: Vec<_> = reports.iter().map(|r| r.measure).collect();
        assert_eq!(measures, Measure::ALL);
    }

    #[test]
    fn report_json_keeps_node_order() {
        let (_, outdeg) = degree_centrality(&star());
        let json = serde_json::to_string(&outdeg).unwrap();
        assert!(json.starts_with(r#"{"measure":"out_degree","scores":{"x3":5.0,"x1":0.0"#), "{json}");
    }
}
