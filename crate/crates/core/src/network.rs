//! Directed weighted networks, file ingestion and the effective-distance
//! transform.
//!
//! A [`DirectedNetwork`] stores a dense weight matrix over labeled nodes.
//! Flow networks carry raw interaction volumes (zero means "no edge");
//! dissimilarity networks carry distances that vanish only on the diagonal,
//! with absent relations encoded by a sentinel distance.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default flow fraction imputed for absent edges; `1 - ln(1e-10)` is
/// roughly 24.026.
pub const DEFAULT_EPSILON: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetworkKind {
    /// Raw flow volumes; zero off-diagonal entries mean no edge.
    Flow,
    /// Distances; strictly positive off the diagonal.
    Dissimilarity,
}

/// Which total a flow is divided by before taking the logarithm.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Fraction of the source's total outgoing flow.
    #[default]
    SourceOutflow,
    /// Fraction of the target's total incoming flow.
    TargetInflow,
}

/// Node-labeled directed weighted graph with a dense weight matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNetwork")]
pub struct DirectedNetwork {
    nodes: Vec<String>,
    weights: Vec<Vec<f64>>,
    kind: NetworkKind,
    sentinel: Option<f64>,
}

#[derive(Deserialize)]
struct RawNetwork {
    nodes: Vec<String>,
    weights: Vec<Vec<f64>>,
    kind: NetworkKind,
    #[serde(default)]
    sentinel: Option<f64>,
}

impl TryFrom<RawNetwork> for DirectedNetwork {
    type Error = Error;

    fn try_from(raw: RawNetwork) -> Result<Self> {
        DirectedNetwork::with_sentinel(raw.nodes, raw.weights, raw.kind, raw.sentinel)
    }
}

impl DirectedNetwork {
    pub fn new(nodes: Vec<String>, weights: Vec<Vec<f64>>, kind: NetworkKind) -> Result<Self> {
        Self::with_sentinel(nodes, weights, kind, None)
    }

    /// Builds a network, checking every structural invariant.
    ///
    /// A sentinel is only meaningful for dissimilarity networks, where it
    /// must dominate every off-diagonal distance.
    pub fn with_sentinel(
        nodes: Vec<String>,
        weights: Vec<Vec<f64>>,
        kind: NetworkKind,
        sentinel: Option<f64>,
    ) -> Result<Self> {
        let n = nodes.len();
        if n == 0 {
            return Err(Error::EmptyNetwork);
        }
        if weights.len() != n || weights.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!(
                "weight matrix must be {n}x{n} to match the node list"
            )));
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, label) in nodes.iter().enumerate() {
            if let Some(prev) = seen.insert(label.as_str(), i) {
                return Err(Error::Label(format!(
                    "label `{label}` appears at positions {prev} and {i}"
                )));
            }
        }
        for (i, row) in weights.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::Domain(format!(
                        "weight {} -> {} must be a finite nonnegative number, got {w}",
                        nodes[i], nodes[j]
                    )));
                }
                if i == j && w != 0.0 {
                    return Err(Error::Domain(format!(
                        "self-loop on {} has nonzero weight {w}",
                        nodes[i]
                    )));
                }
                if i != j && kind == NetworkKind::Dissimilarity && w == 0.0 {
                    return Err(Error::Domain(format!(
                        "dissimilarity {} -> {} is zero between distinct nodes",
                        nodes[i], nodes[j]
                    )));
                }
            }
        }
        match (kind, sentinel) {
            (NetworkKind::Flow, Some(_)) => {
                return Err(Error::Domain("flow networks do not carry a sentinel".into()));
            }
            (NetworkKind::Dissimilarity, Some(s)) => {
                if !s.is_finite() || s <= 0.0 {
                    return Err(Error::Domain(format!("sentinel must be positive, got {s}")));
                }
                let max = max_off_diagonal(&weights);
                if max > s {
                    return Err(Error::Domain(format!(
                        "sentinel {s} is smaller than the largest distance {max}"
                    )));
                }
            }
            _ => {}
        }
        Ok(Self {
            nodes,
            weights,
            kind,
            sentinel,
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn kind(&self) -> NetworkKind {
        self.kind
    }

    pub fn sentinel(&self) -> Option<f64> {
        self.sentinel
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n == label)
            .ok_or_else(|| Error::Lookup(label.to_string()))
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i][j]
    }

    pub fn weight_between(&self, source: &str, target: &str) -> Result<f64> {
        Ok(self.weights[self.index_of(source)?][self.index_of(target)?])
    }

    /// Whether `i -> j` is a real relation rather than an absent one.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let w = self.weights[i][j];
        match self.kind {
            NetworkKind::Flow => w > 0.0,
            NetworkKind::Dissimilarity => self.sentinel.map_or(true, |s| w < s),
        }
    }

    /// Sub-network induced by removing `label` and every incident edge.
    pub fn delete_node(&self, label: &str) -> Result<Self> {
        let idx = self.index_of(label)?;
        if self.len() == 1 {
            return Err(Error::EmptyNetwork);
        }
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, n)| n.clone())
            .collect();
        let weights = self
            .weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != idx)
                    .map(|(_, &w)| w)
                    .collect()
            })
            .collect();
        Ok(Self {
            nodes,
            weights,
            kind: self.kind,
            sentinel: self.sentinel,
        })
    }

    /// The same network with every edge reversed.
    pub fn transpose(&self) -> Self {
        let n = self.len();
        let weights = (0..n)
            .map(|i| (0..n).map(|j| self.weights[j][i]).collect())
            .collect();
        Self {
            nodes: self.nodes.clone(),
            weights,
            kind: self.kind,
            sentinel: self.sentinel,
        }
    }

    /// Serializes as `source,target,weight` rows, one per real edge.
    ///
    /// Nodes without any real edge are written as zero-weight rows so the
    /// node set survives a round trip.
    pub fn to_edge_list_csv(&self) -> String {
        let n = self.len();
        let mut out = String::from("source,target,weight\n");
        let mut mentioned = vec![false; n];
        for i in 0..n {
            for j in 0..n {
                if self.has_edge(i, j) {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        csv_field(&self.nodes[i]),
                        csv_field(&self.nodes[j]),
                        self.weights[i][j]
                    ));
                    mentioned[i] = true;
                    mentioned[j] = true;
                }
            }
        }
        for i in (0..n).filter(|&i| !mentioned[i]) {
            let other = if i + 1 < n { i + 1 } else { 0 };
            if other != i {
                out.push_str(&format!(
                    "{},{},0\n",
                    csv_field(&self.nodes[i]),
                    csv_field(&self.nodes[other]),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn max_off_diagonal(weights: &[Vec<f64>]) -> f64 {
    let mut max = 0.0_f64;
    for (i, row) in weights.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if i != j {
                max = max.max(w);
            }
        }
    }
    max
}

/// A dissimilarity network with a known sentinel distance, typically the
/// image of a flow network under [`effective_distance`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DirectedNetwork", into = "DirectedNetwork")]
pub struct EffectiveDistanceNetwork {
    inner: DirectedNetwork,
}

impl TryFrom<DirectedNetwork> for EffectiveDistanceNetwork {
    type Error = Error;

    fn try_from(g: DirectedNetwork) -> Result<Self> {
        Self::from_dissimilarity(g)
    }
}

impl From<EffectiveDistanceNetwork> for DirectedNetwork {
    fn from(g: EffectiveDistanceNetwork) -> Self {
        g.inner
    }
}

impl EffectiveDistanceNetwork {
    /// Wraps a dissimilarity network. When it carries no sentinel, the
    /// largest off-diagonal distance is used.
    pub fn from_dissimilarity(g: DirectedNetwork) -> Result<Self> {
        if g.kind != NetworkKind::Dissimilarity {
            return Err(Error::Domain(
                "expected a dissimilarity network; apply effective_distance to flows".into(),
            ));
        }
        let mut g = g;
        if g.sentinel.is_none() {
            let max = max_off_diagonal(&g.weights);
            if max <= 0.0 {
                return Err(Error::Domain(
                    "a single-node dissimilarity network needs an explicit sentinel".into(),
                ));
            }
            g.sentinel = Some(max);
        }
        Ok(Self { inner: g })
    }

    /// Builds a distance network from a row-major matrix and sentinel.
    pub fn from_matrix(nodes: Vec<String>, distances: Vec<Vec<f64>>, sentinel: f64) -> Result<Self> {
        let g = DirectedNetwork::with_sentinel(
            nodes,
            distances,
            NetworkKind::Dissimilarity,
            Some(sentinel),
        )?;
        Ok(Self { inner: g })
    }

    pub fn network(&self) -> &DirectedNetwork {
        &self.inner
    }

    pub fn into_network(self) -> DirectedNetwork {
        self.inner
    }

    pub fn sentinel(&self) -> f64 {
        self.inner.sentinel.expect("distance networks always carry a sentinel")
    }

    pub fn nodes(&self) -> &[String] {
        self.inner.nodes()
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner.index_of(label)
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.inner.weights[i][j]
    }

    pub fn distances(&self) -> &[Vec<f64>] {
        self.inner.weights()
    }

    pub fn delete_node(&self, label: &str) -> Result<Self> {
        Ok(Self {
            inner: self.inner.delete_node(label)?,
        })
    }

    /// Smallest distance between `label` and any other node, taken over
    /// both outgoing and incoming entries.
    pub fn min_incident_distance(&self, label: &str) -> Result<f64> {
        let x = self.index_of(label)?;
        self.min_incident_distance_at(x)
    }

    pub(crate) fn min_incident_distance_at(&self, x: usize) -> Result<f64> {
        if self.len() < 2 {
            return Err(Error::Domain(
                "minimum incident distance needs at least two nodes".into(),
            ));
        }
        Ok((0..self.len())
            .filter(|&y| y != x)
            .map(|y| self.distance(x, y).min(self.distance(y, x)))
            .fold(f64::INFINITY, f64::min))
    }

    pub fn to_json(&self) -> Result<String> {
        self.inner.to_json()
    }
}

/// Effective-distance transform with out-flow normalization.
pub fn effective_distance(g: &DirectedNetwork, epsilon: f64) -> Result<EffectiveDistanceNetwork> {
    effective_distance_with(g, epsilon, Normalization::SourceOutflow)
}

/// Maps flows to distances `1 - ln(fraction)`.
///
/// Absent edges get the sentinel `1 - ln(epsilon)`. Fractions smaller than
/// `epsilon` are clamped to the sentinel so it dominates every distance.
pub fn effective_distance_with(
    g: &DirectedNetwork,
    epsilon: f64,
    normalization: Normalization,
) -> Result<EffectiveDistanceNetwork> {
    if g.kind != NetworkKind::Flow {
        return Err(Error::Domain(
            "effective distance is defined on flow networks".into(),
        ));
    }
    check_epsilon(epsilon)?;
    let sentinel = sentinel_for(epsilon);
    let n = g.len();
    let totals: Vec<f64> = match normalization {
        Normalization::SourceOutflow => (0..n)
            .map(|i| (0..n).filter(|&k| k != i).map(|k| g.weights[i][k]).fold(0.0, |a, b| a + b))
            .collect(),
        Normalization::TargetInflow => (0..n)
            .map(|j| (0..n).filter(|&k| k != j).map(|k| g.weights[k][j]).fold(0.0, |a, b| a + b))
            .collect(),
    };
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = g.weights[i][j];
            m[i][j] = if w > 0.0 {
                let total = match normalization {
                    Normalization::SourceOutflow => totals[i],
                    Normalization::TargetInflow => totals[j],
                };
                (1.0 - (w / total).ln()).min(sentinel)
            } else {
                sentinel
            };
        }
    }
    EffectiveDistanceNetwork::from_matrix(g.nodes.clone(), m, sentinel)
}

pub fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon must lie in (0, 1), got {epsilon}")))
    }
}

/// Distance imputed for absent edges: `1 - ln(epsilon)`.
pub fn sentinel_for(epsilon: f64) -> f64 {
    1.0 - epsilon.ln()
}

/// Parses a `source,target,weight` edge list into a flow network.
///
/// Nodes are numbered in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<DirectedNetwork> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "missing header `source,target,weight`".into(),
            })
        }
    };
    if header.iter().collect::<Vec<_>>() != ["source", "target", "weight"] {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `source,target,weight`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut index: HashMap<String, usize> = HashMap::new();
    let mut nodes: Vec<String> = Vec::new();
    let mut edges: HashMap<(usize, usize), f64> = HashMap::new();
    let mut intern = |label: &str, nodes: &mut Vec<String>| -> usize {
        *index.entry(label.to_string()).or_insert_with(|| {
            nodes.push(label.to_string());
            nodes.len() - 1
        })
    };

    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, found {}", rec.len()),
            });
        }
        let (source, target) = (&rec[0], &rec[1]);
        if source.is_empty() || target.is_empty() {
            return Err(Error::Parse {
                line,
                message: "empty node label".into(),
            });
        }
        let weight: f64 = rec[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("weight `{}` is not a number", &rec[2]),
        })?;
        if !weight.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("weight `{}` is not finite", &rec[2]),
            });
        }
        if weight < 0.0 {
            return Err(Error::Domain(format!(
                "negative weight {weight} on line {line}"
            )));
        }
        if source == target && weight > 0.0 {
            return Err(Error::Domain(format!(
                "self-loop {source} -> {target} on line {line}"
            )));
        }
        let s = intern(source, &mut nodes);
        let t = intern(target, &mut nodes);
        if edges.insert((s, t), weight).is_some() {
            return Err(Error::DuplicateEdge {
                source_label: source.to_string(),
                target: target.to_string(),
                line,
            });
        }
    }

    let n = nodes.len();
    let mut weights = vec![vec![0.0; n]; n];
    for ((s, t), w) in edges {
        if s != t {
            weights[s][t] = w;
        }
    }
    DirectedNetwork::new(nodes, weights, NetworkKind::Flow)
}

/// Result of reading a square adjacency table.
#[derive(Clone, Debug)]
pub struct AdjacencyImport {
    pub network: DirectedNetwork,
    pub warnings: Vec<String>,
}

/// Parses a labeled square table: first row and column carry the node
/// labels, rows are sources and columns are targets.
///
/// Nonzero diagonal entries are zeroed and reported as warnings.
pub fn parse_adjacency_csv(text: &str) -> Result<AdjacencyImport> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = reader
        .records()
        .filter(|r| !matches!(r, Ok(rec) if rec.len() == 1 && rec[0].is_empty()))
        .collect::<std::result::Result<_, _>>()?;
    let Some(header) = rows.first() else {
        return Err(Error::Shape("empty adjacency table".into()));
    };
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let n = labels.len();
    if rows.len() - 1 != n {
        return Err(Error::Shape(format!(
            "table has {n} column labels but {} data rows",
            rows.len() - 1
        )));
    }

    let mut weights = vec![vec![0.0; n]; n];
    let mut warnings = Vec::new();
    for (i, rec) in rows.iter().skip(1).enumerate() {
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != n + 1 {
            return Err(Error::Shape(format!(
                "row on line {line} has {} entries, expected {}",
                rec.len() - 1,
                n
            )));
        }
        if rec[0] != labels[i] {
            return Err(Error::Label(format!(
                "row {} is labeled `{}` but column {} is labeled `{}`",
                i + 1,
                &rec[0],
                i + 1,
                labels[i]
            )));
        }
        for j in 0..n {
            let raw = &rec[j + 1];
            let w: f64 = raw.parse().map_err(|_| Error::Parse {
                line,
                message: format!("entry `{raw}` is not a number"),
            })?;
            if !w.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: format!("entry `{raw}` is not finite"),
                });
            }
            if w < 0.0 {
                return Err(Error::Domain(format!(
                    "negative weight {w} for {} -> {}",
                    labels[i], labels[j]
                )));
            }
            if i == j {
                if w != 0.0 {
                    let msg = format!("diagonal entry for {} was {w}; set to 0", labels[i]);
                    log::warn!("{msg}");
                    warnings.push(msg);
                }
                continue;
            }
            weights[i][j] = w;
        }
    }
    let network = DirectedNetwork::new(labels, weights, NetworkKind::Flow)?;
    Ok(AdjacencyImport { network, warnings })
}

/// Writes a labeled square table readable by [`parse_adjacency_csv`].
pub fn to_adjacency_csv(g: &DirectedNetwork) -> String {
    let mut out = String::new();
    out.push_str(
        &std::iter::once(String::new())
            .chain(g.nodes.iter().map(|s| csv_field(s)))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for (i, row) in g.weights.iter().enumerate() {
        out.push_str(&csv_field(&g.nodes[i]));
        for w in row {
            out.push(',');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}
