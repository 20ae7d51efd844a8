//! Hierarchy of nodes by topological impact.
//!
//! Each node `x` is represented by the persistence diagrams of the network
//! with `x` deleted; the intact network's diagrams are labeled
//! [`STANDARD`]. Pairwise bottleneck distances between these objects feed a
//! single-linkage dendrogram, and the height at which a node first shares a
//! block with `STANDARD` is its impact score.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bottleneck::diagram_distance;
use crate::dowker::build_filtration;
use crate::error::{Error, Result};
use crate::network::EffectiveDistanceNetwork;
use crate::persistence::{compute_persistence_with, EssentialDeath, PersistenceDiagram, PersistenceOptions};
use crate::union_find::DisjointSet;

/// Label of the intact network's diagrams.
pub const STANDARD: &str = "STANDARD";

#[derive(Clone, Copy, Debug)]
pub struct ObjectSetOptions {
    pub max_hom_dim: usize,
    pub essential: EssentialDeath,
}

impl Default for ObjectSetOptions {
    fn default() -> Self {
        Self {
            max_hom_dim: 1,
            essential: EssentialDeath::Cap,
        }
    }
}

/// Node labels plus `STANDARD`, each with diagrams for dimensions
/// `0..=max_hom_dim`.
#[derive(Clone, Debug)]
pub struct LabeledObjectSet {
    labels: Vec<String>,
    diagrams: Vec<Vec<PersistenceDiagram>>,
}

impl LabeledObjectSet {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn diagrams(&self, label: &str) -> Option<&[PersistenceDiagram]> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(&self.diagrams[i])
    }

    /// Symmetric matrix of [`diagram_distance`] over `dims`.
    pub fn distance_matrix(&self, dims: &[usize]) -> Result<Vec<Vec<f64>>> {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let values = pairs
            .par_iter()
            .map(|&(i, j)| diagram_distance(&self.diagrams[i], &self.diagrams[j], dims))
            .collect::<Result<Vec<f64>>>()?;
        let mut dist = vec![vec![0.0; n]; n];
        for (&(i, j), v) in pairs.iter().zip(values) {
            dist[i][j] = v;
            dist[j][i] = v;
        }
        Ok(dist)
    }
}

fn diagrams_of(g: &EffectiveDistanceNetwork, opts: &ObjectSetOptions) -> Result<Vec<PersistenceDiagram>> {
    let f = build_filtration(g, opts.max_hom_dim + 1)?;
    compute_persistence_with(
        &f,
        opts.max_hom_dim,
        &PersistenceOptions {
            essential: opts.essential,
            keep_zero_persistence: false,
        },
    )
}

/// Diagrams of the intact network and of every single-node deletion.
pub fn build_object_set(g: &EffectiveDistanceNetwork, opts: &ObjectSetOptions) -> Result<LabeledObjectSet> {
    if g.len() < 2 {
        return Err(Error::Domain("the object set needs at least two nodes".into()));
    }
    if g.nodes().iter().any(|n| n == STANDARD) {
        return Err(Error::Label(format!("node label `{STANDARD}` is reserved")));
    }
    let mut diagrams = g
        .nodes()
        .par_iter()
        .map(|label| diagrams_of(&g.delete_node(label)?, opts))
        .collect::<Result<Vec<_>>>()?;
    diagrams.push(diagrams_of(g, opts)?);
    let mut labels = g.nodes().to_vec();
    labels.push(STANDARD.to_string());
    Ok(LabeledObjectSet { labels, diagrams })
}

/// One agglomeration step. Cluster ids below the leaf count are leaves;
/// merge `k` creates cluster `leaves + k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    leaves: Vec<String>,
    merges: Vec<Merge>,
}

#[derive(Serialize, Deserialize)]
struct RawDendrogram {
    leaves: Vec<String>,
    merges: Vec<(usize, usize, f64)>,
}

impl Dendrogram {
    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }

    /// Height of the last merge; the partition is a single block from here.
    pub fn final_height(&self) -> f64 {
        self.merges.last().map_or(0.0, |m| m.height)
    }

    fn leaf(&self, label: &str) -> Result<usize> {
        self.leaves
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Lookup(label.to_string()))
    }

    /// Leaves grouped by cluster after applying every merge of height at
    /// most `t`.
    pub fn partition(&self, t: f64) -> Vec<Vec<String>> {
        let n = self.leaves.len();
        let mut ds = self.union_up_to(t);
        let mut groups: Vec<Vec<String>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = ds.find(i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(self.leaves[i].clone());
        }
        groups
    }

    fn union_up_to(&self, t: f64) -> DisjointSet {
        let n = self.leaves.len();
        let mut ds = DisjointSet::new(n);
        let mut rep: Vec<usize> = (0..n).collect();
        for m in self.merges.iter().take_while(|m| m.height <= t) {
            let (a, b) = (rep[m.left], rep[m.right]);
            ds.union(a, b);
            rep.push(a);
        }
        ds
    }

    pub fn block_containing(&self, label: &str, t: f64) -> Result<Vec<String>> {
        let x = self.leaf(label)?;
        if t < 0.0 {
            return Err(Error::Domain(format!("scale must be nonnegative, got {t}")));
        }
        let mut ds = self.union_up_to(t);
        let root = ds.find(x);
        Ok((0..self.leaves.len())
            .filter(|&i| ds.find(i) == root)
            .map(|i| self.leaves[i].clone())
            .collect())
    }

    /// Smallest `t` at which `label` and `reference` share a block.
    pub fn join_time(&self, label: &str, reference: &str) -> Result<f64> {
        let (x, r) = (self.leaf(label)?, self.leaf(reference)?);
        if x == r {
            return Ok(0.0);
        }
        let n = self.leaves.len();
        let mut ds = DisjointSet::new(n);
        let mut rep: Vec<usize> = (0..n).collect();
        for m in &self.merges {
            let (a, b) = (rep[m.left], rep[m.right]);
            ds.union(a, b);
            rep.push(a);
            if ds.find(x) == ds.find(r) {
                return Ok(m.height);
            }
        }
        unreachable!("a complete dendrogram joins every pair")
    }

    /// Join time of every other leaf with `reference`, largest first; ties
    /// are ordered by label.
    pub fn join_times(&self, reference: &str) -> Result<Vec<(String, f64)>> {
        self.leaf(reference)?;
        let mut out = self
            .leaves
            .iter()
            .filter(|l| *l != reference)
            .map(|l| Ok((l.clone(), self.join_time(l, reference)?)))
            .collect::<Result<Vec<_>>>()?;
        out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        Ok(out)
    }

    /// Leaf indices in drawing order (left subtree before right).
    pub fn leaf_order(&self) -> Vec<usize> {
        let n = self.leaves.len();
        if self.merges.is_empty() {
            return (0..n).collect();
        }
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![n + self.merges.len() - 1];
        while let Some(c) = stack.pop() {
            if c < n {
                order.push(c);
            } else {
                let m = &self.merges[c - n];
                stack.push(m.right);
                stack.push(m.left);
            }
        }
        order
    }

    pub fn height_of(&self, cluster: usize) -> f64 {
        let n = self.leaves.len();
        if cluster < n {
            0.0
        } else {
            self.merges[cluster - n].height
        }
    }

    /// Newick text with branch lengths equal to height differences.
    pub fn to_newick(&self) -> String {
        let n = self.leaves.len();
        let mut out = String::new();
        if self.merges.is_empty() {
            out.push_str(&newick_label(&self.leaves[0]));
        } else {
            self.write_newick(n + self.merges.len() - 1, &mut out);
        }
        out.push(';');
        out
    }

    fn write_newick(&self, cluster: usize, out: &mut String) {
        let n = self.leaves.len();
        if cluster < n {
            out.push_str(&newick_label(&self.leaves[cluster]));
            return;
        }
        let m = self.merges[cluster - n];
        out.push('(');
        for (k, child) in [m.left, m.right].into_iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            self.write_newick(child, out);
            let _ = write!(out, ":{}", m.height - self.height_of(child));
        }
        out.push(')');
    }

    /// `{"leaves":[...],"merges":[[left,right,height],...]}`.
    pub fn to_json(&self) -> Result<String> {
        let raw = RawDendrogram {
            leaves: self.leaves.clone(),
            merges: self.merges.iter().map(|m| (m.left, m.right, m.height)).collect(),
        };
        Ok(serde_json::to_string(&raw)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDendrogram = serde_json::from_str(text)?;
        let n = raw.leaves.len();
        if n == 0 || raw.merges.len() + 1 != n {
            return Err(Error::Shape(format!(
                "{} leaves need {} merges, found {}",
                n,
                n.saturating_sub(1),
                raw.merges.len()
            )));
        }
        let mut used = vec![false; 2 * n - 1];
        let mut last = 0.0;
        for (k, &(a, b, h)) in raw.merges.iter().enumerate() {
            let next = n + k;
            if a >= next || b >= next || a == b || used[a] || used[b] || h < last {
                return Err(Error::Domain(format!("merge {k} is not a valid agglomeration step")));
            }
            used[a] = true;
            used[b] = true;
            last = h;
        }
        Ok(Self {
            leaves: raw.leaves,
            merges: raw
                .merges
                .into_iter()
                .map(|(left, right, height)| Merge { left, right, height })
                .collect(),
        })
    }
}

fn newick_label(s: &str) -> String {
    if s.is_empty() || s.chars().any(|c| " \t()[]':;,".contains(c)) {
        format!("'{}'", s.replace('\'', "''"))
    } else {
        s.to_string()
    }
}

/// Single-linkage clustering of a symmetric distance matrix.
///
/// Pairs are processed in order of (distance, smaller label, larger label),
/// so the result only depends on labels, not on their positions.
pub fn single_linkage(dist: &[Vec<f64>], labels: &[String]) -> Result<Dendrogram> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::Domain("cannot cluster an empty set".into()));
    }
    if dist.len() != n || dist.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("distance matrix must be {n}x{n}")));
    }
    {
        let mut sorted: Vec<&String> = labels.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Label("labels must be unique".into()));
        }
    }
    for i in 0..n {
        if dist[i][i] != 0.0 {
            return Err(Error::Domain(format!("diagonal entry {i} is nonzero")));
        }
        for j in 0..n {
            let d = dist[i][j];
            if !d.is_finite() || d < 0.0 {
                return Err(Error::Domain(format!("distance ({i}, {j}) = {d} is not a nonnegative number")));
            }
            if d != dist[j][i] {
                return Err(Error::Domain(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }

    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = if labels[i] <= labels[j] { (i, j) } else { (j, i) };
            edges.push((dist[i][j], a, b));
        }
    }
    edges.sort_by(|x, y| {
        x.0.total_cmp(&y.0)
            .then_with(|| labels[x.1].cmp(&labels[y.1]))
            .then_with(|| labels[x.2].cmp(&labels[y.2]))
    });

    let mut ds = DisjointSet::new(n);
    // cluster id and smallest label index for each union-find root
    let mut cluster_of: Vec<usize> = (0..n).collect();
    let mut min_label: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n - 1);
    for (h, a, b) in edges {
        let (ra, rb) = (ds.find(a), ds.find(b));
        if ra == rb {
            continue;
        }
        let (ca, cb) = (cluster_of[ra], cluster_of[rb]);
        let (ma, mb) = (min_label[ra], min_label[rb]);
        let (left, right) = if labels[ma] <= labels[mb] { (ca, cb) } else { (cb, ca) };
        ds.union(ra, rb);
        let root = ds.find(ra);
        cluster_of[root] = n + merges.len();
        min_label[root] = if labels[ma] <= labels[mb] { ma } else { mb };
        merges.push(Merge { left, right, height: h });
        if merges.len() == n - 1 {
            break;
        }
    }
    Ok(Dendrogram {
        leaves: labels.to_vec(),
        merges,
    })
}

/// `label_row,label_col,distance` rows for every ordered pair.
pub fn distance_matrix_long_csv(labels: &[String], dist: &[Vec<f64>]) -> String {
    let mut out = String::from("label_row,label_col,distance\n");
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate() {
            let _ = writeln!(out, "{a},{b},{}", dist[i][j]);
        }
    }
    out
}

/// Square table with labels in the first row and column.
pub fn distance_matrix_wide_csv(labels: &[String], dist: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, ",{}", labels.join(","));
    for (i, a) in labels.iter().enumerate() {
        out.push_str(a);
        for d in &dist[i] {
            let _ = write!(out, ",{d}");
        }
        out.push('\n');
    }
    out
}
