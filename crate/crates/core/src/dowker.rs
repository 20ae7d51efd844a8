//! Dowker sink filtration of a distance network.
//!
//! A vertex set `σ` enters the filtration at
//! `min_p max_{x in σ} m(x, p)`, the smallest scale at which some sink `p`
//! is reachable from every member. The sink ranges over the whole network,
//! including members of `σ` itself.

use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::network::EffectiveDistanceNetwork;

/// Default top simplex dimension: enough for homology in dimensions 0 and 1.
pub const DEFAULT_MAX_DIM: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    value: f64,
}

impl Simplex {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, each a sorted vertex list.
    pub fn faces(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = self.vertices.len();
        (0..k).filter(move |_| k > 1).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

/// Filtration order: value, then dimension, then lexicographic vertices.
pub fn filtration_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<Simplex>,
    max_dim: usize,
    cap: f64,
    labels: Vec<String>,
}

impl FilteredComplex {
    /// Simplices in filtration order.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Scale at which every vertex set is present; used as the death of
    /// classes that never die.
    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Looks up a simplex by its label set.
    pub fn find(&self, labels: &[&str]) -> Option<&Simplex> {
        let mut verts: Vec<usize> = labels
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l))
            .collect::<Option<_>>()?;
        verts.sort_unstable();
        self.simplices.iter().find(|s| s.vertices == verts)
    }

    /// `dim,vertices,value` rows with `;`-joined labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dim,vertices,value\n");
        for s in &self.simplices {
            let names: Vec<&str> = s.vertices.iter().map(|&v| self.labels[v].as_str()).collect();
            let _ = writeln!(out, "{},{},{}", s.dim(), names.join(";"), s.value);
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct FiltrationOptions {
    pub max_dim: usize,
    /// Drop simplices that only appear at the sentinel scale.
    pub exclude_sentinel: bool,
}

impl Default for FiltrationOptions {
    fn default() -> Self {
        Self {
            max_dim: DEFAULT_MAX_DIM,
            exclude_sentinel: false,
        }
    }
}

/// Entry scale of a vertex set: the best sink's worst member distance.
pub fn simplex_value(g: &EffectiveDistanceNetwork, verts: &[usize]) -> Result<f64> {
    if verts.is_empty() {
        return Err(Error::Domain("a simplex needs at least one vertex".into()));
    }
    if let Some(&v) = verts.iter().find(|&&v| v >= g.len()) {
        return Err(Error::Domain(format!("vertex index {v} is out of range")));
    }
    Ok(sink_value(g, verts))
}

/// Label-based form of [`simplex_value`].
pub fn simplex_value_of(g: &EffectiveDistanceNetwork, labels: &[&str]) -> Result<f64> {
    let verts: Vec<usize> = labels.iter().map(|l| g.index_of(l)).collect::<Result<_>>()?;
    simplex_value(g, &verts)
}

#[inline]
pub(crate) fn sink_value(g: &EffectiveDistanceNetwork, verts: &[usize]) -> f64 {
    (0..g.len())
        .map(|p| verts.iter().map(|&x| g.distance(x, p)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// Dowker values of every vertex pair `(value, i, j)` with `i < j`.
pub(crate) fn edge_values(g: &EffectiveDistanceNetwork) -> Vec<(f64, usize, usize)> {
    let n = g.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (0..n)
                .map(|p| g.distance(i, p).max(g.distance(j, p)))
                .fold(f64::INFINITY, f64::min);
            out.push((v, i, j));
        }
    }
    out
}

pub fn build_filtration(g: &EffectiveDistanceNetwork, max_dim: usize) -> Result<FilteredComplex> {
    build_filtration_with(
        g,
        &FiltrationOptions {
            max_dim,
            ..FiltrationOptions::default()
        },
    )
}

/// Enumerates every vertex set of size at most `max_dim + 1` with its
/// entry scale and sorts the result into filtration order.
pub fn build_filtration_with(
    g: &EffectiveDistanceNetwork,
    opts: &FiltrationOptions,
) -> Result<FilteredComplex> {
    let n = g.len();
    let sentinel = g.sentinel();
    let mut simplices = Vec::new();
    for size in 1..=(opts.max_dim + 1).min(n) {
        for_each_combination(n, size, |verts| {
            let value = sink_value(g, verts);
            if opts.exclude_sentinel && size > 1 && value >= sentinel {
                return;
            }
            simplices.push(Simplex {
                vertices: verts.to_vec(),
                value,
            });
        });
    }
    simplices.sort_by(filtration_cmp);
    Ok(FilteredComplex {
        simplices,
        max_dim: opts.max_dim,
        cap: sentinel,
        labels: g.nodes().to_vec(),
    })
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 || k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
