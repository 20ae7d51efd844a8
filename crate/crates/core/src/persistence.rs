//! Persistent homology over the two-element field.
//!
//! [`compute_persistence`] runs the standard column reduction of the
//! boundary matrix in filtration order. [`h0_deaths_unionfind`] is the
//! Kruskal-style shortcut for dimension zero.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dowker::{edge_values, FilteredComplex};
use crate::error::{Error, Result};
use crate::network::EffectiveDistanceNetwork;
use crate::union_find::DisjointSet;

/// What death to assign to classes that never die.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EssentialDeath {
    /// Die at the complex's cap (the sentinel distance).
    #[default]
    Cap,
    /// Never die; excluded from total persistence.
    Infinite,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PersistenceOptions {
    pub essential: EssentialDeath,
    /// Keep pairs born and killed at the same scale.
    pub keep_zero_persistence: bool,
}

/// A half-open interval `[birth, death)` in one homological dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Barcode {
    pub dimension: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
}

impl Barcode {
    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_zero_persistence(&self) -> bool {
        self.death == self.birth
    }
}

/// Points of one dimension's diagram; the diagonal is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram {
    dimension: usize,
    cap: f64,
    bars: Vec<Barcode>,
}

impl PersistenceDiagram {
    /// Builds a diagram from `(birth, death)` points, none essential.
    pub fn from_points(dimension: usize, cap: f64, points: &[(f64, f64)]) -> Result<Self> {
        let bars = points
            .iter()
            .map(|&(birth, death)| Barcode {
                dimension,
                birth,
                death,
                essential: false,
            })
            .collect();
        Self::new(dimension, cap, bars)
    }

    pub fn new(dimension: usize, cap: f64, mut bars: Vec<Barcode>) -> Result<Self> {
        for b in &bars {
            if b.dimension != dimension {
                return Err(Error::Dimension(format!(
                    "bar of dimension {} in a dimension-{dimension} diagram",
                    b.dimension
                )));
            }
            if b.birth.is_nan() || b.death.is_nan() || b.death < b.birth {
                return Err(Error::Domain(format!(
                    "point ({}, {}) lies below the diagonal",
                    b.birth, b.death
                )));
            }
        }
        sort_bars(&mut bars);
        Ok(Self {
            dimension,
            cap,
            bars,
        })
    }

    pub fn empty(dimension: usize, cap: f64) -> Self {
        Self {
            dimension,
            cap,
            bars: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn bars(&self) -> &[Barcode] {
        &self.bars
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.bars.iter().map(|b| (b.birth, b.death))
    }

    /// Death values in ascending order.
    pub fn deaths(&self) -> Vec<f64> {
        let mut d: Vec<f64> = self.bars.iter().map(|b| b.death).collect();
        d.sort_by(f64::total_cmp);
        d
    }

    /// Number of classes alive at scale `t`.
    pub fn betti_at(&self, t: f64) -> usize {
        self.bars
            .iter()
            .filter(|b| b.birth <= t && (b.essential || t < b.death))
            .count()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn sort_bars(bars: &mut [Barcode]) {
    bars.sort_by(|a, b| {
        a.birth
            .total_cmp(&b.birth)
            .then(a.death.total_cmp(&b.death))
            .then(a.essential.cmp(&b.essential))
    });
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    dimension: usize,
    cap: f64,
    points: Vec<(f64, Option<f64>)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    essential: Vec<usize>,
}

impl Serialize for PersistenceDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawDiagram {
            dimension: self.dimension,
            cap: self.cap,
            points: self
                .bars
                .iter()
                .map(|b| (b.birth, b.death.is_finite().then_some(b.death)))
                .collect(),
            essential: self
                .bars
                .iter()
                .enumerate()
                .filter(|(_, b)| b.essential)
                .map(|(i, _)| i)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PersistenceDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(d)?;
        let bars = raw
            .points
            .iter()
            .enumerate()
            .map(|(i, &(birth, death))| Barcode {
                dimension: raw.dimension,
                birth,
                death: death.unwrap_or(f64::INFINITY),
                essential: death.is_none() || raw.essential.contains(&i),
            })
            .collect();
        PersistenceDiagram::new(raw.dimension, raw.cap, bars).map_err(serde::de::Error::custom)
    }
}

/// Raw output of the boundary-matrix reduction, in filtration indices.
#[derive(Clone, Debug, Default)]
pub struct Reduction {
    /// `(birth simplex, death simplex)` pairs.
    pub pairs: Vec<(usize, usize)>,
    /// Simplices that create a class nothing kills.
    pub unpaired: Vec<usize>,
}

/// Reduces the boundary matrix of every simplex up to dimension
/// `top_dim` over GF(2).
pub fn reduce_boundary(f: &FilteredComplex, top_dim: usize) -> Reduction {
    let simplices = f.simplices();
    let position: HashMap<&[usize], usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.vertices(), i))
        .collect();

    let mut pivot_owner: Vec<Option<usize>> = vec![None; simplices.len()];
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); simplices.len()];
    let mut out = Reduction::default();

    for (j, s) in simplices.iter().enumerate() {
        if s.dim() > top_dim || s.dim() == 0 {
            continue;
        }
        let mut col: Vec<usize> = s
            .faces()
            .map(|face| position[face.as_slice()])
            .collect();
        col.sort_unstable();
        while let Some(&low) = col.last() {
            match pivot_owner[low] {
                Some(k) => col = symmetric_difference(&col, &reduced[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            pivot_owner[low] = Some(j);
            out.pairs.push((low, j));
        }
        reduced[j] = col;
    }

    let mut is_birth_or_death = vec![false; simplices.len()];
    for &(b, d) in &out.pairs {
        is_birth_or_death[b] = true;
        is_birth_or_death[d] = true;
    }
    for (j, s) in simplices.iter().enumerate() {
        // a nonzero reduced column means the simplex destroyed a class
        if s.dim() < top_dim && !is_birth_or_death[j] && reduced[j].is_empty() {
            out.unpaired.push(j);
        }
    }
    out
}

fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn compute_persistence(f: &FilteredComplex, max_hom_dim: usize) -> Result<Vec<PersistenceDiagram>> {
    compute_persistence_with(f, max_hom_dim, &PersistenceOptions::default())
}

/// Diagrams for dimensions `0..=max_hom_dim`.
///
/// The complex must contain simplices one dimension higher than the
/// largest requested homology dimension.
pub fn compute_persistence_with(
    f: &FilteredComplex,
    max_hom_dim: usize,
    opts: &PersistenceOptions,
) -> Result<Vec<PersistenceDiagram>> {
    if f.max_dim() < max_hom_dim + 1 {
        return Err(Error::Dimension(format!(
            "homology up to dimension {max_hom_dim} needs simplices up to dimension {}, \
             but the complex stops at {}",
            max_hom_dim + 1,
            f.max_dim()
        )));
    }
    let reduction = reduce_boundary(f, max_hom_dim + 1);
    let simplices = f.simplices();
    let cap = f.cap();
    let mut bars: Vec<Vec<Barcode>> = vec![Vec::new(); max_hom_dim + 1];

    for &(b, d) in &reduction.pairs {
        let dim = simplices[b].dim();
        let bar = Barcode {
            dimension: dim,
            birth: simplices[b].value(),
            death: simplices[d].value(),
            essential: false,
        };
        if opts.keep_zero_persistence || !bar.is_zero_persistence() {
            bars[dim].push(bar);
        }
    }
    for &b in &reduction.unpaired {
        let dim = simplices[b].dim();
        if dim > max_hom_dim {
            continue;
        }
        let death = match opts.essential {
            EssentialDeath::Cap => cap.max(simplices[b].value()),
            EssentialDeath::Infinite => f64::INFINITY,
        };
        let bar = Barcode {
            dimension: dim,
            birth: simplices[b].value(),
            death,
            essential: true,
        };
        if opts.keep_zero_persistence || !bar.is_zero_persistence() {
            bars[dim].push(bar);
        }
    }

    bars.into_iter()
        .enumerate()
        .map(|(dim, b)| PersistenceDiagram::new(dim, cap, b))
        .collect()
}

/// Dimension-zero deaths by Kruskal's algorithm over Dowker edge values.
///
/// Returns `n` values in ascending order; the last component to survive
/// is recorded at the sentinel.
pub fn h0_deaths_unionfind(g: &EffectiveDistanceNetwork) -> Result<Vec<f64>> {
    let n = g.len();
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    let mut edges = edge_values(g);
    edges.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut ds = DisjointSet::new(n);
    let mut deaths = Vec::with_capacity(n);
    for (v, i, j) in edges {
        if ds.union(i, j) {
            deaths.push(v);
            if deaths.len() == n - 1 {
                break;
            }
        }
    }
    deaths.push(g.sentinel());
    deaths.sort_by(f64::total_cmp);
    Ok(deaths)
}

/// Sum of bar lengths; bars with infinite death are skipped.
pub fn total_persistence(d: &PersistenceDiagram) -> f64 {
    d.bars
        .iter()
        .filter(|b| b.death.is_finite())
        .map(Barcode::persistence)
        .fold(0.0, |a, b| a + b)
}

/// `dim,birth,death,essential` rows across all diagrams.
pub fn barcodes_to_csv(diagrams: &[PersistenceDiagram]) -> String {
    let mut out = String::from("dim,birth,death,essential\n");
    for d in diagrams {
        for b in d.bars() {
            let _ = writeln!(out, "{},{},{},{}", b.dimension, b.birth, b.death, b.essential);
        }
    }
    out
}
