//! Bottleneck distance between persistence diagrams.
//!
//! Every point may be matched to a point of the other diagram at L∞ cost
//! or to its own diagonal projection at half its persistence. The optimum
//! is one of finitely many candidate costs, so [`bottleneck_distance`]
//! binary-searches that sorted set with a perfect-matching feasibility
//! test at each step.

use crate::error::{Error, Result};
use crate::matching::HopcroftKarp;
use crate::persistence::PersistenceDiagram;

/// Point count limit for [`bottleneck_oracle`].
pub const ORACLE_MAX_POINTS: usize = 8;

/// Homology dimensions compared by default.
pub const DEFAULT_DIMS: [usize; 2] = [0, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// Index into the diagram's points.
    Point(usize),
    Diagonal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    /// `(left endpoint, right endpoint)`; diagonal-to-diagonal pairs are
    /// omitted since they cost nothing.
    pub pairs: Vec<(Endpoint, Endpoint)>,
    pub cost: f64,
}

#[inline]
fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

#[inline]
fn to_diagonal(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

fn checked_points(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<(Vec<(f64, f64)>, Vec<(f64, f64)>)> {
    if d1.dimension() != d2.dimension() {
        return Err(Error::Domain(format!(
            "cannot compare diagrams of dimensions {} and {}",
            d1.dimension(),
            d2.dimension()
        )));
    }
    let p: Vec<_> = d1.points().collect();
    let q: Vec<_> = d2.points().collect();
    if p.iter().chain(&q).any(|&(b, d)| !b.is_finite() || !d.is_finite()) {
        return Err(Error::Domain(
            "diagram has an uncapped infinite coordinate".into(),
        ));
    }
    Ok((p, q))
}

pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<f64> {
    Ok(bottleneck_matching(d1, d2)?.cost)
}

/// An optimal matching and its cost.
pub fn bottleneck_matching(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<Matching> {
    let (p, q) = checked_points(d1, d2)?;
    let mut candidates = vec![0.0];
    candidates.extend(p.iter().map(|&a| to_diagonal(a)));
    candidates.extend(q.iter().map(|&b| to_diagonal(b)));
    for &a in &p {
        candidates.extend(q.iter().map(|&b| linf(a, b)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    // the largest candidate always admits the all-diagonal matching
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(&p, &q, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let pairs = perfect_matching(&p, &q, candidates[lo]).expect("largest candidate is feasible");
    let cost = pairs
        .iter()
        .map(|pair| match *pair {
            (Endpoint::Point(i), Endpoint::Point(j)) => linf(p[i], q[j]),
            (Endpoint::Point(i), Endpoint::Diagonal) => to_diagonal(p[i]),
            (Endpoint::Diagonal, Endpoint::Point(j)) => to_diagonal(q[j]),
            (Endpoint::Diagonal, Endpoint::Diagonal) => 0.0,
        })
        .fold(0.0, f64::max);
    Ok(Matching { pairs, cost })
}

/// Perfect matching with every pair costing at most `r`, if one exists.
///
/// Left side: points of `p`, then diagonal copies of `q`. Right side:
/// points of `q`, then diagonal copies of `p`.
fn perfect_matching(p: &[(f64, f64)], q: &[(f64, f64)], r: f64) -> Option<Vec<(Endpoint, Endpoint)>> {
    let (np, nq) = (p.len(), q.len());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); np + nq];
    for i in 0..np {
        for j in 0..nq {
            if linf(p[i], q[j]) <= r {
                adj[i].push(j);
            }
        }
        if to_diagonal(p[i]) <= r {
            adj[i].push(nq + i);
        }
    }
    for j in 0..nq {
        if to_diagonal(q[j]) <= r {
            adj[np + j].push(j);
        }
        adj[np + j].extend(nq..nq + np);
    }
    let mut hk = HopcroftKarp::new(&adj, np + nq);
    if hk.solve() < np + nq {
        return None;
    }
    let pairs = hk
        .left_partners()
        .into_iter()
        .enumerate()
        .filter_map(|(u, v)| {
            let v = v.expect("perfect matching covers every left vertex");
            match (u < np, v < nq) {
                (true, true) => Some((Endpoint::Point(u), Endpoint::Point(v))),
                (true, false) => Some((Endpoint::Point(u), Endpoint::Diagonal)),
                (false, true) => Some((Endpoint::Diagonal, Endpoint::Point(v))),
                (false, false) => None,
            }
        })
        .collect();
    Some(pairs)
}

/// Exhaustive minimum over all partial bijections; for at most
/// [`ORACLE_MAX_POINTS`] points in total.
pub fn bottleneck_oracle(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Result<f64> {
    let (p, q) = checked_points(d1, d2)?;
    if p.len() + q.len() > ORACLE_MAX_POINTS {
        return Err(Error::Size(format!(
            "oracle handles at most {ORACLE_MAX_POINTS} points, got {}",
            p.len() + q.len()
        )));
    }
    let mut used = vec![false; q.len()];
    Ok(enumerate(&p, &q, 0, &mut used, 0.0))
}

fn enumerate(p: &[(f64, f64)], q: &[(f64, f64)], i: usize, used: &mut [bool], so_far: f64) -> f64 {
    if i == p.len() {
        return q
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(&b, _)| to_diagonal(b))
            .fold(so_far, f64::max);
    }
    let mut best = enumerate(p, q, i + 1, used, so_far.max(to_diagonal(p[i])));
    for j in 0..q.len() {
        if !used[j] {
            used[j] = true;
            best = best.min(enumerate(p, q, i + 1, used, so_far.max(linf(p[i], q[j]))));
            used[j] = false;
        }
    }
    best
}

/// Largest per-dimension bottleneck distance over `dims`; a dimension
/// missing from either set counts as an empty diagram.
pub fn diagram_distance(a: &[PersistenceDiagram], b: &[PersistenceDiagram], dims: &[usize]) -> Result<f64> {
    let cap = a.iter().chain(b).map(PersistenceDiagram::cap).next();
    if let Some(cap) = cap {
        if let Some(other) = a.iter().chain(b).map(PersistenceDiagram::cap).find(|&c| c != cap) {
            return Err(Error::Domain(format!(
                "diagram sets use different caps ({cap} and {other})"
            )));
        }
    }
    let cap = cap.unwrap_or(0.0);
    let pick = |set: &[PersistenceDiagram], dim: usize| {
        set.iter()
            .find(|d| d.dimension() == dim)
            .cloned()
            .unwrap_or_else(|| PersistenceDiagram::empty(dim, cap))
    };
    let mut worst = 0.0_f64;
    for &dim in dims {
        worst = worst.max(bottleneck_distance(&pick(a, dim), &pick(b, dim))?);
    }
    Ok(worst)
}
