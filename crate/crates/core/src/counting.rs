//! Counting of cross ratios, edge Casimirs and vertex differential operators,
//! and the per-channel completeness check.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::trees::{ChannelTree, NodeRef, TreeError, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("vertex counting is only available in odd dimension, got d = {0}")]
    EvenDimension(usize),
    #[error("dimension must be >= 1, got {0}")]
    BadDimension(usize),
    #[error("the root vertex has no upward internal edge")]
    RootEdge,
    #[error("defect dimensions ({p}, {p_prime}) must lie in 0..={max}")]
    DefectRange { p: usize, p_prime: usize, max: usize },
    #[error("need N >= 4 for the completeness check, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Independent conformal invariants of `n` points in `d` dimensions.
pub fn n_cross_ratios(n: usize, d: usize) -> usize {
    let (n, d) = (n as i64, d as i64);
    let value = if n <= d + 2 { n * (n - 3) / 2 } else { n * d - (d + 2) * (d + 1) / 2 };
    value.max(0) as usize
}

/// Rank of so(1, d+1).
pub fn rank(d: usize) -> usize {
    (d + 2) / 2
}

/// `min(|I₃|, N − |I₃|, rank_d)` for the edge above vertex `edge`.
pub fn n_casimir(tree: &ChannelTree, edge: VertexId, d: usize) -> Result<usize, CountError> {
    if edge == tree.root() {
        return Err(CountError::RootEdge);
    }
    let below = tree.leaves_below(edge)?.len();
    let up = tree.n() - below;
    Ok(up.min(tree.n() - up).min(rank(d)))
}

/// Heaviside step with `Θ₀(0) = 0`.
fn step(x: i64) -> i64 {
    i64::from(x > 0)
}

/// `𝔡_e` for each of the three edges meeting at `v`: 1 for external edges,
/// `n_casimir` for internal ones.
fn edge_weights(tree: &ChannelTree, v: VertexId, d: usize) -> Result<[usize; 3], CountError> {
    let children = tree.child_nodes(v)?;
    let weight = |node: NodeRef| -> Result<usize, CountError> {
        match node {
            NodeRef::Leaf(_) => Ok(1),
            NodeRef::Vertex(c) => n_casimir(tree, c, d),
        }
    };
    let up = if v == tree.root() { 1 } else { n_casimir(tree, v, d)? };
    Ok([weight(children[0])?, weight(children[1])?, up])
}

/// Independent degree-`p` vertex operators at `v`:
/// `max[(p−2) − Σ_e Θ₀(p−2𝔡_e)·(p−2𝔡_e−1), 0]`.
pub fn n_vertex(tree: &ChannelTree, v: VertexId, d: usize, p: usize) -> Result<usize, CountError> {
    check_odd(d)?;
    let p = p as i64;
    let penalty: i64 = edge_weights(tree, v, d)?
        .iter()
        .map(|&w| {
            let x = p - 2 * w as i64;
            step(x) * (x - 1)
        })
        .sum();
    Ok(((p - 2) - penalty).max(0) as usize)
}

/// Degrees `{2, 4, …, 2·rank_d}` of the independent invariant tensors.
pub fn degrees(d: usize) -> Vec<usize> {
    (1..=rank(d)).map(|k| 2 * k).collect()
}

fn check_odd(d: usize) -> Result<(), CountError> {
    if d == 0 {
        Err(CountError::BadDimension(d))
    } else if d.is_multiple_of(2) {
        Err(CountError::EvenDimension(d))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCount {
    pub edge: String,
    pub n_cas: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCount {
    pub vertex: String,
    /// degree p → n_vert
    pub n_vert: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    pub newick: String,
    pub n_cr: usize,
    pub edges: Vec<EdgeCount>,
    pub vertices: Vec<VertexCount>,
    pub sum_cas: usize,
    pub sum_vert: usize,
    pub identity_holds: bool,
}

/// Checks `n_cr = Σ n_Cas + ΣΣ n_vert` for one channel.
pub fn verify_total(tree: &ChannelTree, d: usize) -> Result<CountReport, CountError> {
    check_odd(d)?;
    if tree.n() < 4 {
        return Err(CountError::TooFewPoints(tree.n()));
    }
    let edges = tree
        .internal_edges()
        .into_iter()
        .map(|e| Ok(EdgeCount { edge: tree.vertex_label(e), n_cas: n_casimir(tree, e, d)? }))
        .collect::<Result<Vec<_>, CountError>>()?;
    let vertices = tree
        .vertices()
        .into_iter()
        .map(|v| {
            let n_vert = degrees(d)
                .into_iter()
                .map(|p| Ok((p, n_vertex(tree, v, d, p)?)))
                .collect::<Result<BTreeMap<_, _>, CountError>>()?;
            Ok(VertexCount { vertex: tree.vertex_label(v), n_vert })
        })
        .collect::<Result<Vec<_>, CountError>>()?;
    let sum_cas = edges.iter().map(|e| e.n_cas).sum();
    let sum_vert = vertices.iter().flat_map(|v| v.n_vert.values()).sum();
    let n_cr = n_cross_ratios(tree.n(), d);
    Ok(CountReport {
        n: tree.n(),
        d,
        newick: tree.to_newick(),
        n_cr,
        edges,
        vertices,
        sum_cas,
        sum_vert,
        identity_holds: n_cr == sum_cas + sum_vert,
    })
}

/// Rank of the defect-channel problem for a p- and a p′-dimensional defect.
pub fn defect_rank(p: usize, p_prime: usize, d: usize) -> Result<usize, CountError> {
    if d == 0 || p >= d || p_prime >= d {
        return Err(CountError::DefectRange { p, p_prime, max: d.saturating_sub(1) });
    }
    Ok((p + 2).min(p_prime + 2).min(d - p).min(d - p_prime))
}
