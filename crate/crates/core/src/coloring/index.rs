//! The directed chromatic index and its closed-form bounds.

use std::sync::Arc;

use super::{decide_kwalk_colorable, lift_coloring, SolverConfig, WalkColoring};
use crate::digraph::{
    chromatic_number, optimal_vertex_coloring, orient_from_coloring, Digraph, WalkLength,
};
use crate::error::{Error, Result};
use crate::poset::{birkhoff, Poset};

/// Smallest `k` with `2^k >= m` (0 for `m <= 1`).
pub fn ceil_log2(m: usize) -> usize {
    if m <= 1 {
        0
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

fn central_binomial(k: usize) -> u128 {
    let h = (k / 2) as u128;
    let mut c: u128 = 1;
    for i in 0..h {
        c = c * (k as u128 - i) / (i + 1);
    }
    c
}

/// Smallest `k` with `m <= C(k, floor(k/2))`: the fewest points whose
/// subsets contain `m` pairwise incomparable ones.
pub fn sperner_r(m: usize) -> usize {
    (0..)
        .find(|&k| central_binomial(k) >= m as u128)
        .expect("binomials grow")
}

/// Lower and upper estimates of the directed chromatic index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    /// Chromatic number of the undirected version.
    pub chi: usize,
    /// `ceil(log2(chi))`: a lower bound on the index, and the least index
    /// over all orientations.
    pub log2_chi: usize,
    /// Longest walk length.
    pub length: WalkLength,
    /// `ceil(log2(length + 1))`, an upper bound on the index of an acyclic
    /// graph.
    pub log2_len1: Option<usize>,
    /// `R_chi`: the index of the symmetric version.
    pub sperner_r_of_chi: usize,
}

pub fn bounds_report(g: &Digraph, max_chromatic_n: usize) -> Result<BoundsReport> {
    let chi = chromatic_number(g, max_chromatic_n)?;
    let length = g.longest_walk_length();
    Ok(BoundsReport {
        chi,
        log2_chi: ceil_log2(chi),
        length,
        log2_len1: length.finite().map(|l| ceil_log2(l + 1)),
        sperner_r_of_chi: sperner_r(chi),
    })
}

/// Least number of colors for the edges of `g` such that consecutive edges
/// (head to tail) get different colors. Exact: tries each size upward from
/// `ceil(log2(chi))` with the k = 2 decision procedure.
pub fn directed_chromatic_index(g: &Digraph, cfg: &SolverConfig) -> Result<usize> {
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let lower = match chromatic_number(g, cfg.max_chromatic_n) {
        Ok(chi) => ceil_log2(chi).max(1),
        Err(e) if e.is_resource_limit() => 1,
        Err(e) => return Err(e),
    };
    // distinct colors on all edges always work
    for s in lower..=g.edge_count() {
        if decide_kwalk_colorable(g, 2, &Poset::trivial(s), cfg)?.is_feasible() {
            return Ok(s);
        }
    }
    unreachable!("one color per edge is always valid")
}

/// Orients the undirected version of `g0` so that its directed chromatic
/// index is `ceil(log2(chi))`, the least possible. Returns the orientation
/// and an edge coloring achieving it.
///
/// The optimal vertex coloring is mapped injectively into the subsets of a
/// `ceil(log2(chi))`-set, edges are oriented downward along a linear
/// extension of the subset order, and the resulting vertex coloring is
/// lifted to the edges.
pub fn min_index_orientation(g0: &Digraph, cfg: &SolverConfig) -> Result<(Digraph, WalkColoring)> {
    let classes = optimal_vertex_coloring(g0, cfg.max_chromatic_n)?;
    let chi = classes.iter().max().map_or(0, |&m| m + 1);
    let m = ceil_log2(chi);
    let subsets = Arc::new(birkhoff(&Poset::trivial(m), cfg.antichain_limit)?);
    // the subset lattice has 2^m >= chi elements; use the first chi ids
    let oriented = orient_from_coloring(g0, &subsets, &classes, &subsets.linear_extension())?;
    let oriented = Arc::new(oriented);
    let vertex = WalkColoring::from_fn(Arc::clone(&oriented), subsets, 1, |w| Ok(classes[w[0]]))?;
    let edges = lift_coloring(&vertex)?;
    Ok((Arc::unwrap_or_clone(oriented), edges))
}

/// For acyclic `g` with `length(g) + 1 <= |A(p)|`: colors vertex `v` with the
/// `l`-th antichain of a reversed linear extension of `A(p)`, where `l` is
/// the length of the longest walk ending at `v`, and lifts to the edges.
pub fn proposition_coloring(g: &Digraph, p: &Poset, limit: usize) -> Result<WalkColoring> {
    let classes = g
        .longest_walk_ending_at()
        .ok_or_else(|| Error::PreconditionFailed("digraph has a cycle".into()))?;
    let a = Arc::new(birkhoff(p, limit)?);
    let length = classes.iter().copied().max().unwrap_or(0);
    if length + 1 > a.len() {
        return Err(Error::PreconditionFailed(format!(
            "length {length} + 1 exceeds the {} antichains",
            a.len()
        )));
    }
    let mut order = a.linear_extension();
    order.reverse();
    let vertex = WalkColoring::from_fn(g.clone(), a, 1, |w| Ok(order[classes[w[0]]]))?;
    lift_coloring(&vertex)
}
