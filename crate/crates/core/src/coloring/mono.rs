//! Edge colorings with a budget on monochromatic walks, and their
//! correspondence with vertex colorings into a product of chains.

use std::collections::HashMap;
use std::sync::Arc;

use super::{decide_vertex_poset_colorable, Decision, SolverConfig, WalkColoring};
use crate::digraph::{Digraph, Walk, WalkLength};
use crate::error::{Error, Result};
use crate::poset::{product_index, product_poset, product_tuple, Poset};

#[derive(Debug, Clone, PartialEq)]
pub enum MonoOutcome {
    Feasible {
        /// Vertex coloring into the product of chains `[0, l_i]`.
        vertex: WalkColoring,
        /// Edge coloring into `bounds.len()` trivially ordered colors,
        /// labelled `1..=n`; color id `i` is bounded by `bounds[i]`.
        edges: WalkColoring,
    },
    Infeasible,
}

/// The trivial poset on `n` colors labelled `1..=n`.
fn numbered_colors(n: usize) -> Poset {
    Poset::trivial(n)
        .with_labels((1..=n).map(|i| i.to_string()).collect())
        .expect("one label per color")
}

/// Colors the edges of `g` with `bounds.len()` colors so that no walk whose
/// edges all have color `i` is longer than `bounds[i]`, if possible.
///
/// Such a coloring exists iff the vertices can be colored by the product
/// of chains `[0, l_1] x ... x [0, l_n]`; edge `u -> v` then gets the first
/// coordinate where `c(u)` exceeds `c(v)`.
pub fn bounded_mono_edge_coloring(
    g: &Digraph,
    bounds: &[usize],
    cfg: &SolverConfig,
) -> Result<MonoOutcome> {
    let q = Arc::new(product_poset(bounds, cfg.product_cap)?);
    let vertex = match decide_vertex_poset_colorable(g, q, cfg)? {
        Decision::Feasible(c) => c,
        Decision::Infeasible => return Ok(MonoOutcome::Infeasible),
    };
    let tuples: Vec<Vec<usize>> = vertex
        .vertex_colors()?
        .into_iter()
        .map(|x| product_tuple(bounds, x))
        .collect();
    let edges = WalkColoring::from_fn(
        Arc::clone(vertex.graph()),
        numbered_colors(bounds.len()),
        2,
        |w| {
            let (tu, tv) = (&tuples[w[0]], &tuples[w[1]]);
            Ok((0..bounds.len())
                .find(|&i| tu[i] > tv[i])
                .expect("c(u) is not below c(v)"))
        },
    )?;
    Ok(MonoOutcome::Feasible { vertex, edges })
}

/// Colors each (k-1)-walk by the tuple whose `i`-th entry is the longest
/// run of consecutive k-walks colored `i` that starts by extending it
/// (0 if none). When every such run has at most `bounds[i]` walks this is a
/// valid coloring into `product_poset(bounds)`; otherwise the first
/// overlong run is reported.
pub fn mono_profile_vertex_coloring(
    d: &WalkColoring,
    bounds: &[usize],
    product_cap: usize,
) -> Result<WalkColoring> {
    let k = d.k();
    if k < 2 {
        return Err(Error::PreconditionFailed(
            "runs need walks of at least 2 vertices".into(),
        ));
    }
    if d.poset().len() != bounds.len() {
        return Err(Error::PreconditionFailed(format!(
            "{} colors but {} bounds",
            d.poset().len(),
            bounds.len()
        )));
    }
    d.check_total()?;
    let q = Arc::new(product_poset(bounds, product_cap)?);
    let g = d.graph();
    let short: Vec<Walk> = g.walks(k - 1).collect();
    let index: HashMap<&[usize], usize> = short
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    // one-step moves: (k-1)-walk -> (color of the k-walk, next (k-1)-walk)
    let moves: Vec<Vec<(usize, usize)>> = short
        .iter()
        .map(|w| {
            let mut ext = w.clone();
            g.out_neighbors(*w.last().expect("k - 1 >= 1"))
                .iter()
                .map(|&u| {
                    ext.push(u);
                    let step = (d.color_of(&ext).expect("total"), index[&ext[1..]]);
                    ext.pop();
                    step
                })
                .collect()
        })
        .collect();

    let mut profile = vec![vec![0usize; bounds.len()]; short.len()];
    for (i, &budget) in bounds.iter().enumerate() {
        // layers[t][w] = longest color-i run from w, capped at t
        let mut layers = vec![vec![0usize; short.len()]];
        for t in 1..=budget + 1 {
            let prev = &layers[t - 1];
            let next: Vec<usize> = moves
                .iter()
                .map(|m| {
                    m.iter()
                        .filter(|&&(c, _)| c == i)
                        .map(|&(_, s)| prev[s] + 1)
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            layers.push(next);
        }
        let last = &layers[budget + 1];
        if let Some(start) = last.iter().position(|&l| l > budget) {
            return Err(Error::BudgetViolated {
                color: i,
                len: budget + 1,
                walk: overlong_run(&short, &moves, &layers, i, start),
            });
        }
        for (w, &l) in last.iter().enumerate() {
            profile[w][i] = l;
        }
    }
    let mut c = WalkColoring::new(Arc::clone(g), q, k - 1);
    for (w, t) in short.iter().zip(&profile) {
        c.set(w, product_index(bounds, t))?;
    }
    Ok(c)
}

/// Follows the layers down from a start whose capped run reached the top
/// layer and spells out the walk.
fn overlong_run(
    short: &[Walk],
    moves: &[Vec<(usize, usize)>],
    layers: &[Vec<usize>],
    color: usize,
    start: usize,
) -> Walk {
    let mut walk = short[start].clone();
    let mut at = start;
    for t in (1..layers.len()).rev() {
        let &(_, s) = moves[at]
            .iter()
            .find(|&&(c, s)| c == color && layers[t - 1][s] + 1 == layers[t][at])
            .expect("a move realizes the layer value");
        walk.push(*short[s].last().expect("nonempty walk"));
        at = s;
    }
    walk
}

/// For an edge coloring, the longest walk all of whose edges have color
/// `i`, for each color.
pub fn longest_monochromatic_runs(edges: &WalkColoring) -> Result<Vec<WalkLength>> {
    if edges.k() != 2 {
        return Err(Error::PreconditionFailed(
            "expected a coloring of edges".into(),
        ));
    }
    let g = edges.graph();
    (0..edges.poset().len())
        .map(|i| {
            let mut chosen = Vec::new();
            for &(u, v) in g.edges() {
                if edges.color_of(&[u, v])? == i {
                    chosen.push((u, v));
                }
            }
            Ok(Digraph::new(g.n(), &chosen)?.longest_walk_length())
        })
        .collect()
}
