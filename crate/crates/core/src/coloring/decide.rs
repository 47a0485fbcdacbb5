//! Exact colorability decisions.
//!
//! Vertex colorings into a poset are found by backtracking with forward
//! checking; colorings of k-walks go through the vertex problem for
//! `A^(k-1)(P)` and are lifted back.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{lift_coloring, WalkColoring};
use crate::digraph::{optimal_vertex_coloring, Digraph, Walk, DEFAULT_MAX_CHROMATIC_N};
use crate::error::{Error, Result};
use crate::poset::{
    birkhoff, maximum_antichain, Poset, DEFAULT_ANTICHAIN_LIMIT, DEFAULT_PRODUCT_CAP,
};

/// Most k-walks [`walk_digraph`] will materialize.
pub const MAX_WALK_DIGRAPH_VERTICES: u128 = 1 << 20;

/// Knobs shared by the exact solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Cap on the size of every antichain lattice built.
    pub antichain_limit: usize,
    /// Cap on search-tree nodes in one vertex-coloring search.
    pub max_search_nodes: u64,
    /// Answer symmetric instances with `chi(G) <= Dil(Q)` instead of
    /// searching.
    pub symmetric_shortcut: bool,
    /// Largest graph handed to the exact chromatic-number solver.
    pub max_chromatic_n: usize,
    /// Cap on the size of product posets.
    pub product_cap: usize,
    /// When set, each vertex tries colors in a seeded random order instead
    /// of increasing id. Used to sample varied valid colorings.
    pub value_order_seed: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            antichain_limit: DEFAULT_ANTICHAIN_LIMIT,
            max_search_nodes: 50_000_000,
            symmetric_shortcut: true,
            max_chromatic_n: DEFAULT_MAX_CHROMATIC_N,
            product_cap: DEFAULT_PRODUCT_CAP,
            value_order_seed: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decision {
    Feasible(WalkColoring),
    Infeasible,
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }

    pub fn coloring(&self) -> Option<&WalkColoring> {
        match self {
            Decision::Feasible(c) => Some(c),
            Decision::Infeasible => None,
        }
    }
}

struct VertexSearch<'a> {
    g: &'a Digraph,
    q: &'a Poset,
    degree: Vec<usize>,
    domains: Vec<FixedBitSet>,
    assignment: Vec<Option<usize>>,
    value_orders: Option<Vec<Vec<usize>>>,
    nodes: u64,
    budget: u64,
}

impl VertexSearch<'_> {
    /// Unassigned vertex with the fewest remaining colors, then highest
    /// degree, then lowest id.
    fn pick(&self) -> Option<usize> {
        (0..self.g.n())
            .filter(|&v| self.assignment[v].is_none())
            .min_by_key(|&v| {
                (
                    self.domains[v].count_ones(..),
                    std::cmp::Reverse(self.degree[v]),
                    v,
                )
            })
    }

    fn values(&self, v: usize) -> Vec<usize> {
        match &self.value_orders {
            Some(orders) => orders[v]
                .iter()
                .copied()
                .filter(|&x| self.domains[v].contains(x))
                .collect(),
            None => self.domains[v].ones().collect(),
        }
    }

    /// Removes from each unassigned neighbor the colors that would clash
    /// with `v = x`. Returns the saved domains and whether all stay
    /// nonempty.
    fn propagate(&mut self, v: usize, x: usize) -> (Vec<(usize, FixedBitSet)>, bool) {
        let mut trail = Vec::new();
        let mut ok = true;
        // v -> u needs c(u) outside the up-set of x
        for &u in self.g.out_neighbors(v) {
            if self.assignment[u].is_none() {
                trail.push((u, self.domains[u].clone()));
                self.domains[u].difference_with(self.q.up_set(x));
                ok &= !self.domains[u].is_clear();
            }
        }
        // w -> v needs c(w) outside the down-set of x
        for &w in self.g.in_neighbors(v) {
            if self.assignment[w].is_none() {
                trail.push((w, self.domains[w].clone()));
                self.domains[w].difference_with(self.q.down_set(x));
                ok &= !self.domains[w].is_clear();
            }
        }
        (trail, ok)
    }

    fn run(&mut self) -> Result<bool> {
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        for x in self.values(v) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SizeLimitExceeded {
                    what: "search nodes",
                    limit: self.budget as u128,
                });
            }
            let (trail, ok) = self.propagate(v, x);
            if ok {
                self.assignment[v] = Some(x);
                if self.run()? {
                    return Ok(true);
                }
                self.assignment[v] = None;
            }
            for (u, d) in trail.into_iter().rev() {
                self.domains[u] = d;
            }
        }
        Ok(false)
    }
}

fn search_vertex_coloring(
    g: &Digraph,
    q: &Poset,
    cfg: &SolverConfig,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut full = FixedBitSet::with_capacity(q.len());
    full.insert_range(..);
    let value_orders = cfg.value_order_seed.map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let mut order: Vec<usize> = (0..q.len()).collect();
                order.shuffle(&mut rng);
                order
            })
            .collect()
    });
    let mut search = VertexSearch {
        g,
        q,
        degree: (0..n)
            .map(|v| g.out_neighbors(v).len() + g.in_neighbors(v).len())
            .collect(),
        domains: vec![full; n],
        assignment: vec![None; n],
        value_orders,
        nodes: 0,
        budget: cfg.max_search_nodes,
    };
    if n > 0 && q.is_empty() {
        return Ok(None);
    }
    if search.run()? {
        Ok(Some(
            search
                .assignment
                .into_iter()
                .map(|x| x.expect("complete assignment"))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// Symmetric graphs need adjacent vertices to get incomparable colors. The
/// incomparability graph of a poset is perfect with clique number
/// `Dil(Q)`, so this is possible iff `chi(G) <= Dil(Q)`: color optimally and
/// send the color classes onto a maximum antichain.
fn symmetric_vertex_coloring(g: &Digraph, q: &Poset, max_n: usize) -> Result<Option<Vec<usize>>> {
    let classes = optimal_vertex_coloring(g, max_n)?;
    let chi = classes.iter().max().map_or(0, |&m| m + 1);
    let anti = maximum_antichain(q);
    if chi > anti.len() {
        return Ok(None);
    }
    Ok(Some(classes.iter().map(|&c| anti.elements()[c]).collect()))
}

/// Decides whether the vertices of `g` admit a coloring into `q` with
/// `c(u) </= c(v)` on every edge `u -> v`, returning one if so.
pub fn decide_vertex_poset_colorable(
    g: &Digraph,
    q: impl Into<Arc<Poset>>,
    cfg: &SolverConfig,
) -> Result<Decision> {
    let q = q.into();
    let shortcut = cfg.symmetric_shortcut && g.is_symmetric() && g.n() <= cfg.max_chromatic_n;
    let found = if shortcut {
        symmetric_vertex_coloring(g, &q, cfg.max_chromatic_n)?
    } else {
        search_vertex_coloring(g, &q, cfg)?
    };
    match found {
        None => Ok(Decision::Infeasible),
        Some(colors) => {
            let c = WalkColoring::from_fn(g.clone(), q, 1, |w| Ok(colors[w[0]]))?;
            Ok(Decision::Feasible(c))
        }
    }
}

/// Decides whether the k-walks of `g` admit a `p`-coloring. The vertices
/// are colored by `A^(k-1)(p)` and the coloring is lifted `k - 1` times. A
/// graph without k-walks is vacuously colorable, even by the empty poset.
pub fn decide_kwalk_colorable(
    g: &Digraph,
    k: usize,
    p: &Poset,
    cfg: &SolverConfig,
) -> Result<Decision> {
    if k == 0 {
        return Err(Error::PreconditionFailed(
            "walks have at least one vertex".into(),
        ));
    }
    let g = Arc::new(g.clone());
    if g.walks(k).next().is_none() {
        return Ok(Decision::Feasible(WalkColoring::new(g, p.clone(), k)));
    }
    let mut top = Arc::new(p.clone());
    for _ in 1..k {
        top = Arc::new(birkhoff(&top, cfg.antichain_limit)?);
    }
    let mut c = match decide_vertex_poset_colorable(&g, top, cfg)? {
        Decision::Feasible(c) => c,
        Decision::Infeasible => return Ok(Decision::Infeasible),
    };
    for _ in 1..k {
        c = lift_coloring(&c)?;
    }
    Ok(Decision::Feasible(c))
}

/// The digraph whose vertices are the k-walks of `g` (in lexicographic
/// order, returned alongside) with an edge from each (k+1)-walk's prefix to
/// its suffix. Walk colorings of `g` are exactly vertex colorings of it.
pub fn walk_digraph(g: &Digraph, k: usize) -> Result<(Digraph, Vec<Walk>)> {
    if k == 0 {
        return Err(Error::PreconditionFailed(
            "walks have at least one vertex".into(),
        ));
    }
    if g.count_walks(k) > MAX_WALK_DIGRAPH_VERTICES {
        return Err(Error::SizeLimitExceeded {
            what: "number of walks",
            limit: MAX_WALK_DIGRAPH_VERTICES,
        });
    }
    let walks: Vec<Walk> = g.walks(k).collect();
    let index: HashMap<&[usize], usize> = walks
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_slice(), i))
        .collect();
    let edges: Vec<(usize, usize)> = g
        .walks(k + 1)
        .map(|w| (index[&w[..k]], index[&w[1..]]))
        .collect();
    let h = Digraph::new(walks.len(), &edges)?;
    Ok((h, walks))
}

/// Searches for a `p`-coloring of the k-walks directly on
/// [`walk_digraph`], without the antichain lattice. Much slower than
/// [`decide_kwalk_colorable`]; kept as an independent check.
pub fn search_walk_coloring_direct(
    g: &Digraph,
    k: usize,
    p: &Poset,
    cfg: &SolverConfig,
) -> Result<Decision> {
    let (h, walks) = walk_digraph(g, k)?;
    let cfg = SolverConfig {
        symmetric_shortcut: false,
        ..cfg.clone()
    };
    let Some(colors) = search_vertex_coloring(&h, p, &cfg)? else {
        return Ok(Decision::Infeasible);
    };
    let mut c = WalkColoring::new(g.clone(), p.clone(), k);
    for (w, x) in walks.iter().zip(colors) {
        c.set(w, x)?;
    }
    Ok(Decision::Feasible(c))
}
