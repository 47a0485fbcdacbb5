//! Exact chromatic number of the undirected version: DSATUR branch and
//! bound, seeded with a greedy DSATUR upper bound and a greedy clique lower
//! bound.

use super::Digraph;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_CHROMATIC_N: usize = 24;

const UNCOLORED: usize = usize::MAX;

struct Search {
    adj: Vec<Vec<usize>>,
    colors: Vec<usize>,
    // neighbor_colors[v][c] = colored neighbors of v with color c
    neighbor_colors: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
}

impl Search {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Search {
            adj,
            colors: vec![UNCOLORED; n],
            neighbor_colors: vec![vec![0; n + 1]; n],
            saturation: vec![0; n],
            best: Vec::new(),
            best_count: n + 1,
            lower: 0,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            if self.neighbor_colors[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.neighbor_colors[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            self.neighbor_colors[u][c] -= 1;
            if self.neighbor_colors[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    /// Uncolored vertex of highest saturation, then highest degree, then
    /// lowest id.
    fn pick(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.colors[v] == UNCOLORED)
            .max_by_key(|&v| (self.saturation[v], self.adj[v].len(), std::cmp::Reverse(v)))
    }

    fn greedy(&mut self) {
        let mut used = 0;
        while let Some(v) = self.pick() {
            let c = (0..)
                .find(|&c| self.neighbor_colors[v][c] == 0)
                .expect("some color is free");
            used = used.max(c + 1);
            self.assign(v, c);
        }
        self.best = self.colors.clone();
        self.best_count = used;
        for v in 0..self.adj.len() {
            self.unassign(v);
        }
    }

    fn branch(&mut self, used: usize) {
        if used >= self.best_count {
            return;
        }
        let Some(v) = self.pick() else {
            self.best = self.colors.clone();
            self.best_count = used;
            return;
        };
        for c in 0..=used {
            if self.best_count <= self.lower {
                return;
            }
            if self.neighbor_colors[v][c] != 0 {
                continue;
            }
            let next_used = used.max(c + 1);
            if next_used >= self.best_count {
                continue;
            }
            self.assign(v, c);
            self.branch(next_used);
            self.unassign(v);
        }
    }
}

fn greedy_clique(adj: &[Vec<usize>]) -> usize {
    let n = adj.len();
    let mut best = n.min(1);
    for start in 0..n {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = adj[start].clone();
        while !candidates.is_empty() {
            let v = *candidates
                .iter()
                .max_by_key(|&&v| (adj[v].len(), std::cmp::Reverse(v)))
                .expect("nonempty");
            clique.push(v);
            candidates.retain(|&u| u != v && adj[v].binary_search(&u).is_ok());
        }
        best = best.max(clique.len());
    }
    best
}

/// A proper coloring of the undirected version of `g` with the minimum
/// number of colors `0..chi`.
pub fn optimal_vertex_coloring(g: &Digraph, max_n: usize) -> Result<Vec<usize>> {
    if g.n() > max_n {
        return Err(Error::SizeLimitExceeded {
            what: "vertex count for exact coloring",
            limit: max_n as u128,
        });
    }
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.undirected_neighbors(v)).collect();
    let lower = greedy_clique(&adj);
    let mut search = Search::new(adj);
    search.lower = lower;
    search.greedy();
    if search.best_count > lower {
        search.branch(0);
    }
    Ok(search.best)
}

/// Chromatic number of the undirected version of `g`.
pub fn chromatic_number(g: &Digraph, max_n: usize) -> Result<usize> {
    let coloring = optimal_vertex_coloring(g, max_n)?;
    Ok(coloring.iter().max().map_or(0, |&m| m + 1))
}
