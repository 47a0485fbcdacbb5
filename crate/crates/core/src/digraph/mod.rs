//! Loop-free digraphs and their walks.

mod chromatic;

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::poset::Poset;

pub use chromatic::{chromatic_number, optimal_vertex_coloring, DEFAULT_MAX_CHROMATIC_N};

/// A walk is its vertex sequence `(v1 ... vk)`.
pub type Walk = Vec<usize>;

/// Length of a longest walk: a number of edges, or unbounded when the
/// digraph has a directed cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkLength {
    Finite(usize),
    Infinite,
}

impl WalkLength {
    pub fn finite(self) -> Option<usize> {
        match self {
            WalkLength::Finite(l) => Some(l),
            WalkLength::Infinite => None,
        }
    }
}

impl fmt::Display for WalkLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkLength::Finite(l) => write!(f, "{l}"),
            WalkLength::Infinite => f.write_str("infinite"),
        }
    }
}

/// Directed graph on vertices `0..n` without loops or parallel edges.
/// Both `(u, v)` and `(v, u)` may be present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut sorted = edges.to_vec();
        for &(u, v) in &sorted {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &sorted {
            out[u].push(v);
            inn[v].push(u);
        }
        inn.iter_mut().for_each(|l| l.sort_unstable());
        Ok(Digraph {
            out,
            inn,
            edges: sorted,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Self::new(n, &[]).expect("no edges")
    }

    /// Both `u -> v` and `v -> u` for every pair of distinct vertices.
    pub fn complete_symmetric(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Self::new(n, &edges).expect("valid")
    }

    /// `0 -> 1 -> ... -> n-1`.
    pub fn directed_path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::new(n, &edges).expect("valid")
    }

    /// `0 -> 1 -> ... -> n-1 -> 0`; needs `n >= 2`.
    pub fn directed_cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
        Self::new(n, &edges).expect("valid for n >= 2")
    }

    /// `u -> v` for every `u < v`.
    pub fn transitive_tournament(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::new(n, &edges).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, id: usize) -> Result<()> {
        if id < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { id, n: self.n() })
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges.iter().all(|&(u, v)| self.has_edge(v, u))
    }

    /// Neighbors in the undirected version, sorted.
    pub fn undirected_neighbors(&self, v: usize) -> Vec<usize> {
        let mut all: Vec<usize> = self.out[v].iter().chain(&self.inn[v]).copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Same vertices, with both `(u, v)` and `(v, u)` whenever either edge
    /// was present.
    pub fn undirected_version(&self) -> Digraph {
        let edges: Vec<_> = self
            .edges
            .iter()
            .flat_map(|&(u, v)| [(u, v), (v, u)])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        Digraph::new(self.n(), &edges).expect("closure of a valid digraph")
    }

    pub fn is_walk(&self, w: &[usize]) -> bool {
        !w.is_empty()
            && w.iter().all(|&v| v < self.n())
            && w.windows(2).all(|p| self.has_edge(p[0], p[1]))
    }

    /// Streams the `k`-walks in lexicographic order. Nothing is yielded for
    /// `k = 0`.
    pub fn walks(&self, k: usize) -> Walks<'_> {
        Walks {
            graph: self,
            k,
            path: Vec::with_capacity(k),
            cursors: Vec::with_capacity(k),
            next_start: 0,
        }
    }

    /// Number of `k`-walks, saturating at `u128::MAX`.
    pub fn count_walks(&self, k: usize) -> u128 {
        if k == 0 {
            return 0;
        }
        // ending[v] = number of j-walks ending at v
        let mut ending = vec![1u128; self.n()];
        for _ in 1..k {
            let mut next = vec![0u128; self.n()];
            for &(u, v) in &self.edges {
                next[v] = next[v].saturating_add(ending[u]);
            }
            ending = next;
        }
        ending.iter().fold(0u128, |acc, &c| acc.saturating_add(c))
    }

    /// Kahn's algorithm; `None` when there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..self.n()).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n());
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.out[u] {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.n()).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// For each vertex, the number of edges in a longest walk ending there.
    /// `None` when the digraph has a directed cycle.
    pub fn longest_walk_ending_at(&self) -> Option<Vec<usize>> {
        let order = self.topological_order()?;
        let mut len = vec![0usize; self.n()];
        for u in order {
            for &v in &self.out[u] {
                len[v] = len[v].max(len[u] + 1);
            }
        }
        Some(len)
    }

    pub fn longest_walk_length(&self) -> WalkLength {
        match self.longest_walk_ending_at() {
            Some(len) => WalkLength::Finite(len.into_iter().max().unwrap_or(0)),
            None => WalkLength::Infinite,
        }
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.n() {
            let _ = writeln!(s, "  {v};");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }
}

/// Iterator returned by [`Digraph::walks`].
pub struct Walks<'a> {
    graph: &'a Digraph,
    k: usize,
    path: Vec<usize>,
    cursors: Vec<usize>,
    next_start: usize,
}

impl Iterator for Walks<'_> {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        if self.k == 0 {
            return None;
        }
        loop {
            let Some(&last) = self.path.last() else {
                if self.next_start >= self.graph.n() {
                    return None;
                }
                self.path.push(self.next_start);
                self.cursors.push(0);
                self.next_start += 1;
                continue;
            };
            if self.path.len() == self.k {
                let walk = self.path.clone();
                self.path.pop();
                self.cursors.pop();
                return Some(walk);
            }
            let cursor = self.cursors.last_mut().expect("parallel to path");
            match self.graph.out[last].get(*cursor) {
                Some(&next) => {
                    *cursor += 1;
                    self.path.push(next);
                    self.cursors.push(0);
                }
                None => {
                    self.path.pop();
                    self.cursors.pop();
                }
            }
        }
    }
}

/// Orients every edge of the undirected version of `g` from the vertex
/// whose color comes later in `extension` to the one whose color comes
/// earlier. Since `x <= y` forces `x` before `y` in a linear extension,
/// every resulting edge `u -> v` has `c(u) </= c(v)`, and the orientation is
/// acyclic.
pub fn orient_from_coloring(
    g: &Digraph,
    p: &Poset,
    coloring: &[usize],
    extension: &[usize],
) -> Result<Digraph> {
    if coloring.len() != g.n() {
        return Err(Error::PreconditionFailed(format!(
            "{} colors for {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    for &c in coloring {
        p.check_element(c)?;
    }
    if !p.is_linear_extension(extension) {
        return Err(Error::PreconditionFailed(
            "supplied order is not a linear extension of the poset".into(),
        ));
    }
    let mut pos = vec![0; p.len()];
    for (i, &x) in extension.iter().enumerate() {
        pos[x] = i;
    }
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if u > v && g.has_edge(v, u) {
            continue;
        }
        let (cu, cv) = (coloring[u], coloring[v]);
        if cu == cv {
            return Err(Error::NotProperColoring(u.min(v), u.max(v)));
        }
        if pos[cu] > pos[cv] {
            edges.push((u, v));
        } else {
            edges.push((v, u));
        }
    }
    Digraph::new(g.n(), &edges)
}
