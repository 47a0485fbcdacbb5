//! Seeded random instances and named graph families.

use rand::Rng;

use crate::digraph::Digraph;
use crate::poset::Poset;

/// Random poset: each pair `i < j` is related with probability `density`,
/// then the relation is closed transitively.
pub fn random_poset<R: Rng>(n: usize, density: f64, rng: &mut R) -> Poset {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let chosen: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|_| rng.random_bool(density))
        .collect();
    Poset::from_relation(n, &chosen).expect("relation only goes upward")
}

/// Random digraph: each ordered pair of distinct vertices is an edge with
/// probability `density`.
pub fn random_digraph<R: Rng>(n: usize, density: f64, rng: &mut R) -> Digraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v)
        .filter(|_| rng.random_bool(density))
        .collect();
    Digraph::new(n, &edges).expect("no loops or duplicates")
}

/// Random DAG with edges only from smaller to larger ids.
pub fn random_dag<R: Rng>(n: usize, density: f64, rng: &mut R) -> Digraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(density))
        .collect();
    Digraph::new(n, &edges).expect("no loops or duplicates")
}

/// Random symmetric digraph (an undirected graph with both orientations).
pub fn random_symmetric<R: Rng>(n: usize, density: f64, rng: &mut R) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(density) {
                edges.push((u, v));
                edges.push((v, u));
            }
        }
    }
    Digraph::new(n, &edges).expect("no loops or duplicates")
}
