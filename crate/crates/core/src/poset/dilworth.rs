//! Width of a poset through Dilworth's theorem: the largest antichain has
//! as many elements as a smallest chain cover, and a smallest chain cover
//! has `n - |M|` chains where `M` is a maximum matching of the split graph
//! (left copy of `x` joined to right copy of `y` whenever `x < y`).

use std::collections::VecDeque;

use super::{Antichain, Poset};
use crate::error::{Error, Result};

const NIL: usize = usize::MAX;

/// Hopcroft-Karp on the split comparability graph.
struct Matching {
    adj: Vec<Vec<usize>>,
    left: Vec<usize>,
    right: Vec<usize>,
    dist: Vec<usize>,
}

impl Matching {
    fn new(p: &Poset) -> Self {
        let n = p.len();
        let adj = (0..n)
            .map(|x| p.up_set(x).ones().filter(|&y| y != x).collect())
            .collect();
        let mut m = Matching {
            adj,
            left: vec![NIL; n],
            right: vec![NIL; n],
            dist: vec![0; n],
        };
        while m.layer() {
            for x in 0..n {
                if m.left[x] == NIL {
                    m.augment(x);
                }
            }
        }
        m
    }

    fn layer(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for x in 0..self.left.len() {
            if self.left[x] == NIL {
                self.dist[x] = 0;
                queue.push_back(x);
            } else {
                self.dist[x] = NIL;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                let next = self.right[y];
                if next == NIL {
                    found = true;
                } else if self.dist[next] == NIL {
                    self.dist[next] = self.dist[x] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn augment(&mut self, x: usize) -> bool {
        for i in 0..self.adj[x].len() {
            let y = self.adj[x][i];
            let next = self.right[y];
            if next == NIL || (self.dist[next] == self.dist[x] + 1 && self.augment(next)) {
                self.left[x] = y;
                self.right[y] = x;
                return true;
            }
        }
        self.dist[x] = NIL;
        false
    }

    fn size(&self) -> usize {
        self.left.iter().filter(|&&y| y != NIL).count()
    }
}

/// Size of a largest antichain, in polynomial time.
pub fn dilworth_number(p: &Poset) -> usize {
    p.len() - Matching::new(p).size()
}

/// A largest antichain, read off a minimum vertex cover of the split graph
/// (König): the elements whose left and right copies are both uncovered.
pub fn maximum_antichain(p: &Poset) -> Antichain {
    let n = p.len();
    let m = Matching::new(p);
    // Alternating reachability from unmatched left vertices.
    let mut seen_left = vec![false; n];
    let mut seen_right = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| m.left[x] == NIL).collect();
    queue.iter().for_each(|&x| seen_left[x] = true);
    while let Some(x) = queue.pop_front() {
        for &y in &m.adj[x] {
            if seen_right[y] {
                continue;
            }
            seen_right[y] = true;
            let back = m.right[y];
            if back != NIL && !seen_left[back] {
                seen_left[back] = true;
                queue.push_back(back);
            }
        }
    }
    Antichain((0..n).filter(|&x| seen_left[x] && !seen_right[x]).collect())
}

/// Exhaustive width by enumerating every antichain. Refuses posets with
/// more than 20 elements.
pub fn dilworth_number_exhaustive(p: &Poset) -> Result<usize> {
    if p.len() > 20 {
        return Err(Error::SizeLimitExceeded {
            what: "exhaustive antichain enumeration",
            limit: 20,
        });
    }
    let mut best = 0;
    p.for_each_antichain(|a| {
        best = best.max(a.len());
        true
    });
    Ok(best)
}
