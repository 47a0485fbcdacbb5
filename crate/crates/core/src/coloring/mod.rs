//! P-colorings of k-walks.
//!
//! A [`WalkColoring`] assigns an element of a poset to each k-walk of a
//! digraph. It is valid when, for every (k+1)-walk, the color of its
//! length-k prefix is not below or equal to the color of its length-k
//! suffix.

mod decide;
mod index;
mod mono;
mod transform;

use std::collections::HashMap;
use std::sync::Arc;

use crate::digraph::{Digraph, Walk};
use crate::error::{Error, Result};
use crate::poset::Poset;

pub use decide::{
    decide_kwalk_colorable, decide_vertex_poset_colorable, search_walk_coloring_direct,
    walk_digraph, Decision, SolverConfig,
};
pub use index::{
    bounds_report, ceil_log2, directed_chromatic_index, min_index_orientation,
    proposition_coloring, sperner_r, BoundsReport,
};
pub use mono::{
    bounded_mono_edge_coloring, longest_monochromatic_runs, mono_profile_vertex_coloring,
    MonoOutcome,
};
pub use transform::{
    expand_distributive, expand_representation, expand_trivial, lift_coloring,
    lift_coloring_relaxed, reduce_coloring, reduce_coloring_into, SetRepresentation,
};

/// Hash key of a walk: the vertex sequence read as a base-`n` number when
/// `n^k` fits in 64 bits, the sequence itself otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum WalkKey {
    Packed(u64),
    Seq(Box<[usize]>),
}

#[derive(Debug, Clone, Copy)]
struct WalkCodec {
    radix: u64,
    packed: bool,
}

impl WalkCodec {
    fn new(n: usize, k: usize) -> Self {
        let radix = n.max(1) as u64;
        let packed = u32::try_from(k)
            .ok()
            .and_then(|k| radix.checked_pow(k))
            .is_some();
        WalkCodec { radix, packed }
    }

    fn key(&self, walk: &[usize]) -> WalkKey {
        if self.packed {
            WalkKey::Packed(
                walk.iter()
                    .fold(0u64, |acc, &v| acc * self.radix + v as u64),
            )
        } else {
            WalkKey::Seq(walk.into())
        }
    }
}

/// Outcome of [`verify_coloring`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A (k+1)-walk whose prefix color is `<=` its suffix color.
    Counterexample(Walk),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Assignment of poset elements to the k-walks of a digraph. Totality is
/// not enforced on construction; [`WalkColoring::check_total`] and the
/// operations that need it report [`Error::MissingColor`].
#[derive(Debug, Clone)]
pub struct WalkColoring {
    graph: Arc<Digraph>,
    poset: Arc<Poset>,
    k: usize,
    codec: WalkCodec,
    colors: HashMap<WalkKey, usize>,
}

impl WalkColoring {
    /// Empty coloring of the `k`-walks of `graph` into `poset`.
    pub fn new(graph: impl Into<Arc<Digraph>>, poset: impl Into<Arc<Poset>>, k: usize) -> Self {
        let graph = graph.into();
        WalkColoring {
            codec: WalkCodec::new(graph.n(), k),
            graph,
            poset: poset.into(),
            k,
            colors: HashMap::new(),
        }
    }

    /// Colors every `k`-walk with `f(walk)`.
    pub fn from_fn(
        graph: impl Into<Arc<Digraph>>,
        poset: impl Into<Arc<Poset>>,
        k: usize,
        mut f: impl FnMut(&[usize]) -> Result<usize>,
    ) -> Result<Self> {
        let mut c = Self::new(graph, poset, k);
        let graph = Arc::clone(&c.graph);
        for w in graph.walks(k) {
            let color = f(&w)?;
            c.set(&w, color)?;
        }
        Ok(c)
    }

    pub fn graph(&self) -> &Arc<Digraph> {
        &self.graph
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of walks that have a color.
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn set(&mut self, walk: &[usize], color: usize) -> Result<()> {
        if walk.len() != self.k || !self.graph.is_walk(walk) {
            return Err(Error::NotAWalk(walk.to_vec()));
        }
        if color >= self.poset.len() {
            return Err(Error::ColorOutOfRange {
                walk: walk.to_vec(),
                color,
            });
        }
        self.colors.insert(self.codec.key(walk), color);
        Ok(())
    }

    pub fn get(&self, walk: &[usize]) -> Option<usize> {
        if walk.len() != self.k {
            return None;
        }
        self.colors.get(&self.codec.key(walk)).copied()
    }

    pub(crate) fn color_of(&self, walk: &[usize]) -> Result<usize> {
        self.get(walk)
            .ok_or_else(|| Error::MissingColor(walk.to_vec()))
    }

    pub fn check_total(&self) -> Result<()> {
        match self.graph.walks(self.k).find(|w| self.get(w).is_none()) {
            Some(w) => Err(Error::MissingColor(w)),
            None => Ok(()),
        }
    }

    /// `(walk, color)` pairs in lexicographic walk order.
    pub fn entries(&self) -> Vec<(Walk, usize)> {
        self.graph
            .walks(self.k)
            .filter_map(|w| self.get(&w).map(|c| (w, c)))
            .collect()
    }

    /// For `k = 1`, the color of each vertex.
    pub fn vertex_colors(&self) -> Result<Vec<usize>> {
        if self.k != 1 {
            return Err(Error::PreconditionFailed(format!(
                "coloring is of {}-walks, not vertices",
                self.k
            )));
        }
        (0..self.graph.n()).map(|v| self.color_of(&[v])).collect()
    }

    /// Same assignment read in another poset with the same number of
    /// elements.
    pub fn with_poset(&self, poset: impl Into<Arc<Poset>>) -> Result<Self> {
        let poset = poset.into();
        if poset.len() != self.poset.len() {
            return Err(Error::PreconditionFailed(format!(
                "poset of size {} cannot replace one of size {}",
                poset.len(),
                self.poset.len()
            )));
        }
        Ok(WalkColoring {
            poset,
            ..self.clone()
        })
    }
}

impl PartialEq for WalkColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.graph == other.graph
            && self.poset == other.poset
            && self.colors == other.colors
    }
}

/// Checks the coloring condition on every (k+1)-walk and returns the first
/// violation in lexicographic order.
pub fn verify_coloring(c: &WalkColoring) -> Result<Verdict> {
    c.check_total()?;
    let k = c.k;
    for w in c.graph.walks(k + 1) {
        let prefix = c.color_of(&w[..k])?;
        let suffix = c.color_of(&w[1..])?;
        if c.poset.leq(prefix, suffix) {
            return Ok(Verdict::Counterexample(w));
        }
    }
    Ok(Verdict::Valid)
}
