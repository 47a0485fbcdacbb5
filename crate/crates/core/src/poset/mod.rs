//! Finite posets stored as dense bit matrices.
//!
//! Elements are the ids `0..n`. Every poset keeps both the up-set and the
//! down-set of each element, so comparability queries in either direction
//! are a single bit test.

mod birkhoff;
mod catalog;
mod dilworth;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use birkhoff::{
    birkhoff, birkhoff_power, is_distributive, join_irreducible_ids, join_irreducibles,
};
pub use catalog::nonisomorphic_posets;
pub use dilworth::{dilworth_number, dilworth_number_exhaustive, maximum_antichain};

/// Default cap on the number of antichains `birkhoff` will materialize.
pub const DEFAULT_ANTICHAIN_LIMIT: usize = 1_000_000;

/// Default cap on the number of tuples `product_poset` will build.
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// Sorted, duplicate-free set of pairwise incomparable element ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain(Vec<usize>);

impl Antichain {
    pub fn empty() -> Self {
        Antichain(Vec::new())
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Downward-closed set of elements of a host poset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderIdeal(FixedBitSet);

impl OrderIdeal {
    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn members(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &OrderIdeal) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn as_bitset(&self) -> &FixedBitSet {
        &self.0
    }
}

/// Back-reference kept by posets produced by [`birkhoff`]: element `i` is the
/// antichain `antichains[i]` of `base`.
#[derive(Debug)]
pub(crate) struct AntichainOrigin {
    pub(crate) base: Arc<Poset>,
    pub(crate) antichains: Vec<Antichain>,
}

#[derive(Debug, Clone)]
pub struct Poset {
    /// `up[x]` holds every `y` with `x <= y`.
    up: Vec<FixedBitSet>,
    /// `down[y]` holds every `x` with `x <= y`.
    down: Vec<FixedBitSet>,
    labels: Vec<String>,
    origin: Option<Arc<AntichainOrigin>>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.up == other.up && self.labels == other.labels
    }
}

impl Eq for Poset {}

fn transpose(rows: &[FixedBitSet]) -> Vec<FixedBitSet> {
    let n = rows.len();
    let mut cols = vec![FixedBitSet::with_capacity(n); n];
    for (x, row) in rows.iter().enumerate() {
        for y in row.ones() {
            cols[y].insert(x);
        }
    }
    cols
}

/// Reflexive-transitive closure by repeated squaring of the relation.
fn close(rows: &mut [FixedBitSet]) {
    for (x, row) in rows.iter_mut().enumerate() {
        row.insert(x);
    }
    loop {
        let snapshot = rows.to_vec();
        let mut changed = false;
        for (x, row) in rows.iter_mut().enumerate() {
            let mut acc = snapshot[x].clone();
            for y in snapshot[x].ones() {
                acc.union_with(&snapshot[y]);
            }
            if acc != *row {
                *row = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Poset {
    /// Builds a poset from already-closed up-set rows. Callers guarantee the
    /// rows describe a partial order.
    pub(crate) fn from_up_rows(up: Vec<FixedBitSet>, labels: Vec<String>) -> Self {
        debug_assert_eq!(up.len(), labels.len());
        let down = transpose(&up);
        Poset {
            up,
            down,
            labels,
            origin: None,
        }
    }

    pub(crate) fn with_origin(mut self, origin: AntichainOrigin) -> Self {
        self.origin = Some(Arc::new(origin));
        self
    }

    /// The antichain `x = y` only: every pair of distinct elements incomparable.
    pub fn trivial(n: usize) -> Self {
        let up = (0..n)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(x);
                row
            })
            .collect();
        Self::from_up_rows(up, default_labels(n))
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let up = (0..n)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert_range(x..n);
                row
            })
            .collect();
        Self::from_up_rows(up, default_labels(n))
    }

    /// The four-element lattice `0 < a, b < 1` with `a` and `b` incomparable.
    /// Ids are `0 -> "0"`, `1 -> "a"`, `2 -> "b"`, `3 -> "1"`.
    pub fn diamond() -> Self {
        let p =
            Self::from_relation(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond is acyclic");
        p.with_labels(["0", "a", "b", "1"].map(String::from).to_vec())
            .expect("four labels")
    }

    /// Takes the reflexive-transitive closure of `pairs` (each `(x, y)` read
    /// as `x <= y`) and rejects it if the closure is not antisymmetric.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &(x, y) in pairs {
            for id in [x, y] {
                if id >= n {
                    return Err(Error::ElementOutOfRange { id, size: n });
                }
            }
            up[x].insert(y);
        }
        close(&mut up);
        for x in 0..n {
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::CycleInCoverRelations(x.min(y), x.max(y)));
                }
            }
        }
        Ok(Self::from_up_rows(up, default_labels(n)))
    }

    /// Validates a full `leq[x][y]` matrix without closing it.
    pub fn from_leq_matrix(leq: &[Vec<bool>]) -> Result<Self> {
        let n = leq.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in leq.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAPartialOrder(format!(
                    "row {x} has length {}",
                    row.len()
                )));
            }
            for (y, &b) in row.iter().enumerate() {
                up[x].set(y, b);
            }
        }
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotAPartialOrder(format!("not reflexive at {x}")));
            }
            for y in up[x].ones() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not antisymmetric at ({x}, {y})"
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive through {y}"
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(up, default_labels(n)))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} labels for {} elements",
                labels.len(),
                self.len()
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Same elements and order, labels ignored.
    pub fn same_order(&self, other: &Poset) -> bool {
        self.up == other.up
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    pub fn check_element(&self, id: usize) -> Result<()> {
        if id < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                id,
                size: self.len(),
            })
        }
    }

    fn check_all(&self, ids: &[usize]) -> Result<()> {
        ids.iter().try_for_each(|&id| self.check_element(id))
    }

    /// Every pair `(x, y)` with `x <= y`, in lexicographic order.
    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
            .collect()
    }

    /// Validates `ids` as an antichain and returns it in canonical form.
    pub fn antichain(&self, ids: &[usize]) -> Result<Antichain> {
        self.check_all(ids)?;
        let mut v = ids.to_vec();
        v.sort_unstable();
        v.dedup();
        for (i, &x) in v.iter().enumerate() {
            for &y in &v[i + 1..] {
                if self.comparable(x, y) {
                    return Err(Error::PreconditionFailed(format!(
                        "elements {x} and {y} are comparable"
                    )));
                }
            }
        }
        Ok(Antichain(v))
    }

    /// Maximal elements of `xs`.
    pub fn max_elements(&self, xs: &[usize]) -> Result<Antichain> {
        self.check_all(xs)?;
        let mut set = FixedBitSet::with_capacity(self.len());
        xs.iter().for_each(|&x| set.insert(x));
        Ok(self.max_of_set(&set))
    }

    pub(crate) fn max_of_set(&self, set: &FixedBitSet) -> Antichain {
        let maxima = set
            .ones()
            .filter(|&x| self.up[x].intersection(set).all(|y| y == x))
            .collect();
        Antichain(maxima)
    }

    /// Smallest order ideal containing `ys`.
    pub fn ideal_generated(&self, ys: &[usize]) -> Result<OrderIdeal> {
        self.check_all(ys)?;
        Ok(self.ideal_of_ids(ys.iter().copied()))
    }

    fn ideal_of_ids(&self, ys: impl IntoIterator<Item = usize>) -> OrderIdeal {
        let mut members = FixedBitSet::with_capacity(self.len());
        for y in ys {
            members.union_with(&self.down[y]);
        }
        OrderIdeal(members)
    }

    pub fn ideal_of(&self, a: &Antichain) -> OrderIdeal {
        self.ideal_of_ids(a.elements().iter().copied())
    }

    pub fn is_order_ideal(&self, members: &FixedBitSet) -> bool {
        members.ones().all(|y| self.down[y].is_subset(members))
    }

    /// `X <= Y` iff every element of `X` lies below some element of `Y`.
    pub fn antichain_leq(&self, x: &Antichain, y: &Antichain) -> bool {
        x.elements()
            .iter()
            .all(|&a| y.elements().iter().any(|&b| self.leq(a, b)))
    }

    /// Depth-first enumeration of all antichains in lexicographic order of
    /// their sorted id lists, starting with the empty antichain. The
    /// callback returns `false` to stop early.
    pub fn for_each_antichain<F: FnMut(&[usize]) -> bool>(&self, mut f: F) {
        let n = self.len();
        let mut allowed = FixedBitSet::with_capacity(n);
        allowed.insert_range(..);
        let mut stack = Vec::new();
        self.antichain_dfs(0, &allowed, &mut stack, &mut f);
    }

    fn antichain_dfs<F: FnMut(&[usize]) -> bool>(
        &self,
        start: usize,
        allowed: &FixedBitSet,
        stack: &mut Vec<usize>,
        f: &mut F,
    ) -> bool {
        if !f(stack) {
            return false;
        }
        for e in allowed.ones().filter(|&e| e >= start) {
            let mut next = allowed.clone();
            next.difference_with(&self.up[e]);
            next.difference_with(&self.down[e]);
            stack.push(e);
            let keep_going = self.antichain_dfs(e + 1, &next, stack, f);
            stack.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Number of antichains, or `None` once it passes `limit`.
    pub fn count_antichains(&self, limit: usize) -> Option<usize> {
        let mut count = 0usize;
        let mut over = false;
        self.for_each_antichain(|_| {
            if count == limit {
                over = true;
                return false;
            }
            count += 1;
            true
        });
        (!over).then_some(count)
    }

    /// Subposet induced on `ids` (in the given order), keeping labels.
    pub fn induced(&self, ids: &[usize]) -> Result<Poset> {
        self.check_all(ids)?;
        let m = ids.len();
        let up = ids
            .iter()
            .map(|&x| {
                let mut row = FixedBitSet::with_capacity(m);
                for (j, &y) in ids.iter().enumerate() {
                    row.set(j, self.leq(x, y));
                }
                row
            })
            .collect();
        let labels = ids.iter().map(|&x| self.labels[x].clone()).collect();
        Ok(Poset::from_up_rows(up, labels))
    }

    /// Linear extension picking the smallest available id at each step.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut pending: Vec<usize> = (0..n).map(|x| self.down[x].count_ones(..) - 1).collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| pending[x] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(x)) = ready.pop() {
            order.push(x);
            for y in self.up[x].ones().filter(|&y| y != x) {
                pending[y] -= 1;
                if pending[y] == 0 {
                    ready.push(Reverse(y));
                }
            }
        }
        order
    }

    /// True when `order` is a permutation of the elements listing every
    /// element after everything below it.
    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let n = self.len();
        if order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in order.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return false;
            }
            pos[x] = i;
        }
        self.relation_pairs()
            .into_iter()
            .all(|(x, y)| pos[x] <= pos[y])
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.down[x]
            .ones()
            .filter(|&y| y != x && self.up[y].intersection(&self.down[x]).count() == 2)
            .collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.up[x].is_full())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| self.down[x].is_full())
    }

    /// Checks that every pair of elements has a meet and a join. The empty
    /// poset is not a lattice.
    pub fn check_lattice(&self) -> Result<()> {
        if self.is_empty() {
            return Err(Error::NotALattice("empty poset".into()));
        }
        let downs: HashMap<&FixedBitSet, usize> =
            self.down.iter().enumerate().map(|(x, s)| (s, x)).collect();
        let ups: HashMap<&FixedBitSet, usize> =
            self.up.iter().enumerate().map(|(x, s)| (s, x)).collect();
        for x in 0..self.len() {
            for y in x + 1..self.len() {
                let lower = &self.down[x] & &self.down[y];
                if !downs.contains_key(&lower) {
                    return Err(Error::NotALattice(format!("no meet for {x} and {y}")));
                }
                let upper = &self.up[x] & &self.up[y];
                if !ups.contains_key(&upper) {
                    return Err(Error::NotALattice(format!("no join for {x} and {y}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_lattice(&self) -> bool {
        self.check_lattice().is_ok()
    }

    /// For posets built by [`birkhoff`], the antichain of the base poset
    /// that element `x` stands for.
    pub fn antichain_of(&self, x: usize) -> Option<&Antichain> {
        self.origin.as_ref().and_then(|o| o.antichains.get(x))
    }

    /// For posets built by [`birkhoff`], the poset whose antichains the
    /// elements are.
    pub fn birkhoff_base(&self) -> Option<&Poset> {
        self.origin.as_ref().map(|o| o.base.as_ref())
    }

    /// Shared handle to [`Poset::birkhoff_base`].
    pub fn birkhoff_base_shared(&self) -> Option<Arc<Poset>> {
        self.origin.as_ref().map(|o| Arc::clone(&o.base))
    }

    /// Looks up the element of a [`birkhoff`] poset standing for `a`.
    pub fn element_of_antichain(&self, a: &Antichain) -> Option<usize> {
        let origin = self.origin.as_ref()?;
        origin.antichains.binary_search(a).ok()
    }

    pub fn format_antichain(&self, a: &Antichain) -> String {
        let names: Vec<&str> = a.elements().iter().map(|&x| self.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn signature(&self, x: usize) -> (usize, usize) {
        (self.up[x].count_ones(..), self.down[x].count_ones(..))
    }

    /// An order isomorphism `self -> other` as an id map, if one exists.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let mine: Vec<(usize, usize)> = (0..n).map(|x| self.signature(x)).collect();
        let theirs: Vec<(usize, usize)> = (0..n).map(|x| other.signature(x)).collect();
        let (mut a, mut b) = (mine.clone(), theirs.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        // Map the most constrained elements first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| {
            let count = theirs.iter().filter(|&&s| s == mine[x]).count();
            (count, x)
        });
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.iso_search(other, &order, 0, &mine, &theirs, &mut image, &mut used) {
            Some(image)
        } else {
            None
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_search(
        &self,
        other: &Poset,
        order: &[usize],
        depth: usize,
        mine: &[(usize, usize)],
        theirs: &[(usize, usize)],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for cand in 0..other.len() {
            if used[cand] || theirs[cand] != mine[x] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&a| {
                let fa = image[a];
                self.leq(a, x) == other.leq(fa, cand) && self.leq(x, a) == other.leq(cand, fa)
            });
            if !consistent {
                continue;
            }
            image[x] = cand;
            used[cand] = true;
            if self.iso_search(other, order, depth + 1, mine, theirs, image, used) {
                return true;
            }
            used[cand] = false;
            image[x] = usize::MAX;
        }
        false
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({} elements: ", self.len())?;
        let covers: Vec<String> = (0..self.len())
            .flat_map(|x| {
                self.lower_covers(x)
                    .into_iter()
                    .map(move |y| format!("{}<{}", self.label(y), self.label(x)))
            })
            .collect();
        write!(f, "{})", covers.join(", "))
    }
}

/// Componentwise order on `[0, l_1] x ... x [0, l_d]`. Tuples are numbered
/// in lexicographic order (first coordinate most significant) and labelled
/// `(x1,x2,...)`.
pub fn product_poset(bounds: &[usize], cap: usize) -> Result<Poset> {
    if let Some(i) = bounds.iter().position(|&l| l == 0) {
        return Err(Error::PreconditionFailed(format!(
            "bound {i} is 0; every bound must be at least 1"
        )));
    }
    let size = bounds
        .iter()
        .try_fold(1usize, |acc, &l| acc.checked_mul(l + 1))
        .filter(|&s| s <= cap)
        .ok_or(Error::SizeLimitExceeded {
            what: "product poset size",
            limit: cap as u128,
        })?;
    let tuples: Vec<Vec<usize>> = (0..size).map(|id| product_tuple(bounds, id)).collect();
    let up = tuples
        .iter()
        .map(|t| {
            let mut row = FixedBitSet::with_capacity(size);
            for (j, u) in tuples.iter().enumerate() {
                if t.iter().zip(u).all(|(a, b)| a <= b) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<String> = t.iter().map(|c| c.to_string()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    Ok(Poset::from_up_rows(up, labels))
}

/// Decodes element `id` of [`product_poset`] into its coordinate tuple.
pub fn product_tuple(bounds: &[usize], mut id: usize) -> Vec<usize> {
    let mut t = vec![0; bounds.len()];
    for (slot, &l) in t.iter_mut().zip(bounds).rev() {
        *slot = id % (l + 1);
        id /= l + 1;
    }
    t
}

/// Inverse of [`product_tuple`].
pub fn product_index(bounds: &[usize], tuple: &[usize]) -> usize {
    tuple
        .iter()
        .zip(bounds)
        .fold(0, |acc, (&x, &l)| acc * (l + 1) + x)
}
