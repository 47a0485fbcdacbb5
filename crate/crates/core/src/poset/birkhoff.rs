use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::{Antichain, AntichainOrigin, Poset};
use crate::error::{Error, Result};

/// The poset `A(P)` of all antichains of `p`, ordered by containment of the
/// ideals they generate.
///
/// Elements are numbered in lexicographic order of the sorted antichains, so
/// element 0 is always the empty antichain (the minimum). Each element keeps
/// its antichain, see [`Poset::antichain_of`]. Fails once more than `limit`
/// antichains exist.
pub fn birkhoff(p: &Poset, limit: usize) -> Result<Poset> {
    let mut antichains = Vec::new();
    let mut over = false;
    p.for_each_antichain(|a| {
        if antichains.len() == limit {
            over = true;
            return false;
        }
        antichains.push(Antichain(a.to_vec()));
        true
    });
    if over {
        return Err(Error::AntichainLimitExceeded { limit });
    }

    let ideals: Vec<FixedBitSet> = antichains.iter().map(|a| p.ideal_of(a).0).collect();
    let m = antichains.len();
    let up = ideals
        .iter()
        .map(|small| {
            let mut row = FixedBitSet::with_capacity(m);
            for (j, big) in ideals.iter().enumerate() {
                if small.is_subset(big) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let labels = antichains.iter().map(|a| p.format_antichain(a)).collect();
    Ok(
        Poset::from_up_rows(up, labels).with_origin(AntichainOrigin {
            base: Arc::new(p.clone()),
            antichains,
        }),
    )
}

/// `A` applied `m` times; `m = 0` returns a copy of `p`.
pub fn birkhoff_power(p: &Poset, m: usize, limit: usize) -> Result<Poset> {
    let mut cur = p.clone();
    for _ in 0..m {
        cur = birkhoff(&cur, limit)?;
    }
    Ok(cur)
}

/// Ids of the join-irreducible elements of lattice `l`: everything except
/// the minimum that is not the join of two strictly smaller elements. In a
/// finite lattice these are exactly the elements with one lower cover.
pub fn join_irreducible_ids(l: &Poset) -> Result<Vec<usize>> {
    l.check_lattice()?;
    Ok((0..l.len())
        .filter(|&x| l.lower_covers(x).len() == 1)
        .collect())
}

/// The subposet of join-irreducibles of `l`, labels kept.
pub fn join_irreducibles(l: &Poset) -> Result<Poset> {
    let ids = join_irreducible_ids(l)?;
    l.induced(&ids)
}

/// A finite lattice is distributive iff its elements are in bijection with
/// the order ideals of its join-irreducibles. The map `x -> {j <= x}` is
/// always injective, so it is enough to count ideals.
pub fn is_distributive(l: &Poset) -> Result<bool> {
    let j = join_irreducibles(l)?;
    Ok(j.count_antichains(l.len()) == Some(l.len()))
}
