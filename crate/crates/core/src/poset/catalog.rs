use fixedbitset::FixedBitSet;

use super::Poset;
use crate::error::{Error, Result};

/// One representative of every isomorphism class of posets on `n` elements.
///
/// Every finite poset has a natural labelling (a linear extension), so it
/// suffices to enumerate relations that only relate `i` to larger `j`, keep
/// the transitive ones, and drop isomorphic duplicates.
pub fn nonisomorphic_posets(n: usize) -> Result<Vec<Poset>> {
    if n > 6 {
        return Err(Error::SizeLimitExceeded {
            what: "poset catalog size",
            limit: 6,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut classes: Vec<Poset> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in up.iter_mut().enumerate() {
            row.insert(x);
        }
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                up[i].insert(j);
            }
        }
        let transitive = (0..n).all(|x| up[x].ones().all(|y| up[y].is_subset(&up[x])));
        if !transitive {
            continue;
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let p = Poset::from_up_rows(up, labels);
        if !classes.iter().any(|q| q.is_isomorphic(&p)) {
            classes.push(p);
        }
    }
    Ok(classes)
}
