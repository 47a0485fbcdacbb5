//! Moving colorings between walk lengths: reduction to `A(P)`-colorings of
//! shorter walks, lifting back, and the expansion theorems.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::WalkColoring;
use crate::error::{Error, Result};
use crate::poset::{birkhoff, is_distributive, join_irreducible_ids, Poset};

/// Turns a coloring of k-walks into `P` into a coloring of (k-1)-walks into
/// `A(P)`: each (k-1)-walk gets the maximal elements among the colors of
/// its one-step extensions (the empty antichain when it has none). If the
/// input is valid, so is the output.
pub fn reduce_coloring(c: &WalkColoring, limit: usize) -> Result<WalkColoring> {
    let a = Arc::new(birkhoff(c.poset(), limit)?);
    reduce_coloring_into(c, &a)
}

/// [`reduce_coloring`] with the codomain `A(P)` already built.
pub fn reduce_coloring_into(c: &WalkColoring, a: &Arc<Poset>) -> Result<WalkColoring> {
    if c.k() < 2 {
        return Err(Error::PreconditionFailed(
            "cannot reduce a coloring of 1-walks".into(),
        ));
    }
    if a.birkhoff_base() != Some(c.poset().as_ref()) {
        return Err(Error::PreconditionFailed(
            "codomain is not the antichain lattice of the coloring's poset".into(),
        ));
    }
    let p = c.poset();
    let g = Arc::clone(c.graph());
    WalkColoring::from_fn(Arc::clone(&g), Arc::clone(a), c.k() - 1, |w| {
        let mut colors = FixedBitSet::with_capacity(p.len());
        let mut ext = w.to_vec();
        for &v in g.out_neighbors(*w.last().expect("k >= 1")) {
            ext.push(v);
            colors.insert(c.color_of(&ext)?);
            ext.pop();
        }
        let max = p.max_of_set(&colors);
        Ok(a.element_of_antichain(&max)
            .expect("every antichain is an element"))
    })
}

fn antichain_base(c: &WalkColoring) -> Result<Arc<Poset>> {
    c.poset().birkhoff_base_shared().ok_or_else(|| {
        Error::PreconditionFailed("coloring is not into an antichain lattice".into())
    })
}

/// Shared body of the two lifts. `candidates` receives the base poset and
/// the antichain colors of prefix and suffix.
fn lift_with(
    c: &WalkColoring,
    candidates: impl Fn(&Poset, usize, usize) -> Option<usize>,
) -> Result<WalkColoring> {
    let base = antichain_base(c)?;
    let k = c.k() + 1;
    WalkColoring::from_fn(Arc::clone(c.graph()), Arc::clone(&base), k, |w| {
        let prefix = c.color_of(&w[..k - 1])?;
        let suffix = c.color_of(&w[1..])?;
        candidates(&base, prefix, suffix).ok_or_else(|| Error::InvalidInputColoring(w.to_vec()))
    })
}

/// Inverse direction of [`reduce_coloring`]: from a valid `A(P)`-coloring of
/// (k-1)-walks, colors each k-walk with the smallest element of
/// `c(prefix)` lying outside the ideal generated by `c(suffix)`.
pub fn lift_coloring(c: &WalkColoring) -> Result<WalkColoring> {
    let a = Arc::clone(c.poset());
    lift_with(c, |base, prefix, suffix| {
        let below = base.ideal_of(a.antichain_of(suffix).expect("birkhoff element"));
        a.antichain_of(prefix)
            .expect("birkhoff element")
            .elements()
            .iter()
            .copied()
            .find(|&x| !below.contains(x))
    })
}

/// Like [`lift_coloring`], but picks from the larger set
/// `I(c(prefix)) \ I(c(suffix))`.
pub fn lift_coloring_relaxed(c: &WalkColoring) -> Result<WalkColoring> {
    let a = Arc::clone(c.poset());
    lift_with(c, |base, prefix, suffix| {
        let above = base.ideal_of(a.antichain_of(prefix).expect("birkhoff element"));
        let below = base.ideal_of(a.antichain_of(suffix).expect("birkhoff element"));
        let mut diff = above.as_bitset().clone();
        diff.difference_with(below.as_bitset());
        diff.minimum()
    })
}

/// Colors each k'-walk with the color of its first k vertices.
pub fn expand_trivial(c: &WalkColoring, k_new: usize) -> Result<WalkColoring> {
    if k_new < c.k() {
        return Err(Error::PreconditionFailed(format!(
            "cannot expand {}-walks to {k_new}-walks",
            c.k()
        )));
    }
    WalkColoring::from_fn(Arc::clone(c.graph()), Arc::clone(c.poset()), k_new, |w| {
        c.color_of(&w[..c.k()])
    })
}

/// An order embedding `r` of a poset into the subsets of `0..ground`:
/// `x <= y` iff `r(x) ⊆ r(y)`.
#[derive(Debug, Clone)]
pub struct SetRepresentation {
    poset: Arc<Poset>,
    ground: usize,
    sets: Vec<FixedBitSet>,
}

impl SetRepresentation {
    pub fn new(poset: impl Into<Arc<Poset>>, ground: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let poset = poset.into();
        if sets.len() != poset.len() {
            return Err(Error::PreconditionFailed(format!(
                "{} sets for {} elements",
                sets.len(),
                poset.len()
            )));
        }
        let mut bits = Vec::with_capacity(sets.len());
        for s in sets {
            let mut b = FixedBitSet::with_capacity(ground);
            for &i in s {
                if i >= ground {
                    return Err(Error::PreconditionFailed(format!(
                        "set member {i} outside ground set of size {ground}"
                    )));
                }
                b.insert(i);
            }
            bits.push(b);
        }
        let rep = SetRepresentation {
            poset,
            ground,
            sets: bits,
        };
        rep.check_embedding()?;
        Ok(rep)
    }

    fn check_embedding(&self) -> Result<()> {
        let n = self.poset.len();
        for x in 0..n {
            for y in 0..n {
                if self.poset.leq(x, y) != self.sets[x].is_subset(&self.sets[y]) {
                    return Err(Error::InvalidRepresentation(x, y));
                }
            }
        }
        Ok(())
    }

    /// `r(x) = {y | y <= x}` over the poset's own elements.
    pub fn down_sets(poset: impl Into<Arc<Poset>>) -> Self {
        let poset = poset.into();
        let sets = (0..poset.len())
            .map(|x| poset.down_set(x).clone())
            .collect();
        SetRepresentation {
            ground: poset.len(),
            poset,
            sets,
        }
    }

    /// For an antichain lattice `A(Q)`, `r(X) = I(X)` as a subset of `Q`.
    pub fn birkhoff_ideals(a: impl Into<Arc<Poset>>) -> Result<Self> {
        let a = a.into();
        let base = a
            .birkhoff_base()
            .ok_or_else(|| Error::PreconditionFailed("poset is not an antichain lattice".into()))?;
        let sets = (0..a.len())
            .map(|x| {
                base.ideal_of(a.antichain_of(x).expect("birkhoff element"))
                    .as_bitset()
                    .clone()
            })
            .collect();
        Ok(SetRepresentation {
            ground: base.len(),
            poset: a,
            sets,
        })
    }

    /// For a finite lattice, `r(x)` is the set of (indices of)
    /// join-irreducibles below `x`.
    pub fn join_irreducibles(l: impl Into<Arc<Poset>>) -> Result<Self> {
        let l = l.into();
        let ids = join_irreducible_ids(&l)?;
        let sets = (0..l.len())
            .map(|x| {
                let mut b = FixedBitSet::with_capacity(ids.len());
                for (i, &j) in ids.iter().enumerate() {
                    b.set(i, l.leq(j, x));
                }
                b
            })
            .collect();
        let rep = SetRepresentation {
            ground: ids.len(),
            poset: l,
            sets,
        };
        rep.check_embedding()?;
        Ok(rep)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn set_of(&self, x: usize) -> Vec<usize> {
        self.sets[x].ones().collect()
    }
}

fn expand_with(
    c: &WalkColoring,
    rep: &SetRepresentation,
    target: Arc<Poset>,
) -> Result<WalkColoring> {
    if rep.poset.as_ref() != c.poset().as_ref() {
        return Err(Error::PreconditionFailed(
            "representation is of a different poset".into(),
        ));
    }
    let k = c.k();
    WalkColoring::from_fn(Arc::clone(c.graph()), target, k + 1, |w| {
        let prefix = c.color_of(&w[..k])?;
        let suffix = c.color_of(&w[1..])?;
        let mut diff = rep.sets[prefix].clone();
        diff.difference_with(&rep.sets[suffix]);
        diff.minimum()
            .ok_or_else(|| Error::InvalidInputColoring(w.to_vec()))
    })
}

/// From a valid `P`-coloring of k-walks and an embedding `r: P -> 2^S`,
/// colors each (k+1)-walk with the smallest member of
/// `r(c(prefix)) \ r(c(suffix))`. The result is a valid coloring into the
/// trivial order on `S`.
pub fn expand_representation(c: &WalkColoring, rep: &SetRepresentation) -> Result<WalkColoring> {
    expand_with(c, rep, Arc::new(Poset::trivial(rep.ground)))
}

/// For a coloring into a distributive lattice `L`, expands to (k+1)-walks
/// colored by the join-irreducibles of `L` in their own order, so the
/// output satisfies the `</=` condition there and not just `!=`.
pub fn expand_distributive(c: &WalkColoring) -> Result<WalkColoring> {
    let l = c.poset();
    if !is_distributive(l)? {
        return Err(Error::NotDistributive);
    }
    let ids = join_irreducible_ids(l)?;
    let rep = SetRepresentation::join_irreducibles(Arc::clone(l))?;
    expand_with(c, &rep, Arc::new(l.induced(&ids)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{
        decide_kwalk_colorable, verify_coloring, Decision, SolverConfig, Verdict,
    };
    use crate::digraph::Digraph;
    use crate::generate::{random_digraph, random_poset};
    use crate::poset::DEFAULT_ANTICHAIN_LIMIT;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const LIMIT: usize = DEFAULT_ANTICHAIN_LIMIT;

    fn edge_coloring(g: Digraph, p: Poset, colors: &[((usize, usize), usize)]) -> WalkColoring {
        let mut c = WalkColoring::new(g, p, 2);
        for &((u, v), x) in colors {
            c.set(&[u, v], x).unwrap();
        }
        c
    }

    fn antichain_ids(c: &WalkColoring, walk: &[usize]) -> Vec<usize> {
        let x = c.get(walk).unwrap();
        c.poset().antichain_of(x).unwrap().elements().to_vec()
    }

    #[test]
    fn reduce_two_path() {
        let c = edge_coloring(
            Digraph::directed_path(3),
            Poset::trivial(2),
            &[((0, 1), 0), ((1, 2), 1)],
        );
        let r = reduce_coloring(&c, LIMIT).unwrap();
        assert_eq!(r.k(), 1);
        assert_eq!(antichain_ids(&r, &[0]), vec![0]);
        assert_eq!(antichain_ids(&r, &[1]), vec![1]);
        assert_eq!(antichain_ids(&r, &[2]), Vec::<usize>::new());
        assert!(verify_coloring(&r).unwrap().is_valid());
    }

    #[test]
    fn reduce_symmetric_pair() {
        let c = edge_coloring(
            Digraph::complete_symmetric(2),
            Poset::trivial(2),
            &[((0, 1), 0), ((1, 0), 1)],
        );
        let r = reduce_coloring(&c, LIMIT).unwrap();
        assert_eq!(antichain_ids(&r, &[0]), vec![0]);
        assert_eq!(antichain_ids(&r, &[1]), vec![1]);
        assert!(verify_coloring(&r).unwrap().is_valid());
    }

    #[test]
    fn sinks_get_the_empty_antichain() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let g = random_digraph(5, 0.3, &mut rng);
            let p = Poset::trivial(3);
            for k in 2..=3 {
                let Decision::Feasible(c) =
                    decide_kwalk_colorable(&g, k, &p, &SolverConfig::default()).unwrap()
                else {
                    continue;
                };
                let r = reduce_coloring(&c, LIMIT).unwrap();
                for (w, x) in r.entries() {
                    if g.out_neighbors(*w.last().unwrap()).is_empty() {
                        assert_eq!(x, 0);
                        assert!(r.poset().antichain_of(x).unwrap().is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_rejects_vertex_colorings() {
        let c = WalkColoring::new(Digraph::directed_path(2), Poset::trivial(1), 1);
        assert!(matches!(
            reduce_coloring(&c, LIMIT),
            Err(Error::PreconditionFailed(_))
        ));
    }

    fn vertex_coloring_into_birkhoff(g: Digraph, base: &Poset, sets: &[&[usize]]) -> WalkColoring {
        let a = Arc::new(birkhoff(base, LIMIT).unwrap());
        let mut c = WalkColoring::new(g, Arc::clone(&a), 1);
        for (v, s) in sets.iter().enumerate() {
            let ac = base.antichain(s).unwrap();
            c.set(&[v], a.element_of_antichain(&ac).unwrap()).unwrap();
        }
        c
    }

    #[test]
    fn lift_two_path_and_pair() {
        let t = Poset::trivial(2);
        let c = vertex_coloring_into_birkhoff(Digraph::directed_path(3), &t, &[&[0], &[1], &[]]);
        let lifted = lift_coloring(&c).unwrap();
        assert_eq!(lifted.get(&[0, 1]), Some(0));
        assert_eq!(lifted.get(&[1, 2]), Some(1));
        assert!(verify_coloring(&lifted).unwrap().is_valid());

        let c = vertex_coloring_into_birkhoff(Digraph::complete_symmetric(2), &t, &[&[0], &[1]]);
        let lifted = lift_coloring(&c).unwrap();
        assert_eq!(lifted.get(&[0, 1]), Some(0));
        assert_eq!(lifted.get(&[1, 0]), Some(1));
        assert!(verify_coloring(&lifted).unwrap().is_valid());
        assert_eq!(lift_coloring_relaxed(&c).unwrap(), lifted);
    }

    #[test]
    fn lift_rejects_invalid_input() {
        let t = Poset::trivial(2);
        let c = vertex_coloring_into_birkhoff(Digraph::directed_path(2), &t, &[&[0], &[0]]);
        assert_eq!(
            lift_coloring(&c),
            Err(Error::InvalidInputColoring(vec![0, 1]))
        );
        assert_eq!(
            lift_coloring_relaxed(&c),
            Err(Error::InvalidInputColoring(vec![0, 1]))
        );

        let plain = WalkColoring::new(Digraph::directed_path(2), Poset::trivial(1), 1);
        assert!(matches!(
            lift_coloring(&plain),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn relaxed_lift_on_chain() {
        // I({1}) \ I({0}) = {1} in the chain 0 < 1
        let c2 = Poset::chain(2);
        let c = vertex_coloring_into_birkhoff(Digraph::directed_path(2), &c2, &[&[1], &[0]]);
        let lifted = lift_coloring_relaxed(&c).unwrap();
        assert_eq!(lifted.get(&[0, 1]), Some(1));
    }

    #[test]
    fn relaxed_candidates_contain_strict_choice() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut checked = 0;
        while checked < 100 {
            let n = rng.random_range(2..=5);
            let g = random_digraph(n, 0.4, &mut rng);
            let p = random_poset(rng.random_range(1..=4), 0.3, &mut rng);
            let a = Arc::new(birkhoff(&p, LIMIT).unwrap());
            let Decision::Feasible(vc) = crate::coloring::decide_vertex_poset_colorable(
                &g,
                Arc::clone(&a),
                &SolverConfig::default(),
            )
            .unwrap() else {
                continue;
            };
            let strict = lift_coloring(&vc).unwrap();
            let relaxed = lift_coloring_relaxed(&vc).unwrap();
            assert_eq!(verify_coloring(&relaxed).unwrap(), Verdict::Valid);
            for (w, x) in strict.entries() {
                let prefix = a.antichain_of(vc.get(&w[..1]).unwrap()).unwrap();
                let suffix = a.antichain_of(vc.get(&w[1..]).unwrap()).unwrap();
                let ip = p.ideal_of(prefix);
                let is = p.ideal_of(suffix);
                assert!(ip.contains(x) && !is.contains(x));
                let y = relaxed.get(&w).unwrap();
                assert!(ip.contains(y) && !is.contains(y));
            }
            checked += 1;
        }
    }

    #[test]
    fn trivial_expansion() {
        let g = Digraph::directed_path(4);
        let c = WalkColoring::from_fn(g, Poset::chain(4), 1, |w| Ok(3 - w[0])).unwrap();
        assert!(verify_coloring(&c).unwrap().is_valid());
        assert_eq!(expand_trivial(&c, 1).unwrap(), c);
        let e = expand_trivial(&c, 2).unwrap();
        for (w, x) in e.entries() {
            assert_eq!(x, 3 - w[0]);
        }
        assert!(verify_coloring(&e).unwrap().is_valid());
        assert!(expand_trivial(&e, 1).is_err());
    }

    #[test]
    fn trivial_expansion_preserves_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..40 {
            let g = random_digraph(rng.random_range(2..=5), 0.35, &mut rng);
            let p = Poset::trivial(rng.random_range(2..=3));
            if let Decision::Feasible(c) =
                decide_kwalk_colorable(&g, 2, &p, &SolverConfig::default()).unwrap()
            {
                for k in 2..=4 {
                    let e = expand_trivial(&c, k).unwrap();
                    assert!(verify_coloring(&e).unwrap().is_valid());
                }
            }
        }
    }

    #[test]
    fn representation_validation() {
        let c2 = Poset::chain(2);
        assert!(SetRepresentation::new(c2.clone(), 1, &[vec![], vec![0]]).is_ok());
        assert_eq!(
            SetRepresentation::new(c2.clone(), 1, &[vec![0], vec![]]).unwrap_err(),
            Error::InvalidRepresentation(0, 1)
        );
        assert!(SetRepresentation::new(c2, 1, &[vec![], vec![3]]).is_err());
    }

    #[test]
    fn expansion_with_half_size_subsets() {
        // vertices of K4 colored by 4 trivial colors; C(4,2) = 6 >= 4 so the
        // 2-subsets of {0,1,2,3} represent them and the edges get 4 colors
        let k4 = Digraph::complete_symmetric(4);
        let c = WalkColoring::from_fn(k4, Poset::trivial(4), 1, |w| Ok(w[0])).unwrap();
        assert!(verify_coloring(&c).unwrap().is_valid());
        let sets = vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2]];
        let rep = SetRepresentation::new(Poset::trivial(4), 4, &sets).unwrap();
        let e = expand_representation(&c, &rep).unwrap();
        assert_eq!(e.k(), 2);
        assert_eq!(e.poset().len(), 4);
        assert!(verify_coloring(&e).unwrap().is_valid());
    }

    #[test]
    fn expansion_on_one_element_ground() {
        let c2 = Poset::chain(2);
        let c = WalkColoring::from_fn(Digraph::directed_path(2), c2.clone(), 1, |w| Ok(1 - w[0]))
            .unwrap();
        let rep = SetRepresentation::new(c2, 1, &[vec![], vec![0]]).unwrap();
        let e = expand_representation(&c, &rep).unwrap();
        assert_eq!(e.entries(), vec![(vec![0, 1], 0)]);
    }

    #[test]
    fn ideal_representation_reproduces_relaxed_lift() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut done = 0;
        while done < 30 {
            let g = random_digraph(rng.random_range(2..=5), 0.4, &mut rng);
            let q = random_poset(rng.random_range(1..=4), 0.3, &mut rng);
            let a = Arc::new(birkhoff(&q, LIMIT).unwrap());
            let Decision::Feasible(vc) = crate::coloring::decide_vertex_poset_colorable(
                &g,
                Arc::clone(&a),
                &SolverConfig::default(),
            )
            .unwrap() else {
                continue;
            };
            let rep = SetRepresentation::birkhoff_ideals(Arc::clone(&a)).unwrap();
            let expanded = expand_representation(&vc, &rep).unwrap();
            let relaxed = lift_coloring_relaxed(&vc).unwrap();
            assert_eq!(expanded.entries(), relaxed.entries());
            // the colors satisfy the stronger condition in Q itself
            let in_q = expanded.with_poset(q.clone()).unwrap();
            assert!(verify_coloring(&in_q).unwrap().is_valid());
            done += 1;
        }
    }

    #[test]
    fn distributive_expansion() {
        // chain C3 as L: J(L) = C2
        let l = Poset::chain(3);
        let c = WalkColoring::from_fn(Digraph::directed_path(3), l, 1, |w| Ok(2 - w[0])).unwrap();
        let e = expand_distributive(&c).unwrap();
        assert!(e.poset().is_isomorphic(&Poset::chain(2)));
        assert!(verify_coloring(&e).unwrap().is_valid());
        // L = 2^S: J(L) is the trivial poset of singletons
        let cube = birkhoff(&Poset::trivial(3), LIMIT).unwrap();
        let singles: Vec<usize> = (0..3)
            .map(|i| {
                cube.element_of_antichain(&Poset::trivial(3).antichain(&[i]).unwrap())
                    .unwrap()
            })
            .collect();
        let c = WalkColoring::from_fn(Digraph::complete_symmetric(3), cube.clone(), 1, |w| {
            Ok(singles[w[0]])
        })
        .unwrap();
        let e = expand_distributive(&c).unwrap();
        assert!(e.poset().is_isomorphic(&Poset::trivial(3)));
        assert!(verify_coloring(&e).unwrap().is_valid());
        let rep = SetRepresentation::join_irreducibles(cube).unwrap();
        let plain = expand_representation(&c, &rep).unwrap();
        assert_eq!(plain.entries(), e.entries());
    }

    #[test]
    fn distributive_expansion_rejects_other_posets() {
        let m3 =
            Poset::from_relation(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        let c = WalkColoring::new(Digraph::edgeless(1), m3, 1);
        assert_eq!(expand_distributive(&c), Err(Error::NotDistributive));
        let c = WalkColoring::new(Digraph::edgeless(1), Poset::trivial(2), 1);
        assert!(matches!(
            expand_distributive(&c),
            Err(Error::NotALattice(_))
        ));
    }

    #[test]
    fn distributive_expansion_is_valid_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut done = 0;
        while done < 40 {
            let g = random_digraph(rng.random_range(2..=5), 0.4, &mut rng);
            let q = random_poset(rng.random_range(1..=3), 0.3, &mut rng);
            let l = Arc::new(birkhoff(&q, LIMIT).unwrap());
            let Decision::Feasible(vc) = crate::coloring::decide_vertex_poset_colorable(
                &g,
                Arc::clone(&l),
                &SolverConfig::default(),
            )
            .unwrap() else {
                continue;
            };
            let e = expand_distributive(&vc).unwrap();
            assert!(verify_coloring(&e).unwrap().is_valid());
            assert!(e.poset().is_isomorphic(&q));
            done += 1;
        }
    }
}
