use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walkcolor::coloring::{
    bounded_mono_edge_coloring, bounds_report, ceil_log2, decide_kwalk_colorable,
    decide_vertex_poset_colorable, directed_chromatic_index, expand_distributive,
    expand_representation, expand_trivial, lift_coloring, lift_coloring_relaxed,
    longest_monochromatic_runs, min_index_orientation, mono_profile_vertex_coloring,
    proposition_coloring, reduce_coloring, search_walk_coloring_direct, sperner_r, Decision,
    MonoOutcome, SetRepresentation, SolverConfig,
};
use walkcolor::digraph::chromatic_number;
use walkcolor::generate::{random_dag, random_digraph, random_poset, random_symmetric};
use walkcolor::poset::{
    birkhoff, dilworth_number, nonisomorphic_posets, product_poset, DEFAULT_ANTICHAIN_LIMIT,
    DEFAULT_PRODUCT_CAP,
};
use walkcolor::{verify_coloring, Digraph, Poset, WalkColoring, WalkLength};

const LIMIT: usize = DEFAULT_ANTICHAIN_LIMIT;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn seeded(seed: u64) -> SolverConfig {
    SolverConfig {
        value_order_seed: Some(seed),
        ..SolverConfig::default()
    }
}

fn no_shortcut() -> SolverConfig {
    SolverConfig {
        symmetric_shortcut: false,
        ..SolverConfig::default()
    }
}

fn is_valid(c: &WalkColoring) -> bool {
    verify_coloring(c).unwrap().is_valid()
}

fn catalog(max: usize) -> Vec<Poset> {
    (0..=max)
        .flat_map(|n| nonisomorphic_posets(n).unwrap())
        .collect()
}

/// Every digraph on `n` labeled vertices.
fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Digraph::new(n, &edges).unwrap()
    })
}

/// One representative per isomorphism class of undirected graphs on `n`
/// vertices, as symmetric digraphs. Classes are found by minimizing the
/// edge mask over all vertex permutations.
fn symmetric_graph_classes(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let bit = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    let perms = permutations(n);
    let remap: Vec<Vec<usize>> = perms
        .iter()
        .map(|perm| pairs.iter().map(|&(u, v)| bit(perm[u], perm[v])).collect())
        .collect();
    let mut classes = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = remap
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &j)| acc | 1 << j)
            })
            .min()
            .unwrap();
        classes.insert(canon);
    }
    classes
        .into_iter()
        .map(|mask| {
            let mut edges = Vec::new();
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    edges.extend([(u, v), (v, u)]);
                }
            }
            Digraph::new(n, &edges).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Whether some assignment of `q` to the vertices has `c(u) </= c(v)` on
/// every edge, by enumeration.
fn brute_vertex_colorable(g: &Digraph, q: &Poset) -> bool {
    let (n, m) = (g.n(), q.len());
    if n == 0 {
        return true;
    }
    if m == 0 {
        return false;
    }
    (0..m.pow(n as u32)).any(|code| {
        let c = |v: usize| code / m.pow(v as u32) % m;
        g.edges().iter().all(|&(u, v)| !q.leq(c(u), c(v)))
    })
}

fn random_orientation(g0: &Digraph, r: &mut ChaCha8Rng) -> Digraph {
    let edges: Vec<(usize, usize)> = g0
        .edges()
        .iter()
        .filter(|&&(u, v)| u < v)
        .map(|&(u, v)| if r.random_bool(0.5) { (u, v) } else { (v, u) })
        .collect();
    Digraph::new(g0.n(), &edges).unwrap()
}

fn odd_cycle_fixtures() -> Vec<(&'static str, Digraph)> {
    let c5_chords =
        Digraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (1, 3)]).unwrap();
    let c3_tail = Digraph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (4, 3)]).unwrap();
    vec![
        ("C3", Digraph::directed_cycle(3)),
        ("C5", Digraph::directed_cycle(5)),
        ("C5 with chords", c5_chords),
        ("C3 with pendant edges", c3_tail),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_and_lifts_preserve_validity(
        seed in any::<u64>(),
        n in 1usize..7,
        m in 1usize..5,
        k in 2usize..4,
    ) {
        let mut r = rng(seed);
        let g = random_digraph(n, r.random_range(0.15..0.6), &mut r);
        let p = random_poset(m, r.random_range(0.0..0.6), &mut r);
        let a = Arc::new(birkhoff(&p, LIMIT).unwrap());
        let down = search_walk_coloring_direct(&g, k, &p, &seeded(seed)).unwrap();
        if let Decision::Feasible(c) = &down {
            prop_assert!(is_valid(c));
            let red = reduce_coloring(c, LIMIT).unwrap();
            prop_assert_eq!(red.k(), k - 1);
            prop_assert_eq!(red.poset().birkhoff_base(), Some(&p));
            prop_assert!(is_valid(&red));
            // the reduction lifts back to a valid coloring into P
            let back = lift_coloring(&red).unwrap();
            prop_assert!(is_valid(&back));
        }
        let up = search_walk_coloring_direct(&g, k - 1, &a, &seeded(seed ^ 1)).unwrap();
        prop_assert_eq!(down.is_feasible(), up.is_feasible());
        if let Decision::Feasible(ca) = &up {
            let strict = lift_coloring(ca).unwrap();
            let relaxed = lift_coloring_relaxed(ca).unwrap();
            prop_assert_eq!(strict.poset().as_ref(), &p);
            prop_assert!(is_valid(&strict));
            prop_assert!(is_valid(&relaxed));
            // the relaxed candidates contain the strict ones and both pick
            // the smallest id
            for (w, x) in strict.entries() {
                prop_assert!(relaxed.get(&w).unwrap() <= x);
            }
        }
    }

    #[test]
    fn decision_agrees_with_direct_search(
        seed in any::<u64>(),
        n in 1usize..6,
        m in 1usize..4,
        k in 1usize..4,
    ) {
        let mut r = rng(seed);
        let g = random_digraph(n, r.random_range(0.2..0.6), &mut r);
        let p = random_poset(m, 0.3, &mut r);
        let fast = decide_kwalk_colorable(&g, k, &p, &SolverConfig::default()).unwrap();
        let direct = search_walk_coloring_direct(&g, k, &p, &SolverConfig::default()).unwrap();
        prop_assert_eq!(fast.is_feasible(), direct.is_feasible());
        if let Decision::Feasible(c) = fast {
            prop_assert_eq!(c.k(), k);
            prop_assert!(c.check_total().is_ok());
            prop_assert!(is_valid(&c));
        }
    }

    #[test]
    fn feasibility_is_monotone_in_walk_length(
        seed in any::<u64>(),
        n in 1usize..6,
        m in 1usize..4,
        k in 1usize..3,
    ) {
        let mut r = rng(seed);
        let g = random_digraph(n, r.random_range(0.2..0.6), &mut r);
        let p = random_poset(m, 0.3, &mut r);
        let cfg = SolverConfig::default();
        if let Decision::Feasible(c) = decide_kwalk_colorable(&g, k, &p, &cfg).unwrap() {
            for k2 in [k + 1, k + 2] {
                prop_assert!(decide_kwalk_colorable(&g, k2, &p, &cfg).unwrap().is_feasible());
                let e = expand_trivial(&c, k2).unwrap();
                prop_assert_eq!(e.k(), k2);
                prop_assert!(is_valid(&e));
            }
        }
    }

    #[test]
    fn representation_expansions_are_valid(
        seed in any::<u64>(),
        n in 1usize..7,
        m in 1usize..5,
        k in 1usize..3,
    ) {
        let mut r = rng(seed);
        let g = random_digraph(n, r.random_range(0.15..0.5), &mut r);
        let p = Arc::new(random_poset(m, 0.3, &mut r));
        if let Decision::Feasible(c) = decide_kwalk_colorable(&g, k, &p, &seeded(seed)).unwrap() {
            let e = expand_representation(&c, &SetRepresentation::down_sets(Arc::clone(&p))).unwrap();
            prop_assert_eq!(e.k(), k + 1);
            prop_assert_eq!(e.poset().len(), m);
            prop_assert!(is_valid(&e));
        }
        // a coloring into A(P) expands into J(A(P)), a copy of P
        let a = Arc::new(birkhoff(&p, LIMIT).unwrap());
        if let Decision::Feasible(c) = decide_kwalk_colorable(&g, k, &a, &seeded(seed)).unwrap() {
            let e = expand_distributive(&c).unwrap();
            prop_assert!(e.poset().is_isomorphic(&p));
            prop_assert!(is_valid(&e));
            let ideals = SetRepresentation::birkhoff_ideals(Arc::clone(&a)).unwrap();
            prop_assert!(is_valid(&expand_representation(&c, &ideals).unwrap()));
        }
    }

    #[test]
    fn proposition_coloring_is_valid_on_dags(seed in any::<u64>(), n in 1usize..9, m in 1usize..4) {
        let mut r = rng(seed);
        let g = random_dag(n, r.random_range(0.2..0.7), &mut r);
        let p = random_poset(m, 0.3, &mut r);
        let a_len = birkhoff(&p, LIMIT).unwrap().len();
        let length = g.longest_walk_length().finite().unwrap();
        let result = proposition_coloring(&g, &p, LIMIT);
        if length < a_len {
            let c = result.unwrap();
            prop_assert_eq!(c.k(), 2);
            prop_assert!(is_valid(&c));
        } else {
            prop_assert!(result.is_err());
        }
    }

    #[test]
    fn mono_coloring_matches_product_colorability(
        seed in any::<u64>(),
        n in 1usize..7,
        bounds in prop::collection::vec(1usize..4, 1..3),
    ) {
        let mut r = rng(seed);
        let g = random_digraph(n, r.random_range(0.15..0.5), &mut r);
        let q = product_poset(&bounds, DEFAULT_PRODUCT_CAP).unwrap();
        let expected = brute_vertex_colorable(&g, &q);
        match bounded_mono_edge_coloring(&g, &bounds, &SolverConfig::default()).unwrap() {
            MonoOutcome::Infeasible => prop_assert!(!expected),
            MonoOutcome::Feasible { vertex, edges } => {
                prop_assert!(expected);
                prop_assert!(is_valid(&vertex));
                // no walk of bounds[i] + 1 edges all colored i
                for (i, &b) in bounds.iter().enumerate() {
                    let mono: Vec<(usize, usize)> = edges
                        .entries()
                        .into_iter()
                        .filter(|&(_, x)| x == i)
                        .map(|(w, _)| (w[0], w[1]))
                        .collect();
                    let sub = Digraph::new(n, &mono).unwrap();
                    prop_assert_eq!(sub.count_walks(b + 2), 0);
                }
                let runs = longest_monochromatic_runs(&edges).unwrap();
                for (run, &b) in runs.iter().zip(&bounds) {
                    prop_assert!(matches!(run, WalkLength::Finite(l) if *l <= b));
                }
                let profile = mono_profile_vertex_coloring(&edges, &bounds, DEFAULT_PRODUCT_CAP).unwrap();
                prop_assert_eq!(profile.k(), 1);
                prop_assert!(is_valid(&profile));
            }
        }
    }

    #[test]
    fn index_lies_between_its_bounds(seed in any::<u64>(), n in 1usize..7) {
        let mut r = rng(seed);
        let g0 = random_symmetric(n, r.random_range(0.3..0.9), &mut r);
        let cfg = SolverConfig::default();
        let chi = chromatic_number(&g0, cfg.max_chromatic_n).unwrap();
        let floor = ceil_log2(chi);
        let mut best = usize::MAX;
        for _ in 0..4 {
            let g = random_orientation(&g0, &mut r);
            let report = bounds_report(&g, cfg.max_chromatic_n).unwrap();
            prop_assert_eq!(report.chi, chi);
            prop_assert!(report.log2_chi <= report.sperner_r_of_chi);
            let index = directed_chromatic_index(&g, &cfg).unwrap();
            if g.edge_count() > 0 {
                prop_assert!(floor <= index);
            }
            if let Some(upper) = report.log2_len1 {
                prop_assert!(report.log2_chi <= upper);
                prop_assert!(index <= upper.max(usize::from(g.edge_count() > 0)));
            }
            best = best.min(index);
        }
        let (oriented, edges) = min_index_orientation(&g0, &cfg).unwrap();
        prop_assert!(oriented.is_acyclic());
        prop_assert_eq!(oriented.undirected_version(), g0.undirected_version());
        prop_assert_eq!(edges.poset().len(), floor);
        prop_assert!(is_valid(&edges));
        if oriented.edge_count() > 0 {
            prop_assert_eq!(directed_chromatic_index(&oriented, &cfg).unwrap(), floor);
            prop_assert!(floor <= best);
        }
        // the symmetric version needs sperner_r(chi) colors
        if n <= 5 && g0.edge_count() > 0 {
            prop_assert_eq!(directed_chromatic_index(&g0, &cfg).unwrap(), sperner_r(chi));
        }
    }
}

#[test]
fn vertex_decision_is_exact_on_all_small_digraphs() {
    let posets = catalog(3);
    for n in 1..=4 {
        for g in all_digraphs(n) {
            for q in &posets {
                let expected = brute_vertex_colorable(&g, q);
                for cfg in [SolverConfig::default(), no_shortcut()] {
                    let got = decide_kwalk_colorable(&g, 1, q, &cfg).unwrap();
                    assert_eq!(
                        got.is_feasible(),
                        expected,
                        "n={n} {:?} |Q|={}",
                        g.edges(),
                        q.len()
                    );
                    if let Decision::Feasible(c) = got {
                        assert!(is_valid(&c));
                    }
                }
            }
        }
    }
}

#[test]
fn symmetric_feasibility_is_chi_at_most_width() {
    let posets = catalog(5);
    let widths: Vec<usize> = posets.iter().map(dilworth_number).collect();
    for n in 1..=6 {
        for g in symmetric_graph_classes(n) {
            let chi = chromatic_number(&g, 24).unwrap();
            for (q, &w) in posets.iter().zip(&widths) {
                let q = Arc::new(q.clone());
                let fast =
                    decide_vertex_poset_colorable(&g, Arc::clone(&q), &SolverConfig::default())
                        .unwrap();
                let slow =
                    decide_vertex_poset_colorable(&g, Arc::clone(&q), &no_shortcut()).unwrap();
                assert_eq!(
                    fast.is_feasible(),
                    chi <= w,
                    "n={n} {:?} |Q|={}",
                    g.edges(),
                    q.len()
                );
                assert_eq!(
                    slow.is_feasible(),
                    chi <= w,
                    "n={n} {:?} |Q|={}",
                    g.edges(),
                    q.len()
                );
                for d in [fast, slow] {
                    if let Decision::Feasible(c) = d {
                        assert!(is_valid(&c));
                    }
                }
            }
        }
    }
}

#[test]
fn odd_directed_cycles_need_three_elements() {
    let small = catalog(2);
    for (name, g) in odd_cycle_fixtures() {
        for p in &small {
            for k in 1..=4 {
                let d = decide_kwalk_colorable(&g, k, p, &SolverConfig::default()).unwrap();
                assert!(!d.is_feasible(), "{name} |P|={} k={k}", p.len());
            }
        }
        // three incomparable colors always suffice for odd cycles of this size
        assert!(
            decide_kwalk_colorable(&g, 1, &Poset::trivial(3), &SolverConfig::default())
                .unwrap()
                .is_feasible()
        );
    }
}

#[test]
fn even_cycles_are_two_colorable() {
    for n in [2, 4, 6] {
        let g = Digraph::directed_cycle(n);
        let d =
            decide_kwalk_colorable(&g, 1, &Poset::trivial(2), &SolverConfig::default()).unwrap();
        assert!(is_valid(d.coloring().unwrap()));
    }
}
