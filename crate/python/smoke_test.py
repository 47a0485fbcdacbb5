"""Exercises the Python bindings end to end.

Build and install first:  pip install --no-build-isolation ./crates/python
"""

import json

import walkcolor as wc


def check_posets():
    two = wc.Poset.trivial(2)
    subsets = two.birkhoff()
    assert len(subsets) == 4
    assert subsets.labels() == ["{}", "{0}", "{0,1}", "{1}"]
    assert subsets.is_distributive()
    assert subsets.join_irreducibles().is_isomorphic(two)
    assert wc.Poset.trivial(4).birkhoff().dilworth() == 6
    assert wc.Poset.diamond().dilworth() == 2
    assert len(wc.Poset.product([1, 2])) == 6
    p = wc.Poset(["x", "y", "z"], [(0, 1), (1, 2)])
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert wc.Poset.from_json(p.to_json()) == p
    try:
        wc.Poset(["x", "y"], [(0, 1), (1, 0)])
    except wc.WalkcolorError:
        pass
    else:
        raise AssertionError("a 2-cycle is not a partial order")
    try:
        wc.Poset.trivial(5).birkhoff(limit=10)
    except wc.ResourceLimitError:
        pass
    else:
        raise AssertionError("antichain limit not enforced")


def check_digraphs():
    g = wc.Digraph.from_edge_list("# a path\n0 1\n1 2\n")
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]
    assert g.longest_walk_length() == 2
    assert wc.Digraph.directed_cycle(3).longest_walk_length() is None
    assert wc.Digraph.complete_symmetric(5).chromatic_number() == 5
    assert g.walks(2) == [[0, 1], [1, 2]]
    assert wc.Digraph.from_json(g.to_json()) == g


def check_colorings():
    path = wc.Digraph.directed_path(3)
    bad = wc.WalkColoring(path, wc.Poset.trivial(2), 2, [([0, 1], 0), ([1, 2], 0)])
    assert bad.counterexample() == [0, 1, 2]
    good = wc.WalkColoring(path, wc.Poset.trivial(2), 2, [([0, 1], 0), ([1, 2], 1)])
    assert good.is_valid()

    tournament = wc.Digraph.transitive_tournament(4)
    c = wc.decide(tournament, wc.Poset.trivial(2), 2)
    assert c is not None and c.k == 2 and c.is_valid()
    reduced = c.reduce()
    assert reduced.k == 1 and reduced.is_valid()
    for relaxed in (False, True):
        assert reduced.lift(relaxed=relaxed).is_valid()
    assert c.expand(4).is_valid()
    assert reduced.expand_distributive().is_valid()
    assert reduced.expand_down_sets().is_valid()
    again = wc.WalkColoring.from_json(c.to_json(), tournament)
    assert again.entries() == c.entries()
    assert json.loads(c.to_json())["k"] == 2

    for k in range(1, 5):
        assert wc.decide(wc.Digraph.directed_cycle(5), wc.Poset.chain(2), k) is None
    assert wc.decide(wc.Digraph.directed_cycle(5), wc.Poset.trivial(3), 1, direct=True) is not None


def check_indices():
    assert wc.sperner_r(7) == 5
    indices = [wc.directed_chromatic_index(wc.Digraph.complete_symmetric(n)) for n in range(2, 6)]
    assert indices == [2, 3, 4, 4], indices
    assert wc.directed_chromatic_index(wc.Digraph.transitive_tournament(8)) == 3
    chi, log2_chi, length, log2_len1, r = wc.bounds(wc.Digraph.complete_symmetric(4))
    assert (chi, log2_chi, length, log2_len1, r) == (4, 2, None, None, 4)
    oriented, edges = wc.min_index_orientation(wc.Digraph.complete_symmetric(4))
    assert oriented.is_acyclic() and len(edges.poset) == 2 and edges.is_valid()
    assert wc.mono_edge_coloring(wc.Digraph.directed_cycle(3), [1]) is None
    vertex, edges = wc.mono_edge_coloring(wc.Digraph.transitive_tournament(4), [1, 1])
    assert vertex.is_valid() and set(c for _, c in edges.entries()) <= {0, 1}


def check_symmetry():
    s = wc.ListState.random_permutation(1 << 16, seed=3)
    small, rounds = s.run_to_small()
    assert small.domain_size <= 6 and rounds <= wc.log_star(1 << 16) + 4
    three = small.reduce_to_three()
    assert three.is_proper() and max(three.colors()) < 3
    ruling = three.ruling_set()
    assert all(b - a <= 4 for a, b in zip(ruling, ruling[1:]))
    assert wc.composed_walk_coloring(4, 2).is_valid()


if __name__ == "__main__":
    check_posets()
    check_digraphs()
    check_colorings()
    check_indices()
    check_symmetry()
    print("python smoke test: ok")
