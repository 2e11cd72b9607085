from itertools import combinations

import pytest

from heckeboid.enumeration import all_classes
from heckeboid.errors import InvalidCutSet, NotRealizable
from heckeboid.model import cycle_rank, validate_graph, validate_tree
from heckeboid.perms import (
    are_isomorphic,
    canonical_form,
    graph_to_perms,
    make_pair,
    orbifold_invariants,
    perms_to_graph,
)
from heckeboid.treeops import (
    CutSet,
    check_cut_set,
    enumerate_cut_sets,
    enumerate_tree_diagrams,
    graph_to_tree,
    graph_to_tree_with_map,
    is_realizable,
    tree_to_graph,
    tree_to_graph_with_map,
)

STAR = {
    "q": 3,
    "edges": [["v", "r1"], ["v", "r2"], ["v", "b"]],
    "rotations": {"v": [1, 2, 3]},
    "red": ["r1", "r2"],
    "blue": ["b"],
    "sigma": [["r1", "r2"]],
}


def graph_of(q, s2, sq, n):
    return perms_to_graph(make_pair(q, s2, sq, n=n))


# -- tree -> graph ------------------------------------------------------------

def test_red_blue_edge():
    for q in (3, 4, 7):
        g = tree_to_graph(validate_tree({"q": q, "edges": [["r", "b"]], "red": ["r"], "blue": ["b"]}))
        assert (g.n, g.black, g.white) == (1, ((1,),), ((1,),))


def test_red_red_edge_rejected():
    t = validate_tree({"q": 3, "edges": [["a", "b"]], "red": ["a", "b"]})
    assert not is_realizable(t)
    with pytest.raises(NotRealizable):
        tree_to_graph(t)


def test_blue_blue_edge_is_subdivided():
    # the index-2 graph: one valence-2 black vertex between two valence-1 white vertices
    t = validate_tree({"q": 3, "edges": [["a", "b"]], "blue": ["a", "b"]})
    g = tree_to_graph(t)
    assert are_isomorphic(graph_to_perms(g), make_pair(3, "(1 2)", "id", n=2))


def test_star_with_swapped_reds():
    g = tree_to_graph(validate_tree(STAR))
    assert g.n == 4
    assert sorted(map(len, g.black)) == [2, 2]
    assert sorted(map(len, g.white)) == [1, 3]
    assert orbifold_invariants(graph_to_perms(g)).e2 == 0


def test_star_with_fixed_reds():
    g = tree_to_graph(validate_tree(dict(STAR, sigma=[])))
    assert g.n == 4
    assert orbifold_invariants(graph_to_perms(g)).e2 == 2


def test_label_map_covers_tree_edges():
    conv = tree_to_graph_with_map(validate_tree(STAR))
    assert sorted(conv.label_map) == [1, 2, 3, 4]
    assert sorted(k for ks in conv.label_map.values() for k in ks) == [1, 2, 3, 3]


# -- graph -> tree ------------------------------------------------------------

def test_tree_shaped_graph():
    g = validate_graph({"q": 3, "edges": 1, "black": [[1]], "white": [[1]]})
    assert enumerate_cut_sets(g) == [CutSet(frozenset())]
    t = graph_to_tree(g)
    assert all(t.sigma[r] == r for r in t.red)


def test_three_edge_graph_cut():
    g = graph_of(3, "(1 2)", "(1 2 3)", 3)
    cuts = enumerate_cut_sets(g)
    assert len(cuts) == 1
    t = graph_to_tree(g, cuts[0])
    # the cut pair plus the valence-1 black vertex: three reds, no blue
    assert len(t.red) == 3 and not t.blue
    assert sorted(len(o) for o in t.sigma_orbits()) == [1, 2]
    assert are_isomorphic(graph_to_perms(tree_to_graph(t)), graph_to_perms(g))


def test_q4_two_cuts():
    g = graph_of(4, "(1 2)(3 4)", "(1 2 3 4)", 4)
    cuts = enumerate_cut_sets(g)
    assert [c.key() for c in cuts] == [(0, 1)]
    for c in cuts:
        t = graph_to_tree(g, c)
        assert len(t.red) == 4 and [len(o) for o in t.sigma_orbits()] == [2, 2]
        assert are_isomorphic(graph_to_perms(tree_to_graph(t)), graph_to_perms(g))


def test_q3_n6_cut_sets():
    g = graph_of(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6)
    assert cycle_rank(g) == 2
    cuts = enumerate_cut_sets(g)
    # {1,2} and {5,6} are loops at the two white vertices, {3,4} is the bridge:
    # both loops must be cut and the bridge must not be
    assert [c.key() for c in cuts] == [(0, 2)]
    for c in cuts:
        assert are_isomorphic(graph_to_perms(tree_to_graph(graph_to_tree(g, c))), graph_to_perms(g))


def test_invalid_cut_sets():
    g = graph_of(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6)
    with pytest.raises(InvalidCutSet):
        check_cut_set(g, CutSet(frozenset({0})))
    with pytest.raises(InvalidCutSet):
        graph_to_tree(g, CutSet(frozenset({0, 7})))
    g = graph_of(3, "(1 2)", "(1 2 3)", 3)
    with pytest.raises(InvalidCutSet):
        graph_to_tree(g, CutSet(frozenset({1})))  # valence-1 vertex


def _leaves_tree(g, cut):
    """Independent check: split cut vertices, then |E| = |V| - 1 and connected."""
    nodes, adj = set(), {}
    for e in range(1, g.n + 1):
        b = g.black_of()[e]
        u = ("cut", e) if b in cut else ("b", b)
        v = ("w", g.white_of()[e])
        nodes |= {u, v}
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen, stack = set(), [next(iter(nodes))]
    while stack:
        x = stack.pop()
        if x not in seen:
            seen.add(x)
            stack.extend(adj[x])
    return seen == nodes and g.n == len(nodes) - 1


def test_cut_sets_match_subset_filter(small_graphs):
    for g in small_graphs:
        twos = [i for i, b in enumerate(g.black) if len(b) == 2]
        expected = [c for c in combinations(twos, cycle_rank(g)) if _leaves_tree(g, c)]
        assert [c.key() for c in enumerate_cut_sets(g)] == expected
        for c in combinations(twos, cycle_rank(g)):
            if c not in expected:
                with pytest.raises(InvalidCutSet):
                    check_cut_set(g, CutSet(frozenset(c)))


def test_parallel_edges_any_two_cuts():
    # three black vertices each joining the same two white triangles
    g = graph_of(3, "(1 2)(3 4)(5 6)", "(1 3 5)(2 4 6)", 6)
    assert [c.key() for c in enumerate_cut_sets(g)] == [(0, 1), (0, 2), (1, 2)]


def test_round_trip_every_cut_set(small_graphs):
    for g in small_graphs:
        cuts = enumerate_cut_sets(g)
        assert cuts
        for c in cuts:
            t = graph_to_tree(g, c)
            back = tree_to_graph(t)
            assert are_isomorphic(graph_to_perms(back), graph_to_perms(g))


def test_red_count_and_edge_accounting(small_graphs):
    for g in small_graphs:
        ones = sum(1 for b in g.black if len(b) == 1)
        for c in enumerate_cut_sets(g):
            t = graph_to_tree(g, c)
            assert len(t.red) == 2 * cycle_rank(g) + ones
            odd = sum(1 for u, v in t.edges if u not in t.red and v not in t.red)
            assert tree_to_graph(t).n == len(t.edges) + odd


def test_graph_to_tree_label_map():
    g = graph_of(3, "(1 2)(3 4)(5 6)", "(1 2 3)(4 5 6)", 6)
    conv = graph_to_tree_with_map(g, enumerate_cut_sets(g)[0])
    assert sorted(e for es in conv.label_map.values() for e in es) == list(range(1, 7))


@pytest.mark.parametrize("n", range(1, 6))
def test_surjective_q3(n):
    hit = set()
    for t in enumerate_tree_diagrams(3, 1):
        if is_realizable(t):
            g = tree_to_graph(t)
            if g.n == n:
                hit.add(canonical_form(graph_to_perms(g)))
    assert hit == set(all_classes(3, n).classes)


def test_tree_diagram_count_q4():
    # frozen from the first run; colorings and involutions are not deduplicated
    assert sum(1 for _ in enumerate_tree_diagrams(4, 3)) == 14933
