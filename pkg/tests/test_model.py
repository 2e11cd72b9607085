import pytest

from heckeboid.errors import BadQ, ValidationError
from heckeboid.model import (
    HeckeSignature,
    cycle_rank,
    graph_to_raw,
    tree_to_raw,
    validate_graph,
    validate_tree,
)
from heckeboid.perms import make_pair, perms_to_graph

TRIVIAL = {"q": 3, "edges": 1, "black": [[1]], "white": [[1]], "rotations": {}}
THREE_EDGE = {"q": 3, "edges": 3, "black": [[1, 2], [3]], "white": [[1, 2, 3]], "rotations": {"0": [1, 2, 3]}}


def codes(raw, validator=validate_graph):
    with pytest.raises(ValidationError) as exc:
        validator(raw)
    return exc.value.codes


def test_signature_rejects_small_q():
    with pytest.raises(BadQ):
        HeckeSignature(2)
    assert HeckeSignature(3).q == 3


def test_trivial_graph_is_valid():
    g = validate_graph(TRIVIAL)
    assert g.n == 1 and g.black == ((1,),) and g.white == ((1,),)


def test_three_edge_graph_is_valid():
    g = validate_graph(THREE_EDGE)
    assert g.black == ((1, 2), (3,))
    assert g.rotations == {0: (1, 2, 3)}


def test_white_valence_three_under_q4():
    raw = dict(THREE_EDGE, q=4)
    assert "BadValence" in codes(raw)


def test_black_valence_three():
    raw = {"q": 3, "edges": 3, "black": [[1, 2, 3]], "white": [[1, 2, 3]], "rotations": {"0": [1, 2, 3]}}
    assert codes(raw) == {"BadValence"}


@pytest.mark.parametrize(
    "raw, code",
    [
        ({"q": 3, "edges": 2, "black": [[1], [1]], "white": [[2]]}, "NotBipartite"),
        ({"q": 3, "edges": 2, "black": [[1, 2]], "white": [[1]]}, "DanglingEdge"),
        ({"q": 3, "edges": 1, "black": [[1]], "white": [[7]]}, "DanglingEdge"),
        ({"q": 3, "edges": 3, "black": [[1, 2], [3]], "white": [[1, 2, 3]], "rotations": {"0": [1, 2, 4]}}, "BadRotation"),
        ({"q": 3, "edges": 3, "black": [[1, 2], [3]], "white": [[1, 2, 3]]}, "BadRotation"),
        ({"q": 3, "edges": 2, "black": [[1], [2]], "white": [[1], [2]]}, "Disconnected"),
        ({"q": 3, "edges": 0, "black": [], "white": []}, "Empty"),
    ],
)
def test_graph_errors(raw, code):
    assert code in codes(raw)


def test_multiple_violations_reported_together():
    raw = {"q": 4, "edges": 3, "black": [[1, 2, 3]], "white": [[1, 2, 3]], "rotations": {"0": [1, 2, 3]}}
    assert codes(raw) == {"BadValence"}
    raw = {"q": 4, "edges": 3, "black": [[1, 2, 3]], "white": [[1, 2, 3]]}
    # two valence errors; the rotation is only demanded for q-valent vertices
    with pytest.raises(ValidationError) as exc:
        validate_graph(raw)
    assert len(exc.value.violations) == 2


def test_rotation_normalized_cyclically():
    a = validate_graph(dict(THREE_EDGE, rotations={"0": [2, 3, 1]}))
    b = validate_graph(THREE_EDGE)
    assert a == b
    c = validate_graph(dict(THREE_EDGE, rotations={"0": [1, 3, 2]}))
    assert c != b


def test_multi_edge_allowed():
    # black {1, 2} is joined to the white vertex twice
    g = validate_graph(THREE_EDGE)
    assert g.black_of()[1] == g.black_of()[2] and g.white_of()[1] == g.white_of()[2]


def test_raw_round_trip():
    g = validate_graph(THREE_EDGE)
    assert validate_graph(graph_to_raw(g)) == g


@pytest.mark.parametrize(
    "raw, rank",
    [
        (TRIVIAL, 0),
        (THREE_EDGE, 1),  # 3 edges, 3 vertices
    ],
)
def test_cycle_rank_examples(raw, rank):
    assert cycle_rank(validate_graph(raw)) == rank


def test_cycle_rank_q4_pair():
    g = perms_to_graph(make_pair(4, "(1 2)(3 4)", "(1 2 3 4)", n=4))
    assert (g.n, len(g.black), len(g.white)) == (4, 2, 1)
    assert cycle_rank(g) == 2


def test_degree_sums(small_graphs):
    for g in small_graphs:
        assert sum(map(len, g.black)) == sum(map(len, g.white)) == g.n
        ones = sum(1 for w in g.white if len(w) == 1)
        assert (g.n - ones) % g.q == 0
        assert (g.n + 1) // 2 <= len(g.black) <= g.n
        assert cycle_rank(g) >= 0


# -- trees --------------------------------------------------------------------

STAR = {
    "q": 3,
    "edges": [["v", "r1"], ["v", "r2"], ["v", "b"]],
    "rotations": {"v": [1, 2, 3]},
    "red": ["r1", "r2"],
    "blue": ["b"],
    "sigma": [["r1", "r2"]],
}


def test_single_edge_tree():
    t = validate_tree({"q": 3, "edges": [["a", "b"]], "red": ["a", "b"]})
    assert t.sigma == {"a": "a", "b": "b"}


def test_star_tree():
    t = validate_tree(STAR)
    assert t.sigma["r1"] == "r2" and t.sigma["r2"] == "r1"
    assert t.internal == {"v"}
    assert validate_tree(tree_to_raw(t)) == t


@pytest.mark.parametrize(
    "change, code",
    [
        ({"sigma": [["r1", "b"]]}, "BadInvolution"),
        ({"sigma": [["r1", "r2"], ["r2", "r1", "r1"]]}, "BadInvolution"),
        ({"sigma": [["r1", "r2"], ["r1"]]}, "BadInvolution"),
        ({"blue": ["b", "r1"]}, "BadPartition"),
        ({"blue": []}, "BadPartition"),
        ({"red": ["r1", "r2", "v"]}, "BadPartition"),
        ({"rotations": {"v": [1, 2]}}, "BadRotation"),
        ({"rotations": {}}, "BadRotation"),
        ({"edges": [["v", "r1"], ["v", "r2"], ["v", "b"], ["r1", "r2"]]}, "NotATree"),
        ({"edges": []}, "Empty"),
        ({"q": 4}, "BadInternalValence"),
    ],
)
def test_tree_errors(change, code):
    assert code in codes(dict(STAR, **change), validate_tree)


def test_disconnected_tree():
    raw = {"q": 3, "edges": [["a", "b"], ["c", "d"]], "red": ["a", "b", "c", "d"]}
    assert "NotATree" in codes(raw, validate_tree)
