import pytest

from sepdim import InvalidInputError, SuitabilityKind, clique, grid, hypercube, path, verify_family
from sepdim.constructions import (
    OrderedTreeDecomposition,
    construct_treewidth,
    min_fill_decomposition,
    td_from_pace,
    td_to_pace,
)


def _suitable(g, fam):
    return verify_family(g, fam, SuitabilityKind.pairwise()).ok


def test_min_fill_valid_on_corpus(small_graph_corpus):
    for g in small_graph_corpus[:20]:
        td = min_fill_decomposition(g)
        td.validate(g)


def test_min_fill_width_examples():
    assert min_fill_decomposition(path(6)).width == 1
    assert min_fill_decomposition(clique(5)).width == 4


def test_validate_names_violated_axiom():
    g = path(3)
    with pytest.raises(InvalidInputError, match="vertex coverage"):
        OrderedTreeDecomposition(3, [frozenset({0, 1})], [])
    bad_edges = OrderedTreeDecomposition(
        3, [frozenset({0, 1}), frozenset({2})], [(0, 1)]
    )
    with pytest.raises(InvalidInputError, match="edge coverage"):
        bad_edges.validate(g)
    disconnected_hold = OrderedTreeDecomposition(
        3,
        [frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2})],
        [(0, 1), (1, 2)],
    )
    with pytest.raises(InvalidInputError, match="connectivity"):
        disconnected_hold.validate(g)


def test_treewidth_family_path_tree():
    g = path(6)
    res = construct_treewidth(g, seed=0)
    assert _suitable(g, res.family)
    assert len(res.family) <= res.ledger.paper_bound
    # a forest independently needs at most 2 permutations
    from sepdim.constructions import forest_family

    assert len(forest_family(g)) == 2


def test_treewidth_family_k4_single_bag():
    g = clique(4)
    td = OrderedTreeDecomposition(4, [frozenset(range(4))], [])
    res = construct_treewidth(g, td, seed=1)
    assert _suitable(g, res.family)
    from sepdim import exact_pi

    assert exact_pi(g)[0] == 3 <= len(res.family)


def test_treewidth_family_series_parallel():
    # a theta-ish graph with treewidth 2
    from sepdim import Hypergraph

    g = Hypergraph.build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 4), (2, 5), (3, 5)])
    td = min_fill_decomposition(g)
    assert td.width >= 2
    res = construct_treewidth(g, td, seed=2)
    assert _suitable(g, res.family)
    assert len(res.family) <= res.ledger.paper_bound


def test_treewidth_family_on_grid_and_cube():
    for g in (grid(3), hypercube(3)):
        res = construct_treewidth(g, seed=3)
        assert _suitable(g, res.family)


def test_pace_round_trip():
    g = grid(3)
    td = min_fill_decomposition(g)
    text = td_to_pace(td)
    back = td_from_pace(text)
    back.validate(g)
    assert back.width == td.width
    assert "s td" in text


def test_pace_rejects_malformed():
    with pytest.raises(InvalidInputError):
        td_from_pace("b 1 1 2\n1 2\n")


def test_euler_times_nest_properly():
    g = path(7)
    td = min_fill_decomposition(g)
    for i in range(len(td.bags)):
        assert td.first[i] <= td.last[i]
        for j in td.children[i]:
            assert td.first[i] < td.first[j] <= td.last[j] <= td.last[i]
