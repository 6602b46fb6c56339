import pytest

from sepdim import (
    GeneratorSpec,
    Hypergraph,
    InvalidInputError,
    clique,
    complete_bipartite,
    complete_uniform,
    degeneracy_order,
    disjoint_pairs,
    double_grid,
    empty_graph,
    generate,
    gnp,
    grid,
    hypercube,
    induced_subgraph,
    line_graph,
    path,
    star,
    subdivide,
    subdivided_clique,
)
from sepdim import hypergraph as hg


def test_clique_counts():
    g = clique(4)
    assert g.n == 4 and g.m == 6 and g.is_graph


def test_hypercube_counts():
    g = hypercube(3)
    assert g.n == 8 and g.m == 12


def test_subdivided_clique_counts():
    g = subdivided_clique(4)
    assert g.n == 10 and g.m == 12
    # originals keep labels below the subdivision vertices
    assert all(max(e) >= 4 for e in g.edges)


def test_generate_dispatch_and_validation():
    assert generate(GeneratorSpec("clique", n=5)) == clique(5)
    assert generate(GeneratorSpec("bipartite", m=2, n=3)) == complete_bipartite(2, 3)
    assert generate(GeneratorSpec("uniform", n=5, r=3)) == complete_uniform(5, 3)
    assert generate(GeneratorSpec("gnp", n=6, p=0.5, seed=1)) == gnp(6, 0.5, 1)
    with pytest.raises(InvalidInputError, match="p"):
        gnp(5, 1.5, 0)
    with pytest.raises(InvalidInputError, match="r"):
        complete_uniform(3, 4)
    with pytest.raises(InvalidInputError, match="family"):
        generate(GeneratorSpec("nope", n=3))
    with pytest.raises(InvalidInputError, match="requires parameter"):
        generate(GeneratorSpec("clique"))


def test_gnp_reproducible():
    assert gnp(12, 0.4, 99) == gnp(12, 0.4, 99)
    assert gnp(12, 0.4, 99) != gnp(12, 0.4, 100)


def test_edge_validation():
    with pytest.raises(InvalidInputError, match="duplicate"):
        Hypergraph.build(3, [(0, 1), (1, 0)])
    with pytest.raises(InvalidInputError, match="repeats"):
        Hypergraph.build(3, [(1, 1)])
    with pytest.raises(InvalidInputError, match="nonempty"):
        Hypergraph.build(3, [()])
    with pytest.raises(InvalidInputError, match="range"):
        Hypergraph.build(2, [(0, 2)])
    # singleton edges are allowed
    h = Hypergraph.build(3, [(0,), (1, 2)])
    assert h.rank == 2 and not h.is_graph


def test_line_graph_examples():
    assert line_graph(path(3)) == clique(2)
    assert line_graph(clique(3)) == clique(3)
    matching = Hypergraph.build(4, [(0, 1), (2, 3)])
    assert line_graph(matching) == empty_graph(2)
    with pytest.raises(InvalidInputError):
        line_graph(empty_graph(3))


def test_line_graph_matches_bruteforce(small_graph_corpus, hypergraph_corpus):
    for h in list(small_graph_corpus) + list(hypergraph_corpus):
        if h.m > 50:
            continue
        lg = line_graph(h)
        for i in range(h.m):
            for j in range(i + 1, h.m):
                expected = bool(set(h.edges[i]) & set(h.edges[j]))
                assert lg.has_edge(i, j) == expected


def test_disjoint_pairs_examples():
    assert len(disjoint_pairs(clique(4))) == 3
    assert disjoint_pairs(clique(3)) == []
    pairs = disjoint_pairs(path(4))
    assert len(pairs) == 1
    e, f = pairs[0].e, pairs[0].f
    assert path(4).edges[e] == (0, 1) and path(4).edges[f] == (2, 3)


def test_disjoint_pairs_complement_property(small_graph_corpus):
    for g in small_graph_corpus[:40]:
        listed = {(p.e, p.f) for p in disjoint_pairs(g)}
        for i in range(g.m):
            for j in range(i + 1, g.m):
                inter = set(g.edges[i]) & set(g.edges[j])
                assert ((i, j) in listed) == (not inter)


def test_degeneracy_examples():
    k, order = degeneracy_order(path(6))
    assert k == 1
    k, _ = degeneracy_order(clique(7))
    assert k == 6
    k, _ = degeneracy_order(subdivided_clique(4))
    assert k == 2


def test_degeneracy_order_witnesses(small_graph_corpus):
    for g in small_graph_corpus:
        k, order = degeneracy_order(g)
        pos = {v: i for i, v in enumerate(order)}
        for i, v in enumerate(order):
            later = sum(1 for u in g.adjacency[v] if pos[u] > i)
            assert later <= k


def test_grid_and_double_grid():
    g = grid(3)
    assert g.n == 9 and g.m == 12
    d = double_grid(2)
    assert d.n == 8 and d.m == 2 * 4 + 4


def test_star_path_empty():
    assert star(5).n == 6 and star(5).m == 5
    assert path(1).m == 0
    assert empty_graph(4).m == 0


def test_subdivide_structure():
    g = subdivide(path(3))
    assert g.n == 5 and g.m == 4
    with pytest.raises(InvalidInputError):
        subdivide(complete_uniform(4, 3))


def test_induced_subgraph():
    g = clique(5)
    sub, mapping = induced_subgraph(g, [1, 3, 4])
    assert sub == clique(3)
    assert mapping == [1, 3, 4]


def test_json_round_trip(small_graph_corpus, hypergraph_corpus):
    for h in list(small_graph_corpus)[:10] + list(hypergraph_corpus)[:10]:
        assert hg.loads(hg.dumps(h)) == h
        assert hg.from_text(hg.to_text(h)) == h


def test_json_is_one_based():
    data = hg.to_json_dict(path(2))
    assert data == {"n": 2, "edges": [[1, 2]]}
    text = hg.to_text(path(2))
    assert text == "2 1\n1 2\n"
