from sepdim import (
    Hypergraph,
    Permutation,
    SuitabilityKind,
    clique,
    complete_bipartite,
    exact_poset_dim,
    subdivide,
    verify_family,
)
from sepdim.constructions import (
    default_base_permutation,
    greedy_realizer,
    hypercube_family,
    interval_collection,
    subdivision_family,
)
from sepdim import hypercube, three_suitable_target, three_suitable_family
from sepdim.exact import check_realizer


def _suitable(g, fam):
    return verify_family(g, fam, SuitabilityKind.pairwise()).ok


def test_interval_collection_k3_identity():
    poset = interval_collection(clique(3), Permutation.identity(3))
    # intervals (0,1),(0,2),(1,2): only (0,1) < (1,2)
    assert poset.n == 3
    assert len(poset.lt) == 1
    value, _ = exact_poset_dim(poset)
    assert value == 2


def test_subdivision_family_k3():
    res = subdivision_family(clique(3), Permutation.identity(3))
    half = subdivide(clique(3))
    assert _suitable(half, res.family)
    assert "dim=2" in res.ledger.notes
    assert len(res.family) == 4


def test_subdivision_family_single_edge():
    g = Hypergraph.build(2, [(0, 1)])
    res = subdivision_family(g)
    assert _suitable(subdivide(g), res.family)


def test_subdivision_bipartite_two_block_base():
    g = complete_bipartite(3, 3)
    sigma = default_base_permutation(g)
    poset = interval_collection(g, sigma)
    # colour-block base order: chains have length at most chi - 1 = 1,
    # i.e. the interval order has no 3-chain
    for x, y in poset.lt:
        assert not any(poset.less(y, z) for z in range(poset.n))
    res = subdivision_family(g, sigma)
    assert _suitable(subdivide(g), res.family)


def test_subdivision_originals_between_property():
    # v_i before u_ij before v_j in every realizer-derived permutation
    g = clique(4)
    res = subdivision_family(g, Permutation.identity(4))
    half = subdivide(g)
    dim = int(res.ledger.notes.split("dim=")[1].split()[0])
    for sigma in res.family.perms[:dim]:
        for e, (u, v) in enumerate(g.edges):
            w = g.n + e
            assert sigma.pos[u] < sigma.pos[w] < sigma.pos[v]
    assert _suitable(half, res.family)


def test_greedy_realizer_is_realizer():
    from sepdim import canonical_interval_order

    poset = canonical_interval_order(6)
    realizer = greedy_realizer(poset)
    assert check_realizer(poset, realizer)


def test_subdivision_greedy_fallback():
    g = clique(6)
    res = subdivision_family(g, Permutation.identity(6), realizer_budget=5)
    assert "exact_realizer=False" in res.ledger.notes
    assert _suitable(subdivide(g), res.family)


# ---------------------------------------------------------------------------
# Hypercubes


def test_hypercube_family_d1_empty():
    res = hypercube_family(1)
    assert len(res.family) == 0


def test_hypercube_family_d2_direct():
    res = hypercube_family(2)
    assert len(res.family) == 2
    assert _suitable(hypercube(2), res.family)


def test_hypercube_family_d3_minimal_bit_family():
    res = hypercube_family(3, seed=0)
    # minimal 3-suitable family of the 3 bit positions has size 3
    assert len(res.family) == len(three_suitable_family(3)) == 3
    assert _suitable(hypercube(3), res.family)


def test_hypercube_family_d6():
    res = hypercube_family(6, seed=0)
    assert _suitable(hypercube(6), res.family)
    assert len(res.family) >= 0.5 * 1  # consistency with the weak lower bound
    assert three_suitable_target(6) >= 3
