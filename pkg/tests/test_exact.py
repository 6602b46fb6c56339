import math
from itertools import combinations, permutations

import pytest

from sepdim import (
    BudgetExceededError,
    Hypergraph,
    Permutation,
    PermutationFamily,
    Poset,
    SuitabilityKind,
    canonical_interval_order,
    check_realizer,
    clique,
    complete_uniform,
    empty_graph,
    exact_boxicity,
    exact_pi,
    exact_poset_dim,
    grid,
    hypercube,
    intersection_graph,
    line_graph,
    path,
    star,
    subdivided_clique,
    verify_family,
)
from sepdim import exact as exact_mod


def test_pi_named_instances():
    assert exact_pi(clique(4))[0] == 3
    assert exact_pi(star(5))[0] == 0
    assert exact_pi(clique(3))[0] == 0
    assert exact_pi(grid(3))[0] == 2


def test_pi_witness_sizes_and_verification():
    value, fam = exact_pi(clique(4))
    assert len(fam) == value == 3
    assert verify_family(clique(4), fam, SuitabilityKind.pairwise()).ok


def test_pi_regression_goldens():
    # frozen after first computation; must respect log2(n/2) <= pi <= 6.84 log2 n
    for n, expected in [(5, 3), (6, 4)]:
        value, _fam = exact_pi(clique(n))
        assert value == expected
        assert value >= math.log2(n // 2) - 1e-9
        assert value <= 6.84 * math.log2(n)


def test_pi_budget_exceeded():
    with pytest.raises(BudgetExceededError, match="instance too large"):
        exact_pi(clique(8), budget=64)


def test_pi_fewer_than_two_edges_is_zero():
    assert exact_pi(Hypergraph.build(3, [(0, 1)]))[0] == 0
    assert exact_pi(empty_graph(4))[0] == 0


def test_pi_matches_naive_family_enumeration_on_k4():
    # oracle: enumerate all families of size <= 2 over S_4 and check none is
    # pairwise suitable for K_4, while some family of size 3 is
    g = clique(4)
    perms = [Permutation(p) for p in permutations(range(4))]
    kind = SuitabilityKind.pairwise()

    def any_ok(size):
        return any(
            verify_family(g, PermutationFamily(4, combo), kind).ok
            for combo in combinations(perms, size)
        )

    assert not any_ok(1)
    assert not any_ok(2)
    assert any_ok(3)
    assert exact_pi(g)[0] == 3


def test_pi_monotone_under_edge_addition(small_graph_corpus):
    import random

    rng = random.Random(5)
    checked = 0
    for g in small_graph_corpus:
        if g.m < 2 or g.m > 5:
            continue
        value, _ = exact_pi(g)
        smaller = Hypergraph.build(g.n, [e for e in g.edges if rng.random() < 0.6])
        sub_value, _ = exact_pi(smaller)
        assert sub_value <= value
        checked += 1
    assert checked >= 10


def test_pi_fast_and_reference_solvers_agree():
    instances = [grid(3), hypercube(3), clique(6), subdivided_clique(4)]
    for g in instances:
        fast, _ = exact_pi(g, budget=128)
        old = exact_mod._FAST_PATH_ITEMS
        exact_mod._FAST_PATH_ITEMS = 10**9
        try:
            pure, _ = exact_pi(g, budget=128)
        finally:
            exact_mod._FAST_PATH_ITEMS = old
        assert fast == pure


# ---------------------------------------------------------------------------
# Boxicity


def test_boxicity_complete_graph_is_zero():
    value, reps = exact_boxicity(clique(5))
    assert value == 0 and reps == []


def test_boxicity_c4_is_two():
    c4 = Hypergraph.build(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    value, reps = exact_boxicity(c4)
    assert value == 2
    assert intersection_graph(reps, 4) == c4


def test_boxicity_c4_oracle_all_endpoint_orders():
    # independent enumeration: no single interval graph both contains the
    # 4-cycle and excludes its two diagonals
    c4_edges = {(0, 1), (1, 2), (2, 3), (0, 3)}
    non_edges = {(0, 2), (1, 3)}
    events = list(range(8))  # l0,r0,..: searched as orderings of 8 endpoints
    found = False
    for order in permutations(events):
        # interpret 2i as left and 2i+1 as right endpoint of vertex i
        pos = {e: i for i, e in enumerate(order)}
        if any(pos[2 * v] > pos[2 * v + 1] for v in range(4)):
            continue
        def meet(u, v):
            return pos[2 * u] <= pos[2 * v + 1] and pos[2 * v] <= pos[2 * u + 1]
        if all(meet(u, v) for u, v in c4_edges) and not any(
            meet(u, v) for u, v in non_edges
        ):
            found = True
            break
    assert not found
    assert exact_boxicity(Hypergraph.build(4, sorted(c4_edges)))[0] == 2


def test_boxicity_interval_graph_at_most_one():
    value, reps = exact_boxicity(path(5))
    assert value == 1
    assert intersection_graph(reps, 5) == path(5)


def test_boxicity_cap():
    with pytest.raises(BudgetExceededError):
        exact_boxicity(path(12), cap=9)


def test_boxicity_witness_intersections(small_graph_corpus):
    for g in small_graph_corpus[:15]:
        if g.n > 6:
            continue
        value, reps = exact_boxicity(g)
        assert len(reps) == value
        if value:
            assert intersection_graph(reps, g.n) == g


# ---------------------------------------------------------------------------
# Posets


def test_poset_build_validation():
    p = Poset.build(3, [(0, 1), (1, 2)])
    assert p.less(0, 2)  # transitive closure
    with pytest.raises(Exception):
        Poset.build(2, [(0, 1), (1, 0)])


def test_chain_dimension_one():
    chain = Poset.build(5, [(i, i + 1) for i in range(4)])
    value, realizer = exact_poset_dim(chain)
    assert value == 1
    assert check_realizer(chain, realizer)


def test_antichain_dimension_two():
    anti = Poset.build(4, [])
    value, realizer = exact_poset_dim(anti)
    assert value == 2
    assert check_realizer(anti, realizer)


def test_standard_example_s2_dimension_two():
    # 2+2 crown: a_i < b_j for i != j
    crown = Poset.build(4, [(0, 3), (1, 2)])  # a1,a2,b1,b2 = 0,1,2,3
    value, realizer = exact_poset_dim(crown)
    assert value == 2
    assert check_realizer(crown, realizer)
    # brute-force oracle over pairs of linear extensions
    exts = [
        Permutation(p)
        for p in permutations(range(4))
        if all(p.index(x) < p.index(y) for x, y in crown.lt)
    ]
    assert not any(check_realizer(crown, exact_mod.Realizer((e,))) for e in exts)
    assert any(
        check_realizer(crown, exact_mod.Realizer((e1, e2)))
        for e1 in exts
        for e2 in exts
    )


def test_realizer_reverses_every_incomparable_pair(small_graph_corpus):
    poset = canonical_interval_order(4)
    value, realizer = exact_poset_dim(poset)
    for x, y in poset.incomparable_pairs:
        assert any(L.pos[x] < L.pos[y] for L in realizer.extensions)
        assert any(L.pos[y] < L.pos[x] for L in realizer.extensions)
    for L in realizer.extensions:
        assert poset.is_linear_extension(L)


def test_poset_budget():
    with pytest.raises(BudgetExceededError):
        exact_poset_dim(canonical_interval_order(7), budget=10)


# ---------------------------------------------------------------------------
# Canonical interval orders


def test_canonical_interval_order_small():
    c2 = canonical_interval_order(2)
    assert c2.n == 1
    assert exact_poset_dim(c2)[0] == 1

    c3 = canonical_interval_order(3)
    assert c3.n == 3
    # elements (1,2),(2,3),(1,3): only (1,2) < (2,3)
    labels = c3.labels
    lt_labels = {(labels[x], labels[y]) for x, y in c3.lt}
    assert lt_labels == {((1, 2), (2, 3))}


def test_canonical_interval_order_c5_comparabilities():
    c5 = canonical_interval_order(5)
    assert c5.n == 10
    # brute force count of b <= c pairs
    labels = list(combinations(range(1, 6), 2))
    expected = sum(
        1
        for (a, b) in labels
        for (c, d) in labels
        if (a, b) != (c, d) and b <= c
    )
    assert len(c5.lt) == expected == 15


def test_canonical_dimension_lower_bound():
    # dim >= loglog(n-1)
    for n in (3, 5):
        value, _ = exact_poset_dim(canonical_interval_order(n))
        assert value >= math.ceil(math.log2(math.log2(n - 1)) - 1e-9) if n > 2 else True


def test_pi_equals_line_graph_boxicity_small(small_graph_corpus):
    for g in small_graph_corpus:
        if g.m > 6:
            continue
        pi, _ = exact_pi(g)
        box, _ = exact_boxicity(line_graph(g))
        assert pi == box


def test_pi_small_uniform_hypergraphs():
    # K_5^3 has no two disjoint edges at all; the asymptotic formula bound
    # exceeds the true value, which is why it stays advisory at small n
    from sepdim import hypergraph_clique_bounds

    value, _ = exact_pi(complete_uniform(5, 3), budget=64)
    assert value == 0
    lower, _upper, flag = hypergraph_clique_bounds(5, 3)
    assert lower > value and "sufficiently larger" in flag

    value6, fam = exact_pi(complete_uniform(6, 3), budget=64)
    assert value6 >= 1
    assert verify_family(complete_uniform(6, 3), fam, SuitabilityKind.pairwise()).ok


def test_slot_solvers_agree_on_fuzzed_instances():
    # randomized small hypergraphs: compiled kernel and reference search must
    # agree on the exact value (witnesses may differ only if both verify)
    import random as _random

    rng = _random.Random(2025)
    for _ in range(12):
        n = rng.randint(4, 7)
        m = rng.randint(3, 7)
        edges = set()
        while len(edges) < m:
            size = rng.randint(1, 3)
            edges.add(tuple(sorted(rng.sample(range(n), size))))
        g = Hypergraph.build(n, sorted(edges))
        if len(exact_mod.disjoint_pairs(g)) > 40:
            continue
        fast, fam_fast = exact_pi(g, budget=64)
        old = exact_mod._FAST_PATH_ITEMS
        exact_mod._FAST_PATH_ITEMS = 0  # force kernel
        try:
            forced_fast, _ = exact_pi(g, budget=64)
        finally:
            exact_mod._FAST_PATH_ITEMS = old
        exact_mod._FAST_PATH_ITEMS = 10**9  # force reference
        try:
            pure, fam_pure = exact_pi(g, budget=64)
        finally:
            exact_mod._FAST_PATH_ITEMS = old
        assert fast == pure == forced_fast
        assert verify_family(g, fam_fast, SuitabilityKind.pairwise()).ok
        assert verify_family(g, fam_pure, SuitabilityKind.pairwise()).ok


def test_per_slot_base_paths_agree():
    # the refuter machinery must answer identically on both solver paths
    from sepdim.bounds import refute_subdivided_clique_pi
    import sepdim.bounds as bounds_mod

    old = exact_mod._FAST_PATH_ITEMS
    answers = {}
    for label, threshold in (("fast", 0), ("pure", 10**9)):
        exact_mod._FAST_PATH_ITEMS = threshold
        try:
            answers[label] = (
                refute_subdivided_clique_pi(4, 1),
                refute_subdivided_clique_pi(4, 2),
            )
        finally:
            exact_mod._FAST_PATH_ITEMS = old
    assert answers["fast"] == answers["pure"] == (True, False)


def test_exact_witness_deterministic_across_processes():
    import json as _json
    import subprocess
    import sys as _sys

    script = (
        "import json\n"
        "from sepdim import exact_pi, grid\n"
        "from sepdim.perms import family_to_json_dict\n"
        "v, fam = exact_pi(grid(3))\n"
        "print(json.dumps([v, family_to_json_dict(fam)], sort_keys=True))\n"
    )
    outs = {
        subprocess.run(
            [_sys.executable, "-c", script], capture_output=True, text=True, check=True
        ).stdout
        for _ in range(2)
    }
    assert len(outs) == 1


def test_massaging_moves_preserve_suitability():
    """Empirical check of the refuter's rearrangement step: pulling a stray
    subdivision vertex next to its neighbour keeps every separated pair
    separated, so families can be assumed to place each subdivision vertex
    between its endpoints."""
    from sepdim import Permutation, PermutationFamily, clique, exact_pi, subdivide

    base = clique(4)
    half = subdivide(base)
    _value, fam = exact_pi(half)
    kind = SuitabilityKind.pairwise()
    assert verify_family(half, fam, kind).ok

    def massage(sigma):
        order = list(sigma.order)
        for e, (i, j) in enumerate(base.edges):
            u = base.n + e
            a, b = sorted((i, j), key=order.index)
            pu, pa, pb = order.index(u), order.index(a), order.index(b)
            if pu > pb:
                order.remove(u)
                order.insert(order.index(b), u)
            elif pu < pa:
                order.remove(u)
                order.insert(order.index(a) + 1, u)
            # each single move must preserve suitability of the family
            moved = PermutationFamily(
                half.n,
                tuple(
                    Permutation(tuple(order)) if s is sigma else s for s in fam.perms
                ),
            )
            assert verify_family(half, moved, kind).ok
        return Permutation(tuple(order))

    massaged = PermutationFamily(half.n, tuple(massage(s) for s in fam.perms))
    assert verify_family(half, massaged, kind).ok
    for sigma in massaged.perms:
        for e, (i, j) in enumerate(base.edges):
            u = base.n + e
            lo, hi = sorted((sigma.pos[i], sigma.pos[j]))
            assert lo < sigma.pos[u] < hi


def test_named_planar_instances_small_pi():
    from sepdim import double_grid, grid

    value, _ = exact_pi(double_grid(2))
    assert value <= 3  # axis-parallel double grid drawing gives 3 boxes
    assert value == 2
    value, _ = exact_pi(grid(4), budget=300, lower_hint=2)
    assert value == 2  # the plane drawing of a grid is already a 2-box layout


def test_poset_dimension_two_route_against_bruteforce():
    """Random small posets: the transitive-orientation decision for dimension
    two must agree with brute force over all pairs of linear extensions."""
    import random as _random
    from itertools import permutations as _perms

    rng = _random.Random(77)
    for _ in range(15):
        n = rng.randint(3, 5)
        pairs = set()
        for x in range(n):
            for y in range(n):
                if x < y and rng.random() < 0.4:
                    pairs.add((x, y))
        try:
            poset = Poset.build(n, pairs)
        except Exception:
            continue
        if not poset.incomparable_pairs:
            continue
        exts = [
            Permutation(p)
            for p in _perms(range(n))
            if all(p.index(x) < p.index(y) for x, y in poset.lt)
        ]
        brute_two = any(
            check_realizer(poset, exact_mod.Realizer((a, b)))
            for i, a in enumerate(exts)
            for b in exts[i:]
        )
        value, realizer = exact_poset_dim(poset)
        assert (value == 2) == brute_two
        assert check_realizer(poset, realizer)
