import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepdim import (
    ConstructionError,
    InvalidInputError,
    Permutation,
    PermutationFamily,
    SuitabilityKind,
    clique,
    concat_blocks,
    disjoint_pairs,
    path,
    precedes,
    random_suitable_family,
    reverse,
    separates,
    smallest_random_family,
    star,
    three_suitable_family,
    verify_family,
)
from sepdim import perms as pm


def test_precedes_identity_blocks():
    ident = Permutation.identity(4)
    assert precedes(ident, {0, 1}, {2, 3})
    assert not precedes(ident, {0, 2}, {1, 3})
    rev = reverse(ident)
    assert not precedes(rev, {0, 1}, {2, 3})
    assert precedes(rev, {2, 3}, {0, 1})


def test_precedes_rejects_overlap_and_empty():
    ident = Permutation.identity(3)
    with pytest.raises(InvalidInputError):
        precedes(ident, {0, 1}, {1, 2})
    with pytest.raises(InvalidInputError):
        precedes(ident, set(), {1})


def test_separates_examples():
    ident = Permutation.identity(4)
    assert separates(ident, {0, 1}, {2, 3})
    assert not separates(ident, {0, 2}, {1, 3})
    # singletons are always ordered
    assert separates(ident, {2}, {0})


def test_reverse_and_concat():
    ident = Permutation.identity(3)
    assert reverse(ident).order == (2, 1, 0)
    assert reverse(reverse(ident)) == ident
    assert concat_blocks([[1], [2, 0]]).order == (1, 2, 0)
    with pytest.raises(InvalidInputError):
        concat_blocks([[0], [0, 1]])
    with pytest.raises(InvalidInputError):
        concat_blocks([[0], [2]])


perm_strategy = st.integers(min_value=2, max_value=8).flatmap(
    lambda n: st.permutations(list(range(n)))
)


@settings(max_examples=200, deadline=None)
@given(perm_strategy, st.data())
def test_separation_is_reversal_invariant(order, data):
    sigma = Permutation(tuple(order))
    n = sigma.n
    verts = list(range(n))
    a = data.draw(st.sets(st.sampled_from(verts), min_size=1, max_size=max(1, n // 2)))
    rest = [v for v in verts if v not in a]
    if not rest:
        return
    b = data.draw(st.sets(st.sampled_from(rest), min_size=1, max_size=len(rest)))
    assert separates(sigma, a, b) == separates(reverse(sigma), a, b)
    # trichotomy: precedence one way, the other, or no separation
    outcomes = [precedes(sigma, a, b), precedes(sigma, b, a), not separates(sigma, a, b)]
    assert sum(outcomes) == 1


def test_verify_family_star_empty_family():
    verdict = verify_family(star(3), PermutationFamily(4, ()), SuitabilityKind.pairwise())
    assert verdict.ok


def test_verify_family_k4_two_perms_fails_with_witness():
    family = PermutationFamily.from_orders(4, [(0, 1, 2, 3), (0, 2, 1, 3)])
    verdict = verify_family(clique(4), family, SuitabilityKind.pairwise())
    assert not verdict.ok
    assert verdict.witness is not None
    e, f = verdict.witness
    assert set(clique(4).edges[e]) & set(clique(4).edges[f]) == set()


def test_verify_family_path_identity_passes():
    fam = PermutationFamily(4, (Permutation.identity(4),))
    assert verify_family(path(4), fam, SuitabilityKind.pairwise()).ok


def test_verify_family_ground_set_mismatch():
    with pytest.raises(InvalidInputError):
        verify_family(path(4), PermutationFamily(3, ()), SuitabilityKind.pairwise())


def test_first_witness_is_lexicographically_smallest():
    g = clique(4)
    family = PermutationFamily(4, ())  # everything unseparated
    verdict = verify_family(g, family, SuitabilityKind.pairwise())
    pairs = [(p.e, p.f) for p in disjoint_pairs(g)]
    assert verdict.witness == pairs[0]


def test_verify_agrees_with_double_loop_oracle(small_graph_corpus):
    rng = random.Random(7)
    kinds = SuitabilityKind.pairwise()
    for g in small_graph_corpus:
        pairs = disjoint_pairs(g)
        if len(pairs) > 200:
            continue
        orders = []
        for _ in range(rng.randint(0, 3)):
            order = list(range(g.n))
            rng.shuffle(order)
            orders.append(order)
        family = PermutationFamily.from_orders(g.n, orders)
        expected = all(
            any(
                separates(sigma, g.edges[p.e], g.edges[p.f])
                for sigma in family
            )
            for p in pairs
        )
        assert verify_family(g, family, kinds).ok == expected


def test_mixing_conjunction_equivalence():
    # a family passes the combined kind iff it passes both components,
    # and iff every edge pair is blocked under the shared/interleaved order
    g = clique(4)
    rng = random.Random(3)
    for _ in range(20):
        orders = []
        for _ in range(rng.randint(1, 4)):
            order = list(range(4))
            rng.shuffle(order)
            orders.append(order)
        family = PermutationFamily.from_orders(4, orders)
        both = verify_family(g, family, SuitabilityKind.mixing())
        pairwise = verify_family(g, family, SuitabilityKind.pairwise())
        mixing_only = pm._verify_mixing(g, family, SuitabilityKind.mixing())
        assert both.ok == (pairwise.ok and mixing_only.ok)


def test_k_suitable_semantics():
    # family of [3] covering each element as a maximum
    fam = PermutationFamily.from_orders(
        3, [(0, 1, 2), (2, 0, 1), (1, 2, 0)]
    )
    assert verify_family(3, fam, SuitabilityKind.k_suitable(3)).ok
    missing = PermutationFamily.from_orders(3, [(0, 1, 2), (2, 0, 1)])
    verdict = verify_family(3, missing, SuitabilityKind.k_suitable(3))
    assert not verdict.ok
    subset, a = verdict.witness
    assert a in subset


def test_minimal_three_suitable_of_three_is_three():
    # exhaustive oracle: every permutation covers one (A, a) per 3-set,
    # so three elements need three permutations
    from itertools import combinations as comb, permutations as perms

    all_perms = [Permutation(p) for p in perms(range(3))]
    def ok(family):
        return verify_family(3, PermutationFamily(3, family), SuitabilityKind.k_suitable(3)).ok
    assert not any(ok((p,)) for p in all_perms)
    assert not any(ok(pair) for pair in comb(all_perms, 2))
    assert any(ok(triple) for triple in comb(all_perms, 3))
    assert len(three_suitable_family(3, seed=0)) == 3


def test_random_suitable_family_k2_empty_passes():
    fam = random_suitable_family(2, SuitabilityKind.pairwise(), target_size=0, seed=1)
    assert len(fam) == 0


def test_random_suitable_family_verifies_at_default_target():
    fam = random_suitable_family(16, SuitabilityKind.mixing(), seed=5)
    assert len(fam) == 28  # ceil(6.84 * log2 16)
    assert verify_family(clique(16), fam, SuitabilityKind.mixing()).ok


def test_random_suitable_family_retries_exhausted():
    with pytest.raises(ConstructionError):
        random_suitable_family(6, SuitabilityKind.mixing(), target_size=1, seed=0, max_retries=3)


def test_smallest_random_family_monotone_universe():
    fam = smallest_random_family(5, SuitabilityKind.mixing(), seed=2)
    assert verify_family(clique(5), fam, SuitabilityKind.mixing()).ok


def test_family_json_round_trip():
    fam = three_suitable_family(4, seed=1)
    data = pm.family_to_json_dict(fam)
    assert all(min(row) == 1 for row in data["perms"])
    back = pm.family_from_json_dict(data)
    assert back.perms == fam.perms


def test_monotonicity_family_survives_edge_deletion(small_graph_corpus):
    # a family for g stays suitable for any subgraph on the same vertices
    rng = random.Random(11)
    from sepdim import Hypergraph, exact_pi

    count = 0
    for g in small_graph_corpus:
        if g.m < 2 or len(disjoint_pairs(g)) > 20:
            continue
        _value, fam = exact_pi(g)
        for _ in range(5):
            keep = [e for e in g.edges if rng.random() < 0.7]
            sub = Hypergraph.build(g.n, keep)
            assert verify_family(sub, fam, SuitabilityKind.pairwise()).ok
            count += 1
        if count >= 100:
            break
    assert count >= 100
