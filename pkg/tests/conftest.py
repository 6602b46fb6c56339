"""Shared corpora: enumerated small connected graphs and seeded hypergraphs."""

from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest

from sepdim import Hypergraph


def _canonical(n: int, edges: frozenset) -> tuple:
    """Minimum edge-list over all vertex relabelings (small n only)."""
    best = None
    for perm in permutations(range(n)):
        mapped = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or mapped < best:
            best = mapped
    return best


def _is_connected(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def connected_graphs_up_to_five_edges() -> list[Hypergraph]:
    """All connected graphs with 1..5 edges, up to isomorphism, spanning
    their vertex set."""
    out = []
    seen = set()
    for n in range(2, 7):
        all_pairs = list(combinations(range(n), 2))
        for m in range(max(1, n - 1), 6):
            for edges in combinations(all_pairs, m):
                used = {v for e in edges for v in e}
                if len(used) != n:
                    continue
                if not _is_connected(n, edges):
                    continue
                key = (n, _canonical(n, frozenset(edges)))
                if key in seen:
                    continue
                seen.add(key)
                out.append(Hypergraph.build(n, edges))
    return out


def random_hypergraphs(count: int = 20, seed: int = 2024) -> list[Hypergraph]:
    """Seeded random hypergraphs with at most 6 edges (rank up to 4)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 8)
        m = rng.randint(2, 6)
        edges = set()
        for _ in range(m):
            size = rng.randint(1, min(4, n))
            edges.add(tuple(sorted(rng.sample(range(n), size))))
        if edges:
            out.append(Hypergraph.build(n, sorted(edges)))
    return out


@pytest.fixture(scope="session")
def small_graph_corpus():
    return connected_graphs_up_to_five_edges()


@pytest.fixture(scope="session")
def hypergraph_corpus():
    return random_hypergraphs()
