"""Chordality helpers: MCS orders, hole and asteroidal-triple witnesses."""

from __future__ import annotations

from itertools import combinations


def mcs_order(adj: list[set[int]]) -> list[int]:
    """Maximum cardinality search visit order (deterministic, min-index ties)."""
    n = len(adj)
    weight = [0] * n
    visited = [False] * n
    order = []
    for _ in range(n):
        v = min(
            (u for u in range(n) if not visited[u]),
            key=lambda u: (-weight[u], u),
        )
        visited[v] = True
        order.append(v)
        for u in adj[v]:
            if not visited[u]:
                weight[u] += 1
    return order


def peo_violation(adj: list[set[int]], order: list[int]) -> tuple[int, int, int] | None:
    """First violation of the perfect-elimination property of `order`.

    `order` is read as an elimination order (order[0] removed first).  A
    violation is (v, u, w): u is v's earliest later neighbour and w is a
    later neighbour of v not adjacent to u.
    """
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = sorted((u for u in adj[v] if pos[u] > pos[v]), key=lambda u: pos[u])
        if len(later) < 2:
            continue
        u = later[0]
        for w in later[1:]:
            if w not in adj[u]:
                return (v, u, w)
    return None


def is_chordal(adj: list[set[int]]) -> bool:
    order = list(reversed(mcs_order(adj)))
    return peo_violation(adj, order) is None


def find_hole(adj: list[set[int]]) -> tuple[int, ...] | None:
    """Some chordless cycle of length >= 4, or None.

    Exhaustive over vertex subsets by increasing size; fine at the small
    orders this package works with.
    """
    n = len(adj)
    for size in range(4, n + 1):
        for subset in combinations(range(n), size):
            inside = set(subset)
            degs = [sum(1 for u in adj[v] if u in inside) for v in subset]
            if any(d != 2 for d in degs):
                continue
            # 2-regular induced subgraph; connected <=> single cycle
            seen = {subset[0]}
            stack = [subset[0]]
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u in inside and u not in seen:
                        seen.add(u)
                        stack.append(u)
            if len(seen) == size:
                return subset
    return None


def find_asteroidal_triple(adj: list[set[int]]) -> tuple[int, int, int] | None:
    """An asteroidal triple, or None: three pairwise non-adjacent vertices such
    that each pair is joined by a path avoiding the closed neighbourhood of
    the third."""
    n = len(adj)

    def connected_avoiding(a: int, b: int, banned: set[int]) -> bool:
        if a in banned or b in banned:
            return False
        seen = {a}
        stack = [a]
        while stack:
            v = stack.pop()
            if v == b:
                return True
            for u in adj[v]:
                if u not in seen and u not in banned:
                    seen.add(u)
                    stack.append(u)
        return False

    for x, y, z in combinations(range(n), 3):
        if y in adj[x] or z in adj[x] or z in adj[y]:
            continue
        if (
            connected_avoiding(x, y, adj[z] | {z})
            and connected_avoiding(x, z, adj[y] | {y})
            and connected_avoiding(y, z, adj[x] | {x})
        ):
            return (x, y, z)
    return None


def greedy_coloring(adj: list[set[int]], order: list[int]) -> list[int]:
    """Greedy proper colouring along `order`; colours are 0-based."""
    color = [-1] * len(adj)
    for v in order:
        used = {color[u] for u in adj[v] if color[u] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color
