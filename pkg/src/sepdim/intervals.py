"""Interval representations and the permutations <-> interval-graphs bridge.

Endpoints are rationals (integers in everything this package itself
produces) so intersection tests are bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InvalidInputError, VerificationError
from . import chordal
from .hypergraph import Hypergraph, line_graph
from .perms import (
    Permutation,
    PermutationFamily,
    SuitabilityKind,
    verify_family,
)


@dataclass(frozen=True)
class IntervalRepresentation:
    """Closed interval [l, r] per element id."""

    items: tuple[tuple[int, Fraction, Fraction], ...]

    def __post_init__(self):
        seen = set()
        for ident, l, r in self.items:
            if l > r:
                raise InvalidInputError(f"interval for {ident} has l > r")
            if ident in seen:
                raise InvalidInputError(f"duplicate interval id {ident}")
            seen.add(ident)

    @staticmethod
    def build(mapping) -> "IntervalRepresentation":
        items = tuple(
            (ident, Fraction(l), Fraction(r))
            for ident, (l, r) in sorted(mapping.items())
        )
        return IntervalRepresentation(items)

    def as_dict(self) -> dict[int, tuple[Fraction, Fraction]]:
        return {ident: (l, r) for ident, l, r in self.items}

    def ids(self) -> list[int]:
        return [ident for ident, _, _ in self.items]

    def intersection_edges(self) -> set[tuple[int, int]]:
        out = set()
        for (a, la, ra), (b, lb, rb) in combinations(self.items, 2):
            if la <= rb and lb <= ra:
                out.add((min(a, b), max(a, b)))
        return out


def intersection_graph(reps: list[IntervalRepresentation], n: int) -> Hypergraph:
    """Intersection of the reps' interval graphs over ids 0..n-1.

    The empty intersection is the complete graph (every pair adjacent).
    """
    edges = {(i, j) for i, j in combinations(range(n), 2)}
    for rep in reps:
        if sorted(rep.ids()) != list(range(n)):
            raise InvalidInputError("representation ids do not cover 0..n-1")
        edges &= rep.intersection_edges()
    return Hypergraph.build(n, sorted(edges))


# ---------------------------------------------------------------------------
# Interval sandwich feasibility
#
# Search over endpoint event sequences: at each step either start an interval
# or end an active one.  Starting v while u is active makes {u, v} adjacent,
# so a forbidden pair must never be co-active, and when v's interval ends all
# its required neighbours must already have started.  Suffix feasibility
# depends only on (started, ended) vertex sets, which keeps the memo at 3^n.


def interval_sandwich(
    n: int,
    required: set[tuple[int, int]],
    forbidden: set[tuple[int, int]],
) -> list[tuple[str, int]] | None:
    """Event sequence for an interval graph with required edges and forbidden
    non-edges (pairs outside both sets are free), or None if none exists."""
    req_adj = [set() for _ in range(n)]
    for u, v in required:
        req_adj[u].add(v)
        req_adj[v].add(u)
    forb_adj = [set() for _ in range(n)]
    for u, v in forbidden:
        forb_adj[u].add(v)
        forb_adj[v].add(u)
    req_masks = [sum(1 << u for u in req_adj[v]) for v in range(n)]
    forb_masks = [sum(1 << u for u in forb_adj[v]) for v in range(n)]
    full = (1 << n) - 1
    memo: dict[tuple[int, int], bool] = {}

    def feasible(started: int, ended: int) -> bool:
        if ended == full:
            return True
        key = (started, ended)
        hit = memo.get(key)
        if hit is not None:
            return hit
        active = started & ~ended
        ok = False
        # end an active vertex whose required neighbours have all started
        for v in range(n):
            bit = 1 << v
            if active & bit and req_masks[v] & ~started == 0:
                if feasible(started, ended | bit):
                    ok = True
                    break
        if not ok:
            # start a vertex with no active forbidden neighbour
            for v in range(n):
                bit = 1 << v
                if not started & bit and not forb_masks[v] & active:
                    if feasible(started | bit, ended):
                        ok = True
                        break
        memo[key] = ok
        return ok

    if not feasible(0, 0):
        return None
    # replay the memo to extract one event sequence
    events: list[tuple[str, int]] = []
    started, ended = 0, 0
    while ended != full:
        advanced = False
        active = started & ~ended
        for v in range(n):
            bit = 1 << v
            if active & bit and req_masks[v] & ~started == 0:
                if feasible(started, ended | bit):
                    events.append(("end", v))
                    ended |= bit
                    advanced = True
                    break
        if advanced:
            continue
        for v in range(n):
            bit = 1 << v
            if not started & bit and not forb_masks[v] & active:
                if feasible(started | bit, ended):
                    events.append(("start", v))
                    started |= bit
                    advanced = True
                    break
        if not advanced:  # pragma: no cover - guarded by the feasibility check
            raise VerificationError("sandwich replay desynchronised from memo")
    return events


def representation_from_events(events: list[tuple[str, int]]) -> IntervalRepresentation:
    mapping: dict[int, list[int]] = {}
    for t, (what, v) in enumerate(events, start=1):
        if what == "start":
            mapping[v] = [t, t]
        else:
            mapping[v][1] = t
    return IntervalRepresentation.build({v: (l, r) for v, (l, r) in mapping.items()})


# ---------------------------------------------------------------------------
# Interval graph recognition


def is_interval_graph(
    g: Hypergraph, representation_cap: int = 14
) -> tuple[bool, IntervalRepresentation | tuple | None]:
    """Recognise interval graphs.

    Returns (True, representation) on success (representation only up to
    `representation_cap` vertices, else None) and (False, witness) otherwise,
    where the witness is ("hole", cycle) or ("asteroidal-triple", triple):
    interval graphs are exactly the chordal graphs without asteroidal triples.
    """
    if not g.is_graph:
        raise InvalidInputError("interval recognition is defined for graphs")
    adj = [set(a) for a in g.adjacency]
    if not chordal.is_chordal(adj):
        hole = chordal.find_hole(adj)
        if hole is None:  # pragma: no cover - chordality check implies a hole
            raise VerificationError("non-chordal graph without a hole")
        return False, ("hole", hole)
    at = chordal.find_asteroidal_triple(adj)
    if at is not None:
        return False, ("asteroidal-triple", at)
    if g.n > representation_cap:
        return True, None
    required = {(u, v) for u, v in g.edges}
    forbidden = {
        (u, v) for u, v in combinations(range(g.n), 2) if (u, v) not in required
    }
    events = interval_sandwich(g.n, required, forbidden)
    if events is None:  # pragma: no cover - chordal AT-free graphs are interval
        raise VerificationError("chordal AT-free graph rejected by sandwich search")
    return True, representation_from_events(events)


# ---------------------------------------------------------------------------
# The two constructive directions between permutations and representations


def perms_to_interval_graphs(
    h: Hypergraph, family: PermutationFamily
) -> list[IntervalRepresentation]:
    """One representation per permutation: edge e becomes the closed interval
    spanned by the positions of its vertices.  Their intersection is the line
    graph of h; this is asserted before returning."""
    verdict = verify_family(h, family, SuitabilityKind.pairwise())
    if not verdict.ok:
        raise InvalidInputError(
            f"family is not pairwise suitable for h (witness {verdict.witness})"
        )
    reps = []
    for sigma in family:
        mapping = {}
        for idx, e in enumerate(h.edges):
            ranks = [sigma.rank(v) for v in e]
            mapping[idx] = (min(ranks), max(ranks))
        reps.append(IntervalRepresentation.build(mapping))
    if h.m >= 1:
        got = intersection_graph(reps, h.m)
        if got != line_graph(h):
            raise VerificationError("representation intersection is not L(h)")
    return reps


def intervals_to_perms(
    h: Hypergraph, reps: list[IntervalRepresentation]
) -> PermutationFamily:
    """Read one vertex permutation per representation via clique regions.

    Each representation must be an interval supergraph of L(h) on the edge
    ids of h and their joint intersection must equal L(h); a vertex's clique
    region is the intersection of its incident edges' intervals (nonempty by
    the Helly property when the representations are honest).
    """
    if h.m < 1:
        raise InvalidInputError("need at least one edge")
    lg = line_graph(h)
    lg_edges = set(lg.edges)
    for rep in reps:
        if sorted(rep.ids()) != list(range(h.m)):
            raise InvalidInputError("representation ids must be the edge ids 0..m-1")
        if not lg_edges <= rep.intersection_edges():
            raise InvalidInputError("a representation misses an edge of L(h)")
    if intersection_graph(reps, h.m) != lg:
        raise InvalidInputError("joint intersection of representations is not L(h)")

    perms = []
    for rep in reps:
        ivals = rep.as_dict()
        keys = {}
        for v in range(h.n):
            incident = [i for i, e in enumerate(h.edges) if v in e]
            if not incident:
                keys[v] = (Fraction(10**9), Fraction(10**9))  # isolated: after all regions
                continue
            left = max(ivals[i][0] for i in incident)
            right = min(ivals[i][1] for i in incident)
            if left > right:
                raise InvalidInputError(
                    f"empty clique region for vertex {v}: representations do not represent L(h)"
                )
            keys[v] = (left, right)
        order = sorted(range(h.n), key=lambda v: (keys[v][0], keys[v][1], v))
        perms.append(Permutation(tuple(order)))
    family = PermutationFamily(h.n, tuple(perms))
    verdict = verify_family(h, family, SuitabilityKind.pairwise())
    if not verdict.ok:
        raise VerificationError(
            f"clique-region permutations failed verification (witness {verdict.witness})"
        )
    return family


# ---------------------------------------------------------------------------
# Serialization


def representation_to_json_dict(rep: IntervalRepresentation) -> dict:
    return {
        "items": [
            {
                "id": ident + 1,
                "l": [l.numerator, l.denominator],
                "r": [r.numerator, r.denominator],
            }
            for ident, l, r in rep.items
        ]
    }


def representation_from_json_dict(data: dict) -> IntervalRepresentation:
    try:
        mapping = {
            int(item["id"]) - 1: (
                Fraction(item["l"][0], item["l"][1]),
                Fraction(item["r"][0], item["r"][1]),
            )
            for item in data["items"]
        }
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"malformed interval JSON: {exc}") from exc
    return IntervalRepresentation.build(mapping)


def representation_dumps(rep: IntervalRepresentation) -> str:
    return json.dumps(representation_to_json_dict(rep), sort_keys=True)


def representation_loads(text: str) -> IntervalRepresentation:
    return representation_from_json_dict(json.loads(text))
