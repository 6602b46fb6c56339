"""Planar triangulations: realizers, barycentric coordinates, and the
three-permutation family.

Input is a combinatorial embedding (rotation system) with a designated outer
triangle.  The realizer comes from a canonical (shelling) ordering; vertex
coordinates count the faces inside the three realizer regions, and the three
output permutations sort by x, by y, and by x + y (ties by vertex index).
Disjoint edges are separated coordinate-wise, so the family always verifies.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from ..errors import InvalidInputError, VerificationError
from ..hypergraph import Hypergraph
from ..perms import Permutation, PermutationFamily
from .base import ConstructionResult, checked_result


@dataclass(frozen=True)
class Triangulation:
    """Rotation system (cyclic neighbour lists) plus the outer triangle."""

    n: int
    rot: tuple[tuple[int, ...], ...]
    outer: tuple[int, int, int]

    def __post_init__(self):
        if self.n < 3:
            raise InvalidInputError("triangulation needs n >= 3")
        if len(self.rot) != self.n:
            raise InvalidInputError("rotation table length differs from n")
        if len(set(self.outer)) != 3:
            raise InvalidInputError("outer face must name three distinct vertices")
        for v, nbrs in enumerate(self.rot):
            if len(set(nbrs)) != len(nbrs) or v in nbrs:
                raise InvalidInputError(f"rotation at {v} repeats a neighbour or is reflexive")
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise InvalidInputError(f"rotation at {v} leaves the vertex range")
                if v not in self.rot[u]:
                    raise InvalidInputError(f"edge ({v}, {u}) is not symmetric")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for v in range(self.n) for u in self.rot[v]})

    def graph(self) -> Hypergraph:
        return Hypergraph.build(self.n, self.edges)

    def faces(self) -> list[tuple[int, ...]]:
        """Face traces of the embedding; validates the triangulation."""
        nxt = {}
        for v in range(self.n):
            nbrs = self.rot[v]
            for i, u in enumerate(nbrs):
                # entering v along (u, v): leave along v's next neighbour after u
                nxt[(u, v)] = (v, nbrs[(i + 1) % len(nbrs)])
        seen = set()
        faces = []
        for dart in nxt:
            if dart in seen:
                continue
            face = []
            cur = dart
            while cur not in seen:
                seen.add(cur)
                face.append(cur[0])
                cur = nxt[cur]
            if cur != dart:
                raise InvalidInputError("rotation system has a broken face trace")
            faces.append(tuple(face))
        m = len(self.edges)
        if any(len(f) != 3 for f in faces) or len(faces) != 2 * self.n - 4 or m != 3 * self.n - 6:
            raise InvalidInputError(
                "not a planar triangulation: expected all-triangle faces with "
                f"m=3n-6 and 2n-4 faces, got m={m}, faces={sorted(len(f) for f in faces)[:5]}..."
                if faces
                else "no faces"
            )
        return faces


@dataclass(frozen=True)
class SchnyderRealizer:
    """Colour (0, 1, 2) and orientation per inner edge, plus region face counts."""

    tri: Triangulation
    color: dict[tuple[int, int], int]  # directed (tail, head) -> colour
    coords: tuple[tuple[int, int, int], ...]  # per vertex, sums to 2n-5


def _canonical_order(tri: Triangulation) -> list[tuple[int, list[int]]]:
    """Shelling records (vertex, attachment path left-to-right), removal order.

    Reversed, this is a canonical ordering with the outer pair first and the
    third outer vertex last; the attachment path of each added vertex runs
    from its v1-side neighbour to its v2-side neighbour.
    """
    v1, v2, vn = tri.outer
    alive = set(range(tri.n))
    # outer path next-pointers oriented v1 -> vn -> v2
    nxt = {v1: vn, vn: v2}
    prv = {vn: v1, v2: vn}
    on_outer = {v1, v2, vn}
    records = []
    forced_first = vn

    def attachment(v):
        nbrs = [u for u in tri.rot[v] if u in alive]
        if prv[v] not in nbrs or nxt[v] not in nbrs:
            raise InvalidInputError("outer path neighbours missing; embedding inconsistent")
        i = nbrs.index(prv[v])
        rolled = nbrs[i:] + nbrs[:i]
        if rolled[-1] != nxt[v]:
            rolled = [rolled[0]] + rolled[1:][::-1]
        if rolled[-1] != nxt[v]:
            raise InvalidInputError("attachment path does not span the outer gap")
        return rolled

    while len(alive) > 2:
        pick = None
        if forced_first is not None:
            pick = forced_first
            forced_first = None
        else:
            for v in sorted(on_outer):
                if v in (v1, v2):
                    continue
                outer_nbrs = sum(1 for u in tri.rot[v] if u in alive and u in on_outer)
                if outer_nbrs == 2:
                    pick = v
                    break
        if pick is None:
            raise InvalidInputError("no shellable vertex; input is not a valid embedding")
        arc = attachment(pick)
        records.append((pick, arc))
        alive.discard(pick)
        on_outer.discard(pick)
        p, q = prv.pop(pick), nxt.pop(pick)
        chain = [p] + arc[1:-1] + [q]
        for a, b in zip(chain, chain[1:]):
            nxt[a] = b
            prv[b] = a
        on_outer.update(arc[1:-1])
    return records


def compute_realizer(tri: Triangulation) -> SchnyderRealizer:
    """Realizer by canonical ordering, coordinates by region face counts."""
    v1, v2, vn = tri.outer
    faces = tri.faces()
    records = _canonical_order(tri)
    color: dict[tuple[int, int], int] = {}
    for v, arc in records:
        color[(v, arc[0])] = 0  # toward the v1 side
        color[(v, arc[-1])] = 1  # toward the v2 side
        for w in arc[1:-1]:
            color[(w, v)] = 2  # the covering vertex receives the upward edges

    out_edge = {0: {}, 1: {}, 2: {}}
    for (tail, head), c in color.items():
        if tail in out_edge[c] and out_edge[c][tail] != head:
            raise VerificationError(f"vertex {tail} has two outgoing colour-{c} edges")
        out_edge[c][tail] = head

    def path(v, c):
        root = (v1, v2, vn)[c]
        seq = [v]
        while seq[-1] != root:
            seq.append(out_edge[c][seq[-1]])
        return seq

    # dual adjacency for face counting
    face_of_edge: dict[tuple[int, int], list[int]] = {}
    for idx, f in enumerate(faces):
        for a, b in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0])):
            face_of_edge.setdefault((min(a, b), max(a, b)), []).append(idx)
    outer_candidates = [i for i, f in enumerate(faces) if set(f) == set(tri.outer)]
    if not outer_candidates:
        raise InvalidInputError("outer triangle is not a face of the embedding")
    outer_face = outer_candidates[0]

    def faces_inside(cycle_edges: set[tuple[int, int]]) -> int:
        seen = {outer_face}
        stack = [outer_face]
        while stack:
            f = stack.pop()
            tri_f = faces[f]
            for a, b in ((tri_f[0], tri_f[1]), (tri_f[1], tri_f[2]), (tri_f[2], tri_f[0])):
                key = (min(a, b), max(a, b))
                if key in cycle_edges:
                    continue
                for g in face_of_edge[key]:
                    if g not in seen:
                        seen.add(g)
                        stack.append(g)
        return len(faces) - len(seen)

    total = 2 * tri.n - 5
    coords: list[tuple[int, int, int]] = [(0, 0, 0)] * tri.n
    coords[v1] = (total, 0, 0)
    coords[v2] = (0, total, 0)
    coords[vn] = (0, 0, total)
    roots = (v1, v2, vn)
    for v in range(tri.n):
        if v in (v1, v2, vn):
            continue
        region = []
        for c in range(3):
            c1, c2 = (c + 1) % 3, (c + 2) % 3
            p_a, p_b = path(v, c1), path(v, c2)
            if set(p_a) & set(p_b) != {v}:
                raise VerificationError("realizer paths meet outside their origin")
            cycle = set()
            for seq in (p_a, p_b):
                cycle.update((min(a, b), max(a, b)) for a, b in zip(seq, seq[1:]))
            cycle.add((min(roots[c1], roots[c2]), max(roots[c1], roots[c2])))
            region.append(faces_inside(cycle))
        if sum(region) != total:
            raise VerificationError(
                f"region face counts {region} do not sum to {total} at vertex {v}"
            )
        coords[v] = tuple(region)
    return SchnyderRealizer(tri, color, tuple(coords))


def schnyder_family(tri: Triangulation, realizer: SchnyderRealizer | None = None) -> ConstructionResult:
    """Exactly three permutations separating all disjoint edge pairs."""
    g = tri.graph()
    if tri.n == 3:
        perms = tuple(
            Permutation(tuple(sorted(range(3), key=lambda v: (key_idx != v, v))))
            for key_idx in tri.outer
        )
        family = PermutationFamily(3, perms)
        return checked_result(g, family, "planar", 3.0, notes="triangle")
    if realizer is None:
        realizer = compute_realizer(tri)
    xs = [c[0] for c in realizer.coords]
    ys = [c[1] for c in realizer.coords]
    s1 = sorted(range(tri.n), key=lambda v: (xs[v], v))
    s2 = sorted(range(tri.n), key=lambda v: (ys[v], v))
    s3 = sorted(range(tri.n), key=lambda v: (xs[v] + ys[v], v))
    family = PermutationFamily.from_orders(tri.n, [s1, s2, s3])
    return checked_result(g, family, "planar", 3.0, notes=f"n={tri.n}")


# ---------------------------------------------------------------------------
# Triangulation builders and serialization


def tetrahedron() -> Triangulation:
    coords = {0: (0.0, 0.0), 1: (4.0, 0.0), 2: (2.0, 4.0), 3: (2.0, 1.5)}
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return triangulation_from_coordinates(4, edges, coords, outer=(0, 1, 2))


def octahedron() -> Triangulation:
    coords = {
        0: (0.0, 6.0),
        1: (-6.0, -4.0),
        2: (6.0, -4.0),
        3: (0.0, -2.0),
        4: (1.5, 0.5),
        5: (-1.5, 0.5),
    }
    edges = [
        (0, 1), (0, 2), (1, 2),
        (3, 4), (3, 5), (4, 5),
        (0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4),
    ]
    return triangulation_from_coordinates(6, edges, coords, outer=(0, 1, 2))


def triangulation_from_coordinates(n, edges, coords, outer) -> Triangulation:
    """Rotation system from a straight-line drawing (neighbours sorted by angle)."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rot = []
    for v in range(n):
        x0, y0 = coords[v]
        rot.append(
            tuple(
                sorted(adj[v], key=lambda u: -math.atan2(coords[u][1] - y0, coords[u][0] - x0))
            )
        )
    return Triangulation(n, tuple(rot), tuple(outer))


def bipyramid(k: int) -> Triangulation:
    """The k-gonal bipyramid: a k-cycle plus an inner and an outer apex
    adjacent to every cycle vertex (a 4-connected triangulation for k >= 4)."""
    if k < 3:
        raise InvalidInputError("need k >= 3")
    inner, outer_apex = k, k + 1
    rot: list[tuple[int, ...]] = []
    for i in range(k):
        rot.append(((i + 1) % k, inner, (i - 1) % k, outer_apex))
    rot.append(tuple(range(k)))  # inner apex, cycle in order
    rot.append(tuple(range(k - 1, -1, -1)))  # outer apex, reversed
    return Triangulation(k + 2, tuple(rot), (0, 1, outer_apex))


def stacked_triangulation(n: int, seed: int = 0) -> Triangulation:
    """Random stacked (Apollonian) triangulation grown from a triangle."""
    if n < 3:
        raise InvalidInputError("need n >= 3")
    rng = random.Random(seed)
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    faces = [(0, 1, 2)]
    for v in range(3, n):
        idx = rng.randrange(len(faces))
        a, b, c = faces.pop(idx)
        rot[v] = [a, c, b]
        rot[a].insert(rot[a].index(b), v)
        rot[b].insert(rot[b].index(c), v)
        rot[c].insert(rot[c].index(a), v)
        faces.extend([(a, b, v), (b, c, v), (c, a, v)])
    return Triangulation(n, tuple(tuple(rot[v]) for v in range(n)), (0, 1, 2))


def triangulation_to_json_dict(tri: Triangulation) -> dict:
    return {
        "n": tri.n,
        "rot": [[u + 1 for u in nbrs] for nbrs in tri.rot],
        "outer": [v + 1 for v in tri.outer],
    }


def triangulation_from_json_dict(data: dict) -> Triangulation:
    try:
        n = int(data["n"])
        rot = tuple(tuple(int(u) - 1 for u in nbrs) for nbrs in data["rot"])
        outer = tuple(int(v) - 1 for v in data["outer"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed triangulation JSON: {exc}") from exc
    return Triangulation(n, rot, outer)


def triangulation_dumps(tri: Triangulation) -> str:
    return json.dumps(triangulation_to_json_dict(tri), sort_keys=True)


def triangulation_loads(text: str) -> Triangulation:
    return triangulation_from_json_dict(json.loads(text))
