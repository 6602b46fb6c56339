"""Hypergraphs, standard generators, line graphs and degeneracy orders.

Vertices are dense integers 0..n-1 internally; all external formats
(JSON and the line-oriented text format) are 1-based.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import InvalidInputError

GRAPH = "graph"
HYPERGRAPH = "hypergraph"


@dataclass(frozen=True)
class Hypergraph:
    """A finite hypergraph on vertex set {0, .., n-1}.

    Edges are stored as sorted duplicate-free tuples; duplicate edges are
    rejected rather than silently dropped (a repeated edge is almost always
    a data error, and it would change the line graph).
    """

    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInputError(f"n must be >= 0, got {self.n}")
        seen = set()
        for e in self.edges:
            if len(e) == 0:
                raise InvalidInputError("edge must be nonempty")
            if len(set(e)) != len(e):
                raise InvalidInputError(f"edge {e} repeats a vertex")
            if tuple(sorted(e)) != tuple(e):
                raise InvalidInputError(f"edge {e} is not sorted")
            if not all(0 <= v < self.n for v in e):
                raise InvalidInputError(f"edge {e} leaves the vertex range [0, {self.n})")
            if e in seen:
                raise InvalidInputError(f"duplicate edge {e}")
            seen.add(e)
        if list(self.edges) != sorted(self.edges):
            raise InvalidInputError("edge list must be in sorted order (use Hypergraph.build)")

    @staticmethod
    def build(n: int, edges) -> "Hypergraph":
        """Normalise (sort vertices and the edge list itself) and validate."""
        return Hypergraph(n, tuple(sorted(tuple(sorted(e)) for e in edges)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def rank(self) -> int:
        return max((len(e) for e in self.edges), default=0)

    @property
    def kind(self) -> str:
        return GRAPH if all(len(e) == 2 for e in self.edges) else HYPERGRAPH

    @property
    def is_graph(self) -> bool:
        return self.kind == GRAPH

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        """Vertex adjacency (for graphs: neighbours; generally: co-edge vertices)."""
        adj = [set() for _ in range(self.n)]
        for e in self.edges:
            for u in e:
                adj[u].update(v for v in e if v != u)
        return tuple(frozenset(s) for s in adj)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    @property
    def max_degree(self) -> int:
        counts = [0] * self.n
        for e in self.edges:
            for v in e:
                counts[v] += 1
        return max(counts, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return tuple(sorted((u, v))) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)


@dataclass(frozen=True)
class DisjointPair:
    """Indices e < f of two vertex-disjoint edges."""

    e: int
    f: int


def disjoint_pairs(h: Hypergraph) -> list[DisjointPair]:
    """All index pairs (i, j), i < j, of vertex-disjoint edges, in lex order."""
    sets = [frozenset(e) for e in h.edges]
    return [
        DisjointPair(i, j)
        for i, j in combinations(range(h.m), 2)
        if sets[i].isdisjoint(sets[j])
    ]


def line_graph(h: Hypergraph) -> Hypergraph:
    """Intersection graph of the edge set: vertex i of the output is edge i of h."""
    if h.m < 1:
        raise InvalidInputError("line graph needs at least one edge")
    sets = [frozenset(e) for e in h.edges]
    edges = [
        (i, j) for i, j in combinations(range(h.m), 2) if not sets[i].isdisjoint(sets[j])
    ]
    return Hypergraph.build(h.m, edges)


def degeneracy_order(g: Hypergraph) -> tuple[int, tuple[int, ...]]:
    """Degeneracy and a witnessing order (repeated minimum-degree removal).

    In the returned order every vertex has at most k neighbours among its
    successors, and k is minimal.
    """
    if not g.is_graph:
        raise InvalidInputError("degeneracy is defined for graphs")
    adj = [set(a) for a in g.adjacency]
    deg = [len(a) for a in adj]
    alive = set(range(g.n))
    order = []
    k = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        k = max(k, deg[v])
        order.append(v)
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
                adj[u].discard(v)
    return k, tuple(order)


def induced_subgraph(g: Hypergraph, vertices) -> tuple[Hypergraph, list[int]]:
    """Subgraph induced on `vertices`; also returns the new->old vertex map."""
    verts = sorted(set(vertices))
    index = {v: i for i, v in enumerate(verts)}
    keep = set(verts)
    edges = [
        tuple(index[v] for v in e) for e in g.edges if all(v in keep for v in e)
    ]
    return Hypergraph.build(len(verts), edges), verts


# ---------------------------------------------------------------------------
# Generators


def clique(n: int) -> Hypergraph:
    _require(n >= 1, "n", n, ">= 1")
    return Hypergraph.build(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Hypergraph:
    _require(m >= 1, "m", m, ">= 1")
    _require(n >= 1, "n", n, ">= 1")
    return Hypergraph.build(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def complete_uniform(n: int, r: int) -> Hypergraph:
    """Complete r-uniform hypergraph on n vertices."""
    _require(n >= 1, "n", n, ">= 1")
    _require(1 <= r <= n, "r", r, "in [1, n]")
    return Hypergraph.build(n, combinations(range(n), r))


def hypercube(d: int) -> Hypergraph:
    """Q_d: vertices are all d-bit strings, edges join strings at Hamming distance 1."""
    _require(d >= 1, "d", d, ">= 1")
    edges = [(v, v | (1 << b)) for v in range(1 << d) for b in range(d) if not v & (1 << b)]
    return Hypergraph.build(1 << d, edges)


def grid(n: int) -> Hypergraph:
    """n-by-n square grid."""
    _require(n >= 1, "n", n, ">= 1")
    edges = []
    for i in range(n):
        for j in range(n):
            v = i * n + j
            if j + 1 < n:
                edges.append((v, v + 1))
            if i + 1 < n:
                edges.append((v, v + n))
    return Hypergraph.build(n * n, edges)


def double_grid(n: int) -> Hypergraph:
    """Two copies of the n-by-n grid with identical nodes joined by an edge."""
    g = grid(n)
    off = g.n
    edges = list(g.edges)
    edges += [(u + off, v + off) for u, v in g.edges]
    edges += [(v, v + off) for v in range(off)]
    return Hypergraph.build(2 * off, edges)


def path(n: int) -> Hypergraph:
    _require(n >= 1, "n", n, ">= 1")
    return Hypergraph.build(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Hypergraph:
    """Star with `leaves` leaves attached to root 0 (leaves + 1 vertices)."""
    _require(leaves >= 0, "leaves", leaves, ">= 0")
    return Hypergraph.build(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Hypergraph:
    _require(n >= 1, "n", n, ">= 1")
    return Hypergraph.build(n, ())


def gnp(n: int, p: float, seed: int) -> Hypergraph:
    """Erdos-Renyi G(n, p); identical seeds reproduce identical graphs."""
    _require(n >= 1, "n", n, ">= 1")
    _require(0.0 <= p <= 1.0, "p", p, "in [0, 1]")
    rng = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Hypergraph.build(n, edges)


def subdivide(g: Hypergraph) -> Hypergraph:
    """Replace every edge {u, v} by a 2-path u - w - v with a fresh vertex w.

    Original vertices keep their labels; the subdivision vertex of edge i
    is labelled g.n + i.
    """
    if not g.is_graph:
        raise InvalidInputError("subdivision is defined for graphs")
    edges = []
    for i, (u, v) in enumerate(g.edges):
        w = g.n + i
        edges.append((u, w))
        edges.append((w, v))
    return Hypergraph.build(g.n + g.m, edges)


def subdivided_clique(n: int) -> Hypergraph:
    """Fully subdivided complete graph on n original vertices."""
    _require(n >= 1, "n", n, ">= 1")
    return subdivide(clique(n))


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one named instance family."""

    family: str
    n: int | None = None
    m: int | None = None
    r: int | None = None
    d: int | None = None
    p: float | None = None
    seed: int | None = None

    params: dict = field(default_factory=dict, compare=False)


_FAMILIES = (
    "clique",
    "bipartite",
    "uniform",
    "hypercube",
    "grid",
    "double-grid",
    "path",
    "star",
    "empty",
    "gnp",
    "kn-half",
)


def generate(spec: GeneratorSpec) -> Hypergraph:
    """Build the instance described by `spec` (deterministic; gnp is seeded)."""
    fam = spec.family
    if fam == "clique":
        return clique(_need(spec, "n"))
    if fam == "bipartite":
        return complete_bipartite(_need(spec, "m"), _need(spec, "n"))
    if fam == "uniform":
        return complete_uniform(_need(spec, "n"), _need(spec, "r"))
    if fam == "hypercube":
        return hypercube(_need(spec, "d"))
    if fam == "grid":
        return grid(_need(spec, "n"))
    if fam == "double-grid":
        return double_grid(_need(spec, "n"))
    if fam == "path":
        return path(_need(spec, "n"))
    if fam == "star":
        return star(_need(spec, "n"))
    if fam == "empty":
        return empty_graph(_need(spec, "n"))
    if fam == "gnp":
        if spec.p is None:
            raise InvalidInputError("gnp requires p")
        if spec.seed is None:
            raise InvalidInputError("gnp requires a seed")
        return gnp(_need(spec, "n"), spec.p, spec.seed)
    if fam == "kn-half":
        return subdivided_clique(_need(spec, "n"))
    raise InvalidInputError(f"unknown family {fam!r} (one of {', '.join(_FAMILIES)})")


def _need(spec: GeneratorSpec, name: str) -> int:
    val = getattr(spec, name)
    if val is None:
        raise InvalidInputError(f"family {spec.family!r} requires parameter {name!r}")
    return val


def _require(cond: bool, name: str, value, what: str):
    if not cond:
        raise InvalidInputError(f"parameter {name}={value!r} must be {what}")


# ---------------------------------------------------------------------------
# Serialization (external formats are 1-based)


def to_json_dict(h: Hypergraph) -> dict:
    return {"n": h.n, "edges": [[v + 1 for v in e] for e in h.edges]}


def from_json_dict(data: dict) -> Hypergraph:
    try:
        n = int(data["n"])
        edges = [tuple(int(v) - 1 for v in e) for e in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed hypergraph JSON: {exc}") from exc
    return Hypergraph.build(n, edges)


def dumps(h: Hypergraph) -> str:
    return json.dumps(to_json_dict(h), sort_keys=True)


def loads(text: str) -> Hypergraph:
    return from_json_dict(json.loads(text))


def to_text(h: Hypergraph) -> str:
    """Line format: first line "n m", then one line per edge (1-based vertices)."""
    lines = [f"{h.n} {h.m}"]
    lines += [" ".join(str(v + 1) for v in e) for e in h.edges]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Hypergraph:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise InvalidInputError("empty hypergraph text")
    try:
        n, m = (int(x) for x in lines[0].split())
        edges = [tuple(int(v) - 1 for v in ln.split()) for ln in lines[1 : m + 1]]
    except ValueError as exc:
        raise InvalidInputError(f"malformed hypergraph text: {exc}") from exc
    if len(edges) != m:
        raise InvalidInputError(f"expected {m} edge lines, found {len(edges)}")
    return Hypergraph.build(n, edges)
