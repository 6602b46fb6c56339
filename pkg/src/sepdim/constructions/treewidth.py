"""Tree decompositions and the chordal-completion / bag-splitting construction."""

from __future__ import annotations

import math

from ..errors import InvalidInputError
from .. import chordal
from ..hypergraph import Hypergraph
from ..perms import (
    Permutation,
    PermutationFamily,
    RANDOM_FAMILY_LOG_FACTOR,
    SuitabilityKind,
    smallest_random_family,
)
from .base import ConstructionResult, checked_result

#: 13.68 log(t+1) mixing permutations plus 2 ceil(log(t+1)) + 2 splitting ones
TREEWIDTH_LOG_FACTOR = 2 * RANDOM_FAMILY_LOG_FACTOR + 2  # 15.68


class OrderedTreeDecomposition:
    """Bag tree with designated root and fixed child order.

    Carries the derived tables the splitting permutations need: Euler-tour
    first/last visit times per node, levels, and the unique minimum-level bag
    of every vertex.
    """

    def __init__(self, n: int, bags: list[frozenset[int]], tree_edges, root: int = 0):
        self.n = n
        self.bags = [frozenset(b) for b in bags]
        self.root = root
        b = len(self.bags)
        adj: list[list[int]] = [[] for _ in range(b)]
        for i, j in tree_edges:
            if not (0 <= i < b and 0 <= j < b):
                raise InvalidInputError("tree edge out of range")
            adj[i].append(j)
            adj[j].append(i)
        if b and len(tree_edges) != b - 1:
            raise InvalidInputError("bag tree must have exactly bags-1 edges")
        self.children: list[list[int]] = [[] for _ in range(b)]
        self.parent = [-1] * b
        self.level = [0] * b
        seen = [False] * b
        order = [root]
        seen[root] = True
        while order:
            i = order.pop()
            for j in sorted(adj[i]):
                if not seen[j]:
                    seen[j] = True
                    self.parent[j] = i
                    self.level[j] = self.level[i] + 1
                    self.children[i].append(j)
                    order.append(j)
        if b and not all(seen):
            raise InvalidInputError("bag tree is disconnected")
        # Euler tour: first/last visit instants on one shared clock
        self.first = [0] * b
        self.last = [0] * b
        clock = 0
        stack: list[tuple[int, int]] = [(root, 0)] if b else []
        if b:
            clock += 1
            self.first[root] = self.last[root] = clock
        while stack:
            i, idx = stack[-1]
            if idx < len(self.children[i]):
                stack[-1] = (i, idx + 1)
                j = self.children[i][idx]
                clock += 1
                self.first[j] = self.last[j] = clock
                stack.append((j, 0))
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    clock += 1
                    self.last[p] = clock
        self.bag_of = self._bag_of_vertices()

    def _bag_of_vertices(self) -> list[int]:
        bag_of = [-1] * self.n
        for v in range(self.n):
            holding = [i for i, bag in enumerate(self.bags) if v in bag]
            if not holding:
                raise InvalidInputError(f"vertex coverage violated: vertex {v} is in no bag")
            best = min(holding, key=lambda i: self.level[i])
            bag_of[v] = best
        return bag_of

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def validate(self, g: Hypergraph):
        """Check the three decomposition axioms against g; names the violated one."""
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(range(g.n)):
            raise InvalidInputError("vertex coverage violated: bag union is not V(G)")
        for u, v in g.edges:
            if not any(u in bag and v in bag for bag in self.bags):
                raise InvalidInputError(f"edge coverage violated: edge ({u}, {v}) in no bag")
        for v in range(g.n):
            holding = {i for i, bag in enumerate(self.bags) if v in bag}
            # the nodes holding v must induce a connected subtree
            start = next(iter(holding))
            seen = {start}
            stack = [start]
            while stack:
                i = stack.pop()
                for j in self.children[i] + ([self.parent[i]] if self.parent[i] >= 0 else []):
                    if j in holding and j not in seen:
                        seen.add(j)
                        stack.append(j)
            if seen != holding:
                raise InvalidInputError(
                    f"connectivity violated: bags holding vertex {v} are not a subtree"
                )


def min_fill_decomposition(g: Hypergraph) -> OrderedTreeDecomposition:
    """Heuristic decomposition from a minimum-fill elimination order."""
    if not g.is_graph:
        raise InvalidInputError("tree decomposition needs a graph")
    if g.n == 0:
        return OrderedTreeDecomposition(0, [frozenset()], [], 0)
    adj = [set(a) for a in g.adjacency]
    alive = set(range(g.n))
    elim_order = []
    elim_bag = {}
    while alive:
        def fill(v):
            nbrs = [u for u in adj[v] if u in alive]
            missing = 0
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    if nbrs[j] not in adj[nbrs[i]]:
                        missing += 1
            return missing

        v = min(alive, key=lambda u: (fill(u), len([w for w in adj[u] if w in alive]), u))
        nbrs = [u for u in adj[v] if u in alive]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                adj[nbrs[i]].add(nbrs[j])
                adj[nbrs[j]].add(nbrs[i])
        elim_order.append(v)
        elim_bag[v] = frozenset([v] + nbrs)
        alive.discard(v)
    # clique-tree style linking: bag of v attaches to the bag of the first
    # eliminated vertex among its later neighbours
    pos = {v: i for i, v in enumerate(elim_order)}
    bags = [elim_bag[v] for v in elim_order]
    edges = []
    for i, v in enumerate(elim_order):
        later = [u for u in elim_bag[v] if u != v]
        if later:
            target = min(later, key=lambda u: pos[u])
            edges.append((i, pos[target]))
    root = len(elim_order) - 1
    return OrderedTreeDecomposition(g.n, bags, edges, root)


def construct_treewidth(
    g: Hypergraph,
    td: OrderedTreeDecomposition | None = None,
    seed: int = 0,
) -> ConstructionResult:
    """Chordal completion, colour-mixing extensions, and splitting permutations.

    Bags are cliqued into a chordal supergraph and greedily coloured along an
    MCS order (at most width+1 colours).  Two linear extensions per mixing
    permutation of the colours handle pairs touching three or more colours;
    the two-colour case is handled by bag-splitting permutations for the
    colour-bit bipartitions plus the plain first/last-visit orders.
    """
    if not g.is_graph:
        raise InvalidInputError("treewidth construction needs a graph")
    if td is None:
        td = min_fill_decomposition(g)
    if td.n != g.n:
        raise InvalidInputError("decomposition is over a different vertex count")
    td.validate(g)
    t = td.width

    # chordal completion: clique every bag
    comp_adj: list[set[int]] = [set() for _ in range(g.n)]
    for bag in td.bags:
        for u in bag:
            comp_adj[u].update(w for w in bag if w != u)
    order = chordal.mcs_order(comp_adj)
    color = chordal.greedy_coloring(comp_adj, order)
    n_colors = max(color) + 1 if color else 1
    if n_colors > t + 1:
        raise InvalidInputError(
            f"completion needed {n_colors} colours on width {t}; decomposition invalid"
        )

    perms: list[Permutation] = []
    groups: dict[str, list[int]] = {"extensions": [], "splitting": []}

    mixing = smallest_random_family(
        t + 1,
        SuitabilityKind.mixing(),
        seed=seed,
        size_cap=math.floor(RANDOM_FAMILY_LOG_FACTOR * math.log2(t + 1)) if t >= 1 else 0,
    )
    for sigma in mixing:
        fwd = sorted(range(g.n), key=lambda v: (sigma.pos[color[v]], v))
        rev = sorted(range(g.n), key=lambda v: (sigma.pos[color[v]], -v))
        groups["extensions"].extend((len(perms), len(perms) + 1))
        perms.append(Permutation(tuple(fwd)))
        perms.append(Permutation(tuple(rev)))

    def splitting(upper: set[int]) -> Permutation:
        # vertices in `upper` keyed by first visit of their bag, the rest by last
        def f(v):
            node = td.bag_of[v]
            return td.first[node] if color[v] in upper else td.last[node]

        return Permutation(tuple(sorted(range(g.n), key=lambda v: (f(v), v))))

    bits = max(1, math.ceil(math.log2(t + 1))) if t >= 1 else 0
    split_perms: list[Permutation] = []
    for beta in range(bits):
        zeros = {c for c in range(n_colors) if not c >> beta & 1}
        ones = {c for c in range(n_colors) if c >> beta & 1}
        split_perms.append(splitting(zeros))
        split_perms.append(splitting(ones))
    split_perms.append(splitting(set(range(n_colors))))  # all first-visit keyed
    split_perms.append(splitting(set()))  # all last-visit keyed
    groups["splitting"] = list(range(len(perms), len(perms) + len(split_perms)))
    perms.extend(split_perms)

    family = PermutationFamily(g.n, tuple(perms))
    bound = TREEWIDTH_LOG_FACTOR * math.ceil(math.log2(t + 1)) + 2 if t >= 1 else 2.0
    return checked_result(
        g,
        family,
        "treewidth",
        bound,
        notes=f"t={t} colours={n_colors} mixing={len(mixing)}",
        groups=groups,
    )


# ---------------------------------------------------------------------------
# PACE 2017 .td format


def td_from_pace(text: str, n_vertices: int | None = None) -> OrderedTreeDecomposition:
    """Parse the PACE 2017 tree decomposition format (1-based)."""
    bags: dict[int, frozenset[int]] = {}
    edges = []
    header = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "td":
                raise InvalidInputError(f"malformed solution line: {line!r}")
            header = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "b":
            idx = int(parts[1]) - 1
            bags[idx] = frozenset(int(v) - 1 for v in parts[2:])
        else:
            i, j = int(parts[0]) - 1, int(parts[1]) - 1
            edges.append((i, j))
    if header is None:
        raise InvalidInputError("missing 's td' header")
    n_bags, _width_plus, n = header
    if n_vertices is not None:
        n = n_vertices
    bag_list = [bags.get(i, frozenset()) for i in range(n_bags)]
    return OrderedTreeDecomposition(n, bag_list, edges, root=0)


def td_to_pace(td: OrderedTreeDecomposition) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {td.n}"]
    for i, bag in enumerate(td.bags):
        lines.append("b " + " ".join([str(i + 1)] + [str(v + 1) for v in sorted(bag)]))
    for j, p in enumerate(td.parent):
        if p >= 0:
            lines.append(f"{p + 1} {j + 1}")
    return "\n".join(lines) + "\n"
