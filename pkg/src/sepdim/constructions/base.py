"""Shared pieces for the constructive upper bounds: result/ledger types,
disjoint-union combination, and the one/two-permutation families for star
forests and forests."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InvalidInputError, VerificationError
from ..hypergraph import Hypergraph, induced_subgraph
from ..perms import Permutation, PermutationFamily, SuitabilityKind, verify_family


@dataclass(frozen=True)
class LedgerEntry:
    """Size accounting for one construction run."""

    method: str
    size: int
    paper_bound: float | None
    verified: bool
    in_regime: bool = True
    notes: str = ""

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "size": self.size,
            "paper_bound": self.paper_bound,
            "verified": self.verified,
            "in_regime": self.in_regime,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class ConstructionResult:
    family: PermutationFamily
    ledger: LedgerEntry
    #: optional provenance: named groups of permutation indices
    groups: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.family)


def ledger_dumps(entry: LedgerEntry) -> str:
    return json.dumps(entry.as_dict(), sort_keys=True)


def checked_result(
    h: Hypergraph,
    family: PermutationFamily,
    method: str,
    paper_bound: float | None,
    in_regime: bool = True,
    notes: str = "",
    groups: dict | None = None,
) -> ConstructionResult:
    """Verify pairwise suitability (hard postcondition) and wrap up."""
    verdict = verify_family(h, family, SuitabilityKind.pairwise())
    if not verdict.ok:
        raise VerificationError(
            f"{method} produced an unsuitable family (witness {verdict.witness})"
        )
    entry = LedgerEntry(method, len(family), paper_bound, True, in_regime, notes)
    return ConstructionResult(family, entry, groups or {})


def family_for_disjoint_blocks(
    n: int,
    blocks: list[tuple[list[int], PermutationFamily]],
    has_cross_pair: bool,
) -> PermutationFamily:
    """Family for a vertex-disjoint union given per-block families.

    The j-th output permutation concatenates the blocks in the given order,
    each laid out by its own j-th permutation (blocks whose family is shorter
    fall back to their vertex order).  Size is the largest block family, or
    one when only cross-block pairs need separating.
    """
    cover = [v for verts, _ in blocks for v in verts]
    if sorted(cover) != list(range(n)):
        raise InvalidInputError("blocks do not partition the ground set")
    size = max((len(fam) for _, fam in blocks), default=0)
    if size == 0 and has_cross_pair:
        size = 1
    if size == 0:
        return PermutationFamily(n, ())
    perms = []
    for j in range(size):
        order: list[int] = []
        for verts, fam in blocks:
            if j < len(fam):
                order.extend(verts[v] for v in fam.perms[j].order)
            else:
                order.extend(verts)
        perms.append(Permutation(tuple(order)))
    return PermutationFamily(n, tuple(perms))


def solve_blocks(
    g: Hypergraph, parts: list[list[int]], sub_solver
) -> PermutationFamily:
    """Apply `sub_solver` per induced block and combine across the disjoint union."""
    blocks = []
    edge_blocks = 0
    for part in parts:
        sub, mapping = induced_subgraph(g, part)
        fam = sub_solver(sub)
        if len(fam) and fam.n != sub.n:
            raise InvalidInputError("sub solver returned a family over the wrong ground set")
        blocks.append((mapping, fam))
        if sub.m:
            edge_blocks += 1
    return family_for_disjoint_blocks(g.n, blocks, edge_blocks >= 2)


# ---------------------------------------------------------------------------
# Star forests and forests (the two base cases of the colouring combiners)


def star_components(g: Hypergraph) -> list[tuple[int, list[int]]] | None:
    """Decompose into stars: (root, members) per component, or None if some
    component has two vertices of degree above one."""
    if not g.is_graph:
        raise InvalidInputError("star forest check needs a graph")
    adj = g.adjacency
    seen = [False] * g.n
    out = []
    for v in range(g.n):
        if seen[v]:
            continue
        comp = []
        stack = [v]
        seen[v] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comp.sort()
        centers = [u for u in comp if len(adj[u]) > 1]
        if len(centers) > 1:
            return None
        if centers:
            root = centers[0]
        else:
            # singleton or single edge: highest degree, ties to lowest index
            root = max(comp, key=lambda u: (len(adj[u]), -u))
        out.append((root, comp))
    return out


def star_forest_family(g: Hypergraph) -> PermutationFamily:
    """One permutation suffices for a star forest: stars laid out as blocks."""
    stars = star_components(g)
    if stars is None:
        raise InvalidInputError("graph is not a star forest")
    order = []
    for _root, comp in sorted(stars, key=lambda rc: rc[1][0]):
        order.extend(comp)
    return PermutationFamily(g.n, (Permutation(tuple(order)),))


def forest_family(g: Hypergraph) -> PermutationFamily:
    """Two permutations suffice for a forest: shared tree blocks, ordered by a
    preorder traversal in one and a postorder traversal in the other."""
    if not g.is_graph:
        raise InvalidInputError("forest family needs a graph")
    adj = g.adjacency
    if g.m >= g.n or _has_cycle(g):
        raise InvalidInputError("graph is not a forest")
    pre_order: list[int] = []
    post_order: list[int] = []
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        # iterative DFS with children in ascending order
        stack: list[tuple[int, int, list[int]]] = [(root, 0, sorted(adj[root]))]
        pre_order.append(root)
        while stack:
            v, idx, children = stack[-1]
            advanced = False
            for i in range(idx, len(children)):
                w = children[i]
                if not seen[w]:
                    stack[-1] = (v, i + 1, children)
                    seen[w] = True
                    pre_order.append(w)
                    stack.append((w, 0, sorted(adj[w])))
                    advanced = True
                    break
            if not advanced:
                post_order.append(v)
                stack.pop()
    return PermutationFamily.from_orders(g.n, [pre_order, post_order])


def _has_cycle(g: Hypergraph) -> bool:
    adj = g.adjacency
    seen = [False] * g.n
    components = 0
    for root in range(g.n):
        if seen[root]:
            continue
        components += 1
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
    return g.m != g.n - components
