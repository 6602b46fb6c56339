"""Randomised, partition-combiner, degeneracy, colouring and recursive
max-degree constructions of pairwise suitable families."""

from __future__ import annotations

import math
import random

from ..errors import BudgetExceededError, ConstructionError, InvalidInputError
from ..hypergraph import Hypergraph, degeneracy_order, disjoint_pairs, induced_subgraph
from ..perms import (
    DEFAULT_MAX_RETRIES,
    Permutation,
    PermutationFamily,
    RANDOM_FAMILY_LOG_FACTOR,
    SuitabilityKind,
    smallest_random_family,
    three_suitable_family,
    verify_family,
)
from .base import (
    ConstructionResult,
    checked_result,
    family_for_disjoint_blocks,
    forest_family,
    star_components,
    star_forest_family,
)

#: constant of the rank-r random bound: e*ln2 / (pi*sqrt(2))
HYPERGRAPH_RANDOM_CONSTANT = math.e * math.log(2) / (math.pi * math.sqrt(2))

#: combiner overhead: two block-ordered copies of a mixing family of the parts
PARTITION_LOG_FACTOR = 2 * RANDOM_FAMILY_LOG_FACTOR  # 13.68


def random_family_bound(h: Hypergraph) -> float:
    """Size bound for uniformly drawn families: 6.84 log n for graphs, the
    rank-r expression otherwise."""
    n = max(2, h.n)
    if h.rank <= 2:
        return RANDOM_FAMILY_LOG_FACTOR * math.log2(n)
    r = h.rank
    return HYPERGRAPH_RANDOM_CONSTANT * (4**r) * math.sqrt(r) * math.log2(n)


def construct_random(
    h: Hypergraph, seed: int = 0, max_retries: int = DEFAULT_MAX_RETRIES
) -> ConstructionResult:
    """Draw ceil(bound) uniform permutations, verify against h, retry on failure."""
    if h.n < 2:
        raise InvalidInputError("need at least 2 vertices")
    if not disjoint_pairs(h):
        return checked_result(h, PermutationFamily(h.n, ()), "random", 0.0)
    target = math.ceil(random_family_bound(h))
    rng = random.Random(seed)
    for _ in range(max_retries):
        perms = []
        for _ in range(target):
            order = list(range(h.n))
            rng.shuffle(order)
            perms.append(Permutation(tuple(order)))
        family = PermutationFamily(h.n, tuple(perms))
        if verify_family(h, family, SuitabilityKind.pairwise()).ok:
            return checked_result(h, family, "random", float(target))
    raise ConstructionError(
        f"random construction failed to verify after {max_retries} draws of {target}"
    )


# ---------------------------------------------------------------------------
# Partition combiner


def _round_robin_matchings(r: int) -> list[list[tuple[int, int]]]:
    """Cover K_r by at most r perfect-ish matchings (circle method; odd r is
    padded with a dummy participant whose games are dropped)."""
    if r < 2:
        return []
    players = list(range(r))
    if r % 2:
        players.append(-1)
    half = len(players) // 2
    rounds = []
    rot = players[1:]
    for _ in range(len(players) - 1):
        lineup = [players[0]] + rot
        matching = []
        for i in range(half):
            a, b = lineup[i], lineup[-1 - i]
            if a != -1 and b != -1:
                matching.append((min(a, b), max(a, b)))
        rounds.append(matching)
        rot = rot[-1:] + rot[:-1]
    return rounds


def combine_partition(
    g: Hypergraph,
    parts: list[list[int]],
    sub_solver,
    seed: int = 0,
) -> ConstructionResult:
    """Lift per-part-pair families to the whole graph.

    Matchings of the part-complete-graph give block graphs handled by
    `sub_solver`; a pairwise-suitable-and-3-mixing family of the parts
    contributes two block-ordered families whose within-part orders are
    mutually reversed.  `sub_solver(subgraph) -> PermutationFamily` must
    return a verified family for any induced union of at most two parts.
    """
    cover = sorted(v for part in parts for v in part)
    if cover != list(range(g.n)):
        raise InvalidInputError("parts do not partition the vertex set")
    r = len(parts)
    if r == 1:
        fam = sub_solver(g)
        return checked_result(
            g, fam, "partition", PARTITION_LOG_FACTOR * 0 + len(fam), notes="single part"
        )

    perms: list[Permutation] = []
    groups: dict[str, list[int]] = {"blocks": [], "part_order": [], "part_order_rev": []}
    pi_hat = 0
    for matching in _round_robin_matchings(r):
        matched = {a for pair in matching for a in pair}
        block_parts = [sorted(parts[a] + parts[b]) for a, b in matching]
        block_parts += [parts[c] for c in range(r) if c not in matched]
        blocks = []
        edge_blocks = 0
        for verts in block_parts:
            sub, mapping = induced_subgraph(g, verts)
            fam = sub_solver(sub)
            blocks.append((mapping, fam))
            if sub.m:
                edge_blocks += 1
        fam_i = family_for_disjoint_blocks(g.n, blocks, edge_blocks >= 2)
        pi_hat = max(pi_hat, len(fam_i))
        groups["blocks"].extend(range(len(perms), len(perms) + len(fam_i)))
        perms.extend(fam_i.perms)

    mixing = smallest_random_family(
        r,
        SuitabilityKind.mixing(),
        seed=seed,
        size_cap=math.floor(RANDOM_FAMILY_LOG_FACTOR * math.log2(r)) if r >= 2 else 0,
    )
    for sigma in mixing:
        fwd: list[int] = []
        for part_label in sigma.order:
            fwd.extend(sorted(parts[part_label]))
        groups["part_order"].append(len(perms))
        perms.append(Permutation(tuple(fwd)))
    for sigma in mixing:
        rev = []
        for part_label in sigma.order:
            rev.extend(sorted(parts[part_label], reverse=True))
        groups["part_order_rev"].append(len(perms))
        perms.append(Permutation(tuple(rev)))

    family = PermutationFamily(g.n, tuple(perms))
    bound = PARTITION_LOG_FACTOR * math.log2(r) + pi_hat * r
    return checked_result(
        g,
        family,
        "partition",
        bound,
        notes=f"r={r} pi_hat={pi_hat} mixing={len(mixing)}",
        groups=groups,
    )


# ---------------------------------------------------------------------------
# Star forests from degeneracy, and the 4kr construction


class StarForestDecomposition:
    """Edge-disjoint spanning star forests covering E(G), with per-forest
    star-id and within-star label maps (same star id iff same star; labels
    distinct within a star)."""

    def __init__(self, n: int, forests: list[list[tuple[int, list[int]]]]):
        self.n = n
        self.forests = forests  # per forest: list of (root, leaves)
        self.star_id: list[list[int]] = []
        self.leaf_label: list[list[int]] = []
        for forest in forests:
            sid = [-1] * n
            lab = [-1] * n
            for idx, (root, leaves) in enumerate(forest):
                members = [root] + leaves
                for v in members:
                    if sid[v] != -1:
                        raise InvalidInputError("stars overlap inside one forest")
                    sid[v] = idx
                for pos, v in enumerate(sorted(members)):
                    lab[v] = pos
            if any(s == -1 for s in sid):
                raise InvalidInputError("forest does not span the vertex set")
            self.star_id.append(sid)
            self.leaf_label.append(lab)

    def edges(self, i: int) -> list[tuple[int, int]]:
        out = []
        for root, leaves in self.forests[i]:
            out.extend((min(root, v), max(root, v)) for v in leaves)
        return out


def star_forest_decompose(
    g: Hypergraph, order: tuple[int, ...] | None = None
) -> StarForestDecomposition:
    """Cover E(g) by at most 2k spanning star forests, k the degeneracy.

    Edges oriented forward along the degeneracy order give k forests (one per
    out-slot); rooting each tree and splitting its edges by the parity of the
    parent's depth turns every forest into two star forests.
    """
    if not g.is_graph:
        raise InvalidInputError("star forest decomposition needs a graph")
    if order is None:
        _, order = degeneracy_order(g)
    order = tuple(order)
    pos = {v: i for i, v in enumerate(order)}
    out_edges: list[list[tuple[int, int]]] = []
    slot_of: dict[int, int] = {}
    for v in order:
        slot_of[v] = 0
    for u, v in g.edges:
        first, second = (u, v) if pos[u] < pos[v] else (v, u)
        slot = slot_of[first]
        slot_of[first] += 1
        while len(out_edges) <= slot:
            out_edges.append([])
        out_edges[slot].append((first, second))

    forests: list[list[tuple[int, list[int]]]] = []
    for forest_edges in out_edges:
        adj = [[] for _ in range(g.n)]
        for a, b in forest_edges:
            adj[a].append(b)
            adj[b].append(a)
        depth = [-1] * g.n
        star_edges: dict[int, list[tuple[int, int]]] = {0: [], 1: []}
        for root in range(g.n):
            if depth[root] != -1:
                continue
            depth[root] = 0
            stack = [root]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if depth[w] == -1:
                        depth[w] = depth[v] + 1
                        star_edges[depth[v] % 2].append((v, w))
                        stack.append(w)
        for parity in (0, 1):
            if not star_edges[parity] and parity == 1:
                continue
            centers: dict[int, list[int]] = {}
            for parent, child in star_edges[parity]:
                centers.setdefault(parent, []).append(child)
            in_star = set()
            stars = []
            for center in sorted(centers):
                leaves = sorted(centers[center])
                stars.append((center, leaves))
                in_star.add(center)
                in_star.update(leaves)
            for v in range(g.n):
                if v not in in_star:
                    stars.append((v, []))
            forests.append(sorted(stars))
    if not forests:
        forests.append([(v, []) for v in range(g.n)])
    return StarForestDecomposition(g.n, forests)


def construct_degeneracy(g: Hypergraph, seed: int = 0) -> ConstructionResult:
    """Per star forest, emit 2r permutations: star blocks ordered by a
    3-suitable family over labels (and its reverse), roots last within their
    block, leaves ordered by the same family on within-star labels."""
    if not g.is_graph or g.m < 1:
        raise InvalidInputError("needs a graph with at least one edge")
    k, order = degeneracy_order(g)
    decomposition = star_forest_decompose(g, order)
    suitable = three_suitable_family(g.n, seed=seed)
    r = len(suitable)
    perms = []
    for i in range(len(decomposition.forests)):
        sid = decomposition.star_id[i]
        lab = decomposition.leaf_label[i]
        roots = {root for root, _ in decomposition.forests[i]}
        for sigma in suitable:
            spos = sigma.pos

            def key(v, flip):
                block = spos[sid[v]]
                return (
                    -block if flip else block,
                    1 if v in roots else 0,
                    spos[lab[v]],
                )

            fwd = sorted(range(g.n), key=lambda v: key(v, False))
            rev = sorted(range(g.n), key=lambda v: key(v, True))
            perms.append(Permutation(tuple(fwd)))
            perms.append(Permutation(tuple(rev)))
    family = PermutationFamily(g.n, tuple(perms))
    bound = 4 * k * r if r else 0
    return checked_result(
        g,
        family,
        "degeneracy",
        bound,
        notes=f"k={k} r={r} forests={len(decomposition.forests)}",
    )


# ---------------------------------------------------------------------------
# Colouring combiners


def _pair_class_subgraphs(g: Hypergraph, classes: list[list[int]]):
    for i in range(len(classes)):
        for j in range(i, len(classes)):
            verts = classes[i] if i == j else sorted(classes[i] + classes[j])
            yield i, j, induced_subgraph(g, verts)[0]


def construct_coloring(
    g: Hypergraph, coloring: list[int], mode: str, seed: int = 0
) -> ConstructionResult:
    """Partition combiner with forest / star-forest base families.

    Every class union of at most two colours must induce a forest (mode
    "acyclic") or a star forest (mode "star"); this is checked, and a
    violation is rejected with a witness.  A proper colouring whose pairwise
    classes have the property always qualifies; single-class inputs are
    accepted when the class itself has the property, which keeps the
    star-forest/forest base cases expressible as one-part runs.
    """
    if mode not in ("acyclic", "star"):
        raise InvalidInputError(f"mode must be acyclic or star, got {mode!r}")
    if len(coloring) != g.n:
        raise InvalidInputError("coloring length differs from the vertex count")
    r = max(coloring) + 1 if coloring else 0
    classes = [[v for v in range(g.n) if coloring[v] == c] for c in range(r)]
    classes = [c for c in classes if c]
    for i, j, sub in _pair_class_subgraphs(g, classes):
        if mode == "star":
            if star_components(sub) is None:
                raise InvalidInputError(
                    f"colour classes {i},{j} induce a non-star component"
                )
        else:
            try:
                forest_family(sub)
            except InvalidInputError as exc:
                raise InvalidInputError(
                    f"colour classes {i},{j} induce a cycle"
                ) from exc

    sub_solver = star_forest_family if mode == "star" else forest_family
    result = combine_partition(g, classes, sub_solver, seed=seed)
    per_block = 1 if mode == "star" else 2
    bound = per_block * len(classes) + PARTITION_LOG_FACTOR * math.log2(max(2, len(classes)))
    if len(classes) == 1:
        bound = per_block
    return checked_result(
        g,
        result.family,
        f"coloring-{mode}",
        bound,
        notes=f"classes={len(classes)}",
        groups=result.groups,
    )


# ---------------------------------------------------------------------------
# Degree partition (resampling) and the recursive max-degree construction


def degree_partition(
    g: Hypergraph,
    seed: int = 0,
    num_parts: int | None = None,
    cap: int | None = None,
    max_rounds: int = 10000,
) -> list[list[int]]:
    """Partition vertices so every vertex has few neighbours per part.

    Defaults follow the 400*Delta/log(Delta) part count and the
    ceil(log(Delta)/2) per-part cap (parts never exceed n); below the
    astronomically large degree scale where the cap holds outright, it is enforced
    operationally by resampling: while some (vertex, part) exceeds the cap,
    the part assignments of that vertex's neighbours are redrawn.  The
    returned partition is verified exhaustively; budget exhaustion raises.
    """
    if not g.is_graph:
        raise InvalidInputError("degree partition needs a graph")
    delta = g.max_degree
    if delta < 4:
        raise InvalidInputError(f"max degree {delta} below accepted regime (needs >= 4)")
    log_delta = math.log2(delta)
    if num_parts is None:
        num_parts = min(g.n, math.ceil(400 * delta / log_delta))
    if cap is None:
        cap = math.ceil(log_delta / 2)
    if num_parts < 1:
        raise InvalidInputError("num_parts must be >= 1")
    rng = random.Random(seed)
    part = [rng.randrange(num_parts) for _ in range(g.n)]
    adj = g.adjacency

    def violation():
        for v in range(g.n):
            counts: dict[int, int] = {}
            for u in adj[v]:
                counts[part[u]] = counts.get(part[u], 0) + 1
            for p, c in counts.items():
                if c > cap:
                    return v, p
        return None

    for _ in range(max_rounds):
        bad = violation()
        if bad is None:
            parts = [[] for _ in range(num_parts)]
            for v in range(g.n):
                parts[part[v]].append(v)
            return [sorted(p) for p in parts]
        v, _p = bad
        for u in adj[v]:
            part[u] = rng.randrange(num_parts)
    raise BudgetExceededError(
        f"degree partition did not satisfy cap {cap} within {max_rounds} resampling rounds"
    )


def log_star(x: float) -> int:
    """Iterated base-2 logarithm."""
    count = 0
    while x > 1:
        x = math.log2(x)
        count += 1
    return count


def construct_recursive_delta(
    g: Hypergraph,
    seed: int = 0,
    cutoff: int = 64,
    num_parts: int | None = None,
) -> ConstructionResult:
    """Recursive partitioning by maximum degree.

    Degree <= 1 uses a single block permutation; degrees up to `cutoff`
    delegate to the smaller of the degeneracy and random constructions; above
    the cutoff the graph is degree-partitioned and the combiner recurses on
    the pair blocks.  `num_parts` overrides the partition width (used to
    exercise the recursion below the huge-degree regime).
    """
    if not g.is_graph:
        raise InvalidInputError("needs a graph")
    delta = g.max_degree
    bound = float(2 ** (9 * log_star(delta)) * delta) if delta else 1.0
    if delta <= 1:
        matched = sorted(v for e in g.edges for v in e)
        isolated = [v for v in range(g.n) if v not in set(matched)]
        blocks = [list(e) for e in g.edges] + [[v] for v in isolated]
        order = [v for b in blocks for v in b]
        family = PermutationFamily(g.n, (Permutation(tuple(order)),))
        return checked_result(g, family, "recursive-delta", max(bound, 1.0))
    if delta <= cutoff:
        if not disjoint_pairs(g):
            return checked_result(
                g, PermutationFamily(g.n, ()), "recursive-delta", bound, notes="no pairs"
            )
        candidates = [construct_random(g, seed=seed)]
        try:
            candidates.append(construct_degeneracy(g, seed=seed))
        except (InvalidInputError, ConstructionError):
            pass
        best = min(candidates, key=lambda res: len(res.family))
        return checked_result(
            g,
            best.family,
            "recursive-delta",
            bound,
            notes=f"delta={delta} base={best.ledger.method} size={len(best.family)}",
        )
    try:
        parts = degree_partition(g, seed=seed, num_parts=num_parts)
        partition_kind = "resampled"
    except BudgetExceededError:
        parts = distance_two_classes(g)
        partition_kind = "distance-two"
    parts = [p for p in parts if p]
    sub = lambda sg: construct_recursive_delta(sg, seed=seed, cutoff=cutoff).family
    result = combine_partition(g, parts, sub, seed=seed)
    return checked_result(
        g,
        result.family,
        "recursive-delta",
        bound,
        notes=f"delta={delta} parts={len(parts)} ({partition_kind})",
        groups=result.groups,
    )


def distance_two_classes(g: Hypergraph) -> list[list[int]]:
    """Colour classes of a greedy distance-two colouring: any two classes
    induce a matching (so per-pair families have at most one permutation)."""
    adj = g.adjacency
    two_adj: list[set[int]] = []
    for v in range(g.n):
        reach = set(adj[v])
        for u in adj[v]:
            reach.update(adj[u])
        reach.discard(v)
        two_adj.append(reach)
    color = [-1] * g.n
    for v in range(g.n):
        used = {color[u] for u in two_adj[v] if color[u] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    classes = max(color) + 1 if g.n else 0
    return [[v for v in range(g.n) if color[v] == c] for c in range(classes)]
