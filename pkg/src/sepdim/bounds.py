"""Lower-bound certificates, closed-form bound evaluation, and the bracketing
report aggregator.

Certificate-backed lower bounds (uniform bipartitions, clique splits) are
validated by brute force before being reported; purely asymptotic formulas
are flagged advisory and never enter the hard bracketing assertions.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetExceededError, InvalidInputError
from .hypergraph import Hypergraph, clique as _clique, disjoint_pairs
from .exact import exact_pi
from .constructions.families import construct_degeneracy, construct_random

#: enumeration budget for subset certificates
DEFAULT_SUBSET_BUDGET = 10**6

#: constants of the complete-uniform-hypergraph bounds
UNIFORM_LOWER_CONSTANT = 1 / 2**7
UNIFORM_UPPER_CONSTANT = math.e * math.log(2) / (math.pi * math.sqrt(2))


@dataclass(frozen=True)
class BipartitionCertificate:
    """Disjoint vertex sets with subset sizes: valid iff every s1-subset of
    one side sees every s2-subset of the other through at least one edge."""

    v1: tuple[int, ...]
    v2: tuple[int, ...]
    s1: int
    s2: int

    def __post_init__(self):
        if set(self.v1) & set(self.v2):
            raise InvalidInputError("certificate sides overlap")
        if not (1 <= self.s1 <= len(self.v1)) or not (1 <= self.s2 <= len(self.v2)):
            raise InvalidInputError("subset sizes out of range")

    @property
    def bound(self) -> float:
        return min(
            math.log2(len(self.v1) / self.s1),
            math.log2(len(self.v2) / self.s2),
        )


def check_bipartition_certificate(
    g: Hypergraph,
    cert: BipartitionCertificate,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> tuple[bool, float, tuple | None]:
    """Brute-force validation; returns (valid, bound, witness-on-failure).

    A failure witness is a subset pair with no connecting edge.  The number
    of s1-subsets must stay within the enumeration budget.
    """
    if not g.is_graph:
        raise InvalidInputError("bipartition certificates apply to graphs")
    count = math.comb(len(cert.v1), cert.s1)
    if count > budget:
        raise BudgetExceededError(
            f"instance too large: {count} subsets exceed budget {budget}"
        )
    adj = g.adjacency
    side2 = list(cert.v2)
    for sub1 in combinations(cert.v1, cert.s1):
        # vertices of the other side with no neighbour in sub1
        unseen = [v for v in side2 if not any(u in adj[v] for u in sub1)]
        if len(unseen) >= cert.s2:
            return False, cert.bound, (tuple(sub1), tuple(unseen[: cert.s2]))
    return True, cert.bound, None


def max_clique(g: Hypergraph, cap: int = 64) -> tuple[int, ...]:
    """Exact maximum clique by branch and bound with greedy colouring cuts."""
    if not g.is_graph:
        raise InvalidInputError("clique search needs a graph")
    if g.n > cap:
        raise BudgetExceededError(f"instance too large: {g.n} vertices exceed cap {cap}")
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    best: list[int] = []

    def bits(mask):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def color_bound(cand_mask):
        # greedy colouring over the candidate set; colour count bounds the clique
        colors = []
        order = list(bits(cand_mask))
        for v in order:
            for cls in colors:
                if not cls & adj_mask[v]:
                    break
            else:
                colors.append(0)
                cls = None
            if cls is None:
                colors[-1] |= 1 << v
            else:
                idx = colors.index(cls)
                colors[idx] |= 1 << v
        return len(colors)

    def expand(current: list[int], cand_mask: int):
        nonlocal best
        if not cand_mask:
            if len(current) > len(best):
                best = list(current)
            return
        if len(current) + color_bound(cand_mask) <= len(best):
            return
        cand = list(bits(cand_mask))
        for i, v in enumerate(cand):
            rest = 0
            for w in cand[i + 1 :]:
                rest |= 1 << w
            if len(current) + 1 + bin(cand_mask & adj_mask[v]).count("1") <= len(best):
                continue
            expand(current + [v], rest & adj_mask[v])

    expand([], (1 << g.n) - 1)
    return tuple(sorted(best))


def clique_lower_bound(
    g: Hypergraph, cap: int = 64
) -> tuple[int, float, BipartitionCertificate]:
    """log2 of half the clique number, certified by the balanced clique split."""
    clique = max_clique(g, cap=cap)
    omega = len(clique)
    half = omega // 2
    if half < 1:
        raise InvalidInputError("clique too small for a split certificate")
    cert = BipartitionCertificate(clique[:half], clique[half : 2 * half], 1, 1)
    valid, bound, witness = check_bipartition_certificate(g, cert)
    if not valid:  # pragma: no cover - a clique split is always complete across
        raise InvalidInputError(f"clique split certificate failed: {witness}")
    return omega, bound, cert


def random_graph_bound(n: int, p: float) -> tuple[float, str]:
    """Asymptotic almost-sure lower bound log(np) - loglog(np) - 2.5, clamped
    at zero; flagged advisory (not a per-instance certificate)."""
    if not 0 < p <= 1:
        raise InvalidInputError(f"parameter p={p} must be in (0, 1]")
    np_ = n * p
    if np_ <= 1:
        return 0.0, "asymptotic, not a per-instance certificate"
    l = math.log2(np_)
    ll = math.log2(l) if l > 0 else 0.0
    return max(0.0, l - ll - 2.5), "asymptotic, not a per-instance certificate"


def random_graph_certificate(
    g: Hypergraph, p: float, seed: int = 0, budget: int = DEFAULT_SUBSET_BUDGET
) -> tuple[bool, float, BipartitionCertificate]:
    """Per-instance certificate in the shape of the probabilistic argument:
    a balanced split with subset size ceil(2 ln(np) / p) on both sides,
    validated exhaustively (budget permitting)."""
    import random as _random

    rng = _random.Random(seed)
    np_ = g.n * p
    if np_ <= 1:
        raise InvalidInputError("np must exceed 1 for the certificate shape")
    s = math.ceil(2 * math.log(np_) / p)
    verts = list(range(g.n))
    rng.shuffle(verts)
    half = g.n // 2
    v1, v2 = sorted(verts[:half]), sorted(verts[half : 2 * half])
    s = min(s, len(v1), len(v2))
    cert = BipartitionCertificate(tuple(v1), tuple(v2), s, s)
    valid, bound, _witness = check_bipartition_certificate(g, cert, budget=budget)
    return valid, bound, cert


def hypergraph_clique_bounds(n: int, r: int) -> tuple[float, float, str]:
    """Formula bounds for the complete r-uniform hypergraph (r > 2), flagged
    as valid only for n sufficiently larger than r."""
    if r <= 2:
        raise InvalidInputError(f"parameter r={r} must be > 2")
    if n <= r:
        raise InvalidInputError(f"parameter n={n} must be > r={r}")
    lower = UNIFORM_LOWER_CONSTANT * (4**r / math.sqrt(r - 2)) * math.log2(n)
    upper = UNIFORM_UPPER_CONSTANT * (4**r) * math.sqrt(r) * math.log2(n)
    return lower, upper, "valid for n sufficiently larger than r"


def refute_subdivided_clique_pi(m: int, k: int) -> bool:
    """Exhaustively certify that no k permutations separate the fully
    subdivided clique on m originals (True = refuted, so pi > k).

    Sound reductions make this desk-feasible: any suitable family can be
    rearranged so every subdivision vertex sits strictly between its two
    neighbours in every permutation (moving a stray subdivision vertex next
    to its neighbour preserves every blocked pair); relabelling by a clique
    automorphism pins the first permutation's original order to ascending;
    reversing a permutation preserves suitability, halving the original
    orders to enumerate for the remaining slots.  Each case is then a
    complete slot-cover search over the pair universe with the original
    orders and in-between constraints as fixed per-slot relations.
    """
    from itertools import combinations_with_replacement, permutations as iperm

    from .hypergraph import clique, subdivided_clique
    from .exact import _make_option, _solve_slot_cover

    if m < 2 or k < 1:
        raise InvalidInputError("need m >= 2 and k >= 1")
    base_graph = clique(m)
    h = subdivided_clique(m)
    items = []
    for pair in disjoint_pairs(h):
        e, f = h.edges[pair.e], h.edges[pair.f]
        items.append([_make_option(h.n, e, f), _make_option(h.n, f, e)])
    if not items:
        return False  # nothing to separate: the empty family already works

    u_of = {edge: m + idx for idx, edge in enumerate(base_graph.edges)}

    def base_for(order):
        pos = {v: i for i, v in enumerate(order)}
        arcs = [(order[t], order[t + 1]) for t in range(m - 1)]
        for (i, j), u in u_of.items():
            a, b = (i, j) if pos[i] < pos[j] else (j, i)
            arcs.append((a, u))
            arcs.append((u, b))
        return arcs

    first = base_for(tuple(range(m)))
    canon_orders = [tau for tau in iperm(range(m)) if tau[0] <= tau[-1]]
    for rest in combinations_with_replacement(canon_orders, k - 1):
        bases = [first] + [base_for(tau) for tau in rest]
        if _solve_slot_cover(h.n, items, k, per_slot_bases=bases) is not None:
            return False
    return True


def subdivided_clique_pi_lower_bound(m: int, max_k: int = 2) -> int:
    """Certified lower bound on pi of the fully subdivided clique: increases
    while the refuter excludes k permutations (the search cost grows steeply
    in k, hence the small default ceiling)."""
    if m < 3:
        return 0  # at most one path: no disjoint pairs to separate
    lb = 1
    k = 1
    while k <= max_k and refute_subdivided_clique_pi(m, k):
        lb = k + 1
        k += 1
    return lb


def subdivided_clique_bounds(n: int) -> tuple[float, float]:
    """(lower, upper) for the fully subdivided complete graph on n originals.

    Lower: half the floored iterated log of n-1.  Upper: the chromatic-number
    route evaluated termwise (asymptotic; the term below its validity range
    contributes zero).
    """
    if n < 3:
        raise InvalidInputError(f"parameter n={n} must be >= 3")
    ll = math.log2(math.log2(n - 1)) if n - 1 > 1 else 0.0
    lower = 0.5 * math.floor(ll)
    lll = math.log2(ll) if ll > 0 else 0.0
    upper = ll + 0.5 * max(0.0, lll) + 2
    return lower, upper


# ---------------------------------------------------------------------------
# Aggregated reports


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # lower | upper | exact
    value: float
    provenance: str
    flags: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "provenance": self.provenance,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class BoundReport:
    instance: str
    entries: tuple[BoundEntry, ...] = field(default_factory=tuple)

    def lowers(self, certified_only: bool = True):
        return [
            e
            for e in self.entries
            if e.kind == "lower" and (not certified_only or "advisory" not in e.flags)
        ]

    def uppers(self):
        return [e for e in self.entries if e.kind == "upper"]

    def exact(self):
        hits = [e for e in self.entries if e.kind == "exact"]
        return hits[0] if hits else None

    def assert_bracketing(self):
        """Certified lowers <= exact <= uppers; raises on violation."""
        exact = self.exact()
        uppers = self.uppers()
        for low in self.lowers():
            for up in uppers:
                if math.ceil(low.value - 1e-9) > up.value + 1e-9:
                    raise InvalidInputError(
                        f"bracketing violated: {low.name}={low.value} > {up.name}={up.value}"
                    )
            if exact and math.ceil(low.value - 1e-9) > exact.value + 1e-9:
                raise InvalidInputError(
                    f"bracketing violated: {low.name}={low.value} > exact={exact.value}"
                )
        if exact:
            for up in uppers:
                if exact.value > up.value + 1e-9:
                    raise InvalidInputError(
                        f"bracketing violated: exact={exact.value} > {up.name}={up.value}"
                    )


def bound_report(
    h: Hypergraph,
    name: str = "instance",
    seed: int = 0,
    exact_budget: int = 64,
    clique_cap: int = 64,
    structure: tuple[str, int] | None = None,
) -> BoundReport:
    """Run the applicable bounds and constructions; sub-budget misses become
    "skipped" entries, never failures.  Bracketing is asserted before return.

    `structure` unlocks family-specific entries: ("hypercube", d) adds the
    bit-position construction and the subdivided-clique embedding bound;
    ("kn-half", n) adds the subdivision certificate and the exhaustive
    refuter's certified lower bound.
    """
    entries: list[BoundEntry] = []

    # certified lower bounds first: they double as hints for the exact search
    if h.is_graph:
        try:
            omega, bound, _cert = clique_lower_bound(h, cap=clique_cap)
            entries.append(
                BoundEntry(
                    "lower_clique",
                    "lower",
                    bound,
                    f"balanced split of a {omega}-clique",
                )
            )
        except (BudgetExceededError, InvalidInputError) as exc:
            entries.append(BoundEntry("lower_clique", "skipped", -1.0, str(exc)))

    if structure is not None:
        family, param = structure
        from .constructions import hypercube_family, subdivision_family

        if family == "hypercube":
            res = hypercube_family(param, seed=seed)
            entries.append(
                BoundEntry(
                    "upper_hypercube", "upper", float(len(res.family)), "bit positions"
                )
            )
            if param >= 3:
                lower, _ = subdivided_clique_bounds(param)
                entries.append(
                    BoundEntry(
                        "lower_subdivided_embedding",
                        "lower",
                        lower,
                        "subdivided clique inside the cube",
                        ("advisory",),
                    )
                )
        elif family == "kn-half":
            res = subdivision_family(_clique(param))
            entries.append(
                BoundEntry(
                    "upper_subdivision", "upper", float(len(res.family)), "interval realizer"
                )
            )
            lb = subdivided_clique_pi_lower_bound(param)
            entries.append(
                BoundEntry(
                    "lower_refuter", "lower", float(lb), "exhaustive small-family refuter"
                )
            )
        else:
            raise InvalidInputError(f"unknown structure {family!r}")

    hint = 1
    for entry in entries:
        if entry.kind == "lower" and "advisory" not in entry.flags:
            hint = max(hint, math.ceil(entry.value - 1e-9))
    try:
        value, _witness = exact_pi(h, budget=exact_budget, lower_hint=hint)
        entries.append(BoundEntry("exact", "exact", float(value), "slot search"))
    except BudgetExceededError as exc:
        entries.append(BoundEntry("exact", "skipped", -1.0, str(exc)))

    try:
        res = construct_random(h, seed=seed)
        entries.append(
            BoundEntry("upper_random", "upper", float(len(res.family)), "random family")
        )
    except Exception as exc:  # construction failures are recorded, not fatal
        entries.append(BoundEntry("upper_random", "skipped", -1.0, str(exc)))

    if h.is_graph and h.m >= 1:
        try:
            res = construct_degeneracy(h, seed=seed)
            entries.append(
                BoundEntry(
                    "upper_degeneracy", "upper", float(len(res.family)), "star forests"
                )
            )
        except Exception as exc:
            entries.append(BoundEntry("upper_degeneracy", "skipped", -1.0, str(exc)))

    report = BoundReport(name, tuple(entries))
    report.assert_bracketing()
    return report


def report_to_json_dict(report: BoundReport) -> dict:
    return {
        "instance": report.instance,
        "entries": [e.as_dict() for e in report.entries],
    }


def report_dumps(report: BoundReport) -> str:
    return json.dumps(report_to_json_dict(report), sort_keys=True)


def report_to_csv(report: BoundReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "name", "kind", "value", "provenance", "flags"])
    for e in report.entries:
        writer.writerow(
            [report.instance, e.name, e.kind, f"{e.value:.6g}", e.provenance, ";".join(e.flags)]
        )
    return buf.getvalue()
