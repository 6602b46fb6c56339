"""Permutation-family algebra: separation predicates, verifiers, Las Vegas builders.

A permutation of the ground set {0, .., n-1} is stored as the left-to-right
vertex order.  `precedes(sigma, A, B)` is the block-order predicate: every
element of A is placed before every element of B.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations as iter_permutations

from .errors import ConstructionError, InvalidInputError
from .hypergraph import Hypergraph, disjoint_pairs

#: union-bound factor: r = c*log2(n) random permutations make the expected
#: number of unseparated/unmixed edge pairs of K_n drop below 1 (n^4*(2/3)^r < 1).
RANDOM_FAMILY_LOG_FACTOR = 6.84

#: default number of fresh redraws before a Las Vegas construction gives up.
DEFAULT_MAX_RETRIES = 32


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, .., n-1}, stored as the left-to-right order."""

    order: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.order) != list(range(len(self.order))):
            raise InvalidInputError("order is not a permutation of 0..n-1")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.order)

    @cached_property
    def pos(self) -> tuple[int, ...]:
        p = [0] * self.n
        for i, v in enumerate(self.order):
            p[v] = i
        return tuple(p)

    def rank(self, v: int) -> int:
        """1-based position of v."""
        return self.pos[v] + 1


def reverse(sigma: Permutation) -> Permutation:
    return Permutation(tuple(reversed(sigma.order)))


def concat_blocks(blocks) -> Permutation:
    """Lay ordered blocks out left to right; the blocks must partition 0..n-1."""
    order = []
    for b in blocks:
        order.extend(b)
    if sorted(order) != list(range(len(order))):
        raise InvalidInputError("blocks do not partition the ground set")
    return Permutation(tuple(order))


def precedes(sigma: Permutation, a, b) -> bool:
    """True iff every element of `a` is placed before every element of `b`."""
    sa, sb = set(a), set(b)
    if not sa or not sb:
        raise InvalidInputError("precedes needs nonempty sets")
    if sa & sb:
        raise InvalidInputError(f"precedes needs disjoint sets, both contain {sorted(sa & sb)}")
    pos = sigma.pos
    return max(pos[v] for v in sa) < min(pos[v] for v in sb)


def separates(sigma: Permutation, e, f) -> bool:
    """True iff one of the two disjoint sets entirely precedes the other."""
    return precedes(sigma, e, f) or precedes(sigma, f, e)


def strictly_between(sigma: Permutation, a: int, b: int, c: int) -> bool:
    """True iff a lies strictly between b and c."""
    pos = sigma.pos
    return pos[b] < pos[a] < pos[c] or pos[c] < pos[a] < pos[b]


@dataclass(frozen=True)
class PermutationFamily:
    """An ordered list of permutations over a common ground set (may be empty)."""

    n: int
    perms: tuple[Permutation, ...]

    def __post_init__(self):
        for sigma in self.perms:
            if sigma.n != self.n:
                raise InvalidInputError(
                    f"permutation over {sigma.n} elements in a family over {self.n}"
                )

    @staticmethod
    def from_orders(n: int, orders) -> "PermutationFamily":
        return PermutationFamily(n, tuple(Permutation(tuple(o)) for o in orders))

    def __len__(self) -> int:
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)


@dataclass(frozen=True)
class SuitabilityKind:
    """Which property a family is asked to satisfy."""

    tag: str
    k: int | None = None

    PAIRWISE = "pairwise-suitable"
    MIXING = "pairwise-suitable-and-3-mixing"
    K_SUITABLE = "k-suitable"

    def __post_init__(self):
        if self.tag not in (self.PAIRWISE, self.MIXING, self.K_SUITABLE):
            raise InvalidInputError(f"unknown suitability kind {self.tag!r}")
        if self.tag == self.K_SUITABLE and (self.k is None or self.k < 1):
            raise InvalidInputError("k-suitable needs k >= 1")

    @staticmethod
    def pairwise() -> "SuitabilityKind":
        return SuitabilityKind(SuitabilityKind.PAIRWISE)

    @staticmethod
    def mixing() -> "SuitabilityKind":
        return SuitabilityKind(SuitabilityKind.MIXING)

    @staticmethod
    def k_suitable(k: int) -> "SuitabilityKind":
        return SuitabilityKind(SuitabilityKind.K_SUITABLE, k)

    @staticmethod
    def parse(text: str, k: int | None = None) -> "SuitabilityKind":
        if text == SuitabilityKind.K_SUITABLE:
            return SuitabilityKind.k_suitable(k if k is not None else 3)
        return SuitabilityKind(text)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification; `witness` is the first violation found."""

    ok: bool
    kind: SuitabilityKind
    witness: tuple | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_family(h, family: PermutationFamily, kind: SuitabilityKind) -> Verdict:
    """Exhaustively check `family` for the requested property.

    `h` is a Hypergraph for the pairwise/mixing kinds and may be a plain
    ground-set size for k-suitability (where no edge structure is involved).
    Returns a Verdict whose witness is the lexicographically first violation.
    """
    if kind.tag == SuitabilityKind.K_SUITABLE:
        n = h.n if isinstance(h, Hypergraph) else int(h)
        if family.n != n:
            raise InvalidInputError(f"family over {family.n} elements, ground set has {n}")
        return _verify_k_suitable(n, family, kind)
    if not isinstance(h, Hypergraph):
        raise InvalidInputError("pairwise/mixing verification needs a hypergraph")
    if family.n != h.n:
        raise InvalidInputError(f"family over {family.n} vertices, hypergraph has {h.n}")
    verdict = _verify_pairwise(h, family, kind)
    if not verdict.ok or kind.tag == SuitabilityKind.PAIRWISE:
        return verdict
    return _verify_mixing(h, family, kind)


def _verify_pairwise(h: Hypergraph, family: PermutationFamily, kind) -> Verdict:
    for pair in disjoint_pairs(h):
        e, f = h.edges[pair.e], h.edges[pair.f]
        if not any(separates(sigma, e, f) for sigma in family):
            return Verdict(
                False,
                kind,
                (pair.e, pair.f),
                f"edges {e} and {f} are separated by no permutation",
            )
    return Verdict(True, kind)


def _verify_mixing(h: Hypergraph, family: PermutationFamily, kind) -> Verdict:
    if not h.is_graph:
        raise InvalidInputError("3-mixing is defined for graphs")
    for i, j in combinations(range(h.m), 2):
        e, f = h.edges[i], h.edges[j]
        common = set(e) & set(f)
        if len(common) != 1:
            continue
        a = common.pop()
        b = e[0] if e[1] == a else e[1]
        c = f[0] if f[1] == a else f[1]
        if not any(strictly_between(sigma, a, b, c) for sigma in family):
            return Verdict(
                False,
                kind,
                (i, j),
                f"no permutation places {a} between {b} and {c}",
            )
    return Verdict(True, kind)


def _verify_k_suitable(n: int, family: PermutationFamily, kind) -> Verdict:
    k = kind.k
    if n < k:
        return Verdict(True, kind)
    for subset in combinations(range(n), k):
        # sigma satisfies (A, a) exactly when a is sigma-last within A,
        # so the covered elements of A are its per-permutation maxima.
        covered = {max(subset, key=lambda v: sigma.pos[v]) for sigma in family}
        for a in subset:
            if a not in covered:
                return Verdict(
                    False,
                    kind,
                    (subset, a),
                    f"no permutation places {set(subset) - {a}} before {a}",
                )
    return Verdict(True, kind)


# ---------------------------------------------------------------------------
# Las Vegas constructions


def three_suitable_target(n: int) -> int:
    """Size at which a 3-suitable family of [n] exists (small-n floor applied).

    Evaluates floor(loglog n + 0.5 logloglog n + log2(sqrt(2)*pi)), the
    classical asymptotic size of minimum 3-suitable families; the slack makes
    the raw value meaningless below n = 3, and the per-permutation coverage
    argument forces at least 3 permutations.
    """
    if n < 3:
        return 0
    ll = math.log2(math.log2(n))
    lll = math.log2(ll) if ll > 0 else 0.0
    raw = math.floor(ll + 0.5 * lll + math.log2(math.sqrt(2) * math.pi))
    return max(3, raw)


def default_target_size(n: int, kind: SuitabilityKind) -> int:
    """The documented default family size for `random_suitable_family`."""
    if kind.tag == SuitabilityKind.K_SUITABLE:
        return three_suitable_target(n)
    if n < 2:
        return 0
    return max(1, math.ceil(RANDOM_FAMILY_LOG_FACTOR * math.log2(n)))


def _uniform_family(n: int, size: int, rng: random.Random) -> PermutationFamily:
    perms = []
    for _ in range(size):
        order = list(range(n))
        rng.shuffle(order)
        perms.append(Permutation(tuple(order)))
    return PermutationFamily(n, tuple(perms))


def _verify_for_kind(n: int, family: PermutationFamily, kind: SuitabilityKind) -> Verdict:
    """Verify against the kind's own universe: K_n edge pairs, or all (A, a)."""
    if kind.tag == SuitabilityKind.K_SUITABLE:
        return verify_family(n, family, kind)
    from .hypergraph import clique  # local import to keep module load cheap

    return verify_family(clique(n), family, kind)


def random_suitable_family(
    n: int,
    kind: SuitabilityKind,
    target_size: int | None = None,
    seed: int = 0,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> PermutationFamily:
    """Draw `target_size` uniform permutations and verify; redraw on failure.

    The verification universe is K_n for the pairwise/mixing kinds and all
    (A, a) pairs for k-suitability.  Returns a verified family or raises
    ConstructionError once the retries are exhausted (the caller may raise
    the target size).
    """
    if target_size is None:
        target_size = default_target_size(n, kind)
    if target_size < 0:
        raise InvalidInputError("target_size must be >= 0")
    rng = random.Random(seed)
    last = None
    for _ in range(max_retries):
        family = _uniform_family(n, target_size, rng)
        last = _verify_for_kind(n, family, kind)
        if last.ok:
            return family
    raise ConstructionError(
        f"no verified {kind.tag} family of size {target_size} over [{n}] after "
        f"{max_retries} redraws (last witness: {last.witness}); raise target_size"
    )


def union_bound_target(n: int, kind: SuitabilityKind) -> int:
    """Family size at which uniform draws verify with good probability.

    Sizes the expected number of violated constraints below 1/2: each
    constraint survives one permutation with probability 2/3 (edge pairs of
    K_n under the blocked/mixed orders) or (k-1)/k (one (A, a) requirement).
    """
    if n < 2:
        return 0
    if kind.tag == SuitabilityKind.K_SUITABLE:
        k = kind.k
        if n < k:
            return 0
        constraints = k * math.comb(n, k)
        return max(1, math.ceil(math.log(2 * constraints) / math.log(k / (k - 1))))
    return max(1, math.ceil(RANDOM_FAMILY_LOG_FACTOR * math.log2(n)))


def smallest_random_family(
    n: int,
    kind: SuitabilityKind,
    seed: int = 0,
    size_cap: int | None = None,
    draws_per_size: int = 8,
    exhaustive_below: int = 5,
) -> PermutationFamily:
    """Search upward for a small verified family.

    For tiny ground sets the minimum is found exhaustively (deterministic);
    otherwise sizes escalate from a cheap lower bound, drawing a few random
    candidates per size.  Always returns a verified family.
    """
    if n <= 1:
        return PermutationFamily(n, ())
    if _verify_for_kind(n, PermutationFamily(n, ()), kind).ok:
        return PermutationFamily(n, ())
    if n < exhaustive_below:
        all_perms = [Permutation(p) for p in iter_permutations(range(n))]
        for size in range(1, min(6, len(all_perms)) + 1):
            for combo in combinations(all_perms, size):
                family = PermutationFamily(n, combo)
                if _verify_for_kind(n, family, kind).ok:
                    return family
    rng = random.Random(seed)
    start = 1
    if kind.tag != SuitabilityKind.K_SUITABLE:
        start = max(1, math.ceil(math.log2(max(2, n - 1))))
    target = union_bound_target(n, kind)
    cap = size_cap if size_cap is not None else target
    high = max(start, cap, target)
    if n <= 24:
        sizes = list(range(start, high + 1))
    else:
        # big ground sets: a short ladder instead of one-by-one escalation
        lo = max(start, min(cap, target))
        sizes = sorted({lo, (lo + high) // 2, high})
    for size in sizes:
        for _ in range(draws_per_size):
            family = _uniform_family(n, size, rng)
            if _verify_for_kind(n, family, kind).ok:
                return family
    # safety margin above the union-bound target before giving up
    return random_suitable_family(n, kind, high + 8, rng.randrange(2**32))


def three_suitable_family(n: int, seed: int = 0) -> PermutationFamily:
    """A small verified 3-suitable family of [n] (empty when n < 3)."""
    if n < 3:
        return PermutationFamily(n, ())
    return smallest_random_family(n, SuitabilityKind.k_suitable(3), seed)


# ---------------------------------------------------------------------------
# Serialization (1-based left-to-right orders)


def family_to_json_dict(family: PermutationFamily) -> dict:
    return {
        "n": family.n,
        "perms": [[v + 1 for v in sigma.order] for sigma in family.perms],
    }


def family_from_json_dict(data: dict) -> PermutationFamily:
    try:
        n = int(data["n"])
        orders = [tuple(int(v) - 1 for v in row) for row in data["perms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed family JSON: {exc}") from exc
    return PermutationFamily.from_orders(n, orders)


def family_dumps(family: PermutationFamily) -> str:
    return json.dumps(family_to_json_dict(family), sort_keys=True)


def family_loads(text: str) -> PermutationFamily:
    return family_from_json_dict(json.loads(text))
