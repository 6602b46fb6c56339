"""Hypercube families from 3-suitable permutations of the bit positions."""

from __future__ import annotations

from ..errors import InvalidInputError
from ..hypergraph import hypercube
from ..perms import (
    Permutation,
    PermutationFamily,
    three_suitable_target,
    three_suitable_family,
)
from .base import ConstructionResult, checked_result


def hypercube_family(d: int, seed: int = 0) -> ConstructionResult:
    """One permutation per 3-suitable permutation of the d bit positions:
    permute the bits, then read vertices in right-to-left lexicographic order.

    For two disjoint edges flipping bits i and j there is a third bit k where
    the edges' strings differ; a permutation pushing i and j below k makes k
    the deciding bit, which separates the edges.
    """
    if d < 1:
        raise InvalidInputError(f"parameter d={d} must be >= 1")
    g = hypercube(d)
    if d == 1:
        return checked_result(g, PermutationFamily(g.n, ()), "hypercube", 0.0, notes="d=1")
    if d == 2:
        # the 4-cycle: two block layouts, one per bit
        fwd = sorted(range(4))
        swapped = sorted(range(4), key=lambda v: ((v & 1) << 1) | (v >> 1))
        family = PermutationFamily.from_orders(4, [fwd, swapped])
        return checked_result(
            g, family, "hypercube", 2.0, in_regime=False, notes="d=2 direct"
        )
    suitable = three_suitable_family(d, seed=seed)
    perms = []
    for sigma in suitable:
        def key(v):
            out = 0
            for i in range(d):
                if v >> i & 1:
                    out |= 1 << sigma.pos[i]
            return out

        perms.append(Permutation(tuple(sorted(range(g.n), key=key))))
    family = PermutationFamily(g.n, tuple(perms))
    bound = float(three_suitable_target(d))
    return checked_result(
        g,
        family,
        "hypercube",
        bound,
        in_regime=len(suitable) <= bound,
        notes=f"bit_family={len(suitable)}",
    )
