import pytest

from sepdim import InvalidInputError, SuitabilityKind, disjoint_pairs, exact_pi, verify_family
from sepdim.constructions import (
    Triangulation,
    bipyramid,
    compute_realizer,
    octahedron,
    schnyder_family,
    stacked_triangulation,
    tetrahedron,
    triangulation_dumps,
    triangulation_loads,
)


def test_tetrahedron_family_is_optimal():
    tri = tetrahedron()
    res = schnyder_family(tri)
    assert len(res.family) == 3
    g = tri.graph()
    assert verify_family(g, res.family, SuitabilityKind.pairwise()).ok
    assert exact_pi(g)[0] == 3


def test_single_permutation_separates_one_k4_pair():
    # each of the three permutations must handle exactly one of the three pairs
    tri = tetrahedron()
    res = schnyder_family(tri)
    g = tri.graph()
    from sepdim import separates

    pairs = [(g.edges[p.e], g.edges[p.f]) for p in disjoint_pairs(g)]
    for sigma in res.family:
        assert sum(1 for e, f in pairs if separates(sigma, e, f)) == 1


def test_octahedron_family():
    tri = octahedron()
    res = schnyder_family(tri)
    assert len(res.family) == 3
    assert verify_family(tri.graph(), res.family, SuitabilityKind.pairwise()).ok


def test_triangle_trivial():
    tri = stacked_triangulation(3)
    res = schnyder_family(tri)
    assert len(res.family) == 3  # trivially sufficient: no disjoint pairs


def test_stacked_triangulations_verify():
    for n in (5, 8, 12, 20):
        for seed in (0, 3):
            tri = stacked_triangulation(n, seed)
            res = schnyder_family(tri)
            assert len(res.family) == 3
            assert verify_family(tri.graph(), res.family, SuitabilityKind.pairwise()).ok


def test_realizer_coordinates_sum_and_outdegrees():
    tri = stacked_triangulation(10, seed=1)
    realizer = compute_realizer(tri)
    total = 2 * tri.n - 5
    outer = set(tri.outer)
    for v in range(tri.n):
        assert sum(realizer.coords[v]) == total
    out_count = {v: {0: 0, 1: 0, 2: 0} for v in range(tri.n)}
    for (tail, _head), c in realizer.color.items():
        out_count[tail][c] += 1
    for v in range(tri.n):
        if v in outer:
            continue
        assert all(out_count[v][c] == 1 for c in range(3))


def test_coordinate_functionals_separate_disjoint_edges():
    # restated at coordinate level: one of x, y, x+y strictly separates
    for seed in (0, 1):
        tri = stacked_triangulation(9, seed)
        realizer = compute_realizer(tri)
        g = tri.graph()
        coords = realizer.coords
        for pair in disjoint_pairs(g):
            e, f = g.edges[pair.e], g.edges[pair.f]
            separated = False
            for key in (
                lambda v: coords[v][0],
                lambda v: coords[v][1],
                lambda v: coords[v][0] + coords[v][1],
            ):
                emin, emax = min(key(v) for v in e), max(key(v) for v in e)
                fmin, fmax = min(key(v) for v in f), max(key(v) for v in f)
                if emax < fmin or fmax < emin:
                    separated = True
                    break
            assert separated, (e, f)


def test_rotation_validation_errors():
    with pytest.raises(InvalidInputError):
        Triangulation(3, ((1,), (), ()), (0, 1, 2))  # edge not symmetric
    with pytest.raises(InvalidInputError):
        Triangulation(3, ((1,), (0,), ()), (0, 1, 2)).faces()  # too few edges
    # K4 minus an edge is not a triangulation
    rot = ((1, 2), (0, 3, 2), (0, 1, 3), (1, 2))
    with pytest.raises(InvalidInputError):
        Triangulation(4, rot, (0, 1, 2)).faces()


def test_bipyramids_verify():
    # 4-connected triangulations, structurally unlike the stacked family
    for k in (4, 5, 6, 8):
        tri = bipyramid(k)
        res = schnyder_family(tri)
        assert len(res.family) == 3
        assert verify_family(tri.graph(), res.family, SuitabilityKind.pairwise()).ok
        realizer = compute_realizer(tri)
        assert all(sum(c) == 2 * tri.n - 5 for c in realizer.coords)


def test_triangulation_json_round_trip():
    tri = stacked_triangulation(7, 2)
    assert triangulation_loads(triangulation_dumps(tri)) == tri


def test_realizer_cyclic_color_pattern():
    """Around every inner vertex the rotation reads: the three outgoing edges
    in colour order with each incoming block lying between the other two
    colours' outgoing edges (checked up to rotation direction)."""
    for tri in (octahedron(), stacked_triangulation(12, 3), stacked_triangulation(15, 6)):
        realizer = compute_realizer(tri)
        outer = set(tri.outer)
        for v in range(tri.n):
            if v in outer:
                continue
            ring = []
            for u in tri.rot[v]:
                if (v, u) in realizer.color:
                    ring.append(("out", realizer.color[(v, u)]))
                else:
                    ring.append(("in", realizer.color[(u, v)]))

            def matches(seq):
                if seq[0] != ("out", 0):
                    return False
                rest = seq[1:]

                def consume(rest, c_in, c_out):
                    i = 0
                    while i < len(rest) and rest[i] == ("in", c_in):
                        i += 1
                    if i < len(rest) and rest[i] == ("out", c_out):
                        return rest[i + 1:]
                    return None

                rest = consume(rest, 2, 1)
                if rest is None:
                    return False
                rest = consume(rest, 0, 2)
                if rest is None:
                    return False
                return all(x == ("in", 1) for x in rest)

            ok = False
            for direction in (ring, ring[::-1]):
                for shift in range(len(direction)):
                    if matches(direction[shift:] + direction[:shift]):
                        ok = True
                        break
                if ok:
                    break
            assert ok, (v, ring)
