"""Command line interface.

Exit codes: 0 success/verified, 1 verification failure, 2 budget or regime
error, 3 I/O or format error.  Every command echoes its seed; identical
configurations reproduce byte-identical outputs under --deterministic
(default on, which leaves the wall-time column of bench empty).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import bounds as bounds_mod
from . import constructions as cons
from . import exact as exact_mod
from . import hypergraph as hg
from . import intervals as iv
from . import perms as pm
from .errors import BudgetExceededError, ConstructionError, InvalidInputError, SepdimError

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BUDGET = 2
EXIT_FORMAT = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_hypergraph(path: str) -> hg.Hypergraph:
    text = _read_text(path)
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return hg.loads(text)
    return hg.from_text(text)


def _dump_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Commands


def cmd_gen(args) -> int:
    spec = hg.GeneratorSpec(
        family=args.family,
        n=args.n,
        m=args.m,
        r=args.r,
        d=args.d,
        p=args.p,
        seed=args.seed,
    )
    if args.family == "subdivide":
        if not args.input:
            raise InvalidInputError("family 'subdivide' needs -i with a base graph")
        graph = hg.subdivide(_load_hypergraph(args.input))
    else:
        graph = hg.generate(spec)
    if args.format == "text":
        _write_text(args.output, hg.to_text(graph))
    else:
        payload = hg.to_json_dict(graph)
        payload["seed"] = args.seed
        _write_text(args.output, _dump_json(payload))
    return EXIT_OK


def cmd_linegraph(args) -> int:
    graph = _load_hypergraph(args.input)
    out = hg.line_graph(graph)
    _write_text(args.output, _dump_json(hg.to_json_dict(out)))
    return EXIT_OK


def cmd_construct(args) -> int:
    method = args.method
    seed = args.seed
    if method == "hypercube":
        if args.d is None:
            raise InvalidInputError("--method hypercube needs --d")
        result = cons.hypercube_family(args.d, seed=seed)
        instance = hg.hypercube(args.d)
    elif method == "planar":
        tri = cons.triangulation_loads(_read_text(args.input))
        result = cons.schnyder_family(tri)
        instance = tri.graph()
    else:
        instance = _load_hypergraph(args.input)
        if method == "random":
            result = cons.construct_random(instance, seed=seed)
        elif method == "degeneracy":
            result = cons.construct_degeneracy(instance, seed=seed)
        elif method == "treewidth":
            td = None
            if args.td:
                td = cons.td_from_pace(_read_text(args.td), n_vertices=instance.n)
            result = cons.construct_treewidth(instance, td, seed=seed)
        elif method == "coloring":
            if not args.coloring:
                raise InvalidInputError("--method coloring needs --coloring FILE")
            colors = json.loads(_read_text(args.coloring))
            result = cons.construct_coloring(
                instance, [int(c) - 1 for c in colors], args.mode, seed=seed
            )
        elif method == "subdivision":
            result = cons.subdivision_family(instance)
            instance = hg.subdivide(instance)
        elif method == "recursive-delta":
            result = cons.construct_recursive_delta(instance, seed=seed)
        elif method == "partition":
            if not args.parts:
                raise InvalidInputError("--method partition needs --parts FILE")
            parts = [
                [int(v) - 1 for v in part] for part in json.loads(_read_text(args.parts))
            ]
            sub = lambda sg: cons.construct_random(sg, seed=seed).family
            result = cons.combine_partition(instance, parts, sub, seed=seed)
        else:
            raise InvalidInputError(f"unknown method {method!r}")
    payload = pm.family_to_json_dict(result.family)
    payload["seed"] = seed
    _write_text(args.output, _dump_json(payload))
    if args.ledger:
        _write_text(args.ledger, _dump_json(result.ledger.as_dict()))
    return EXIT_OK


def cmd_verify(args) -> int:
    family = pm.family_loads(_read_text(args.family))
    kind = pm.SuitabilityKind.parse(args.kind, args.k)
    if kind.tag == pm.SuitabilityKind.K_SUITABLE and not args.input:
        universe: hg.Hypergraph | int = family.n
    else:
        universe = _load_hypergraph(args.input)
    verdict = pm.verify_family(universe, family, kind)
    if verdict.ok:
        print(f"PASS {kind.tag} family of {len(family)} permutations")
        return EXIT_OK
    print(f"FAIL {kind.tag}: {verdict.message} (witness {verdict.witness})")
    return EXIT_VERIFY_FAIL


def cmd_exact(args) -> int:
    if args.posetdim:
        poset = exact_mod.poset_loads(_read_text(args.input))
        value, realizer = exact_mod.exact_poset_dim(poset, budget=args.budget)
        print(value)
        if args.output:
            payload = pm.family_to_json_dict(
                pm.PermutationFamily(poset.n, realizer.extensions)
            )
            _write_text(args.output, _dump_json(payload))
        return EXIT_OK
    graph = _load_hypergraph(args.input)
    if args.boxicity:
        value, reps = exact_mod.exact_boxicity(graph, cap=args.vertex_cap)
        print(value)
        if args.output:
            payload = {"k": value, "representations": [
                iv.representation_to_json_dict(rep) for rep in reps
            ]}
            _write_text(args.output, _dump_json(payload))
        return EXIT_OK
    value, witness = exact_mod.exact_pi(graph, budget=args.budget)
    print(value)
    if args.output:
        _write_text(args.output, _dump_json(pm.family_to_json_dict(witness)))
    return EXIT_OK


def cmd_bounds(args) -> int:
    graph = _load_hypergraph(args.input)
    structure = None
    if args.structure:
        try:
            family, param = args.structure.split(":")
            structure = (family, int(param))
        except ValueError as exc:
            raise InvalidInputError(
                f"--structure must look like hypercube:3 or kn-half:5, got {args.structure!r}"
            ) from exc
    report = bounds_mod.bound_report(
        graph, name=args.name, seed=args.seed, exact_budget=args.budget, structure=structure
    )
    if args.csv:
        _write_text(args.csv, bounds_mod.report_to_csv(report))
    _write_text(args.output, bounds_mod.report_dumps(report) + "\n")
    return EXIT_OK


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in spec.split(",")]


_BENCH_COLUMNS = [
    "instance",
    "n",
    "m",
    "method",
    "seed",
    "size",
    "paper_bound",
    "exact",
    "lower_bound",
    "wall_time_s",
]


def cmd_bench(args) -> int:
    methods = args.methods.split(",")
    seeds = _parse_range(args.seeds)
    rows = []
    for n in _parse_range(args.n):
        spec = hg.GeneratorSpec(family=args.family, n=n, d=n, p=args.p, seed=args.seed)
        instance = hg.generate(spec)
        label = f"{args.family}-{n}"
        exact_value: float | None = None
        try:
            exact_value = float(exact_mod.exact_pi(instance, budget=args.budget)[0])
        except BudgetExceededError:
            pass
        lower: float | None = None
        if instance.is_graph:
            try:
                _omega, lower, _cert = bounds_mod.clique_lower_bound(instance)
            except (BudgetExceededError, InvalidInputError):
                lower = None
        for method in methods:
            for seed in seeds:
                t0 = time.perf_counter()
                if method == "random":
                    result = cons.construct_random(instance, seed=seed)
                elif method == "degeneracy":
                    result = cons.construct_degeneracy(instance, seed=seed)
                elif method == "treewidth":
                    result = cons.construct_treewidth(instance, seed=seed)
                elif method == "recursive-delta":
                    result = cons.construct_recursive_delta(instance, seed=seed)
                else:
                    raise InvalidInputError(f"bench does not support method {method!r}")
                elapsed = time.perf_counter() - t0
                size = len(result.family)
                if exact_value is not None and size < exact_value:
                    raise SepdimError("bracketing violated: construction beat the exact value")
                if (
                    exact_value is not None
                    and lower is not None
                    and not (-(2**52) < lower <= exact_value + 1e-9)
                ):
                    raise SepdimError("bracketing violated: lower bound above exact value")
                rows.append(
                    {
                        "instance": label,
                        "n": instance.n,
                        "m": instance.m,
                        "method": method,
                        "seed": seed,
                        "size": size,
                        "paper_bound": (
                            f"{result.ledger.paper_bound:.6g}"
                            if result.ledger.paper_bound is not None
                            else ""
                        ),
                        "exact": "" if exact_value is None else int(exact_value),
                        "lower_bound": "" if lower is None else f"{lower:.6g}",
                        "wall_time_s": "" if args.deterministic else f"{elapsed:.3f}",
                    }
                )
    rows.sort(key=lambda row: (row["instance"], row["method"], row["seed"]))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write_text(args.output, buf.getvalue())
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepdim",
        description="separation dimension: generation, construction, verification, exact values",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a named instance")
    p.add_argument("--family", required=True,
                   help="clique|bipartite|uniform|hypercube|grid|double-grid|path|star|empty|gnp|kn-half|subdivide")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-i", "--input", help="base graph for family=subdivide")
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("linegraph", help="line graph of a hypergraph")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_linegraph)

    p = sub.add_parser(
        "construct",
        help="build a verified family",
        description=(
            "Methods and their size guarantees: "
            "random <= ceil(6.84 log2 n) for graphs (rank-r hypergraphs get the "
            "4^r sqrt(r) log n form); degeneracy <= 4kr for degeneracy k and "
            "bit-family size r; treewidth <= 15.68 ceil(log2(t+1)) + 2; "
            "coloring <= 2c + 13.68 log2 c (acyclic) or c + 13.68 log2 c (star) "
            "for c classes; planar = exactly 3 on triangulations; subdivision "
            "<= realizer dimension + 2 on the fully subdivided input; hypercube "
            "<= the 3-suitable bit-family size; recursive-delta <= 2^(9 log* D) D; "
            "partition <= 13.68 log2 r + max-block-size * r. Every family is "
            "verified before it is written."
        ),
    )
    p.add_argument("-i", "--input")
    p.add_argument("--method", required=True,
                   help="random|degeneracy|treewidth|coloring|planar|subdivision|hypercube|recursive-delta|partition")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, help="dimension for --method hypercube")
    p.add_argument("--td", help="PACE .td file for --method treewidth")
    p.add_argument("--coloring", help="JSON colour list (1-based) for --method coloring")
    p.add_argument("--mode", choices=["acyclic", "star"], default="acyclic")
    p.add_argument("--parts", help="JSON vertex partition (1-based) for --method partition")
    p.add_argument("-o", "--output")
    p.add_argument("--ledger")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a family file")
    p.add_argument("-i", "--input")
    p.add_argument("--family", required=True)
    p.add_argument("--kind", default=pm.SuitabilityKind.PAIRWISE)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exact", help="exact separation dimension / boxicity / poset dimension")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--budget", type=int, default=exact_mod.DEFAULT_PAIR_BUDGET)
    p.add_argument("--vertex-cap", type=int, default=exact_mod.DEFAULT_BOXICITY_CAP)
    p.add_argument("--boxicity", action="store_true")
    p.add_argument("--posetdim", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("bounds", help="bracketing bound report")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--name", default="instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=exact_mod.DEFAULT_PAIR_BUDGET)
    p.add_argument("--structure", help="family-specific entries, e.g. hypercube:3 or kn-half:5")
    p.add_argument("-o", "--output")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="benchmark table over an instance range")
    p.add_argument("--family", required=True)
    p.add_argument("--n", required=True, help="range like 4..8 or list like 4,6,8")
    p.add_argument("--methods", required=True)
    p.add_argument("--seeds", default="0")
    p.add_argument("--seed", type=int, default=0, help="generator seed (gnp)")
    p.add_argument("--p", type=float)
    p.add_argument("--budget", type=int, default=exact_mod.DEFAULT_PAIR_BUDGET)
    det = p.add_mutually_exclusive_group()
    det.add_argument("--deterministic", dest="deterministic", action="store_true", default=True)
    det.add_argument("--no-deterministic", dest="deterministic", action="store_false")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceededError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except SepdimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


if __name__ == "__main__":
    sys.exit(main())
