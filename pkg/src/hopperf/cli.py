"""Command line: ``hopperf estimate|oracle|heuristic|generate``.

Exit codes: 0 success, 2 bad input (parse or validation), 3 failure while running.
Defaults for ``--samples``, ``--seed``, ``--workers``, ``--mode`` and ``--format``
can be set with ``HOPPERF_SAMPLES``, ``HOPPERF_SEED``, ``HOPPERF_WORKERS``,
``HOPPERF_MODE`` and ``HOPPERF_FORMAT``.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from pathlib import Path

import numpy as np

from .edgesets import build_families, empty_families
from .estimators import conditioned_estimate, crude_estimate, relative_efficiency
from .fixtures import (
    antel_fixture,
    antel_region_spec,
    generate_grid,
    generate_preferential_extension,
    triangular_reliabilities,
)
from .graph import Network, max_terminal_distance
from .heuristics import heuristic_families
from .io import (
    ParseError,
    families_to_json,
    format_network,
    load_families,
    load_network,
    load_region_spec,
    report_to_json,
    report_to_text,
)
from .oracle import ENUMERATION_CAP, enumerate_exact
from .regions import RegionSpec

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_RUNTIME = 3


class UsageError(ValueError):
    pass


def _env(name: str, default, cast=str):
    raw = os.environ.get(f"HOPPERF_{name}")
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"HOPPERF_{name}={raw!r} is not a valid {cast.__name__}") from None


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _generated(spec: str, seed: int) -> Network:
    """``grid:K``, ``grid:K:triangular``, or ``pa:<graph>:<extra>:<per_node>``."""
    kind, *args = spec.split(":")
    try:
        if kind == "grid" and len(args) in (1, 2):
            side = int(args[0])
            net = generate_grid(side)
            if len(args) == 2:
                if args[1] != "triangular":
                    raise UsageError(f"unknown grid reliability model {args[1]!r}")
                rel = triangular_reliabilities(net.edge_count, np.random.default_rng(seed))
                net = net.with_reliability(rel)
            return net
        if kind == "pa" and len(args) == 3:
            base = _base_graph(args[0])
            return generate_preferential_extension(base, int(args[1]), int(args[2]), seed=seed)
    except ValueError as exc:
        raise UsageError(f"bad generator {spec!r}: {exc}") from None
    raise UsageError(f"unknown generator {spec!r} (try grid:8, grid:8:triangular, pa:antel:10:2)")


def _base_graph(source: str) -> Network:
    if source == "antel":
        return antel_fixture()[0]
    return load_network(source)


def _network(args) -> Network:
    if (args.graph is None) == (args.generator is None):
        raise UsageError("give exactly one of --graph and --generator")
    if args.graph is not None:
        net = _base_graph(args.graph)
    else:
        net = _generated(args.generator, args.seed)
    if getattr(args, "re", None) is not None:
        net = net.with_reliability(args.re)
    if getattr(args, "terminals", None):
        net = net.with_terminals(_int_list(args.terminals))
    return net


def _region_spec(args) -> RegionSpec:
    if args.regions:
        if args.thresholds or args.fines:
            raise UsageError("--regions excludes --thresholds/--fines")
        return load_region_spec(args.regions)
    if args.thresholds is not None and args.fines is not None:
        return RegionSpec(_int_list(args.thresholds), _float_list(args.fines))
    if args.graph == "antel" and args.thresholds is None and args.fines is None:
        re = args.re if getattr(args, "re", None) is not None else 0.9
        return antel_region_spec(re)
    raise UsageError("need --regions, or both --thresholds and --fines")


def _families(args, net: Network, spec: RegionSpec):
    """Families plus the seconds spent finding them."""
    if args.sets and getattr(args, "heuristic", None):
        raise UsageError("--sets and --heuristic are mutually exclusive")
    if getattr(args, "heuristic", None):
        t0 = time.perf_counter()
        fam, _ = heuristic_families(net, spec, args.heuristic, max_time=args.max_time,
                                    max_tries=args.max_tries, seed=args.seed,
                                    max_iterations=args.max_iterations)
        return fam, time.perf_counter() - t0
    if args.sets is None:
        return None, 0.0
    if args.sets == "table2":
        if args.graph != "antel":
            raise UsageError("--sets table2 belongs to --graph antel")
        raw = antel_fixture()[1]
    else:
        raw = load_families(args.sets)
    return build_families(net, spec, raw["pathsets"], raw["cutsets"]), 0.0


def _graph_summary(net: Network) -> dict:
    return {
        "nodes": net.node_count,
        "edges": net.edge_count,
        "terminals": list(net.terminals),
        "max_terminal_distance": max_terminal_distance(net),
    }


def _spec_summary(spec: RegionSpec) -> dict:
    return {"thresholds": list(spec.thresholds), "phi_values": list(spec.phi_values)}


def _emit(report: dict, args) -> None:
    text = report_to_json(report) if args.format == "json" else report_to_text(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_estimate(args) -> None:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    net = _network(args)
    spec = _region_spec(args)
    families, search_seconds = _families(args, net, spec)
    if args.method in ("conditioned", "both") and families is None:
        raise UsageError("the conditioned method needs --sets or --heuristic")
    report = {"graph": _graph_summary(net), "regions": _spec_summary(spec)}
    results = {}
    if args.method in ("crude", "both"):
        results["crude"] = crude_estimate(net, spec, args.samples, args.seed, args.workers)
    if args.method in ("conditioned", "both"):
        results["conditioned"] = conditioned_estimate(
            net, spec, families, args.samples, args.seed, args.workers, args.mode,
            extra_setup_seconds=search_seconds,
        )
        report["families"] = families.to_lists()
    for name, res in results.items():
        entry = res.to_dict()
        entry["standard_error"] = res.standard_error
        entry["total_seconds"] = res.total_seconds
        report[name] = entry
    if len(results) == 2:
        c, k = results["crude"], results["conditioned"]
        ratio = c.variance_of_estimator / k.variance_of_estimator if k.variance_of_estimator else None
        report["variance_ratio"] = ratio
        report["relative_efficiency"] = (
            relative_efficiency(c, k) if k.variance_of_estimator else None
        )
    if args.with_oracle:
        if net.edge_count > ENUMERATION_CAP:
            raise UsageError(f"--with-oracle needs at most {ENUMERATION_CAP} edges")
        exact = enumerate_exact(net, spec, families)
        report["exact"] = {"expected_phi": exact.expected_phi, "p": exact.p.tolist()}
    _emit(report, args)


def cmd_oracle(args) -> None:
    net = _network(args)
    spec = _region_spec(args)
    families, _ = _families(args, net, spec)
    exact = enumerate_exact(net, spec, families, cap=args.cap)
    report = {
        "graph": _graph_summary(net),
        "regions": _spec_summary(spec),
        "expected_phi": exact.expected_phi,
        "p": exact.p.tolist(),
    }
    if exact.z is not None:
        report["z"] = exact.z.tolist()
    _emit(report, args)


def cmd_heuristic(args) -> None:
    net = _network(args)
    spec = _region_spec(args)
    fam, sols = heuristic_families(net, spec, args.version, max_time=args.max_time,
                                   max_tries=args.max_tries, seed=args.seed,
                                   max_iterations=args.max_iterations)
    if args.format == "json":
        text = families_to_json(fam)
    else:
        rows = {
            f"region_{i}": {
                "probability": s.probability,
                "iterations": s.iterations,
                "pathsets": [list(p) for p in s.pathsets],
                "cutsets": [list(c) for c in s.cutsets],
            }
            for i, s in enumerate(sols)
        }
        text = report_to_text(rows)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_generate(args) -> None:
    net = _network(args)
    text = format_network(net)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _add_graph_flags(p, reliability=True):
    p.add_argument("--graph", help="graph file, or 'antel' for the bundled network")
    p.add_argument("--generator", help="grid:K, grid:K:triangular or pa:<graph>:<extra>:<per_node>")
    p.add_argument("--terminals", help="comma-separated terminal node ids")
    if reliability:
        p.add_argument("--re", type=float, help="set every edge reliability to this value")
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "text"), default=_env("FORMAT", "json"))


def _add_region_flags(p):
    p.add_argument("--regions", help="region spec file (JSON or text)")
    p.add_argument("--thresholds", help="comma-separated distance thresholds")
    p.add_argument("--fines", help="comma-separated Phi value per region")


def _add_heuristic_flags(p):
    p.add_argument("--max-time", type=float, default=40.0, help="seconds per region")
    p.add_argument("--max-tries", type=int, default=5)
    p.add_argument("--max-iterations", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopperf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", aliases=["run"], help="Monte Carlo estimate of E[Phi]")
    _add_graph_flags(est)
    _add_region_flags(est)
    _add_heuristic_flags(est)
    est.add_argument("--sets", help="families JSON file, or 'table2' with --graph antel")
    est.add_argument("--heuristic", metavar="VERSION", help="build families with this version")
    est.add_argument("--method", choices=("crude", "conditioned", "both"), default="both")
    est.add_argument("--mode", choices=("auto", "table", "sequential"),
                     default=_env("MODE", "auto"))
    est.add_argument("--samples", type=int, default=_env("SAMPLES", 100_000, int))
    est.add_argument("--workers", type=int, default=_env("WORKERS", 1, int))
    est.add_argument("--with-oracle", action="store_true", help="also enumerate exactly")
    est.set_defaults(func=cmd_estimate)

    ora = sub.add_parser("oracle", help="exact values by enumeration (small graphs)")
    _add_graph_flags(ora)
    _add_region_flags(ora)
    ora.add_argument("--sets", help="families JSON file, or 'table2' with --graph antel")
    ora.add_argument("--cap", type=int, default=ENUMERATION_CAP)
    ora.set_defaults(func=cmd_oracle, heuristic=None)

    heu = sub.add_parser("heuristic", help="search pathsets and cutsets for every region")
    _add_graph_flags(heu)
    _add_region_flags(heu)
    _add_heuristic_flags(heu)
    heu.add_argument("--version", default="PCCP", help="P/C sequence for interior regions")
    heu.set_defaults(func=cmd_heuristic)

    gen = sub.add_parser("generate", help="write a generated graph in the text format")
    _add_graph_flags(gen)
    gen.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ParseError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (RuntimeError, ArithmeticError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
