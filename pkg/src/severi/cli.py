"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or argument error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import curve
from .landscape import (
    ClosureError,
    build_landscape,
    enumerate_small_profiles,
    landscape_connected,
    landscape_to_dict,
    landscape_to_dot,
    profile_to_dot,
    sublandscape_partition_isomorphism,
)
from .partitions import (
    graph_geq,
    graph_leq,
    graph_P,
    is_connected,
    partition_graph_to_dict,
    partition_graph_to_dot,
)
from .profiles import DomainError, EnumerationContext, profile_to_dict
from .verify import SUITES, all_contexts, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DMAX_LIMIT = 8
NMAX_LIMIT = 14


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    d: int | None = None
    g: int | None = None
    m: tuple | None = None
    dmax: int = 7
    n_max: int = 12
    tol: float = 1e-8
    seed: int = 0
    out: str | None = None
    format: str = "text"

    def context(self) -> EnumerationContext:
        if self.d is None or self.g is None:
            raise UsageError("--d and --g are required")
        m = self.m if self.m is not None else (1,) * self.d
        return EnumerationContext(self.d, self.g, m)


def _parse_m(text: str) -> tuple:
    try:
        m = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--m expects comma-separated integers, got {text!r}")
    if not m or any(x < 1 for x in m):
        raise argparse.ArgumentTypeError("--m entries must be positive")
    return m


def _emit(cfg: CliConfig, payload: str, summary: str | None = None) -> None:
    """Write ``payload`` to --out or stdout; the summary goes where it will not corrupt data."""
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
        if summary:
            print(summary)
        return
    if summary and cfg.format == "text":
        print(summary)
    elif summary:
        print(summary, file=sys.stderr)
    sys.stdout.write(payload)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _plural(n: int, word: str) -> str:
    return f"{n} {word}" if n == 1 else f"{n} {word}s"


# -- subcommands -----------------------------------------------------------------


def cmd_enumerate(cfg: CliConfig) -> int:
    ctx = cfg.context()
    profiles = enumerate_small_profiles(ctx)
    summary = _plural(len(profiles), "profile")
    if cfg.format == "json":
        payload = _json([profile_to_dict(p, ctx) for p in profiles])
    elif cfg.format == "dot":
        payload = "".join(profile_to_dot(p, f"profile {i}") for i, p in enumerate(profiles))
    else:
        lines = []
        for i, p in enumerate(profiles):
            ps = " ".join(f"{v.id}(deg={v.deg},g={v.genus})" for v in p.p_vertices)
            es = " ".join(f"{e.p}-{e.f}:{e.mu}" for e in p.edges)
            lines.append(f"[{i}] {ps} | {es}")
        payload = "".join(line + "\n" for line in lines)
    _emit(cfg, payload, summary)
    return EXIT_OK


def cmd_landscape(cfg: CliConfig) -> int:
    ctx = cfg.context()
    try:
        graph = build_landscape(ctx)
    except ClosureError as exc:
        print(f"closure check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    connected, _ = landscape_connected(graph)
    iso = sublandscape_partition_isomorphism(graph)
    summary = (f"{_plural(len(graph.nodes), 'node')}, {_plural(len(graph.edges), 'edge')}, "
               f"{'connected' if connected else 'disconnected'}")
    if cfg.format == "json":
        data = landscape_to_dict(graph)
        data["connected"] = connected
        data["sublandscape_matches_partition_graph"] = iso.ok
        payload = _json(data)
    elif cfg.format == "dot":
        payload = landscape_to_dot(graph)
    else:
        payload = f"sub-landscape vs P({ctx.d},{ctx.g}): {'match' if iso.ok else 'MISMATCH'}\n"
    _emit(cfg, payload, summary)
    return EXIT_OK


def _sweep_entry(ctx: EnumerationContext) -> dict:
    graph = build_landscape(ctx)
    ok, cert = landscape_connected(graph)
    return {"context": ctx.as_dict(), "nodes": len(graph.nodes), "edges": len(graph.edges),
            "connected": ok and cert.check(graph), "certificate": cert.as_dict()}


def cmd_connectivity(cfg: CliConfig) -> int:
    if cfg.d is not None:
        contexts = [cfg.context()]
    else:
        _check_dmax(cfg.dmax)
        contexts = list(all_contexts(cfg.dmax))
    try:
        entries = [_sweep_entry(ctx) for ctx in contexts]
    except ClosureError as exc:
        print(f"closure check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    bad = [e for e in entries if not e["connected"]]
    summary = f"{len(entries) - len(bad)}/{len(entries)} landscapes connected"
    if cfg.format == "json":
        payload = _json(entries)
    else:
        payload = "".join(
            f"d={e['context']['d']} g={e['context']['g']} m={','.join(map(str, e['context']['m']))}: "
            f"{e['nodes']} nodes, {e['edges']} edges, {'connected' if e['connected'] else 'DISCONNECTED'}\n"
            for e in entries
        )
    _emit(cfg, payload, summary)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_partitions(cfg: CliConfig, mode: str, n: int | None, k: int | None) -> int:
    if mode == "P":
        if cfg.d is None or cfg.g is None:
            raise UsageError("--mode P needs --d and --g")
        graph = graph_P(cfg.d, cfg.g)
        node_set = set(graph.nodes)
        # merges inside the node set that the edge rule rejects
        rejected = [(p, q) for p in graph.nodes for _x, _y, q in p.merges()
                    if q in node_set and (p, q) not in graph.edges]
    else:
        if n is None or k is None:
            raise UsageError(f"--mode {mode} needs --n and --k")
        if not 1 <= n <= NMAX_LIMIT:
            raise UsageError(f"--n must be in [1, {NMAX_LIMIT}]")
        graph = graph_geq(n, k) if mode == "geq" else graph_leq(n, k)
        rejected = []
    if not graph.nodes:
        summary = "0 nodes"
    else:
        summary = (f"{_plural(len(graph.nodes), 'node')}, {_plural(len(graph.edges), 'edge')}, "
                   f"{'connected' if is_connected(graph) else 'disconnected'}")
    if cfg.format == "json":
        payload = _json(partition_graph_to_dict(graph))
    elif cfg.format == "dot":
        payload = partition_graph_to_dot(graph, non_edges=rejected)
    else:
        lines = [f"nodes: {' '.join(str(p) for p in graph.nodes)}"]
        lines += [f"{a} -- {b}" for a, b in sorted(graph.edges)]
        lines += [f"flag: {f}" for f in graph.flags]
        payload = "".join(line + "\n" for line in lines)
    _emit(cfg, payload, summary)
    return EXIT_OK


def cmd_curve(cfg: CliConfig) -> int:
    if cfg.d is None:
        raise UsageError("--d is required")
    rep = curve.verify_example(cfg.d, cfg.tol, cfg.seed)
    summary = (f"d={rep.d}: {_plural(rep.node_count, 'node')}, "
               f"{_plural(len(rep.boundary_points), 'boundary point')}, "
               f"margin {rep.immersion_margin:.6g}, {'ok' if rep.ok else 'FAILED'}")
    if cfg.format == "text":
        payload = "".join(f"flag: {f}\n" for f in rep.flags)
    else:
        payload = _json(rep.as_dict())
    _emit(cfg, payload, summary)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _check_dmax(dmax: int) -> None:
    if not 2 <= dmax <= DMAX_LIMIT:
        raise UsageError(f"--dmax must be in [2, {DMAX_LIMIT}]")


def cmd_verify(cfg: CliConfig, suite: str) -> int:
    _check_dmax(cfg.dmax)
    if not 1 <= cfg.n_max <= NMAX_LIMIT:
        raise UsageError(f"--nmax must be in [1, {NMAX_LIMIT}]")
    if not 1e-12 <= cfg.tol <= 1e-6:
        raise UsageError("--tol must be in [1e-12, 1e-6]")
    names = SUITES if suite == "all" else (suite,)
    reports = [run_suite(name, cfg.dmax, cfg.n_max, cfg.tol, cfg.seed) for name in names]
    failed = sum(len(r.failures) for r in reports)
    summary = "; ".join(f"{r.suite}: {r.cases} cases, {len(r.failures)} failures" for r in reports)
    if cfg.format == "text":
        payload = "".join(f"{r.suite} {json.dumps(f)}\n" for r in reports for f in r.failures)
    else:
        payload = _json([r.as_dict() for r in reports])
    _emit(cfg, payload, summary)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="severi",
        description="Enumerate small topological profiles, build their landscape and run the verification suites.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, help="degree")
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--m", type=_parse_m,
                        help="comma-separated tangency multiplicities (default: d ones)")
    common.add_argument("--dmax", type=int, default=7, help=f"largest degree in sweeps (<= {DMAX_LIMIT})")
    common.add_argument("--nmax", type=int, default=12, dest="n_max",
                        help=f"largest n for partition lemmas (<= {NMAX_LIMIT})")
    common.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "dot", "text"),
                        help="output format (default: json for verify and curve, text otherwise)")

    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("enumerate", parents=[common], help="list small profiles of one context")
    sub.add_parser("landscape", parents=[common], help="build the landscape graph of one context")
    sub.add_parser("connectivity", parents=[common],
                   help="connectivity of one context, or of every context with d <= dmax")
    p_part = sub.add_parser("partitions", parents=[common], help="partition merge graphs")
    p_part.add_argument("--mode", choices=("P", "geq", "leq"), default="P")
    p_part.add_argument("--n", type=int)
    p_part.add_argument("--k", type=int)
    p_ver = sub.add_parser("verify", parents=[common], help="run verification suites")
    p_ver.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sub.add_parser("curve", parents=[common], help="node and boundary check of the rational curve")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("json" if args.subcommand in ("verify", "curve") else "text")
    cfg = CliConfig(args.subcommand, args.d, args.g, args.m, args.dmax, args.n_max,
                    args.tol, args.seed, args.out, fmt)
    try:
        if cfg.subcommand == "enumerate":
            return cmd_enumerate(cfg)
        if cfg.subcommand == "landscape":
            return cmd_landscape(cfg)
        if cfg.subcommand == "connectivity":
            return cmd_connectivity(cfg)
        if cfg.subcommand == "partitions":
            return cmd_partitions(cfg, args.mode, args.n, args.k)
        if cfg.subcommand == "verify":
            return cmd_verify(cfg, args.suite)
        return cmd_curve(cfg)
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # anything else counts as a failed check
        print(f"{parser.prog}: internal failure: {exc!r}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
