"""Verification suites behind ``severi verify``.

Every suite returns a :class:`SuiteReport` with the number of cases checked
and a list of failing case descriptors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import curve
from .canon import canonical_key
from .identities import (
    cycle_rank_sides,
    dimension_report,
    find_multiplicity_one_profile,
    h0_profile_dimension,
    ud_automatic_check,
    uc_condition,
)
from .landscape import (
    UPPER_CONNECTED,
    UPPER_DISCONNECTED,
    ClosureError,
    admissible_moves,
    build_landscape,
    landscape_connected,
    reduce_to_core,
    sublandscape_partition_isomorphism,
)
from .partitions import graph_P, p_edge_condition, verify_partition_lemmas
from .profiles import EnumerationContext, binom2, is_small

SUITES = ("lemmas", "identities", "landscape", "curve")


@dataclass
class SuiteReport:
    suite: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **case) -> None:
        self.failures.append(case)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "cases": self.cases, "failures": self.failures}


def compositions(d: int):
    """All compositions of ``d`` (ordered tuples of positive integers)."""
    for cuts in product((0, 1), repeat=d - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


def all_contexts(dmax: int, dmin: int = 2):
    for d in range(dmin, dmax + 1):
        for g in range(binom2(d - 1) + 1):
            for m in compositions(d):
                yield EnumerationContext(d, g, m)


def suite_lemmas(n_max: int = 12) -> SuiteReport:
    rep = SuiteReport("lemmas")
    res = verify_partition_lemmas(n_max)
    rep.cases += sum(2 * n + 1 for n in range(1, n_max + 1)) + sum(n - 1 for n in range(3, n_max + 1))
    for tag, detail in res.violations:
        rep.fail(check=tag, detail=detail)
    for g in range(binom2(2) + 1):
        rep.cases += 1
        nodes = graph_P(3, g).nodes
        if len(nodes) != 1:
            rep.fail(check="d=3 exclusivity", g=g, nodes=[str(p) for p in nodes])
    for d in range(2, n_max + 2):
        for g in range(binom2(d - 1) + 1):
            for p in graph_P(d, g).nodes:
                for x, y, _ in p.merges():
                    rep.cases += 1
                    uc = uc_condition(d - 1, g - p.length + 1, x, y)
                    if uc != p_edge_condition(d, g, p, x, y):
                        rep.fail(check="edge rule vs UC", d=d, g=g, p=str(p), x=x, y=y)
    return rep


def suite_identities(dmax: int = 7, mu_max: int = 15) -> SuiteReport:
    rep = SuiteReport("identities")
    for total in range(1, mu_max + 1):
        for mu in compositions(total):
            rep.cases += 1
            lhs, rhs = cycle_rank_sides(list(mu))
            if lhs != rhs:
                rep.fail(check="cycle rank", mu=list(mu), lhs=lhs, rhs=rhs)
    for d1, d2 in product(range(1, mu_max + 1), repeat=2):
        for g1, g2 in product(range(binom2(d1 - 1) + 1), range(binom2(d2 - 1) + 1)):
            for mu1, mu2 in product(range(1, d1 + 1), range(1, d2 + 1)):
                rep.cases += 1
                if not ud_automatic_check(d1, g1, d2, g2, mu1, mu2):
                    rep.fail(check="ud automatic", args=[d1, g1, d2, g2, mu1, mu2])
    for d in range(1, dmax + 1):
        for g in range(binom2(d - 1) + 1):
            rep.cases += 1
            dr = dimension_report(d, g, 0)
            if dr.node_count < 0 or dr.vdim != 2 * d + g - 1:
                rep.fail(check="dimension", d=d, g=g)
    for ctx in all_contexts(dmax):
        rep.cases += 1
        try:
            prof = find_multiplicity_one_profile(ctx)
        except ValueError as exc:
            rep.fail(check="multiplicity-one existence", context=ctx.as_dict(), detail=str(exc))
            continue
        if h0_profile_dimension(prof, ctx) != 2 * ctx.d + ctx.g:
            rep.fail(check="h0 = 2d+g", context=ctx.as_dict())
    return rep


def check_rewrites(graph, rep: SuiteReport) -> None:
    """Closure, genus bookkeeping and admissibility invariants for every admissible move."""
    ctx = graph.context
    for key, prof in graph.nodes.items():
        for move, result in admissible_moves(prof):
            rep.cases += 1
            rkey = canonical_key(result, graph.labeled_legs)
            where = {"context": ctx.as_dict(), "move": str(move)}
            if not is_small(result, ctx):
                rep.fail(check="rewrite is small", **where)
            if rkey not in graph.nodes:
                rep.fail(check="closure", **where)
            if rkey == key:
                rep.fail(check="not identity", **where)
            if result.arithmetic_genus() != ctx.g:
                rep.fail(check="C4 after rewrite", **where)
            if move.op == UPPER_DISCONNECTED:
                v1, v2, e1, e2 = move.witness
                p1, p2 = prof.p(v1), prof.p(v2)
                if not ud_automatic_check(p1.deg, p1.genus, p2.deg, p2.genus,
                                          prof.edge(e1).mu, prof.edge(e2).mu):
                    rep.fail(check="ud automatic on edge", **where)
            if move.op == UPPER_CONNECTED:
                v, e1, e2 = move.witness
                if prof.p(v).genus + 1 > binom2(prof.p(v).deg - 1):
                    rep.fail(check="uc genus safety", **where)


def suite_landscape(dmax: int = 7) -> SuiteReport:
    rep = SuiteReport("landscape")
    for ctx in all_contexts(dmax):
        rep.cases += 1
        try:
            graph = build_landscape(ctx)
        except ClosureError as exc:
            rep.fail(check="closure", context=ctx.as_dict(), detail=str(exc))
            continue
        ok, cert = landscape_connected(graph)
        if not ok or not cert.check(graph):
            rep.fail(check="connected", context=ctx.as_dict())
        iso = sublandscape_partition_isomorphism(graph)
        if not iso.ok:
            rep.fail(check="sub-landscape isomorphism", context=ctx.as_dict(),
                     detail=[d for _, d in iso.violations])
        check_rewrites(graph, rep)
        for key, prof in graph.nodes.items():
            path = reduce_to_core(prof, ctx)
            prev = key
            for nxt, _move in path.steps:
                if not graph.has_edge(prev, nxt):
                    rep.fail(check="reduction path", context=ctx.as_dict(), start=key)
                    break
                prev = nxt
            if len(path) != prof.num_vertices - 2:
                rep.fail(check="reduction length", context=ctx.as_dict(), start=key)
    return rep


def suite_curve(dmax: int = 8, tol: float = 1e-8, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("curve")
    for d in range(3, min(dmax, 10) + 1):
        rep.cases += 1
        r = curve.verify_example(d, tol, seed)
        if not r.ok:
            rep.fail(check="rational curve", d=d, nodes=r.node_count,
                     boundary=len(r.boundary_points), flags=r.flags)
    rng = random.Random(seed)
    for mu1, mu2 in product(range(1, 7), repeat=2):
        rep.cases += 1
        try:
            value = curve.cross_ratio_check(mu1, mu2)
        except ArithmeticError as exc:
            rep.fail(check="cross-ratio", mu=[mu1, mu2], detail=str(exc))
            continue
        z_star = curve.extra_critical_point(mu1, mu2)
        for _ in range(5):
            a, b, c, e = (complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4))
            if abs(a * e - b * c) < 1e-3:
                continue
            f = curve.mobius(a, b, c, e)
            moved = curve.cross_ratio(f(None), f(z_star), f(0), f(1))
            if abs(moved - value) > 1e-9:
                rep.fail(check="cross-ratio invariance", mu=[mu1, mu2])
    return rep


def run_suite(name: str, dmax: int = 7, n_max: int = 12, tol: float = 1e-8, seed: int = 0) -> SuiteReport:
    if name == "lemmas":
        return suite_lemmas(n_max)
    if name == "identities":
        return suite_identities(dmax)
    if name == "landscape":
        return suite_landscape(dmax)
    if name == "curve":
        return suite_curve(dmax, tol, seed)
    raise ValueError(f"unknown suite {name!r}")
