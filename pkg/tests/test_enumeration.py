"""Enumeration against a brute-force oracle.

The oracle builds every bipartite multigraph with a bounded number of
vertices and total edge weight, every leg placement, every genus
distribution and both possible defects per F-vertex, keeps what
``is_small`` accepts and deduplicates with networkx isomorphism.
"""

from collections import Counter
from itertools import combinations_with_replacement, product

import networkx as nx
import pytest
from networkx.algorithms.isomorphism import categorical_edge_match, categorical_node_match

from severi import DomainError, EnumerationContext, is_small, validate_profile
from severi.landscape import enumerate_small_profiles
from severi.profiles import FVertex, PVertex, TopologicalProfile, WeightedEdge, binom2
from severi.verify import compositions


def _connected(np_, nf, edges):
    g = nx.Graph()
    g.add_nodes_from(range(np_ + nf))
    g.add_edges_from((i, np_ + j) for i, j, _ in edges)
    return nx.is_connected(g)


def _genus_splits(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for x in range(min(total, caps[0]) + 1):
        for rest in _genus_splits(total - x, caps[1:]):
            yield (x,) + rest


def brute_force(ctx: EnumerationContext):
    d, g, m = ctx.d, ctx.g, ctx.m
    n = len(m)
    found = []
    for np_ in range(1, d + 1):
        for nf in range(1, n + 1):
            slots = [(i, j, mu) for i in range(np_) for j in range(nf) for mu in range(1, d + 1)]
            for size in range(max(np_, nf), d + 1):
                for edges in combinations_with_replacement(slots, size):
                    if sum(mu for *_, mu in edges) > d:
                        continue
                    if not _connected(np_, nf, edges):
                        continue
                    deg = [sum(mu for i, _, mu in edges if i == v) for v in range(np_)]
                    e = [sum(mu for _, j, mu in edges if j == f) for f in range(nf)]
                    if min(deg) == 0 or min(e) == 0:
                        continue
                    # sum of genera forced by the genus formula; F-genera range over {0, 1}
                    gsum = g + np_ + nf - len(edges) - 1
                    if gsum < 0:
                        continue
                    caps = [binom2(x - 1) for x in deg] + [1] * nf
                    for genera in _genus_splits(gsum, caps):
                        for defects in product((0, 1), repeat=nf):
                            # everything except leg placement must already validate
                            bare = _assemble(m, deg, e, genera, defects, (), edges, np_)
                            if validate_profile(bare, ctx).tags() - {"legs"}:
                                continue
                            for place in product(range(np_ + nf), repeat=n):
                                prof = _assemble(m, deg, e, genera, defects, place, edges, np_)
                                if is_small(prof, ctx):
                                    found.append(prof)
    return _dedupe(found)


def _assemble(m, deg, e, genera, defects, place, edges, np_):
    legs = [[] for _ in range(len(deg) + len(e))]
    for leg, where in enumerate(place, start=1):
        legs[where].append(leg)
    ps = tuple(PVertex(f"p{i}", deg[i], genera[i], tuple(legs[i])) for i in range(np_))
    fs = tuple(
        FVertex(f"f{j}", e[j], e[j] + defects[j], genera[np_ + j], tuple(legs[np_ + j]))
        for j in range(len(e))
    )
    es = tuple(WeightedEdge(f"e{k}", f"p{i}", f"f{j}", mu) for k, (i, j, mu) in enumerate(edges))
    return TopologicalProfile(m, ps, fs, es)


def _to_nx(prof: TopologicalProfile) -> nx.Graph:
    g = nx.Graph()
    m = prof.m
    for v in prof.p_vertices:
        g.add_node(v.id, label=("P", v.deg, v.genus, tuple(sorted(m[i - 1] for i in v.legs))))
    for v in prof.f_vertices:
        g.add_node(v.id, label=("F", v.e, v.df, v.genus, tuple(sorted(m[i - 1] for i in v.legs))))
    weights = {}
    for ed in prof.edges:
        weights.setdefault((ed.p, ed.f), []).append(ed.mu)
    for (a, b), ws in weights.items():
        g.add_edge(a, b, w=tuple(sorted(ws)))
    return g


def _dedupe(profiles):
    reps = []
    nm = categorical_node_match("label", None)
    em = categorical_edge_match("w", None)
    for p in profiles:
        gp = _to_nx(p)
        if not any(nx.is_isomorphic(gp, gq, node_match=nm, edge_match=em) for gq in reps):
            reps.append(gp)
    return reps


SMALL = [
    EnumerationContext(d, g, m)
    for d in (2, 3, 4)
    for g in range(binom2(d - 1) + 1)
    for m in sorted(set(tuple(sorted(c, reverse=True)) for c in compositions(d)))
]


@pytest.mark.parametrize("ctx", SMALL, ids=lambda c: f"d{c.d}g{c.g}m{''.join(map(str, c.m))}")
def test_matches_brute_force(ctx):
    ours = enumerate_small_profiles(ctx)
    assert len(ours) == len(brute_force(ctx))


def test_known_counts():
    assert len(enumerate_small_profiles(EnumerationContext(4, 1, (2, 1, 1)))) == 7
    assert len(enumerate_small_profiles(EnumerationContext(3, 0, (3,)))) == 2


def test_unique_profile_d2():
    (p,) = enumerate_small_profiles(EnumerationContext(2, 0, (1, 1)))
    assert [(v.deg, v.genus) for v in p.p_vertices] == [(1, 0)]
    assert len(p.f_vertices) == 1 and sorted(p.f_vertices[0].legs) == [1, 2]
    assert [e.mu for e in p.edges] == [1]


def test_d3_m3_shapes():
    shapes = sorted(
        (sorted(v.deg for v in p.p_vertices), sorted(e.mu for e in p.edges))
        for p in enumerate_small_profiles(EnumerationContext(3, 0, (3,)))
    )
    assert shapes == [([1, 1], [1, 1]), ([2], [2])]


def test_order_of_m_is_irrelevant_to_count():
    a = enumerate_small_profiles(EnumerationContext(5, 2, (2, 1, 2)))
    b = enumerate_small_profiles(EnumerationContext(5, 2, (2, 2, 1)))
    assert len(a) == len(b)


def test_deterministic():
    ctx = EnumerationContext(5, 1, (2, 1, 1, 1))
    assert enumerate_small_profiles(ctx) == enumerate_small_profiles(ctx)


def test_degree_one_rejected():
    with pytest.raises(DomainError):
        enumerate_small_profiles(EnumerationContext(1, 0, (1,)))


def test_leg_multiset_counter():
    # each leg of the context appears exactly once in every enumerated profile
    ctx = EnumerationContext(5, 1, (2, 2, 1))
    for p in enumerate_small_profiles(ctx):
        legs = Counter(i for v in p.f_vertices for i in v.legs)
        assert sorted(legs) == [1, 2, 3] and set(legs.values()) == {1}
