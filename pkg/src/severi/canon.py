"""Canonical forms of topological profiles.

Vertices are first split into colour classes by iterated neighbourhood
refinement.  One shore is then brute-forced over all orderings compatible
with the colour classes (twins are permuted only once); the other shore is
sorted by its adjacency rows relative to that ordering.  The lexicographic
minimum over all tried orderings is the canonical form.

By default two legs of equal multiplicity are interchangeable, so a
vertex's legs enter the key only through their multiplicities.  Pass
``labeled_legs=True`` to keep leg indices fixed.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from itertools import product

from .profiles import FVertex, PVertex, TopologicalProfile, WeightedEdge

CanonicalKey = str


def _distinct_permutations(items: list, classes: list) -> list[tuple]:
    """Orderings of ``items`` up to permuting members of the same class."""
    out = []
    remaining = defaultdict(list)
    for it, c in zip(items, classes):
        remaining[c].append(it)
    order = sorted(remaining)

    def rec(prefix):
        if len(prefix) == len(items):
            out.append(tuple(prefix))
            return
        for c in order:
            if remaining[c]:
                it = remaining[c].pop()
                prefix.append(it)
                rec(prefix)
                prefix.pop()
                remaining[c].append(it)

    rec([])
    return out


class _Canonizer:
    def __init__(self, profile: TopologicalProfile, labeled_legs: bool):
        self.profile = profile
        m = profile.m
        np_ = len(profile.p_vertices)
        self.np = np_
        self.nf = len(profile.f_vertices)
        index = {v.id: i for i, v in enumerate(profile.p_vertices)}
        index.update({v.id: np_ + j for j, v in enumerate(profile.f_vertices)})

        def legs_key(legs):
            if labeled_legs:
                return tuple(sorted(legs))
            return tuple(sorted(m[i - 1] for i in legs))

        self.labels = [(0, v.deg, v.genus, 0, legs_key(v.legs)) for v in profile.p_vertices]
        self.labels += [(1, v.e, v.df, v.genus, legs_key(v.legs)) for v in profile.f_vertices]

        w = defaultdict(list)
        for e in profile.edges:
            w[(index[e.p], index[e.f])].append(e.mu)
        self.weights = {k: tuple(sorted(v)) for k, v in w.items()}
        self.nbrs = defaultdict(dict)
        for (a, b), ws in self.weights.items():
            self.nbrs[a][b] = ws
            self.nbrs[b][a] = ws
        self.colors = self._refine()

    def _refine(self) -> list[int]:
        n = self.np + self.nf
        sigs = list(self.labels)
        colors = _rank(sigs)
        while True:
            sigs = [
                (colors[v], tuple(sorted((colors[u], ws) for u, ws in self.nbrs[v].items())))
                for v in range(n)
            ]
            new = _rank(sigs)
            if len(set(new)) == len(set(colors)):
                return new
            colors = new

    def _row(self, v: int, others: tuple[int, ...]) -> tuple:
        nb = self.nbrs[v]
        return tuple(nb.get(u, ()) for u in others)

    def _orders(self, side: range) -> list[tuple[int, ...]]:
        cells = defaultdict(list)
        for v in side:
            cells[self.colors[v]].append(v)
        other = range(self.np, self.np + self.nf) if side.start == 0 else range(self.np)
        per_cell = []
        for c in sorted(cells):
            members = cells[c]
            twin = [self._row(v, tuple(other)) for v in members]
            ids = _rank(twin)
            per_cell.append(_distinct_permutations(members, ids))
        return [sum(choice, ()) for choice in product(*per_cell)]

    def _cost(self, side: range) -> int:
        sizes = defaultdict(int)
        for v in side:
            sizes[self.colors[v]] += 1
        return math.prod(math.factorial(s) for s in sizes.values())

    def run(self):
        p_side = range(0, self.np)
        f_side = range(self.np, self.np + self.nf)
        if self._cost(f_side) < self._cost(p_side):
            a_side, b_side, tag = f_side, p_side, "F"
        else:
            a_side, b_side, tag = p_side, f_side, "P"
        best = None
        for order in self._orders(a_side):
            rows = sorted(
                ((self.colors[b], self.labels[b], self._row(b, order)), b) for b in b_side
            )
            enc = tuple(r for r, _ in rows)
            if best is None or enc < best[0]:
                best = (enc, order, tuple(b for _, b in rows))
        enc, a_order, b_order = best
        key_obj = [
            list(self.profile.m),
            tag,
            [self.labels[a] for a in a_order],
            enc,
        ]
        key = json.dumps(key_obj, separators=(",", ":"))
        if tag == "P":
            return key, a_order, b_order
        return key, b_order, a_order


def _rank(values: list) -> list[int]:
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def _canonize(profile: TopologicalProfile, labeled_legs: bool):
    return _Canonizer(profile, labeled_legs).run()


def canonical_key(profile: TopologicalProfile, labeled_legs: bool = False) -> CanonicalKey:
    """Isomorphism-class invariant that separates non-isomorphic profiles."""
    return _canonize(profile, labeled_legs)[0]


def are_isomorphic(a: TopologicalProfile, b: TopologicalProfile, labeled_legs: bool = False) -> bool:
    return canonical_key(a, labeled_legs) == canonical_key(b, labeled_legs)


def canonical_form(profile: TopologicalProfile, labeled_legs: bool = False) -> TopologicalProfile:
    """Relabel ids (and, for interchangeable legs, leg indices) canonically.

    Two profiles are isomorphic iff their canonical forms are equal.
    """
    return canonicalize(profile, labeled_legs)[1]


def canonicalize(profile: TopologicalProfile, labeled_legs: bool = False) -> tuple[CanonicalKey, TopologicalProfile]:
    """Canonical key and canonical form in one pass."""
    key, p_order, f_order = _canonize(profile, labeled_legs)
    np_ = len(profile.p_vertices)
    old_p = profile.p_vertices
    old_f = profile.f_vertices
    p_new = {old_p[i].id: f"p{k}" for k, i in enumerate(p_order)}
    f_new = {old_f[j - np_].id: f"f{k}" for k, j in enumerate(f_order)}

    verts = [old_p[i] for i in p_order] + [old_f[j - np_] for j in f_order]
    if labeled_legs:
        leg_map = {i: i for i in range(1, profile.n + 1)}
    else:
        pools = defaultdict(list)
        for i in range(profile.n, 0, -1):
            pools[profile.m[i - 1]].append(i)
        leg_map = {}
        for v in verts:
            for leg in sorted(v.legs, key=lambda i: (profile.m[i - 1], i)):
                leg_map[leg] = pools[profile.m[leg - 1]].pop()

    def new_legs(legs):
        return tuple(sorted(leg_map[i] for i in legs))

    pv = tuple(PVertex(p_new[v.id], v.deg, v.genus, new_legs(v.legs)) for v in verts[:len(p_order)])
    fv = tuple(FVertex(f_new[v.id], v.e, v.df, v.genus, new_legs(v.legs)) for v in verts[len(p_order):])
    p_rank = {p_new[v.id]: int(p_new[v.id][1:]) for v in old_p}
    f_rank = {f_new[v.id]: int(f_new[v.id][1:]) for v in old_f}
    raw = sorted(
        ((p_rank[p_new[e.p]], f_rank[f_new[e.f]], e.mu) for e in profile.edges)
    )
    edges = tuple(WeightedEdge(f"e{k}", f"p{a}", f"f{b}", mu) for k, (a, b, mu) in enumerate(raw))
    return key, TopologicalProfile(profile.m, pv, fv, edges)
