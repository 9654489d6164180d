"""Topological profiles: data types, constraint validation, height and smallness."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable


class DomainError(ValueError):
    """Raised when an input lies outside the domain of an operation."""


def binom2(a: int) -> int:
    """C(a, 2), with the convention C(a, 2) = 0 for a < 2."""
    return a * (a - 1) // 2 if a >= 2 else 0


@dataclass(frozen=True)
class EnumerationContext:
    d: int
    g: int
    m: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.d < 1:
            raise DomainError(f"degree must be positive, got d={self.d}")
        if not self.m or any(x < 1 for x in self.m):
            raise DomainError(f"multiplicities must be positive, got m={self.m}")
        if sum(self.m) != self.d:
            raise DomainError(f"multiplicities {self.m} sum to {sum(self.m)}, not d={self.d}")
        if not 0 <= self.g <= binom2(self.d - 1):
            raise DomainError(f"genus g={self.g} outside [0, {binom2(self.d - 1)}] for d={self.d}")

    @property
    def n(self) -> int:
        return len(self.m)

    def as_dict(self) -> dict:
        return {"d": self.d, "g": self.g, "m": list(self.m)}


@dataclass(frozen=True)
class PVertex:
    id: str
    deg: int
    genus: int = 0
    # legs on P-vertices are legal in general profiles, never in small ones
    legs: tuple[int, ...] = ()


@dataclass(frozen=True)
class FVertex:
    id: str
    e: int
    df: int
    genus: int = 0
    legs: tuple[int, ...] = ()

    @property
    def distinguished(self) -> bool:
        return self.df == self.e + 1


@dataclass(frozen=True)
class WeightedEdge:
    id: str
    p: str
    f: str
    mu: int


@dataclass(frozen=True)
class TopologicalProfile:
    """A bipartite multigraph between P-vertices and F-vertices.

    ``m`` holds the multiplicities of the legs; leg ``i`` (1-based) carries
    ``m[i - 1]``.  Legs are attached to vertices through their ``legs`` tuples.
    """

    m: tuple[int, ...]
    p_vertices: tuple[PVertex, ...]
    f_vertices: tuple[FVertex, ...]
    edges: tuple[WeightedEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "p_vertices", tuple(self.p_vertices))
        object.__setattr__(self, "f_vertices", tuple(self.f_vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def n(self) -> int:
        return len(self.m)

    def p(self, vid: str) -> PVertex:
        for v in self.p_vertices:
            if v.id == vid:
                return v
        raise DomainError(f"no P-vertex {vid!r}")

    def f(self, vid: str) -> FVertex:
        for v in self.f_vertices:
            if v.id == vid:
                return v
        raise DomainError(f"no F-vertex {vid!r}")

    def edge(self, eid: str) -> WeightedEdge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise DomainError(f"no edge {eid!r}")

    def edges_between(self, p: str, f: str) -> list[WeightedEdge]:
        return [e for e in self.edges if e.p == p and e.f == f]

    def incident(self, vid: str) -> list[WeightedEdge]:
        return [e for e in self.edges if e.p == vid or e.f == vid]

    @property
    def num_vertices(self) -> int:
        return len(self.p_vertices) + len(self.f_vertices)

    def genus_sum(self) -> int:
        return sum(v.genus for v in self.p_vertices) + sum(v.genus for v in self.f_vertices)

    def arithmetic_genus(self) -> int:
        """Left-hand side of the topological requirement."""
        return self.genus_sum() - self.num_vertices + len(self.edges) + 1


@dataclass
class ValidationReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, tag: str, detail: str) -> None:
        self.violations.append((tag, detail))

    def tags(self) -> set[str]:
        return {t for t, _ in self.violations}

    def extend(self, other: "ValidationReport") -> None:
        self.violations.extend(other.violations)

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": [{"tag": t, "detail": s} for t, s in self.violations]}


def _connected(vertex_ids: list[str], edges: Iterable[tuple[str, str]]) -> bool:
    if not vertex_ids:
        return True
    adj = defaultdict(set)
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {vertex_ids[0]}
    stack = [vertex_ids[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(set(vertex_ids))


def validate_profile(profile: TopologicalProfile, ctx: EnumerationContext) -> ValidationReport:
    """Check structure, connectivity and (C1)-(C4); collect every violation.

    Tags: ``structure``, ``context``, ``legs``, ``D1``, ``C1``, ``C2``, ``C3``, ``C4``.
    """
    rep = ValidationReport()
    p_ids = [v.id for v in profile.p_vertices]
    f_ids = [v.id for v in profile.f_vertices]
    all_ids = p_ids + f_ids
    if len(set(all_ids)) != len(all_ids):
        rep.add("structure", "duplicate vertex ids")
    edge_ids = [e.id for e in profile.edges]
    if len(set(edge_ids)) != len(edge_ids):
        rep.add("structure", "duplicate edge ids")
    p_set, f_set = set(p_ids), set(f_ids)
    good_edges = []
    for e in profile.edges:
        if e.p not in p_set or e.f not in f_set:
            rep.add("structure", f"edge {e.id} has dangling endpoint ({e.p!r}, {e.f!r})")
            continue
        if e.mu < 1:
            rep.add("structure", f"edge {e.id} has non-positive weight {e.mu}")
        good_edges.append(e)
    for v in profile.p_vertices:
        if v.deg < 1:
            rep.add("structure", f"P-vertex {v.id} has non-positive degree {v.deg}")
        if v.genus < 0:
            rep.add("structure", f"P-vertex {v.id} has negative genus {v.genus}")
    for v in profile.f_vertices:
        if v.e < 0 or v.df < 0:
            rep.add("structure", f"F-vertex {v.id} has negative degree data (e={v.e}, df={v.df})")
        if v.genus < 0:
            rep.add("structure", f"F-vertex {v.id} has negative genus {v.genus}")

    if tuple(profile.m) != tuple(ctx.m):
        rep.add("context", f"profile multiplicities {profile.m} differ from context {ctx.m}")

    seen_legs: dict[int, int] = defaultdict(int)
    for v in (*profile.p_vertices, *profile.f_vertices):
        for leg in v.legs:
            seen_legs[leg] += 1
    for leg, count in sorted(seen_legs.items()):
        if not 1 <= leg <= profile.n:
            rep.add("legs", f"leg index {leg} outside 1..{profile.n}")
        elif count > 1:
            rep.add("legs", f"leg {leg} assigned {count} times")
    for leg in range(1, profile.n + 1):
        if leg not in seen_legs:
            rep.add("legs", f"leg {leg} unassigned")

    if not _connected(all_ids, ((e.p, e.f) for e in good_edges)):
        rep.add("D1", "underlying multigraph is disconnected")

    sum_dp = sum(v.deg for v in profile.p_vertices)
    sum_e = sum(v.e for v in profile.f_vertices)
    sum_df = sum(v.df for v in profile.f_vertices)
    if sum_dp != sum_e:
        rep.add("C1", f"sum of P-degrees {sum_dp} != sum of e_F {sum_e}")
    if sum_df != ctx.d:
        rep.add("C1", f"sum of d_F {sum_df} != d={ctx.d}")

    weight = defaultdict(int)
    for e in good_edges:
        weight[e.p] += e.mu
        weight[e.f] += e.mu
    for v in profile.p_vertices:
        if weight[v.id] != v.deg:
            rep.add("C2", f"P-vertex {v.id}: incident weights sum to {weight[v.id]}, degree is {v.deg}")
    for v in profile.f_vertices:
        if weight[v.id] != v.e:
            rep.add("C2", f"F-vertex {v.id}: incident weights sum to {weight[v.id]}, e_F is {v.e}")

    for v in profile.p_vertices:
        if v.genus > binom2(v.deg - 1):
            rep.add("C3", f"P-vertex {v.id}: genus {v.genus} > C({v.deg - 1},2) = {binom2(v.deg - 1)}")

    lhs = profile.arithmetic_genus()
    if lhs != ctx.g:
        rep.add("C4", f"sum g(v) - |V| + |E| + 1 = {lhs} != g={ctx.g}")
    return rep


def height(profile: TopologicalProfile) -> int:
    return sum(v.df - v.e for v in profile.f_vertices)


def is_small(profile: TopologicalProfile, ctx: EnumerationContext) -> bool:
    """Membership in the small landscape, including multiplicity compatibility.

    Besides height one, genus-zero F-side and legs living exactly on the
    F-vertices, every non-distinguished F-vertex must carry one leg of
    multiplicity ``e = df`` joined by a single edge of that weight, and the
    legs at the distinguished vertex must add up to its ``df``.
    """
    if not validate_profile(profile, ctx).ok:
        return False
    if height(profile) != 1:
        return False
    if any(v.legs for v in profile.p_vertices):
        return False
    kappas = [v for v in profile.f_vertices if v.distinguished]
    if len(kappas) != 1:
        return False
    for v in profile.f_vertices:
        if v.genus != 0 or not v.legs:
            return False
        if v.distinguished:
            if sum(profile.m[i - 1] for i in v.legs) != v.df:
                return False
            continue
        if v.df != v.e or len(v.legs) != 1:
            return False
        mult = profile.m[v.legs[0] - 1]
        inc = profile.incident(v.id)
        if v.e != mult or len(inc) != 1 or inc[0].mu != mult:
            return False
    return True


def distinguished_f_vertex(profile: TopologicalProfile) -> str:
    """Id of the unique F-vertex with ``df = e + 1`` when all others have ``df = e``."""
    kappas = [v for v in profile.f_vertices if v.df == v.e + 1]
    others_flat = all(v.df == v.e for v in profile.f_vertices if v.df != v.e + 1)
    if len(kappas) != 1 or not others_flat:
        raise DomainError(
            f"profile has {len(kappas)} candidate distinguished F-vertices "
            f"(height {height(profile)}); not a small profile"
        )
    return kappas[0].id


def profile_to_dict(profile: TopologicalProfile, ctx: EnumerationContext | None = None) -> dict:
    """Plain-dict form with the fixed field order of the JSON schema."""
    d = ctx.d if ctx is not None else sum(v.df for v in profile.f_vertices)
    g = ctx.g if ctx is not None else profile.arithmetic_genus()
    pv = []
    for v in profile.p_vertices:
        item = {"id": v.id, "deg": v.deg, "genus": v.genus}
        if v.legs:
            item["legs"] = list(v.legs)
        pv.append(item)
    return {
        "d": d,
        "g": g,
        "m": list(profile.m),
        "p_vertices": pv,
        "f_vertices": [
            {"id": v.id, "e": v.e, "df": v.df, "genus": v.genus,
             "distinguished": v.distinguished, "legs": list(v.legs)}
            for v in profile.f_vertices
        ],
        "edges": [{"id": e.id, "p": e.p, "f": e.f, "mu": e.mu} for e in profile.edges],
    }


def profile_from_dict(data: dict) -> TopologicalProfile:
    return TopologicalProfile(
        m=tuple(data["m"]),
        p_vertices=tuple(
            PVertex(v["id"], v["deg"], v.get("genus", 0), tuple(v.get("legs", ())))
            for v in data["p_vertices"]
        ),
        f_vertices=tuple(
            FVertex(v["id"], v["e"], v["df"], v.get("genus", 0), tuple(v.get("legs", ())))
            for v in data["f_vertices"]
        ),
        edges=tuple(WeightedEdge(e["id"], e["p"], e["f"], e["mu"]) for e in data["edges"]),
    )


def context_of(data: dict) -> EnumerationContext:
    return EnumerationContext(data["d"], data["g"], tuple(data["m"]))
