"""Small profiles, the three elementary operations, and the landscape graph."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations, product

from .canon import CanonicalKey, canonical_key, canonicalize
from .graphs import bfs_tree
from .identities import uc_condition
from .partitions import Partition, graph_P
from .profiles import (
    DomainError,
    EnumerationContext,
    FVertex,
    PVertex,
    TopologicalProfile,
    ValidationReport,
    WeightedEdge,
    binom2,
    distinguished_f_vertex,
    profile_to_dict,
)

UPPER_CONNECTED = "upper-connected"
UPPER_DISCONNECTED = "upper-disconnected"
LOWER_DISCONNECTED = "lower-disconnected"


class AdmissibilityError(DomainError):
    """An operation was requested where its admissibility inequality fails."""


class ClosureError(RuntimeError):
    """A rewrite produced a profile outside the enumerated landscape."""


# -- enumeration ---------------------------------------------------------


@lru_cache(maxsize=None)
def _int_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []

    def rec(rem, largest, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for x in range(min(rem, largest), 0, -1):
            rec(rem - x, x, prefix + [x])

    rec(n, n, [])
    return tuple(out)


def _set_partitions(items: list):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [(first,)] + part
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]


def _compositions(total: int, parts: int):
    """Positive compositions of every s <= total into ``parts`` parts, with their sum."""
    if parts == 0:
        yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _genus_distributions(total: int, caps: list[int]):
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for g0 in range(max(0, total - rest_cap), min(caps[0], total) + 1):
        for tail in _genus_distributions(total - g0, caps[1:]):
            yield (g0,) + tail


def _build_small(m, kappa_legs, blocks, lambdas, leaf_blocks, genera) -> TopologicalProfile:
    pvs, edges = [], []
    eid = 0
    f_ids = {}
    fvs = [FVertex("k", sum(m[i - 1] for i in kappa_legs) - 1, sum(m[i - 1] for i in kappa_legs),
                   0, tuple(kappa_legs))]
    for block in blocks:
        for leg in block:
            f_ids[leg] = f"f{leg}"
            fvs.append(FVertex(f"f{leg}", m[leg - 1], m[leg - 1], 0, (leg,)))
    for i, (lam, leaves, gen) in enumerate(zip(lambdas, leaf_blocks, genera)):
        vid = f"p{i}"
        deg = sum(lam) + sum(m[leg - 1] for leg in leaves)
        pvs.append(PVertex(vid, deg, gen))
        for w in lam:
            edges.append(WeightedEdge(f"e{eid}", vid, "k", w))
            eid += 1
        for leg in leaves:
            edges.append(WeightedEdge(f"e{eid}", vid, f_ids[leg], m[leg - 1]))
            eid += 1
    return TopologicalProfile(tuple(m), tuple(pvs), tuple(fvs), tuple(edges))


def _raw_small_profiles(ctx: EnumerationContext):
    """Every small profile, possibly with repeats up to isomorphism.

    In a small profile each non-distinguished F-vertex is a leaf hanging off
    one P-vertex, and every P-vertex has at least one edge to the
    distinguished vertex; the search runs over exactly that shape.
    """
    m, n = ctx.m, ctx.n
    legs = list(range(1, n + 1))
    for size in range(1, n + 1):
        for kappa_legs in combinations(legs, size):
            e_kappa = sum(m[i - 1] for i in kappa_legs) - 1
            if e_kappa < 1:
                continue
            rest = [i for i in legs if i not in kappa_legs]
            for blocks in _set_partitions(rest):
                b = len(blocks)
                for leafy in _compositions(e_kappa, b):
                    left = e_kappa - sum(leafy)
                    if left < 0:
                        continue
                    for extra in _int_partitions(left):
                        weights = list(leafy) + list(extra)
                        leaf_blocks = list(blocks) + [()] * len(extra)
                        for lambdas in product(*(_int_partitions(w) for w in weights)):
                            r = sum(len(lam) for lam in lambdas)
                            total_genus = ctx.g + len(weights) - r
                            if total_genus < 0:
                                continue
                            degs = [sum(lam) + sum(m[i - 1] for i in lb)
                                    for lam, lb in zip(lambdas, leaf_blocks)]
                            caps = [binom2(dv - 1) for dv in degs]
                            for genera in _genus_distributions(total_genus, caps):
                                yield _build_small(m, kappa_legs, blocks, lambdas, leaf_blocks, genera)


def _enumerate_keyed(ctx: EnumerationContext, labeled_legs: bool) -> dict:
    if ctx.d < 2:
        raise DomainError("contexts with d < 2 have no small landscape")
    found = {}
    for prof in _raw_small_profiles(ctx):
        key, form = canonicalize(prof, labeled_legs)
        found.setdefault(key, form)
    return {k: found[k] for k in sorted(found)}


def enumerate_small_profiles(ctx: EnumerationContext, labeled_legs: bool = False) -> list[TopologicalProfile]:
    """One canonical representative per isomorphism class, sorted by canonical key."""
    return list(_enumerate_keyed(ctx, labeled_legs).values())


# -- elementary operations -------------------------------------------------


@dataclass(frozen=True)
class Move:
    """One application of an elementary operation: its type and witnesses."""

    op: str
    witness: tuple[str, ...]

    def __str__(self):
        return f"{self.op}({', '.join(self.witness)})"


def _kappa(profile: TopologicalProfile) -> str:
    return distinguished_f_vertex(profile)


def upper_connected(profile: TopologicalProfile, v: str, e1: str, e2: str) -> TopologicalProfile:
    """Merge two parallel edges between ``v`` and the distinguished vertex; genus of ``v`` goes up by one."""
    kappa = _kappa(profile)
    if e1 == e2:
        raise DomainError("upper connected operation needs two distinct edges")
    a, b = profile.edge(e1), profile.edge(e2)
    for e in (a, b):
        if e.p != v or e.f != kappa:
            raise DomainError(f"edge {e.id} does not join {v} and the distinguished vertex {kappa}")
    pv = profile.p(v)
    if not uc_condition(pv.deg, pv.genus, a.mu, b.mu):
        raise AdmissibilityError(
            f"min({a.mu},{b.mu}) = {min(a.mu, b.mu)} > C({pv.deg - 1},2) - {pv.genus}"
            f" = {binom2(pv.deg - 1) - pv.genus}"
        )
    pvs = tuple(replace(x, genus=x.genus + 1) if x.id == v else x for x in profile.p_vertices)
    edges = []
    for e in profile.edges:
        if e.id == e1:
            edges.append(replace(e, mu=a.mu + b.mu))
        elif e.id != e2:
            edges.append(e)
    return TopologicalProfile(profile.m, pvs, profile.f_vertices, tuple(edges))


def upper_disconnected(profile: TopologicalProfile, v1: str, v2: str, e1: str, e2: str) -> TopologicalProfile:
    """Merge P-vertices ``v1`` and ``v2`` along one distinguished edge of each."""
    kappa = _kappa(profile)
    if v1 == v2:
        raise DomainError("upper disconnected operation needs two distinct P-vertices")
    a, b = profile.edge(e1), profile.edge(e2)
    if a.p != v1 or a.f != kappa or b.p != v2 or b.f != kappa:
        raise DomainError("edges must join v1, respectively v2, to the distinguished vertex")
    p1, p2 = profile.p(v1), profile.p(v2)
    merged = PVertex(v1, p1.deg + p2.deg, p1.genus + p2.genus, tuple(sorted(p1.legs + p2.legs)))
    pvs = tuple(merged if x.id == v1 else x for x in profile.p_vertices if x.id != v2)
    edges = []
    for e in profile.edges:
        if e.id == e1:
            edges.append(replace(e, mu=a.mu + b.mu))
        elif e.id == e2:
            continue
        elif e.p == v2:
            edges.append(replace(e, p=v1))
        else:
            edges.append(e)
    return TopologicalProfile(profile.m, pvs, profile.f_vertices, tuple(edges))


def lower_disconnected(profile: TopologicalProfile, vp: str, vf: str, e: str, e_tilde: str) -> TopologicalProfile:
    """Crimp the fiber vertex ``vf`` into the distinguished vertex, merging ``e`` and ``e_tilde``.

    The merged edge has weight ``mu(e) + mu(e_tilde)``.
    """
    kappa = _kappa(profile)
    if vf == kappa:
        raise DomainError("vf must differ from the distinguished vertex")
    a = profile.edge(e)
    if a.p != vp or a.f != vf:
        raise DomainError(f"edge {e} does not join {vp} and {vf}")
    try:
        b = profile.edge(e_tilde)
    except DomainError:
        raise DomainError(f"{vp} has no edge {e_tilde!r} to the distinguished vertex") from None
    if b.p != vp or b.f != kappa:
        raise DomainError(f"edge {e_tilde} does not join {vp} and the distinguished vertex {kappa}")
    k, f = profile.f(kappa), profile.f(vf)
    merged = FVertex(kappa, k.e + f.e, k.df + f.df, k.genus + f.genus, tuple(sorted(k.legs + f.legs)))
    fvs = tuple(merged if x.id == kappa else x for x in profile.f_vertices if x.id != vf)
    edges = []
    for x in profile.edges:
        if x.id == e_tilde:
            edges.append(replace(x, mu=a.mu + b.mu))
        elif x.id == e:
            continue
        elif x.f == vf:
            edges.append(replace(x, f=kappa))
        else:
            edges.append(x)
    return TopologicalProfile(profile.m, profile.p_vertices, fvs, tuple(edges))


def admissible_moves(profile: TopologicalProfile):
    """Yield ``(move, result)`` for every admissible witness tuple."""
    kappa = _kappa(profile)
    to_kappa = defaultdict(list)
    for e in profile.edges:
        if e.f == kappa:
            to_kappa[e.p].append(e)
    pids = [v.id for v in profile.p_vertices]
    for v in profile.p_vertices:
        for a, b in combinations(to_kappa[v.id], 2):
            if uc_condition(v.deg, v.genus, a.mu, b.mu):
                yield Move(UPPER_CONNECTED, (v.id, a.id, b.id)), upper_connected(profile, v.id, a.id, b.id)
    for v1, v2 in combinations(pids, 2):
        for a in to_kappa[v1]:
            for b in to_kappa[v2]:
                yield (Move(UPPER_DISCONNECTED, (v1, v2, a.id, b.id)),
                       upper_disconnected(profile, v1, v2, a.id, b.id))
    for f in profile.f_vertices:
        if f.id == kappa:
            continue
        for e in profile.edges:
            if e.f != f.id:
                continue
            for et in to_kappa[e.p]:
                yield (Move(LOWER_DISCONNECTED, (e.p, f.id, e.id, et.id)),
                       lower_disconnected(profile, e.p, f.id, e.id, et.id))


@dataclass
class Neighbor:
    key: CanonicalKey
    profile: TopologicalProfile
    moves: dict = field(default_factory=dict)  # op -> first witnessing Move


def neighbors(profile: TopologicalProfile, ctx: EnumerationContext | None = None,
              labeled_legs: bool = False) -> list[Neighbor]:
    """Results of all admissible operations, deduplicated by canonical key."""
    out: dict[str, Neighbor] = {}
    for move, result in admissible_moves(profile):
        key, form = canonicalize(result, labeled_legs)
        nb = out.get(key)
        if nb is None:
            nb = out[key] = Neighbor(key, form)
        nb.moves.setdefault(move.op, move)
    return [out[k] for k in sorted(out)]


# -- the landscape graph -------------------------------------------------------


@dataclass(frozen=True)
class LandscapeEdge:
    a: CanonicalKey
    b: CanonicalKey
    moves: tuple[Move, ...]  # witnessed from a towards b

    @property
    def op(self) -> str:
        return self.moves[0].op


@dataclass
class LandscapeGraph:
    context: EnumerationContext
    nodes: dict  # CanonicalKey -> TopologicalProfile, in key order
    edges: dict  # frozenset({a, b}) -> LandscapeEdge
    labeled_legs: bool = False

    def adjacency(self) -> dict:
        adj = {k: set() for k in self.nodes}
        for pair in self.edges:
            a, b = tuple(pair)
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def has_edge(self, a: CanonicalKey, b: CanonicalKey) -> bool:
        return frozenset((a, b)) in self.edges

    def key_list(self) -> list[CanonicalKey]:
        return list(self.nodes)


def build_landscape(ctx: EnumerationContext, labeled_legs: bool = False) -> LandscapeGraph:
    """Nodes are the small profiles; an edge joins a profile to each of its rewrites.

    Raises :class:`ClosureError` if a rewrite leaves the enumerated set.
    """
    nodes = _enumerate_keyed(ctx, labeled_legs)
    edges: dict = {}
    for key, prof in nodes.items():
        for nb in neighbors(prof, ctx, labeled_legs):
            if nb.key not in nodes:
                raise ClosureError(f"rewrite of {key} by {list(nb.moves)} left the landscape of {ctx}")
            if nb.key == key:
                raise ClosureError(f"operation {list(nb.moves)} fixed the profile {key}")
            pair = frozenset((key, nb.key))
            if pair not in edges:
                edges[pair] = LandscapeEdge(key, nb.key, tuple(nb.moves[op] for op in sorted(nb.moves)))
    return LandscapeGraph(ctx, nodes, edges, labeled_legs)


@dataclass
class Certificate:
    """Breadth-first spanning tree over the landscape."""

    root: CanonicalKey
    parent: dict  # child key -> (parent key, operation name)

    def check(self, graph: LandscapeGraph) -> bool:
        if self.root not in graph.nodes:
            return False
        for child, (par, _op) in self.parent.items():
            if child not in graph.nodes or not graph.has_edge(child, par):
                return False
        return set(self.parent) | {self.root} == set(graph.nodes)

    def as_dict(self) -> dict:
        return {"root": self.root,
                "tree": [{"child": c, "parent": p, "op": op} for c, (p, op) in sorted(self.parent.items())]}


def landscape_connected(ctx_or_graph, labeled_legs: bool = False) -> tuple[bool, Certificate]:
    graph = ctx_or_graph if isinstance(ctx_or_graph, LandscapeGraph) else build_landscape(ctx_or_graph, labeled_legs)
    keys = graph.key_list()
    if not keys:
        raise DomainError("empty landscape")
    tree = bfs_tree(keys, graph.adjacency())
    parent = {}
    for child, par in tree.items():
        if par is not None:
            parent[child] = (par, graph.edges[frozenset((child, par))].op)
    return len(tree) == len(keys), Certificate(keys[0], parent)


@dataclass
class ReductionPath:
    start: CanonicalKey
    steps: list  # (resulting key, Move)

    def __len__(self):
        return len(self.steps)


def reduce_to_core(profile: TopologicalProfile, ctx: EnumerationContext | None = None,
                   labeled_legs: bool = False) -> ReductionPath:
    """Greedy disconnected operations down to one P-vertex and one F-vertex."""
    path = ReductionPath(canonical_key(profile, labeled_legs), [])
    cur = profile
    while len(cur.p_vertices) > 1 or len(cur.f_vertices) > 1:
        kappa = _kappa(cur)
        if len(cur.p_vertices) > 1:
            v1, v2 = cur.p_vertices[0].id, cur.p_vertices[1].id
            a = next(e for e in cur.edges if e.p == v1 and e.f == kappa)
            b = next(e for e in cur.edges if e.p == v2 and e.f == kappa)
            move = Move(UPPER_DISCONNECTED, (v1, v2, a.id, b.id))
            cur = upper_disconnected(cur, v1, v2, a.id, b.id)
        else:
            vf = next(f.id for f in cur.f_vertices if f.id != kappa)
            e = next(x for x in cur.edges if x.f == vf)
            et = next(x for x in cur.edges if x.p == e.p and x.f == kappa)
            move = Move(LOWER_DISCONNECTED, (e.p, vf, e.id, et.id))
            cur = lower_disconnected(cur, e.p, vf, e.id, et.id)
        path.steps.append((canonical_key(cur, labeled_legs), move))
    return path


def core_partition(profile: TopologicalProfile) -> Partition:
    return Partition(tuple(e.mu for e in profile.edges))


def is_core(profile: TopologicalProfile) -> bool:
    return len(profile.p_vertices) == 1 and len(profile.f_vertices) == 1


def sublandscape_partition_isomorphism(ctx_or_graph, labeled_legs: bool = False) -> ValidationReport:
    """Compare the single-vertex-pair part of the landscape with the partition graph.

    The map sends a profile to the multiset of its edge weights; the genus of
    its P-vertex must equal ``g - length + 1``.
    """
    graph = ctx_or_graph if isinstance(ctx_or_graph, LandscapeGraph) else build_landscape(ctx_or_graph, labeled_legs)
    ctx = graph.context
    rep = ValidationReport()
    core = {k: p for k, p in graph.nodes.items() if is_core(p)}
    image = {}
    for k, p in core.items():
        part = core_partition(p)
        if p.p_vertices[0].genus != ctx.g - part.length + 1:
            rep.add("genus", f"{part}: P-genus {p.p_vertices[0].genus} != g - length + 1")
        if part in image.values():
            rep.add("injective", f"partition {part} hit twice")
        image[k] = part
    target = graph_P(ctx.d, ctx.g)
    if set(image.values()) != set(target.nodes):
        rep.add("nodes", f"landscape core {sorted(map(str, image.values()))} != "
                         f"partition graph {sorted(map(str, target.nodes))}")
    sub_edges = {frozenset((image[a], image[b])) for pair in graph.edges
                 for a, b in [tuple(pair)] if a in core and b in core}
    if sub_edges != target.undirected_edges():
        rep.add("edges", f"edge sets differ: landscape-only "
                         f"{sorted(sorted(map(str, e)) for e in sub_edges - target.undirected_edges())}, "
                         f"partition-only {sorted(sorted(map(str, e)) for e in target.undirected_edges() - sub_edges)}")
    return rep


# -- export --------------------------------------------------------------------


def landscape_to_dict(graph: LandscapeGraph) -> dict:
    return {
        "context": graph.context.as_dict(),
        "nodes": [dict(key=k, **profile_to_dict(p, graph.context)) for k, p in graph.nodes.items()],
        "edges": [
            {"a": e.a, "b": e.b, "op": e.op, "ops": [str(mv) for mv in e.moves]}
            for e in sorted(graph.edges.values(), key=lambda e: (e.a, e.b))
        ],
    }


def _profile_dot_label(p: TopologicalProfile) -> str:
    kappa = distinguished_f_vertex(p)
    ps = " ".join(f"({v.genus})" for v in p.p_vertices)
    fs = []
    for v in p.f_vertices:
        legs = ",".join(str(p.m[i - 1]) for i in v.legs)
        fs.append(f"[{legs}]{'κ' if v.id == kappa else ''}")
    es = " ".join(f"{e.p}-{e.f}:{e.mu}" for e in p.edges)
    return f"P {ps}\\nF {' '.join(fs)}\\n{es}"


def landscape_to_dot(graph: LandscapeGraph) -> str:
    """One node per profile; P-genera in circles, F-legs in boxes, edge weights listed."""
    names = {k: f"n{i}" for i, k in enumerate(graph.nodes)}
    c = graph.context
    lines = [f'graph "landscape d={c.d} g={c.g} m={",".join(map(str, c.m))}" {{', "  node [shape=box];"]
    for k, p in graph.nodes.items():
        lines.append(f'  {names[k]} [label="{_profile_dot_label(p)}"];')
    for e in sorted(graph.edges.values(), key=lambda e: (names[e.a], names[e.b])):
        lines.append(f'  {names[e.a]} -- {names[e.b]} [label="{e.op}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def profile_to_dot(p: TopologicalProfile, name: str = "profile") -> str:
    """Circled genera for P-vertices, boxed legs for F-vertices."""
    kappa = distinguished_f_vertex(p)
    lines = [f'graph "{name}" {{']
    for v in p.p_vertices:
        lines.append(f'  "{v.id}" [shape=circle, label="{v.genus}"];')
    for v in p.f_vertices:
        legs = ",".join(str(p.m[i - 1]) for i in v.legs)
        tag = " κ" if v.id == kappa else ""
        lines.append(f'  "{v.id}" [shape=box, label="{legs}{tag}"];')
    for e in p.edges:
        lines.append(f'  "{e.p}" -- "{e.f}" [label="{e.mu}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
