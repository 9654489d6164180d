"""Integer partitions and the merge graphs on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .graphs import components_agree
from .profiles import DomainError, ValidationReport, binom2


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(x < 1 for x in parts):
            raise DomainError(f"bad partition {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts))

    def merges(self):
        """Yield ``(x, y, merged)`` for every way to replace two parts by their sum."""
        seen = set()
        ps = self.parts
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                x, y = ps[i], ps[j]
                if (x, y) in seen:
                    continue
                seen.add((x, y))
                rest = ps[:i] + ps[i + 1:j] + ps[j + 1:]
                yield x, y, Partition(rest + (x + y,))


@lru_cache(maxsize=None)
def _all_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for x in range(min(remaining, largest), 0, -1):
            prefix.append(x)
            rec(remaining - x, x, prefix)
            prefix.pop()

    rec(n, n, [])
    return tuple(sorted(out))


def enumerate_partitions(n: int, len_min: int = 1, len_max: int | None = None) -> list[Partition]:
    """Partitions of ``n`` with length in ``[len_min, len_max]``, lexicographically ascending."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if len_max is None:
        len_max = n
    return [Partition(p) for p in _all_partitions(n) if len_min <= len(p) <= len_max]


@dataclass(frozen=True)
class PartitionGraph:
    """Merge graph on partitions.

    Each edge is stored as ``(p, p')`` with ``p`` the longer partition (the
    one containing the two merged parts); adjacency itself is unoriented.
    """

    mode: str
    nodes: tuple[Partition, ...]
    edges: frozenset = frozenset()
    flags: tuple[str, ...] = field(default=())

    def undirected_edges(self) -> set[frozenset]:
        return {frozenset(e) for e in self.edges}

    def has_edge(self, a: Partition, b: Partition) -> bool:
        return frozenset((a, b)) in self.undirected_edges()


def _merge_graph(mode, nodes, admissible, flags=()) -> PartitionGraph:
    node_set = set(nodes)
    edges = set()
    for p in nodes:
        for x, y, q in p.merges():
            if q in node_set and admissible(p, x, y):
                edges.add((p, q))
    return PartitionGraph(mode, tuple(nodes), frozenset(edges), tuple(flags))


def graph_geq(n: int, k: int) -> PartitionGraph:
    """Partitions of length at least ``k``; merge allowed iff ``min(x, y) + k <= length(p)``."""
    nodes = enumerate_partitions(n, max(k, 1), n)
    return _merge_graph(f"geq({k})", nodes, lambda p, x, y: min(x, y) + k <= p.length)


def graph_leq(n: int, k: int) -> PartitionGraph:
    """Partitions of length at most ``k`` with every merge staying inside as an edge."""
    flags = []
    if n < 3:
        flags.append(f"n={n} < 3")
    if not k < n:
        flags.append(f"k={k} >= n={n}")
    nodes = enumerate_partitions(n, 1, k)
    return _merge_graph(f"leq({k})", nodes, lambda p, x, y: True, flags)


def p_edge_condition(d: int, g: int, p: Partition, x: int, y: int) -> bool:
    return min(x, y) <= binom2(d - 2) - g + p.length - 1


def graph_P(d: int, g: int) -> PartitionGraph:
    """Partitions of ``d - 1`` describing single-vertex-pair profiles of genus ``g``."""
    if d < 2 or not 0 <= g <= binom2(d - 1):
        raise DomainError(f"need d >= 2 and 0 <= g <= C(d-1,2), got d={d}, g={g}")
    lo = g + 1 - binom2(d - 2)
    nodes = enumerate_partitions(d - 1, lo, g + 1)
    return _merge_graph(f"P({d},{g})", nodes, lambda p, x, y: p_edge_condition(d, g, p, x, y))


def is_connected(graph: PartitionGraph) -> bool:
    """BFS connectivity, cross-checked against a union-find pass."""
    if not graph.nodes:
        raise DomainError(f"empty partition graph {graph.mode}")
    by_bfs, by_uf = components_agree(list(graph.nodes), graph.edges)
    if by_bfs != by_uf:
        raise RuntimeError(f"BFS and union-find disagree on {graph.mode}")
    return by_bfs


def verify_partition_lemmas(n_max: int) -> ValidationReport:
    """Connectivity of every ``geq`` graph (``-n <= k <= n``) and ``leq`` graph (``1 <= k < n``)."""
    rep = ValidationReport()
    for n in range(1, n_max + 1):
        for k in range(-n, n + 1):
            gr = graph_geq(n, k)
            if gr.nodes and not is_connected(gr):
                rep.add("geq", f"graph_geq({n},{k}) disconnected")
    for n in range(3, n_max + 1):
        for k in range(1, n):
            if not is_connected(graph_leq(n, k)):
                rep.add("leq", f"graph_leq({n},{k}) disconnected")
    return rep


def partition_graph_to_dot(graph: PartitionGraph, non_edges=()) -> str:
    """DOT text; ``non_edges`` (rejected merges) are drawn dashed."""
    lines = [f'graph "{graph.mode}" {{']
    for p in graph.nodes:
        lines.append(f'  "{p}";')
    for a, b in sorted(graph.edges):
        lines.append(f'  "{a}" -- "{b}";')
    for a, b in non_edges:
        lines.append(f'  "{a}" -- "{b}" [style=dashed, label="not an edge"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def partition_graph_to_dict(graph: PartitionGraph) -> dict:
    return {
        "mode": graph.mode,
        "nodes": [list(p.parts) for p in graph.nodes],
        "edges": [[list(a.parts), list(b.parts)] for a, b in sorted(graph.edges)],
        "flags": list(graph.flags),
    }
