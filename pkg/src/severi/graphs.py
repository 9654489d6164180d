"""Connectivity helpers shared by the partition graphs and the landscape."""

from __future__ import annotations

from collections import deque
from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets over arbitrary hashable elements."""

    def __init__(self, elements: Iterable[Hashable] = ()):
        self.parent = {}
        self.rank = {}
        for x in elements:
            self.add(x)

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = 0

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def count(self) -> int:
        return len({self.find(x) for x in self.parent})


def bfs_tree(nodes: list, adjacency: dict) -> dict:
    """Breadth-first search from ``nodes[0]``; maps each reached node to its parent.

    Neighbours are visited in sorted order so the tree is deterministic.
    """
    root = nodes[0]
    parent = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(adjacency.get(v, ())):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def components_agree(nodes: list, edges: Iterable[tuple]) -> tuple[bool, bool]:
    """Connectivity by BFS and by union-find; returns both verdicts."""
    edges = list(edges)
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    by_bfs = len(bfs_tree(nodes, adj)) == len(nodes)
    uf = UnionFind(nodes)
    for a, b in edges:
        uf.union(a, b)
    return by_bfs, uf.count() == 1
