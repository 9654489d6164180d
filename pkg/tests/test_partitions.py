import pytest

from severi import DomainError
from severi.identities import uc_condition
from severi.partitions import (
    Partition,
    PartitionGraph,
    enumerate_partitions,
    graph_geq,
    graph_leq,
    graph_P,
    is_connected,
    partition_graph_to_dot,
    verify_partition_lemmas,
)
from severi.profiles import binom2


def P(*parts):
    return Partition(parts)


def edge_set(graph):
    return {frozenset(e) for e in graph.edges}


def test_enumerate_examples():
    assert set(enumerate_partitions(4, 1, 4)) == {P(4), P(3, 1), P(2, 2), P(2, 1, 1), P(1, 1, 1, 1)}
    assert enumerate_partitions(2, 1, 1) == [P(2)]
    assert enumerate_partitions(2, 2, 2) == [P(1, 1)]
    assert enumerate_partitions(1, 1, 1) == [P(1)]


def test_partition_counts():
    # p(n) for n = 1..12
    expected = [1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]
    assert [len(enumerate_partitions(n)) for n in range(1, 13)] == expected


def test_merges_stay_partitions():
    for n in range(1, 10):
        for p in enumerate_partitions(n):
            for x, y, q in p.merges():
                assert q.n == n and q.length == p.length - 1
                assert x + y in q.parts


def test_geq_examples():
    g = graph_geq(4, 2)
    assert set(g.nodes) == {P(1, 1, 1, 1), P(2, 1, 1), P(2, 2), P(3, 1)}
    assert is_connected(g)
    assert graph_geq(3, 3).nodes == (P(1, 1, 1),)


@pytest.mark.parametrize("n", range(1, 7))
def test_geq_nonpositive_k_edges(n):
    for k in range(-n, 1):
        g = graph_geq(n, k)
        expected = {frozenset((p, q)) for p in g.nodes for x, y, q in p.merges() if min(x, y) <= p.length - k}
        assert edge_set(g) == expected
        assert is_connected(g)


def test_leq_examples():
    g = graph_leq(4, 2)
    assert set(g.nodes) == {P(4), P(3, 1), P(2, 2)}
    assert edge_set(g) == {frozenset((P(3, 1), P(4))), frozenset((P(2, 2), P(4)))}
    assert graph_leq(5, 1).nodes == (P(5),)
    assert is_connected(graph_leq(6, 5))
    assert graph_leq(2, 1).flags


def test_partition_graph_5_3():
    g = graph_P(5, 3)
    assert set(g.nodes) == {P(1, 1, 1, 1), P(2, 1, 1), P(2, 2), P(3, 1), P(4)}
    assert edge_set(g) == {
        frozenset((P(1, 1, 1, 1), P(2, 1, 1))),
        frozenset((P(2, 1, 1), P(3, 1))),
        frozenset((P(2, 1, 1), P(2, 2))),
        frozenset((P(3, 1), P(4))),
    }
    assert not g.has_edge(P(2, 2), P(4))
    dot = partition_graph_to_dot(g, non_edges=[(P(2, 2), P(4))])
    assert 'style=dashed' in dot and '"2+2" -- "4"' in dot


def test_P_small_cases():
    assert graph_P(3, 0).nodes == (P(2),)
    assert graph_P(3, 1).nodes == (P(1, 1),)
    g = graph_P(4, 1)
    assert set(g.nodes) == {P(3), P(2, 1)} and len(g.edges) == 1
    with pytest.raises(DomainError):
        graph_P(4, 4)
    with pytest.raises(DomainError):
        graph_P(1, 0)


def test_P_edge_rule_matches_uc():
    for d in range(2, 11):
        for g in range(binom2(d - 1) + 1):
            gr = graph_P(d, g)
            nodes = set(gr.nodes)
            for p in gr.nodes:
                for x, y, q in p.merges():
                    if q not in nodes:
                        continue
                    want = uc_condition(d - 1, g - p.length + 1, x, y)
                    assert gr.has_edge(p, q) == want, (d, g, str(p), x, y)


def test_is_connected_small():
    assert is_connected(PartitionGraph("one", (P(2),)))
    assert not is_connected(PartitionGraph("two", (P(2), P(1, 1))))
    with pytest.raises(DomainError):
        is_connected(PartitionGraph("empty", ()))


@pytest.mark.parametrize("n_max", [1, 3, 12])
def test_lemmas(n_max):
    assert verify_partition_lemmas(n_max).ok
