import json
import random
from dataclasses import replace

import pytest

from severi import (
    DomainError,
    EnumerationContext,
    are_isomorphic,
    canonical_form,
    canonical_key,
    distinguished_f_vertex,
    height,
    is_small,
    validate_profile,
)
from severi.landscape import enumerate_small_profiles
from severi.profiles import FVertex, PVertex, TopologicalProfile, WeightedEdge, profile_from_dict, profile_to_dict

from conftest import M, make_profile


def test_context_rejects_bad_input():
    with pytest.raises(DomainError):
        EnumerationContext(4, 1, (2, 1))
    with pytest.raises(DomainError):
        EnumerationContext(4, 4, (1, 1, 1, 1))
    with pytest.raises(DomainError):
        EnumerationContext(3, 0, (3, 0))
    assert EnumerationContext(4, 3, (4,)).n == 1


def test_validate_single_edge_profile(ctx41, d4_single_edge):
    assert validate_profile(d4_single_edge, ctx41).ok


def test_validate_genus_bound(ctx41, d4_single_edge):
    bad = replace(d4_single_edge, p_vertices=(replace(d4_single_edge.p_vertices[0], genus=2),))
    rep = validate_profile(bad, ctx41)
    assert "C3" in rep.tags()


def test_validate_weight_mismatch(ctx41, d4_single_edge):
    bad = replace(d4_single_edge, edges=(replace(d4_single_edge.edges[0], mu=2),))
    rep = validate_profile(bad, ctx41)
    c2 = [d for t, d in rep.violations if t == "C2"]
    assert len(c2) == 2


def test_validate_collects_connectivity_and_legs(ctx41):
    prof = make_profile(M, [(1, 0), (2, 0)], [(1, 2, (1, 2)), (2, 2, ())], [(0, 0, 1), (1, 1, 2)])
    tags = validate_profile(prof, ctx41).tags()
    assert {"D1", "legs"} <= tags


def test_height(d4_single_edge, d4_three_fibers):
    assert height(d4_single_edge) == 1
    assert height(d4_three_fibers) == 1
    flat = make_profile((1,), [(1, 0)], [(1, 1, (1,))], [(0, 0, 1)])
    assert height(flat) == 0
    two = make_profile((1, 1), [(1, 0), (1, 0)], [(1, 2, (1,)), (1, 1, (2,))], [(0, 0, 1), (1, 1, 1)])
    assert height(two) == 1


def test_all_enumerated_are_small(ctx41):
    profs = enumerate_small_profiles(ctx41)
    assert len(profs) == 7
    assert all(is_small(p, ctx41) for p in profs)


def test_not_small():
    ctx = EnumerationContext(1, 0, (1,))
    flat = make_profile((1,), [(1, 0)], [(1, 1, (1,))], [(0, 0, 1)])
    assert not is_small(flat, ctx)
    ctx2 = EnumerationContext(2, 0, (1, 1))
    leg_on_p = TopologicalProfile(
        (1, 1),
        (PVertex("v", 1, 0, (2,)),),
        (FVertex("k", 1, 2, 0, (1,)),),
        (WeightedEdge("a", "v", "k", 1),),
    )
    assert not is_small(leg_on_p, ctx2)


def test_distinguished(d4_single_edge, d4_three_fibers):
    assert distinguished_f_vertex(d4_single_edge) == "F0"
    k = distinguished_f_vertex(d4_three_fibers)
    assert d4_three_fibers.m[d4_three_fibers.f(k).legs[0] - 1] == 2
    flat = make_profile((1,), [(1, 0)], [(1, 1, (1,))], [(0, 0, 1)])
    with pytest.raises(DomainError):
        distinguished_f_vertex(flat)


def relabel(profile: TopologicalProfile, rng: random.Random, shuffle_legs: bool = True) -> TopologicalProfile:
    """Random renaming of ids, random vertex/edge order, and a random swap of equal-multiplicity legs."""
    pids = {v.id: f"P{rng.random():.12f}" for v in profile.p_vertices}
    fids = {v.id: f"Q{rng.random():.12f}" for v in profile.f_vertices}
    legs = list(range(1, profile.n + 1))
    perm = {i: i for i in legs}
    m = profile.m
    if shuffle_legs:
        by_mult = {}
        for i in legs:
            by_mult.setdefault(m[i - 1], []).append(i)
        for group in by_mult.values():
            shuffled = group[:]
            rng.shuffle(shuffled)
            perm.update(zip(group, shuffled))
    ps = [PVertex(pids[v.id], v.deg, v.genus, tuple(perm[i] for i in v.legs)) for v in profile.p_vertices]
    fs = [FVertex(fids[v.id], v.e, v.df, v.genus, tuple(perm[i] for i in v.legs)) for v in profile.f_vertices]
    es = [WeightedEdge(f"E{rng.random():.12f}", pids[e.p], fids[e.f], e.mu) for e in profile.edges]
    for seq in (ps, fs, es):
        rng.shuffle(seq)
    return TopologicalProfile(m, tuple(ps), tuple(fs), tuple(es))


def test_canonical_key_invariance():
    rng = random.Random(0)
    pool = []
    for ctx in (EnumerationContext(4, 1, M), EnumerationContext(5, 2, (2, 1, 1, 1)),
                EnumerationContext(6, 3, (1, 1, 2, 2))):
        pool += enumerate_small_profiles(ctx)
    for _ in range(1000):
        p = rng.choice(pool)
        q = relabel(p, rng)
        assert canonical_key(q) == canonical_key(p)
        assert canonical_form(q) == canonical_form(p)


def test_labeled_key_sees_leg_labels():
    ctx = EnumerationContext(4, 1, M)
    rng = random.Random(1)
    for p in enumerate_small_profiles(ctx, labeled_legs=True):
        q = relabel(p, rng, shuffle_legs=False)
        assert canonical_key(q, labeled_legs=True) == canonical_key(p, labeled_legs=True)
    assert len(enumerate_small_profiles(ctx, labeled_legs=True)) == 9


def test_canonical_key_distinguishes(d4_single_edge, d4_split_edge):
    assert canonical_key(d4_single_edge) != canonical_key(d4_split_edge)
    assert canonical_key(d4_split_edge) == canonical_key(d4_split_edge)
    assert not are_isomorphic(d4_single_edge, d4_split_edge)


def test_d4_profiles_pairwise_distinct(ctx41):
    profs = enumerate_small_profiles(ctx41)
    for i, a in enumerate(profs):
        for b in profs[i + 1:]:
            assert not are_isomorphic(a, b)


def test_one_weight_changed_not_isomorphic():
    a = make_profile((1, 1, 1, 1), [(2, 0), (2, 0)], [(4, 5, (1, 2, 3, 4))], [(0, 0, 1), (0, 0, 1), (1, 0, 2)])
    b = make_profile((1, 1, 1, 1), [(2, 0), (2, 0)], [(4, 5, (1, 2, 3, 4))], [(0, 0, 2), (1, 0, 1), (1, 0, 1)])
    assert are_isomorphic(a, b)
    c = make_profile((1, 1, 1, 1), [(2, 0), (2, 0)], [(4, 5, (1, 2, 3, 4))], [(0, 0, 1), (0, 0, 1), (1, 0, 1)])
    assert not are_isomorphic(a, c)


def test_json_round_trip(ctx41, d4_three_fibers):
    data = profile_to_dict(d4_three_fibers, ctx41)
    text = json.dumps(data)
    back = profile_from_dict(json.loads(text))
    assert back == d4_three_fibers
    assert list(data) == ["d", "g", "m", "p_vertices", "f_vertices", "edges"]
