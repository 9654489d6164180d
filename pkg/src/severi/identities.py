"""Closed-form arithmetic checks: dimensions, node counts, cycle rank, admissibility."""

from __future__ import annotations

from dataclasses import dataclass

from .profiles import (
    DomainError,
    EnumerationContext,
    TopologicalProfile,
    ValidationReport,
    binom2,
    is_small,
)


@dataclass(frozen=True)
class DimensionReport:
    d: int
    g: int
    k: int
    vdim: int
    tangent_deg: int
    node_count: int


def dimension_report(d: int, g: int, k: int = 0) -> DimensionReport:
    """Expected dimension, degree of the twisted normal sheaf, and number of nodes.

    ``k`` is the number of mobile contact points.
    """
    if d < 1 or k < 0:
        raise DomainError(f"need d >= 1 and k >= 0, got d={d}, k={k}")
    if not 0 <= g <= binom2(d - 1):
        raise DomainError(f"genus {g} outside [0, {binom2(d - 1)}] for d={d}")
    return DimensionReport(
        d=d, g=g, k=k,
        vdim=2 * d + g + k - 1,
        tangent_deg=2 * g - 2 + 2 * d + k,
        node_count=binom2(d - 1) - g,
    )


def cycle_rank_sides(mu: list[int]) -> tuple[int, int]:
    """Both sides of the intersection-count identity for curves of degrees ``mu``."""
    if not mu:
        raise DomainError("empty weight list")
    lhs = 0
    for i in range(len(mu)):
        for j in range(i + 1, len(mu)):
            lhs += mu[i] * mu[j]
    lhs += sum(binom2(x - 1) for x in mu)
    rhs = binom2(sum(mu) - 1) + len(mu) - 1
    return lhs, rhs


def cycle_rank_identity(mu: list[int]) -> ValidationReport:
    rep = ValidationReport()
    lhs, rhs = cycle_rank_sides(mu)
    if lhs != rhs:
        rep.add("cycle-rank", f"mu={list(mu)}: lhs {lhs} != rhs {rhs}")
    return rep


def uc_condition(d_v: int, g_v: int, mu1: int, mu2: int) -> bool:
    """Admissibility of merging two parallel edges at a vertex of degree ``d_v``.

    This is the single implementation used by the upper connected operation.
    """
    return g_v <= binom2(d_v - 1) - min(mu1, mu2)


def ud_automatic_check(d1: int, g1: int, d2: int, g2: int, mu1: int, mu2: int) -> bool:
    """The disconnected analogue of :func:`uc_condition`, expected to always hold."""
    # hot path in exhaustive sweeps, so binom2 is inlined
    if not (d1 >= 1 and d2 >= 1 and 1 <= mu1 <= d1 and 1 <= mu2 <= d2
            and 0 <= g1 <= (d1 - 1) * (d1 - 2) // 2 and 0 <= g2 <= (d2 - 1) * (d2 - 2) // 2):
        raise DomainError(f"precondition violated for {(d1, g1, d2, g2, mu1, mu2)}")
    s = d1 + d2 - 1
    return g1 + g2 - 1 <= s * (s - 1) // 2 - (mu1 if mu1 < mu2 else mu2)


def h0_profile_dimension(profile: TopologicalProfile, ctx: EnumerationContext) -> int:
    """Dimension count for a multiplicity-one profile with a single F-vertex.

    Evaluates ``1 + sum_v (1 + 3 d(v) + 2 g(v) - 2 - g(v)) + d - (d - 1)``.
    This is an arithmetic consistency identity, not a cohomology computation.
    """
    if not is_small(profile, ctx):
        raise DomainError("profile is not small")
    if len(profile.f_vertices) != 1 or any(e.mu != 1 for e in profile.edges):
        raise DomainError("need a single F-vertex and all edge weights equal to 1")
    total = 1
    for v in profile.p_vertices:
        total += 1 + 3 * v.deg + 2 * v.genus - 2 - v.genus
    return total + ctx.d - (ctx.d - 1)


def find_multiplicity_one_profile(ctx: EnumerationContext, labeled_legs: bool = False) -> TopologicalProfile:
    """First small profile (canonical order) with unit weights and one F-vertex."""
    from .landscape import enumerate_small_profiles

    for prof in enumerate_small_profiles(ctx, labeled_legs):
        if len(prof.f_vertices) == 1 and all(e.mu == 1 for e in prof.edges):
            return prof
    raise DomainError(f"no multiplicity-one small profile for {ctx}")
