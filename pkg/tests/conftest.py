import sys

import pytest

from severi.profiles import EnumerationContext, FVertex, PVertex, TopologicalProfile, WeightedEdge


def make_profile(m, ps, fs, es):
    """ps: [(deg, genus)], fs: [(e, df, legs)], es: [(p index, f index, mu)]."""
    return TopologicalProfile(
        tuple(m),
        tuple(PVertex(f"v{i}", deg, g) for i, (deg, g) in enumerate(ps)),
        tuple(FVertex(f"F{j}", e, df, 0, tuple(legs)) for j, (e, df, legs) in enumerate(fs)),
        tuple(WeightedEdge(f"a{k}", f"v{i}", f"F{j}", mu) for k, (i, j, mu) in enumerate(es)),
    )


M = (2, 1, 1)


@pytest.fixture
def ctx41():
    return EnumerationContext(4, 1, M)


@pytest.fixture
def d4_single_edge():
    # P(3, g1) with one edge of weight 3 into kappa carrying every leg
    return make_profile(M, [(3, 1)], [(3, 4, (1, 2, 3))], [(0, 0, 3)])


@pytest.fixture
def d4_split_edge():
    # P(3, g0) with edges 1 and 2 into kappa
    return make_profile(M, [(3, 0)], [(3, 4, (1, 2, 3))], [(0, 0, 1), (0, 0, 2)])


@pytest.fixture
def d4_two_p():
    # P(2) with a double edge plus P(1), all weights 1
    return make_profile(M, [(2, 0), (1, 0)], [(3, 4, (1, 2, 3))], [(0, 0, 1), (0, 0, 1), (1, 0, 1)])


@pytest.fixture
def d4_three_fibers():
    # P(3, g1) joined to two leaf fibers (legs of multiplicity 1) and to kappa (leg of multiplicity 2)
    return make_profile(
        M, [(3, 1)],
        [(1, 1, (2,)), (1, 1, (3,)), (1, 2, (1,))],
        [(0, 0, 1), (0, 1, 1), (0, 2, 1)],
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
