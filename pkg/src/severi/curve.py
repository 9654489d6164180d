"""Numeric checks on an explicit rational plane curve and on a branched cover of P^1.

The curve is ``[u:w] -> [u^d + u^(d-1) w + u w^(d-1) + w^d : u^d : w^d]``.
Two parameters ``u1 != u2`` (with ``w = 1``) have the same image iff
``u2 = eps * u1`` for a ``d``-th root of unity ``eps != 1`` and
``u1^(d-2) = -(1 + eps + ... + eps^(d-2))``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .profiles import DomainError, binom2


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[complex, complex, complex]

    @classmethod
    def normalized(cls, x: complex, y: complex, z: complex) -> "ProjectivePoint":
        c = (complex(x), complex(y), complex(z))
        i = max(range(3), key=lambda j: abs(c[j]))
        if abs(c[i]) == 0:
            raise DomainError("all homogeneous coordinates vanish")
        return cls(tuple(v / c[i] for v in c))

    def distance(self, other: "ProjectivePoint") -> float:
        """Chordal (Fubini-Study sine) distance; zero iff the points coincide.

        Computed as ``|a ^ b| / (|a| |b|)``, which avoids the cancellation in
        ``sqrt(1 - cos^2)`` for nearby points.
        """
        a = np.array(self.coords)
        b = np.array(other.coords)
        wedge = sum(abs(a[i] * b[j] - a[j] * b[i]) ** 2 for i, j in ((0, 1), (0, 2), (1, 2)))
        return math.sqrt(wedge) / (np.linalg.norm(a) * np.linalg.norm(b))

    def as_list(self) -> list:
        return [[c.real, c.imag] for c in self.coords]


def rational_curve_eval(d: int, u: complex, w: complex) -> ProjectivePoint:
    if u == 0 and w == 0:
        raise DomainError("(u, w) = (0, 0) is not a point of P^1")
    x = u ** d + u ** (d - 1) * w + u * w ** (d - 1) + w ** d
    return ProjectivePoint.normalized(x, u ** d, w ** d)


def affine_image(d: int, u: complex) -> tuple[complex, complex]:
    """Image of ``[u:1]`` in the chart ``Z = 1``."""
    return (u ** d + u ** (d - 1) + u + 1, u ** d)


def affine_derivative(d: int, u: complex) -> tuple[complex, complex]:
    return (d * u ** (d - 1) + (d - 1) * u ** (d - 2) + 1, d * u ** (d - 1))


def node_candidates(d: int) -> list[complex]:
    """All ``u`` with ``u^(d-2) = -(1 + eps + ... + eps^(d-2))`` for a ``d``-th root ``eps != 1``."""
    out = []
    for j in range(1, d):
        eps = cmath.exp(2j * math.pi * j / d)
        rhs = -sum(eps ** i for i in range(d - 1))
        r, theta = abs(rhs), cmath.phase(rhs)
        for k in range(d - 2):
            out.append(r ** (1.0 / (d - 2)) * cmath.exp(1j * (theta + 2 * math.pi * k) / (d - 2)))
    return out


@dataclass
class CurveReport:
    d: int
    node_pairs: list = field(default_factory=list)  # (u1, u2, ProjectivePoint)
    boundary_points: list = field(default_factory=list)
    immersion_margin: float = float("nan")
    flags: list = field(default_factory=list)
    ok: bool = False

    @property
    def node_count(self) -> int:
        return len(self.node_pairs)

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "nodes": [
                {"u1": [u1.real, u1.imag], "u2": [u2.real, u2.imag], "image": pt.as_list()}
                for u1, u2, pt in self.node_pairs
            ],
            "boundary": [pt.as_list() for pt in self.boundary_points],
            "immersion_margin": self.immersion_margin,
            "flags": list(self.flags),
            "ok": self.ok,
        }


def _check_args(d: int, tol: float):
    if not 3 <= d <= 10:
        raise DomainError(f"degree must be in [3, 10], got {d}")
    if not 1e-12 <= tol <= 1e-6:
        raise DomainError(f"tolerance must be in [1e-12, 1e-6], got {tol}")


def find_nodes(d: int, tol: float = 1e-8) -> CurveReport:
    """Group candidate parameters by image (single linkage) and keep the pairs.

    Groups must be separated by more than ``1e3 * tol``; otherwise the report
    is flagged with the offending distance instead of guessing.
    """
    _check_args(d, tol)
    rep = CurveReport(d)
    us = node_candidates(d)
    imgs = np.array([affine_image(d, u) for u in us])
    n = len(us)
    dist = np.linalg.norm(imgs[:, None, :] - imgs[None, :, :], axis=2)

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if dist[i, j] <= tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    members = list(groups.values())
    label = {i: gi for gi, grp in enumerate(members) for i in grp}
    gap = min((dist[i, j] for i in range(n) for j in range(n) if label[i] != label[j]), default=math.inf)
    if gap <= 1e3 * tol:
        rep.flags.append(f"grouping ambiguity: inter-group distance {gap:.3e} <= 1e3*tol")
    def order(grp):
        x, y = imgs[grp[0]]
        return tuple(round(v, 9) for v in (x.real, x.imag, y.real, y.imag))

    for grp in sorted(members, key=order):
        if len(grp) != 2:
            rep.flags.append(f"image group of size {len(grp)}")
            continue
        i, j = grp
        x, y = imgs[i]
        rep.node_pairs.append((us[i], us[j], ProjectivePoint.normalized(x, y, 1.0)))
    return rep


def _z_form(d: int) -> list[float]:
    # coefficients c_i of Z(u, w) = sum c_i u^i w^(d - i)
    return [1.0] + [0.0] * d


def boundary_points(d: int, tol: float, samples: int = 10_000, seed: int = 0) -> list[ProjectivePoint]:
    """Distinct images on the line ``Z = 0``.

    The zeros of the binary form ``Z(u, w)`` are found algebraically: finite
    roots of ``Z(u, 1)`` plus ``[1:0]`` when the degree drops.  A sweep of
    ``samples`` parameters ``u = r e^(i t)`` with ``r`` in ``[1/2, 2]`` and
    ``w = 1`` then adds any further image whose Z-coordinate is below ``tol``.
    """
    coeffs = np.trim_zeros(np.array(_z_form(d)), "b")
    params = [(complex(r), 1 + 0j) for r in P.polyroots(coeffs)] if len(coeffs) > 1 else []
    if len(coeffs) - 1 < d:
        params.append((1 + 0j, 0j))
    rng = np.random.default_rng(seed)
    radii = np.exp(rng.uniform(math.log(0.5), math.log(2.0), samples))
    angles = rng.uniform(0, 2 * math.pi, samples)
    params += [(complex(r * math.cos(t), r * math.sin(t)), 1 + 0j) for r, t in zip(radii, angles)]
    found: list[ProjectivePoint] = []
    for u, w in params:
        pt = rational_curve_eval(d, u, w)
        if abs(pt.coords[2]) < tol and not any(pt.distance(q) < tol for q in found):
            found.append(pt)
    return found


def immersion_margin(d: int, extra: list[complex], samples: int = 1000, seed: int = 0) -> float:
    """Smallest derivative norm of the parametrization over ``extra`` and random unit-circle points.

    The point ``w = 0`` is covered through the chart ``Y = 1``, where the
    derivative at ``w = 0`` is ``(1, 0)``.
    """
    rng = np.random.default_rng(seed)
    us = list(extra) + [cmath.exp(1j * t) for t in rng.uniform(0, 2 * math.pi, samples)]
    margin = min(math.hypot(*(abs(c) for c in affine_derivative(d, u))) for u in us)
    dx, dz = _derivative_at_infinity(d, 0j)
    return min(margin, math.hypot(abs(dx), abs(dz)))


def _derivative_at_infinity(d: int, w: complex) -> tuple[complex, complex]:
    # chart Y = 1: w -> (1 + w + w^(d-1) + w^d, w^d)
    return (1 + (d - 1) * w ** (d - 2) + d * w ** (d - 1), d * w ** (d - 1))


def verify_example(d: int, tol: float = 1e-8, seed: int = 0) -> CurveReport:
    rep = find_nodes(d, tol)
    rep.boundary_points = boundary_points(d, tol, seed=seed)
    preimages = [u for u1, u2, _ in rep.node_pairs for u in (u1, u2)]
    rep.immersion_margin = immersion_margin(d, preimages, seed=seed)
    target = ProjectivePoint.normalized(1, 1, 0)
    boundary_ok = len(rep.boundary_points) == 1 and rep.boundary_points[0].distance(target) < tol
    rep.ok = (
        not rep.flags
        and rep.node_count == binom2(d - 1)
        and boundary_ok
        and rep.immersion_margin > 1e-6
    )
    return rep


# -- cross-ratio of the ramification points --------------------------------------


def cross_ratio(z1, z2, z3, z4) -> complex:
    """``((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3))`` on homogeneous pairs ``(z, w)``.

    Plain complex numbers are read as ``(z, 1)``; ``None`` stands for infinity.
    """
    pts = [_homog(z) for z in (z1, z2, z3, z4)]

    def det(a, b):
        return a[0] * b[1] - a[1] * b[0]

    return (det(pts[0], pts[2]) * det(pts[1], pts[3])) / (det(pts[0], pts[3]) * det(pts[1], pts[2]))


def _homog(z):
    if z is None:
        return (1 + 0j, 0j)
    if isinstance(z, tuple):
        return (complex(z[0]), complex(z[1]))
    return (complex(z), 1 + 0j)


def extra_critical_point(mu1: int, mu2: int) -> complex:
    """The critical point of ``z^mu1 (z - 1)^mu2`` other than 0 and 1."""
    f = P.polymul(P.polypow([0, 1], mu1), P.polypow([-1, 1], mu2))
    df = P.polyder(f)
    known = P.polymul(P.polypow([0, 1], mu1 - 1), P.polypow([-1, 1], mu2 - 1))
    quot, rem = P.polydiv(df, known)
    if np.max(np.abs(rem), initial=0.0) > 1e-9:
        raise ArithmeticError("derivative not divisible by the expected ramification factors")
    roots = P.polyroots(quot)
    roots = [r for r in roots if abs(r) > 1e-9 and abs(r - 1) > 1e-9]
    if len(roots) != 1:
        raise ArithmeticError(f"expected one extra critical point, got {roots}")
    return complex(roots[0])


def cross_ratio_check(mu1: int, mu2: int) -> complex:
    """Cross-ratio ``(inf, z*; 0, 1)`` of the four ramification points of ``z^mu1 (z-1)^mu2``.

    Equals ``-mu2/mu1``; swapping the roles of the two finite branch points
    gives the reciprocal ``-mu1/mu2``.
    """
    if mu1 < 1 or mu2 < 1:
        raise DomainError("multiplicities must be positive")
    z_star = extra_critical_point(mu1, mu2)
    value = cross_ratio(None, z_star, 0, 1)
    if abs(value - (-mu2 / mu1)) > 1e-12:
        raise ArithmeticError(f"cross-ratio {value} differs from {-mu2 / mu1}")
    return value


def mobius(a, b, c, e):
    """Möbius map acting on homogeneous pairs."""
    def apply(z):
        z0, z1 = _homog(z)
        return (a * z0 + b * z1, c * z0 + e * z1)
    return apply
