"""
Isotopy certificate
===================

The distance threshold ``delta`` derived from a stick knot, and the
insertion counts after which the Bezier curve is within ``delta`` of its
control polygon and within angle pi/8 of its tangents.

Division points are exactly the polygon's vertices. Curvature of a
polygon sits at its vertices, so every edge is an arc of zero interior
curvature and no further subdivision is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bezier import second_diff
from .bounds import hodograph_rate_bound, insertion_distance_bound
from .errors import CertificateDegenerateError, DomainError, SolverOverflowError
from .geometry import Tolerance, clip_segment_outside_balls, seg_seg_distance
from .polygon import PolyKnot, min_edge_length

#: Angular closeness required between tangents.
THETA = math.pi / 8
#: Iteration solvers give up past this many insertions.
MAX_ITERATIONS = 64


@dataclass(frozen=True)
class DeltaCertificate:
    epsilon: float
    r1: float
    r2: float
    r3: float
    r4: float
    delta: float
    division_points: np.ndarray = field(repr=False)

    def rows(self):
        return [("epsilon", self.epsilon), ("r1", self.r1), ("r2", self.r2),
                ("r3", self.r3), ("r4", self.r4), ("delta", self.delta)]


@dataclass(frozen=True)
class IterationBounds:
    n: int
    omega1: float
    omega2: float
    lam: float
    delta: float
    m1: int
    m2T: int
    m2A: int
    m2T_mode: str = "simplified"

    @property
    def m2(self) -> int:
        return max(self.m2T, self.m2A)

    @property
    def M(self) -> int:
        return max(self.m1, self.m2)


def compute_delta(p: PolyKnot, epsilon: float = 1.0) -> DeltaCertificate:
    """Run the r1 .. r4 pipeline on a level-0 knot.

    ``r1`` is the smaller of the closest approach of non-adjacent edges and
    the closest pair of vertices. Each edge is then trimmed by open balls
    of radius ``r2`` about every vertex, and ``r3`` is the closest
    approach between any two trimmed pieces, adjacent edges included.
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    verts = p.vertices
    n = len(verts)
    edges = p.edges()

    r1 = min(np.linalg.norm(verts[i] - verts[k]) for i, k in combinations(range(n), 2))
    for i, k in combinations(range(n), 2):
        if k == i + 1 or (i == 0 and k == n - 1):
            continue
        r1 = min(r1, seg_seg_distance(edges[i], edges[k]))
    r1 = float(r1)
    r2 = min(r1 / 2, epsilon / 2)

    tol = Tolerance.for_points(verts)
    pieces = []
    for i, e in enumerate(edges):
        kept = clip_segment_outside_balls(e, verts, r2, tol)
        if not kept:
            raise CertificateDegenerateError(
                f"edge {i} (length {e.length:.6g}) vanishes inside balls of radius {r2:.6g}"
            )
        pieces.extend(kept)

    r3 = float(min(seg_seg_distance(a, b) for a, b in combinations(pieces, 2)))
    r4 = r3 / 6
    return DeltaCertificate(epsilon, r1, r2, r3, r4, r4 / 3, verts)


def _first_level(predicate, start: int = 0) -> int:
    for j in range(start, MAX_ITERATIONS + 1):
        if predicate(j):
            return j
    raise SolverOverflowError(f"no insertion level <= {MAX_ITERATIONS} satisfies the bound")


def compute_m1(n: int, omega1: float, delta: float) -> int:
    """Fewest insertions with the curve/polygon distance bound at most ``delta``."""
    if not delta > 0:
        raise DomainError("delta must be positive")
    if omega1 < 0:
        raise DomainError("omega1 must be nonnegative")
    arg = ((n * omega1 / (4 * delta)) ** 2 - 1) / n
    guess = max(0, math.ceil(math.log2(arg))) if arg > 0 else 0
    if guess > MAX_ITERATIONS:
        raise SolverOverflowError(f"m1 = {guess} exceeds the cap of {MAX_ITERATIONS}")
    # the logarithm can land one off at an exact boundary
    while guess > 0 and insertion_distance_bound(n, guess - 1, omega1) <= delta:
        guess -= 1
    return _first_level(lambda j: insertion_distance_bound(n, j, omega1) <= delta, guess)


def compute_m2T(n: int, lam: float, omega2: float, mode: str = "simplified") -> int:
    """Fewest insertions making the hodograph error shorter than the shortest tangent.

    ``mode="simplified"`` uses the simplified test ``(omega2/lam)^2 < n 8^j + 4^j``;
    ``mode="strict"`` compares the hodograph rate bound with ``n * lam``.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if mode == "simplified":
        ratio_sq = (omega2 / lam) ** 2
        return _first_level(lambda j: ratio_sq < n * 8.0**j + 4.0**j)
    if mode == "strict":
        return _first_level(lambda j: hodograph_rate_bound(n, j, omega2) < n * lam)
    raise DomainError(f"unknown m2T mode {mode!r}")


def compute_m2A(n: int, lam: float, omega2: float) -> int:
    """Fewest insertions bounding the tangent deviation by pi/8."""
    if not lam > 0:
        raise DomainError("lambda must be positive")
    limit = n * lam * math.sin(THETA)
    return _first_level(lambda j: hodograph_rate_bound(n, j, omega2) <= limit)


def iterations_from_values(n: int, omega1: float, omega2: float, lam: float, delta: float,
                           m2T_mode: str = "simplified") -> IterationBounds:
    return IterationBounds(
        n=n, omega1=omega1, omega2=omega2, lam=lam, delta=delta,
        m1=compute_m1(n, omega1, delta),
        m2T=compute_m2T(n, lam, omega2, m2T_mode),
        m2A=compute_m2A(n, lam, omega2),
        m2T_mode=m2T_mode,
    )


def norms(p: PolyKnot) -> tuple[float, float, float]:
    """``(omega1, omega2, lambda)`` for a knot."""
    omega1 = second_diff(p.closed_vertices).omega
    omega2 = second_diff(p.hodograph_points()).omega
    return omega1, omega2, min_edge_length(p)


def required_iterations(p: PolyKnot, epsilon: float = 1.0, m2T_mode: str = "simplified",
                        certificate: DeltaCertificate | None = None) -> IterationBounds:
    cert = certificate or compute_delta(p, epsilon)
    omega1, omega2, lam = norms(p)
    return iterations_from_values(len(p), omega1, omega2, lam, cert.delta, m2T_mode)
