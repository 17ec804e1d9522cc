"""
Stick knots and collinear insertion
===================================

A :class:`PolyKnot` is a closed polygon stored without its closing
point. Level-0 knots are validated input; refinements produced by
:func:`collinear_insert` carry the level ``j`` and the original vertex
count ``base_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import binom

from .bezier import BezierKnot, polyline_param
from .errors import DomainError, ValidationError
from .geometry import Segment3, Tolerance, as_points, seg_seg_distance


@dataclass(frozen=True, eq=False)
class PolyKnot:
    vertices: np.ndarray
    level: int = 0
    base_n: int | None = None

    def __post_init__(self):
        v = as_points(self.vertices).copy()
        v.flags.writeable = False
        object.__setattr__(self, "vertices", v)
        if self.base_n is None:
            object.__setattr__(self, "base_n", len(v))

    def __len__(self):
        return len(self.vertices)

    @property
    def closed_vertices(self) -> np.ndarray:
        """Vertices with the first repeated at the end."""
        return np.vstack([self.vertices, self.vertices[:1]])

    def edges(self) -> list[Segment3]:
        v = self.closed_vertices
        return [Segment3(v[i], v[i + 1]) for i in range(len(self))]

    def edge_lengths(self) -> np.ndarray:
        return np.linalg.norm(np.diff(self.closed_vertices, axis=0), axis=1)

    def bezier(self) -> BezierKnot:
        """The closed Bezier curve controlled by this polygon."""
        return BezierKnot(self.closed_vertices, closed=True)

    def hodograph_points(self) -> np.ndarray:
        """``base_n * (P[i] - P[i-1])`` over the closed vertex sequence.

        For level ``j`` this is the hodograph of :meth:`bezier` divided by
        ``2**j``, i.e. tangents measured against the level-0 parameter
        speed; at level 0 it is the plain hodograph.
        """
        return self.base_n * np.diff(self.closed_vertices, axis=0)

    def scaled(self, factor: float) -> "PolyKnot":
        return PolyKnot(self.vertices * factor, self.level, self.base_n)


def _strip_closing_point(pts: np.ndarray) -> np.ndarray:
    if len(pts) > 1 and np.array_equal(pts[0], pts[-1]):
        return pts[:-1]
    return pts


def validate(points, tol: Tolerance | None = None) -> PolyKnot:
    """Check the admissibility rules and return a level-0 knot.

    Rejections raise :class:`ValidationError` whose ``clause`` names the
    rule: fewer than four vertices, repeated vertex, three collinear
    vertices, or two edges touching away from a shared vertex.
    """
    pts = _strip_closing_point(as_points(points))
    n = len(pts)
    if n < 4:
        raise ValidationError("too-few", f"need at least 4 vertices, got {n}")
    tol = tol or Tolerance.for_points(pts)
    eps = tol.eps

    for i, j in combinations(range(n), 2):
        if np.linalg.norm(pts[i] - pts[j]) <= eps:
            raise ValidationError("duplicate", f"vertices {i} and {j} coincide")

    for i, j, k in combinations(range(n), 3):
        a, b, c = pts[i], pts[j], pts[k]
        longest = max(np.linalg.norm(b - a), np.linalg.norm(c - a), np.linalg.norm(c - b))
        # smallest altitude of the triangle
        if np.linalg.norm(np.cross(b - a, c - a)) / longest <= eps:
            raise ValidationError("collinear", f"vertices {i}, {j}, {k} are collinear")

    knot = PolyKnot(pts)
    edges = knot.edges()
    for i, j in combinations(range(n), 2):
        if j == i + 1 or (i == 0 and j == n - 1):
            continue  # adjacent; cannot overlap without a collinear triple
        if seg_seg_distance(edges[i], edges[j]) <= eps:
            raise ValidationError("self-intersection", f"edges {i} and {j} intersect")
    return knot


def collinear_insert(p: PolyKnot) -> PolyKnot:
    """Insert the midpoint of every edge, closing edge included."""
    v = p.vertices
    out = np.empty((2 * len(v), 3))
    out[0::2] = v
    out[1::2] = 0.5 * (v + np.roll(v, -1, axis=0))
    return PolyKnot(out, p.level + 1, p.base_n)


def refine(p: PolyKnot, j: int) -> PolyKnot:
    for _ in range(j):
        p = collinear_insert(p)
    return p


def polygon_param(p: PolyKnot, t):
    """Uniform parametrization: vertex ``k`` sits at ``t = k / len(p)``; ``t = 1`` closes."""
    return polyline_param(p.closed_vertices, t)


def min_edge_length(p: PolyKnot) -> float:
    return float(p.edge_lengths().min())


def refined_curve_points(p: PolyKnot, j: int, ts) -> np.ndarray:
    """Points of the Bezier curve of ``refine(p, j)`` at parameters ``ts``.

    After ``j`` insertions the control points are the level-0 polygon
    sampled uniformly, ``P_i = V_0 + sum_e D_e clamp((i - e L) / L, 0, 1)``
    with ``L = 2**j`` and edge vectors ``D_e``. Summing this against the
    Bernstein weights turns each clamp into an expectation over
    ``X ~ Binomial(N, t)``, and
    ``E[(X - a)^+] = N t P(Bin(N-1, t) >= a) - a P(X > a)``.
    The cost is O(n) per point rather than O(N), which keeps
    curves of degree in the thousands cheap to sample.
    """
    if p.level != 0:
        raise DomainError("refined_curve_points expects a level-0 knot")
    v = p.vertices
    n, L = len(v), 2**j
    N = n * L
    d = np.roll(v, -1, axis=0) - v
    t = np.asarray(ts, dtype=float)[:, None]
    a = (np.arange(n + 1) * L)[None, :]
    excess = N * t * binom.sf(a - 1, N - 1, t) - a * binom.sf(a, N, t)
    hinge = (excess[:, :-1] - excess[:, 1:]) / L
    return v[0] + hinge @ d
