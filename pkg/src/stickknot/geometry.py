"""
Space geometry kernel
=====================

Points are plain ``numpy`` arrays of shape ``(3,)``; lists of points are
``(N, 3)`` arrays. Everything here is double precision and side-effect
free.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

#: Relative tolerance shared by every geometric predicate.
REL_TOL = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Tolerance policy: an absolute epsilon derived from a length scale.

    The scale is normally the bounding-box diagonal of the data being
    examined, so predicates behave the same under uniform scaling.
    """

    rel: float = REL_TOL
    scale: float = 1.0

    @property
    def eps(self) -> float:
        return self.rel * self.scale

    @classmethod
    def for_points(cls, points, rel: float = REL_TOL) -> "Tolerance":
        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        diag = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))) if len(pts) else 0.0
        return cls(rel=rel, scale=diag if diag > 0 else 1.0)


def as_point(p) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.shape != (3,):
        raise InvalidInputError(f"expected a 3D point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"non-finite coordinate in {arr}")
    return arr


def as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise InvalidInputError(f"expected an (N, 3) array of points, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("non-finite coordinate in point list")
    return arr


def bbox_diagonal(points) -> float:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    return float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))


@dataclass(frozen=True, eq=False)
class Segment3:
    """Closed straight segment from ``a`` to ``b``.

    Zero-length segments are rejected: the length must exceed 1e-12 of
    ``max(|a|, |b|)`` (the rounding floor of the coordinates).
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a, b = as_point(self.a), as_point(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        scale = max(float(np.linalg.norm(a)), float(np.linalg.norm(b)))
        length = np.linalg.norm(b - a)
        if length == 0 or length <= 1e-12 * scale:
            raise InvalidInputError(f"degenerate segment at {a}")

    @property
    def direction(self) -> np.ndarray:
        return self.b - self.a

    @property
    def length(self) -> float:
        return float(np.linalg.norm(self.b - self.a))

    def point_at(self, t: float) -> np.ndarray:
        return self.a + t * (self.b - self.a)

    def __repr__(self):
        return f"Segment3({self.a.tolist()}, {self.b.tolist()})"


def point_segment_distance(p, s: Segment3) -> float:
    d = s.direction
    t = float(np.dot(p - s.a, d) / np.dot(d, d))
    t = min(1.0, max(0.0, t))
    return float(np.linalg.norm(p - s.point_at(t)))


def closest_parameters(s: Segment3, t: Segment3) -> tuple[float, float]:
    """Parameters ``(u, v)`` of a closest point pair on two segments.

    Clamped closed-form solution; the parallel case pins ``u = 0`` and
    then clamps ``v`` so the pair is still optimal.
    """
    d1, d2 = s.direction, t.direction
    r = s.a - t.a
    a = float(np.dot(d1, d1))
    e = float(np.dot(d2, d2))
    f = float(np.dot(d2, r))
    c = float(np.dot(d1, r))
    b = float(np.dot(d1, d2))
    denom = a * e - b * b

    if denom > 1e-14 * a * e:
        u = min(1.0, max(0.0, (b * f - c * e) / denom))
    else:
        u = 0.0
    v = (b * u + f) / e
    if v < 0.0:
        v = 0.0
        u = min(1.0, max(0.0, -c / a))
    elif v > 1.0:
        v = 1.0
        u = min(1.0, max(0.0, (b - c) / a))
    return u, v


def seg_seg_distance(s: Segment3, t: Segment3) -> float:
    """Exact Euclidean distance between two closed segments."""
    u, v = closest_parameters(s, t)
    best = float(np.linalg.norm(s.point_at(u) - t.point_at(v)))
    # Endpoint candidates guard the near-parallel branch against rounding;
    # they also make the result exactly symmetric.
    for p in (s.a, s.b):
        best = min(best, point_segment_distance(p, t))
    for p in (t.a, t.b):
        best = min(best, point_segment_distance(p, s))
    return best


def turning_angle(u, v) -> float:
    """Exterior angle between consecutive direction vectors ``u`` and ``v``."""
    cross = np.linalg.norm(np.cross(u, v))
    return float(np.arctan2(cross, np.dot(u, v)))


def total_curvature(points, closed: bool = False) -> float:
    """Sum of turning angles of a polyline.

    For ``closed=True`` the closing edge is implied (an explicit repeated
    first point is dropped) and every vertex contributes a turn.
    """
    pts = as_points(points)
    if closed and len(pts) > 1 and np.array_equal(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 3:
        raise InvalidInputError("total curvature needs at least 3 points")
    edges = (np.roll(pts, -1, axis=0) - pts) if closed else np.diff(pts, axis=0)
    lengths = np.linalg.norm(edges, axis=1)
    if np.any(lengths <= 1e-12 * max(1.0, bbox_diagonal(pts))):
        raise InvalidInputError("consecutive duplicate points")
    pairs = zip(edges, np.roll(edges, -1, axis=0)) if closed else zip(edges[:-1], edges[1:])
    return float(sum(turning_angle(u, v) for u, v in pairs))


def clip_segment_outside_balls(s: Segment3, centers, radius: float, tol: Tolerance | None = None):
    """Pieces of ``s`` lying outside every open ball of ``radius`` about ``centers``.

    Returns closed sub-segments in order along ``s``. Pieces not longer
    than ``tol.eps`` are dropped, so a segment whose clips just meet comes
    back empty.
    """
    if radius < 0:
        raise InvalidInputError("radius must be nonnegative")
    tol = tol or Tolerance.for_points([s.a, s.b])
    if radius == 0:
        return [s]
    d = s.direction
    dd = float(np.dot(d, d))
    removed = []
    for c in np.asarray(centers, dtype=float).reshape(-1, 3):
        w = s.a - c
        half_b = float(np.dot(d, w))
        disc = half_b * half_b - dd * (float(np.dot(w, w)) - radius * radius)
        if disc <= 0:
            continue
        root = np.sqrt(disc)
        lo, hi = (-half_b - root) / dd, (-half_b + root) / dd
        if hi <= 0 or lo >= 1:
            continue
        removed.append((max(lo, 0.0), min(hi, 1.0)))
    removed.sort()

    kept, cursor = [], 0.0
    for lo, hi in removed:
        if lo > cursor:
            kept.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < 1.0:
        kept.append((cursor, 1.0))

    length = np.sqrt(dd)
    return [
        Segment3(s.point_at(lo), s.point_at(hi))
        for lo, hi in kept
        if (hi - lo) * length > tol.eps
    ]
