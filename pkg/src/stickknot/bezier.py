"""
Bezier curves
=============

Evaluation by repeated linear interpolation (de Casteljau), the
hodograph, second forward differences and sampled gap measurements
against a uniformly parametrized control polygon.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import binom

from .errors import DomainError, InvalidInputError
from .geometry import as_points


@dataclass(frozen=True, eq=False)
class BezierKnot:
    """Degree-``n`` Bezier curve with ``n + 1`` control points.

    A closed curve stores the closing point explicitly, so
    ``control[0] == control[n]`` holds exactly.
    """

    control: np.ndarray
    closed: bool = False

    def __post_init__(self):
        ctrl = as_points(self.control)
        if len(ctrl) < (2 if self.closed else 1):
            raise InvalidInputError("not enough control points")
        if self.closed and not np.array_equal(ctrl[0], ctrl[-1]):
            raise InvalidInputError("closed curve must repeat its first control point")
        ctrl = ctrl.copy()
        ctrl.flags.writeable = False
        object.__setattr__(self, "control", ctrl)

    @property
    def degree(self) -> int:
        return len(self.control) - 1

    @classmethod
    def from_polygon(cls, vertices) -> "BezierKnot":
        """Closed curve whose control polygon is the closed polyline ``vertices``."""
        v = as_points(vertices)
        return cls(np.vstack([v, v[:1]]), closed=True)


def _check_params(t):
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts < 0) or np.any(ts > 1) or not np.all(np.isfinite(ts)):
        raise DomainError("curve parameter must lie in [0, 1]")
    return ts


def de_casteljau(control, ts) -> np.ndarray:
    """Evaluate the Bezier curve with ``control`` points at every ``ts``."""
    ctrl = np.asarray(control, dtype=float)
    ts = np.asarray(ts, dtype=float)
    pts = np.broadcast_to(ctrl, (len(ts),) + ctrl.shape).copy()
    t = ts[:, None, None]
    s = 1.0 - t
    for _ in range(ctrl.shape[0] - 1):
        pts = s * pts[:, :-1] + t * pts[:, 1:]
    return pts[:, 0]


def evaluate(curve: BezierKnot, t):
    """Point(s) ``B(t)``. Scalar ``t`` gives one point, an array gives ``(m, 3)``."""
    ts = _check_params(t)
    out = de_casteljau(curve.control, ts)
    return out[0] if np.ndim(t) == 0 else out


eval = evaluate


@lru_cache(maxsize=4)
def _bernstein_matrix(n: int, m: int) -> np.ndarray:
    ts = np.linspace(0.0, 1.0, m)
    w = binom.pmf(np.arange(n + 1)[None, :], n, ts[:, None])
    w.flags.writeable = False
    return w


def dense_eval(control, m: int) -> np.ndarray:
    """``B(k / (m - 1))`` for ``k = 0 .. m-1`` through a cached basis matrix.

    de Casteljau costs O(n^2) per point, which is too slow for the
    degree-several-hundred curves produced by repeated insertion.
    Binomial pmf weights are computed in log space, so they neither
    overflow nor lose relative accuracy at high degree.
    """
    ctrl = np.asarray(control, dtype=float)
    return _bernstein_matrix(len(ctrl) - 1, m) @ ctrl


def bernstein_eval(curve: BezierKnot, t: float) -> np.ndarray:
    """Direct Bernstein sum; used only as a cross-check for :func:`eval`."""
    from math import comb

    n = curve.degree
    weights = np.array([comb(n, i) * t**i * (1 - t) ** (n - i) for i in range(n + 1)])
    return weights @ curve.control


def hodograph(curve: BezierKnot, factor: float | None = None) -> BezierKnot:
    """Derivative curve with control points ``factor * (P[i] - P[i-1])``.

    ``factor`` defaults to the degree, which gives the true derivative.
    """
    if curve.degree < 1:
        raise InvalidInputError("hodograph needs degree >= 1")
    f = curve.degree if factor is None else factor
    return BezierKnot(f * np.diff(curve.control, axis=0))


@dataclass(frozen=True, eq=False)
class DiffVector:
    """Second forward differences of a point sequence and their norms."""

    entries: np.ndarray
    norms: np.ndarray  # per-coordinate 1-norms (x, y, z)

    @property
    def omega(self) -> float:
        return float(self.norms.max()) if len(self.entries) else 0.0


def second_diff(points) -> DiffVector:
    """``P[i+2] - 2 P[i+1] + P[i]`` over an open sequence, with 1-norms."""
    pts = as_points(points)
    if len(pts) < 3:
        raise InvalidInputError("second differences need at least 3 points")
    d2 = pts[2:] - 2.0 * pts[1:-1] + pts[:-2]
    return DiffVector(entries=d2, norms=np.abs(d2).sum(axis=0))


def sample(curve: BezierKnot, m: int) -> np.ndarray:
    """``m`` points ``B(k / (m - 1))``."""
    if m < 2:
        raise DomainError("need at least 2 samples")
    return dense_eval(curve.control, m)


def polyline_param(points, t) -> np.ndarray:
    """Uniform parametrization of an open polyline over [0, 1].

    Point ``k`` of ``N + 1`` sits at ``t = k / N``; in between is linear
    interpolation. ``t`` may be scalar or an array.
    """
    pts = np.asarray(points, dtype=float)
    ts = _check_params(t)
    segs = len(pts) - 1
    if segs == 0:
        out = np.repeat(pts[:1], len(ts), axis=0)
    else:
        s = ts * segs
        k = np.minimum(np.floor(s).astype(int), segs - 1)
        frac = (s - k)[:, None]
        out = (1.0 - frac) * pts[k] + frac * pts[k + 1]
    return out[0] if np.ndim(t) == 0 else out


def control_polygon_param(curve: BezierKnot):
    """The curve's control polygon as a callable ``t -> point(s)``."""
    ctrl = curve.control
    return lambda t: polyline_param(ctrl, t)


def max_pointwise_gap(curve: BezierKnot, polygon_param, m: int = 10_000) -> float:
    """Largest ``|B(t_k) - polygon(t_k)|`` over ``t_k = k / (m - 1)``.

    A sampled lower bound on the sup-norm distance. ``polygon_param`` must
    accept an array of parameters.
    """
    if m < 2:
        raise DomainError("need at least 2 samples")
    ts = np.linspace(0.0, 1.0, m)
    gap = dense_eval(curve.control, m) - np.asarray(polygon_param(ts))
    return float(np.linalg.norm(gap, axis=1).max())
