"""
Knot-type diagnostics
=====================

Sample a Bezier knot densely, project the closed polyline onto a random
plane, read off its crossings and compute the knot determinant from the
coloring matrix of the diagram. The determinant is 1 for the unknot, 3
for the trefoil and 5 for the figure-eight knot.

This is empirical evidence only: a sampled polyline is not certified to
be isotopic to the smooth curve, and equal determinants do not imply
equal knot types in general.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError, InvalidInputError, ProjectionError
from .geometry import as_points, bbox_diagonal
from .polygon import PolyKnot, refined_curve_points

#: Crossing parameters must stay this far inside both segments.
PARAM_MARGIN = 1e-6
#: Depth separation at a crossing, relative to the bounding-box diagonal.
DEPTH_MARGIN = 1e-9
#: Crossings closer than this (relative to the diagonal) count as a triple point.
TRIPLE_MARGIN = 1e-9
#: Smallest accepted sine of the planar crossing angle.
MIN_CROSSING_SINE = 1e-9
MAX_PROJECTION_TRIES = 64
SAMPLES_PER_EDGE = 16


@dataclass(frozen=True)
class Crossing:
    over: int  # segment index of the over strand
    over_param: float
    under: int
    under_param: float
    point: tuple[float, float]
    sign: int


@dataclass(frozen=True, eq=False)
class KnotDiagram:
    strand: np.ndarray  # (N, 2) projected vertices, closing edge implied
    depth: np.ndarray  # (N,) height toward the viewer
    direction: np.ndarray
    crossings: list[Crossing]
    gauss_code: list[tuple[int, str, int]] = field(default_factory=list)
    over_arc: list[int] = field(default_factory=list)
    in_arc: list[int] = field(default_factory=list)
    out_arc: list[int] = field(default_factory=list)
    axes: tuple[np.ndarray, np.ndarray] | None = None  # drawing axes u, v with u x v = direction

    @property
    def arc_count(self) -> int:
        return len(self.crossings)

    def gauss_string(self) -> str:
        return " ".join(f"{kind}{c + 1}{'+' if s > 0 else '-'}" for c, kind, s in self.gauss_code)


class _NonGeneric(Exception):
    pass


def _frame(direction):
    d = direction / np.linalg.norm(direction)
    helper = np.eye(3)[np.argmin(np.abs(d))]
    u = np.cross(d, helper)
    u /= np.linalg.norm(u)
    v = np.cross(d, u)  # u x v = d: the view is not mirrored
    return d, u, v


def _cross2(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _candidate_pairs(start, vec):
    """Index pairs ``i < j`` of non-adjacent segments whose images might meet.

    Two segments can only intersect if their midpoints are within the
    longest segment length of each other.
    """
    n = len(start)
    lengths = np.linalg.norm(vec, axis=1)
    tree = cKDTree(start + 0.5 * vec)
    pairs = tree.query_pairs(float(lengths.max()) * (1 + 1e-9), output_type="ndarray")
    if not len(pairs):
        return np.empty(0, dtype=int), np.empty(0, dtype=int)
    i, j = pairs.min(axis=1), pairs.max(axis=1)
    keep = (j > i + 1) & ~((i == 0) & (j == n - 1))
    return i[keep], j[keep]


def _find_crossings(xy, depth, diag):
    n = len(xy)
    start = xy
    vec = np.roll(xy, -1, axis=0) - xy
    if np.linalg.norm(vec, axis=1).min() < TRIPLE_MARGIN * diag:
        raise _NonGeneric("segment viewed end-on")
    i, j = _candidate_pairs(start, vec)
    found = []
    if len(i):
        r, w = vec[i], vec[j]
        qp = start[j] - start[i]
        denom = _cross2(r, w)
        scale = np.linalg.norm(r, axis=1) * np.linalg.norm(w, axis=1)
        parallel = np.abs(denom) < MIN_CROSSING_SINE * scale
        safe = np.where(parallel, 1.0, denom)
        s = _cross2(qp, w) / safe
        t = _cross2(qp, r) / safe
        if np.any(parallel):
            # overlapping collinear images are fatal; separated parallel ones are harmless
            rr = np.einsum("ij,ij->i", r, r)
            off_line = np.abs(_cross2(qp, r)) / np.sqrt(rr)
            t0 = np.einsum("ij,ij->i", qp, r) / rr
            t1 = t0 + np.einsum("ij,ij->i", w, r) / rr
            overlap = (np.maximum(t0, t1) > -PARAM_MARGIN) & (np.minimum(t0, t1) < 1 + PARAM_MARGIN)
            if np.any(parallel & overlap & (off_line < TRIPLE_MARGIN * diag)):
                raise _NonGeneric("parallel overlap")
        near = ~parallel & (s > -PARAM_MARGIN) & (s < 1 + PARAM_MARGIN) & (t > -PARAM_MARGIN) & (t < 1 + PARAM_MARGIN)
        inside = near & (s > PARAM_MARGIN) & (s < 1 - PARAM_MARGIN) & (t > PARAM_MARGIN) & (t < 1 - PARAM_MARGIN)
        if np.any(near & ~inside):
            raise _NonGeneric("crossing at a vertex")
        for k in np.nonzero(inside)[0]:
            found.append((int(i[k]), float(s[k]), int(j[k]), float(t[k])))
        found.sort()

    crossings = []
    for i, s, j, t in found:
        di = depth[i] + s * (depth[(i + 1) % n] - depth[i])
        dj = depth[j] + t * (depth[(j + 1) % n] - depth[j])
        if abs(di - dj) < DEPTH_MARGIN * diag:
            raise _NonGeneric("strands touch in space")
        if di < dj:
            i, s, j, t = j, t, i, s
        point = start[i] + s * vec[i]
        sign = 1 if _cross2(vec[i], vec[j]) > 0 else -1
        crossings.append(Crossing(i, s, j, t, (float(point[0]), float(point[1])), sign))

    if len(crossings) > 1:
        pts = np.array([c.point for c in crossings])
        gaps = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() < TRIPLE_MARGIN * diag:
            raise _NonGeneric("triple point")
    return crossings


def _label_arcs(crossings):
    """Gauss code plus over/in/out arc labels; arcs start after each underpass."""
    events = []
    for c, x in enumerate(crossings):
        events.append((x.over + x.over_param, c, "O"))
        events.append((x.under + x.under_param, c, "U"))
    events.sort()
    k = len(crossings)
    over_arc, in_arc, out_arc = [0] * k, [0] * k, [0] * k
    unders_seen = 0
    gauss = []
    for _, c, kind in events:
        gauss.append((c, kind, crossings[c].sign))
        if kind == "O":
            over_arc[c] = unders_seen % k
        else:
            in_arc[c] = unders_seen % k
            unders_seen += 1
            out_arc[c] = unders_seen % k
    return gauss, over_arc, in_arc, out_arc


def _closed_polyline(points):
    pts = as_points(points)
    if len(pts) > 1 and np.array_equal(pts[0], pts[-1]):
        pts = pts[:-1]
    if len(pts) < 3:
        raise InvalidInputError("a closed polyline needs at least 3 points")
    return pts


PLANES = {
    "xy": ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)),
    "xz": ((1.0, 0.0, 0.0), (0.0, 0.0, 1.0)),
    "yz": ((0.0, 1.0, 0.0), (0.0, 0.0, 1.0)),
}


def project_along(points, direction=None, plane: str | None = None) -> KnotDiagram:
    """Diagram of a closed polyline viewed from ``+direction``.

    ``plane`` ("xy", "xz" or "yz") instead projects onto coordinate axes,
    keeping them as drawing axes. Raises :class:`ProjectionError` when
    the view is not generic.
    """
    pts = _closed_polyline(points)
    if plane is not None:
        u, v = (np.array(a) for a in PLANES[plane])
        d = np.cross(u, v)
    else:
        d, u, v = _frame(np.asarray(direction, dtype=float))
    xy = np.stack([pts @ u, pts @ v], axis=1)
    depth = pts @ d
    diag = bbox_diagonal(pts)
    try:
        crossings = _find_crossings(xy, depth, diag)
    except _NonGeneric as exc:
        raise ProjectionError(f"non-generic projection: {exc}") from None
    gauss, over_arc, in_arc, out_arc = _label_arcs(crossings)
    return KnotDiagram(xy, depth, d, crossings, gauss, over_arc, in_arc, out_arc, (u, v))


def project(points, seed: int = 0) -> KnotDiagram:
    """Diagram from the first generic direction drawn from ``seed``."""
    pts = _closed_polyline(points)
    rng = np.random.default_rng(seed)
    reasons = []
    for _ in range(MAX_PROJECTION_TRIES):
        direction = rng.normal(size=3)
        try:
            return project_along(pts, direction)
        except ProjectionError as exc:
            reasons.append(str(exc))
    raise ProjectionError(
        f"no generic projection in {MAX_PROJECTION_TRIES} tries (last: {reasons[-1]})"
    )


def coloring_matrix(d: KnotDiagram) -> list[list[int]]:
    """One row per crossing: ``2 * over - in - out`` over the arcs."""
    k = d.arc_count
    rows = []
    for c in range(k):
        row = [0] * k
        row[d.over_arc[c]] += 2
        row[d.in_arc[c]] -= 1
        row[d.out_arc[c]] -= 1
        rows.append(row)
    return rows


def bareiss_determinant(matrix) -> int:
    """Exact determinant of a square integer matrix by fraction-free elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[-1][-1]


def determinant(d: KnotDiagram) -> int:
    """Knot determinant: absolute value of a first minor of the coloring matrix."""
    k = d.arc_count
    if k == 0:
        return 1
    minor = [row[:-1] for row in coloring_matrix(d)[:-1]]
    return abs(bareiss_determinant(minor))


@dataclass(frozen=True)
class DiagnosticsReport:
    iteration: int
    samples: int
    crossings: int
    determinant: int
    seed: int
    gauss_code: str = ""


def sample_closed(p: PolyKnot, j: int, samples: int) -> np.ndarray:
    """``samples`` distinct points of the Bezier curve after ``j`` insertions.

    Parameters are ``k / samples``; ``t = 1`` repeats ``t = 0`` and is left
    implicit.
    """
    return refined_curve_points(p, j, np.arange(samples) / samples)


def diagnose_iteration(p: PolyKnot, j: int, samples: int | None = None, seed: int = 0) -> DiagnosticsReport:
    """Determinant of the Bezier knot after ``j`` insertions into ``p``.

    ``samples`` defaults to the floor of 16 per control-polygon edge.
    """
    if j < 0:
        raise DomainError("iteration must be >= 0")
    floor = SAMPLES_PER_EDGE * len(p) * 2**j
    samples = floor if samples is None else samples
    if samples < floor:
        raise DomainError(f"need at least {floor} samples at iteration {j}, got {samples}")
    diagram = project(sample_closed(p, j, samples), seed)
    return DiagnosticsReport(j, samples, diagram.arc_count, determinant(diagram), seed,
                             diagram.gauss_string())
