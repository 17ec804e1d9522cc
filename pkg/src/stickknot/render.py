"""SVG drawings of knot diagrams, with the under-strand broken at each crossing."""
from __future__ import annotations

import numpy as np

from .diagnostics import KnotDiagram

WIDTH = 600.0
MARGIN = 20.0
GAP_FRACTION = 0.02


def _pieces(xy, cut_positions, gap):
    """Split the closed polyline ``xy`` into open pieces avoiding arclength windows."""
    n = len(xy)
    closed = np.vstack([xy, xy[:1]])
    seg_len = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    arclen = np.concatenate([[0.0], np.cumsum(seg_len)])
    total = arclen[-1]
    if not cut_positions:
        return [closed]

    def point_at(s):
        s %= total
        k = min(int(np.searchsorted(arclen, s, side="right")) - 1, n - 1)
        frac = (s - arclen[k]) / seg_len[k] if seg_len[k] > 0 else 0.0
        return closed[k] + frac * (closed[k + 1] - closed[k])

    cuts = sorted(cut_positions)
    pieces = []
    for a, b in zip(cuts, cuts[1:] + [cuts[0] + total]):
        lo, hi = a + gap / 2, b - gap / 2
        if hi <= lo:
            continue
        # vertices whose arclength, unwrapped past the cut, falls inside (lo, hi)
        unwrapped = arclen[:n] + np.where(arclen[:n] < a, total, 0.0)
        order = np.nonzero((unwrapped > lo) & (unwrapped < hi))[0]
        order = order[np.argsort(unwrapped[order])]
        inner = [closed[k] for k in order]
        pieces.append(np.array([point_at(lo), *inner, point_at(hi)]))
    return pieces


def diagram_svg(d: KnotDiagram, title: str | None = None, control=None) -> str:
    """SVG 1.1 document for ``d``.

    ``control`` optionally adds a closed 3D polyline, projected with the
    diagram's axes and drawn thin and grey behind the knot.
    """
    xy = np.asarray(d.strand, dtype=float)
    lo = xy.min(axis=0)
    span = float((xy.max(axis=0) - lo).max()) or 1.0
    scale = (WIDTH - 2 * MARGIN) / span
    height = (xy.max(axis=0) - lo)[1] * scale + 2 * MARGIN

    def to_px(pts):
        pts = np.asarray(pts, dtype=float)
        x = MARGIN + (pts[:, 0] - lo[0]) * scale
        y = height - MARGIN - (pts[:, 1] - lo[1]) * scale  # SVG y grows downward
        return " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(x, y))

    closed = np.vstack([xy, xy[:1]])
    seg_len = np.linalg.norm(np.diff(closed, axis=0), axis=1)
    arclen = np.concatenate([[0.0], np.cumsum(seg_len)])
    cuts = [arclen[c.under] + c.under_param * seg_len[c.under] for c in d.crossings]
    gap = GAP_FRACTION * WIDTH / scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH:.0f}" height="{height:.0f}" viewBox="0 0 {WIDTH:.0f} {height:.0f}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    if control is not None:
        u, v = d.axes
        ctrl = np.asarray(control, dtype=float)
        ctrl = np.stack([ctrl @ u, ctrl @ v], axis=1)
        out.append(f'<polygon points="{to_px(ctrl)}" fill="none" stroke="#bbbbbb" stroke-width="1"/>')
    for piece in _pieces(xy, cuts, gap):
        out.append(f'<polyline points="{to_px(piece)}" fill="none" stroke="black" '
                   'stroke-width="2.5" stroke-linejoin="round" stroke-linecap="round"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
