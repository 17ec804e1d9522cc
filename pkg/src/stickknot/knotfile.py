"""Knot file reading and writing.

Two encodings are accepted:

* text: one ``x y z`` triple per line (commas also separate), ``#``
  starts a comment;
* JSON: ``{"points": [[x, y, z], ...], "closed": true, "name": "..."}``.

Coordinates are written with 17 significant digits, which round-trips
every double exactly.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import KnotFileError


@dataclass(frozen=True, eq=False)
class KnotFile:
    points: np.ndarray
    closed: bool = True
    name: str | None = None


def parse_knot(text: str) -> KnotFile:
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if not body:
        raise KnotFileError("empty knot file")
    if body.startswith("{"):
        return _parse_json(body)
    rows = []
    for lineno, line in enumerate(body.splitlines(), 1):
        fields = [f for f in re.split(r"[\s,]+", line.strip()) if f]
        if not fields:
            continue
        if len(fields) != 3:
            raise KnotFileError(f"line {lineno}: expected 3 coordinates, got {len(fields)}")
        try:
            rows.append([float(f) for f in fields])
        except ValueError:
            raise KnotFileError(f"line {lineno}: non-numeric coordinate") from None
    return KnotFile(_finite(rows))


def _parse_json(body: str) -> KnotFile:
    try:
        doc = json.loads(body)
    except json.JSONDecodeError as exc:
        raise KnotFileError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "points" not in doc:
        raise KnotFileError('JSON knot file needs a "points" list')
    pts = doc["points"]
    if not isinstance(pts, list) or not all(isinstance(p, list) and len(p) == 3 for p in pts):
        raise KnotFileError('"points" must be a list of [x, y, z] triples')
    closed = doc.get("closed", True)
    if closed is not True:
        raise KnotFileError("only closed knots are supported")
    try:
        arr = _finite(pts)
    except (TypeError, ValueError):
        raise KnotFileError("non-numeric coordinate") from None
    return KnotFile(arr, True, doc.get("name"))


def _finite(rows) -> np.ndarray:
    arr = np.array(rows, dtype=float).reshape(-1, 3)
    if not np.all(np.isfinite(arr)):
        raise KnotFileError("non-finite coordinate")
    if len(arr) == 0:
        raise KnotFileError("no points")
    return arr


def read_knot(path) -> KnotFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise KnotFileError(f"cannot read {path}: {exc}") from None
    return parse_knot(text)


def format_knot(points, name: str | None = None, fmt: str = "text") -> str:
    pts = np.asarray(points, dtype=float)
    if fmt == "json":
        doc = {"points": [[float(f"{c:.17g}") for c in p] for p in pts], "closed": True}
        if name:
            doc["name"] = name
        return json.dumps(doc, indent=1) + "\n"
    lines = [f"# {name}"] if name else []
    lines += [" ".join(f"{c:.17g}" for c in p) for p in pts]
    return "\n".join(lines) + "\n"


def write_knot(path, points, name: str | None = None, fmt: str = "text") -> None:
    Path(path).write_text(format_knot(points, name, fmt), encoding="utf-8")
