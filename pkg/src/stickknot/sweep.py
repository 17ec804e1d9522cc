"""Random stick knots and the bound-tightness sweep.

Each instance draws a random polygon, computes the a priori insertion
count and then finds, by diagnosing every level up to ``jmax``, the
level from which the Bezier knot's determinant matches the stick knot's
for good. Instance ``i`` uses seed ``seed + i`` and nothing else, so
rows do not depend on execution order.
"""
from __future__ import annotations

import csv
import io
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

import numpy as np

from .certificate import compute_delta, norms, iterations_from_values
from .diagnostics import determinant, diagnose_iteration, project
from .errors import GenerationError, StickKnotError, ValidationError
from .polygon import PolyKnot, validate

log = logging.getLogger(__name__)

MAX_REJECTIONS = 10_000


def random_polyknot(sticks: int, seed: int) -> PolyKnot:
    """Vertices uniform in the unit cube, redrawn until the polygon validates."""
    if sticks < 4:
        raise GenerationError("need at least 4 sticks")
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REJECTIONS):
        try:
            return validate(rng.random((sticks, 3)))
        except ValidationError:
            continue
    raise GenerationError(f"{MAX_REJECTIONS} consecutive rejections for seed {seed}")


@dataclass
class SweepRecord:
    instance_id: int
    seed: int
    n: int
    omega1: float
    omega2: float
    lam: float
    delta: float | None = None
    m1: int | None = None
    m2T: int | None = None
    m2A: int | None = None
    M_theory: int | None = None
    M_empirical: int | None = None
    gap: int | None = None


def empirical_level(dets: list[int], target: int) -> int | None:
    """First index from which every entry equals ``target``; None if the last one differs."""
    level = None
    for j in range(len(dets) - 1, -1, -1):
        if dets[j] != target:
            break
        level = j
    return level


def run_instance(instance_id: int, seed: int, sticks: int, jmax: int, epsilon: float = 1.0) -> SweepRecord:
    inst_seed = seed + instance_id
    p = random_polyknot(sticks, inst_seed)
    omega1, omega2, lam = norms(p)
    rec = SweepRecord(instance_id, inst_seed, len(p), omega1, omega2, lam)
    try:
        cert = compute_delta(p, epsilon)
        bounds = iterations_from_values(len(p), omega1, omega2, lam, cert.delta)
        rec.delta, rec.m1, rec.m2T, rec.m2A = cert.delta, bounds.m1, bounds.m2T, bounds.m2A
        rec.M_theory = bounds.M
    except StickKnotError as exc:
        log.warning("instance %d: no certificate (%s)", instance_id, exc)
    try:
        target = determinant(project(p.vertices, inst_seed))
        dets = [diagnose_iteration(p, j, seed=inst_seed).determinant for j in range(jmax + 1)]
        rec.M_empirical = empirical_level(dets, target)
    except StickKnotError as exc:
        log.warning("instance %d: diagnosis failed (%s)", instance_id, exc)
    if rec.M_theory is not None and rec.M_empirical is not None:
        rec.gap = rec.M_theory - rec.M_empirical
    return rec


def _run(args):
    return run_instance(*args)


def sweep(count: int, sticks: int, seed: int, jmax: int, epsilon: float = 1.0,
          workers: int = 1) -> list[SweepRecord]:
    jobs = [(i, seed, sticks, jmax, epsilon) for i in range(count)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run, jobs))
    else:
        records = [_run(job) for job in jobs]
    return sorted(records, key=lambda r: r.instance_id)


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def to_csv(records: list[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = [f.name for f in fields(SweepRecord)]
    writer.writerow(["lambda" if name == "lam" else name for name in names])
    for rec in records:
        row = asdict(rec)
        writer.writerow([_cell(row[name]) for name in names])
    return buf.getvalue()
