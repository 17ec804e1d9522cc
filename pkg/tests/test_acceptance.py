"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected into a summary section at the end of the pytest run.
"""
import math
import time

import numpy as np
import pytest

from conftest import record_criterion
from stickknot import bounds as B
from stickknot.bezier import dense_eval, polyline_param, second_diff
from stickknot.catalog import EXAMPLE_41
from stickknot.certificate import compute_delta, iterations_from_values, norms, required_iterations
from stickknot.cli import main
from stickknot.diagnostics import SAMPLES_PER_EDGE, diagnose_iteration
from stickknot.errors import CertificateDegenerateError
from stickknot.geometry import point_segment_distance
from stickknot.polygon import collinear_insert, min_edge_length, refine, refined_curve_points, validate
from stickknot.sweep import random_polyknot


def _example():
    return validate(EXAMPLE_41)


def _polygons():
    return [("example", _example())] + [(f"seed {s}", random_polyknot(7, s)) for s in range(10)]


def test_criterion_1_worked_example_integers():
    start = time.perf_counter()
    b = iterations_from_values(7, 70.8, 779.0, 9.0, 0.0032)
    elapsed = time.perf_counter() - start
    got = (b.m1, b.m2T, b.m2A, b.m2, b.M)
    ok = got == (28, 4, 5, 5, 28) and elapsed < 1.0
    record_criterion(1, "injected m1, m2T, m2A, m2, M = 28, 4, 5, 5, 28", ok,
                     f"got {got}, {elapsed:.3f} s")
    assert got == (28, 4, 5, 5, 28)
    assert elapsed < 1.0


def test_criterion_2_delta_table():
    start = time.perf_counter()
    c = compute_delta(_example(), 1.0)
    elapsed = time.perf_counter() - start
    expected = {"r1": 0.2576, "r2": 0.1288, "r3": 0.0576, "r4": 0.0096, "delta": 0.0032}
    errors = {k: abs(getattr(c, k) - v) for k, v in expected.items()}
    identities = (c.r2 == min(c.r1 / 2, c.epsilon / 2) and c.r4 == c.r3 / 6 and c.delta == c.r4 / 3)
    ok = max(errors.values()) <= 1e-3 and identities and elapsed < 1.0
    record_criterion(2, "r1..r4 and delta within 1e-3, identities exact", ok,
                     f"max error {max(errors.values()):.2e}, {elapsed:.3f} s")
    for k, err in errors.items():
        assert err <= 1e-3, k
    assert identities
    assert elapsed < 1.0


def test_criterion_3_self_computed_norms():
    omega1, omega2, lam = norms(_example())
    e1, e2, el = abs(omega1 / 70.8 - 1), abs(omega2 / 779.0 - 1), abs(lam / 9 - 1)
    ok = e1 <= 0.005 and e2 <= 0.005 and el <= 0.02
    record_criterion(3, "omega1, omega2 within 0.5%, lambda within 2%", ok,
                     f"omega1={omega1:.4f}, omega2={omega2:.3f}, lambda={lam:.4f}")
    assert e1 <= 0.005
    assert e2 <= 0.005
    assert el <= 0.02


def test_criterion_4_knot_type_trajectory():
    p = _example()
    start = time.perf_counter()
    table = {}
    for j in range(5):
        floor = SAMPLES_PER_EDGE * len(p) * 2**j
        table[j] = {diagnose_iteration(p, j, samples, seed).determinant
                    for seed in range(10) for samples in (floor, 2 * floor)}
    elapsed = time.perf_counter() - start
    expected = {0: {1}, 1: {1}, 2: {1}, 3: {1}, 4: {5}}
    ok = table == expected and elapsed < 30
    record_criterion(4, "determinants 1,1,1,1,5 at j=0..4, 10 seeds, doubled samples", ok,
                     f"{ {j: sorted(v) for j, v in table.items()} }, {elapsed:.1f} s")
    assert table == expected
    assert elapsed < 30


def _gaps(p, j, m=10_000):
    ts = np.linspace(0.0, 1.0, m)
    refined = refine(p, j)
    gap = refined_curve_points(p, j, ts) - polyline_param(refined.closed_vertices, ts)
    hod = refined.hodograph_points()
    hgap = dense_eval(hod, m) - polyline_param(hod, ts)
    return np.linalg.norm(gap, axis=1).max(), np.linalg.norm(hgap, axis=1).max()


def test_criterion_5_inequality_suite():
    worst = [0.0, 0.0]
    failures = []
    for name, p in _polygons():
        n = len(p)
        omega1, omega2, _ = norms(p)
        for j in range(7):
            gap, hgap = _gaps(p, j)
            rhs2 = B.insertion_distance_bound(n, j, omega1)
            rhs4 = B.hodograph_rate_bound(n, j, omega2)
            worst = [max(worst[0], gap / rhs2), max(worst[1], hgap / rhs4)]
            if gap > rhs2:
                failures.append(f"{name} j={j} distance {gap:.4g} > {rhs2:.4g}")
            if hgap > rhs4:
                failures.append(f"{name} j={j} hodograph {hgap:.4g} > {rhs4:.4g}")
    record_criterion(5, "sampled gaps below both bounds, j=0..6, 11 polygons", not failures,
                     f"worst ratios {worst[0]:.3f}, {worst[1]:.3f}")
    assert not failures, failures


def test_criterion_6_ratio_law():
    worst = 0.0
    for _, p in _polygons():
        base = second_diff(refine(p, 1).hodograph_points()).omega
        for j in range(1, 7):
            ratio = second_diff(refine(p, j).hodograph_points()).omega / base
            worst = max(worst, abs(ratio / 2.0 ** -(j - 1) - 1))
    ok = worst <= 1e-9
    record_criterion(6, "hodograph second-difference ratio 2^-(j-1), j=1..6", ok,
                     f"max relative error {worst:.1e}")
    assert worst <= 1e-9


def test_criterion_7_binomial_bounds():
    binom_ok = all(math.comb(2 * k, k) <= B.central_binom_upper(k) for k in range(1, 65))
    # exact check in integers: C(2k,k)^2 (2k+1) <= 16^k
    exact_ok = all(math.comb(2 * k, k) ** 2 * (2 * k + 1) <= 16**k for k in range(1, 65))
    n1_ok = all(B.n1_exact(2 * k) < k / (2 * math.sqrt(2 * k + 1)) for k in range(1, 513))
    ok = binom_ok and exact_ok and n1_ok
    record_criterion(7, "central binomial bound k<=64, N1 bound k<=512", ok)
    assert binom_ok and exact_ok
    assert n1_ok


def _hausdorff(a, b, per_edge=25):
    """Symmetric Hausdorff distance between two closed polylines, from dense samples."""
    def samples(v):
        closed = np.vstack([v, v[:1]])
        s = np.linspace(0, 1, per_edge, endpoint=False)[:, None, None]
        return (closed[:-1] + s * np.diff(closed, axis=0)).reshape(-1, 3)

    def directed(x, poly):
        edges = poly.edges()
        return max(min(point_segment_distance(q, e) for e in edges) for q in samples(x.vertices))

    return max(directed(a, b), directed(b, a))


def test_criterion_8_insertion_invariants():
    worst_on_edge, worst_hausdorff, worst_lambda = 0.0, 0.0, 0.0
    counts_ok = True
    for seed in range(100):
        p = random_polyknot(7, 1000 + seed)
        q = p
        for j in range(1, 4):
            nxt = collinear_insert(q)
            counts_ok &= len(nxt) == 7 * 2**j
            assert np.array_equal(nxt.vertices[0::2], q.vertices)
            edges = q.edges()
            for k, mid in enumerate(nxt.vertices[1::2]):
                worst_on_edge = max(worst_on_edge, point_segment_distance(mid, edges[k]))
            worst_lambda = max(worst_lambda,
                               abs(min_edge_length(nxt) / (min_edge_length(q) / 2) - 1))
            q = nxt
        worst_hausdorff = max(worst_hausdorff, _hausdorff(p, refine(p, 2)))
    ok = counts_ok and worst_on_edge <= 1e-12 and worst_hausdorff <= 1e-12 and worst_lambda <= 1e-12
    record_criterion(8, "insertion invariants on 100 random polygons", ok,
                     f"on-edge {worst_on_edge:.1e}, Hausdorff {worst_hausdorff:.1e}, "
                     f"lambda {worst_lambda:.1e}")
    assert counts_ok
    assert worst_on_edge <= 1e-12
    assert worst_hausdorff <= 1e-12
    assert worst_lambda <= 1e-12


def _integers(p, epsilon=1.0):
    b = required_iterations(p, epsilon)
    return b.m1, b.m2T, b.m2A, b.M


def test_criterion_9_scale_invariance():
    # epsilon is a length, so it is scaled together with the coordinates
    checked, mismatches, seed = 0, [], 0
    while checked < 20:
        p = random_polyknot(7, seed)
        seed += 1
        try:
            base = _integers(p)
        except CertificateDegenerateError:
            for f in (0.1, 10.0):
                with pytest.raises(CertificateDegenerateError):
                    _integers(p.scaled(f), f)
            continue
        for f in (0.1, 10.0):
            if _integers(p.scaled(f), f) != base:
                mismatches.append((seed - 1, f))
        checked += 1
    record_criterion(9, "m1, m2T, m2A, M unchanged under scaling by 0.1 and 10", not mismatches,
                     f"20 polygons from seeds 0..{seed - 1}")
    assert not mismatches


@pytest.mark.slow
def test_criterion_10_sweep(tmp_path):
    outputs, times = [], []
    for run in range(2):
        out = tmp_path / f"run{run}.csv"
        start = time.perf_counter()
        code = main(["sweep", "--count", "50", "--sticks", "7", "--jmax", "8", "-o", str(out)])
        times.append(time.perf_counter() - start)
        assert code == 0
        outputs.append(out.read_bytes())
    rows = outputs[0].decode().strip().splitlines()[1:]
    gaps = [r.split(",")[-1] for r in rows]
    ok = len(rows) == 50 and outputs[0] == outputs[1] and max(times) < 300
    record_criterion(10, "sweep 50 x 7 sticks, jmax 8: 50 rows, byte-identical reruns", ok,
                     f"{max(times):.1f} s per run, gap values {sorted(set(gaps))}")
    assert len(rows) == 50
    assert outputs[0] == outputs[1]
    assert max(times) < 300
