"""
Closed-form convergence bounds
==============================

``N1`` and its upper bound, the curve/polygon distance bound, its
collinear-insertion rate, the hodograph rate and the tangent-angle bound.

``N1`` is only defined on even arguments here. Repeated insertion
doubles the degree, so every degree past the first is even; an odd
degree is rounded up, which can only loosen the bound because ``N1``
grows with its argument.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import AngleUndefinedError, DomainError

#: Largest argument accepted by :func:`n1_exact`.
N1_EXACT_MAX = 2**10


@dataclass(frozen=True)
class BoundInputs:
    n: int
    j: int
    omega1: float
    omega2: float
    lam: float

    def __post_init__(self):
        if self.n < 4:
            raise DomainError(f"base degree must be >= 4, got {self.n}")
        if self.j < 0:
            raise DomainError(f"insertion level must be >= 0, got {self.j}")
        if not self.lam > 0:
            raise DomainError("minimum edge length must be positive")
        if self.omega1 < 0 or self.omega2 < 0:
            raise DomainError("difference norms are nonnegative")

    def distance_bound(self) -> float:
        return insertion_distance_bound(self.n, self.j, self.omega1)

    def hodograph_bound(self) -> float:
        return hodograph_rate_bound(self.n, self.j, self.omega2)


def central_binom_upper(k: int) -> float:
    """``4**k / sqrt(2k + 1)``, an upper bound on ``C(2k, k)``."""
    if k < 1:
        raise DomainError("k must be a positive integer")
    return 4.0**k / math.sqrt(2 * k + 1)


def _half(two_k: int) -> int:
    if two_k < 2 or two_k % 2:
        raise DomainError(f"N1 is defined on even arguments >= 2, got {two_k}")
    return two_k // 2


def n1_exact(two_k: int) -> float:
    """``C(2k, k) * 2k / 2**(2k + 2)``.

    Built from ``C(2k, k) / 4**k`` by the ratio ``(2i - 1) / (2i)`` so
    nothing overflows.
    """
    k = _half(two_k)
    if two_k > N1_EXACT_MAX:
        raise DomainError(f"n1_exact is limited to arguments <= {N1_EXACT_MAX}; use n1_upper")
    ratio = 1.0
    for i in range(1, k + 1):
        ratio *= (2 * i - 1) / (2 * i)
    return ratio * two_k / 4.0


def n1_upper(two_k: int) -> float:
    """``k / (2 sqrt(2k + 1))``, a strict upper bound on :func:`n1_exact`."""
    k = _half(two_k)
    return k / (2.0 * math.sqrt(2 * k + 1))


def n1(n: int) -> float:
    """``N1`` at ``n`` rounded up to even; the closed-form bound past the exact range."""
    if n < 1:
        raise DomainError("degree must be positive")
    even = n + (n % 2)
    return n1_exact(even) if even <= N1_EXACT_MAX else n1_upper(even)


def curve_polygon_bound(n: int, omega: float) -> float:
    """Sup-norm bound ``N1(n) * omega`` between a curve and its control polygon."""
    if n < 2:
        raise DomainError("degree must be >= 2")
    if omega < 0:
        raise DomainError("omega must be nonnegative")
    return n1(n) * omega


def insertion_distance_bound(n: int, j: int, omega1: float) -> float:
    """Curve/polygon gap bound after ``j`` insertions: ``n / (4 sqrt(n 2^j + 1)) * omega1``."""
    return n / (4.0 * math.sqrt(n * 2.0**j + 1.0)) * omega1


def hodograph_rate_bound(n: int, j: int, omega2: float) -> float:
    """Hodograph gap bound after ``j`` insertions.

    ``n / (2 sqrt(n 2^j + 1)) * 2^-(j-1) * omega2``
    """
    return n / (2.0 * math.sqrt(n * 2.0**j + 1.0)) * 2.0 ** (-(j - 1)) * omega2


def max_angle(a_len: float, b_len: float) -> float:
    """Worst-case angle between ``b`` and ``b + a`` given only ``|a|`` and ``|b|``.

    When ``|a| < |b|`` the angle peaks when ``a`` is orthogonal to
    ``b + a``, giving ``arcsin(|a| / |b|)``.
    """
    if a_len < 0 or not b_len > 0:
        raise DomainError("need a_len >= 0 and b_len > 0")
    if a_len >= b_len:
        raise AngleUndefinedError(f"angle bound undefined for |a|={a_len} >= |b|={b_len}")
    return math.asin(a_len / b_len)
