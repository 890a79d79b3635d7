"""Limit laws for preferential-attachment trees and the hypoenergy constants.

Rational laws are returned as :class:`fractions.Fraction` so that identities
between them can be tested exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MERGE_SAVING = 4.0 - 2.0 * math.sqrt(2.0)


class BracketError(ValueError):
    pass


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class SeriesValue:
    value: float
    truncation_bound: float
    terms_used: int


def degree_fraction_limit(d: int) -> Fraction:
    """Limiting share of degree-``d`` vertices in a linear BA tree."""
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    return Fraction(4, d * (d + 1) * (d + 2))


def degree_tail(m: int) -> Fraction:
    """Limiting share of vertices with degree above ``m``."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    return Fraction(2, (m + 1) * (m + 2))


def edge_pair_limit(k: int, l: int) -> Fraction:
    """Limiting share of edges joining degrees ``k <= l`` in a linear BA tree."""
    if k < 1 or k > l:
        raise ValueError(f"need 1 <= k <= l, got ({k}, {l})")
    s = k + l
    return Fraction(4 * (l - 1), k * (k + 1) * s * (s + 1) * (s + 2)) + Fraction(
        12 * (l - 1), k * (s - 1) * s * (s + 1) * (s + 2)
    )


def series_constant(tol: float) -> SeriesValue:
    """``2 * sum_d 4 sqrt(d-1) / (d (d+1) (d+2))``, the asymptotic star-bound ratio.

    Term ``d`` is below ``8 d**-2.5`` (use sqrt(d-1) < sqrt(d) and
    d(d+1)(d+2) > d**3), and ``sum_{d>M} d**-2.5 <= int_M^inf x**-2.5 dx``,
    so the remainder after ``M`` terms is at most ``16 / (3 M**1.5)``.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    m = max(2, math.ceil((16.0 / (3.0 * tol)) ** (2.0 / 3.0)))
    d = np.arange(1, m + 1, dtype=np.float64)
    terms = 8.0 * np.sqrt(d - 1.0) / (d * (d + 1.0) * (d + 2.0))
    return SeriesValue(math.fsum(terms), 16.0 / (3.0 * m**1.5), m)


def corrected_constant(tol: float) -> SeriesValue:
    """Series constant less the guaranteed degree-2 merge saving, ``(4 - 2 sqrt 2) / 135``."""
    base = series_constant(tol)
    return SeriesValue(base.value - MERGE_SAVING / 135.0, base.truncation_bound, base.terms_used)


def _survival(alpha: float, s: float, d_max: int) -> np.ndarray:
    """``P_d = prod_{i<=d} i**a / (s + i**a)`` for ``d = 1..d_max``."""
    i = np.arange(1, d_max + 1, dtype=np.float64)
    # log-space product keeps tiny values finite
    return np.exp(np.cumsum(-np.log1p(s * i ** (-alpha))))


def _tail_bound(alpha: float, s: float, d_max: int, last: float) -> float:
    # ratios P_{d+1}/P_d = 1/(1 + s d**-alpha) increase with d; bound each
    # doubling block (D, 2D] geometrically with its largest ratio
    total = 0.0
    lo, p_lo = d_max, last
    for _ in range(200):
        hi = 2 * lo
        rho = 1.0 / (1.0 + s * hi ** (-alpha))
        if rho >= 1.0:
            return math.inf
        total += p_lo * rho / (1.0 - rho)
        p_lo *= rho ** (hi - lo)
        lo = hi
        if p_lo * (1.0 + hi**alpha / s) < 1e-300:
            return total
    return math.inf


def sublinear_degree_law(alpha: float, d_max: int, tol: float) -> tuple[float, list[float]]:
    """Degree law ``q(d) = (s / d**a) prod_{i<=d} i**a / (s + i**a)`` for ``0 <= a < 1``.

    ``q`` telescopes (``q(d) = P_{d-1} - P_d``), so it sums to 1 for every
    ``s > 0``; ``s`` is fixed by the self-consistency ``s = sum_d d**a q(d)``,
    i.e. ``sum_d P_d(s) = 1``. The truncated left side is strictly decreasing
    in ``s`` and is solved by bisection. At ``a = 0`` this gives ``s = 1`` and
    ``q(d) = 2**-d``.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"need 0 <= alpha < 1, got {alpha}")
    if d_max < 2 or not tol > 0:
        raise ValueError("need d_max >= 2 and tol > 0")

    def f(s: float) -> float:
        return math.fsum(_survival(alpha, s, d_max)) - 1.0

    lo, hi = 1e-6, 2.0
    if f(lo) <= 0:
        raise BracketError(f"F(s) not positive at s={lo}")
    while f(hi) >= 0:
        hi *= 2.0
        if hi > 1e12:
            raise BracketError("could not bracket the root of F(s)")
    while hi - lo > tol * max(1.0, lo):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            lo = mid
        else:
            hi = mid
    s = 0.5 * (lo + hi)

    surv = _survival(alpha, s, d_max)
    tail_p = _tail_bound(alpha, s, d_max, float(surv[-1]))
    if surv[-1] > tol or tail_p > tol:
        raise TruncationError(
            f"d_max={d_max} too small: mass beyond it is {surv[-1]:.3g}, survival tail {tail_p:.3g}"
        )
    prev = np.concatenate(([1.0], surv[:-1]))
    d = np.arange(1, d_max + 1, dtype=np.float64)
    # s P_{d-1} / (s + d**a) equals P_{d-1} - P_d without the cancellation
    return s, (s * prev / (s + d**alpha)).tolist()
