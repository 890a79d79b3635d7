import math
from fractions import Fraction

import numpy as np
import pytest

from grafen.asymptotics import (
    MERGE_SAVING,
    BracketError,
    TruncationError,
    _survival,
    corrected_constant,
    degree_fraction_limit,
    degree_tail,
    edge_pair_limit,
    series_constant,
    sublinear_degree_law,
)


def test_degree_law_values():
    assert degree_fraction_limit(1) == Fraction(2, 3)
    assert degree_fraction_limit(2) == Fraction(1, 6)
    assert degree_tail(0) == 1
    assert degree_tail(1) == Fraction(1, 3)
    assert degree_tail(100) == Fraction(2, 10302)
    with pytest.raises(ValueError):
        degree_fraction_limit(0)
    with pytest.raises(ValueError):
        degree_tail(-1)


def test_degree_partial_sums_exact():
    total = Fraction(0)
    for m in range(1, 10_001):
        total += degree_fraction_limit(m)
        if m in (1, 2, 3, 10, 100, 1000, 10_000) or m % 997 == 0:
            assert total == 1 - degree_tail(m)
    assert total + degree_tail(10_000) == 1


def test_edge_pair_limit_values():
    assert edge_pair_limit(2, 2) == Fraction(1, 45)
    assert edge_pair_limit(1, 2) == Fraction(2, 15)
    assert edge_pair_limit(1, 1) == 0
    with pytest.raises(ValueError):
        edge_pair_limit(3, 2)
    with pytest.raises(ValueError):
        edge_pair_limit(0, 2)


def test_edge_pair_limit_total_is_at_most_one():
    total = sum(edge_pair_limit(k, l) for k in range(1, 80) for l in range(k, 80))
    assert 0 < total <= 1


def test_series_constant():
    sv = series_constant(1e-6)
    assert sv.truncation_bound <= 1e-6
    assert abs(sv.value - 1.00576755) <= 1e-6 + 5e-9
    # the first terms: d=1 is zero, d=2 adds 1/3
    assert series_constant(16 / 3 / 2**1.5).terms_used == 2
    assert series_constant(16 / 3 / 2**1.5).value == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        series_constant(0)


def test_series_tail_bound_is_certified():
    coarse = series_constant(1e-3)
    fine = series_constant(1e-8)
    assert 0 <= fine.value - coarse.value <= coarse.truncation_bound
    # doubling the cut-off: the change stays below the certified tail
    m = coarse.terms_used
    d = np.arange(m + 1, 2 * m + 1, dtype=np.float64)
    extra = math.fsum(8 * np.sqrt(d - 1) / (d * (d + 1) * (d + 2)))
    assert extra <= coarse.truncation_bound


def base_minus(cv):
    return series_constant(1e-6).value - cv.value


def test_corrected_constant():
    cv = corrected_constant(1e-6)
    assert abs(cv.value - 0.997089) <= 2e-6
    assert MERGE_SAVING / 135 == pytest.approx(0.00867832, abs=1e-8)
    assert base_minus(cv) == pytest.approx(MERGE_SAVING / 135, abs=1e-15)
    assert cv.value < 1
    assert cv.truncation_bound <= 1e-6


def test_sublinear_law_alpha_zero_is_geometric():
    s, q = sublinear_degree_law(0.0, 80, 1e-12)
    assert s == pytest.approx(1.0, abs=1e-9)
    assert np.allclose(q, [2.0**-d for d in range(1, 81)], atol=1e-12)


def test_sublinear_law_alpha_half():
    tol = 1e-8
    s, q = sublinear_degree_law(0.5, 400, tol)
    q = np.array(q)
    assert np.all(q > 0)
    assert abs(q.sum() - 1) <= 2 * tol
    assert np.all(np.diff(q[5:]) < 0)
    # self-consistency defining s
    d = np.arange(1, len(q) + 1)
    assert abs(np.sum(d**0.5 * q) - s) <= 1e-6


def test_sublinear_law_approaches_linear_case():
    # as alpha -> 1, s -> 2 and q -> 4/(d(d+1)(d+2)); check the trend
    s_lo, _ = sublinear_degree_law(0.3, 400, 1e-8)
    s_hi, _ = sublinear_degree_law(0.7, 3000, 1e-8)
    assert 1.0 < s_lo < s_hi < 2.0


def test_sublinear_law_stable_under_doubling():
    tol = 1e-9
    s1, _ = sublinear_degree_law(0.5, 300, tol)
    s2, _ = sublinear_degree_law(0.5, 600, tol)
    assert abs(s1 - s2) <= 2 * tol * max(1, s1)


def test_sublinear_objective_is_monotone():
    grid = np.linspace(0.1, 10, 60)
    vals = [math.fsum(_survival(0.5, s, 400)) for s in grid]
    assert np.all(np.diff(vals) < 0)


def test_sublinear_law_errors():
    with pytest.raises(TruncationError):
        sublinear_degree_law(0.9, 50, 1e-8)
    with pytest.raises(ValueError):
        sublinear_degree_law(1.0, 100, 1e-8)
    with pytest.raises(ValueError):
        sublinear_degree_law(0.5, 1, 1e-8)
    assert issubclass(BracketError, ValueError)
