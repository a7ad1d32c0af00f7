"""Finite-N exact checks, large-N limits, and the difference-to-derivative
bridge.  The squared-expansion prefactor gets an exact-rational oracle."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sonine.asymptotics import (
    ConvergenceTable,
    ScaledArguments,
    anomalous_block_limit,
    appendix_findiff_limit,
    convergence_study,
    exp_family,
    finite_difference,
    hansen_ratio_sum_check,
    ij_bracket_family,
    laguerre_findiff_check,
    laguerre_fractional_integral_check,
    laguerre_limit_residual,
    laguerre_product_integral_check,
    laguerre_sum_check,
    squared_laguerre_sum_check,
)
from sonine.identities import _ij_derivative_jet
from sonine.taylor_jets import derivative_at_base


# ------------------------------------------------------------ fixtures

def frac_laguerre(n, a, z):
    """L_n^a(z) in exact rational arithmetic (three-term recurrence)."""
    a, z = Fraction(a), Fraction(z)
    prev, cur = Fraction(1), 1 + a - z
    if n == 0:
        return prev
    for m in range(1, n):
        prev, cur = cur, ((2 * m + 1 + a - z) * cur - (m + a) * prev) / (m + 1)
    return cur


def frac_poch(a, n):
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(a) + i
    return out


# ------------------------------------------------------- ScaledArguments

def test_scaled_arguments():
    s = ScaledArguments(2.0, 3.0, 4)
    assert s.X == pytest.approx(4.0 / 16.0)
    assert s.Y == pytest.approx(9.0 / 16.0)
    assert ScaledArguments(1.0, 1.0, 2 ** 10).N == 1024
    with pytest.raises(ValueError):
        ScaledArguments(1.0, 1.0, 0)
    with pytest.raises(ValueError):
        ScaledArguments(1.0, 1.0, 2.5)


# ------------------------------------------------- finite differences

def test_finite_difference_known_values():
    # forward differences of m^2 at step 1: second difference is exactly 2
    assert finite_difference(lambda m: float(m * m), 5, 2) == 2.0
    assert finite_difference(lambda m: float(m * m), 5, 3) == 0.0
    assert finite_difference(lambda m: float(m), 0, 1) == 1.0
    assert finite_difference(lambda m: 3.0, 7, 0) == 3.0


@given(st.integers(min_value=0, max_value=10), st.integers(min_value=0, max_value=6),
       st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
@settings(max_examples=40)
def test_finite_difference_is_linear(m, k, c1, c2):
    f = lambda i: math.sin(0.3 * i)
    g = lambda i: 1.0 / (1.0 + i)
    combo = finite_difference(lambda i: c1 * f(i) + c2 * g(i), m, k)
    split = c1 * finite_difference(f, m, k) + c2 * finite_difference(g, m, k)
    assert combo == pytest.approx(split, rel=1e-10, abs=1e-12)


def test_laguerre_findiff_sample():
    # differences against argument-derivatives of the generating sequence;
    # the acceptance suite runs the full m + k <= 30 grid
    for m, k, a, x in [(0, 1, 0.5, 2.0), (5, 3, -1.0, 0.5), (10, 10, -3.0, 10.0),
                       (12, 2, 2.0, 2.0)]:
        assert laguerre_findiff_check(m, k, a, x) < 1e-12


# ------------------------------------------------- exact finite sums

def test_laguerre_sum_exactness():
    for a, b, x, y, n in [(0.5, 0.25, 2.0, 2.0, 8), (-2.0, 1.0, 3.0, 1.0, 12),
                          (0.0, 0.0, 1.0, 4.0, 32)]:
        assert laguerre_sum_check(a, b, x, y, n) < 1e-13


def test_laguerre_sum_oracle_in_rationals():
    # independent confirmation at small size: sum L_m^a(X) L_{N-m}^b(Y)
    # equals L_N^{a+b+1}(X+Y) exactly
    a, b = Fraction(1, 2), Fraction(1, 4)
    X, Y = Fraction(1, 3), Fraction(2, 5)
    N = 5
    lhs = sum(frac_laguerre(m, a, X) * frac_laguerre(N - m, b, Y)
              for m in range(N + 1))
    rhs = frac_laguerre(N, a + b + 1, X + Y)
    assert lhs == rhs


def test_hansen_ratio_sum():
    for a, b, x, n in [(0.5, 0.25, 2.0, 8), (2.0, -1.0, 1.0, 16), (1.5, 1.5, 3.0, 24)]:
        assert hansen_ratio_sum_check(a, b, x, n) < 1e-13
    with pytest.raises(ValueError):
        hansen_ratio_sum_check(-2.0, 0.5, 1.0, 8)


def test_squared_sum_prefactor_oracle():
    # exact-rational discrimination of the (N+nu)! prefactor: with the
    # factorial the identity closes exactly; with the bare (N+nu) it does not
    nu, N = 1, 2
    X = Fraction(3, 7)
    lhs = Fraction(0)
    for m in range(N + 1):
        coeff = (frac_poch(-N, m) * frac_poch(Fraction(2 * nu + 1, 2), m)
                 / (math.factorial(m) * frac_poch(Fraction(1, 2) - N, m)))
        lhs += coeff * frac_laguerre(2 * m + 2 * nu, -2 * nu, 2 * X)
    lag = frac_laguerre(N + nu, -nu, X)
    pre = Fraction(1) / (frac_poch(Fraction(1, 2), N) * frac_poch(Fraction(1, 2), nu))
    assert lhs == math.factorial(N + nu) * pre * lag * lag
    assert lhs != (N + nu) * pre * lag * lag


def test_squared_sum_check():
    for nu, x, n in [(0, 2.0, 8), (1, 1.0, 12), (2, 3.0, 16), (3, 2.0, 24)]:
        assert squared_laguerre_sum_check(nu, x, n) < 1e-12
    with pytest.raises(ValueError):
        squared_laguerre_sum_check(-1, 1.0, 4)
    with pytest.raises(ValueError):
        squared_laguerre_sum_check(1.5, 1.0, 4)


def test_integral_checks_at_finite_n():
    assert laguerre_fractional_integral_check(0.5, 1.5, 2.0, 6) < 1e-12
    assert laguerre_fractional_integral_check(-0.5, 0.75, 1.0, 10) < 1e-12
    assert laguerre_product_integral_check(0.5, 0.25, 3, 4, 8) < 1e-12
    assert laguerre_product_integral_check(0.0, 2.0, 0, 5, 4) < 1e-12


# ------------------------------------------------------ large-N limits

def test_laguerre_limit_residual_shrinks():
    r64 = laguerre_limit_residual(0.5, 2.0, 1.0, 64)
    r512 = laguerre_limit_residual(0.5, 2.0, 1.0, 512)
    assert r512 < r64 / 4.0
    assert r512 < 1e-3


def test_anomalous_block_guard():
    with pytest.raises(ValueError):
        anomalous_block_limit(-8.0, 0.0, 1.0, 2.0, 4)   # N < n
    finite, limit = anomalous_block_limit(-2.0, 0.0, 2.0, 3.0, 256)
    assert finite == pytest.approx(limit, rel=2e-2)


def test_convergence_rates():
    t = convergence_study("laguerre-limit", [64, 128, 256, 512, 1024],
                          {"alpha": 0.0, "x": 2.0, "r": 1.0})
    assert -1.5 < t.fitted_rate < -0.6
    t2 = convergence_study("anomalous-block", [64, 128, 256, 512, 1024],
                           {"alpha": -2.0, "beta": 0.0, "x": 2.0, "y": 3.0})
    assert -1.5 < t2.fitted_rate < -0.6


def test_convergence_sentinels_and_validation():
    # the finite sums are exact at double precision: every error is zero
    # and the fitted rate reports -inf rather than a fake slope
    t = convergence_study("laguerre-sum", [4, 8, 16],
                          {"alpha": 0.5, "beta": 0.25, "x": 2.0, "y": 2.0})
    assert t.fitted_rate == -math.inf
    with pytest.raises(ValueError):
        convergence_study("no-such-target", [4, 8, 16], {})
    with pytest.raises(ValueError):
        convergence_study("laguerre-limit", [64], {"alpha": 0.0, "x": 2.0, "r": 1.0})


def test_convergence_table_csv():
    t = convergence_study("laguerre-limit", [64, 128, 256],
                          {"alpha": 0.0, "x": 2.0, "r": 1.0})
    lines = t.to_csv().strip().splitlines()
    assert lines[0] == "N,finite_value,limit_value,abs_error"
    assert len(lines) == 5  # header + 3 rows + fitted_rate
    assert lines[-1].startswith("fitted_rate,")


# ------------------------------------------- difference-to-derivative

def test_exp_family_telescopes_exactly():
    # N^p Δ^p (1+w)^l at l = N collapses to z^p (1+z/N)^N in closed form
    for p in (0, 1, 2):
        for z in (0.5, 1.0, 2.0):
            N = 64
            finite, limit = appendix_findiff_limit(exp_family, p, z, N)
            want = z ** p * (1.0 + z / N) ** N
            assert finite == pytest.approx(want, rel=1e-12)
            assert limit == pytest.approx(z ** p * math.exp(z), rel=1e-14)
            # leading error term of (1+z/N)^N is z^2/2N relative
            rel = abs(finite - limit) / abs(limit)
            assert rel == pytest.approx(z * z / (2.0 * N), rel=0.25)


def test_ij_bracket_family_connects_to_jets():
    fam = ij_bracket_family(2.0, -2.0, 3.0)
    jet = _ij_derivative_jet(2.0, 3.0, 2)
    assert fam.limit_derivative(1.0, 1) == pytest.approx(
        derivative_at_base(jet, 1), rel=1e-12)
    finite, limit = appendix_findiff_limit(fam, 1, 1.0, 512)
    assert finite == pytest.approx(limit, rel=5e-2)
