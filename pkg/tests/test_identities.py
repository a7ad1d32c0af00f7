"""Residual checks for each identity operation, their cross-relations, and
the precondition guards."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from sonine.identities import (
    IDENTITIES,
    IdentityParams,
    IdentityReport,
    fractional_integral_identity,
    ij_anomalous_closed_form,
    ij_generalized,
    ij_identity,
    list_identity_ids,
    order_sum_identity,
    pi_identity,
    sonine_generalized,
    sonine_second,
)
from sonine.identities import _ij_anomalous_via_jets
from sonine.special_functions import bessel_i, bessel_j, gamma, scaled_bessel_j


# ----------------------------------------------------------- plumbing

def test_registry_is_complete_and_ordered():
    assert list_identity_ids() == [
        "sonine-second", "sonine-generalized", "ij", "ij-generalized",
        "pi", "order-sum", "fractional-integral",
    ]
    for op in IDENTITIES.values():
        assert callable(op)


def test_params_validation():
    IdentityParams(alpha=0.5, beta=0.5, x=1.0, y=2.0)
    with pytest.raises(ValueError):
        IdentityParams(x=0.0)          # arguments must be positive
    with pytest.raises(ValueError):
        IdentityParams(x=26.0)         # and inside the supported range
    with pytest.raises(ValueError):
        IdentityParams(alpha=12.0, x=1.0)
    with pytest.raises(ValueError):
        IdentityParams(y=-3.0)


def test_report_residual_bookkeeping():
    rep = sonine_second(IdentityParams(alpha=0.5, beta=0.25, x=3.0, y=4.0))
    assert isinstance(rep, IdentityReport)
    assert rep.abs_residual == abs(rep.lhs - rep.rhs)
    assert rep.rel_residual == rep.abs_residual / max(abs(rep.lhs), abs(rep.rhs))
    assert rep.status == "pass"
    assert rep.anomalous == 0.0


def test_tolerance_controls_the_verdict():
    rep = sonine_second(IdentityParams(alpha=0.5, beta=0.25, x=3.0, y=4.0),
                        tol_abs=1e-30, tol_rel=1e-30)
    # nothing is that accurate in floating point; the op must say fail,
    # not round its own residual away
    assert rep.status == "fail"
    assert rep.abs_residual > 0.0


# --------------------------------------------------- sonine integrals

def test_sonine_second_reference_points():
    for a, b, x, y in [(0.5, 0.25, 3.0, 4.0), (0.0, 0.0, 2.0, 5.0),
                       (1.5, 2.5, 8.0, 3.0), (-0.5, -0.75, 6.0, 6.0)]:
        rep = sonine_second(IdentityParams(alpha=a, beta=b, x=x, y=y))
        assert rep.status == "pass"
        # small-magnitude points (lhs ~ 1e-6 at (1.5, 2.5, 8, 3)) live on
        # the absolute bar, so assert that rather than a relative one
        assert rep.abs_residual < 1e-13
        h = math.hypot(x, y)
        assert rep.rhs == pytest.approx(
            2.0 * float(scaled_bessel_j(a + b + 1.0, h)), rel=1e-15)


def test_sonine_second_rejects_low_orders():
    with pytest.raises(ValueError):
        sonine_second(IdentityParams(alpha=-1.0, beta=0.0, x=1.0, y=1.0))
    with pytest.raises(ValueError):
        sonine_second(IdentityParams(alpha=0.0, beta=-2.0, x=1.0, y=1.0))
    with pytest.raises(ValueError):
        sonine_second(IdentityParams(alpha=0.0, beta=-1.5, x=1.0, y=1.0))


def test_generalized_is_half_of_classical_on_shared_orders():
    p = IdentityParams(alpha=0.75, beta=1.25, x=4.0, y=2.0)
    classical = sonine_second(p)
    general = sonine_generalized(p)
    assert 2.0 * general.lhs == pytest.approx(classical.lhs, rel=1e-14)
    assert general.anomalous == 0.0
    assert general.status == "pass"


def test_sonine_swap_symmetry():
    a = sonine_second(IdentityParams(alpha=0.5, beta=1.5, x=3.0, y=7.0))
    b = sonine_second(IdentityParams(alpha=1.5, beta=0.5, x=7.0, y=3.0))
    assert a.lhs == pytest.approx(b.lhs, rel=1e-13)
    assert a.rhs == pytest.approx(b.rhs, rel=1e-15)


def test_anomalous_correction_at_alpha_minus_one():
    # with (alpha, beta) = (-1, 0) the correction collapses to J_0(y) --
    # the Bessel argument comes from the side opposite the negative order --
    # and the whole identity reduces to J_0(hypot) - J_0(y)
    x, y = 4.0, 3.0
    rep = sonine_generalized(IdentityParams(alpha=-1.0, beta=0.0, x=x, y=y))
    j0h = float(bessel_j(0.0, 5.0))
    j0y = float(bessel_j(0.0, 3.0))
    assert rep.anomalous == pytest.approx(j0y, rel=1e-14)
    assert rep.rhs == pytest.approx(j0h - j0y, rel=1e-14)
    assert rep.lhs == pytest.approx(j0h - j0y, rel=1e-10)
    assert rep.status == "pass"
    # mirrored orders move the correction to the x argument
    mirrored = sonine_generalized(IdentityParams(alpha=0.0, beta=-1.0, x=x, y=y))
    assert mirrored.anomalous == pytest.approx(float(bessel_j(0.0, 4.0)), rel=1e-14)
    assert mirrored.status == "pass"


def test_anomalous_corrections_both_sides():
    rep = sonine_generalized(IdentityParams(alpha=-2.0, beta=-1.0, x=3.0, y=4.0))
    assert rep.status == "pass"
    assert rep.anomalous != 0.0
    # corrections from both orders contribute; removing either breaks it
    lhs_only_main = abs(rep.lhs - (rep.rhs + rep.anomalous))
    assert lhs_only_main > 1e3 * rep.abs_residual


def test_generalized_rejects_non_integer_below_minus_one():
    with pytest.raises(ValueError):
        sonine_generalized(IdentityParams(alpha=-1.5, beta=0.0, x=1.0, y=1.0))


@given(st.floats(min_value=-0.9, max_value=4.0),
       st.floats(min_value=-0.9, max_value=4.0),
       st.floats(min_value=0.5, max_value=10.0),
       st.floats(min_value=0.5, max_value=10.0))
@settings(max_examples=15, deadline=None)
def test_sonine_residual_property(a, b, x, y):
    rep = sonine_generalized(IdentityParams(alpha=a, beta=b, x=x, y=y))
    assert rep.abs_residual <= max(1e-9, 1e-9 * max(abs(rep.lhs), abs(rep.rhs)))


# ------------------------------------------------- I-J mixed kernels

def test_ij_reference_points():
    for a, b, x in [(1.0, 0.0, 2.0), (2.0, 0.5, 5.0), (4.0, 2.5, 0.5),
                    (3.0, 1.0, 8.0)]:
        rep = ij_identity(IdentityParams(alpha=a, beta=b, x=x))
        assert rep.status == "pass", (a, b, x, rep.abs_residual)
        want = float(bessel_j(a, x)) / gamma(0.5 * (a + b) + 1.0)
        assert rep.rhs == pytest.approx(want, rel=1e-14)


def test_ij_preconditions():
    with pytest.raises(ValueError):
        ij_identity(IdentityParams(alpha=2.0, beta=2.0, x=3.0))
    with pytest.raises(ValueError):
        ij_identity(IdentityParams(alpha=1.0, beta=2.0, x=3.0))
    with pytest.raises(ValueError):
        ij_identity(IdentityParams(alpha=-0.5, beta=0.0, x=3.0))  # wants alpha >= 0


def test_jet_derivatives_match_handwritten_corrections():
    # orders -1, -2, -3 have hand-derived Bessel closed forms; the jet
    # route must reproduce them beyond the identity tolerance
    for a in (0.5, 1.0, 2.5, 4.0, -1.0, -2.0):
        for x in (0.5, 2.0, 6.0):
            for n in (1, 2, 3):
                got = _ij_anomalous_via_jets(float(a), x, n)
                want = ij_anomalous_closed_form(float(a), -n, x)
                assert got == pytest.approx(want, rel=1e-10), (a, x, n)


def test_closed_form_guard():
    with pytest.raises(ValueError):
        ij_anomalous_closed_form(1.0, -4, 2.0)


def test_ij_generalized_reference_points():
    for a, b, x in [(0.5, -1.0, 2.0), (1.0, -2.0, 3.0), (2.0, -3.0, 6.0),
                    (4.0, -5.0, 2.0), (-1.0, -2.0, 3.0), (-2.0, -3.0, 4.0)]:
        rep = ij_generalized(IdentityParams(alpha=a, beta=b, x=x))
        assert rep.status == "pass", (a, b, x, rep.abs_residual)
        assert rep.anomalous != 0.0


def test_ij_generalized_beta_minus_one_reduces_to_bessel_i():
    rep = ij_generalized(IdentityParams(alpha=2.0, beta=-1.0, x=3.0))
    assert rep.anomalous == pytest.approx(float(bessel_i(2.0, 3.0)), rel=1e-12)


def test_ij_generalized_preconditions():
    with pytest.raises(ValueError):
        ij_generalized(IdentityParams(alpha=1.0, beta=-1.5, x=2.0))
    with pytest.raises(ValueError):
        ij_generalized(IdentityParams(alpha=1.0, beta=0.5, x=2.0))
    with pytest.raises(ValueError):
        ij_generalized(IdentityParams(alpha=-2.0, beta=-2.0, x=2.0))


# ------------------------------------------------------ other kernels

def test_pi_identity_statuses():
    integer = pi_identity(IdentityParams(nu=2.0, x=3.0))
    assert integer.status == "pass"
    fractional = pi_identity(IdentityParams(nu=1.3, x=3.0))
    assert fractional.status == "conjecture-pass"
    assert fractional.rel_residual < 1e-11
    assert integer.rhs == pytest.approx(
        math.pi * float(bessel_j(2.0, 3.0)) ** 2, rel=1e-15)


def test_pi_identity_guard():
    with pytest.raises(ValueError):
        pi_identity(IdentityParams(nu=-0.5, x=1.0))
    with pytest.raises(ValueError):
        pi_identity(IdentityParams(nu=-2.0, x=1.0))


def test_order_sum_reference_points():
    for a, x, y in [(0.5, 5.0, 2.0), (-2.0, 8.0, 3.0), (3.0, 10.0, 4.0),
                    (-0.5, 4.0, 1.0)]:
        rep = order_sum_identity(IdentityParams(alpha=a, x=x, y=y))
        assert rep.status == "pass", (a, x, y, rep.abs_residual)
        h = math.hypot(x, y)
        assert rep.rhs == pytest.approx(float(scaled_bessel_j(a, h)), rel=1e-15)


def test_fractional_integral_beta_one_is_the_classic_recurrence():
    # at beta = 1 the weight collapses and the result is x^{alpha+1} J_{alpha+1}
    a, x = 1.5, 4.0
    rep = fractional_integral_identity(IdentityParams(alpha=a, beta=1.0, x=x))
    assert rep.status == "pass"
    assert rep.rhs == pytest.approx(x ** (a + 1.0) * float(bessel_j(a + 1.0, x)),
                                    rel=1e-14)


def test_fractional_integral_guards():
    with pytest.raises(ValueError):
        fractional_integral_identity(IdentityParams(alpha=-1.0, beta=1.0, x=2.0))
    with pytest.raises(ValueError):
        fractional_integral_identity(IdentityParams(alpha=0.5, beta=0.0, x=2.0))


def test_missing_parameters_are_reported():
    with pytest.raises(ValueError, match="y"):
        sonine_second(IdentityParams(alpha=0.5, beta=0.5, x=1.0))
    with pytest.raises(ValueError, match="nu"):
        pi_identity(IdentityParams(x=1.0))
