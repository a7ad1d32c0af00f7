"""Residual checks for a catalog of definite-integral Bessel identities.

Every operation computes both sides of one identity independently — the
integral side through :mod:`sonine.quadrature`, the closed side through the
series kernels in :mod:`sonine.special_functions` — and reports LHS − RHS
with explicit anomalous-term bookkeeping.  "Anomalous" refers to the finite
correction sums (or derivative terms) that appear whenever an order is a
negative integer; they are computed exactly, never absorbed numerically.

Integrands are factorized before quadrature: the power-law endpoint behavior
r^e (1-r)^f is kept symbolic in an :class:`EndpointProfile` while the Bessel
factors enter through their scaled forms z^{-a} J_a(z), which are entire in
z**2.  Constants (powers of x, y, 2 and reflection signs) are pulled outside
the integral so the kernel sees only O(1) structure.

Stable identity ids: ``sonine-second``, ``sonine-generalized``, ``ij``,
``ij-generalized``, ``pi``, ``order-sum``, ``fractional-integral``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from .special_functions import (
    Order,
    OrderLike,
    _as_order,
    _scaled_series_dd,
    bessel_i,
    bessel_j,
    gamma,
    generalized_binomial,
    reciprocal_gamma,
    scaled_bessel_j,
)
from .taylor_jets import (
    MAX_JET_ORDER,
    bessel_i_of_sqrt_jet,
    derivative_at_base,
    jet_arith,
    jet_power,
    jet_variable,
)
from .quadrature import (
    EndpointProfile,
    QuadratureResult,
    _tanh_sinh_pairs,
    integrate_identity_kernel,
)

__all__ = [
    "IdentityParams",
    "IdentityReport",
    "sonine_second",
    "sonine_generalized",
    "ij_identity",
    "ij_generalized",
    "pi_identity",
    "order_sum_identity",
    "fractional_integral_identity",
    "ij_anomalous_closed_form",
    "sonine_discontinuity_jump",
    "IDENTITIES",
    "list_identity_ids",
]

#: Default pass bar: quadrature at 1e-12 plus series kernels at ~1e-14
#: across products leaves 1e-9 as a safe, still-stringent residual target.
DEFAULT_TOL_ABS = 1e-9
DEFAULT_TOL_REL = 1e-9

#: Default absolute tolerance handed to the quadrature layer.
DEFAULT_QUAD_TOL = 1e-12


def _scaled_quad_tol(quad_tol: float, const: float) -> float:
    """Tolerance for a raw [0,1] integral later multiplied by ``const``.

    The residual budget lives in final (identity) units; a prefactor like
    x^α can exceed 1e10, so the raw integral must be resolved that much
    more finely or the scaled quadrature error swamps the residual.
    """
    return quad_tol / max(1.0, abs(const))

_ARGUMENT_MAX = 25.0
_ORDER_MIN, _ORDER_MAX = -6.0, 10.0

#: Endpoint exponents in (-1, -0.9] get the series/quadrature split: a node
#: scheme alone cannot see the integrable mass hiding below ~1e-305.
_SPLIT_EXPONENT = -0.9
_SPLIT_POINT = 0.1
_SPLIT_SERIES_ORDER = 24


@dataclass(frozen=True)
class IdentityParams:
    """Parameter point of one identity check.

    Which fields are required depends on the identity; arguments must lie in
    (0, 25] and order values in [-6, 10].  Plain numbers passed for
    ``alpha``/``beta``/``nu`` are coerced to :class:`Order`, which snaps
    values within 1e-12 of a negative integer onto the exact integer (the
    anomalous-term machinery needs to know).
    """

    alpha: Optional[Order] = None
    beta: Optional[Order] = None
    x: Optional[float] = None
    y: Optional[float] = None
    nu: Optional[Order] = None

    def __post_init__(self):
        for name in ("alpha", "beta", "nu"):
            value = getattr(self, name)
            if value is None:
                continue
            order = _as_order(value)
            if not (_ORDER_MIN <= order.value <= _ORDER_MAX):
                raise ValueError(
                    f"{name}={order.value} outside order domain [{_ORDER_MIN}, {_ORDER_MAX}]"
                )
            object.__setattr__(self, name, order)
        for name in ("x", "y"):
            value = getattr(self, name)
            if value is None:
                continue
            value = float(value)
            if not (0.0 < value <= _ARGUMENT_MAX):
                raise ValueError(f"{name}={value} outside (0, {_ARGUMENT_MAX}]")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one residual check.

    ``anomalous`` is the total anomalous-term contribution entering the
    identity (0.0 when no order is a negative integer).  ``rel_residual`` is
    abs_residual / max(|lhs|, |rhs|, 1e-30).  ``quadrature_error`` carries the
    integration (or series-truncation) error estimate, enlarged by any
    internal cross-check discrepancy.  ``status`` is one of ``pass``,
    ``fail``, ``conjecture-pass``, ``error`` (the last only ever attached by
    suite runners catching exceptions).
    """

    identity_id: str
    params: IdentityParams
    lhs: float
    rhs: float
    anomalous: float
    abs_residual: float
    rel_residual: float
    quadrature_error: float
    status: str


def _need(params: IdentityParams, *names: str):
    missing = [n for n in names if getattr(params, n) is None]
    if missing:
        raise ValueError(f"missing required parameter(s): {', '.join(missing)}")


def _assemble(
    identity_id: str,
    params: IdentityParams,
    lhs: float,
    rhs: float,
    anomalous: float,
    quadrature_error: float,
    tol_abs: float,
    tol_rel: float,
    conjecture: bool = False,
) -> IdentityReport:
    abs_residual = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_residual = abs_residual / max(scale, 1e-30)
    ok = abs_residual <= max(tol_abs, tol_rel * scale)
    if ok:
        status = "conjecture-pass" if conjecture else "pass"
    else:
        status = "fail"
    return IdentityReport(
        identity_id=identity_id,
        params=params,
        lhs=lhs,
        rhs=rhs,
        anomalous=anomalous,
        abs_residual=abs_residual,
        rel_residual=rel_residual,
        quadrature_error=quadrature_error,
        status=status,
    )


# --------------------------------------------------------------------------
# scaled-kernel evaluators, vectorized over quadrature abscissae
# --------------------------------------------------------------------------

def _sj_of_q(a: float, q):
    """x^{-a} J_a(x) as a function of q = x^2/4 (entire in q)."""
    hi, lo = _scaled_series_dd(a, np.asarray(q, dtype=float), 0.0, -1.0)
    return hi + lo


def _si_of_q(a: float, q):
    """x^{-a} I_a(x) as a function of q = x^2/4."""
    hi, lo = _scaled_series_dd(a, np.asarray(q, dtype=float), 0.0, 1.0)
    return hi + lo


def _scaled_j_series_coeffs(a: float, x: float, count: int) -> list:
    """Taylor coefficients in r of r ↦ (√r x)^{-a} J_a(√r x) at r = 0.

    Coefficient k is 2^{-a} (-1)^k Γ(a+1+k)^{-1} (x²/4)^k / k!.  For
    a = -1 + ε the k = 0 coefficient is O(ε): this is the analytic
    cancellation that makes the near-singular split exact where node schemes
    lose the endpoint mass.
    """
    q = 0.25 * x * x
    coeffs = []
    t = 2.0 ** (-a) * reciprocal_gamma(a + 1.0)
    for k in range(count):
        coeffs.append(t)
        t *= -q / ((k + 1.0) * (a + 1.0 + k))
    return coeffs


def _one_minus_r_power_series(exponent: float, a: float, y: float, count: int) -> list:
    """Taylor coefficients in r at 0 of (1-r)^exponent (√(1-r) y)^{-a} J_a(√(1-r) y).

    Expands the scaled Bessel factor in u = 1 - r and converts each u^{k+e}
    through the generalized binomial series; both sums converge fast for the
    argument ranges the near-singular split is used in.
    """
    f = []
    q = 0.25 * y * y
    t = 2.0 ** (-a) * reciprocal_gamma(a + 1.0)
    fmax = 0.0
    for _ in range(120):
        f.append(t)
        fmax = max(fmax, abs(t))
        if abs(t) < 1e-22 * max(fmax, 1.0):
            break
        k = len(f) - 1
        t = t * (-q) / ((k + 1.0) * (a + 1.0 + k))
    coeffs = []
    for j in range(count):
        parts = [fk * generalized_binomial(k + exponent, j) for k, fk in enumerate(f)]
        coeffs.append((-1.0) ** (j & 1) * math.fsum(parts))
    return coeffs


# --------------------------------------------------------------------------
# Sonine-type integrals
# --------------------------------------------------------------------------

def _sonine_side(order: Order, arg: float) -> Tuple[float, float, float]:
    """Factor x^{-a} r^{a/2} J_a(√r x) as const · r^e · [scaled Bessel, order b].

    Regular orders give (1, a, a); negative-integer orders fold the
    reflection J_{-n} = (-1)^n J_n into the constant, after which the
    r-exponent is exactly 0 and the integrand is entire.
    """
    if order.is_negative_integer:
        n = order.negative_integer
        return (-1.0) ** (n & 1) * arg ** (2 * n), 0.0, float(n)
    return 1.0, order.value, order.value


def _sonine_lhs(
    alpha: Order, beta: Order, x: float, y: float, quad_tol: float
) -> Tuple[float, float, int]:
    """∫_0^1 x^{-α} y^{-β} r^{α/2}(1-r)^{β/2} J_α(√r x) J_β(√(1-r) y) dr.

    Returns (value, error estimate, evaluations).  When the left exponent
    falls in (-1, -0.9] the integral is split at r = 0.1: the [0, 0.1] part
    is integrated term by term against the Taylor expansion of the analytic
    factor (closed-form moments), the rest goes to tanh-sinh.  If only the
    right side is near-singular the integrand is mirrored first.
    """
    ca, ea, aa = _sonine_side(alpha, x)
    cb, eb, ab = _sonine_side(beta, y)
    xx, yy = x, y
    if ea > _SPLIT_EXPONENT >= eb:
        (ca, ea, aa, xx), (cb, eb, ab, yy) = (cb, eb, ab, y), (ca, ea, aa, x)
    qa = 0.25 * xx * xx
    qb = 0.25 * yy * yy

    def f2(r, omr):
        return r ** ea * omr ** eb * _sj_of_q(aa, r * qa) * _sj_of_q(ab, omr * qb)

    const = ca * cb
    qtol = _scaled_quad_tol(quad_tol, const)
    if ea <= _SPLIT_EXPONENT:
        value, err, evals = _split_left_singular(f2, ea, aa, xx, eb, ab, yy, qtol)
    else:
        res = integrate_identity_kernel(EndpointProfile(ea, eb), f2, tol=qtol)
        value, err, evals = res.value, res.error_estimate, res.evaluations
    return const * value, abs(const) * err, evals


def _split_left_singular(
    f2, ea: float, aa: float, x: float, eb: float, ab: float, y: float, quad_tol: float
) -> Tuple[float, float, int]:
    """Series/quadrature split of ∫_0^1 r^ea · g(r) dr for ea ∈ (-1, -0.9]."""
    delta = _SPLIT_POINT
    count = _SPLIT_SERIES_ORDER + 1
    left = _scaled_j_series_coeffs(aa, x, count)
    right = _one_minus_r_power_series(eb, ab, y, count)
    moments = []
    for j in range(count):
        hj = math.fsum(left[i] * right[j - i] for i in range(j + 1))
        moments.append(hj * delta ** (ea + j + 1) / (ea + j + 1))
    series_part = math.fsum(moments)
    tail = abs(moments[-1])
    res = _tanh_sinh_pairs(f2, delta, 1.0, tol_abs=quad_tol)
    return series_part + res.value, res.error_estimate + tail, res.evaluations


def sonine_second(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Sonine's second finite integral, both orders above -1.

    LHS: x^{-α} y^{-β} ∫_0^1 r^{α/2}(1-r)^{β/2} J_α(√r x) J_β(√(1-r) y) dr.
    RHS: 2 (x²+y²)^{-(α+β+1)/2} J_{α+β+1}(√(x²+y²)).

    Negative-integer (or any ≤ -1) orders are rejected here; use
    :func:`sonine_generalized` for those.
    """
    _need(params, "alpha", "beta", "x", "y")
    alpha, beta = params.alpha, params.beta
    if alpha.is_negative_integer or alpha.value <= -1.0 or \
            beta.is_negative_integer or beta.value <= -1.0:
        raise ValueError(
            "sonine_second needs both orders > -1; "
            "negative-integer orders belong to sonine_generalized"
        )
    lhs, quad_err, _ = _sonine_lhs(alpha, beta, params.x, params.y, quad_tol)
    h = math.hypot(params.x, params.y)
    rhs = 2.0 * float(scaled_bessel_j(alpha.value + beta.value + 1.0, h))
    return _assemble("sonine-second", params, lhs, rhs, 0.0, quad_err, tol_abs, tol_rel)


def _sonine_anomalous_sum(order: Order, other: Order, x: float, y: float) -> float:
    """y^{-α-β-1} Σ_{j<n} (1/j!)(-x²/2y)^j J_{α+β+j+1}(y) for α = -n, else 0."""
    if not order.is_negative_integer:
        return 0.0
    n = order.negative_integer
    s = order.value + other.value  # α + β
    ratio = -0.5 * x * x / y
    terms = []
    coeff = 1.0
    for j in range(n):
        terms.append(coeff * float(bessel_j(s + j + 1.0, y)))
        coeff *= ratio / (j + 1.0)
    return y ** (-s - 1.0) * math.fsum(terms)


def sonine_generalized(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Sonine's second integral extended to negative-integer orders.

    LHS: (1/2) x^{-α} y^{-β} ∫_0^1 r^{α/2}(1-r)^{β/2} J_α(√r x) J_β(√(1-r) y) dr,
    with J_{-n} = (-1)^n J_n folded in analytically, so the integrand stays
    entire.  RHS: (x²+y²)^{-(α+β+1)/2} J_{α+β+1}(√(x²+y²)) minus one finite
    correction sum per negative-integer order; their total is reported in
    ``anomalous``.  With both orders > -1 the sums are empty and this is
    exactly half of :func:`sonine_second`'s LHS on the same nodes.
    """
    _need(params, "alpha", "beta", "x", "y")
    alpha, beta = params.alpha, params.beta
    for order in (alpha, beta):
        if order.value <= -1.0 and not order.is_negative_integer:
            raise ValueError(
                f"order {order.value} is neither > -1 nor a negative integer"
            )
    x, y = params.x, params.y
    half_integral, quad_err, _ = _sonine_lhs(alpha, beta, x, y, quad_tol)
    lhs = 0.5 * half_integral
    h = math.hypot(x, y)
    main = float(scaled_bessel_j(alpha.value + beta.value + 1.0, h))
    anomalous = _sonine_anomalous_sum(alpha, beta, x, y) \
        + _sonine_anomalous_sum(beta, alpha, y, x)
    rhs = main - anomalous
    return _assemble("sonine-generalized", params, lhs, rhs, anomalous,
                     quad_err, tol_abs, tol_rel)


def sonine_discontinuity_jump(
    beta: OrderLike,
    x: float,
    y: float,
    eps_values: Sequence[float] = (1e-2, 1e-3, 1e-4),
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> Dict[str, float]:
    """Measure the jump of the Sonine integral across α = -1.

    Evaluates the (generalized-normalization) LHS at α = -1 + ε for each ε,
    extrapolates quadratically to ε = 0, and subtracts the α = -1 value.  The
    analytic prediction for the jump is the j = 0 correction term
    y^{-β} J_β(y).  Returns the measured jump, the prediction, and their
    difference.
    """
    ob = _as_order(beta)
    qtol = quad_tol

    def lhs_at(alpha_value: float) -> float:
        oa = _as_order(alpha_value)
        value, _, _ = _sonine_lhs(oa, ob, x, y, qtol)
        return 0.5 * value

    eps = [float(e) for e in eps_values]
    samples = [lhs_at(-1.0 + e) for e in eps]
    extrapolated = 0.0
    for i, (ei, li) in enumerate(zip(eps, samples)):
        weight = 1.0
        for j, ej in enumerate(eps):
            if j != i:
                weight *= (0.0 - ej) / (ei - ej)
        extrapolated += weight * li
    at_minus_one = lhs_at(-1.0)
    jump = extrapolated - at_minus_one
    predicted = y ** (-ob.value) * float(bessel_j(ob.value, y))
    return {
        "jump": jump,
        "predicted": predicted,
        "difference": abs(jump - predicted),
        "limit_from_above": extrapolated,
        "value_at_minus_one": at_minus_one,
    }


# --------------------------------------------------------------------------
# I-J mixed-kernel identities
# --------------------------------------------------------------------------

def ij_identity(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Mixed I·J integral identity for α > β ≥ 0.

    LHS: [2^β x^{-β} / Γ((α-β)/2)] ∫_0^1 r^{-β/2-1}(1-r)^{β/2}
    I_α(√r x) J_β(√(1-r) x) dr.  RHS: J_α(x) / Γ((α+β)/2 + 1).  The r → 0
    exponent is (α-β)/2 - 1 after factorization, so α - β > 0 is required
    for convergence and enforced.
    """
    _need(params, "alpha", "beta", "x")
    a, b = params.alpha.value, params.beta.value
    if a < 0.0 or b < 0.0:
        raise ValueError("ij_identity requires alpha >= 0 and beta >= 0")
    if not a - b > 0.0:
        raise ValueError("ij_identity requires alpha - beta > 0 (integral diverges)")
    x = params.x
    ea = 0.5 * (a - b) - 1.0
    q = 0.25 * x * x

    def f2(r, omr):
        return r ** ea * omr ** b * _si_of_q(a, r * q) * _sj_of_q(b, omr * q)

    const = reciprocal_gamma(0.5 * (a - b)) * 2.0 ** b * x ** a
    res = integrate_identity_kernel(EndpointProfile(ea, b), f2,
                                    tol=_scaled_quad_tol(quad_tol, const))
    lhs = const * res.value
    rhs = reciprocal_gamma(0.5 * (a + b) + 1.0) * float(bessel_j(a, x))
    return _assemble("ij", params, lhs, rhs, 0.0, abs(const) * res.error_estimate,
                     tol_abs, tol_rel)


def _ij_derivative_jet(alpha: float, x: float, n: int):
    """Jet at r = 1 of r^{n/2-1} I_α(√r x), to order n-1."""
    order = n - 1
    power = jet_power(jet_variable(1.0, order), 0.5 * n - 1.0)
    bessel = bessel_i_of_sqrt_jet(alpha, x, order)
    return jet_arith(power, bessel, "mul")


def _ij_anomalous_via_jets(alpha: float, x: float, n: int) -> float:
    """Σ_{p=0}^{n-1} (1/p!)(-x²/4)^p ∂_r^{n-1-p}[r^{n/2-1} I_α(√r x)] at r = 1."""
    h = _ij_derivative_jet(alpha, x, n)
    ratio = -0.25 * x * x
    coeff = 1.0
    terms = []
    for p in range(n):
        terms.append(coeff * derivative_at_base(h, n - 1 - p))
        coeff *= ratio / (p + 1.0)
    return math.fsum(terms)


def ij_anomalous_closed_form(alpha: OrderLike, beta: int, x: float) -> float:
    """Closed-form anomalous term of :func:`ij_generalized` for β ∈ {-1,-2,-3}.

    These are the explicitly worked-out low-order cases; they serve as an
    independent cross-check of the jet-differentiation path.
    """
    a = _as_order(alpha).value
    b = int(beta)
    if b == -1:
        return float(bessel_i(a, x))
    if b == -2:
        return 0.25 * x * (float(bessel_i(a - 1.0, x))
                           - x * float(bessel_i(a, x))
                           + float(bessel_i(a + 1.0, x)))
    if b == -3:
        c0 = -(x ** 3) / 8.0 * float(bessel_i(a - 1.0, x))
        c1 = (8.0 * (a * a - 1.0) + 4.0 * (a + 1.0) * x * x + x ** 4) / 32.0
        return c0 + c1 * float(bessel_i(a, x))
    raise ValueError("closed forms are available for beta in {-1, -2, -3} only")


def ij_generalized(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Mixed I·J identity continued to negative-integer β.

    LHS: 2^β x^{-β} ∫_0^1 r^{-β/2-1}(1-r)^{β/2} I_α(√r x) J_β(√(1-r) x) dr
    plus the anomalous derivative terms
    Σ_{p=0}^{-β-1} (1/p!)(-x²/4)^p ∂_r^{-β-1-p}[r^{-β/2-1} I_α(√r x)]|_{r=1},
    the derivatives computed by truncated-Taylor (jet) arithmetic.
    RHS: [Γ((α-β)/2) / Γ((α+β)/2+1)] J_α(x).

    For β ∈ {-1, -2, -3} the anomalous term is additionally evaluated
    through its closed form and the discrepancy is folded into
    ``quadrature_error``.
    """
    _need(params, "alpha", "beta", "x")
    if not params.beta.is_negative_integer:
        raise ValueError("ij_generalized requires beta to be a negative integer")
    n = params.beta.negative_integer
    a = params.alpha.value
    x = params.x
    if not a + n > 0.0:
        raise ValueError("ij_generalized requires alpha - beta > 0 (integral diverges)")
    if n - 1 > MAX_JET_ORDER:
        raise ValueError(f"derivative order {n - 1} exceeds jet order cap {MAX_JET_ORDER}")
    q = 0.25 * x * x
    # For negative-integer alpha the reflection I_{-m} = I_m turns the scaled
    # factor into (r x^2)^m times the order-m one; the ratio-driven series
    # cannot be fed an order whose leading reciprocal-gamma vanishes.
    si_order = a
    shift = 0.0
    extra = 1.0
    if params.alpha.is_negative_integer:
        m = params.alpha.negative_integer
        si_order = float(m)
        shift = float(m)
        extra = x ** (2.0 * m)
    ea = 0.5 * (a + n) - 1.0 + shift

    def f2(r, omr):
        return r ** ea * _si_of_q(si_order, r * q) * _sj_of_q(float(n), omr * q)

    sign = (-1.0) ** (n & 1)
    const = sign * 2.0 ** (-n) * x ** (a + 2.0 * n) * extra
    res = integrate_identity_kernel(EndpointProfile(ea, 0.0), f2,
                                    tol=_scaled_quad_tol(quad_tol, const))
    quad_part = const * res.value
    anomalous = _ij_anomalous_via_jets(a, x, n)
    lhs = quad_part + anomalous
    rhs = gamma(0.5 * (a + n)) * reciprocal_gamma(0.5 * (a - n) + 1.0) \
        * float(bessel_j(a, x))
    quad_err = abs(const) * res.error_estimate
    if n <= 3:
        closed = ij_anomalous_closed_form(a, -n, x)
        quad_err = max(quad_err, abs(anomalous - closed))
    return _assemble("ij-generalized", params, lhs, rhs, anomalous,
                     quad_err, tol_abs, tol_rel)


# --------------------------------------------------------------------------
# squared-Bessel and order-shift identities
# --------------------------------------------------------------------------

def pi_identity(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """∫_0^1 [r(1-r)]^{-1/2} J_{2ν}(2√r x) dr = π J_ν(x)².

    Proven for non-negative integer ν; for non-integer ν the relation is
    numerically supported but not derived, so a passing residual is reported
    as ``conjecture-pass`` instead of ``pass``.
    """
    _need(params, "nu", "x")
    nu = params.nu.value
    if params.nu.is_negative_integer or not nu > -0.5:
        raise ValueError("pi_identity requires nu > -1/2")
    x = params.x
    q = x * x  # (2 √r x)² / 4 = r x²

    def f2(r, omr):
        return r ** (nu - 0.5) * omr ** -0.5 * _sj_of_q(2.0 * nu, r * q)

    const = (2.0 * x) ** (2.0 * nu)
    res = integrate_identity_kernel(EndpointProfile(nu - 0.5, -0.5), f2,
                                    tol=_scaled_quad_tol(quad_tol, const))
    lhs = const * res.value
    rhs = math.pi * float(bessel_j(nu, x)) ** 2
    conjecture = abs(nu - round(nu)) > 1e-12
    return _assemble("pi", params, lhs, rhs, 0.0, abs(const) * res.error_estimate,
                     tol_abs, tol_rel, conjecture=conjecture)


def order_sum_identity(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Bessel order-shift sum: Σ_m ((-1)^m/m!)(y²/2x)^m J_{α+m}(x) against
    the argument-shifted J_α(√(x²+y²)).

    Written in scaled form the m-th term is ((-1)^m/m!)(y²/2)^m · x^{-α-m}
    J_{α+m}(x), summed until five consecutive terms drop below 1e-16 of the
    partial sum (cap 200, non-convergence raised).  The first neglected
    term's magnitude lands in ``quadrature_error`` as a tail bound.
    """
    _need(params, "alpha", "x", "y")
    a = params.alpha.value
    x, y = params.x, params.y
    ratio = 0.5 * y * y
    coeff = 1.0
    terms = []
    small_streak = 0
    for m in range(201):
        if m == 200:
            raise ArithmeticError(
                "order-shift sum did not converge within 200 terms "
                f"(y^2/2x = {ratio / x:.3g}); refusing to guess"
            )
        term = coeff * float(scaled_bessel_j(a + m, x))
        terms.append(term)
        coeff *= -ratio / (m + 1.0)
        partial = math.fsum(terms)
        if abs(term) < 1e-16 * abs(partial):
            small_streak += 1
            if small_streak >= 5:
                break
        else:
            small_streak = 0
    tail = abs(coeff * float(scaled_bessel_j(a + len(terms), x)))
    lhs = math.fsum(terms)
    rhs = float(scaled_bessel_j(a, math.hypot(x, y)))
    return _assemble("order-sum", params, lhs, rhs, 0.0, tail, tol_abs, tol_rel)


def fractional_integral_identity(
    params: IdentityParams,
    tol_abs: float = DEFAULT_TOL_ABS,
    tol_rel: float = DEFAULT_TOL_REL,
    quad_tol: float = DEFAULT_QUAD_TOL,
) -> IdentityReport:
    """Weighted Bessel moment ∫_0^x y^{α+1}(x²-y²)^{β-1} J_α(y) dy
    = 2^{β-1} Γ(β) x^{α+β} J_{α+β}(x), for α > -1, β > 0.

    Substituting y = x√r maps the integral onto [0, 1] with endpoint profile
    (α, β-1); the scaled Bessel factor keeps the integrand finite at r = 0.
    """
    _need(params, "alpha", "beta", "x")
    a, b = params.alpha.value, params.beta.value
    if params.alpha.is_negative_integer or not a > -1.0:
        raise ValueError("fractional_integral_identity requires alpha > -1")
    if not b > 0.0:
        raise ValueError(
            "fractional_integral_identity requires beta > 0 "
            "(finite-part readings below 0 are not defined here)"
        )
    x = params.x
    q = 0.25 * x * x

    def f2(r, omr):
        return r ** a * omr ** (b - 1.0) * _sj_of_q(a, r * q)

    const = 0.5 * x ** (2.0 * a + 2.0 * b)
    res = integrate_identity_kernel(EndpointProfile(a, b - 1.0), f2,
                                    tol=_scaled_quad_tol(quad_tol, const))
    lhs = const * res.value
    rhs = 2.0 ** (b - 1.0) * gamma(b) * x ** (a + b) * float(bessel_j(a + b, x))
    return _assemble("fractional-integral", params, lhs, rhs, 0.0,
                     abs(const) * res.error_estimate, tol_abs, tol_rel)


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

IDENTITIES: Dict[str, Callable[..., IdentityReport]] = {
    "sonine-second": sonine_second,
    "sonine-generalized": sonine_generalized,
    "ij": ij_identity,
    "ij-generalized": ij_generalized,
    "pi": pi_identity,
    "order-sum": order_sum_identity,
    "fractional-integral": fractional_integral_identity,
}


def list_identity_ids() -> list:
    """Stable catalog ids, in catalog order."""
    return list(IDENTITIES)
