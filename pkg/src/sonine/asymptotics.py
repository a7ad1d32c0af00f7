"""Finite-N Laguerre computations and their large-N Bessel limits.

Three kinds of operation live here:

* exact finite-N algebra (convolution, ratio-weighted and squared-Laguerre
  sums, finite-difference/parameter-shift relations) — these hold to
  rounding error at every N and certify the polynomial kernels;
* limit residuals — the scaled Laguerre quantities whose N → ∞ limits are
  the Bessel identities, packaged as (finite_value, limit_value) pairs that
  feed :func:`convergence_study`;
* the finite-difference-to-derivative law — N^p Δ^p of an N-indexed family
  converging to z^p F^(p)(z), with the derivative side produced by jet
  arithmetic rather than numerical differencing whenever a family can say
  so exactly.

The convolution-style exact checks run in double-double arithmetic: their
alternating sums cancel up to ~1e10 and plain doubles would drown the 1e-11
relative target.  The parameter-shift difference check instead runs in exact
rational arithmetic, because its cancellation grows without bound in the
difference order and exhausts any fixed precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np

from ._dd import add22, div22, mul22, mul22d, to_float, two_sum
from .special_functions import (
    CompensatedReal,
    Order,
    OrderLike,
    _as_order,
    _laguerre_dd,
    _laguerre_float_array,
    _laguerre_sequence_dd,
    _laguerre_sequence_exact,
    _laguerre_sequence_float,
    bessel_i,
    bessel_j,
    gamma,
    laguerre,
    reciprocal_gamma,
)
from .taylor_jets import (
    bessel_i_of_sqrt_jet,
    derivative_at_base,
    jet_arith,
    jet_power,
    jet_variable,
)
from .quadrature import EndpointProfile, integrate_identity_kernel

__all__ = [
    "ScaledArguments",
    "ConvergenceTable",
    "AsymptoticFamily",
    "laguerre_limit_residual",
    "finite_difference",
    "laguerre_findiff_check",
    "laguerre_sum_check",
    "anomalous_block_limit",
    "hansen_ratio_sum_check",
    "squared_laguerre_sum_check",
    "laguerre_fractional_integral_check",
    "laguerre_product_integral_check",
    "appendix_findiff_limit",
    "convergence_study",
    "exp_family",
    "ij_bracket_family",
    "TARGETS",
]


@dataclass(frozen=True)
class ScaledArguments:
    """Arguments (x, y) with their N-scaled companions X = x²/4N, Y = y²/4N.

    X and Y are recomputed on every access so they can never go stale
    against (x, y, N).
    """

    x: float
    y: float
    N: int

    def __post_init__(self):
        n = int(self.N)
        if n != self.N or n < 1:
            raise ValueError(f"N must be a positive integer, got {self.N!r}")
        object.__setattr__(self, "N", n)

    @property
    def X(self) -> float:
        return self.x * self.x / (4.0 * self.N)

    @property
    def Y(self) -> float:
        return self.y * self.y / (4.0 * self.N)


@dataclass(frozen=True)
class ConvergenceTable:
    """(N, finite, limit, |error|) rows plus a fitted log-log rate.

    ``fitted_rate`` is the least-squares slope of log|error| against log N;
    -inf flags a degenerate fit (some error exactly zero — the finite side
    already agrees), NaN flags fewer than three usable points.
    """

    entries: Tuple[Tuple[int, float, float, float], ...]
    fitted_rate: float

    def to_csv(self) -> str:
        lines = ["N,finite_value,limit_value,abs_error"]
        for n, fin, lim, err in self.entries:
            lines.append(f"{n:d},{fin:.17g},{lim:.17g},{err:.17g}")
        lines.append(f"fitted_rate,{self.fitted_rate:.17g},,")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AsymptoticFamily:
    """A map f_N(z) whose diagonal f_N(z/N) converges to limit_F(z).

    ``limit_derivative(z, p)``, when provided, must return
    ∂^p/∂r^p F(rz) at r = 1 (= z^p F^(p)(z)) exactly; families built here
    supply it via jets.  Without it, a Richardson-extrapolated central
    difference of ``limit_F`` stands in (good to ~1e-9, ample against the
    O(1/N) finite side).
    """

    evaluate: Callable[[int, float], float]
    limit_F: Callable[[float], float]
    limit_derivative: Optional[Callable[[float, int], float]] = None


# --------------------------------------------------------------------------
# limit residuals
# --------------------------------------------------------------------------

def _laguerre_limit_pair(alpha: OrderLike, x: float, r: float, N: int) -> Tuple[float, float]:
    """(N^{-α} L_m^α(x²/4N), 2^α r'^{α/2} x^{-α} J_α(√r' x)) with m = round(rN).

    r' = m/N is recomputed from the rounded index so both sides sit at the
    same ratio; comparing at mismatched r would pollute the O(1/N) gap.
    """
    order = _as_order(alpha)
    a = order.value
    if not 0.0 < r <= 1.0:
        raise ValueError(f"r must lie in (0, 1], got {r!r}")
    m = math.floor(r * N + 0.5)
    if m < 1:
        raise ValueError(f"rounded index rN = {m} is not positive (r={r}, N={N})")
    X = x * x / (4.0 * N)
    finite = float(N) ** (-a) * float(_laguerre_sequence_float(a, X, m)[m])
    rp = m / N
    limit = 2.0 ** a * rp ** (0.5 * a) * x ** (-a) * float(bessel_j(order, math.sqrt(rp) * x))
    return finite, limit


def laguerre_limit_residual(alpha: OrderLike, x: float, r: float, N: int) -> float:
    """|N^{-α} L_{rN}^α(x²/4N) − 2^α r'^{α/2} x^{-α} J_α(√r' x)|, r' = round(rN)/N."""
    finite, limit = _laguerre_limit_pair(alpha, x, r, N)
    return abs(finite - limit)


def anomalous_block_limit(
    alpha: OrderLike, beta: OrderLike, x: float, y: float, N: int
) -> Tuple[float, float]:
    """The first |α| convolution terms against their Bessel-sum limit.

    For α = -n the block N^{-α-β-1} Σ_{m<n} L_m^α(X) L_{N-m}^β(Y) survives
    the large-N limit as the correction sum
    2^{α+β+1} y^{-α-β-1} Σ_{j<n} (1/j!)(-x²/2y)^j J_{α+β+j+1}(y) — the
    anomalous terms of the generalized Sonine identity.  Returns
    (finite_value, limit_value).
    """
    oa = _as_order(alpha)
    if not oa.is_negative_integer:
        raise ValueError("anomalous_block_limit requires a negative-integer alpha")
    n = oa.negative_integer
    a = oa.value
    b = _as_order(beta).value
    if N < n:
        raise ValueError(f"need N >= {n} so the block fits, got N={N}")
    args = ScaledArguments(x, y, N)
    X, Y = args.X, args.Y
    left = _laguerre_sequence_float(a, X, n - 1)
    right = _laguerre_sequence_float(b, Y, N)
    block = math.fsum(float(left[m]) * float(right[N - m]) for m in range(n))
    finite = float(N) ** (-a - b - 1.0) * block
    ratio = -0.5 * x * x / y
    coeff = 1.0
    terms = []
    for j in range(n):
        terms.append(coeff * float(bessel_j(a + b + j + 1.0, y)))
        coeff *= ratio / (j + 1.0)
    limit = 2.0 ** (a + b + 1.0) * y ** (-a - b - 1.0) * math.fsum(terms)
    return finite, limit


# --------------------------------------------------------------------------
# finite differences
# --------------------------------------------------------------------------

def finite_difference(sequence: Callable[[int], float], m: int, k: int) -> float:
    """Forward difference Δ^k f_m = Σ_i (-1)^{k-i} C(k,i) f_{m+i}."""
    if k < 0:
        raise ValueError("difference order k must be non-negative")
    parts = [
        (-1.0) ** ((k - i) & 1) * math.comb(k, i) * sequence(m + i)
        for i in range(k + 1)
    ]
    return math.fsum(parts)


def laguerre_findiff_check(m: int, k: int, alpha: OrderLike, x: float) -> float:
    """Relative residual of Δ^k L_m^α(x) = L_{m+k}^{α-k}(x).

    The alternating binomial sum cancels by roughly
    C(k, k/2) · max_i |L_{m+i}^α(x)| / |L_{m+k}^{α-k}(x)|, and the target
    side collapses like x^k/k! once α - k drops below -m, so the precision
    this demands grows without bound in k (past 40 significant digits by
    k = 27 at small x).  No fixed-precision route survives that — and none
    is needed: floats are rationals and both sides are values of polynomials
    with rational coefficients, so the two sides and their difference are
    formed in exact rational arithmetic.  The residual therefore reports on
    the identity itself, not on roundoff in evaluating it.
    """
    if m < 0 or k < 0:
        raise ValueError("m and k must be non-negative")
    a = Fraction(_as_order(alpha).value)
    xf = Fraction(x)
    seq = _laguerre_sequence_exact(a, xf, m + k)
    acc = sum(
        (-1) ** ((k - i) & 1) * math.comb(k, i) * seq[m + i] for i in range(k + 1)
    )
    target = _laguerre_sequence_exact(a - k, xf, m + k)[m + k]
    scale = max(abs(float(acc)), abs(float(target)), 1e-30)
    return abs(float(acc - target)) / scale


# --------------------------------------------------------------------------
# exact finite-N sum identities
# --------------------------------------------------------------------------

def laguerre_sum_check(
    alpha: OrderLike, beta: OrderLike, x: float, y: float, N: int
) -> float:
    """Relative residual of Σ_{m=0}^N L_m^α(X) L_{N-m}^β(Y) = L_N^{α+β+1}(X+Y).

    X = x²/4N, Y = y²/4N.  Exact algebraic identity; the residual is scaled
    by the largest intermediate term so cancellation between terms cannot
    manufacture a spuriously small denominator.
    """
    a = _as_order(alpha).value
    b = _as_order(beta).value
    args = ScaledArguments(x, y, N)
    X, Y = args.X, args.Y
    left = _laguerre_sequence_dd(a, X, N)
    right = _laguerre_sequence_dd(b, Y, N)
    acc = (0.0, 0.0)
    biggest = 0.0
    for m in range(N + 1):
        term = mul22((left[m].hi, left[m].lo), (right[N - m].hi, right[N - m].lo))
        biggest = max(biggest, abs(to_float(term)))
        acc = add22(acc, term)
    rhs = _laguerre_dd(N, a + b + 1.0, X + Y)
    diff = add22(acc, (-rhs.hi, -rhs.lo))
    scale = max(abs(to_float((rhs.hi, rhs.lo))), biggest, 1e-30)
    return abs(to_float(diff)) / scale


def hansen_ratio_sum_check(alpha: OrderLike, beta: OrderLike, x: float, N: int) -> float:
    """Relative residual of the ratio-weighted convolution

    Σ_{m=0}^N [((α-β)/2)_m / (α+1)_m] L_m^α(-X) L_{N-m}^β(X)
        = [((α+β)/2+1)_N / (α+1)_N] L_N^α(X),   X = x²/4N.

    α must keep (α+1)_m away from zero, i.e. not be a negative integer.
    """
    oa = _as_order(alpha)
    if oa.is_negative_integer:
        raise ValueError("(α+1)_m vanishes for negative-integer α; identity undefined")
    a = oa.value
    b = _as_order(beta).value
    X = x * x / (4.0 * N)
    num0 = 0.5 * (a - b)
    left = _laguerre_sequence_dd(a, -X, N)
    right = _laguerre_sequence_dd(b, X, N)
    ratio = (1.0, 0.0)
    acc = (0.0, 0.0)
    biggest = 0.0
    for m in range(N + 1):
        term = mul22(ratio, mul22((left[m].hi, left[m].lo),
                                  (right[N - m].hi, right[N - m].lo)))
        biggest = max(biggest, abs(to_float(term)))
        acc = add22(acc, term)
        ratio = div22(mul22(ratio, two_sum(num0, float(m))),
                      two_sum(a + 1.0, float(m)))
    rratio = (1.0, 0.0)
    for i in range(N):
        rratio = div22(mul22(rratio, two_sum(0.5 * (a + b) + 1.0, float(i))),
                       two_sum(a + 1.0, float(i)))
    lN = _laguerre_dd(N, a, X)
    rhs = mul22(rratio, (lN.hi, lN.lo))
    diff = add22(acc, (-rhs[0], -rhs[1]))
    scale = max(abs(to_float(rhs)), biggest, 1e-30)
    return abs(to_float(diff)) / scale


def squared_laguerre_sum_check(nu: int, x: float, N: int) -> float:
    """Relative residual of the squared-Laguerre expansion

    Σ_{m=0}^N [(-N)_m (ν+1/2)_m / (m! (1/2-N)_m)] L_{2m+2ν}^{-2ν}(2X)
        = [(N+ν)! / ((1/2)_N (1/2)_ν)] [L_{N+ν}^{-ν}(X)]²,   X = x²/4N.

    ν a non-negative integer.  The (N+ν)! prefactor is the factorial (the
    bare N+ν fails already at N=1 against exact rational evaluation).
    """
    if not (isinstance(nu, int) and nu >= 0):
        raise ValueError("nu must be a non-negative integer")
    X = x * x / (4.0 * N)
    seq = _laguerre_sequence_dd(0.0 - 2.0 * nu, 2.0 * X, 2 * N + 2 * nu)
    coeff = (1.0, 0.0)
    acc = (0.0, 0.0)
    biggest = 0.0
    for m in range(N + 1):
        term = mul22(coeff, (seq[2 * m + 2 * nu].hi, seq[2 * m + 2 * nu].lo))
        biggest = max(biggest, abs(to_float(term)))
        acc = add22(acc, term)
        step = mul22(two_sum(-float(N), float(m)), two_sum(nu + 0.5, float(m)))
        denom = mul22d(two_sum(0.5 - N, float(m)), float(m + 1))
        coeff = div22(mul22(coeff, step), denom)
    fact = (1.0, 0.0)
    for i in range(2, N + nu + 1):
        fact = mul22d(fact, float(i))
    poch = (1.0, 0.0)
    for i in range(N):
        poch = mul22d(poch, 0.5 + i)
    for i in range(nu):
        poch = mul22d(poch, 0.5 + i)
    lval = _laguerre_dd(N + nu, 0.0 - float(nu), X)
    rhs = mul22(div22(fact, poch), mul22((lval.hi, lval.lo), (lval.hi, lval.lo)))
    diff = add22(acc, (-rhs[0], -rhs[1]))
    scale = max(abs(to_float(rhs)), biggest, 1e-30)
    return abs(to_float(diff)) / scale


# --------------------------------------------------------------------------
# integral identities at finite N
# --------------------------------------------------------------------------

def laguerre_fractional_integral_check(
    alpha: OrderLike, beta: float, x: float, N: int
) -> float:
    """Relative residual of the fractional-integral shift

    ∫_0^X Y^α (X-Y)^{β-1} L_N^α(Y) dY
        = Γ(β) [Γ(N+α+1)/Γ(N+α+β+1)] X^{α+β} L_N^{α+β}(X)

    evaluated at X = x (the identity is exact for every argument, so it is
    probed at full argument scale rather than the N-scaled one; N is the
    polynomial degree).  Quadrature-limited accuracy.
    """
    a = _as_order(alpha).value
    if not a > -1.0:
        raise ValueError("requires alpha > -1")
    if not beta > 0.0:
        raise ValueError("requires beta > 0")
    X = float(x)

    def f2(r, omr):
        return r ** a * omr ** (beta - 1.0) * _laguerre_float_array(N, a, X * r)

    res = integrate_identity_kernel(EndpointProfile(a, beta - 1.0), f2, tol=1e-13)
    lhs = X ** (a + beta) * res.value
    rhs = gamma(beta) * gamma(N + a + 1.0) * reciprocal_gamma(N + a + beta + 1.0) \
        * X ** (a + beta) * laguerre(N, a + beta, X)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)


def laguerre_product_integral_check(
    alpha: OrderLike, beta: OrderLike, m: int, n: int, N: int
) -> float:
    """Relative residual of the two-polynomial moment

    ∫_0^1 r^α (1-r)^β L_m^α(r/4N) L_n^β((1-r)/4N) dr
        = [(m+n)!/(m! n!)] B(α+m+1, β+n+1) L_{m+n}^{α+β+1}(1/4N).
    """
    a = _as_order(alpha).value
    b = _as_order(beta).value
    if not (a > -1.0 and b > -1.0):
        raise ValueError("requires alpha > -1 and beta > -1")
    scale = 1.0 / (4.0 * N)

    def f2(r, omr):
        return (r ** a * omr ** b
                * _laguerre_float_array(m, a, r * scale)
                * _laguerre_float_array(n, b, omr * scale))

    res = integrate_identity_kernel(EndpointProfile(a, b), f2, tol=1e-13)
    lhs = res.value
    beta_fn = gamma(a + m + 1.0) * gamma(b + n + 1.0) \
        * reciprocal_gamma(a + m + b + n + 2.0)
    rhs = math.comb(m + n, n) * beta_fn * laguerre(m + n, a + b + 1.0, scale)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-30)


# --------------------------------------------------------------------------
# the finite-difference-to-derivative law
# --------------------------------------------------------------------------

def _richardson_derivative(F: Callable[[float], float], z: float, p: int) -> float:
    # central differences at two step sizes, one Richardson sweep
    if p == 0:
        return F(z)
    h = 1e-2 * max(1.0, abs(z))

    def central(h):
        if p == 1:
            return (F(z + h) - F(z - h)) / (2.0 * h)
        if p == 2:
            return (F(z + h) - 2.0 * F(z) + F(z - h)) / (h * h)
        if p == 3:
            return (F(z + 2 * h) - 2 * F(z + h) + 2 * F(z - h) - F(z - 2 * h)) / (2 * h ** 3)
        return (F(z + 2 * h) - 4 * F(z + h) + 6 * F(z) - 4 * F(z - h) + F(z - 2 * h)) / h ** 4

    d1, d2 = central(h), central(0.5 * h)
    return (4.0 * d2 - d1) / 3.0


def appendix_findiff_limit(
    family: AsymptoticFamily, p: int, z: float, N: int
) -> Tuple[float, float]:
    """N^p Δ_l^p [f_{N+l}(z/N)] at l = 0, against z^p F^(p)(z).

    The finite side scales the p-fold forward difference (taken in the
    family index at fixed argument z/N) by N^p; as N → ∞ each difference
    contributes one factor z/N · d/dz, so the pair converges at rate 1/N.
    The limit side uses the family's exact jet derivative when available.
    """
    if not 0 <= p <= 4:
        raise ValueError("p must lie in 0..4")
    w = z / N
    finite = float(N) ** p * finite_difference(lambda l: family.evaluate(l, w), N, p)
    if family.limit_derivative is not None:
        limit = family.limit_derivative(z, p)
    else:
        limit = z ** p * _richardson_derivative(family.limit_F, z, p)
    return finite, limit


def _exp_limit_derivative(z: float, p: int) -> float:
    return z ** p * math.exp(z)


#: f_N(w) = (1+w)^N, so f_N(z/N) → e^z: the appendix's worked example.
exp_family = AsymptoticFamily(
    evaluate=lambda M, w: (1.0 + w) ** M,
    limit_F=math.exp,
    limit_derivative=_exp_limit_derivative,
)


def ij_bracket_family(alpha: float, beta: float, x: float) -> AsymptoticFamily:
    """The ratio-weighted Laguerre bracket of the I–J derivation.

    f_M(w) = κ w^{(α-β)/2-1} [((α-β)/2)_M/(α+1)_M] L_M^α(-w x²/4) with
    κ = x^α 2^{-α} Γ((α-β)/2) / Γ(α+1); the N-power bookkeeping cancels
    exactly, giving F(z) = z^{-β/2-1} I_α(√z x).  limit_derivative builds
    the jet of r^{-β/2-1} I_α(√(rz) x) at r = 1, which is the quantity the
    anomalous derivative terms of the generalized I–J identity need.
    """
    kappa = x ** alpha * 2.0 ** (-alpha) * gamma(0.5 * (alpha - beta)) \
        * reciprocal_gamma(alpha + 1.0)
    q = 0.25 * x * x

    def evaluate(M: int, w: float) -> float:
        ratio = 1.0
        for i in range(M):
            ratio *= (0.5 * (alpha - beta) + i) / (alpha + 1.0 + i)
        lag = float(_laguerre_sequence_float(alpha, -w * q, M)[M])
        return kappa * w ** (0.5 * (alpha - beta) - 1.0) * ratio * lag

    def limit_F(z: float) -> float:
        return z ** (-0.5 * beta - 1.0) * float(bessel_i(alpha, math.sqrt(z) * x))

    def limit_derivative(z: float, p: int) -> float:
        power = jet_power(jet_variable(1.0, p), -0.5 * beta - 1.0)
        bes = bessel_i_of_sqrt_jet(alpha, math.sqrt(z) * x, p)
        h = jet_arith(power, bes, "mul")
        return z ** (-0.5 * beta - 1.0) * derivative_at_base(h, p)

    return AsymptoticFamily(evaluate=evaluate, limit_F=limit_F,
                            limit_derivative=limit_derivative)


# --------------------------------------------------------------------------
# convergence studies
# --------------------------------------------------------------------------

def _laguerre_sum_pair(alpha, beta, x, y, N):
    a = _as_order(alpha).value
    b = _as_order(beta).value
    args = ScaledArguments(x, y, N)
    X, Y = args.X, args.Y
    left = _laguerre_sequence_dd(a, X, N)
    right = _laguerre_sequence_dd(b, Y, N)
    acc = (0.0, 0.0)
    for m in range(N + 1):
        acc = add22(acc, mul22((left[m].hi, left[m].lo),
                               (right[N - m].hi, right[N - m].lo)))
    rhs = _laguerre_dd(N, a + b + 1.0, X + Y)
    return to_float(acc), to_float((rhs.hi, rhs.lo))


def _appendix_exp_pair(p, z, N):
    return appendix_findiff_limit(exp_family, int(p), z, int(N))


#: Named (finite, limit) pair producers for convergence studies.
TARGETS: Dict[str, Callable[..., Tuple[float, float]]] = {
    "laguerre-limit": _laguerre_limit_pair,
    "anomalous-block": anomalous_block_limit,
    "laguerre-sum": _laguerre_sum_pair,
    "appendix-exp": _appendix_exp_pair,
}


def convergence_study(target: str, N_list: Sequence[int], params: Dict) -> ConvergenceTable:
    """Tabulate finite-vs-limit gaps over N and fit the log-log decay rate.

    ``target`` names an entry of :data:`TARGETS`; ``params`` are its
    non-N keyword arguments.  N_list must be strictly increasing with at
    least three entries.  A zero gap anywhere makes the fit degenerate
    (fitted_rate = -inf); fewer than three nonzero gaps give NaN.
    """
    if target not in TARGETS:
        raise ValueError(f"unknown convergence target {target!r}; "
                         f"known: {', '.join(sorted(TARGETS))}")
    ns = [int(n) for n in N_list]
    if len(ns) < 3 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("N_list must be strictly increasing with >= 3 entries")
    fn = TARGETS[target]
    entries = []
    for n in ns:
        finite, limit = fn(N=n, **params)
        entries.append((n, finite, limit, abs(finite - limit)))
    errors = [e[3] for e in entries]
    if any(err == 0.0 for err in errors):
        rate = -math.inf
    elif sum(1 for err in errors if err > 0.0) < 3:
        rate = math.nan
    else:
        logn = np.log([float(n) for n in ns])
        loge = np.log(errors)
        rate = float(np.polyfit(logn, loge, 1)[0])
    return ConvergenceTable(entries=tuple(entries), fitted_rate=rate)
