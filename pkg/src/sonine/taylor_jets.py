"""Univariate truncated Taylor (jet) arithmetic at a base point.

A jet stores coefficients c_0..c_K of an expansion in the local variable
t = r - r_0.  The catalog uses jets to take the high-order r-derivatives at
r = 1 that the anomalous terms of the I-J identities call for -- hand-derived
Bessel recurrences exist only for the first few negative orders, while jets
generalize to any of them (and the closed forms then serve as cross-checks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .special_functions import (
    OrderLike,
    _as_order,
    reciprocal_gamma,
)

__all__ = [
    "Jet",
    "jet_constant",
    "jet_variable",
    "jet_arith",
    "jet_power",
    "bessel_i_of_sqrt_jet",
    "derivative_at_base",
]

#: Truncation-order cap: the identities tested have |beta| <= 6, and the
#: series coefficients stay well-conditioned at this depth.
MAX_JET_ORDER = 12


@dataclass(frozen=True)
class Jet:
    """Truncated Taylor coefficients of a function at ``base_point``.

    ``coefficients[j]`` is the coefficient of (r - base_point)^j; the jet's
    order is ``len(coefficients) - 1``.  Jets are immutable values.
    """

    coefficients: Tuple[float, ...]
    base_point: float

    def __post_init__(self):
        if len(self.coefficients) == 0:
            raise ValueError("a jet needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t: float) -> float:
        """Evaluate the truncated polynomial at local offset ``t`` (Horner)."""
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def jet_constant(value: float, order: int, base_point: float) -> Jet:
    return Jet((float(value),) + (0.0,) * order, base_point)


def jet_variable(base_point: float, order: int) -> Jet:
    """The identity function r |-> r as a jet: [r_0, 1, 0, ..., 0]."""
    if order == 0:
        return Jet((float(base_point),), base_point)
    return Jet((float(base_point), 1.0) + (0.0,) * (order - 1), base_point)


def _check_compatible(a: Jet, b: Jet):
    if a.order != b.order or a.base_point != b.base_point:
        raise ValueError(
            f"jet mismatch: orders {a.order}/{b.order}, "
            f"base points {a.base_point}/{b.base_point}"
        )


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    """Pointwise combine two jets: op in {'add', 'sub', 'mul', 'div'}.

    Multiplication is the Cauchy product truncated at the common order;
    division solves the triangular system (and requires b's constant
    coefficient to be nonzero).
    """
    _check_compatible(a, b)
    ca, cb = a.coefficients, b.coefficients
    n = len(ca)
    if op == "add":
        out = [ca[k] + cb[k] for k in range(n)]
    elif op == "sub":
        out = [ca[k] - cb[k] for k in range(n)]
    elif op == "mul":
        out = [math.fsum(ca[j] * cb[k - j] for j in range(k + 1)) for k in range(n)]
    elif op == "div":
        if cb[0] == 0.0:
            raise ZeroDivisionError("jet division by zero constant term")
        out = []
        for k in range(n):
            acc = ca[k] - math.fsum(cb[j] * out[k - j] for j in range(1, k + 1))
            out.append(acc / cb[0])
    else:
        raise ValueError(f"unknown jet op {op!r}")
    return Jet(tuple(out), a.base_point)


def jet_power(a: Jet, p: float) -> Jet:
    """a(t)^p for real p, by the standard power recurrence.

    Requires a positive constant term (the branch the identities live on).
    """
    c = a.coefficients
    if not c[0] > 0.0:
        raise ValueError(f"jet_power needs a positive constant term, got {c[0]!r}")
    n = len(c)
    w = [c[0] ** p]
    for k in range(1, n):
        acc = math.fsum((j * p - (k - j)) * c[j] * w[k - j] for j in range(1, k + 1))
        w.append(acc / (k * c[0]))
    return Jet(tuple(w), a.base_point)


def bessel_i_of_sqrt_jet(alpha: OrderLike, x: float, order: int) -> Jet:
    """Jet of g(r) = I_alpha(sqrt(r) x) at r_0 = 1.

    Summed term by term in jet arithmetic: each series term
    rgamma(k+alpha+1)/k! (x/2)^{2k+alpha} r^{k+alpha/2} is a jet_power of the
    identity jet.  The constant coefficient reproduces I_alpha(x).
    """
    if not x > 0.0:
        raise ValueError(f"need x > 0, got {x!r}")
    if order > MAX_JET_ORDER:
        raise ValueError(f"jet order {order} exceeds cap {MAX_JET_ORDER}")
    o = _as_order(alpha)
    a = float(o.negative_integer) if o.is_negative_integer else o.value  # I_{-n} = I_n
    q = x * x / 4.0
    term = reciprocal_gamma(a + 1.0) * (0.5 * x) ** a
    r_jet = jet_variable(1.0, order)
    # Per-coefficient contribution lists, fsum'd at the end: the terms are all
    # positive at the constant coefficient but alternate higher up.
    parts = [[] for _ in range(order + 1)]
    c0_scale = abs(term)
    streak = 0
    for k in range(400):
        pw = jet_power(r_jet, k + a / 2.0)
        biggest = 0.0
        for j, cj in enumerate(pw.coefficients):
            contrib = term * cj
            parts[j].append(contrib)
            biggest = max(biggest, abs(contrib))
        c0_scale = max(c0_scale, abs(math.fsum(parts[0])))
        if biggest < 1e-18 * c0_scale:
            streak += 1
            if streak >= 3:
                break
        else:
            streak = 0
        term = term * q / ((k + 1) * (a + k + 1.0))
    else:
        raise ArithmeticError("I_alpha(sqrt(r) x) jet series failed to converge")
    return Jet(tuple(math.fsum(p) for p in parts), 1.0)


def derivative_at_base(a: Jet, j: int) -> float:
    """The j-th derivative at the base point: j! c_j."""
    if j < 0 or j != int(j):
        raise ValueError(f"derivative index must be a non-negative integer, got {j!r}")
    if j > a.order:
        raise ValueError(f"derivative index {j} exceeds jet order {a.order}")
    return math.factorial(int(j)) * a.coefficients[int(j)]
