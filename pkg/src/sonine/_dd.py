"""Double-double ("compensated") floating-point kernels.

Error-free transformations and the handful of double-double (~31 significant
digit) operations needed by the series evaluators.  A double-double value is a
``(hi, lo)`` pair with ``hi = fl(hi + lo)``; every function here accepts plain
floats or numpy arrays interchangeably, so a whole quadrature node set can be
pushed through the Bessel series in one sweep.
"""

from __future__ import annotations

# Dekker's splitting constant for 53-bit doubles: 2**27 + 1.
_SPLITTER = 134217729.0


def two_sum(a, b):
    """Error-free sum: returns (s, e) with s = fl(a+b) and s + e == a + b."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    """two_sum specialized to |a| >= |b|."""
    s = a + b
    return s, b - (s - a)


def two_prod(a, b):
    """Error-free product: (p, e) with p = fl(a*b) and p + e == a * b.

    Uses Dekker splitting (math.fma is not available until 3.13).
    """
    p = a * b
    ta = _SPLITTER * a
    a_hi = ta - (ta - a)
    a_lo = a - a_hi
    tb = _SPLITTER * b
    b_hi = tb - (tb - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def add22(x, y):
    """Double-double + double-double."""
    sh, eh = two_sum(x[0], y[0])
    sl, el = two_sum(x[1], y[1])
    eh = eh + sl
    sh, eh = quick_two_sum(sh, eh)
    eh = eh + el
    return quick_two_sum(sh, eh)


def sub22(x, y):
    return add22(x, (-y[0], -y[1]))


def mul22(x, y):
    """Double-double * double-double."""
    p, e = two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return quick_two_sum(p, e)


def mul22d(x, c):
    """Double-double * plain double."""
    p, e = two_prod(x[0], c)
    e = e + x[1] * c
    return quick_two_sum(p, e)


def div22(x, y):
    """Double-double / double-double (one Newton correction: ~full precision)."""
    q1 = x[0] / y[0]
    p, e = two_prod(q1, y[0])
    e = e + q1 * y[1]
    rh, rl = add22(x, (-p, -e))
    q2 = (rh + rl) / y[0]
    return quick_two_sum(q1, q2)


def div22d(x, c):
    """Double-double / plain double."""
    return div22(x, (c, 0.0))


def to_float(x):
    """Round a double-double back to the nearest double."""
    return x[0] + x[1]
