"""sonine: residual-checked Bessel/Laguerre identity toolkit.

Evaluates Sonine-type Bessel integrals, their finite-N Laguerre counterparts,
and the limit laws connecting the two, with every identity exposed as a
residual computation (LHS - RHS) including the anomalous corrections that
appear at negative-integer order.
"""

try:
    from importlib.metadata import PackageNotFoundError, version
except ImportError:  # pragma: no cover
    from importlib_metadata import PackageNotFoundError, version  # type: ignore

try:
    __version__ = version("sonine")
except PackageNotFoundError:  # pragma: no cover - running from a checkout
    __version__ = "0.0.0+unknown"

from .special_functions import (
    CompensatedReal,
    Order,
    bessel_i,
    bessel_j,
    gamma,
    generalized_binomial,
    laguerre,
    pochhammer,
    reciprocal_gamma,
    scaled_bessel_j,
)

__all__ = [
    "__version__",
    "Order",
    "CompensatedReal",
    "gamma",
    "reciprocal_gamma",
    "pochhammer",
    "generalized_binomial",
    "laguerre",
    "bessel_j",
    "bessel_i",
    "scaled_bessel_j",
]
