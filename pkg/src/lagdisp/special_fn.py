"""Gamma-family helpers, Pochhammer symbols, real binomials and E_p(z)."""
from __future__ import annotations

import cmath
import math
import warnings

import numpy as np
from scipy import integrate, special

from .errors import AccuracyError, DomainError

__all__ = [
    "log_gamma",
    "pochhammer",
    "binom_real",
    "log_binom",
    "gen_exp_integral",
]

# below this length the Pochhammer product is formed term by term
PRODUCT_THRESHOLD = 64


def _finite(x, name="x"):
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for x > 0."""
    x = float(x)
    _finite(x)
    if x <= 0.0:
        raise DomainError(f"log_gamma needs a positive argument, got {x!r}")
    return math.lgamma(x)


def pochhammer(x: float, n: int) -> float:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1."""
    x = float(x)
    n = int(n)
    _finite(x)
    if n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    if n <= PRODUCT_THRESHOLD:
        out = 1.0
        for k in range(n):
            out *= x + k
        return out
    # a vanishing factor x + k = 0 for some k < n
    if x <= 0.0 and x == math.floor(x) and -x < n:
        return 0.0
    top = x + n
    sign = special.gammasgn(top) * special.gammasgn(x)
    with np.errstate(over="ignore"):
        val = float(sign * np.exp(special.gammaln(top) - special.gammaln(x)))
    return val


def binom_real(x: float, n: int) -> float:
    """Binomial coefficient binom(n + x, n) = (x+1)_n / n! for real x > -1.

    Saturates to +inf with a RuntimeWarning when the result overflows.
    """
    x = float(x)
    n = int(n)
    _finite(x)
    if n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    if x <= -1.0:
        raise DomainError(f"binom_real expects x > -1, got {x!r}")
    if n <= PRODUCT_THRESHOLD:
        out = 1.0
        for k in range(1, n + 1):
            out *= (x + k) / k
    else:
        lb = log_binom(x, n)
        out = math.inf if lb > 709.78 else math.exp(lb)
    if math.isinf(out):
        warnings.warn(f"binom_real({x}, {n}) overflowed; saturating to +inf",
                      RuntimeWarning, stacklevel=2)
    return out


def log_binom(x: float, n) -> float:
    """ln binom(n + x, n) = ln Gamma(n+x+1) - ln Gamma(x+1) - ln Gamma(n+1).

    ``n`` may be real here (nonnegative); x > -1.
    """
    if x <= -1.0 or n < 0:
        raise DomainError(f"log_binom expects x > -1 and n >= 0, got x={x!r}, n={n!r}")
    return math.lgamma(n + x + 1.0) - math.lgamma(x + 1.0) - math.lgamma(n + 1.0)


def _on_cut(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0


def gen_exp_integral(p: float, z: complex, rtol: float = 1e-10) -> complex:
    """Generalized exponential integral E_p(z) for p > 0, principal branch.

    Direct quadrature first; if that misses ``rtol`` and p > 1, E_p is built
    from E_q with q in (0, 1] by E_{q+1} = (e^(-z) - z E_q) / q, since the
    low-order integrand has a much milder peak.
    """
    p = float(p)
    z = complex(z)
    _finite(p, "p")
    if not (cmath.isfinite(z)):
        raise DomainError(f"z must be finite, got {z!r}")
    if p <= 0.0:
        raise DomainError(f"p must be positive, got {p!r}")
    if _on_cut(z):
        raise DomainError(f"z={z!r} lies on the branch cut (-inf, 0]")
    try:
        return _exp_integral_quad(p, z, rtol)
    except AccuracyError:
        if p <= 1.0:
            raise
    q = p - math.ceil(p - 1.0)
    val = _exp_integral_quad(q, z, rtol)
    ez = cmath.exp(-z)
    while q < p - 0.5:
        val = (ez - z * val) / q
        q += 1.0
    return val


def _exp_integral_quad(p: float, z: complex, rtol: float) -> complex:
    """E_p(z) by quadrature.

    Uses E_p(z) = z^(p-1) e^(-z) int_0^inf e^(-s) (z+s)^(-p) ds, i.e. the
    defining integral taken along the horizontal ray from z to +inf, which
    never meets the branch cut (-inf, 0].
    """

    def f(s):
        return cmath.exp(-s) * (z + s) ** (-p)

    # the integrand peaks where |z + s| is smallest; its width is that distance
    peak = max(-z.real, 0.0)
    right = max(peak, 1.0) + 40.0
    width = max(abs(z + peak), 1e-300)
    # geometric breakpoints resolve every scale between width and right
    steps = [width * 4.0 ** k for k in range(int(math.log(right / width, 4.0)) + 2)]
    pts = sorted({peak + d for d in [0.0] + steps + [-d for d in steps]
                  if 0.0 < peak + d < right})
    opts = dict(epsabs=0.0, epsrel=1e-13, limit=1000)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re1, e1 = integrate.quad(lambda s: f(s).real, 0.0, right, points=pts or None, **opts)
        im1, e2 = integrate.quad(lambda s: f(s).imag, 0.0, right, points=pts or None, **opts)
        re2, e3 = integrate.quad(lambda s: f(s).real, right, np.inf, **opts)
        im2, e4 = integrate.quad(lambda s: f(s).imag, right, np.inf, **opts)
    total = complex(re1 + re2, im1 + im2)
    err = e1 + e2 + e3 + e4
    scale = abs(total)
    if scale == 0.0 or err > rtol * scale:
        achieved = err / scale if scale else math.inf
        raise AccuracyError(
            f"E_{p}({z}) quadrature reached relative error {achieved:.3g} > {rtol:.1g}",
            achieved=achieved,
        )
    return z ** (p - 1.0) * cmath.exp(-z) * total
