"""Jacobi, Laguerre, Meixner, Gegenbauer and Legendre polynomials.

Jacobi values come from the three-term recurrence in the degree; every
function broadcasts over array arguments.  ``jacobi_P_explicit`` evaluates
the finite binomial sum in extended precision and serves as the independent
check of the recurrence.
"""
from __future__ import annotations

import math
import warnings

import mpmath
import numpy as np

from .errors import DomainError
from .quadrature import gauss_jacobi
from .special_fn import pochhammer

__all__ = [
    "jacobi_P",
    "jacobi_P_all",
    "jacobi_P_explicit",
    "laguerre_L",
    "meixner_M",
    "gegenbauer_P",
    "legendre_P",
    "jacobi_R",
    "g_fn",
    "g_norm",
    "endpoint_power",
    "jacobi_value_at_one",
    "jacobi_norm_sq",
    "jacobi_h",
    "orthonormal_p",
    "jacobi_inner_product",
]


def _scalar_or_array(out, *inputs):
    if all(np.ndim(v) == 0 for v in inputs):
        return out.item() if isinstance(out, np.ndarray) else out
    return out


def _check_degree(n):
    n = int(n)
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    return n


def jacobi_P_all(n_max: int, alpha, beta, x):
    """P_k^(alpha,beta)(x) for k = 0..n_max, stacked along a new leading axis."""
    n_max = _check_degree(n_max)
    a, b, x = np.broadcast_arrays(np.asarray(alpha, dtype=float),
                                  np.asarray(beta, dtype=float),
                                  np.asarray(x, dtype=float))
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max == 0:
        return out
    out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    bad = np.zeros(x.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for k in range(2, n_max + 1):
            s = 2.0 * k + a + b
            a1 = 2.0 * k * (k + a + b) * (s - 2.0)
            a2 = (s - 1.0) * (a * a - b * b)
            a3 = (s - 2.0) * (s - 1.0) * s
            a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
            bad |= a1 == 0.0
            out[k] = ((a2 + a3 * x) * out[k - 1] - a4 * out[k - 2]) / a1
    if bad.any():
        # degenerate recurrence (alpha + beta = -k or 2 - 2k): use the finite sum
        flat = out.reshape(n_max + 1, -1)
        for i in np.flatnonzero(bad):
            args = (a.flat[i], b.flat[i], x.flat[i])
            flat[:, i] = [_explicit_float(k, *args) for k in range(n_max + 1)]
        out = flat.reshape(out.shape)
    return out


def _jacobi_scalar(n, a, b, x):
    # same recurrence as jacobi_P_all, in plain floats (hot path of the sup scans)
    if n == 0:
        return 1.0
    prev, cur = 1.0, (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(2, n + 1):
        s = 2.0 * k + a + b
        a1 = 2.0 * k * (k + a + b) * (s - 2.0)
        if a1 == 0.0:
            return _explicit_float(n, a, b, x)
        a2 = (s - 1.0) * (a * a - b * b)
        a3 = (s - 2.0) * (s - 1.0) * s
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        try:
            prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
        except OverflowError:
            return math.copysign(math.inf, cur)
    return cur


def jacobi_P(n: int, alpha, beta, x):
    """Jacobi polynomial P_n^(alpha,beta)(x), normalized by P_n(1) = binom(n+alpha, n).

    Any real alpha, beta are accepted (P_n is a polynomial in x, alpha, beta).
    """
    n = _check_degree(n)
    if np.ndim(alpha) == 0 and np.ndim(beta) == 0 and np.ndim(x) == 0:
        out = _jacobi_scalar(n, float(alpha), float(beta), float(x))
        if math.isinf(out):
            warnings.warn(f"P_{n} overflowed to inf", RuntimeWarning, stacklevel=2)
        return out
    out = jacobi_P_all(n, alpha, beta, x)[n]
    if np.isinf(out).any():
        warnings.warn(f"P_{n} overflowed to inf", RuntimeWarning, stacklevel=2)
    return _scalar_or_array(out, alpha, beta, x)


def _explicit_terms(n, a, b, x, one, fsum):
    u, v = (x - 1) / 2, (x + 1) / 2
    terms = []
    for k in range(n + 1):
        # binom(n+a, n-k) = (a+k+1)_{n-k}/(n-k)!, binom(n+b, k) = (n+b-k+1)_k/k!
        c1 = one
        for j in range(n - k):
            c1 *= (a + k + 1 + j) / (j + 1)
        c2 = one
        for j in range(k):
            c2 *= (n + b - k + 1 + j) / (j + 1)
        terms.append(c1 * c2 * u ** k * v ** (n - k))
    return fsum(terms)


def _explicit_float(n, a, b, x):
    return _explicit_terms(n, float(a), float(b), float(x), 1.0, math.fsum)


def jacobi_P_explicit(n: int, alpha: float, beta: float, x: float, dps: int = 40) -> float:
    """Explicit binomial-sum evaluation of P_n^(alpha,beta)(x) at ``dps`` digits."""
    n = _check_degree(n)
    with mpmath.workdps(dps):
        a, b, xx = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(x)
        val = _explicit_terms(n, a, b, xx, mpmath.mpf(1), mpmath.fsum)
        return float(val)


def laguerre_L(n: int, alpha, z):
    """Laguerre polynomial L_n^(alpha)(z) by the forward recurrence

    -(k+alpha) L_{k-1} + (2k+1+alpha) L_k - (k+1) L_{k+1} = z L_k,
    started from L_{-1} = 0, L_0 = 1.  Complex z is allowed.
    """
    n = _check_degree(n)
    z = np.asarray(z)
    alpha = np.asarray(alpha, dtype=float)
    dtype = complex if np.iscomplexobj(z) else float
    prev = np.zeros(np.broadcast(alpha, z).shape, dtype=dtype)
    cur = np.ones_like(prev)
    for k in range(n):
        prev, cur = cur, ((2 * k + 1 + alpha - z) * cur - (k + alpha) * prev) / (k + 1)
    return _scalar_or_array(cur, alpha, z)


def meixner_M(n: int, x: float, beta: float, c: float) -> float:
    """Meixner polynomial M_n(x; beta, c) = 2F1(-n, -x; beta; 1 - 1/c) as a finite sum."""
    n = _check_degree(n)
    if c == 0:
        raise DomainError("meixner_M needs c != 0")
    z = 1.0 - 1.0 / c
    terms = [1.0]
    term = 1.0
    for k in range(n):
        num = (-n + k) * (-x + k)
        if num == 0.0:
            break
        den = (beta + k) * (k + 1)
        if den == 0.0:
            raise DomainError(f"meixner_M: (beta)_k vanishes for beta={beta}, k={k + 1}")
        term *= num / den * z
        terms.append(term)
    return math.fsum(terms)


def gegenbauer_P(n: int, lam: float, x):
    """Ultraspherical polynomial (2 lam)_n / (lam + 1/2)_n * P_n^(lam-1/2, lam-1/2)(x)."""
    n = _check_degree(n)
    if lam <= -0.5:
        raise DomainError(f"Gegenbauer parameter must exceed -1/2, got {lam}")
    scale = pochhammer(2.0 * lam, n) / pochhammer(lam + 0.5, n)
    return scale * jacobi_P(n, lam - 0.5, lam - 0.5, x)


def legendre_P(n: int, x):
    """Legendre polynomial P_n(x) = P_n^(0,0)(x)."""
    return jacobi_P(n, 0.0, 0.0, x)


def jacobi_value_at_one(n: int, alpha: float) -> float:
    """P_n^(alpha,beta)(1) = (alpha+1)_n / n!  (independent of beta)."""
    out = 1.0
    for k in range(1, _check_degree(n) + 1):
        out *= (alpha + k) / k
    return out


def jacobi_R(n: int, alpha: float, beta: float, x):
    """Jacobi polynomial normalized by R_n(1) = 1."""
    p1 = jacobi_value_at_one(n, alpha)
    if p1 == 0.0:
        raise DomainError(f"P_{n}^({alpha},{beta})(1) = 0; R_n is undefined")
    return jacobi_P(n, alpha, beta, x) / p1


def endpoint_power(base, expo):
    """base ** expo for base >= 0, with 0**0 = 1 and 0**negative rejected."""
    base = np.asarray(base, dtype=float)
    expo = np.asarray(expo, dtype=float)
    if np.any((base == 0.0) & (expo < 0.0)):
        raise DomainError("negative power of zero at an interval endpoint")
    with np.errstate(divide="ignore"):
        return np.power(base, expo)


def g_norm(n: int, alpha: float, beta: float) -> float:
    """sqrt(Gamma(n+1) Gamma(n+a+b+1) / (Gamma(n+a+1) Gamma(n+b+1)))."""
    args = (n + alpha + 1.0, n + beta + 1.0, n + alpha + beta + 1.0)
    if min(args) <= 0.0:
        raise DomainError(f"g-function gamma arguments must be positive, got {args}")
    return math.exp(0.5 * (math.lgamma(n + 1.0) + math.lgamma(args[2])
                           - math.lgamma(args[0]) - math.lgamma(args[1])))


def g_fn(n: int, alpha: float, beta: float, x):
    """Weighted, normalized Jacobi function

    g_n(x) = g_norm * ((1-x)/2)^(alpha/2) ((1+x)/2)^(beta/2) P_n^(alpha,beta)(x),

    which has L^2(-1,1) norm sqrt(2 / (2n+alpha+beta+1)).
    """
    n = _check_degree(n)
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"g_fn needs alpha, beta > -1, got {alpha}, {beta}")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0):
        raise DomainError("g_fn is defined on [-1, 1]")
    w = endpoint_power((1.0 - xa) / 2.0, alpha / 2.0) * endpoint_power((1.0 + xa) / 2.0, beta / 2.0)
    out = g_norm(n, alpha, beta) * w * np.asarray(jacobi_P(n, alpha, beta, xa))
    return _scalar_or_array(out, x)


def jacobi_norm_sq(n: int, alpha: float, beta: float) -> float:
    """Normalized squared L^2 norm of P_n (weight rescaled to total mass one):

    (n+a+b+1)/(2n+a+b+1) * (a+1)_n (b+1)_n / ((a+b+2)_n n!).
    """
    n = _check_degree(n)
    if n == 0:
        return 1.0
    s = alpha + beta
    out = (n + s + 1.0) / (2 * n + s + 1.0)
    for k in range(n):
        out *= (alpha + 1 + k) * (beta + 1 + k) / ((s + 2 + k) * (k + 1))
    return out


def jacobi_h(n: int, alpha: float, beta: float) -> float:
    """Unnormalized squared norm  int_{-1}^1 P_n^2 (1-x)^a (1+x)^b dx."""
    mass = math.exp((alpha + beta + 1.0) * math.log(2.0) + math.lgamma(alpha + 1.0)
                    + math.lgamma(beta + 1.0) - math.lgamma(alpha + beta + 2.0))
    return mass * jacobi_norm_sq(n, alpha, beta)


def orthonormal_p(n: int, alpha: float, beta: float, x):
    """Orthonormal Jacobi polynomial P_n / sqrt(h_n)."""
    return np.asarray(jacobi_P(n, alpha, beta, x)) / math.sqrt(jacobi_h(n, alpha, beta))


def jacobi_inner_product(n: int, k: int, alpha: float, beta: float) -> float:
    """Normalized weighted inner product of P_n and P_k by minimal exact Gauss-Jacobi."""
    n, k = _check_degree(n), _check_degree(k)
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"orthogonality needs alpha, beta > -1, got {alpha}, {beta}")
    nodes, weights = gauss_jacobi(-(-(n + k) // 2) + 1, float(alpha), float(beta))
    pn = jacobi_P(n, alpha, beta, nodes)
    pk = jacobi_P(k, alpha, beta, nodes)
    return float(math.fsum(weights * pn * pk))
