"""The discrete Laguerre operator H_alpha and its spectral data.

H_alpha is the Jacobi matrix with diagonal 2n+1+alpha and off-diagonal
sqrt((n+1)(n+1+alpha)).  Its spectral measure is
e^(-lam) lam^alpha dlam / Gamma(alpha+1) on [0, inf) and the Weyl function
is the Stieltjes transform of that measure.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError
from .polynomials import laguerre_L
from .quadrature import gauss_laguerre
from .special_fn import binom_real, gen_exp_integral

__all__ = [
    "TruncatedOperator",
    "build_truncated",
    "truncated_eigensystem",
    "first_kind_P",
    "first_kind_seq",
    "second_kind_Q",
    "second_kind_seq",
    "second_kind_Q_integral",
    "weyl_m",
    "weyl_m_boundary",
    "spectral_density",
    "weyl_solution",
    "weyl_solution_forward",
    "green_function",
    "green_column",
    "resolvent_residual",
]


def _check_alpha(alpha):
    if not alpha > -1.0:
        raise DomainError(f"H_alpha needs alpha > -1, got {alpha}")


@dataclass(frozen=True, eq=False)
class TruncatedOperator:
    """Upper-left N x N block of H_alpha."""

    alpha: float
    N: int
    diag: np.ndarray
    offdiag: np.ndarray

    def dense(self) -> np.ndarray:
        return (np.diag(self.diag) + np.diag(self.offdiag, 1)
                + np.diag(self.offdiag, -1))

    def matvec(self, v):
        v = np.asarray(v)
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out


def build_truncated(alpha: float, N: int) -> TruncatedOperator:
    _check_alpha(alpha)
    if N < 1:
        raise DomainError(f"truncation size must be positive, got {N}")
    n = np.arange(N, dtype=float)
    diag = 2.0 * n + 1.0 + alpha
    off = np.sqrt((n[:-1] + 1.0) * (n[:-1] + 1.0 + alpha))
    diag.setflags(write=False)
    off.setflags(write=False)
    return TruncatedOperator(float(alpha), int(N), diag, off)


@lru_cache(maxsize=32)
def truncated_eigensystem(alpha: float, N: int):
    """Eigenvalues and orthonormal eigenvectors of the truncation (cached, read-only)."""
    op = build_truncated(alpha, N)
    evals, evecs = np.linalg.eigh(op.dense())
    evals.setflags(write=False)
    evecs.setflags(write=False)
    return evals, evecs


def first_kind_P(alpha: float, n: int, z):
    """P_{alpha,n}(z) = (-1)^n binom(n+alpha, n)^(-1/2) L_n^(alpha)(z)."""
    _check_alpha(alpha)
    return (-1) ** n * laguerre_L(n, alpha, z) / math.sqrt(binom_real(alpha, n))


def _tau_forward(alpha, z, u0, u1, n_max, dps=None):
    if dps is None:
        sqrt = math.sqrt
        out = np.empty(n_max + 1, dtype=complex if isinstance(z, complex) else float)
    else:
        # the same recurrence in extended precision, e.g. for Wronskian checks
        sqrt = mpmath.sqrt
        out = np.empty(n_max + 1, dtype=object)
        alpha, z, u0, u1 = (mpmath.mpmathify(v) for v in (alpha, z, u0, u1))
    out[0] = u0
    if n_max >= 1:
        out[1] = u1
    for k in range(1, n_max):
        out[k + 1] = ((z - (2 * k + 1 + alpha)) * out[k]
                      - sqrt(k * (k + alpha)) * out[k - 1]) / sqrt((k + 1) * (k + 1 + alpha))
    return out


def _seq(alpha, n_max, z, dps, start):
    _check_alpha(alpha)
    if dps is not None:
        with mpmath.workdps(dps):
            z = mpmath.mpmathify(z)
            return _tau_forward(alpha, z, *start(mpmath.mpf(alpha), z, mpmath.sqrt), n_max, dps)
    z = complex(z) if np.iscomplexobj(z) else float(z)
    return _tau_forward(alpha, z, *start(alpha, z, math.sqrt), n_max)


def first_kind_seq(alpha: float, n_max: int, z, dps=None):
    """P_{alpha,0..n_max}(z) from the symmetric three-term recurrence.

    With ``dps`` set, the recurrence runs in mpmath at that many digits and
    an object array of mpmath numbers is returned.
    """
    return _seq(alpha, n_max, z, dps, lambda a, z, sqrt: (1, (z - 1 - a) / sqrt(1 + a)))


def second_kind_seq(alpha: float, n_max: int, z, dps=None):
    """Q_{alpha,0..n_max}(z): same recurrence, started from Q_0 = 0, Q_1 = (1+alpha)^(-1/2)."""
    return _seq(alpha, n_max, z, dps, lambda a, z, sqrt: (0, 1 / sqrt(1 + a)))


def second_kind_Q(alpha: float, n: int, z):
    return second_kind_seq(alpha, n, z)[n]


def second_kind_Q_integral(alpha: float, n: int, z) -> complex:
    """Q_{alpha,n}(z) from its defining integral (slow check for small n).

    The divided difference (P_n(z) - P_n(lam)) / (z - lam) is a polynomial in
    lam of degree n-1, so a Gauss-Laguerre rule with n nodes is exact; it is
    expanded around z to avoid the 0/0 at lam = z.
    """
    _check_alpha(alpha)
    if n == 0:
        return 0.0
    # monomial coefficients of P_{alpha,n}(lam) from the recurrence on polynomials
    poly = [np.array([1.0]), np.array([-(1.0 + alpha), 1.0]) / math.sqrt(1.0 + alpha)]
    for k in range(1, n):
        nxt = (np.polynomial.polynomial.polysub(
            np.polynomial.polynomial.polymulx(poly[k]) - (2 * k + 1 + alpha) * np.pad(poly[k], (0, 1)),
            math.sqrt(k * (k + alpha)) * np.pad(poly[k - 1], (0, 2))) / math.sqrt((k + 1) * (k + 1 + alpha)))
        poly.append(nxt)
    p = np.polynomial.Polynomial(poly[n])
    # (p(z) - p(lam)) / (z - lam) as a polynomial in lam
    num = p(z) - p
    quot, _ = divmod(num, np.polynomial.Polynomial([z, -1.0]))
    nodes, weights = gauss_laguerre(max(n, 1), float(alpha))
    return complex(np.sum(weights * quot(nodes)))


def spectral_density(alpha: float, lam):
    """Density of the spectral measure: e^(-lam) lam^alpha / Gamma(alpha+1) on lam > 0."""
    _check_alpha(alpha)
    lam_a = np.asarray(lam, dtype=float)
    out = np.zeros(lam_a.shape)
    pos = lam_a > 0.0
    out[pos] = np.exp(-lam_a[pos] + alpha * np.log(lam_a[pos]) - math.lgamma(alpha + 1.0))
    zero = lam_a == 0.0
    if zero.any():
        if alpha < 0.0:
            warnings.warn("spectral density has an integrable singularity at 0", RuntimeWarning,
                          stacklevel=2)
            out[zero] = math.inf
        elif alpha == 0.0:
            out[zero] = 1.0
    return out.item() if lam_a.ndim == 0 else out


_GL_SIZES = (64, 128, 256, 512, 1024, 2048)


def weyl_m(alpha: float, z, rtol: float = 1e-13) -> complex:
    """Weyl function m_alpha(z) = int drho_alpha(lam) / (lam - z), z off [0, inf).

    Gauss-Laguerre quadrature with node doubling until two successive rules
    agree to ``rtol``; when that fails (z close to the spectrum) the value is
    taken from m = e^(-z) E_{1+alpha}(-z).
    """
    _check_alpha(alpha)
    z = complex(z)
    if z.imag == 0.0 and z.real >= 0.0:
        raise DomainError(f"z={z} lies on the spectrum [0, inf)")
    prev = None
    for k in _GL_SIZES:
        nodes, weights = gauss_laguerre(k, float(alpha))
        val = complex(np.sum(weights / (nodes - z)))
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        prev = val
    return cmath.exp(-z) * gen_exp_integral(1.0 + alpha, -z)


def weyl_m_boundary(alpha: float, lam: float, side: int = 1) -> complex:
    """Boundary value m_alpha(lam + i0) for lam > 0 (``side=-1`` gives lam - i0).

    Imaginary part: pi * density(lam).  Real part: principal value of the
    Stieltjes integral (Cauchy-weight quadrature).
    """
    _check_alpha(alpha)
    if not lam > 0.0:
        raise DomainError(f"boundary values are taken at lam > 0, got {lam}")
    c = math.lgamma(alpha + 1.0)

    def f(s):
        return math.exp(-s + alpha * math.log(s) - c) if s > 0.0 else 0.0

    right = lam + 60.0
    opts = dict(epsabs=1e-15, epsrel=1e-12, limit=500)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        left, _ = integrate.quad(lambda s: f(s) / (s - lam), 0.0, lam / 2.0, **opts)
        mid, _ = integrate.quad(f, lam / 2.0, right, weight="cauchy", wvar=lam, **opts)
        tail, _ = integrate.quad(lambda s: f(s) / (s - lam), right, np.inf, **opts)
    if side not in (1, -1):
        raise DomainError(f"side must be +1 or -1, got {side}")
    return complex(left + mid + tail, side * math.pi * spectral_density(alpha, lam))


def weyl_solution_forward(alpha: float, z, n_max: int) -> np.ndarray:
    """Psi_n = Q_n + m(z) P_n by forward recurrence (unstable for large n)."""
    m = weyl_m(alpha, z)
    z = complex(z)
    return second_kind_seq(alpha, n_max, z) + m * first_kind_seq(alpha, n_max, z)


def _minimal_backward(alpha, z, n_max, start):
    u_next, u = 0.0 + 0.0j, 1.0 + 0.0j
    vals = np.zeros(n_max + 1, dtype=complex)
    for k in range(start, 0, -1):
        # tau u = z u at row k solved for u_{k-1}
        u_prev = ((z - (2 * k + 1 + alpha)) * u
                  - math.sqrt((k + 1) * (k + 1 + alpha)) * u_next) / math.sqrt(k * (k + alpha))
        u_next, u = u, u_prev
        if k - 1 <= n_max:
            vals[k - 1] = u
        if abs(u) > 1e150:
            u_next /= 1e150
            u /= 1e150
            vals /= 1e150
    if start <= n_max:
        raise AccuracyError("backward recurrence start must exceed n_max")
    return vals / vals[0]


def weyl_solution(alpha: float, z, n_max: int, rtol: float = 1e-12,
                  max_start: int = 200_000) -> np.ndarray:
    """The l^2 (Weyl) solution Psi_0..Psi_{n_max} normalized by Psi_0 = m(z).

    Computed by backward recurrence from an increasing start index until the
    requested entries stabilize, which avoids the cancellation in Q + m P.
    Close to the spectrum Psi decays too slowly for that; there the forward
    form Q + m P is used instead, provided its cancellation stays mild.
    """
    _check_alpha(alpha)
    z = complex(z)
    m = weyl_m(alpha, z)
    start = 2 * n_max + 64
    # successive starts agree to roundoff (~1e-14) once converged
    ratios = _minimal_backward(alpha, z, n_max, start)
    while 2 * start <= max_start:
        start *= 2
        nxt = _minimal_backward(alpha, z, n_max, start)
        diff = np.max(np.abs(nxt - ratios) / np.maximum(np.abs(nxt), 1e-300))
        ratios = nxt
        if diff <= rtol:
            return m * ratios
    q = second_kind_seq(alpha, n_max, z)
    p = first_kind_seq(alpha, n_max, z)
    psi = q + m * p
    loss = np.max(np.maximum(np.abs(q), np.abs(m * p)) / np.maximum(np.abs(psi), 1e-300))
    achieved = loss * n_max * np.finfo(float).eps
    if achieved > 1e-8:
        raise AccuracyError(f"Weyl solution at z={z}: estimated relative error {achieved:.2g}",
                            achieved=achieved)
    return psi


def green_function(alpha: float, z, n: int, m: int) -> complex:
    """Resolvent kernel <(H - z)^(-1) delta_n, delta_m> = P_min(n,m)(z) Psi_max(n,m)(z)."""
    lo, hi = min(n, m), max(n, m)
    psi = weyl_solution(alpha, z, hi)
    return complex(first_kind_seq(alpha, lo, complex(z))[lo] * psi[hi])


def green_column(alpha: float, z, m: int, n_max: int) -> np.ndarray:
    """G(z; n, m) for n = 0..n_max."""
    z = complex(z)
    psi = weyl_solution(alpha, z, max(n_max, m))
    p = first_kind_seq(alpha, max(n_max, m), z)
    n = np.arange(n_max + 1)
    return np.where(n <= m, p[: n_max + 1] * psi[m], p[m] * psi[: n_max + 1])


def resolvent_residual(alpha: float, z, m: int, N: int = 400, margin: int = 50) -> float:
    """max |((H_N - z) G(z; ., m) - e_m)_n| over rows n < N - margin."""
    op = build_truncated(alpha, N)
    g = green_column(alpha, z, m, N - 1)
    r = op.matvec(g) - complex(z) * g
    r[m] -= 1.0
    return float(np.max(np.abs(r[: N - margin])))
