"""Kernel of the evolution group e^(-itH_alpha) and its brute-force checks.

For n <= m the kernel is

    K(n, m) = (1+it)^(-(1+alpha)) ((t+i)/(t-i))^n (t/(i-t))^(m-n)
              * sqrt((alpha+1)_m n! / ((alpha+1)_n m!)) P_n^(alpha, m-n)(x),

with x = (t^2-1)/(t^2+1), and K(n, m) = K(m, n).  The factor t/(i-t) (not
t/(t-i)) is what makes K agree with the spectral integral
(-1)^(n+m) ... int e^(-it lam) L_n L_m drho, i.e. with e^(-itH) for the
matrix with positive off-diagonal entries.  Moduli are assembled in
log space so that rows with large m - n neither overflow nor underflow.
The complex power uses the principal branch; Re(1+it) = 1 keeps it
single-valued for every real t.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import AccuracyError, DomainError, UsageError
from .operator_spectral import truncated_eigensystem
from .polynomials import jacobi_P, laguerre_L, meixner_M
from .quadrature import gauss_laguerre
from .special_fn import binom_real, pochhammer

__all__ = [
    "KernelQuery",
    "KernelValue",
    "ConvolutionValue",
    "kernel",
    "kernel_closed",
    "kernel_log_modulus",
    "kernel_modulus_block",
    "kernel_meixner",
    "kernel_special",
    "kernel_recurrence_residual",
    "oracle_matexp",
    "oracle_quadrature",
    "conv_F",
    "conv_G",
    "kernel_convolution",
    "unitarity_defect",
]


@dataclass(frozen=True)
class KernelQuery:
    alpha: float
    t: float
    n: int
    m: int

    def __post_init__(self):
        if not self.alpha > -1.0:
            raise DomainError(f"kernel needs alpha > -1, got {self.alpha}")
        if self.n < 0 or self.m < 0:
            raise DomainError(f"indices must be nonnegative, got ({self.n}, {self.m})")
        if not math.isfinite(self.t):
            raise DomainError(f"t must be finite, got {self.t}")


@dataclass(frozen=True)
class KernelValue:
    value: complex
    modulus: float


def _value(z) -> KernelValue:
    z = complex(z)
    return KernelValue(z, abs(z))


def _jacobi_log_abs(n, alpha, beta, u, v):
    """log|P_n^(alpha, beta_j)| and its sign at x = v - u, u = (1-x)/2, v = (1+x)/2.

    ``n`` and ``beta`` are integer/real arrays of a common shape; the degree
    recurrence runs to max(n) and rescales whenever values grow past 1e150.
    """
    n = np.asarray(n)
    b = np.asarray(beta, dtype=float)
    a = float(alpha)
    x = v - u
    log_abs = np.zeros(b.shape)
    sign = np.ones(b.shape)
    n_max = int(n.max()) if n.size else 0
    prev = np.ones(b.shape)
    cur = (a + 1.0) - (a + b + 2.0) * u
    shift = np.zeros(b.shape)

    def capture(k, vals):
        hit = n == k
        if hit.any():
            with np.errstate(divide="ignore"):
                log_abs[hit] = np.log(np.abs(vals[hit])) + shift[hit]
            sign[hit] = np.sign(vals[hit])

    capture(0, prev)
    if n_max >= 1:
        capture(1, cur)
    for k in range(2, n_max + 1):
        s = 2.0 * k + a + b
        a1 = 2.0 * k * (k + a + b) * (s - 2.0)
        a2 = (s - 1.0) * (a * a - b * b)
        a3 = (s - 2.0) * (s - 1.0) * s
        a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        prev, cur = cur, ((a2 + a3 * x) * cur - a4 * prev) / a1
        big = np.abs(cur) > 1e150
        if big.any():
            scale = np.where(big, np.abs(cur), 1.0)
            cur = cur / scale
            prev = prev / scale
            shift = shift + np.log(scale)
        capture(k, cur)
    return log_abs, sign


def _kernel_parts(alpha, t, n, m):
    """log|K| and phase of K for broadcast index arrays (t != 0)."""
    n, m = np.broadcast_arrays(np.asarray(n, dtype=np.int64), np.asarray(m, dtype=np.int64))
    lo, hi = np.minimum(n, m), np.maximum(n, m)
    d = (hi - lo).astype(float)
    t = float(t)
    tt = t * t
    u, v = 1.0 / (1.0 + tt), tt / (1.0 + tt)
    log_p, sign_p = _jacobi_log_abs(lo, alpha, d, u, v)
    gl = special.gammaln
    log_ratio = 0.5 * (gl(alpha + 1.0 + hi) - gl(alpha + 1.0 + lo) + gl(lo + 1.0) - gl(hi + 1.0))
    # log v from log|t| so that t^2 underflowing to 0 stays finite
    log_v = 2.0 * math.log(abs(t)) - math.log1p(tt)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mod = (-(1.0 + alpha) / 2.0 * math.log1p(tt) + 0.5 * d * log_v
                   + log_ratio + log_p)
    # arg((t+i)/(t-i)) = 2 arg(t+i);  arg(t/(i-t)) = arg(t) + arg(t+i) + pi
    th = math.atan2(1.0, t)
    arg_t = 0.0 if t > 0 else math.pi
    phase = (-(1.0 + alpha) * math.atan(t) + 2.0 * th * lo + (arg_t + th + math.pi) * d
             + np.where(sign_p < 0, math.pi, 0.0))
    log_mod = np.where(sign_p == 0, -np.inf, log_mod)
    return log_mod, phase


def kernel(alpha: float, t: float, n, m):
    """K(n, m) of e^(-itH_alpha); broadcasts over integer arrays n, m."""
    if not alpha > -1.0:
        raise DomainError(f"kernel needs alpha > -1, got {alpha}")
    n_arr, m_arr = np.broadcast_arrays(np.asarray(n), np.asarray(m))
    if np.any(n_arr < 0) or np.any(m_arr < 0):
        raise DomainError("indices must be nonnegative")
    if t == 0.0:
        out = (n_arr == m_arr).astype(complex)
    else:
        log_mod, phase = _kernel_parts(alpha, t, n_arr, m_arr)
        out = np.exp(log_mod) * np.exp(1j * phase)
    return out.item() if out.ndim == 0 else out


def kernel_closed(q: KernelQuery) -> KernelValue:
    """Closed-form kernel entry; exactly delta_{nm} at t = 0."""
    return _value(kernel(q.alpha, q.t, q.n, q.m))


def kernel_log_modulus(alpha: float, t: float, n, m):
    """log|K(n, m)| (-inf where the kernel vanishes); t = 0 gives 0 / -inf."""
    n_arr, m_arr = np.broadcast_arrays(np.asarray(n), np.asarray(m))
    if t == 0.0:
        return np.where(n_arr == m_arr, 0.0, -np.inf)
    return _kernel_parts(alpha, t, n_arr, m_arr)[0]


def kernel_modulus_block(alpha: float, t: float, n_max: int, m_max: int) -> np.ndarray:
    """|K(n, m)| for 0 <= n <= n_max, 0 <= m <= m_max."""
    n, m = np.meshgrid(np.arange(n_max + 1), np.arange(m_max + 1), indexing="ij")
    return np.exp(kernel_log_modulus(alpha, t, n, m))


def kernel_meixner(q: KernelQuery) -> KernelValue:
    """Kernel via the Meixner form

    (1+it)^(-(1+alpha)) (-it/(1+it))^(n+m) sqrt((alpha+1)_n (alpha+1)_m / (n! m!))
    * M_n(m; alpha+1, t^2/(1+t^2)).

    At t = 0 the form is 0/0 and the closed form is returned instead.
    """
    if q.t == 0.0:
        return kernel_closed(q)
    a, t = q.alpha, q.t
    n, m = min(q.n, q.m), max(q.n, q.m)
    c = t * t / (1.0 + t * t)
    amp = math.sqrt(binom_real(a, n) * binom_real(a, m))
    r = -1j * t / (1.0 + 1j * t)
    val = (1.0 + 1j * t) ** (-(1.0 + a)) * r ** (n + m) * amp * meixner_M(n, m, a + 1.0, c)
    return _value(val)


_CASES = ("n0", "n1", "diag")


def kernel_special(q: KernelQuery, case: str) -> KernelValue:
    """Kernel from the explicit special cases n = 0, n = 1 and n = m.

    ``case`` names the one to use and must fit the indices (after n <= m
    ordering); a mismatch raises UsageError.
    """
    if case not in _CASES:
        raise UsageError(f"case must be one of {_CASES}, got {case!r}")
    a, t = q.alpha, q.t
    n, m = min(q.n, q.m), max(q.n, q.m)
    fits = {"n0": n == 0, "n1": n == 1, "diag": n == m}[case]
    if not fits:
        raise UsageError(f"case {case!r} does not apply to (n, m) = ({q.n}, {q.m})")
    if t == 0.0:
        return _value(1.0 if n == m else 0.0)
    pre = (1.0 + 1j * t) ** (-(1.0 + a))
    r = -1j * t / (1.0 + 1j * t)
    if case == "n0":
        return _value(pre * r ** m * math.sqrt(binom_real(a, m)))
    if case == "n1":
        # sqrt((alpha+2)_{m-1} / m!)
        amp = math.sqrt(pochhammer(a + 2.0, m - 1) / math.factorial(m)) if m < 170 else \
            math.exp(0.5 * (math.lgamma(a + 1.0 + m) - math.lgamma(a + 2.0) - math.lgamma(m + 1.0)))
        return _value(pre * r ** (m + 1) * ((1.0 + a) * t * t - m) / (t * t) * amp)
    x = (t * t - 1.0) / (t * t + 1.0)
    return _value(pre * ((t + 1j) / (t - 1j)) ** m * jacobi_P(m, a, 0.0, x))


def kernel_recurrence_residual(q: KernelQuery) -> float:
    """Largest absolute residual of the two three-term kernel recurrences.

    For n <= m:

      K(n+1, m+1) = sqrt((m+1)(m+1+a) / ((n+1)(n+1+a))) (i+t)/(i-t) K(n, m)
                    + (n+m+a+2) / sqrt((n+1)(n+1+a)) t/(i-t) K(n, m+1)
                  = (n+m+a+2) / sqrt((n+1)(m+1)) / (1+it) K_{a+1}(n, m)
                    + sqrt((n+a+1)(m+1+a) / ((n+1)(m+1))) (t+i)/(t-i) K(n, m).
    """
    a, t, n, m = q.alpha, q.t, q.n, q.m
    if n > m:
        raise DomainError("recurrences are stated for n <= m")
    if t == 0.0:
        raise DomainError("recurrence coefficients degenerate at t = 0")
    lhs = kernel(a, t, n + 1, m + 1)
    k_nm = kernel(a, t, n, m)
    rhs1 = (math.sqrt((m + 1) * (m + 1 + a) / ((n + 1) * (n + 1 + a))) * (1j + t) / (1j - t) * k_nm
            + (n + m + a + 2) / math.sqrt((n + 1) * (n + 1 + a)) * t / (1j - t)
            * kernel(a, t, n, m + 1))
    rhs2 = ((n + m + a + 2) / math.sqrt((n + 1) * (m + 1)) / (1.0 + 1j * t)
            * kernel(a + 1.0, t, n, m)
            + math.sqrt((n + a + 1) * (m + 1 + a) / ((n + 1) * (m + 1))) * (t + 1j) / (t - 1j) * k_nm)
    return max(abs(lhs - rhs1), abs(lhs - rhs2))


def oracle_matexp(alpha: float, N: int, t: float) -> np.ndarray:
    """e^(-itH) of the N x N truncation, from its (cached) eigendecomposition."""
    if N > 1000:
        raise DomainError(f"oracle_matexp is limited to N <= 1000, got {N}")
    if t == 0.0:
        return np.eye(N, dtype=complex)
    evals, evecs = truncated_eigensystem(float(alpha), int(N))
    return (evecs * np.exp(-1j * t * evals)) @ evecs.T


_QUAD_SIZES = (32, 64, 128, 256, 512, 1024, 2048)


def oracle_quadrature(alpha: float, t: float, n: int, m: int, tol: float = 1e-10) -> complex:
    """K(n, m) as the spectral integral

    (-1)^(n+m) (binom(n+a, n) binom(m+a, m))^(-1/2)
        * int e^(-it lam) L_n(lam) L_m(lam) e^(-lam) lam^a dlam / Gamma(a+1),

    by Gauss-Laguerre rules doubled until two successive values agree to ``tol``.
    """
    if abs(t) > 5.0 or n > 20 or m > 20:
        warnings.warn("oracle_quadrature is used outside |t| <= 5, n, m <= 20",
                      RuntimeWarning, stacklevel=2)
    pre = (-1) ** (n + m) / math.sqrt(binom_real(alpha, n) * binom_real(alpha, m))
    prev = None
    for k in _QUAD_SIZES:
        if k < (n + m) // 2 + 1:
            continue
        nodes, weights = gauss_laguerre(k, float(alpha))
        f = np.exp(-1j * t * nodes) * laguerre_L(n, alpha, nodes) * laguerre_L(m, alpha, nodes)
        val = pre * complex(np.sum(weights * f))
        if prev is not None and abs(val - prev) <= tol:
            return val
        prev = val
    raise AccuracyError(f"oracle_quadrature did not settle for t={t}, n={n}, m={m}",
                        achieved=abs(val - prev))


def _rotor(t):
    return (1j * t - 0.5) / (1j * t + 0.5)


def conv_F(alpha: float, n: int, t):
    """F_n(t) = (1/2 + it)^(-(1+alpha)) ((it - 1/2)/(it + 1/2))^n."""
    t = np.asarray(t, dtype=float)
    out = (0.5 + 1j * t) ** (-(1.0 + alpha)) * _rotor(t) ** n
    return out.item() if out.ndim == 0 else out


def conv_G(alpha: float, m: int, t):
    """G_m(t) = (1/2 + it)^(-1) sum_k (alpha)_k/k! ((it - 1/2)/(it + 1/2))^(m-k), k = 0..m."""
    t = np.asarray(t, dtype=float)
    r = _rotor(t)
    coef = 1.0
    total = np.zeros(t.shape, dtype=complex)
    for k in range(m + 1):
        total = total + coef * r ** (m - k)
        coef *= (alpha + k) / (k + 1)
    out = total / (0.5 + 1j * t)
    return out.item() if out.ndim == 0 else out


@dataclass(frozen=True)
class ConvolutionValue:
    """Result of the convolution path.

    ``value`` includes both tails (integrated after x -> 1/u); ``truncation``
    bounds what dropping them would cost; ``error`` is the quadrature estimate.
    """
    value: complex
    truncation: float
    error: float


def _quad_complex(f, lo, hi, points=None):
    opts = dict(limit=2000, epsabs=1e-13, epsrel=1e-12)
    if points:
        opts["points"] = points
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        re, e1 = integrate.quad(lambda x: f(x).real, lo, hi, **opts)
        im, e2 = integrate.quad(lambda x: f(x).imag, lo, hi, **opts)
    return complex(re, im), e1 + e2


def kernel_convolution(alpha: float, t: float, n: int, m: int, window: float = 200.0,
                       target: float = 1e-6) -> ConvolutionValue:
    """K(n, m) from the convolution representation

    K(n, m) = (-1)^(n+m) sqrt((alpha+1)_n m! / ((alpha+1)_m n!)) (F_n * G_m)(t),
    (f * g)(t) = (1/2pi) int f(x) g(t - x) dx.

    [-window, window] is integrated adaptively; the two tails are added by the
    substitution x = +-1/u, which is smooth at u = 0 because the integrand
    decays like |x|^(-2-alpha).
    """
    if alpha < 0.0:
        raise DomainError(f"convolution form needs alpha >= 0, got {alpha}")
    if not window > abs(t):
        raise DomainError(f"window must exceed |t| = {abs(t)}, got {window}")
    pre = (-1) ** (n + m) * math.sqrt(binom_real(alpha, n) / binom_real(alpha, m))

    def h(x):
        return conv_F(alpha, n, x) * conv_G(alpha, m, t - x)

    pts = sorted({p for p in (-10.0, -1.0, 0.0, 1.0, 10.0, t - 1.0, t, t + 1.0)
                  if -window < p < window})
    core, e0 = _quad_complex(h, -window, window, pts)
    right, e1 = _quad_complex(lambda u: h(1.0 / u) / (u * u), 0.0, 1.0 / window)
    left, e2 = _quad_complex(lambda u: h(-1.0 / u) / (u * u), 0.0, 1.0 / window)
    value = pre * (core + right + left) / (2.0 * math.pi)
    error = abs(pre) * (e0 + e1 + e2) / (2.0 * math.pi)
    # |F_n(x)| <= |x|^(-1-a), |G_m(y)| <= binom(m+a, m) / |y|, |y| >= |x| - |t|
    a_t = abs(t)
    tail_int = (math.log(window / (window - a_t)) / a_t if a_t > 0 else 1.0 / window)
    truncation = abs(pre) * binom_real(alpha, m) * window ** (-alpha) * tail_int / math.pi
    if error > target:
        raise AccuracyError(f"convolution quadrature error {error:.2g} exceeds {target:.1g}",
                            achieved=error)
    return ConvolutionValue(complex(value), truncation, error)


def unitarity_defect(alpha: float, t: float, n: int, M: int | None = None,
                     m_cap: int = 1_000_000) -> float:
    """|sum_{m=0}^{M} |K(n, m)|^2 - 1|.

    Without ``M`` the row is extended (doubling) until its last entries fall
    below 1e-14 in modulus and keep decreasing.
    """
    if not alpha > -1.0:
        raise DomainError(f"kernel needs alpha > -1, got {alpha}")
    if t == 0.0:
        return 0.0
    if M is not None:
        m = np.arange(M + 1)
        return abs(math.fsum(np.exp(2.0 * kernel_log_modulus(alpha, t, n, m))) - 1.0)
    size = 2 * n + 64
    while True:
        m = np.arange(size + 1)
        sq = np.exp(2.0 * kernel_log_modulus(alpha, t, n, m))
        tail = sq[-(size // 4):]
        if math.sqrt(tail[-1]) < 1e-14 and np.all(np.diff(tail) <= 0.0):
            return abs(math.fsum(sq) - 1.0)
        if size >= m_cap:
            raise AccuracyError(f"unitarity row not settled by M = {m_cap}",
                                achieved=math.sqrt(tail[-1]))
        size = min(2 * size, m_cap)
