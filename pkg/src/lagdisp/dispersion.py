"""Weighted l^1 -> l^inf norms of the evolution group e^{-itH_alpha}.

For a positive weight sigma the norm from l^1(sigma) to l^inf(1/sigma) is the
entrywise supremum of |K(n, m)| / (sigma(n) sigma(m)).  All scans work with
log|K| so that tiny kernel entries at large t keep their relative accuracy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import AccuracyError, ConsistencyError, DomainError, UsageError
from .evolution import kernel_log_modulus
from .inequalities import BoundReport, SupResult
from .polynomials import endpoint_power, jacobi_P

__all__ = [
    "sigma_alpha",
    "WeightSeq",
    "EtaNuQuery",
    "NormResult",
    "window_norm",
    "weighted_norm",
    "check_decay_flat",
    "check_decay_hs",
    "check_decay_sharp",
    "lemma_case_bounds",
    "eta_nu_scan",
    "decay_slope_fit",
    "HS_CONSTANT",
]

HS_CONSTANT = 6.0 * math.sqrt(2.0)


def _log_sigma(n, alpha):
    n = np.asarray(n, dtype=float)
    return 0.5 * (gammaln(n + alpha + 1.0) - gammaln(n + 1.0) - gammaln(alpha + 1.0))


def sigma_alpha(n, alpha):
    """binom(n+alpha, n)^(1/2)."""
    if alpha <= -1:
        raise DomainError(f"sigma_alpha needs alpha > -1, got {alpha}")
    out = np.exp(_log_sigma(n, alpha))
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class WeightSeq:
    """Weight sequence: 'unit', 'sigma_alpha' (needs alpha) or 'custom' (needs table)."""
    kind: str = "unit"
    alpha: float | None = None
    table: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("unit", "sigma_alpha", "custom"):
            raise UsageError(f"unknown weight kind {self.kind!r}")
        if self.kind == "sigma_alpha" and (self.alpha is None or self.alpha <= -1):
            raise UsageError("sigma_alpha weights need alpha > -1")
        if self.kind == "custom":
            if not self.table or min(self.table) <= 0:
                raise UsageError("custom weights need a table of positive values")

    def log_values(self, N):
        """log w(n) for n = 0..N."""
        if self.kind == "unit":
            return np.zeros(N + 1)
        if self.kind == "sigma_alpha":
            return _log_sigma(np.arange(N + 1), self.alpha)
        if len(self.table) <= N:
            raise UsageError(f"custom weight table has {len(self.table)} entries, window needs {N + 1}")
        return np.log(np.asarray(self.table[:N + 1], dtype=float))


@dataclass(frozen=True)
class EtaNuQuery:
    eta: float
    nu: float
    weight: WeightSeq

    def validate(self, alpha):
        if not 0.0 <= self.eta <= 1.0 + alpha:
            raise DomainError(f"eta must lie in [0, 1+alpha], got {self.eta}")
        if self.nu < 0:
            raise DomainError(f"nu must be nonnegative, got {self.nu}")


@dataclass(frozen=True)
class NormResult:
    t: float
    norm: float
    argmax_nm: tuple
    theoretical: float | None = None
    relative_gap: float | None = None


def _theory(alpha, t, w: WeightSeq):
    if w.kind == "sigma_alpha" and alpha >= 0 and w.alpha == alpha:
        return (1.0 + t * t) ** (-(1.0 + alpha) / 2.0)
    if w.kind == "unit" and alpha == 0:
        return (1.0 + t * t) ** -0.5
    return None


def window_norm(alpha, t, w: WeightSeq, N=128) -> NormResult:
    """max over 0 <= n, m <= N of |K(n, m)| / (w(n) w(m)), without a stability check."""
    if N < 1:
        raise UsageError(f"window must be positive, got {N}")
    idx = np.arange(N + 1)
    lw = w.log_values(N)
    logk = kernel_log_modulus(alpha, t, idx[:, None], idx[None, :]) - lw[:, None] - lw[None, :]
    flat = int(np.argmax(logk))      # first maximal cell in row-major order
    n, m = divmod(flat, N + 1)
    norm = float(np.exp(logk[n, m]))
    theo = _theory(alpha, t, w)
    gap = None if theo is None else abs(norm - theo) / theo
    return NormResult(float(t), norm, (n, m), theo, gap)


def weighted_norm(alpha, t, w: WeightSeq, N=128, rtol=1e-12) -> NormResult:
    """Window sup at N, confirmed against the 2N window (relative rtol)."""
    if N < 64:
        raise UsageError(f"window must be at least 64, got {N}")
    small = window_norm(alpha, t, w, N)
    big = window_norm(alpha, t, w, 2 * N)
    if abs(big.norm - small.norm) > rtol * big.norm:
        raise AccuracyError(f"window sup moved from {small.norm!r} (N={N}) to {big.norm!r} (N={2 * N})",
                            achieved=abs(big.norm - small.norm) / big.norm)
    return big


def _report(name, norm: NormResult, bound, tol, note=""):
    return BoundReport.make(name, SupResult(norm.norm, 0.0), bound, tol, note=note or
                            f"argmax (n, m) = {norm.argmax_nm}")


def check_decay_flat(alpha, t, N=256, tol=1e-12) -> BoundReport:
    """Unweighted window norm against (1+t^2)^(-1/2); equality expected for alpha = 0."""
    if not (float(alpha).is_integer() and alpha >= 0):
        raise DomainError(f"the flat decay bound is stated for alpha in N_0, got {alpha}")
    res = window_norm(alpha, t, WeightSeq("unit"), N)
    bound = (1.0 + t * t) ** -0.5
    report = _report("decay_flat", res, bound, tol)
    if alpha == 0 and abs(res.norm - bound) > tol:
        return BoundReport(report.name, report.supremum, report.argmax, bound, report.slack, False,
                           note=f"equality expected at alpha = 0; argmax {res.argmax_nm}")
    return report


def check_decay_hs(alpha, t, N=256, C=HS_CONSTANT, tol=1e-12) -> BoundReport:
    """max over the window of |K(n,m)| |t|^(1/2) (n+m+alpha+1)^(1/4) against C."""
    if t == 0:
        raise DomainError("the decay bound needs t != 0")
    if alpha < 0:
        raise DomainError(f"the decay bound needs alpha >= 0, got {alpha}")
    idx = np.arange(N + 1)
    n, m = idx[:, None], idx[None, :]
    scaled = (kernel_log_modulus(alpha, t, n, m) + 0.5 * math.log(abs(t))
              + 0.25 * np.log(n + m + alpha + 1.0))
    flat = int(np.argmax(scaled))
    nm = divmod(flat, N + 1)
    return BoundReport.make("decay_hs", SupResult(float(np.exp(scaled[nm])), 0.0), C, tol,
                            note=f"argmax (n, m) = {nm}")


def check_decay_sharp(alpha, t, N=128, rtol=1e-10) -> BoundReport:
    """sigma_alpha-weighted norm equals (1+t^2)^(-(1+alpha)/2)."""
    if alpha < 0:
        raise DomainError(f"the sharp decay theorem needs alpha >= 0, got {alpha}")
    res = weighted_norm(alpha, t, WeightSeq("sigma_alpha", alpha), N)
    bound = res.theoretical
    ok = abs(res.norm - bound) <= rtol * bound
    return BoundReport("decay_sharp", res.norm, 0.0, bound, bound - res.norm, bool(ok),
                       tol=rtol * bound, note=f"argmax (n, m) = {res.argmax_nm}")


def lemma_case_bounds(alpha, t, n, m, tol=1e-9) -> BoundReport:
    """(1+t^2)^((1+alpha)/2) |K(n,m)| against the case bound:

    alpha >= |m-n|:  sigma(n) sigma(m)
    m - n >= alpha:  sigma(m)/sigma(n) binom(m, n)
    n - m >= alpha:  sigma(n)/sigma(m) binom(n, m)

    One of the three always applies.  tol is relative to the bound.
    """
    if alpha <= -1:
        raise DomainError(f"need alpha > -1, got {alpha}")
    d = m - n
    ls_n, ls_m = float(_log_sigma(n, alpha)), float(_log_sigma(m, alpha))
    lo, hi = min(n, m), max(n, m)
    log_binom = math.lgamma(hi + 1.0) - math.lgamma(lo + 1.0) - math.lgamma(hi - lo + 1.0)
    if alpha >= abs(d):
        case, log_bound = 1, ls_n + ls_m
    elif d >= alpha:
        case, log_bound = 2, ls_m - ls_n + log_binom
    else:
        case, log_bound = 3, ls_n - ls_m + log_binom
    value = math.exp(0.5 * (1.0 + alpha) * math.log1p(t * t)
                     + float(kernel_log_modulus(alpha, t, n, m)))
    bound = math.exp(log_bound)
    x = (t * t - 1.0) / (t * t + 1.0)
    return BoundReport.make(f"lemma_case{case}", SupResult(value, x), bound, tol * bound,
                            note=f"case {case}")


def eta_nu_scan(alpha, q: EtaNuQuery, n_max, x_grid) -> SupResult:
    """Empirical constant C in

    ((1-x)/2)^((1+alpha-eta)/2) ((1+x)/2)^((m-n+nu)/2) |P_n^(alpha,m-n)(x)|
        <= C sigma(n) sigma(m) sqrt((alpha+1)_n m! / ((alpha+1)_m n!)),   n <= m <= n_max.

    Returns the sup and, in ``argmax``, the x where it occurred.
    """
    q.validate(alpha)
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or x.size == 0 or np.any(np.abs(x) > 1):
        raise DomainError("x_grid must be a nonempty 1-d array inside [-1, 1]")
    lw = q.weight.log_values(n_max)
    lpoch = gammaln(np.arange(n_max + 1) + alpha + 1.0) - gammaln(np.arange(n_max + 1) + 1.0)
    left = endpoint_power((1.0 - x) / 2.0, (1.0 + alpha - q.eta) / 2.0)
    best = SupResult(-1.0, 0.0)
    for n in range(n_max + 1):
        for m in range(n, n_max + 1):
            expr = (left * endpoint_power((1.0 + x) / 2.0, (m - n + q.nu) / 2.0)
                    * np.abs(jacobi_P(n, alpha, m - n, x)))
            # sqrt((alpha+1)_n m! / ((alpha+1)_m n!)) in logs
            log_den = lw[n] + lw[m] + 0.5 * (lpoch[n] - lpoch[m])
            vals = expr * math.exp(-log_den)
            i = int(np.argmax(vals))
            if vals[i] > best.supremum:
                best = SupResult(float(vals[i]), float(x[i]))
    return best


def decay_slope_fit(alpha, w: WeightSeq, t_range=(10.0, 1000.0), samples=10, N=128) -> float:
    """Least-squares slope of log norm against log t on a log grid (endpoints dropped)."""
    lo, hi = t_range
    if not (10.0 <= lo < hi <= 1000.0):
        raise UsageError(f"t_range must lie within [10, 1000], got {t_range}")
    if samples < 8:
        raise UsageError(f"need at least 8 samples, got {samples}")
    ts = np.geomspace(lo, hi, samples + 2)[1:-1]
    norms = np.array([weighted_norm(alpha, float(t), w, N).norm for t in ts])
    if np.any(norms <= 0):
        raise ConsistencyError("nonpositive norm in slope fit")
    slope, _ = np.polyfit(np.log(ts), np.log(norms), 1)
    return float(slope)
