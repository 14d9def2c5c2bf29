"""Gauss-Jacobi and Gauss-Laguerre rules via the Golub-Welsch eigensolve.

Weights are normalized to total mass one, i.e. the rules integrate against
the probability measures

    w(x) dx / int w      with w(x) = (1-x)^a (1+x)^b on [-1, 1], and
    lam^a e^(-lam) dlam / Gamma(a+1)   on [0, inf).

Rules are cached per (nodes, parameters); returned arrays are read-only.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError

__all__ = ["gauss_jacobi", "gauss_laguerre", "jacobi_recurrence", "laguerre_recurrence"]


def jacobi_recurrence(n: int, alpha: float, beta: float):
    """Diagonal and off-diagonal of the n x n Jacobi matrix for weight (1-x)^a (1+x)^b."""
    a, b = float(alpha), float(beta)
    k = np.arange(n, dtype=float)
    s = 2.0 * k + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        diag = (b * b - a * a) / (s * (s + 2.0))
    diag[0] = (b - a) / (a + b + 2.0)
    j = np.arange(1, n, dtype=float)
    s = 2.0 * j + a + b
    with np.errstate(divide="ignore", invalid="ignore"):
        off2 = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (s * s * (s + 1.0) * (s - 1.0))
    if n > 1:
        # j = 1 has a removable 0/0 when a + b + 1 = 0
        off2[0] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
    return diag, np.sqrt(off2)


def laguerre_recurrence(n: int, alpha: float):
    """Jacobi matrix of the Laguerre weight; it coincides with the truncated H_alpha."""
    k = np.arange(n, dtype=float)
    j = np.arange(1, n, dtype=float)
    return 2.0 * k + 1.0 + alpha, np.sqrt(j * (j + alpha))


def _golub_welsch(diag, off):
    if diag.size == 1:
        return diag.copy(), np.ones(1)
    nodes, vecs = eigh_tridiagonal(diag, off)
    weights = vecs[0, :] ** 2
    return nodes, weights / weights.sum()


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


@lru_cache(maxsize=256)
def gauss_jacobi(n: int, alpha: float, beta: float):
    """n-point Gauss-Jacobi rule (nodes, weights), exact to degree 2n - 1."""
    if n < 1:
        raise DomainError("a quadrature rule needs at least one node")
    if alpha <= -1.0 or beta <= -1.0:
        raise DomainError(f"Gauss-Jacobi needs alpha, beta > -1, got {alpha}, {beta}")
    return _freeze(*_golub_welsch(*jacobi_recurrence(n, alpha, beta)))


def _christoffel_weights(nodes, diag, off):
    """w_k = 1 / sum_j p_j(x_k)^2 over the orthonormal polynomials p_0..p_{n-1}.

    Unlike squared eigenvector components, which carry an absolute error of
    about 1e-32, this is accurate relative to each weight; it matters for the
    far Laguerre nodes whose weights are ~e^(-x).  Values are rescaled as they
    grow, so the log of the sum is tracked instead of the sum itself.
    """
    prev = np.zeros_like(nodes)
    cur = np.ones_like(nodes)
    total = np.ones_like(nodes)
    log_scale = np.zeros_like(nodes)
    for j in range(diag.size - 1):
        back = off[j - 1] * prev if j > 0 else 0.0
        prev, cur = cur, ((nodes - diag[j]) * cur - back) / off[j]
        total += cur * cur
        big = total > 1e200
        if big.any():
            f = np.where(big, 1e-100, 1.0)
            prev, cur, total = prev * f, cur * f, total * f * f
            log_scale += np.where(big, 200.0 * np.log(10.0), 0.0)
    return np.exp(-(np.log(total) + log_scale))


@lru_cache(maxsize=256)
def gauss_laguerre(n: int, alpha: float):
    """n-point Gauss-Laguerre rule for lam^alpha e^(-lam) / Gamma(alpha+1)."""
    if n < 1:
        raise DomainError("a quadrature rule needs at least one node")
    if alpha <= -1.0:
        raise DomainError(f"Gauss-Laguerre needs alpha > -1, got {alpha}")
    diag, off = laguerre_recurrence(n, alpha)
    nodes, _ = _golub_welsch(diag, off)
    return _freeze(nodes, _christoffel_weights(nodes, diag, off))
