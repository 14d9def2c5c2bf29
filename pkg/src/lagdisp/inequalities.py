"""Numerical checks of Bernstein-type inequalities for Jacobi polynomials.

Every check reduces to a supremum of a nonnegative function on an interval:
a Chebyshev-Lobatto grid locates the best cell (both endpoints are sampled,
since many of these maxima sit at x = +-1) and a bounded scalar minimizer
refines inside the neighbouring cells.  A report is exploratory when the
parameters lie outside the range where the inequality is known to hold; such
scans still run and report their slack but should not be asserted.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import digamma

from .errors import ConsistencyError, DomainError, UsageError
from .polynomials import (endpoint_power, g_fn, jacobi_P, jacobi_R, orthonormal_p)

__all__ = [
    "WeightedSupQuery",
    "SupResult",
    "BoundReport",
    "SoninBracket",
    "OrderCheck",
    "SoninMaxima",
    "WignerSpec",
    "BOUND_NAMES",
    "scan_sup",
    "sup_weighted_jacobi",
    "check_named_bound",
    "sonin_points",
    "check_x1_le_x2",
    "sonin_maxima_check",
    "binom_lower_bound_check",
    "wigner_d",
    "wigner_d_oracle",
    "unitarity_defect_matrix",
    "disk_R",
    "disk_addition_coefficient",
    "verify_disk_addition",
    "disk_sum_of_squares",
    "biangle_R",
    "check_biangle_bound",
    "emn_scan",
    "f_m_extremum_check",
    "bern_a0_violation_search",
]

TOL = 1e-9


@dataclass(frozen=True)
class WeightedSupQuery:
    """Supremum target (1-x)^a (1+x)^b |P_n^(alpha,beta)(x)| on [-1, 1]."""
    n: int
    alpha: float
    beta: float
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"degree must be nonnegative, got {self.n}")
        if self.a < 0 or self.b < 0:
            raise DomainError(f"weight exponents must be nonnegative, got {self.a}, {self.b}")


@dataclass(frozen=True)
class SupResult:
    supremum: float
    argmax: float


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking supremum <= bound; ``passed`` iff slack >= -tol."""
    name: str
    supremum: float
    argmax: float
    bound: float
    slack: float
    passed: bool
    exploratory: bool = False
    tol: float = TOL
    note: str = ""

    @classmethod
    def make(cls, name, sup: SupResult, bound, tol=TOL, exploratory=False, note=""):
        slack = float(bound) - sup.supremum
        return cls(name, sup.supremum, sup.argmax, float(bound), slack,
                   bool(slack >= -tol), exploratory, tol, note)


@dataclass(frozen=True)
class SoninBracket:
    x0: float
    x1: float
    x2: float | None
    lambda_n: float
    x2_defined: bool = True


@dataclass(frozen=True)
class OrderCheck:
    """x1 <= x2 test; truthy when it holds."""
    holds: bool
    x1: float
    x2: float | None
    exploratory: bool

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class SoninMaxima:
    passed: bool
    decreasing_left: bool
    increasing_right: bool
    none_below_x0: bool
    bracket: SoninBracket
    maxima: tuple = field(default=())


@dataclass(frozen=True)
class WignerSpec:
    two_l: int
    theta: float

    def __post_init__(self):
        if self.two_l < 0:
            raise DomainError(f"two_l must be nonnegative, got {self.two_l}")
        if not 0.0 <= self.theta <= math.pi / 2:
            raise DomainError(f"theta must lie in [0, pi/2], got {self.theta}")

    @property
    def dim(self):
        return self.two_l + 1


# ---------------------------------------------------------------- sup scans

def _lobatto(grid, lo, hi):
    c = np.cos(np.pi * np.arange(grid) / (grid - 1))[::-1]
    return lo + (hi - lo) * (c + 1.0) / 2.0


def scan_sup(f, grid=2001, refine=True, lo=-1.0, hi=1.0, xatol=1e-12) -> SupResult:
    """max of a nonnegative vectorized f on [lo, hi] (grid plus local refinement)."""
    if grid < 101:
        raise UsageError(f"grid must have at least 101 points, got {grid}")
    xs = _lobatto(grid, lo, hi)
    vals = np.asarray(f(xs), dtype=float)
    i = int(np.argmax(vals))
    best = SupResult(float(vals[i]), float(xs[i]))
    if not refine:
        return best
    left, right = xs[max(i - 1, 0)], xs[min(i + 1, grid - 1)]
    if right <= left:
        return best
    res = minimize_scalar(lambda x: -float(f(x)), bounds=(left, right), method="bounded",
                          options={"xatol": xatol})
    if res.success and -res.fun > best.supremum:
        return SupResult(float(-res.fun), float(res.x))
    return best


def _weighted_jacobi(n, alpha, beta, a, b, scale=1.0):
    def f(x):
        w = endpoint_power(1.0 - x, a) * endpoint_power(1.0 + x, b)
        return scale * w * np.abs(jacobi_P(n, alpha, beta, x))
    return f


def sup_weighted_jacobi(q: WeightedSupQuery, grid=2001, refine=True) -> SupResult:
    """sup over [-1,1] of (1-x)^a (1+x)^b |P_n^(alpha,beta)(x)|."""
    return scan_sup(_weighted_jacobi(q.n, q.alpha, q.beta, q.a, q.b), grid, refine)


# ---------------------------------------------------------------- named bounds

def _is_int(v):
    return float(v).is_integer()


def _lgamma_ratio(num, den):
    return sum(math.lgamma(v) for v in num) - sum(math.lgamma(v) for v in den)


def _bernstein_legendre(n, alpha, beta, C):
    # (1-x^2)^(1/4) |P_n(x)| <= 2 / sqrt(pi (2n+1))
    return (_weighted_jacobi(n, 0.0, 0.0, 0.25, 0.25),
            2.0 / math.sqrt(math.pi * (2 * n + 1)), alpha == 0 and beta == 0, (-1.0, 1.0))


def _bern_a0(n, alpha, beta, C):
    # ((1+x)/2)^(beta/2) |P_n^(alpha,beta)| <= binom(n+alpha, n)
    valid = beta >= 0 and alpha >= beta - math.floor(beta)
    bound = math.exp(_lgamma_ratio([n + alpha + 1.0], [n + 1.0, alpha + 1.0]))
    return (_weighted_jacobi(n, alpha, beta, 0.0, beta / 2.0, 2.0 ** (-beta / 2.0)),
            bound, valid, (-1.0, 1.0))


def _b01(n, alpha, beta, C):
    # ((1-x)/2)^((alpha+1)/2) ((1+x)/2)^(beta/2) |P_n| <= sqrt(G(n+a+1)G(n+b+1)/(G(n+1)G(n+a+b+1)))
    valid = alpha > -1 and _is_int(beta + n) and beta + n >= 0
    bound = math.exp(0.5 * _lgamma_ratio([n + alpha + 1.0, n + beta + 1.0],
                                         [n + 1.0, n + alpha + beta + 1.0]))
    lo = -1.0 if beta >= 0 else -1.0 + 1e-12
    return (_weighted_jacobi(n, alpha, beta, (alpha + 1) / 2, beta / 2,
                             2.0 ** (-(alpha + 1 + beta) / 2)),
            bound, valid, (lo, 1.0))


def _g_abs(n, alpha, beta, extra=0.0):
    def f(x):
        return endpoint_power(1.0 - np.asarray(x) ** 2, extra) * np.abs(g_fn(n, alpha, beta, x))
    return f


def _g_unif1(n, alpha, beta, C):
    valid = _is_int(alpha) and _is_int(beta) and alpha >= 0 and beta >= 0
    return _g_abs(n, alpha, beta), 1.0, valid, (-1.0, 1.0)


def _g_unif2(n, alpha, beta, C):
    valid = _is_int(alpha) and _is_int(beta) and alpha >= 0 and beta >= 0
    bound = ((n + 1) * (n + alpha + beta + 1) / ((n + alpha + 1) * (n + beta + 1))) ** 0.25
    return _g_abs(n, alpha, beta), bound, valid, (-1.0, 1.0)


def _g_unif3(n, alpha, beta, C):
    C = 12.0 if C is None else C
    valid = alpha >= 0 and beta >= 0
    return (_g_abs(n, alpha, beta, 0.25), C / (2 * n + alpha + beta + 1) ** 0.25,
            valid, (-1.0, 1.0))


def _burq(n, alpha, beta, C):
    # |x|^(1/6) (1-x^2)^(m/2+1/6) |p_n^(m+1/2)(x)| <= C (n+m+1)^(1/6), alpha plays m.
    # The constant is not known explicitly, so this is always exploratory.
    m = alpha
    C = 1.0 if C is None else C

    def f(x):
        x = np.asarray(x, dtype=float)
        return (np.abs(x) ** (1 / 6) * endpoint_power(1.0 - x * x, m / 2 + 1 / 6)
                * np.abs(orthonormal_p(n, m, m, x)))
    return f, C * (n + m + 1) ** (1 / 6), False, (-1.0, 1.0)


_BOUNDS = {
    "bernstein_legendre": _bernstein_legendre,
    "bern_a0": _bern_a0,
    "B01": _b01,
    "g_unif1": _g_unif1,
    "g_unif2": _g_unif2,
    "g_unif3": _g_unif3,
    "burq": _burq,
}
BOUND_NAMES = tuple(_BOUNDS)


def check_named_bound(name, n, alpha=0.0, beta=0.0, *, grid=2001, refine=True, tol=TOL,
                      C=None) -> BoundReport:
    """Scan one of the named inequalities at degree n.

    ``tol`` is absolute for bounds up to 1 and relative to the bound above it.

    For ``burq`` the parameter m is passed as ``alpha``; C is the constant on
    the right-hand side of ``g_unif3`` (default 12) and ``burq`` (default 1).
    """
    try:
        build = _BOUNDS[name]
    except KeyError:
        raise UsageError(f"unknown bound {name!r}; choose from {', '.join(BOUND_NAMES)}") from None
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    f, bound, valid, (lo, hi) = build(int(n), float(alpha), float(beta), C)
    sup = scan_sup(f, grid, refine, lo, hi)
    note = "" if valid else "out of stated validity"
    # large right-hand sides carry roundoff proportional to their size
    return BoundReport.make(name, sup, bound, tol * max(1.0, abs(bound)),
                            exploratory=not valid, note=note)


# ---------------------------------------------------------------- Sonin points

def sonin_points(n, alpha, beta) -> SoninBracket:
    """Points x0 <= x1 splitting the Sonin-function monotonicity, and x2."""
    if alpha < 0 or beta < 0:
        raise DomainError(f"Sonin points need alpha, beta >= 0, got {alpha}, {beta}")
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    lam = n * (n + alpha + beta + 1.0)
    D = beta * beta + 2.0 * beta * (1.0 + alpha) + 4.0 * lam
    if D == 0.0:
        # n = 0, beta = 0: the polynomial is constant, no interior structure
        x0 = x1 = -1.0
    else:
        x0 = -1.0 + 2.0 * beta * beta / D
        x1 = 1.0 - 2.0 * (1.0 + 2.0 * alpha) * (beta + beta * alpha + 2.0 * lam) / ((1.0 + alpha) * D)
    if alpha > 0:
        lb = _lgamma_ratio([n + alpha + 1.0, n + alpha + beta + 1.0],
                           [n + 1.0, alpha + 1.0, n + beta + 1.0, alpha + 1.0])
        x2 = 1.0 - 2.0 * math.exp(-lb / alpha)
        return SoninBracket(x0, x1, x2, lam)
    return SoninBracket(x0, x1, None, lam, x2_defined=False)


def check_x1_le_x2(n, alpha, beta) -> OrderCheck:
    """Compare x1 and x2; exploratory outside the lemma's hypotheses."""
    s = sonin_points(n, alpha, beta)
    proven = (alpha >= 1 and n >= 1) or (alpha >= 0 and n >= 2)
    x2 = s.x2
    if x2 is None:
        # alpha -> 0+: the log of the binomial product is alpha times this digamma sum
        x2 = 1.0 - 2.0 * math.exp(-(digamma(n + 1.0) + digamma(n + beta + 1.0) - 2.0 * digamma(1.0)))
    return OrderCheck(bool(s.x1 <= x2), s.x1, x2, not proven)


def sonin_maxima_check(n, alpha, beta, samples=20001, rtol=1e-10) -> SoninMaxima:
    """Local maxima of ((1+x)/2)^beta P_n^2: none below x0, decreasing on (x0, x1),
    nondecreasing on (x1, 1]."""
    s = sonin_points(n, alpha, beta)

    def y2(x):
        return endpoint_power((1.0 + np.asarray(x)) / 2.0, beta) * np.asarray(jacobi_P(n, alpha, beta, x)) ** 2

    xs = np.linspace(-1.0, 1.0, samples)
    v = y2(xs)
    dv = np.diff(v)
    peaks = []
    for i in range(1, samples - 1):
        if dv[i - 1] > 0 and dv[i] <= 0:
            res = minimize_scalar(lambda x: -float(y2(x)), bounds=(xs[i - 1], xs[i + 1]),
                                  method="bounded", options={"xatol": 1e-13})
            peaks.append((float(res.x), float(-res.fun)))
    if dv[-1] > 0:
        peaks.append((1.0, float(v[-1])))
    below = all(x > s.x0 for x, _ in peaks)
    left = [val for x, val in peaks if s.x0 < x < s.x1]
    right = [val for x, val in peaks if x > s.x1]
    dec = all(b <= a * (1 + rtol) for a, b in zip(left, left[1:]))
    inc = all(b >= a * (1 - rtol) for a, b in zip(right, right[1:]))
    return SoninMaxima(below and dec and inc, dec, inc, below, s, tuple(peaks))


# ---------------------------------------------------------------- binomial lemma

def binom_lower_bound_check(x, y, tol=1e-12) -> BoundReport:
    """binom(x+y, x) >= (x+y)^y  (y <= 1)  or  ((x+y)/y)^y  (y >= 1).

    Reported with supremum = right-hand side and bound = binomial coefficient;
    tol is relative to the binomial coefficient.
    """
    if x < 0 or y < 0:
        raise DomainError(f"x, y must be nonnegative, got {x}, {y}")
    binom = math.exp(_lgamma_ratio([x + y + 1.0], [x + 1.0, y + 1.0]))
    rhs = (x + y) ** y if y <= 1 else ((x + y) / y) ** y
    return BoundReport.make("binom_lower", SupResult(rhs, 0.0), binom, tol * binom)


# ---------------------------------------------------------------- Wigner d

def _wigner_entry(two_l, two_k, two_j, c2):
    # d[k][j] = g_{l-k}^{(k-j, k+j)}(cos 2 theta) for k >= |j|, half-integers doubled
    return float(g_fn((two_l - two_k) // 2, (two_k - two_j) / 2, (two_k + two_j) / 2, c2))


def wigner_d(spec: WignerSpec, check=True):
    """Real d-matrix, rows and columns indexed k, j = -l, ..., l."""
    two_l, d = spec.two_l, spec.dim
    c2 = min(max(math.cos(2.0 * spec.theta), -1.0), 1.0)
    D = np.empty((d, d))
    idx = range(-two_l, two_l + 1, 2)
    for r, k in enumerate(idx):
        for c, j in enumerate(idx):
            # d[k][j] = (-1)^(k-j) d[-k][-j] = (-1)^(k-j) d[j][k]
            sign = -1.0 if ((k - j) // 2) % 2 else 1.0
            if abs(j) <= k:
                D[r, c] = _wigner_entry(two_l, k, j, c2)
            elif abs(j) <= -k:
                D[r, c] = sign * _wigner_entry(two_l, -k, -j, c2)
            elif j > 0:
                D[r, c] = sign * _wigner_entry(two_l, j, k, c2)
            else:
                D[r, c] = _wigner_entry(two_l, -j, -k, c2)
    if check:
        defect = unitarity_defect_matrix(D)
        if defect > 1e-8:
            raise ConsistencyError(f"Wigner matrix unitarity defect {defect:.3g}")
    return D


def unitarity_defect_matrix(D):
    return float(np.max(np.abs(D.T @ D - np.eye(D.shape[0]))))


def wigner_d_oracle(spec: WignerSpec):
    """Independent d-matrix from the SU(2) action f(z1, z2) -> f(a z1 - b z2, b z1 + a z2)
    with a = cos theta, b = sin theta on psi_k = binom(2l, l-k)^(1/2) z1^(l-k) z2^(l+k).

    Row j holds the coordinates of rho(A) psi_j (expansion by polynomial
    multiplication in z1 with z2 = 1), which is the orientation of wigner_d.
    """
    two_l = spec.two_l
    a, b = math.cos(spec.theta), math.sin(spec.theta)
    d = two_l + 1
    D = np.empty((d, d))
    norms = [math.sqrt(math.comb(two_l, p)) for p in range(d)]   # p = l - k
    for col in range(d):
        p = two_l - col            # exponent of z1 in psi_j, j = col - l
        q = two_l - p
        # (a z1 - b)^p (b z1 + a)^q as coefficients in z1 (z2 = 1)
        poly = np.polynomial.polynomial.polypow([-b, a], p)
        poly = np.polynomial.polynomial.polymul(poly, np.polynomial.polynomial.polypow([a, b], q))
        poly = np.pad(poly, (0, d - poly.size))
        for row in range(d):
            pr = two_l - row
            D[row, col] = norms[p] * poly[pr] / norms[pr]
    return D.T


# ---------------------------------------------------------------- disk polynomials

def disk_R(m, n, alpha, r, phi=0.0) -> complex:
    """R_{m,n}^(alpha)(r e^{i phi}) = r^|m-n| e^{i(m-n)phi} R_min^(alpha,|m-n|)(2r^2-1)."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"disk polynomials need 0 <= r <= 1, got {r}")
    d = abs(m - n)
    rad = r ** d * float(jacobi_R(min(m, n), alpha, d, 2.0 * r * r - 1.0))
    return rad * complex(math.cos((m - n) * phi), math.sin((m - n) * phi))


def _disk_at(m, n, alpha, z: complex) -> complex:
    return disk_R(m, n, alpha, min(abs(z), 1.0), math.atan2(z.imag, z.real))


def _poch(x, k):
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def disk_addition_coefficient(m, n, k, l, alpha):
    return (alpha / (alpha + k + l) * math.comb(m, k) * math.comb(n, l)
            * _poch(alpha + n + 1, k) * _poch(alpha + m + 1, l)
            / (_poch(alpha + l, k) * _poch(alpha + k, l)))


def verify_disk_addition(m, n, alpha, theta1, theta2, phi1=0.0, phi2=0.0, psi=0.0, r=1.0):
    """|LHS - RHS| of the addition formula for disk polynomials."""
    if alpha <= 0:
        raise DomainError(f"the addition formula check needs alpha > 0, got {alpha}")
    c1, s1, c2, s2 = math.cos(theta1), math.sin(theta1), math.cos(theta2), math.sin(theta2)
    z1, z2 = c1 * complex(math.cos(phi1), math.sin(phi1)), c2 * complex(math.cos(phi2), math.sin(phi2))
    w = r * complex(math.cos(psi), math.sin(psi))
    lhs = _disk_at(m, n, alpha, z1 * z2 + s1 * s2 * w)
    rhs = 0j
    for k in range(m + 1):
        for l in range(n + 1):
            a = alpha + k + l
            rhs += (disk_addition_coefficient(m, n, k, l, alpha) * (s1 * s2) ** (k + l)
                    * _disk_at(m - k, n - l, a, z1) * _disk_at(m - k, n - l, a, z2)
                    * _disk_at(k, l, alpha - 1, w))
    return abs(lhs - rhs)


def disk_sum_of_squares(m, n, alpha, theta):
    """sum_{k,l} c sin^(2(k+l)) R_{m-k,n-l}^(alpha+k+l)(cos theta)^2, which equals 1."""
    c, s = math.cos(theta), math.sin(theta)
    return math.fsum(disk_addition_coefficient(m, n, k, l, alpha) * s ** (2 * (k + l))
                     * _disk_at(m - k, n - l, alpha + k + l, complex(c, 0.0)).real ** 2
                     for k in range(m + 1) for l in range(n + 1))


# ---------------------------------------------------------------- biangle

def biangle_R(n, k, alpha, beta, x1, x2):
    """R_{n-k}^(alpha, beta+k+1/2)(2x1-1) x1^(k/2) R_k^(beta,beta)(x2/sqrt(x1)) on 0 <= x2^2 <= x1 <= 1."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got k={k}, n={n}")
    if not (0.0 <= x1 <= 1.0 and x2 * x2 <= x1 * (1 + 1e-15)):
        raise DomainError(f"({x1}, {x2}) lies outside the parabolic biangle")
    first = float(jacobi_R(n - k, alpha, beta + k + 0.5, 2.0 * x1 - 1.0))
    if k == 0:
        return first
    if x1 == 0.0:
        return 0.0
    s = math.sqrt(x1)
    y = min(max(x2 / s, -1.0), 1.0)
    return first * s ** k * float(jacobi_R(k, beta, beta, y))


def check_biangle_bound(n, k, alpha, beta, grid=201, tol=1e-12) -> BoundReport:
    """max |R_{n,k}| over a triangular grid of the biangle against 1.

    The argmax field holds the x1 coordinate of the worst point.
    """
    valid = alpha >= beta + 0.5 >= 0
    best = SupResult(-1.0, 0.0)
    for x1 in np.linspace(0.0, 1.0, grid):
        h = math.sqrt(x1)
        pts = np.linspace(-h, h, max(3, int(round(grid * h))))
        for x2 in pts:
            v = abs(biangle_R(n, k, alpha, beta, float(x1), float(x2)))
            if v > best.supremum:
                best = SupResult(v, float(x1))
    return BoundReport.make("biangle", best, 1.0, tol, exploratory=not valid,
                            note="" if valid else "out of stated validity")


# ---------------------------------------------------------------- conjecture and lemma scans

def emn_scan(n, alpha, beta, grid=2001, refine=True) -> float:
    """sup (1-x^2)^(1/4) sqrt(w) |p_n| / max(1, (|alpha|+|beta|)^(1/4)), p_n orthonormal."""
    if alpha < -0.5 or beta < -0.5:
        raise DomainError(f"the scan needs alpha, beta >= -1/2, got {alpha}, {beta}")

    def f(x):
        return (endpoint_power(1.0 - x, alpha / 2 + 0.25) * endpoint_power(1.0 + x, beta / 2 + 0.25)
                * np.abs(orthonormal_p(n, alpha, beta, x)))
    sup = scan_sup(f, grid, refine)
    return sup.supremum / max(1.0, (abs(alpha) + abs(beta)) ** 0.25)


def f_m_extremum_check(m, alpha, grid=4001, tol=1e-12) -> BoundReport:
    """f_m(x) = x^((m-1)/2) ((m+1+alpha) x - m): |f_m| <= 1 + alpha on [0, 1].

    For m >= 2 the interior extremum x0 = m(m-1)/((m+1)(m+1+alpha)) must also
    satisfy |f_m(x0)| < 2 sqrt(2)/3; the report's note records that value.
    """
    if m < 1 or alpha < 0:
        raise DomainError(f"need m >= 1 and alpha >= 0, got {m}, {alpha}")

    def f(x):
        x = np.asarray(x, dtype=float)
        return np.abs(endpoint_power(x, (m - 1) / 2) * ((m + 1 + alpha) * x - m))
    sup = scan_sup(f, grid, True, 0.0, 1.0)
    report = BoundReport.make("f_m", sup, 1.0 + alpha, tol)
    if m == 1:
        return report
    x0 = m * (m - 1) / ((m + 1) * (m + 1 + alpha))
    interior = float(f(x0))
    ok = interior < 2.0 * math.sqrt(2.0) / 3.0
    return BoundReport(report.name, report.supremum, report.argmax, report.bound, report.slack,
                       report.passed and ok, False, tol, f"|f_m(x0)| = {interior:.17g}")


def bern_a0_violation_search(alphas=None, ts=None, tol=1e-12):
    """(alpha, t, x, value) with (1+t^2)^((1+alpha)/2) |K(1,1)| / sigma(1)^2 > 1.

    That ratio equals |P_1^(alpha,0)(x)| / (1+alpha) with x = (t^2-1)/(t^2+1),
    so the search evaluates the kernel itself and reports x alongside.
    """
    from .evolution import kernel

    alphas = np.linspace(-0.95, -0.05, 19) if alphas is None else alphas
    ts = np.concatenate([[0.0], np.geomspace(1e-3, 1e2, 60)]) if ts is None else ts
    hits = []
    for a in alphas:
        for t in ts:
            val = (1 + t * t) ** ((1 + a) / 2) * abs(kernel(float(a), float(t), 1, 1)) / (1 + a)
            if val > 1 + tol:
                hits.append((float(a), float(t), (t * t - 1) / (t * t + 1), float(val)))
    return hits
