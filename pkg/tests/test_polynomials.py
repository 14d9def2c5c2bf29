import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lagdisp.errors import DomainError
from lagdisp.polynomials import (g_fn, gegenbauer_P, jacobi_inner_product, jacobi_norm_sq,
                                 jacobi_P, jacobi_P_all, jacobi_P_explicit, jacobi_R,
                                 laguerre_L, legendre_P, meixner_M)
from lagdisp.quadrature import gauss_jacobi, gauss_laguerre
from lagdisp.special_fn import binom_real, pochhammer


def mp_jacobi(n, a, b, x):
    return float(mpmath.jacobi(n, a, b, x))


def test_jacobi_examples():
    assert jacobi_P(3, 2, 1, 1.0) == pytest.approx(10.0, rel=1e-15)
    assert jacobi_P(0, 3.3, -0.2, 17.0) == 1.0
    assert jacobi_P(3, 1, 2, -1.0) == pytest.approx(-10.0, rel=1e-15)
    assert jacobi_P(2, 0.5, -0.3, 0.2) == pytest.approx(mp_jacobi(2, 0.5, -0.3, 0.2), rel=1e-14)


def test_scalar_and_array_paths_agree():
    xs = np.linspace(-1, 1, 37)
    arr = jacobi_P(17, 1.5, 0.25, xs)
    for x, v in zip(xs, arr):
        assert jacobi_P(17, 1.5, 0.25, float(x)) == pytest.approx(v, rel=1e-13, abs=1e-300)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 30), st.floats(-0.9, 10), st.floats(-0.9, 10), st.floats(-1, 1))
def test_recurrence_vs_explicit_sum(n, a, b, x):
    ref = jacobi_P_explicit(n, a, b, x)
    scale = max(abs(ref), binom_real(max(a, b), n) * 1e-3)
    assert abs(jacobi_P(n, a, b, x) - ref) <= 1e-11 * scale


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100), st.floats(-0.9, 10), st.floats(-0.9, 10))
def test_reflection_symmetry(n, a, b):
    xs = np.linspace(-1, 1, 1001)
    lhs = jacobi_P(n, a, b, -xs)
    rhs = (-1) ** n * jacobi_P(n, b, a, xs)
    scale = np.max(np.abs(rhs))
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100), st.floats(-0.5, 10), st.floats(-0.9, 10))
def test_endpoint_maximum(n, a, b):
    xs = np.cos(np.linspace(0, np.pi, 2001))
    vals = np.abs(jacobi_P(n, a, b, xs))
    ends = max(abs(jacobi_P(n, a, b, 1.0)), abs(jacobi_P(n, a, b, -1.0)))
    assert np.max(vals) <= ends * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 50), st.floats(0, 5), st.floats(0, 5), st.floats(-1, 1))
def test_contiguous_relations(n, a, b, x):
    p1 = jacobi_P(n + 1, a, b, x)
    s = 2 * n + a + b + 2
    first = (n + a + 1) / (n + 1) * jacobi_P(n, a, b, x) - s / (n + 1) * (1 - x) / 2 * jacobi_P(n, a + 1, b, x)
    second = s / (n + 1) * (1 + x) / 2 * jacobi_P(n, a, b + 1, x) - (n + b + 1) / (n + 1) * jacobi_P(n, a, b, x)
    scale = binom_real(max(a, b) + 1, n + 1)
    assert abs(p1 - first) <= 1e-10 * scale
    assert abs(p1 - second) <= 1e-10 * scale


def test_jacobi_all_rows():
    rows = jacobi_P_all(6, 0.7, 1.2, 0.3)
    for k in range(7):
        assert rows[k] == pytest.approx(mp_jacobi(k, 0.7, 1.2, 0.3), rel=1e-13)


def test_degenerate_parameters_use_explicit_sum():
    # alpha + beta = -2 makes the recurrence divide by zero at k = 1 -> 2
    v = jacobi_P(3, -1.5, -0.5, 0.4)
    assert v == pytest.approx(jacobi_P_explicit(3, -1.5, -0.5, 0.4), rel=1e-13)


def test_laguerre_examples():
    assert laguerre_L(1, 0.7, 2.0) == pytest.approx(1 + 0.7 - 2.0)
    assert laguerre_L(2, 0.0, 2.0) == pytest.approx(-1.0)
    assert laguerre_L(4, 1.5, 0.0) == pytest.approx(pochhammer(2.5, 4) / 24, rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), st.floats(-0.9, 8), st.floats(0, 60))
def test_laguerre_vs_mpmath(n, a, z):
    ref = float(mpmath.laguerre(n, a, z))
    scale = max(abs(ref), 1e-6 * float(mpmath.binomial(n + a, n)) * math.exp(z / 2))
    assert abs(laguerre_L(n, a, z) - ref) <= 1e-11 * scale


@pytest.mark.parametrize("alpha", [0.0, 0.5, 2.0])
def test_laguerre_orthogonality(alpha):
    nodes, w = gauss_laguerre(30, alpha)
    L = np.array([laguerre_L(n, alpha, nodes) for n in range(21)])
    gram = (L * w) @ L.T
    expected = np.diag([binom_real(alpha, n) for n in range(21)])
    assert np.max(np.abs(gram - expected) / np.sqrt(np.outer(np.diag(expected), np.diag(expected)))) < 1e-10


def test_meixner_examples():
    assert meixner_M(0, 3.3, 1.2, 0.4) == 1.0
    assert meixner_M(5, 0.0, 2.5, 0.3) == 1.0
    n, x, b, c = 2, 5.0, 1.5, 0.4
    rhs = math.factorial(n) / (c ** n * pochhammer(b, n)) * jacobi_P(n, b - 1, x - n, 2 * c - 1)
    assert meixner_M(n, x, b, c) == pytest.approx(rhs, rel=1e-13)


def test_meixner_bad_beta():
    with pytest.raises(DomainError):
        meixner_M(3, 1.5, -1.0, 0.5)


def test_gegenbauer_and_legendre():
    assert legendre_P(2, 0.5) == pytest.approx(-0.125, rel=1e-15)
    assert legendre_P(37, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert gegenbauer_P(3, 1.0, 0.3) == pytest.approx(float(mpmath.gegenbauer(3, 1, 0.3)), rel=1e-14)
    assert gegenbauer_P(6, 0.25, -0.7) == pytest.approx(float(mpmath.gegenbauer(6, 0.25, -0.7)), rel=1e-13)


def test_jacobi_R():
    assert jacobi_R(9, 1.3, 0.2, 1.0) == pytest.approx(1.0)
    assert jacobi_R(1, 0, 0, 0.0) == 0.0
    ref = mp_jacobi(2, 1, 3, -0.5) / mp_jacobi(2, 1, 3, 1.0)
    assert jacobi_R(2, 1, 3, -0.5) == pytest.approx(ref, rel=1e-14)


def test_g_fn():
    assert g_fn(0, 0, 0, 0.37) == pytest.approx(1.0)
    assert g_fn(4, 1.5, 0.5, 1.0) == 0.0
    n, a, b, x = 3, 2, 1, 0.4
    norm = math.sqrt(math.gamma(n + 1) * math.gamma(n + a + b + 1) / (math.gamma(n + a + 1) * math.gamma(n + b + 1)))
    ref = norm * ((1 - x) / 2) ** (a / 2) * ((1 + x) / 2) ** (b / 2) * mp_jacobi(n, a, b, x)
    assert g_fn(n, a, b, x) == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("n, a, b", [(3, 1.0, 2.0), (10, 0.0, 0.0), (6, 4.5, 0.3)])
def test_g_fn_l2_norm(n, a, b):
    sq = mpmath.quad(lambda x: g_fn(n, a, b, float(x)) ** 2, np.linspace(-1, 1, 2 * n + 3).tolist())
    assert float(sq) == pytest.approx(2.0 / (2 * n + a + b + 1), rel=1e-9)


def test_g_fn_domain():
    with pytest.raises(DomainError):
        g_fn(2, -1.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        g_fn(2, 0.5, 0.5, 1.5)


def test_inner_products():
    assert abs(jacobi_inner_product(2, 3, 0.4, 1.7)) < 1e-13
    assert jacobi_inner_product(0, 0, 0, 0) == pytest.approx(1.0, abs=1e-15)
    assert jacobi_inner_product(2, 2, 1, 0.5) == pytest.approx(jacobi_norm_sq(2, 1, 0.5), rel=1e-13)
    # closed form evaluated independently in rationals
    n, a, b = 2, mpmath.mpf(1), mpmath.mpf("0.5")
    ref = (n + a + b + 1) / (2 * n + a + b + 1) * mpmath.rf(a + 1, n) * mpmath.rf(b + 1, n) / (mpmath.rf(a + b + 2, n) * mpmath.factorial(n))
    assert jacobi_norm_sq(2, 1, 0.5) == pytest.approx(float(ref), rel=1e-14)


def test_inner_product_rejects_bad_params():
    with pytest.raises(DomainError):
        jacobi_inner_product(1, 1, -1.0, 0.0)


def test_gauss_jacobi_exactness():
    nodes, w = gauss_jacobi(8, 1.5, -0.5)
    a, b = mpmath.mpf(3) / 2, -mpmath.mpf(1) / 2

    def moment(k):
        # x = 2u - 1:  int_0^1 (2u-1)^k (1-u)^a u^b du, expanded in powers of u
        return sum(mpmath.binomial(k, j) * 2 ** j * (-1) ** (k - j) * mpmath.beta(a + 1, b + j + 1)
                   for j in range(k + 1))
    for k in range(16):
        with mpmath.workdps(40):
            ref = float(moment(k) / moment(0))
        assert float(np.sum(w * nodes ** k)) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_gauss_laguerre_matches_scipy():
    from scipy.special import roots_genlaguerre
    nodes, w = gauss_laguerre(100, 0.7)
    x, ws = roots_genlaguerre(100, 0.7)
    ws = ws / math.gamma(1.7)
    assert np.allclose(nodes, x, rtol=1e-12)
    big = ws > 1e-300
    assert np.allclose(w[big], ws[big], rtol=1e-9)
