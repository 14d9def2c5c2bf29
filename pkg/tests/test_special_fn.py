import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from lagdisp.errors import DomainError
from lagdisp.special_fn import binom_real, gen_exp_integral, log_gamma, pochhammer


@pytest.mark.parametrize("x, expected", [(1.0, 0.0), (5.0, math.log(24.0)),
                                         (0.5, 0.5723649429247001)])
def test_log_gamma_values(x, expected):
    assert abs(log_gamma(x) - expected) <= 1e-14 * max(1.0, abs(expected))


@given(st.floats(1e-3, 1e6))
def test_log_gamma_vs_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert abs(log_gamma(x) - ref) <= 1e-14 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", [0.0, -1.0, -2.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_pochhammer_examples():
    assert pochhammer(7.3, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert pochhammer(0.5, 2) == 0.75


@given(st.floats(-20, 20), st.integers(0, 63))
def test_pochhammer_step(x, n):
    lhs = pochhammer(x, n + 1)
    rhs = pochhammer(x, n) * (x + n)
    assert lhs == rhs or abs(lhs - rhs) <= 2.3e-16 * abs(rhs)


@given(st.floats(0.1, 30), st.integers(0, 200))
def test_pochhammer_vs_mpmath(x, n):
    ref = mpmath.rf(x, n)
    if ref > 1.7976931348623157e308:
        assert pochhammer(x, n) == math.inf
        return
    assert abs(pochhammer(x, n) - ref) <= 1e-12 * abs(ref)


def test_pochhammer_paths_meet():
    # n = 64 is the last product-path degree, n = 65 the first gamma-ratio one
    for x in (0.3, 2.5, -30.5):
        for n in (64, 65):
            ref = mpmath.rf(x, n)
            assert abs(pochhammer(x, n) - ref) <= 1e-12 * abs(ref)


def test_binom_real_examples():
    assert binom_real(2.0, 3) == pytest.approx(10.0, rel=1e-15)
    assert binom_real(1.7, 0) == 1.0
    ref = mpmath.gamma(4.5) / (mpmath.gamma(1.5) * 6)
    assert abs(binom_real(0.5, 3) - 2.1875) < 1e-14 and abs(float(ref) - 2.1875) < 1e-14


@given(st.floats(-0.99, 50), st.integers(0, 120))
def test_binom_times_factorial(x, n):
    lhs = binom_real(x, n) * math.factorial(n)
    rhs = pochhammer(x + 1, n)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_binom_integer_agrees_with_comb():
    for a in range(0, 30):
        for n in range(0, 30):
            assert binom_real(float(a), n) == pytest.approx(math.comb(a + n, n), rel=1e-13)


def test_binom_overflow_saturates():
    with pytest.warns(RuntimeWarning):
        assert binom_real(1e6, 200) == math.inf


def test_exp_integral_examples():
    assert abs(gen_exp_integral(1, 1) - 0.21938393439552029) < 1e-12
    e2 = math.exp(-1) - gen_exp_integral(1, 1)
    assert abs(gen_exp_integral(2, 1) - e2) < 1e-12
    assert abs(e2 - 0.1484955067759) < 1e-12


@pytest.mark.parametrize("z", [-1.0, -1e-9, -7.5, 0.0])
def test_exp_integral_cut(z):
    with pytest.raises(DomainError):
        gen_exp_integral(1.0, z)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 6), st.floats(-40, 40), st.floats(-40, 40))
def test_exp_integral_vs_mpmath(p, re, im):
    z = complex(re, im)
    if abs(z) > 50 or abs(z) < 1e-3 or (abs(im) < 1e-3 and re < 0):
        return
    ref = complex(mpmath.expint(p, z))
    assert abs(gen_exp_integral(p, z) - ref) <= 1e-10 * abs(ref)


def test_exp_integral_near_cut():
    z = complex(-2.0, 1e-6)
    ref = complex(mpmath.expint(3, z))
    assert abs(gen_exp_integral(3, z) - ref) <= 1e-10 * abs(ref)


def test_exp_integral_is_deterministic():
    a = gen_exp_integral(1.5, complex(2.0, -3.0))
    b = gen_exp_integral(1.5, complex(2.0, -3.0))
    assert a == b
