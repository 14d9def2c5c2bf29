import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lagdisp.errors import DomainError
from lagdisp.operator_spectral import (build_truncated, first_kind_P, first_kind_seq,
                                       green_function, resolvent_residual, second_kind_Q,
                                       second_kind_Q_integral, second_kind_seq,
                                       spectral_density, truncated_eigensystem, weyl_m,
                                       weyl_m_boundary, weyl_solution)
from lagdisp.special_fn import gen_exp_integral


def test_build_truncated_examples():
    op = build_truncated(0, 2)
    assert list(op.diag) == [1.0, 3.0] and list(op.offdiag) == [1.0]
    assert list(build_truncated(2, 1).diag) == [3.0]
    assert np.allclose(build_truncated(0.5, 3).offdiag, [math.sqrt(1.5), math.sqrt(5.0)], rtol=0, atol=1e-15)


def test_truncated_invariants():
    op = build_truncated(1.7, 50)
    assert np.all(np.diff(op.diag) > 0) and np.all(op.offdiag > 0)
    dense = op.dense()
    assert np.array_equal(dense, dense.T)
    v = np.arange(50.0)
    assert np.allclose(op.matvec(v), dense @ v, rtol=1e-15)
    with pytest.raises(ValueError):
        op.diag[0] = 5.0


def test_build_truncated_rejects_alpha():
    with pytest.raises(DomainError):
        build_truncated(-1.0, 4)


@pytest.mark.parametrize("alpha", [-0.9, -0.3, 0.0, 1.0, 4.0])
def test_positivity(alpha):
    evals, _ = truncated_eigensystem(alpha, 400)
    assert evals.min() >= 0.0


def test_first_kind_examples():
    assert first_kind_P(1.3, 0, 2.2) == 1.0
    assert first_kind_P(0, 1, 0.0) == -1.0
    ref = -float(mpmath.laguerre(3, 1, 2.5)) / math.sqrt(4.0)
    assert first_kind_P(1, 3, 2.5) == pytest.approx(ref, rel=1e-14)


@settings(max_examples=30, deadline=None)
@given(st.floats(-0.9, 5), st.floats(-10, 30))
def test_first_kind_recurrence_matches_laguerre(alpha, z):
    seq = first_kind_seq(alpha, 25, z)
    direct = [first_kind_P(alpha, n, z) for n in range(26)]
    scale = np.maximum(np.abs(direct), 1e-8 * np.max(np.abs(direct)))
    assert np.all(np.abs(seq - direct) <= 1e-10 * scale)


def test_second_kind_initial_data():
    assert second_kind_Q(0.7, 0, 3.0) == 0.0
    assert second_kind_Q(0.7, 1, 3.0) == pytest.approx(1 / math.sqrt(1.7), rel=1e-15)
    # one recurrence step by hand: alpha = 0, z = 1
    q2 = ((1 - 3) * 1.0 - 1 * 0.0) / math.sqrt(2 * 2)
    assert second_kind_Q(0, 2, 1.0) == pytest.approx(q2, rel=1e-15)


@pytest.mark.parametrize("alpha, n, z", [(0.0, 3, -1.0), (1.5, 5, 2.5), (0.5, 4, 7.0)])
def test_second_kind_integral_oracle(alpha, n, z):
    assert second_kind_Q_integral(alpha, n, z) == pytest.approx(second_kind_Q(alpha, n, z), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("z", [-1.0, -5.0, complex(2.5, 0.1)])
def test_wronskian(alpha, z):
    with mpmath.workdps(50):
        p = first_kind_seq(alpha, 41, z, dps=50)
        q = second_kind_seq(alpha, 41, z, dps=50)
        for n in range(41):
            w = p[n] * q[n + 1] - p[n + 1] * q[n]
            ref = 1 / mpmath.sqrt((n + 1) * (n + 1 + mpmath.mpf(alpha)))
            assert abs(w - ref) <= 1e-10 * abs(ref)
    # the double-precision sequences are the same recurrence
    pd = first_kind_seq(alpha, 41, z)
    assert np.allclose(pd.astype(complex), np.array([complex(v) for v in p]), rtol=1e-12)


def test_spectral_density():
    assert spectral_density(0, 1.0) == pytest.approx(math.exp(-1))
    assert spectral_density(1.5, -3.0) == 0.0
    assert spectral_density(2, 2.0) == pytest.approx(2 * math.exp(-2), rel=1e-15)
    with pytest.warns(RuntimeWarning):
        assert spectral_density(-0.5, 0.0) == math.inf


def test_weyl_m_examples():
    assert abs(weyl_m(2, -1e-6) - 0.5) < 1e-5
    assert weyl_m(0, -1.0) == pytest.approx(0.5963473623231940, rel=1e-13)
    b = weyl_m_boundary(0, 1.0)
    assert b.imag == pytest.approx(math.pi / math.e, rel=1e-14)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.0])
def test_weyl_m_matches_exponential_integral(alpha):
    z = -1.0
    assert weyl_m(alpha, z) == pytest.approx(complex(math.exp(-z) * gen_exp_integral(1 + alpha, -z)), rel=1e-9)


@pytest.mark.parametrize("z", [0.0, 2.0])
def test_weyl_m_cut(z):
    with pytest.raises(DomainError):
        weyl_m(1.0, z)


def test_weyl_m_boundary_vs_mpmath():
    for alpha, lam in [(0.0, 1.0), (1.5, 3.0), (-0.5, 0.2)]:
        ref = complex(mpmath.exp(-lam) * mpmath.expint(1 + alpha, mpmath.mpc(-lam, -1e-30)))
        assert weyl_m_boundary(alpha, lam) == pytest.approx(ref, rel=1e-12)
        assert weyl_m_boundary(alpha, lam, side=-1) == pytest.approx(ref.conjugate(), rel=1e-12)


def test_herglotz():
    rng = np.random.default_rng(3)
    for _ in range(100):
        z = complex(rng.uniform(-20, 20), rng.uniform(1e-3, 20))
        assert weyl_m(float(rng.uniform(-0.9, 4)), z).imag > 0


def test_green_function_examples():
    assert green_function(0, -1.0, 0, 0) == pytest.approx(0.5963473623231940, rel=1e-13)
    assert green_function(1.3, -2.0, 3, 7) == green_function(1.3, -2.0, 7, 3)
    dense = build_truncated(1, 400).dense()
    inv = np.linalg.inv(dense + 2.0 * np.eye(400))
    assert abs(green_function(1, -2.0, 0, 1) - inv[0, 1]) < 1e-8


@pytest.mark.parametrize("alpha", [0, 1])
@pytest.mark.parametrize("m", [0, 3, 10])
def test_resolvent_residual(alpha, m):
    assert resolvent_residual(alpha, -1.0, m) < 1e-8


def test_weyl_solution_is_square_summable():
    # decay like exp(-c sqrt(n)): slow near the spectrum, fast off it
    psi = weyl_solution(0.5, complex(1.0, 0.5), 300)
    assert np.all(np.diff(np.abs(psi[::50])) < 0) and abs(psi[300]) < 1e-4 * abs(psi[0])
    psi = weyl_solution(0.5, -3.0, 300)
    assert abs(psi[300]) < 1e-20 * abs(psi[0])


def test_weyl_solution_near_spectrum():
    z = complex(3.0, 1e-3)
    psi = weyl_solution(0.0, z, 10)
    op = build_truncated(0.0, 13)
    r = op.matvec(np.append(psi, [0, 0]))[1:10] - z * psi[1:10]
    assert np.max(np.abs(r)) < 1e-8 * np.max(np.abs(psi))
