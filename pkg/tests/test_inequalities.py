import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lagdisp.errors import DomainError, UsageError
from lagdisp.inequalities import (BOUND_NAMES, WeightedSupQuery, WignerSpec, biangle_R,
                                  bern_a0_violation_search, binom_lower_bound_check,
                                  check_biangle_bound, check_named_bound, check_x1_le_x2,
                                  disk_R, disk_sum_of_squares, emn_scan, f_m_extremum_check,
                                  scan_sup, sonin_maxima_check, sonin_points,
                                  sup_weighted_jacobi, unitarity_defect_matrix,
                                  verify_disk_addition, wigner_d, wigner_d_oracle)
from lagdisp.polynomials import jacobi_R


def test_scan_sup_finds_smooth_peak():
    res = scan_sup(lambda x: 1 - (x - 0.123456789) ** 2, grid=101)
    assert res.argmax == pytest.approx(0.123456789, abs=1e-7) and res.supremum == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(UsageError):
        scan_sup(abs, grid=50)


def test_sup_examples():
    assert sup_weighted_jacobi(WeightedSupQuery(0, 1.3, 0.2)).supremum == pytest.approx(1.0)
    for n in (1, 7, 40):
        s = sup_weighted_jacobi(WeightedSupQuery(n, 0, 0, 0.25, 0.25)).supremum
        assert s <= 2 / math.sqrt(math.pi * (2 * n + 1))
    # the weight is (1-x)^a (1+x)^b; the bound 21 is for the half-scaled weight ((1+x)/2)^(1/2)
    s = sup_weighted_jacobi(WeightedSupQuery(5, 2, 1, 0, 0.5))
    assert s.supremum * 2 ** -0.5 <= 21 + 1e-9
    assert s.supremum == pytest.approx(21 * math.sqrt(2), rel=1e-12) and s.argmax == 1.0


def test_sup_query_validates():
    with pytest.raises(DomainError):
        WeightedSupQuery(3, 0, 0, -0.1, 0)


def test_sup_matches_mpmath_maximum():
    n, a, b = 9, 1.5, 0.5
    s = sup_weighted_jacobi(WeightedSupQuery(n, a, b, 0.75, 0.25))
    f = lambda x: (1 - x) ** 0.75 * (1 + x) ** 0.25 * abs(mpmath.jacobi(n, a, b, x))
    xs = np.linspace(-1, 1, 20001)
    coarse = max(float(f(x)) for x in xs[::10])
    assert coarse <= s.supremum * (1 + 1e-12)
    assert float(f(s.argmax)) == pytest.approx(s.supremum, rel=1e-12)


def test_named_bound_examples():
    r = check_named_bound("bernstein_legendre", 10)
    assert r.passed and r.bound == pytest.approx(2 / math.sqrt(21 * math.pi), rel=1e-15)
    r = check_named_bound("bern_a0", 0, 1.5, 0.5)
    assert r.passed and r.supremum == pytest.approx(1.0, abs=1e-12) and r.bound == 1.0
    assert check_named_bound("g_unif3", 20, 3.7, 0.2, C=12).passed


def test_named_bound_outside_validity_is_exploratory():
    r = check_named_bound("bern_a0", 3, -0.5, 0.5)
    assert r.exploratory and r.note
    assert check_named_bound("burq", 4, 1.0).exploratory
    with pytest.raises(UsageError):
        check_named_bound("nope", 3)


@pytest.mark.parametrize("name", ["bernstein_legendre", "bern_a0", "B01", "g_unif1", "g_unif2", "g_unif3"])
@pytest.mark.parametrize("n", [0, 1, 5, 30, 100])
def test_named_bounds_hold(name, n):
    params = {"bernstein_legendre": (0, 0), "bern_a0": (2.3, 1.3), "B01": (1.5, 2.0),
              "g_unif1": (3, 2), "g_unif2": (4, 7), "g_unif3": (6.2, 0.4)}[name]
    r = check_named_bound(name, n, *params)
    assert r.passed and not r.exploratory and r.slack == pytest.approx(r.bound - r.supremum)
    assert -1 <= r.argmax <= 1


def test_bound_names():
    assert set(BOUND_NAMES) == {"bernstein_legendre", "bern_a0", "B01", "g_unif1", "g_unif2", "g_unif3", "burq"}


def test_sonin_points_examples():
    s = sonin_points(1, 0, 0)
    assert s.x0 == -1.0 and s.x1 == pytest.approx(0.0, abs=1e-15) and s.lambda_n == 2.0
    assert s.x2 is None and not s.x2_defined
    assert sonin_points(0, 1.5, 2.0).lambda_n == 0.0
    s = sonin_points(2, 1, 1)
    assert -1 <= s.x0 <= s.x1 <= 1 and s.lambda_n == 10.0
    assert s.x2 == pytest.approx(1 - 2 / (math.comb(3, 2) * math.comb(4, 3)), rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 50), st.floats(0, 5), st.floats(0, 5))
def test_sonin_ordering(n, a, b):
    s = sonin_points(n, a, b)
    assert -1 <= s.x0 <= s.x1 <= 1


def test_x1_le_x2_examples():
    assert check_x1_le_x2(1, 1, 0)
    assert check_x1_le_x2(2, 0, 3)
    r = check_x1_le_x2(1, 0.2, 5)
    assert r.exploratory


def test_x2_limit_at_alpha_zero():
    # the alpha -> 0+ limit of x2 is the digamma expression used at alpha = 0
    lim = check_x1_le_x2(3, 0, 1.5).x2
    near = sonin_points(3, 1e-7, 1.5).x2
    assert lim == pytest.approx(near, abs=1e-6)


@pytest.mark.parametrize("n, a, b", [(6, 0.5, 1.0), (12, 2.0, 0.0), (20, 3.3, 4.1), (2, 0.0, 0.0)])
def test_sonin_maxima(n, a, b):
    r = sonin_maxima_check(n, a, b)
    assert r.passed and r.decreasing_left and r.increasing_right and r.none_below_x0


def test_binom_lower_bound_examples():
    r = binom_lower_bound_check(4, 2)
    assert r.passed and r.bound == pytest.approx(15) and r.supremum == pytest.approx(9)
    r = binom_lower_bound_check(2, 1)
    assert r.passed and r.slack == pytest.approx(0.0, abs=1e-12)
    r = binom_lower_bound_check(3, 0.5)
    assert r.passed and r.bound == pytest.approx(2.1875) and r.supremum == pytest.approx(math.sqrt(3.5))


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 50), st.floats(0, 20))
def test_binom_lower_bound_property(x, y):
    assert binom_lower_bound_check(x, y).passed


def test_wigner_small():
    assert np.array_equal(wigner_d(WignerSpec(0, 0.4)), [[1.0]])
    th = 0.3
    assert np.allclose(wigner_d(WignerSpec(1, th)), [[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]],
                       atol=1e-15)
    D = wigner_d(WignerSpec(4, 0.3))
    assert np.allclose(np.linalg.norm(D, axis=1), 1.0, atol=1e-12)


def test_wigner_spec_validates():
    with pytest.raises(DomainError):
        WignerSpec(3, 2.0)
    with pytest.raises(DomainError):
        WignerSpec(-1, 0.2)
    assert WignerSpec(5, 0.1).dim == 6


@pytest.mark.parametrize("two_l", [1, 2, 5, 12, 25, 39])
@pytest.mark.parametrize("theta", [0.1, 0.7, 1.4])
def test_wigner_matches_su2_oracle(two_l, theta):
    spec = WignerSpec(two_l, theta)
    D = wigner_d(spec)
    assert unitarity_defect_matrix(D) < 1e-10
    assert np.max(np.abs(D - wigner_d_oracle(spec))) < 1e-9


def test_disk_R_examples():
    for m in range(5):
        assert disk_R(m, m, 1.3, 1.0, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert disk_R(1, 0, 0.7, 0.4, 0.9) == pytest.approx(0.4 * complex(math.cos(0.9), math.sin(0.9)), rel=1e-15)
    r, phi = 0.5, math.pi / 3
    ref = r * complex(math.cos(phi), math.sin(phi)) * jacobi_R(1, 1, 1, 2 * r * r - 1)
    assert disk_R(2, 1, 1, r, phi) == pytest.approx(ref, rel=1e-14)


def test_disk_addition_examples():
    for m, n in [(2, 1), (3, 3), (0, 4)]:
        assert verify_disk_addition(m, n, 2.0, 0.0, 0.8, phi1=0.4, phi2=-1.0, psi=0.3) < 1e-12
        assert disk_sum_of_squares(m, n, 2.0, 0.9) == pytest.approx(1.0, abs=1e-12)
    rng = np.random.default_rng(11)
    for _ in range(20):
        th1, th2 = rng.uniform(0, math.pi / 2, 2)
        p1, p2, psi = rng.uniform(-math.pi, math.pi, 3)
        assert verify_disk_addition(3, 2, 2.0, th1, th2, p1, p2, psi, rng.uniform(0, 1)) < 1e-9


def test_disk_addition_needs_positive_alpha():
    with pytest.raises(DomainError):
        verify_disk_addition(1, 1, 0.0, 0.3, 0.4)


def test_biangle():
    assert biangle_R(0, 0, 2.0, 0.5, 0.3, 0.1) == 1.0
    assert biangle_R(4, 2, 3.0, 1.0, 1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert check_biangle_bound(3, 1, 2, 0.5).passed
    with pytest.raises(DomainError):
        biangle_R(3, 1, 2.0, 0.5, 0.2, 0.9)


def test_emn_scan():
    r0 = emn_scan(0, 0, 0)
    assert 0 < r0 < math.inf
    r10 = emn_scan(10, 0, 0)
    # orthonormal Legendre: sqrt(2/pi) (1 + o(1))
    assert r10 == pytest.approx(math.sqrt(2 / math.pi), rel=0.03)
    assert 0 < emn_scan(6, 2, 2) < 2


def _fm_at_x0(report):
    return float(report.note.split("=")[1])


def test_f_m_examples():
    r = f_m_extremum_check(2, 0)
    assert r.passed and _fm_at_x0(r) < 2 * math.sqrt(2) / 3
    r = f_m_extremum_check(1, 0.5)
    assert r.passed and r.supremum == 1.5
    r = f_m_extremum_check(50, 3)
    assert r.passed and _fm_at_x0(r) < 2 * math.sqrt(2) / 3


def test_bern_a0_violation_for_negative_alpha():
    hits = bern_a0_violation_search()
    assert len(hits) >= 1
    for alpha, t, x, value in hits[:20]:
        assert -1 < alpha < 0 and -1 <= x <= 1 and value > 0
