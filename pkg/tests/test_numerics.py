import math

import numpy as np
import pytest

from chebmandel.errors import ConvergenceError
from chebmandel.mandel import mandel_closed_k2, p_poly
from chebmandel.normalization import n_closed_k1, n_k_t
from chebmandel.numerics import (bisect, central_diff, composite_rule, golden_min, integrate_measure,
                                 sum_tail_bounded)


def test_sum_geometric():
    s, bound = sum_tail_bounded(lambda n: 0.5**n, 0.5, 1e-12)
    assert abs(s - 2) <= 1e-12
    assert bound < 1e-12


def test_sum_n_times_geometric():
    # sum n r^n = r / (1 - r)^2 = 2 at r = 1/2
    ratio = lambda n: (n + 1) / n * 0.5 if n >= 2 else None
    s, bound = sum_tail_bounded(lambda n: n * 0.5**n, ratio, 1e-13)
    assert s == pytest.approx(2, abs=1e-12)


def test_sum_near_radius():
    r = 0.95
    s, bound = sum_tail_bounded(lambda n: r**n, r, 1e-12)
    assert s == pytest.approx(1 / (1 - r), abs=1e-10)


def test_sum_cap():
    with pytest.raises(ConvergenceError):
        sum_tail_bounded(lambda n: 1.0, 0.999999, 1e-30, cap=100)


def test_bisect_examples():
    r = bisect(lambda t: t - 0.5, 0.0, 1.0, 1e-10)
    assert abs(r.root - 0.5) <= 1e-10
    assert r.hi - r.lo <= 1e-10
    r = bisect(lambda t: p_poly(1, 0.25, t), 0.0, 1.0, 1e-12)
    assert r.root == pytest.approx(1 / 3, abs=1e-12)


def test_bisect_p2_root_matches_table_boundary():
    # sign change of Q_M(.; 2, 2) lies between the printed 0.46 and 0.47
    r = bisect(lambda t: p_poly(2, 4.0, t), 0.1, 0.4, 1e-12)
    assert 0.46 <= 2 * r.root <= 0.47
    assert mandel_closed_k2(2.0, 2 * r.root - 1e-6).value < 0 < mandel_closed_k2(2.0, 2 * r.root + 1e-6).value


def test_bisect_invalid_bracket():
    with pytest.raises(ValueError):
        bisect(lambda t: t * t + 1, -1, 1)


@pytest.mark.parametrize("root", [0.1234567, 1 / 3, math.pi / 4])
def test_bisect_error_within_tol(root):
    r = bisect(lambda t: math.tanh(t - root), 0.0, 1.0, 1e-11)
    assert abs(r.root - root) <= 1e-11


def test_golden_quadratic():
    x, f = golden_min(lambda x: (x - 1) ** 2, 0.0, 2.0, 1e-9)
    assert abs(x - 1) <= 1e-9
    assert f == pytest.approx(0, abs=1e-17)


@pytest.mark.parametrize("a,x_min,q_min", [(2.0, 0.247, -0.0325), (0.01, 0.168, -0.925)])
def test_golden_on_mandel_k2(a, x_min, q_min):
    # printed values, compared at print precision
    x, q = golden_min(lambda x: mandel_closed_k2(a, x).value, 0.01, 0.9 if a > 1 else 0.5, 1e-9)
    assert abs(x - x_min) <= 0.005
    assert abs(q - q_min) <= 0.0015


def test_central_diff_examples():
    d1, d2 = central_diff(lambda x: x * x, 1.0, 1e-4)
    assert d1 == pytest.approx(2, abs=1e-9)
    assert d2 == pytest.approx(2, abs=1e-6)
    d1, d2 = central_diff(lambda x: n_closed_k1(1.0, x).value, 1.0, 1e-4)
    assert d1 == pytest.approx(2, rel=1e-6)
    assert d2 == pytest.approx(4, rel=1e-6)
    _, e1, e2 = n_k_t(2, 4.0, 0.5)
    d1, d2 = central_diff(lambda t: n_k_t(2, 4.0, t)[0], 0.5, 1e-4)
    assert d1 == pytest.approx(e1, rel=1e-6)
    assert d2 == pytest.approx(e2, rel=1e-6)


def test_quadrature_rule_weights_positive():
    rule = composite_rule(4, 10)
    assert rule.count == 40
    assert np.all(rule.weights > 0)
    assert rule.weights.sum() == pytest.approx(math.pi)
    assert np.all(np.abs(rule.x) < 2)


def test_integrate_semicircle_moments():
    # moments of the semicircle law on [-2, 2] are Catalan numbers
    catalan = [1, 1, 2, 5, 14, 42, 132]
    for j, c in enumerate(catalan):
        assert integrate_measure(lambda x: x ** (2 * j), 1.0, 1e-13) == pytest.approx(c, abs=1e-12)
        assert abs(integrate_measure(lambda x: x ** (2 * j + 1), 1.0, 1e-13)) <= 1e-12


def test_integrate_examples():
    assert integrate_measure(lambda x: np.ones_like(x), 1.0) == pytest.approx(1, abs=1e-10)
    a = 0.5
    assert integrate_measure(lambda x: (x / a) ** 2, a, 1e-12) == pytest.approx(1, abs=1e-6)
    for a in (0.5, 1.3, 2.5):
        psi1 = lambda x: x / a
        psi3 = lambda x: x * (x * x - a * a - 1) / a
        assert abs(integrate_measure(lambda x: psi1(x) * psi3(x), a, 1e-12)) <= 1e-6


def test_integrate_deterministic():
    f = lambda x: np.cos(x) ** 2
    assert integrate_measure(f, 0.7) == integrate_measure(f, 0.7)
