import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebmandel.errors import DomainError
from chebmandel.numerics import integrate_measure
from chebmandel.polyfam import (FamilySpec, coeff_list_explicit, coeff_list_recurrence, eval_all,
                                eval_poly, jacobi_matrix, measure_atoms, measure_density)


@pytest.mark.parametrize("k,a,n,x,expected", [
    (1, 0.7, 0, 1.3, 1.0),
    (1, 0.5, 1, 1.0, 2.0),
    (1, 1.0, 2, 2.0, 3.0),
    (2, 1.0, 2, 0.0, -1.0),
])
def test_eval_poly_examples(k, a, n, x, expected):
    assert eval_poly(FamilySpec(k, a), n, x) == pytest.approx(expected, abs=1e-14)


def test_family_spec_rejects_bad_parameters():
    with pytest.raises(DomainError):
        FamilySpec(0, 1.0)
    with pytest.raises(DomainError):
        FamilySpec(1, 0.0)
    with pytest.raises(DomainError):
        FamilySpec(1, -2.0)


def test_coefficient_sequence():
    spec = FamilySpec(3, 0.4)
    assert spec.b(-1) == 0
    assert spec.b(2) == 0.4
    assert [spec.b(n) for n in (0, 1, 3, 10)] == [1, 1, 1, 1]


def test_coeff_list_recurrence_examples():
    assert coeff_list_recurrence(FamilySpec(1, 0.5), 1).coeffs == (0.0, 2.0)
    assert coeff_list_recurrence(FamilySpec(1, 1), 4).coeffs == (1, 0, -3, 0, 1)
    assert coeff_list_recurrence(FamilySpec(1, 0.37), 0).coeffs == (1.0,)


def test_coeff_list_exact_for_rational_a():
    c = coeff_list_recurrence(FamilySpec(1, Fraction(1, 3)), 4)
    assert all(isinstance(v, Fraction) for v in c.coeffs)
    # a Psi_4 = x^4 - (2 + a^2) x^2 + a^2
    a2 = Fraction(1, 9)
    assert [v * Fraction(1, 3) for v in c.coeffs] == [a2, 0, -(2 + a2), 0, 1]


def test_coeff_list_explicit_examples():
    assert coeff_list_explicit(FamilySpec(1, 0.5), 2).coeffs[2] == pytest.approx(2.0)
    for a in (0.3, 1.7):
        c = coeff_list_explicit(FamilySpec(1, a), 1).as_floats()
        np.testing.assert_allclose(c, [0, 1 / a])
    assert coeff_list_explicit(FamilySpec(2, 1), 3).coeffs == (0, -2, 0, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("a", [Fraction(3, 10), Fraction(7, 10), 1, 2])
def test_explicit_matches_recurrence_exactly(k, a):
    spec = FamilySpec(k, a)
    for n in range(13):
        assert coeff_list_explicit(spec, n).coeffs == coeff_list_recurrence(spec, n).coeffs


def test_k1_closed_coefficients_match():
    # coefficient of x^(n-2m): (-1)^m (n-m-1)! (n + m(a^2-2)) / ((n-2m)! m! a), m >= 1
    a = Fraction(3, 5)
    spec = FamilySpec(1, a)
    for n in range(2, 13):
        c = coeff_list_recurrence(spec, n).coeffs
        assert c[n] == 1 / a
        for m in range(1, n // 2 + 1):
            lit = (Fraction((-1) ** m * math.factorial(n - m - 1), math.factorial(n - 2 * m) * math.factorial(m))
                   * (n + m * (a * a - 2)) / a)
            assert c[n - 2 * m] == lit


def test_coefficients_agree_with_evaluation():
    spec = FamilySpec(2, 0.83)
    xs = np.linspace(-2, 2, 17)
    for n in range(15):
        c = coeff_list_recurrence(spec, n)
        np.testing.assert_allclose(c(xs), eval_poly(spec, n, xs), atol=1e-9)


@settings(max_examples=200, deadline=None)
@given(k=st.integers(1, 4), a=st.floats(0.05, 5.0), n=st.integers(0, 20), x=st.floats(-2, 2))
def test_parity(k, a, n, x):
    spec = FamilySpec(k, a)
    lhs = eval_poly(spec, n, -x)
    rhs = (-1) ** n * eval_poly(spec, n, x)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2, 5])
def test_chebyshev_second_kind_reduction(k):
    spec = FamilySpec(k, 1.0)
    theta = np.linspace(0.01, math.pi - 0.01, 101)
    for n in range(16):
        lhs = eval_poly(spec, n, 2 * np.cos(theta)) * np.sin(theta)
        np.testing.assert_allclose(lhs, np.sin((n + 1) * theta), atol=1e-10)


def test_eval_all_matches_eval_poly():
    spec = FamilySpec(3, 1.9)
    xs = np.linspace(-2, 2, 9)
    table = eval_all(spec, 10, xs)
    for n in range(11):
        np.testing.assert_allclose(table[n], eval_poly(spec, n, xs), rtol=1e-13, atol=1e-13)


@pytest.mark.parametrize("k,a,size,expected", [
    (1, 0.3, 3, (0.3, 1)),
    (4, 0.3, 6, (1, 1, 1, 0.3, 1)),
    (5, 0.3, 3, (1, 1)),
])
def test_jacobi_matrix_examples(k, a, size, expected):
    J = jacobi_matrix(FamilySpec(k, a), size)
    assert J.offdiag == expected
    D = J.dense()
    assert D.shape == (size, size)
    np.testing.assert_array_equal(D, D.T)
    np.testing.assert_array_equal(np.diag(D), 0)


@pytest.mark.parametrize("k,a", [(1, 0.4), (3, 2.2)])
def test_jacobi_matrix_encodes_multiplication_by_x(k, a):
    spec = FamilySpec(k, a)
    size = 8
    J = jacobi_matrix(spec, size).dense()
    for n in range(1, size - 1):
        e = np.zeros(size)
        e[n] = 1
        expected = np.zeros(size)
        expected[n - 1] = spec.b(n - 1)
        expected[n + 1] = spec.b(n)
        np.testing.assert_allclose(J @ e, expected)
    # J applied to (Ch_0..Ch_{size-1})(x) is x times it, up to the truncation row
    x = 0.77
    v = eval_all(spec, size, x)
    resid = J @ v[:size] - x * v[:size]
    np.testing.assert_allclose(resid[:-1], 0, atol=1e-12)
    assert resid[-1] == pytest.approx(-spec.b(size - 1) * v[size])


def test_measure_density_examples():
    assert measure_density(1.0, 0.0) == pytest.approx(1 / math.pi, rel=1e-12)
    assert measure_density(0.8, 2.5) == 0
    assert measure_density(1.0, 2.0) == 0
    assert measure_density(1.0, -2.0) == 0
    assert measure_density(math.sqrt(2), 2.0) == 0


def test_measure_density_nonnegative():
    for a in (0.1, 0.5, 1.0, math.sqrt(2), 3.0):
        assert all(measure_density(a, x) >= 0 for x in np.linspace(-1.999, 1.999, 101))


@pytest.mark.parametrize("a", [0.5, 1 / math.sqrt(2), 1.0, math.sqrt(2)])
def test_measure_has_unit_mass_without_atoms(a):
    assert measure_atoms(a) == [] or max(w for _, w in measure_atoms(a)) < 1e-15
    assert integrate_measure(lambda x: np.ones_like(x), a, 1e-12) == pytest.approx(1, abs=1e-10)


def test_measure_atoms_for_large_a():
    # a = 2: atoms at +-4/sqrt(3) carrying 1/3 each, density mass 1/3
    atoms = measure_atoms(2.0)
    assert [x for x, _ in atoms] == pytest.approx([-4 / math.sqrt(3), 4 / math.sqrt(3)])
    assert [w for _, w in atoms] == pytest.approx([1 / 3, 1 / 3])
    # each atom is an eigenvalue of the truncated Jacobi matrix in the large-size limit
    eig = np.linalg.eigvalsh(jacobi_matrix(FamilySpec(1, 2.0), 200).dense())
    assert eig.max() == pytest.approx(4 / math.sqrt(3), abs=1e-10)
    total = integrate_measure(lambda x: np.ones_like(x), 2.0, 1e-12)
    assert total == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("a", [0.5, 1 / math.sqrt(2), 1.0, math.sqrt(2), 2.0])
def test_orthonormality_k1(a):
    spec = FamilySpec(1, a)
    gram = integrate_measure(lambda x: eval_all(spec, 12, x)[:, None] * eval_all(spec, 12, x)[None],
                             a, 1e-12)
    np.testing.assert_allclose(gram, np.eye(13), atol=1e-6)
