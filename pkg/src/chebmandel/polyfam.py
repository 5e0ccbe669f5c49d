"""Generalized Chebyshev polynomials Ch_n(x; k, a).

The family is fixed by the three-term recurrence

    b_n Ch_{n+1} + b_{n-1} Ch_{n-1} = x Ch_n,   Ch_0 = 1, Ch_{-1} = 0,

with b_{-1} = 0, b_{k-1} = a and every other b_n = 1. For a = 1 this is the
Chebyshev recurrence of the second kind in the variable x = 2 cos(theta).

Coefficient lists are exact (``fractions.Fraction``) when ``a`` is an int or
Fraction, and double precision otherwise.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Tuple

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class FamilySpec:
    k: int
    a: Real

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise DomainError(f"k must be a positive integer, got {self.k!r}")
        if not self.a > 0:
            raise DomainError(f"a must be positive, got {self.a!r}")

    @property
    def exact(self):
        return isinstance(self.a, (int, Fraction)) and not isinstance(self.a, bool)

    @property
    def tau(self):
        return self.a * self.a

    def b(self, n):
        """Recurrence weight b_n (n >= -1)."""
        if n < -1:
            raise DomainError(f"b_n is defined for n >= -1, got {n}")
        if n == -1:
            return 0
        return self.a if n == self.k - 1 else 1


def _num(spec):
    # scalar type used for coefficient arithmetic
    return Fraction if spec.exact else float


def eval_poly(spec: FamilySpec, n: int, x):
    """Ch_n(x) by forward recurrence. ``x`` may be a scalar or an ndarray."""
    if n < 0:
        raise DomainError("degree must be nonnegative")
    prev = 0 * x
    cur = 1 + 0 * x
    for j in range(n):
        prev, cur = cur, (x * cur - spec.b(j - 1) * prev) / spec.b(j)
    return cur


def eval_all(spec: FamilySpec, nmax: int, x):
    """Array of Ch_0(x), ..., Ch_nmax(x) stacked along the first axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x / spec.b(0)
    for j in range(1, nmax):
        out[j + 1] = (x * out[j] - spec.b(j - 1) * out[j - 1]) / spec.b(j)
    return out


@dataclass(frozen=True)
class CoefficientList:
    """Power-basis coefficients; ``coeffs[j]`` multiplies x**j."""
    degree: int
    coeffs: Tuple

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def as_floats(self):
        return np.array([float(c) for c in self.coeffs])


def coeff_list_recurrence(spec: FamilySpec, n: int) -> CoefficientList:
    """Coefficients of Ch_n from the recurrence carried out on coefficient vectors."""
    num = _num(spec)
    a = num(spec.a)
    b = lambda j: a if j == spec.k - 1 else num(1)
    prev = [num(0)]
    cur = [num(1)]
    for j in range(n):
        nxt = [num(0)] + list(cur)
        if j >= 1:
            for i, c in enumerate(prev):
                nxt[i] -= b(j - 1) * c
        prev, cur = cur, [c / b(j) for c in nxt]
    return CoefficientList(n, tuple(cur))


def coeff_list_explicit(spec: FamilySpec, n: int) -> CoefficientList:
    """Coefficients of Ch_n from the closed beta-sum expansion.

    Ch_n = sum_m (-1)^m b_0^(2m-n) beta_{2m-1,n-1} x^(n-2m) / sqrt([n]!),
    where [s] = b_{s-1}^2 / b_0^2 and beta_{2m-1,n-1} is the nested sum over
    k_1 > k_2 + 1 > ... with k_m >= 1 of the product [k_1][k_2]...[k_m].
    Only the recurrence-consistent reading (plain brackets inside the nested
    sum, power x^(n-2m)) reproduces the family; see tests.
    """
    num = _num(spec)
    b0 = num(spec.a) if spec.k == 1 else num(1)
    bs = lambda j: num(spec.a) if j == spec.k - 1 else num(1)
    bracket = lambda s: bs(s - 1) ** 2 / b0**2
    total = sum if spec.exact else math.fsum

    # beta[m][h] = nested sum with outer index k_1 in [2m-1, h]
    mmax = n // 2
    beta = [[num(1)] * (n + 1)]
    for m in range(1, mmax + 1):
        row = [num(0)] * (n + 1)
        for h in range(n + 1):
            terms = [bracket(k1) * (beta[m - 1][k1 - 2] if k1 >= 2 else num(1))
                     for k1 in range(2 * m - 1, h + 1)]
            row[h] = total(terms) if terms else num(0)
        beta.append(row)

    # sqrt([n]!) = prod_{s=1}^n b_{s-1}/b_0, kept rational for exact input
    root_fact = num(1)
    for s in range(1, n + 1):
        root_fact *= bs(s - 1) / b0

    coeffs = [num(0)] * (n + 1)
    for m in range(mmax + 1):
        bet = beta[m][n - 1] if m >= 1 else num(1)
        coeffs[n - 2 * m] = (-1) ** m * b0 ** (2 * m - n) * bet / root_fact
    return CoefficientList(n, tuple(coeffs))


@dataclass(frozen=True)
class TridiagonalMatrix:
    size: int
    offdiag: Tuple[float, ...]

    def dense(self):
        off = np.asarray(self.offdiag, dtype=float)
        return np.diag(off, 1) + np.diag(off, -1)


def jacobi_matrix(spec: FamilySpec, size: int) -> TridiagonalMatrix:
    """Leading size x size block of the Jacobi matrix J_k."""
    if size < 1:
        raise DomainError("size must be >= 1")
    return TridiagonalMatrix(size, tuple(spec.b(i) for i in range(size - 1)))


def measure_atoms(a):
    """Point masses of mu_a, present only for a^2 > 2.

    The perturbed Jacobi matrix then has eigenvalues +-a^2/sqrt(a^2 - 1)
    outside [-2, 2], each carrying weight (a^2 - 2)/(2a^2 - 2); the density
    below is only the absolutely continuous part.
    """
    a2 = a * a
    if a2 <= 2:
        return []
    x0 = a2 / math.sqrt(a2 - 1)
    w = (a2 - 2) / (2 * a2 - 2)
    return [(-x0, w), (x0, w)]


def measure_density(a, x):
    """Density of the absolutely continuous part of the k=1 measure mu_a at x.

    Zero off (-2, 2). The endpoint value is 0; for a^2 = 2 the density
    blows up like 1/sqrt(4 - x^2) there, so 0 is also used at the endpoints.
    """
    if a <= 0:
        raise DomainError("a must be positive")
    if abs(x) >= 2:
        return 0.0
    a2 = a * a
    den = (a2 - 2) ** 2 + (a2 - 1) * (4 - x * x)
    if den <= 0:
        raise DomainError(f"measure denominator vanishes at x={x}")
    return a2 * math.sqrt(4 - x * x) / den / (2 * math.pi)
