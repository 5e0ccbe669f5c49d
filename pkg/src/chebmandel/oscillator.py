"""Oscillator structure on the Fock basis {Ch_n} and coherent-state statistics.

Ladder operators act by a+ e_n = sqrt(2) b_n e_{n+1} and
a- e_n = sqrt(2) b_{n-1} e_{n-1}. The coherent state at x = |z|^2 has
photon-number distribution p_n = x^n / f(n) / N(x), where
f(n) = prod_{j<n} 2 b_j^2 is the factorial by index. Moments of p_n give the
Mandel parameter directly from its definition, which serves as an oracle
for the derivative-based formulas in :mod:`chebmandel.mandel`.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .numerics import TERM_CAP, geometric_tail
from .polyfam import FamilySpec


def raising_weight(spec: FamilySpec, n):
    return math.sqrt(2) * spec.b(n)


def lowering_weight(spec: FamilySpec, n):
    return math.sqrt(2) * spec.b(n - 1)


def factorial_by_index(spec: FamilySpec, n):
    out = 1
    for j in range(n):
        out *= 2 * spec.b(j) ** 2
    return out


def apply_raising(spec: FamilySpec, v):
    v = np.asarray(v, dtype=float)
    out = np.zeros(len(v) + 1)
    for n, c in enumerate(v):
        out[n + 1] = raising_weight(spec, n) * c
    return out


def apply_lowering(spec: FamilySpec, v):
    v = np.asarray(v, dtype=float)
    out = np.zeros(len(v))
    for n in range(1, len(v)):
        out[n - 1] = lowering_weight(spec, n) * v[n]
    return out


def apply_number(v):
    v = np.asarray(v, dtype=float)
    return np.arange(len(v)) * v


def b_operator_diagonal(spec: FamilySpec, n, shifted=False):
    """Eigenvalue of B(N) (b_{n-1}^2) or, when shifted, of B(N+I) (b_n^2) on e_n."""
    return spec.b(n) ** 2 if shifted else spec.b(n - 1) ** 2


@dataclass(frozen=True)
class CoherentStateAmplitudes:
    x: float
    nmax: int
    probabilities: np.ndarray
    tail_bound: float


@dataclass(frozen=True)
class PhotonMoments:
    mean: float
    second_moment: float
    variance: float
    truncation_bound: float


def _check_x(x):
    if not 0 <= x < 2:
        raise DomainError(f"x must lie in [0, 2); the coherent-state series diverges at x={x}")


def _weights(spec: FamilySpec, x, tol, power, cap=TERM_CAP):
    """Unnormalized weights x^n/f(n), truncated once sum n^power * w_n has tail < tol."""
    k = spec.k
    w = []
    term = 1.0
    for n in range(cap):
        w.append(term)
        if n >= max(k, 1):
            r = ((n + 1) / n) ** power * x / 2
            if r < 1 and geometric_tail(n**power * term, r) < tol:
                return np.array(w), geometric_tail(n**power * term, r)
        term *= x / (2 * spec.b(n) ** 2)
    raise ConvergenceError(f"coherent-state series needs more than {cap} terms at x={x}")


def coherent_amplitudes(spec: FamilySpec, x, tol=1e-12):
    """Truncated p_n, normalized by the exact normalizing factor."""
    from .normalization import n_closed_general

    _check_x(x)
    w, tail = _weights(spec, x, tol, 0)
    norm = n_closed_general(spec.k, float(spec.tau), x / 2).value
    return CoherentStateAmplitudes(x, len(w) - 1, w / norm, tail / norm)


def coherent_moments(spec: FamilySpec, x, tol=1e-12):
    """<n>, <n^2> and the variance in the coherent state at x = |z|^2.

    Uses only the series x^n/f(n); no closed form of the normalizing factor.
    """
    _check_x(x)
    w, tail = _weights(spec, x, tol, 2)
    s0 = math.fsum(w)
    p = w / s0
    n = np.arange(len(w), dtype=float)
    mean = math.fsum(n * p)
    second = math.fsum(n * n * p)
    variance = math.fsum((n - mean) ** 2 * p)
    return PhotonMoments(mean, second, variance, tail / s0)


def mandel_from_moments(m: PhotonMoments):
    """(variance - mean) / mean."""
    if m.mean <= 0:
        raise DomainError("Mandel parameter undefined for <n> = 0 (use Q(0) = 0)")
    return (m.variance - m.mean) / m.mean
