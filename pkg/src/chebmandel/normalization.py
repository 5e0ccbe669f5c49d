"""Normalizing factor N(x) = sum_n x^n / f(n) of the coherent state.

Internally the closed forms use t = x/2 and tau = a^2:

    N_k(t; tau) = (tau + (1 - tau) t^k) / (tau (1 - t)),  0 <= t < 1.

Public results always carry derivatives with respect to x.
"""
from dataclasses import dataclass

from .errors import DomainError
from .numerics import sum_tail_bounded
from .polyfam import FamilySpec

ROUTES = ("series", "closed_k1", "closed_general")


@dataclass(frozen=True)
class NormalizationFactor:
    value: float
    d1: float
    d2: float
    route: str


def _check_x(x):
    if not 0 <= x < 2:
        raise DomainError(f"x must lie in [0, 2), got {x}")


def n_series(spec: FamilySpec, x, tol=1e-12):
    """N, N' and N'' by termwise summation of the defining series."""
    _check_x(x)
    k = spec.k
    a2 = float(spec.tau)
    r = x / 2

    def scale(n):
        # f(n) = 2^n for n < k and 2^n a^2 beyond
        return 1.0 / a2 if n >= k else 1.0

    def ratio(j):
        # bound on term(m+1)/term(m) for all m >= n, once the weights are purely geometric
        def rb(n):
            if n < max(k, j + 1):
                return None
            return (n + 1) / (n - j + 1) * r if j else r
        return rb

    # x^n / 2^n written as r^n to avoid overflow of x**n near x = 2
    value, _ = sum_tail_bounded(lambda n: scale(n) * r**n, ratio(0), tol)
    d1, _ = sum_tail_bounded(
        lambda n: 0.5 * n * scale(n) * r ** (n - 1) if n >= 1 else 0.0, ratio(1), tol)
    d2, _ = sum_tail_bounded(
        lambda n: 0.25 * n * (n - 1) * scale(n) * r ** (n - 2) if n >= 2 else 0.0,
        ratio(2), tol)
    return NormalizationFactor(value, d1, d2, "series")


def n_closed_k1(a, x):
    _check_x(x)
    if a <= 0:
        raise DomainError("a must be positive")
    ia2 = 1.0 / (a * a)
    u = 2.0 - x
    return NormalizationFactor(
        ia2 * (a * a - 1 + 2 / u), 2 * ia2 / u**2, 4 * ia2 / u**3, "closed_k1")


def n_k_t(k, tau, t):
    """(N_k, dN_k/dt, d2N_k/dt2) at t in [0, 1)."""
    if not 0 <= t < 1:
        raise DomainError(f"t must lie in [0, 1), got {t}")
    if tau <= 0:
        raise DomainError("tau must be positive")
    s = 1.0 - tau
    u = 1.0 - t
    value = (tau + s * t**k) / (tau * u)
    d1 = (tau + s * (k * t ** (k - 1) + (1 - k) * t**k)) / (tau * u**2)
    if k == 1:
        inner = 2.0  # (2t) * t^-1, without forming t^-1
    else:
        inner = (k * (k - 1) - 2 * k * (k - 2) * t + (k - 1) * (k - 2) * t * t) * t ** (k - 2)
    d2 = (2 * tau + s * inner) / (tau * u**3)
    return value, d1, d2


def n_closed_general(k, tau, t):
    """N_k at t = x/2, tau = a^2, with derivatives converted to x (d/dx = d/dt / 2)."""
    value, d1, d2 = n_k_t(k, tau, t)
    return NormalizationFactor(value, d1 / 2, d2 / 4, "closed_general")


def n_decomposed(k, tau, t):
    """N_k as (1 + t + ... + t^(k-1)) + t^k / (tau (1 - t))."""
    return sum(t**j for j in range(k)) + t**k / (tau * (1 - t))


def normalization(spec: FamilySpec, x, route="closed_general", tol=1e-12):
    if route == "series":
        return n_series(spec, x, tol)
    if route == "closed_k1":
        if spec.k != 1:
            raise ValueError("closed_k1 route requires k = 1")
        return n_closed_k1(float(spec.a), x)
    if route == "closed_general":
        _check_x(x)
        return n_closed_general(spec.k, float(spec.tau), x / 2)
    raise ValueError(f"unknown normalization route {route!r}")
