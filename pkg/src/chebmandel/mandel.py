"""Mandel parameter Q_M(x; k, a) of the generalized Chebyshev coherent states.

Q_M = x (N''/N' - N'/N) in terms of the normalizing factor. Its sign on
0 < x < 2 equals the sign of the polynomial P_k(t; tau) (t = x/2, tau = a^2),
so sign changes are located on P_k, which has no poles, while minima are
located on Q_M itself.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .normalization import NormalizationFactor, n_closed_general, n_closed_k1, n_k_t, normalization
from .numerics import bisect, central_diff, golden_min
from .oscillator import coherent_moments, mandel_from_moments
from .polyfam import FamilySpec

ROUTES = ("closed_k1", "closed_k2", "general_k", "moments_oracle")
CRITICAL_A = 1 / math.sqrt(2)


@dataclass(frozen=True)
class MandelResult:
    x: float
    value: float
    route: str


def _check_x(x):
    if not 0 <= x < 2:
        raise DomainError(f"x must lie in [0, 2), got {x}")


def mandel_general(N: NormalizationFactor, x) -> MandelResult:
    _check_x(x)
    if x == 0:
        return MandelResult(0.0, 0.0, "general_k")
    if N.d1 == 0:
        raise DomainError(f"N'(x) vanishes at x={x}")
    return MandelResult(x, x * (N.d2 / N.d1 - N.d1 / N.value), "general_k")


def mandel_closed_k1(a, x) -> MandelResult:
    _check_x(x)
    q = 2 * x / (2 - x) * (1 - 1 / (x + a * a * (2 - x)))
    return MandelResult(x, q, "closed_k1")


def mandel_closed_k2(a, x) -> MandelResult:
    _check_x(x)
    a2 = a * a
    a4 = a2 * a2
    num = x * (a4 * (x - 2) ** 4 + x * x * (8 - 8 * x + x * x)
               - 2 * a2 * (16 - 16 * x + 16 * x**2 - 8 * x**3 + x**4))
    den = (x - 2) * (a2 * (x - 2) ** 2 - (x - 4) * x) * (a2 * (x * x - 4) - x * x)
    return MandelResult(x, -num / den, "closed_k2")


def mandel(spec: FamilySpec, x, route="auto", tol=1e-12) -> MandelResult:
    """Q_M at x by the chosen route.

    ``auto``/``closed`` pick the dedicated closed form for k = 1, 2 and the
    general derivative formula otherwise; ``series`` feeds the series
    normalizing factor into the derivative formula; ``moments`` uses the
    photon-number moments.
    """
    _check_x(x)
    a = float(spec.a)
    if route in ("auto", "closed"):
        if spec.k == 1:
            return mandel_closed_k1(a, x)
        if spec.k == 2:
            return mandel_closed_k2(a, x)
        route = "general"
    if route == "general":
        return mandel_general(normalization(spec, x, "closed_general"), x)
    if route == "series":
        return mandel_general(normalization(spec, x, "series", tol), x)
    if route == "moments":
        q = 0.0 if x == 0 else mandel_from_moments(coherent_moments(spec, x, tol))
        return MandelResult(x, q, "moments_oracle")
    raise ValueError(f"unknown route {route!r}")


def mandel_q(k, a, x):
    """Q_M(x; k, a) as a float via the general closed-form normalizing factor."""
    if x == 0:
        return 0.0
    value, d1, d2 = n_k_t(k, a * a, x / 2)
    t = x / 2
    return t * (d2 / d1 - d1 / value)


def sign_k1(a, x):
    """Sign of Q_M(x; 1, a) via the affine criterion x (1 - a^2) + 2a^2 - 1."""
    if not 0 < x < 2:
        raise DomainError(f"x must lie in (0, 2), got {x}")
    a2 = a * a
    v = x * (1 - a2) + 2 * a2 - 1
    return int(v > 0) - int(v < 0)


def boundary_k1(a) -> Optional[float]:
    """The unique sign change (1 - 2a^2)/(1 - a^2) of Q_M(.; 1, a), present only for a^2 < 1/2."""
    a2 = a * a
    num = 1 - 2 * a2
    # a = 1/sqrt(2) in floating point leaves num ~ 1e-16: boundary degenerates to 0
    if num <= 1e-14:
        return None
    return num / (1 - a2)


def p_poly(k, tau, t):
    """Sign polynomial P_k(t; tau). Vectorized over t."""
    s = 1.0 - tau
    kk = k * (k - 1)
    out = (tau * tau
           + tau * s * (kk + 2) * t**k
           - s * s * k * t ** (2 * k - 2)
           + 2 * s * s * k * t ** (2 * k - 1)
           - s * s * (k - 1) * t ** (2 * k))
    if kk:
        out = out + tau * s * kk * t ** (k - 2) - 2 * tau * s * kk * t ** (k - 1)
    return out


def q_k(k, tau, t):
    """q_k = N'' N - N'^2 in t-derivatives, from the closed forms."""
    value, d1, d2 = n_k_t(k, tau, t)
    return d2 * value - d1 * d1


def q_k_fd_oracle(k, tau, t, h=1e-5):
    """q_k with N' and N'' replaced by central differences of N_k(t)."""
    f = lambda s: n_k_t(k, tau, s)[0]
    d1, d2 = central_diff(f, t, h)
    return d2 * f(t) - d1 * d1


def classify_region(tau):
    if tau <= 0:
        raise DomainError("tau must be positive")
    if tau <= 1:
        return "Pi1"
    if tau <= 2:
        return "Pi2"
    return "Pi3"


@dataclass(frozen=True)
class Pi2Certificate:
    gamma1: float
    gamma2: float
    gamma3: float
    p2: float
    ok: bool


def pi2_positivity_check(tau, t) -> Pi2Certificate:
    """Split P_2 into three pieces that are each nonnegative when 1 < tau <= 2."""
    xi2 = (tau - 1) ** 2
    g1 = 1 - xi2 - 2 * xi2 * t * t + 3 * xi2 * t**3
    g2 = 4 * tau * (tau - 1) * t * (1 - t)
    g3 = xi2 * (1 - t) * t**3
    p2 = p_poly(2, tau, t)
    ok = g1 >= 0 and g2 >= 0 and g3 >= 0 and abs(g1 + g2 + g3 - p2) <= 1e-10
    return Pi2Certificate(g1, g2, g3, p2, bool(ok))


@dataclass(frozen=True)
class Pi2RegroupedCertificate:
    terms: Tuple[float, float, float, float]
    p2: float
    ok: bool


def pi2_regrouped_check(tau, t) -> Pi2RegroupedCertificate:
    """Alternative splitting of P_2 valid on all of 1 <= tau <= 2, 0 < t < 1.

    With xi = tau - 1, P_2 = (1 - xi^2) + 4 xi t (1 - t) + xi^2 t (3t^2 - 6t + 4)
    + xi^2 t^3 (1 - t); the quadratic 3t^2 - 6t + 4 has no real roots. The
    three-term split above loses positivity of gamma1 once tau exceeds about 1.94.
    """
    xi = tau - 1
    terms = (1 - xi * xi, 4 * xi * t * (1 - t), xi * xi * t * (3 * t * t - 6 * t + 4),
             xi * xi * t**3 * (1 - t))
    p2 = p_poly(2, tau, t)
    ok = min(terms) >= 0 and sum(terms) > 0 and abs(math.fsum(terms) - p2) <= 1e-10
    return Pi2RegroupedCertificate(terms, p2, bool(ok))


def psi_bound_check(t):
    """psi(t) = 3t^3 - 2t^2 - 1, which stays <= 0 on [0, 1]."""
    return 3 * t**3 - 2 * t**2 - 1


@dataclass
class SignRegionReport:
    spec: FamilySpec
    region: str
    boundaries: List[float] = field(default_factory=list)
    intervals: List[Tuple[float, float, int]] = field(default_factory=list)
    minima: List[Tuple[float, float]] = field(default_factory=list)

    def negative_intervals(self):
        return [(lo, hi) for lo, hi, s in self.intervals if s < 0]

    def positive_intervals(self):
        return [(lo, hi) for lo, hi, s in self.intervals if s > 0]


def scan_regions(spec: FamilySpec, grid=10_000, root_tol=1e-10, min_tol=1e-8) -> SignRegionReport:
    """Sign-constant intervals, boundary roots and interior local minima of Q_M on (0, 2).

    Signs are sampled from P_k on a uniform t-grid, sign changes refined by
    bisection in t, and every interior local minimum of Q_M seen on the grid
    refined by golden-section search in x.
    """
    if grid < 100:
        raise ValueError("grid must be at least 100")
    k, a = spec.k, float(spec.a)
    tau = a * a
    t = np.arange(1, grid + 1) / (grid + 1)
    sgn = np.sign(p_poly(k, tau, t))

    roots = []
    i = 0
    while i < grid - 1:
        if sgn[i] == 0:
            roots.append(float(t[i]))
            i += 1
            continue
        j = i + 1
        while j < grid and sgn[j] == 0:
            j += 1
        if j < grid and sgn[j] != sgn[i]:
            r = bisect(lambda s: p_poly(k, tau, s), float(t[i]), float(t[j]), root_tol)
            roots.append(r.root)
        i = j
    boundaries = [float(2 * r) for r in roots]

    edges = [0.0] + boundaries + [2.0]
    intervals = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (lo + hi) / 2
        intervals.append((lo, hi, int(np.sign(p_poly(k, tau, mid)))))

    x = 2 * t
    q = np.array([mandel_q(k, a, xi) for xi in x])
    minima = []
    for i in range(1, grid - 1):
        if q[i] <= q[i - 1] and q[i] < q[i + 1]:
            xm, qm = golden_min(lambda s: mandel_q(k, a, s), float(x[i - 1]), float(x[i + 1]), min_tol)
            minima.append((float(xm), float(qm)))
    return SignRegionReport(spec, classify_region(tau), boundaries, intervals, minima)


def pi1_bifurcation(k=2, lo=0.25, hi=0.3, tol=1e-10):
    """Value of a in (lo, hi) where the negative region of Q_M(.; k, a) disappears.

    Found by bisection on the interior minimum value of Q_M as a function of a.
    """
    def min_q(a):
        rep = scan_regions(FamilySpec(k, a), grid=2000, min_tol=1e-12)
        return min(qm for _, qm in rep.minima)
    return bisect(min_q, lo, hi, tol).root
