"""Small numerical kernel shared by the other modules.

Everything here is deterministic and free of global state: tail-bounded
series summation, bisection, golden-section search, central differences
and quadrature against the k=1 orthogonality measure.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .polyfam import measure_atoms

TERM_CAP = 10**6
BISECT_CAP = 200
GOLDEN_CAP = 500
QUAD_DEPTH_CAP = 30

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def geometric_tail(last_term, ratio):
    """Upper bound on sum_{m>n} term(m) given term(n) and a ratio bound r < 1."""
    return abs(last_term) * ratio / (1.0 - ratio)


def sum_tail_bounded(term: Callable[[int], float],
                     ratio_bound: Union[float, Callable[[int], Optional[float]]],
                     tol: float = 1e-12, start: int = 0, cap: int = TERM_CAP):
    """Sum ``term(n)`` for n = start, start+1, ... until the remainder is provably < tol.

    ``ratio_bound`` is either a constant r < 1 bounding term(m+1)/term(m) for
    every m, or a callable n -> r giving a bound valid for all m >= n (return
    None while no such bound is available yet). Returns ``(sum, bound)``.
    """
    if callable(ratio_bound):
        rb = ratio_bound
    else:
        r0 = float(ratio_bound)
        rb = lambda n: r0
    terms = []
    for n in range(start, start + cap):
        t = term(n)
        terms.append(t)
        r = rb(n)
        if r is None or r >= 1.0:
            continue
        bound = geometric_tail(t, r)
        if bound < tol:
            return math.fsum(terms), bound
    raise ConvergenceError(f"series did not reach tol={tol:g} within {cap} terms")


@dataclass(frozen=True)
class BracketedRoot:
    lo: float
    hi: float
    root: float
    tol: float


def bisect(f, lo, hi, tol=1e-10, cap=BISECT_CAP):
    """Bisection on a sign-changing bracket ``[lo, hi]``.

    An endpoint where f is exactly zero is returned as a degenerate bracket.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return BracketedRoot(lo, lo, lo, 0.0)
    if fhi == 0:
        return BracketedRoot(hi, hi, hi, 0.0)
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"invalid bracket: f({lo})={flo}, f({hi})={fhi}")
    for _ in range(cap):
        if hi - lo <= tol:
            return BracketedRoot(lo, hi, 0.5 * (lo + hi), hi - lo)
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return BracketedRoot(mid, mid, mid, 0.0)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceError(f"bisection exceeded {cap} iterations")


def golden_min(f, lo, hi, tol=1e-8, cap=GOLDEN_CAP):
    """Golden-section search for the minimum of a unimodal f on [lo, hi].

    Returns ``(x_min, f_min)`` with the final bracket no wider than tol.
    """
    if not lo < hi:
        raise ValueError("golden_min needs lo < hi")
    h = hi - lo
    c = lo + INV_PHI2 * h
    d = lo + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(cap):
        if hi - lo <= tol:
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + INV_PHI2 * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    else:
        raise ConvergenceError(f"golden-section search exceeded {cap} iterations")
    return (c, fc) if fc < fd else (d, fd)


def central_diff(f, x, h=1e-5):
    """Central first and second differences of f at x."""
    fp, f0, fm = f(x + h), f(x), f(x - h)
    return (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h)


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights in theta on (-pi/2, pi/2), for the map x = 2 sin(theta)."""
    theta: np.ndarray
    weights: np.ndarray

    @property
    def count(self):
        return len(self.theta)

    @property
    def x(self):
        return 2.0 * np.sin(self.theta)


def composite_rule(panels, order=20):
    """Composite Gauss-Legendre rule on (-pi/2, pi/2) with equal panels."""
    g, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-0.5 * np.pi, 0.5 * np.pi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    theta = (mid[:, None] + half[:, None] * g[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return QuadratureRule(theta, weights)


def measure_weight_theta(a, theta):
    """dmu_a/dtheta under x = 2 sin(theta).

    The denominator a^4 - (a^2-1) x^2 is rewritten as
    (a^2-2)^2 + 4 (a^2-1) cos^2(theta) so the a^2 = 2 case cancels cleanly.
    """
    a2 = a * a
    c2 = np.cos(theta) ** 2
    return a2 * 4.0 * c2 / ((a2 - 2.0) ** 2 + 4.0 * (a2 - 1.0) * c2) / (2.0 * np.pi)


def integrate_measure(f, a, tol=1e-10, order=20, depth_cap=QUAD_DEPTH_CAP):
    """Integrate f against the k=1 orthogonality measure mu_a.

    The density on [-2, 2] is handled by quadrature; for a^2 > 2 the two
    point masses outside the interval are added exactly.

    ``f`` receives a 1-D array of nodes and may return an array whose last
    axis runs over the nodes (vector-valued integrands are integrated
    componentwise). Panels are doubled until two successive estimates agree
    to ``tol`` in max-norm.
    """
    if a <= 0:
        raise DomainError("a must be positive")
    prev = None
    for depth in range(depth_cap + 1):
        rule = composite_rule(2**depth, order)
        w = rule.weights * measure_weight_theta(a, rule.theta)
        est = np.asarray(f(rule.x)) @ w
        if prev is not None and np.max(np.abs(est - prev)) <= tol:
            for x0, w0 in measure_atoms(a):
                est = est + w0 * np.asarray(f(np.array([x0])))[..., 0]
            return est if np.ndim(est) else float(est)
        prev = est
    raise ConvergenceError(f"quadrature did not converge to {tol:g} at depth {depth_cap}")
