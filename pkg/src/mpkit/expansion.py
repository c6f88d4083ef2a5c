"""Least-cost expansion paths and vectorial marginal products.

Everything is parameterized by the output level y. `path_point` collects
the cost-minimizing bundle, the demand sensitivities d(phi)/dy, marginal
cost and the scalar marginal products at one y. Marginal whole products
are assembled from those sensitivities; `integrate_responsible` adds the
responsible factor's marginal whole product back up over the factor level
(the adding-up computation), inverting the factor demand by a safeguarded
secant search and handling the integrable endpoint singularity by a
power-law tail cutoff.
"""

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .costmin import minimize_cost, path_derivatives
from .exceptions import (
    ConvergenceError,
    MonotonicityError,
    QuadratureError,
    SolverError,
    ZeroPathDerivativeError,
)
from .quadrature import integrate_adaptive
from .vectors import ProductVector

ZERO_DERIVATIVE_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class ExpansionPoint:
    """One point of the expansion path with its local derivatives."""

    y: float
    x: np.ndarray  # cost-minimizing inputs phi(y)
    dphi_dy: np.ndarray  # movement of the inputs along the path
    mc: float  # sum(w_i * dphi_dy_i)
    mp: np.ndarray  # scalar marginal products df/dx_i at x


def point_from_solution(f, w, sol):
    dphi_dy, _ = path_derivatives(f, w, sol)
    w = np.asarray(w, dtype=float)
    return ExpansionPoint(
        y=sol.y,
        x=sol.x,
        dphi_dy=dphi_dy,
        mc=float(w @ dphi_dy),
        mp=f.gradient(sol.x),
    )


def path_point(f, w, y, x0=None, fd_check=False):
    """Expansion-path data at output y.

    With fd_check=True the implicit-function sensitivities are re-derived
    by central differences of the factor demands across y +- h and the two
    must agree to 1e-5 relative.
    """
    sol = minimize_cost(f, w, y, x0)
    point = point_from_solution(f, w, sol)
    if fd_check:
        h = min(1e-4 * max(1.0, abs(y)), 0.5 * y)
        x_plus = minimize_cost(f, w, y + h, x0=sol.x).x
        x_minus = minimize_cost(f, w, y - h, x0=sol.x).x
        fd = (x_plus - x_minus) / (2.0 * h)
        mismatch = np.abs(fd - point.dphi_dy) > 1e-5 * (1.0 + np.abs(point.dphi_dy))
        if np.any(mismatch):
            raise SolverError(
                "implicit-function and finite-difference path derivatives disagree: "
                f"{point.dphi_dy} vs {fd}"
            )
    return point


def scalar_mp_condition(f, w, p, y):
    """Residuals p*MP_i - w_i per factor; all ~0 exactly when p = MC."""
    point = path_point(f, w, y)
    return p * point.mp - np.asarray(w, dtype=float)


def mwp(f, w, y):
    """Marginal whole product (1, -dphi_1/dy, ..., -dphi_n/dy)."""
    point = path_point(f, w, y)
    return ProductVector(1.0, tuple(-point.dphi_dy))


def discrete_mwp(f, w, y0, delta_y=1.0):
    """Discrete marginal whole product (dy, -dx)/dy between y0 and y0+dy."""
    delta_y = float(delta_y)
    if not delta_y > 0.0:
        raise ValueError("delta_y must be positive")
    sol0 = minimize_cost(f, w, y0)
    sol1 = minimize_cost(f, w, y0 + delta_y, x0=sol0.x)
    return ProductVector(1.0, tuple(-(sol1.x - sol0.x) / delta_y))


def responsible_from_point(point, factor):
    d = point.dphi_dy
    if not 0 <= factor < d.size:
        raise IndexError(f"factor index {factor} out of range for {d.size} inputs")
    df = d[factor]
    if abs(df) < ZERO_DERIVATIVE_EPS:
        raise ZeroPathDerivativeError(
            f"d(phi_{factor + 1})/dy = {df:.3e}: responsible factor does not move "
            "with output, marginal whole product undefined"
        )
    inputs = -d / df
    inputs[factor] = 0.0
    return ProductVector(1.0 / df, tuple(inputs))


def mwp_responsible(f, w, y, factor):
    """Marginal whole product of the responsible factor at output y.

    Output component 1/(dphi_factor/dy); other inputs move at
    -(dphi_i/dy)/(dphi_factor/dy); the factor's own services cancel to 0.
    Its price valuation is w_factor + (p - MC)/(dphi_factor/dy).
    """
    return responsible_from_point(path_point(f, w, y), factor)


class _ExpansionCache:
    """Warm-started cost solves along one expansion path, keyed by y.

    Also inverts y -> phi_factor(y) for the responsible-factor level. The
    inversion is solved to *relative* accuracy in the level so integrands
    stay accurate where they blow up near level -> 0.
    """

    LEVEL_RTOL = 1e-9

    def __init__(self, f, w, factor):
        self.f = f
        self.w = np.asarray(w, dtype=float)
        self.factor = factor
        self._ys = []  # sorted
        self._levels = []  # parallel to _ys; sorted too once monotone
        self._sols = {}  # y -> CostSolution
        self._points = {}  # y -> ExpansionPoint
        self._tol_foc = 1e-12 * float(np.max(self.w))

    def solve(self, y):
        sol = self._sols.get(y)
        if sol is not None:
            return sol
        x0 = lam0 = None
        i = bisect.bisect_left(self._ys, y)
        if self._ys:
            candidates = self._ys[max(0, i - 1) : i + 1]
            nearest = min(candidates, key=lambda yc: abs(yc - y))
            # warm start only helps at comparable scale
            if 0.25 < nearest / y < 4.0:
                x0 = self._sols[nearest].x
                lam0 = self._sols[nearest].lam
        sol = minimize_cost(
            self.f,
            self.w,
            y,
            x0=x0,
            lam0=lam0,
            tol_feas=1e-12 * max(y, 1e-14),
            tol_foc=self._tol_foc,
        )
        self._ys.insert(i, y)
        self._levels.insert(i, float(sol.x[self.factor]))
        self._sols[y] = sol
        return sol

    def point(self, y):
        point = self._points.get(y)
        if point is None:
            point = point_from_solution(self.f, self.w, self.solve(y))
            self._points[y] = point
        return point

    def level(self, y):
        return float(self.solve(y).x[self.factor])

    def y_for_level(self, target):
        """Solve phi_factor(y) = target by bracketed secant."""
        y_lo, y_hi = self._bracket(target)
        l_lo = self.level(y_lo)
        l_hi = self.level(y_hi)
        for _ in range(200):
            for y_c, l_c in ((y_lo, l_lo), (y_hi, l_hi)):
                if abs(l_c - target) <= self.LEVEL_RTOL * target:
                    return y_c
            if l_hi > l_lo:
                y_mid = y_lo + (target - l_lo) * (y_hi - y_lo) / (l_hi - l_lo)
            else:
                y_mid = 0.5 * (y_lo + y_hi)
            span = y_hi - y_lo
            if not y_lo + 0.01 * span < y_mid < y_hi - 0.01 * span:
                y_mid = 0.5 * (y_lo + y_hi)
            if span <= 1e-13 * y_hi:
                return y_mid
            l_mid = self.level(y_mid)
            if l_mid < target:
                y_lo, l_lo = y_mid, l_mid
            else:
                y_hi, l_hi = y_mid, l_mid
        raise ConvergenceError(
            f"factor-level inversion did not converge for level {target:.6g}"
        )

    def _bracket(self, target):
        if not self._ys:
            self.solve(1.0)
        i = bisect.bisect_left(self._levels, target)
        if 0 < i < len(self._ys):
            return self._ys[i - 1], self._ys[i]
        if i == 0:
            lo = self._ys[0]
            y = lo
            for _ in range(600):
                y *= 0.25
                if y < 1e-300:
                    break
                if self.level(y) <= target:
                    return y, lo
            raise ConvergenceError(f"could not bracket factor level {target:.6g}")
        hi = self._ys[-1]
        y = hi
        for _ in range(600):
            y *= 2.0
            if y > 1e300:
                break
            if self.level(y) >= target:
                return hi, y
        raise ConvergenceError(f"could not bracket factor level {target:.6g}")


def _monotonicity_check(cache, y_max):
    ys = np.geomspace(y_max * 1e-6, y_max, 16)
    levels = [cache.level(float(y)) for y in ys]
    for a, b in zip(levels, levels[1:]):
        if not b > a:
            raise MonotonicityError(
                "factor demand is not strictly increasing in output on the "
                "sampled grid; cannot reparameterize by the factor level"
            )


def _singular_cutoff(integrand, l_max, abs_tol):
    """Lower cutoff eps with the discarded (0, eps] tail below abs_tol/10.

    Extrapolates each component as C*l^q from two probes; q <= -1 means a
    non-integrable singularity.
    """
    l_b = l_max * 1e-3
    l_a = 0.25 * l_b
    g_a = np.abs(integrand(l_a))
    g_b = np.abs(integrand(l_b))
    eps = l_a
    for ga, gb in zip(g_a, g_b):
        if ga < 1e-14 and gb < 1e-14:
            continue
        if ga < 1e-300:
            continue  # vanishing toward 0, no tail to cut
        q = math.log(gb / ga) / math.log(l_b / l_a) if gb > 0 else 0.0
        if q <= -1.0 + 1e-9:
            raise QuadratureError(
                f"endpoint singularity looks non-integrable (exponent ~ {q:.3f})"
            )
        c = ga / l_a**q
        eps_i = ((abs_tol / 10.0) * (q + 1.0) / c) ** (1.0 / (q + 1.0))
        eps = min(eps, eps_i)
    return eps


def integrate_responsible(f, w, l_max, factor, abs_tol=1e-8):
    """Integrate the responsible factor's MWP over levels (0, l_max].

    By the fundamental theorem this reproduces the responsible factor's
    whole product at l_max: output Q, minus the other inputs, zero for the
    factor itself.
    """
    if not 0 <= factor < f.arity:
        raise IndexError(f"factor index {factor} out of range for {f.arity} inputs")
    l_max = float(l_max)
    if l_max < 0:
        raise ValueError("factor level must be non-negative")
    n = f.arity
    if l_max == 0.0:
        return ProductVector(0.0, (0.0,) * n)

    cache = _ExpansionCache(f, w, factor)

    def integrand(level):
        point = cache.point(cache.y_for_level(level))
        vec = responsible_from_point(point, factor)
        return vec.components

    y_max = cache.y_for_level(l_max)
    _monotonicity_check(cache, y_max)
    eps = _singular_cutoff(integrand, l_max, abs_tol)
    total, _ = integrate_adaptive(integrand, eps, l_max, abs_tol)
    inputs = total[1:]
    inputs[factor] = 0.0
    return ProductVector(total[0], tuple(inputs))
