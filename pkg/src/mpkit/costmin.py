"""Minimum-cost production: conditional factor demands, multiplier, cost.

Solves  min sum(w_i x_i)  s.t.  f(x) = y  by damped Newton on the
stationarity system

    w_i - lam * df/dx_i = 0      (i = 1..n)
    y - f(x) = 0

The multiplier lam is marginal cost at the optimum. Sensitivities of the
optimal bundle to the output level (d(phi_i)/dy) come from the linearized
system at the solution, which is also how `marginal_cost` is computed,
independently of lam.
"""

import math
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .exceptions import (
    ConvergenceError,
    DegenerateSystemError,
    DomainError,
    DomainEscapeError,
    InfeasibleOutputError,
)

TOL_FEAS = 1e-10  # absolute tolerance on y - f(x)
TOL_FOC = 1e-10  # absolute tolerance on w_i - lam * MP_i


class ProductionFunction(Protocol):
    """What the solvers need from a production function."""

    arity: int

    def value(self, x) -> float: ...

    def gradient(self, x) -> np.ndarray: ...

    # optional: hessian(x) -> np.ndarray; finite differences otherwise


@dataclass(frozen=True, eq=False)
class CostSolution:
    """Cost-minimizing input bundle for output level y."""

    y: float
    x: np.ndarray
    lam: float
    cost: float


def hessian(f, x):
    """Hessian of f at x: exact if f provides one, else central differences."""
    exact = getattr(f, "hessian", None)
    if exact is not None:
        return np.asarray(exact(x), dtype=float)
    x = np.asarray(x, dtype=float)
    n = x.size
    H = np.empty((n, n))
    for j in range(n):
        # relative step: curvature scales with the input on positive domains
        h = 6e-6 * abs(x[j]) if x[j] != 0.0 else 6e-6
        xp = x.copy()
        xm = x.copy()
        xp[j] += h
        xm[j] -= h
        H[:, j] = (f.gradient(xp) - f.gradient(xm)) / (2.0 * h)
    return 0.5 * (H + H.T)


def _bracket_on_ray(f, y):
    """Scale t of x = t*ones so that f brackets y, then bisect."""
    ones = np.ones(f.arity)
    t_lo = t_hi = 1.0
    v = f.value(ones)
    if v < y:
        while f.value(t_hi * ones) < y:
            t_hi *= 2.0
            if t_hi > 1e100:
                raise InfeasibleOutputError(
                    f"output level {y} not reachable: f stays below it on the ray"
                )
        t_lo = t_hi / 2.0
    elif v > y:
        while f.value(t_lo * ones) > y:
            t_lo /= 2.0
            if t_lo < 1e-100:
                raise InfeasibleOutputError(
                    f"output level {y} not reachable: f stays above it near zero"
                )
        t_hi = t_lo * 2.0
    for _ in range(100):
        mid = 0.5 * (t_lo + t_hi)
        if f.value(mid * ones) < y:
            t_lo = mid
        else:
            t_hi = mid
    return 0.5 * (t_lo + t_hi) * ones


def _initial_lambda(f, w, x):
    g = f.gradient(x)
    ratios = [wi / gi for wi, gi in zip(w, g) if gi > 1e-300]
    return float(np.median(ratios)) if ratios else 1.0


def minimize_cost(
    f, w, y, x0=None, *, lam0=None, max_iter=100, tol_feas=TOL_FEAS, tol_foc=TOL_FOC
):
    """Cost-minimizing inputs for output y at input prices w.

    Starts from x0 (default: equal inputs scaled onto the isoquant) and
    reports the local optimum reached; no global search. Newton iterates
    in log-space for the inputs and the multiplier, which keeps them
    strictly positive and stays well-behaved across output scales; inputs
    collapsing toward zero raise a domain-escape error.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (f.arity,):
        raise ValueError(f"expected {f.arity} input prices, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise ValueError("input prices must be finite and strictly positive")
    y = float(y)
    if not y > 0.0:
        raise ValueError(f"output level must be positive, got {y}")

    if x0 is None:
        x = _bracket_on_ray(f, y)
    else:
        x = np.asarray(x0, dtype=float).copy()
        if x.shape != (f.arity,) or np.any(x <= 0.0):
            raise ValueError("x0 must be a strictly positive vector of length arity")
    lam = float(lam0) if lam0 is not None else _initial_lambda(f, w, x)
    if not lam > 0.0:
        lam = (w @ x) / y

    def residual(x, lam):
        g = f.gradient(x)
        return np.concatenate((w - lam * g, [y - f.value(x)])), g

    n = f.arity
    F, g = residual(x, lam)
    for _ in range(max_iter):
        if np.max(np.abs(F[:-1])) <= tol_foc and abs(F[-1]) <= tol_feas:
            return CostSolution(y=y, x=x, lam=float(lam), cost=float(w @ x))
        J = np.zeros((n + 1, n + 1))
        J[:n, :n] = -lam * hessian(f, x)
        J[:n, n] = -g
        J[n, :n] = -g
        # Newton in log variables: the Jacobian w.r.t. (log x, log lam) is
        # J * diag(x, lam); residual rows scaled by (w, y) for conditioning
        col = np.concatenate((x, [lam]))
        row = np.concatenate((w, [max(y, 1e-300)]))
        try:
            step = np.linalg.solve(J * col[None, :] / row[:, None], -F / row)
        except np.linalg.LinAlgError:
            raise DegenerateSystemError(
                "singular KKT Jacobian (no interior optimum or flat Hessian)"
            )
        big = np.max(np.abs(step))
        if big > 60.0:  # cap log-space moves; exp stays finite
            step *= 60.0 / big
        norm_F = np.linalg.norm(F)
        alpha = 1.0
        for _halving in range(61):
            x_new = x * np.exp(alpha * step[:n])
            lam_new = lam * math.exp(alpha * step[n])
            try:
                F_new, g_new = residual(x_new, lam_new)
            except DomainError:
                pass
            else:
                if np.linalg.norm(F_new) <= (1.0 - 1e-4 * alpha) * norm_F + 1e-15:
                    x, lam, F, g = x_new, lam_new, F_new, g_new
                    break
            alpha *= 0.5
        else:
            raise ConvergenceError(f"line search failed with residual {norm_F:.3e}")
        if np.any(x < 1e-290):
            raise DomainEscapeError(
                "inputs driven toward zero; no interior cost minimum found"
            )
    if np.max(np.abs(F[:-1])) <= tol_foc and abs(F[-1]) <= tol_feas:
        return CostSolution(y=y, x=x, lam=float(lam), cost=float(w @ x))
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations; residual {np.linalg.norm(F):.3e}"
    )


def path_derivatives(f, w, sol):
    """(d(phi)/dy, d(lam)/dy) at a cost solution, via the linearized system.

    Differentiating the stationarity equations along the expansion path
    gives  [lam*H  g; g^T  0] [dx/dy; dlam/dy] = [0; 1].
    """
    x = sol.x
    n = x.size
    w = np.asarray(w, dtype=float)
    g = f.gradient(x)
    M = np.zeros((n + 1, n + 1))
    M[:n, :n] = sol.lam * hessian(f, x)
    M[:n, n] = g
    M[n, :n] = g
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    col = np.concatenate((x, [max(abs(sol.lam), 1e-3 * sol.cost / sol.y)]))
    row = np.concatenate((w, [sol.y]))
    try:
        out = col * np.linalg.solve(M * col[None, :] / row[:, None], rhs / row)
    except np.linalg.LinAlgError:
        raise DegenerateSystemError("singular linearized optimality system")
    return out[:n], float(out[n])


def marginal_cost(f, w, y):
    """dC/dy = sum(w_i * d(phi_i)/dy); equals the multiplier at the optimum."""
    sol = minimize_cost(f, w, y)
    dphi_dy, _ = path_derivatives(f, w, sol)
    return float(np.asarray(w, dtype=float) @ dphi_dy)
