"""Fixed-proportions (Leontief-Sraffa) economies.

Technology: A[i, j] units of good i and a0[j] units of labor per unit of
good j, with inputs advanced one period before outputs; r is the interest
rate and w the end-of-year wage. Equilibrium prices satisfy the row-vector
equation p = (1+r) p A + w a0, which is also what valuing the marginal
whole product of labor good-by-good recovers (`verify_equilibrium`).

Whole products here are (2n+1)-vectors: outputs x, minus the dated inputs
A x, minus total labor a0 . x.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import NonViableEconomyError, SolverError

PRICE_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class LeontiefEconomy:
    A: np.ndarray  # n x n input requirements
    a0: np.ndarray  # labor per unit of each good
    r: float  # interest rate >= 0
    w: float  # wage > 0

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        a0 = np.array(self.a0, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if a0.shape != (A.shape[0],):
            raise ValueError(
                f"labor coefficients must have length {A.shape[0]}, got {a0.shape}"
            )
        if np.any(A < 0) or not np.all(np.isfinite(A)):
            raise ValueError("A must be non-negative and finite")
        if np.any(a0 < 0) or not np.any(a0 > 0):
            raise ValueError("a0 must be non-negative with at least one positive entry")
        if not self.r >= 0:
            raise ValueError("interest rate must be non-negative")
        if not self.w > 0:
            raise ValueError("wage must be positive")
        A.setflags(write=False)
        a0.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "w", float(self.w))

    @property
    def n(self):
        return self.A.shape[0]


def spectral_radius(M, iterations=200, tol=1e-12):
    """Largest |eigenvalue| by power iteration (Perron root for M >= 0)."""
    M = np.asarray(M, dtype=float)
    v = np.ones(M.shape[0]) / M.shape[0]
    estimate = 0.0
    for _ in range(iterations):
        u = M @ v
        norm = np.linalg.norm(u)
        if norm == 0.0:
            return 0.0
        new_estimate = norm / np.linalg.norm(v)
        v = u / norm
        if abs(new_estimate - estimate) <= tol * max(1.0, new_estimate):
            return new_estimate
        estimate = new_estimate
    return estimate


def solve_prices(econ):
    """Equilibrium prices p = w * a0 * (I - (1+r)A)^-1, viability-checked."""
    growth = (1.0 + econ.r) * econ.A
    radius = spectral_radius(growth)
    if radius >= 1.0:
        raise NonViableEconomyError(radius)
    # row-vector system p (I - (1+r)A) = w a0, solved transposed
    M = np.eye(econ.n) - growth
    try:
        p = np.linalg.solve(M.T, econ.w * econ.a0)
    except np.linalg.LinAlgError:
        raise NonViableEconomyError(radius)
    residual = np.max(np.abs(p - (1.0 + econ.r) * (p @ econ.A) - econ.w * econ.a0))
    scale = 1.0 + np.max(np.abs(p))
    if residual > PRICE_RESIDUAL_RTOL * scale:
        raise SolverError(
            f"price solve residual {residual:.3e} exceeds {PRICE_RESIDUAL_RTOL:.0e} relative"
        )
    if np.any(p < -1e-12 * scale):
        raise SolverError("price solve produced negative prices")
    return p


@dataclass(frozen=True, eq=False)
class SraffaWholeProduct:
    """Whole product of an output program x: (x, -Ax, -a0.x)."""

    outputs: np.ndarray
    used_inputs: np.ndarray  # A x, dated one period earlier
    labor: float  # a0 . x

    @property
    def vector(self):
        return np.concatenate((self.outputs, -self.used_inputs, [-self.labor]))

    @property
    def labor_zeroed(self):
        """Whole product of labor: services of the responsible factor cancel."""
        return np.concatenate((self.outputs, -self.used_inputs, [0.0]))


def sraffa_wp(econ, x):
    x = np.asarray(x, dtype=float)
    if x.shape != (econ.n,):
        raise ValueError(f"output vector must have length {econ.n}, got {x.shape}")
    if np.any(x < 0):
        raise ValueError("output quantities must be non-negative")
    return SraffaWholeProduct(
        outputs=x, used_inputs=econ.A @ x, labor=float(econ.a0 @ x)
    )


@dataclass(frozen=True, eq=False)
class LaborMwp:
    """Marginal whole product of labor with respect to one output."""

    good: int
    vector: np.ndarray  # (delta_j, -A delta_j, 0)
    labor_required: float  # a0_j


def sraffa_mwp_labor(econ, j):
    """(delta_j, -A.delta_j, 0) plus the labor a0_j the extra unit needs."""
    if not 0 <= j < econ.n:
        raise IndexError(f"good index {j} out of range for {econ.n} goods")
    delta = np.zeros(econ.n)
    delta[j] = 1.0
    vec = np.concatenate((delta, -econ.A[:, j], [0.0]))
    return LaborMwp(good=j, vector=vec, labor_required=float(econ.a0[j]))


def year_end_prices(econ, p):
    """Price vector (p, (1+r)p, w) matching the dated whole-product layout."""
    p = np.asarray(p, dtype=float)
    return np.concatenate((p, (1.0 + econ.r) * p, [econ.w]))


def verify_equilibrium(econ, prices=None):
    """Residuals P . grad_j(WP_L) - w * a0_j per good.

    All zero (to rounding) exactly at the solved equilibrium prices. Pass
    `prices` to evaluate the condition away from equilibrium.
    """
    p = solve_prices(econ) if prices is None else np.asarray(prices, dtype=float)
    P = year_end_prices(econ, p)
    residuals = np.empty(econ.n)
    for j in range(econ.n):
        m = sraffa_mwp_labor(econ, j)
        residuals[j] = P @ m.vector - econ.w * m.labor_required
    return residuals


def load_economy(matrix_path, labor_path, r, w):
    """Economy from CSV files: A as n rows of n values, a0 as one row."""
    A = np.loadtxt(matrix_path, delimiter=",", ndmin=2)
    a0 = np.loadtxt(labor_path, delimiter=",").reshape(-1)
    return LeontiefEconomy(A=A, a0=a0, r=r, w=w)
