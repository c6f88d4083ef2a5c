"""Closed forms for the two-factor Cobb-Douglas technology Q = A*K^a*L^b.

Everything here is exact algebra on the least-cost expansion path
K/L = a*w/(b*r); the numerical solver modules are expected to reproduce
these values, which is what makes this module the package's oracle.
Input order is (capital, labor): K = x1, L = x2.
"""

import math
from dataclasses import dataclass

import numpy as np

from .vectors import ProductVector


@dataclass(frozen=True)
class CobbDouglas:
    """Parameters (scale A, capital exponent a, labor exponent b).

    Doubles as a ProductionFunction with exact derivatives.
    """

    A: float
    a: float
    b: float

    arity = 2

    def __post_init__(self):
        if not (self.A > 0 and self.a > 0 and self.b > 0):
            raise ValueError("Cobb-Douglas parameters must be strictly positive")

    def value(self, x):
        K, L = x
        return self.A * K ** self.a * L ** self.b

    def gradient(self, x):
        K, L = x
        q = self.value(x)
        return np.array([self.a * q / K, self.b * q / L])

    def hessian(self, x):
        K, L = x
        q = self.value(x)
        a, b = self.a, self.b
        return np.array(
            [
                [a * (a - 1.0) * q / (K * K), a * b * q / (K * L)],
                [a * b * q / (K * L), b * (b - 1.0) * q / (L * L)],
            ]
        )

    def expression_source(self):
        """Equivalent fnparse source text."""
        return f"{self.A!r}*x1^{self.a!r}*x2^{self.b!r}"


def expansion_ratio(cd, r, w):
    """K/L ratio held along the least-cost expansion path: a*w/(b*r)."""
    if not (r > 0 and w > 0):
        raise ValueError("factor prices must be strictly positive")
    return cd.a * w / (cd.b * r)


def factor_demands(cd, r, w, y):
    """Cost-minimizing (K, L) producing output y."""
    rho = expansion_ratio(cd, r, w)
    L = (y / (cd.A * rho ** cd.a)) ** (1.0 / (cd.a + cd.b))
    return np.array([rho * L, L])


def cost(cd, r, w, y):
    K, L = factor_demands(cd, r, w, y)
    return r * K + w * L


def marginal_cost(cd, r, w, y):
    # C(y) is proportional to y^(1/(a+b))
    return cost(cd, r, w, y) / ((cd.a + cd.b) * y)


def demand_derivatives(cd, r, w, y):
    """(dK/dy, dL/dy) along the expansion path."""
    K, L = factor_demands(cd, r, w, y)
    dL = L / ((cd.a + cd.b) * y)
    return np.array([expansion_ratio(cd, r, w) * dL, dL])


def labor_whole_product(cd, r, w, L):
    """WP of responsible labor at labor level L: (Q(L), -K(L), 0)."""
    if L < 0:
        raise ValueError("labor level must be non-negative")
    rho = expansion_ratio(cd, r, w)
    q = cd.A * rho ** cd.a * L ** (cd.a + cd.b)
    return ProductVector(q, (-rho * L, 0.0))


def labor_mwp(cd, r, w, L):
    """Marginal whole product of labor: ((a+b)*A*rho^a*L^(a+b-1), -rho, 0)."""
    rho = expansion_ratio(cd, r, w)
    s = cd.a + cd.b
    if L == 0 and s < 1.0:
        raise ValueError("marginal whole product is singular at L=0 when a+b < 1")
    if L < 0:
        raise ValueError("labor level must be non-negative")
    out = s * cd.A * rho ** cd.a * math.pow(L, s - 1.0)
    return ProductVector(out, (-rho, 0.0))


@dataclass(frozen=True)
class ScalarIdentities:
    """Scalar-vs-vectorial comparison at one point of the expansion path."""

    q: float  # output at labor level L
    p_mp_l: float  # value of the scalar marginal product of labor
    value_mwp_l: float  # P . MWP_L
    conversion_rhs: float  # (b * P.MWP_L + a*w) / (a+b); equals p_mp_l
    share_capital: float  # K * MP_K
    share_labor: float  # L * MP_L
    shares_sum: float  # equals (a+b) * Q


def scalar_identities(cd, p, r, w, L):
    """Compare p*MP_L with P.MWP_L and report exhaustion-of-product shares."""
    if L <= 0:
        raise ValueError("labor level must be positive")
    rho = expansion_ratio(cd, r, w)
    K = rho * L
    q = cd.A * K ** cd.a * L ** cd.b
    mp_k = cd.a * q / K
    mp_l = cd.b * q / L
    value_mwp_l = p * labor_mwp(cd, r, w, L).output - r * rho
    return ScalarIdentities(
        q=q,
        p_mp_l=p * mp_l,
        value_mwp_l=value_mwp_l,
        conversion_rhs=(cd.b * value_mwp_l + cd.a * w) / (cd.a + cd.b),
        share_capital=K * mp_k,
        share_labor=L * mp_l,
        shares_sum=K * mp_k + L * mp_l,
    )
