"""mpkit: scalar and vectorial marginal products on least-cost expansion paths.

Submodules
----------
fnparse       expression parsing and exact dual-number gradients
vectors       product-vector algebra and price valuation
costmin       constrained cost minimization (Newton on the optimality system)
expansion     expansion paths, marginal whole products, adding-up integral
cobb_douglas  closed-form oracle for the two-factor Cobb-Douglas case
leontief      fixed-proportions economies and equilibrium prices
ledger        property-imputation bookkeeping
cli           command-line interface (`mpkit` or `python -m mpkit`)
"""

from ._kernel import BACKEND as KERNEL_BACKEND
from .cobb_douglas import CobbDouglas
from .costmin import CostSolution, marginal_cost, minimize_cost
from .exceptions import (
    ConvergenceError,
    DomainError,
    MpkitError,
    NonViableEconomyError,
    ParseError,
    SolverError,
)
from .expansion import (
    ExpansionPoint,
    discrete_mwp,
    integrate_responsible,
    mwp,
    mwp_responsible,
    path_point,
    scalar_mp_condition,
)
from .fnparse import ExprFunction, parse, pretty
from .ledger import ImputationReport, impute
from .leontief import (
    LeontiefEconomy,
    solve_prices,
    sraffa_mwp_labor,
    sraffa_wp,
    verify_equilibrium,
)
from .vectors import (
    PriceSystem,
    ProductVector,
    responsible_whole_product,
    value,
    whole_product,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "CobbDouglas",
    "CostSolution",
    "ExpansionPoint",
    "ExprFunction",
    "ImputationReport",
    "LeontiefEconomy",
    "MpkitError",
    "ConvergenceError",
    "DomainError",
    "NonViableEconomyError",
    "ParseError",
    "PriceSystem",
    "ProductVector",
    "SolverError",
    "discrete_mwp",
    "impute",
    "integrate_responsible",
    "marginal_cost",
    "minimize_cost",
    "mwp",
    "mwp_responsible",
    "parse",
    "path_point",
    "pretty",
    "responsible_whole_product",
    "scalar_mp_condition",
    "solve_prices",
    "sraffa_mwp_labor",
    "sraffa_wp",
    "value",
    "verify_equilibrium",
    "whole_product",
]
