"""Property-imputation ledger for an employment firm.

Splits the point (Q, K, L) into the three bookkeeping rows: what the
responsible factor is responsible for (Q, -K, 0), what it is credited
with owning (0, 0, L), and the difference — the whole product (Q, -K, -L)
whose price value is the profit.
"""

from dataclasses import dataclass

import numpy as np

from .vectors import (
    PriceSystem,
    ProductVector,
    factor_services,
    responsible_whole_product,
    value,
    whole_product,
)

ZERO_PROFIT_RTOL = 1e-12


@dataclass(frozen=True)
class ImputationReport:
    wp_l: ProductVector  # responsible factor's whole product
    labor_commodity: ProductVector  # the factor's services as a commodity
    wp: ProductVector  # whole product = wp_l - labor_commodity
    value_added: float  # P . wp_l
    labor_cost: float  # P . labor_commodity
    profit: float  # value_added - labor_cost = P . wp
    zero_profit: bool


def impute_responsible(y, x, factor, prices):
    """Imputation rows for output y, inputs x, responsible input index `factor`."""
    x = np.asarray(x, dtype=float)
    if y < 0 or np.any(x < 0):
        raise ValueError("quantities must be non-negative")
    wp = whole_product(y, x)
    wp_l = responsible_whole_product(wp, factor)
    commodity = factor_services(x[factor], factor, x.size)
    value_added = value(prices, wp_l)
    labor_cost = value(prices, commodity)
    profit = value_added - labor_cost
    return ImputationReport(
        wp_l=wp_l,
        labor_commodity=commodity,
        wp=wp,
        value_added=value_added,
        labor_cost=labor_cost,
        profit=profit,
        zero_profit=abs(profit) <= ZERO_PROFIT_RTOL * (1.0 + abs(value_added)),
    )


def impute(Q, K, L, prices):
    """Two-factor ledger with capital first and labor responsible.

    `prices` is a PriceSystem (p, (r, w)); value_added = p*Q - r*K,
    labor_cost = w*L, profit their difference.
    """
    if prices.n != 2:
        raise ValueError("impute expects a two-factor price system (p, r, w)")
    return impute_responsible(Q, (K, L), 1, prices)


def price_system(p, r, w):
    """Convenience constructor for the (output, capital, labor) price vector."""
    return PriceSystem(p, (r, w))
