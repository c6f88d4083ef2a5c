"""Signed product vectors and their price valuation.

A product vector lists the output quantity first, then one signed
component per input. Canonical whole products carry inputs negated
(used up); marginal vectors may have either sign, so the type itself
does not force signs.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ProductVector:
    """(n+1)-component quantity vector: output first, signed inputs after."""

    output: float
    inputs: tuple

    def __post_init__(self):
        object.__setattr__(self, "output", float(self.output))
        object.__setattr__(self, "inputs", tuple(float(v) for v in self.inputs))

    @property
    def n(self):
        return len(self.inputs)

    @property
    def components(self):
        return np.concatenate(([self.output], self.inputs))

    def _check_same_shape(self, other):
        if not isinstance(other, ProductVector):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n} inputs")
        return other

    def __add__(self, other):
        other = self._check_same_shape(other)
        if other is NotImplemented:
            return NotImplemented
        return ProductVector(
            self.output + other.output,
            tuple(a + b for a, b in zip(self.inputs, other.inputs)),
        )

    def __sub__(self, other):
        other = self._check_same_shape(other)
        if other is NotImplemented:
            return NotImplemented
        return ProductVector(
            self.output - other.output,
            tuple(a - b for a, b in zip(self.inputs, other.inputs)),
        )

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return ProductVector(self.output * scalar, tuple(v * scalar for v in self.inputs))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def isclose(self, other, abs_tol=0.0, rel_tol=1e-12):
        other = self._check_same_shape(other)
        a, b = self.components, other.components
        return bool(np.all(np.abs(a - b) <= abs_tol + rel_tol * np.maximum(np.abs(a), np.abs(b))))


@dataclass(frozen=True)
class PriceSystem:
    """Output price p and strictly positive input prices w1..wn."""

    p: float
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "w", tuple(float(v) for v in self.w))
        vec = self.vector
        if not np.all(np.isfinite(vec)):
            raise ValueError("prices must be finite")
        if any(v <= 0.0 for v in self.w):
            raise ValueError("input prices must be strictly positive")

    @property
    def n(self):
        return len(self.w)

    @property
    def vector(self):
        return np.concatenate(([self.p], self.w))


def whole_product(y, x):
    """Whole product (y, -x1, ..., -xn): outputs made, inputs used up."""
    return ProductVector(y, tuple(-float(v) for v in x))


def positive_product(y, n):
    """(y, 0, ..., 0) with n input slots."""
    return ProductVector(y, (0.0,) * n)


def negative_product(x):
    """(0, -x1, ..., -xn)."""
    return ProductVector(0.0, tuple(-float(v) for v in x))


def value(prices, v):
    """Price valuation P . v (profit when v is a whole product)."""
    if prices.n != v.n:
        raise ValueError(f"dimension mismatch: {prices.n} prices vs {v.n} inputs")
    return float(prices.vector @ v.components)


def responsible_whole_product(v, factor):
    """Zero the responsible factor's own services out of a product vector.

    The responsible factor both produces and uses up its own services, so
    they cancel: the result adds (0, ..., -v.inputs[factor], ..., 0).
    `factor` is a 0-based input index.
    """
    if not 0 <= factor < v.n:
        raise IndexError(f"factor index {factor} out of range for {v.n} inputs")
    inputs = list(v.inputs)
    inputs[factor] = 0.0
    return ProductVector(v.output, tuple(inputs))


def factor_services(amount, factor, n):
    """(0, ..., amount, ..., 0): the factor's services as a commodity."""
    if not 0 <= factor < n:
        raise IndexError(f"factor index {factor} out of range for {n} inputs")
    inputs = [0.0] * n
    inputs[factor] = float(amount)
    return ProductVector(0.0, tuple(inputs))
