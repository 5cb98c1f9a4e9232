"""Closed-form reference values for monomial norms and related limits.

These are the independent cross-checks for the grid and quadrature code:
weighted sup norms of monomials from the explicit interior maximizer,
Bergman norms of monomials from the Beta integral, and the large-power
limit of the weighted monomial sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .expr import AnalyticSymbol, const, var_z

__all__ = [
    "OracleValue",
    "bloch_seminorm_monomial",
    "lemma_limit",
    "mobius_symbol",
    "monomial_bergman_norm",
    "monomial_weighted_norm",
]


@dataclass(frozen=True)
class OracleValue:
    """A labelled reference value; same inputs always give the same bits."""

    value: float
    formula_id: str
    inputs: dict[str, Any] = field(default_factory=dict)


def monomial_weighted_norm(k: int, alpha: float) -> float:
    """sup over 0 <= r < 1 of r^(k-1) (1-r^2)^alpha, i.e. the weighted
    sup norm of z^(k-1) with weight (1-|z|^2)^alpha.

    The maximizer solves (k-1)(1-r^2) = 2 alpha r^2, giving r^2 =
    (k-1)/(k-1+2 alpha); k = 1 degenerates to the value 1 at r = 0.
    Evaluated through log1p so the k -> infinity regime keeps full
    precision.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    if k == 1:
        return 1.0
    n = float(k - 1)
    d = n + 2.0 * alpha
    log_val = 0.5 * n * math.log1p(-2.0 * alpha / d) + alpha * (math.log(2.0 * alpha) - math.log(d))
    return math.exp(log_val)


def _beta(a: float, b: float) -> float:
    """Beta function, exact factorial arithmetic for modest integer args."""
    if a <= 0 or b <= 0:
        raise ValueError("beta arguments must be positive")
    if float(a).is_integer() and float(b).is_integer() and a + b <= 170:
        ia, ib = int(a), int(b)
        return math.factorial(ia - 1) * math.factorial(ib - 1) / math.factorial(ia + ib - 1)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def monomial_bergman_norm(k: int, p: float, alpha: float) -> float:
    """Closed-form weighted Bergman norm of z^k.

    With normalized area measure, the p-th power of the norm is
    (alpha+1) * Beta(kp/2 + 1, alpha + 1) (substitute t = r^2 in the radial
    integral).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    a = k * p / 2.0 + 1.0
    if a <= 0:
        raise ValueError("kp/2 + 1 must be positive")
    if alpha <= -1:
        raise ValueError("alpha must be > -1")
    return ((alpha + 1.0) * _beta(a, alpha + 1.0)) ** (1.0 / p)


def bloch_seminorm_monomial(k: int) -> float:
    """sup (1-|z|^2) |d/dz z^k| = k * ||z^(k-1)|| with weight (1-|z|^2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return k * monomial_weighted_norm(k, 1.0)


def lemma_limit(alpha: float) -> float:
    """Limit of k^alpha * ||z^(k-1)||_{(1-|z|^2)^alpha} as k -> infinity:
    (2 alpha / e)^alpha."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    return (2.0 * alpha / math.e) ** alpha


def mobius_symbol(a: complex) -> AnalyticSymbol:
    """Disk automorphism (a - z)/(1 - conj(a) z) as a symbol tree."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("|a| must be < 1")
    z = var_z()
    return (const(a) - z) / (const(1) - const(a.conjugate()) * z)
