"""Source-space descriptors, norm functionals, and peak test functions.

The source space is a weighted Bergman space (parameters p >= 1, alpha >
-1) or a Hardy space (p >= 1); the target is always the Bloch space.  The
test-function families are normalized kernel-type peaks concentrating at a
point a as |a| -> 1; they witness non-compactness, and their norms stay
uniformly bounded in the source space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .disk import (
    DiskGrid,
    ParameterError,
    QuadratureConfig,
    SupEstimate,
    bergman_integral,
    circle_mean,
    sup_estimate,
)
from .expr import AnalyticSymbol, const, evaluate, int_pow, real_power, var_z

__all__ = [
    "SpaceSpec",
    "TestFunctionFamily",
    "bergman",
    "bergman_norm",
    "bloch_norm",
    "bloch_seminorm",
    "hardy",
    "hardy_norm",
    "make_test_function",
    "parse_space",
    "weighted_sup_norm",
]

BERGMAN_FAMILIES = ("f", "g", "h", "k")
HARDY_FAMILIES = ("hardy_p", "hardy_q")


@dataclass(frozen=True)
class SpaceSpec:
    """Source space: Bergman(p, alpha) or Hardy(p); target is Bloch."""

    kind: str
    p: float
    alpha: float | None = None

    def __post_init__(self):
        if self.kind not in ("bergman", "hardy"):
            raise ParameterError(f"unknown space kind {self.kind!r}")
        if self.p < 1:
            raise ParameterError("p must be >= 1")
        if self.kind == "bergman":
            if self.alpha is None or self.alpha <= -1:
                raise ParameterError("bergman spaces need alpha > -1")
        elif self.alpha is not None:
            object.__setattr__(self, "alpha", None)

    @property
    def sigma(self) -> float:
        """Boundary weight exponent: (2+alpha)/p for Bergman, 1/p for Hardy."""
        if self.kind == "bergman":
            return (2.0 + self.alpha) / self.p
        return 1.0 / self.p

    def label(self) -> str:
        if self.kind == "bergman":
            return f"bergman(p={self.p:g}, alpha={self.alpha:g})"
        return f"hardy(p={self.p:g})"


def bergman(p: float, alpha: float) -> SpaceSpec:
    return SpaceSpec(kind="bergman", p=float(p), alpha=float(alpha))


def hardy(p: float) -> SpaceSpec:
    return SpaceSpec(kind="hardy", p=float(p))


def parse_space(text: str) -> SpaceSpec:
    """Parse 'bergman:p=2,alpha=0' / 'hardy:p=2' and the compact corpus
    forms 'bergman:2,0' / 'hardy:2'."""
    head, sep, rest = text.strip().partition(":")
    head = head.strip().lower()
    if not sep or head not in ("bergman", "hardy"):
        raise ParameterError(f"bad space spec {text!r}")
    parts = [s.strip() for s in rest.split(",") if s.strip()]
    vals: dict[str, float] = {}
    order = ["p", "alpha"]
    for i, part in enumerate(parts):
        if "=" in part:
            key, _, v = part.partition("=")
            key = key.strip().lower()
        else:
            if i >= len(order):
                raise ParameterError(f"bad space spec {text!r}")
            key, v = order[i], part
        try:
            vals[key] = float(v)
        except ValueError:
            raise ParameterError(f"bad number {v!r} in space spec {text!r}") from None
    if "p" not in vals:
        raise ParameterError(f"space spec {text!r} needs p")
    if head == "bergman":
        if "alpha" not in vals:
            raise ParameterError(f"space spec {text!r} needs alpha")
        return bergman(vals["p"], vals["alpha"])
    return hardy(vals["p"])


# ---------------------------------------------------------------------------
# Norms


def bloch_seminorm(f: AnalyticSymbol, grid: DiskGrid, polish_iters: int = 40) -> SupEstimate:
    """sup (1-|z|^2)|f'(z)| with the symbolic derivative."""
    d = f.derivative()

    def integrand(z, omz2):
        return omz2 * np.abs(evaluate(d, z))

    return sup_estimate(integrand, grid, polish_iters=polish_iters)


def bloch_norm(f: AnalyticSymbol, grid: DiskGrid, polish_iters: int = 40) -> float:
    """|f(0)| + Bloch seminorm."""
    return abs(evaluate(f, 0.0 + 0.0j)) + bloch_seminorm(f, grid, polish_iters).value


def bergman_norm(f: AnalyticSymbol, spec: SpaceSpec, quad: QuadratureConfig = QuadratureConfig()) -> float:
    if spec.kind != "bergman":
        raise ParameterError("bergman_norm needs a bergman SpaceSpec")
    return bergman_integral(f, spec.p, spec.alpha, quad) ** (1.0 / spec.p)


def hardy_norm(f: AnalyticSymbol, p: float, grid: DiskGrid, n: int | None = None) -> float:
    """Hardy norm approximated by the circle mean at the outermost grid
    radius: integral means of |f|^p are nondecreasing in r for analytic f,
    so the sup over radii is the limit r -> 1 and r_max is the best the
    grid can see."""
    if p < 1:
        raise ParameterError("p must be >= 1")
    r = grid.r_max
    if n is None:
        n = max(4096, min(2 ** 17, int(math.ceil(8.0 / max(1.0 - r, 1e-300)))))
    return circle_mean(f, r, p, n) ** (1.0 / p)


def weighted_sup_norm(f: AnalyticSymbol, alpha: float, grid: DiskGrid, polish_iters: int = 40) -> SupEstimate:
    """sup |f(z)| (1-|z|^2)^alpha over the disk."""
    if alpha <= 0:
        raise ParameterError("alpha must be > 0")

    def integrand(z, omz2):
        return np.abs(evaluate(f, z)) * omz2 ** alpha

    return sup_estimate(integrand, grid, polish_iters=polish_iters)


# ---------------------------------------------------------------------------
# Test functions


@dataclass(frozen=True)
class TestFunctionFamily:
    """A peak-function family member: family in {f,g,h,k} needs a Bergman
    spec, {hardy_p, hardy_q} a Hardy spec; |a| < 1."""

    family: str
    a: complex
    spec: SpaceSpec

    def __post_init__(self):
        if self.family not in BERGMAN_FAMILIES + HARDY_FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        if abs(self.a) >= 1:
            raise ParameterError("|a| must be < 1")
        if self.family in BERGMAN_FAMILIES and self.spec.kind != "bergman":
            raise ParameterError(f"family {self.family!r} needs a bergman spec")
        if self.family in HARDY_FAMILIES and self.spec.kind != "hardy":
            raise ParameterError(f"family {self.family!r} needs a hardy spec")


def _kernel_power(a: complex, s: float) -> AnalyticSymbol:
    """(1 - conj(a) z)^(-s); integer s uses a power node, otherwise
    exp(-s log(1 - conj(a) z)) (Re > 0 on the disk, so the principal
    branch is canonical)."""
    base = const(1.0) - const(complex(a).conjugate()) * var_z()
    return real_power(base, -float(s))


def make_test_function(fam: TestFunctionFamily) -> AnalyticSymbol:
    """Build the peak function for a family member.

    Bergman families (p = spec.p, A = spec.alpha, c = 1-|a|^2):
      f: c^(1+(2+A)(1-1/p)) * (1-conj(a)z)^-(3+A)
      g: c^(1+(2+A)(1-1/p)+1/p) * (1-conj(a)z)^-(3+A+1/p)
      h: f - g
      k: f - (3+A)/(3+A+1/p) * g
    Hardy families:
      hardy_p: c^(2-1/p) * (1-conj(a)z)^-2
      hardy_q: c^2 * (1-conj(a)z)^-(2+1/p)
    """
    a = complex(fam.a)
    p = fam.spec.p
    c = 1.0 - abs(a) ** 2
    if fam.family in BERGMAN_FAMILIES:
        alpha = fam.spec.alpha
        e_f = 1.0 + (2.0 + alpha) * (1.0 - 1.0 / p)
        s_f = 3.0 + alpha
        f_sym = const(c ** e_f) * _kernel_power(a, s_f)
        if fam.family == "f":
            return f_sym
        e_g = e_f + 1.0 / p
        s_g = s_f + 1.0 / p
        g_sym = const(c ** e_g) * _kernel_power(a, s_g)
        if fam.family == "g":
            return g_sym
        if fam.family == "h":
            return f_sym - g_sym
        coeff = (3.0 + alpha) / (3.0 + alpha + 1.0 / p)
        return f_sym - const(coeff) * g_sym
    if fam.family == "hardy_p":
        return const(c ** (2.0 - 1.0 / p)) * _kernel_power(a, 2.0)
    return const(c ** 2.0) * _kernel_power(a, 2.0 + 1.0 / p)
