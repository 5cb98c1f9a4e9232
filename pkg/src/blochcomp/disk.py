"""Grids on the unit disk, supremum estimation, and radial quadrature.

Grids use geometrically boundary-refined radii r = 1 - 2**(-l/4) with
angular counts growing like 1/sqrt(1-r), which tracks the scales on which
weights (1-|z|^2)^a vary.  Supremum estimates are grid maxima polished by a
derivative-free pattern search and are lower bounds on the true sup by
construction; the companion trend classifier, not the raw sup, is what
decides bounded-versus-unbounded questions downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

import numpy as np

from .expr import AnalyticSymbol, EvaluationError, evaluate

__all__ = [
    "DEFAULT_CUT_SCHEDULE",
    "DiskGrid",
    "GridEvaluationError",
    "ParameterError",
    "QuadratureConfig",
    "SupEstimate",
    "TailEstimate",
    "TrendConfig",
    "bergman_integral",
    "build_grid",
    "circle_mean",
    "classify_trend",
    "default_cuts",
    "sup_estimate",
    "tail_sup",
]

ANGLE_CAP = 2 ** 16

DEFAULT_CUT_SCHEDULE = (
    0.9,
    0.99,
    0.999,
    0.9999,
    0.99999,
    1.0 - 1e-6,
    1.0 - 1e-7,
    1.0 - 1e-8,
)


class ParameterError(ValueError):
    """A numeric parameter violates an operation's precondition."""


class GridEvaluationError(RuntimeError):
    """Too many grid points failed to evaluate (more than 1%)."""


# ---------------------------------------------------------------------------
# Grid


@dataclass(frozen=True)
class DiskGrid:
    """Polar grid with dyadically boundary-refined radii.

    ``one_minus_r`` stores 1-r exactly (as 2**(-l/4)) so boundary weights
    (1-r^2) = (1-r)(1+r) never suffer cancellation.
    """

    levels: int
    angular_base: int
    radii: np.ndarray
    one_minus_r: np.ndarray
    angle_counts: np.ndarray
    truncated: bool

    @property
    def r_max(self) -> float:
        return float(self.radii[-1])

    @property
    def delta_min(self) -> float:
        return float(self.one_minus_r[-1])

    @property
    def npoints(self) -> int:
        return int(self.angle_counts.sum())

    def rings(self) -> Iterator[tuple[float, float, int]]:
        """Yield (r, 1-r, angle_count) per ring, centre outward."""
        for r, omr, n in zip(self.radii, self.one_minus_r, self.angle_counts):
            yield float(r), float(omr), int(n)

    def blocks(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield (z, 1-|z|^2) arrays ring by ring; bounds peak memory."""
        for r, omr, n in self.rings():
            theta = 2.0 * np.pi * np.arange(n) / n
            z = r * np.exp(1j * theta)
            omz2 = np.full(n, omr * (1.0 + r))
            yield z, omz2


def build_grid(levels: int = 40, angular_base: int = 64) -> DiskGrid:
    """Build the default boundary-refined grid.

    Radii are r_l = 1 - 2**(-l/4) for l = 0..4*levels (so r_max =
    1 - 2**(-levels)); the angle count at radius r is
    max(angular_base, ceil(angular_base/sqrt(1-r))), capped at 2**16 with
    the truncation recorded on the grid.
    """
    if levels < 4:
        raise ParameterError("levels must be >= 4")
    if angular_base < 64:
        raise ParameterError("angular_base must be >= 64")
    ls = np.arange(4 * levels + 1)
    one_minus_r = np.exp2(-ls / 4.0)
    radii = 1.0 - one_minus_r
    wanted = np.maximum(angular_base, np.ceil(angular_base / np.sqrt(one_minus_r))).astype(np.int64)
    truncated = bool((wanted > ANGLE_CAP).any())
    counts = np.minimum(wanted, ANGLE_CAP)
    return DiskGrid(
        levels=levels,
        angular_base=angular_base,
        radii=radii,
        one_minus_r=one_minus_r,
        angle_counts=counts,
        truncated=truncated,
    )


# ---------------------------------------------------------------------------
# Supremum estimation

PointFunc = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SupEstimate:
    """Grid supremum with local polish; a lower bound on the true sup."""

    value: float
    argmax: complex
    refined: bool
    grid_value: float
    skipped: int = 0


@dataclass(frozen=True)
class TrendConfig:
    """Thresholds for boundary-trend classification.

    Factor-of-two tests are robust to grid noise; the absolute floor is
    tol_scale*(1 + reference sup) so "zero" scales with the problem.
    """

    tol_scale: float = 1e-3
    grow_factor: float = 2.0
    decay_factor: float = 0.5
    plateau_lo: float = 0.8
    plateau_hi: float = 1.25
    lookback: int = 3


def classify_trend(values: Sequence[float], reference: float, cfg: TrendConfig = TrendConfig()) -> str:
    """Classify a boundary sequence as decreasing-to-zero/plateau/growing.

    ``values`` are ordered toward the boundary (or toward j -> infinity);
    the last entry is compared against the one ``lookback`` positions
    earlier (or the first entry when the sequence is short).
    """
    vals = [float(v) for v in values]
    if not vals:
        return "decreasing-to-zero"
    tol = cfg.tol_scale * (1.0 + float(reference))
    last = vals[-1]
    base = vals[-1 - cfg.lookback] if len(vals) > cfg.lookback else vals[0]
    if last <= tol and (base <= tol or last <= cfg.decay_factor * base):
        return "decreasing-to-zero"
    if last > cfg.grow_factor * base and last > tol:
        return "growing"
    if cfg.plateau_lo * base <= last <= cfg.plateau_hi * base:
        return "plateau"
    return "indeterminate"


def _scan(
    f: PointFunc,
    grid: DiskGrid,
) -> tuple[float, complex, float, int, int, int]:
    """Evaluate f over the grid; return (max, argmax, delta, ring_angles, skipped, total)."""
    best = -math.inf
    best_z = 0j
    best_delta = 1.0
    best_n = 64
    skipped = 0
    total = 0
    for (r, omr, n), (z, omz2) in zip(grid.rings(), grid.blocks()):
        vals = np.asarray(f(z, omz2), dtype=float)
        finite = np.isfinite(vals)
        nbad = int((~finite).sum())
        skipped += nbad
        total += n
        if nbad == n:
            continue
        if nbad:
            vals = np.where(finite, vals, -math.inf)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best = float(vals[i])
            best_z = complex(z[i])
            best_delta = omr
            best_n = n
    return best, best_z, best_delta, best_n, skipped, total


def _polish(
    f: PointFunc,
    value: float,
    z0: complex,
    delta0: float,
    ring_angles: int,
    grid: DiskGrid,
    iters: int,
    feasible: Callable[[np.ndarray, np.ndarray], bool] | None = None,
) -> tuple[float, complex]:
    """Pattern search around (delta, theta) = (1-r, arg z), radial steps
    multiplicative (log-space halving), staying inside |z| <= r_max."""
    if iters <= 0 or not math.isfinite(value):
        return value, z0
    delta_min = grid.delta_min
    delta = max(delta0, delta_min)
    theta = math.atan2(z0.imag, z0.real)
    radial = 2.0 ** 0.5  # spans two ring gaps initially
    ang = 2.0 * 2.0 * math.pi / float(ring_angles)  # twice the local spacing
    best = value
    for _ in range(iters):
        moved = False
        for dd in (1.0, radial, 1.0 / radial):
            nd = min(max(delta * dd, delta_min), 1.0)
            for dt in (0.0, ang, -ang):
                if dd == 1.0 and dt == 0.0:
                    continue
                nt = theta + dt
                z = (1.0 - nd) * complex(math.cos(nt), math.sin(nt))
                omz2 = nd * (2.0 - nd)
                if feasible is not None and not feasible(z, omz2):
                    continue
                try:
                    v = float(f(z, omz2))
                except (ArithmeticError, EvaluationError):
                    continue
                if math.isfinite(v) and v > best:
                    best = v
                    delta, theta = nd, nt
                    moved = True
        if not moved:
            radial = math.sqrt(radial)
            ang *= 0.5
            if radial - 1.0 < 1e-15 and ang < 1e-15:
                break
    z_best = (1.0 - delta) * complex(math.cos(theta), math.sin(theta))
    return best, z_best


def sup_estimate(
    f: PointFunc,
    grid: DiskGrid,
    polish_iters: int = 40,
    feasible: Callable[[np.ndarray, np.ndarray], bool] | None = None,
) -> SupEstimate:
    """Estimate sup of a nonnegative function over the disk.

    ``f(z, one_minus_abs_z_sq)`` must accept ndarray arguments (and scalar
    complex/float during polish).  Non-finite values at grid points are
    skipped and counted; more than 1% skipped raises
    :class:`GridEvaluationError`.  The result never decreases under more
    polish iterations or grid refinement of the scan maximum.
    """
    gv, z0, d0, n0, skipped, total = _scan(f, grid)
    if skipped > 0.01 * total:
        raise GridEvaluationError(f"{skipped}/{total} grid points failed to evaluate")
    if not math.isfinite(gv):
        # every point skipped under a feasibility-free scan is already an error;
        # this happens only for the empty grid, which build_grid precludes
        return SupEstimate(value=0.0, argmax=0j, refined=False, grid_value=0.0, skipped=skipped)
    value, z_best = _polish(f, gv, z0, d0, n0, grid, polish_iters, feasible)
    return SupEstimate(
        value=value,
        argmax=z_best,
        refined=polish_iters > 0,
        grid_value=gv,
        skipped=skipped,
    )


# ---------------------------------------------------------------------------
# Boundary tails


@dataclass(frozen=True)
class TailEstimate:
    """Gated boundary suprema over a cut schedule.

    ``sup_values`` are cumulative (gate > cut) and nonincreasing;
    ``window_values`` are per-band maxima used for trend detection (None
    where a band holds no grid points).  ``limsup_estimate`` is the sup at
    the final cut, or 0 when the gate never exceeds it (the boundary
    restriction set is empty, so the limit superior is over an empty set).
    """

    cuts: tuple[float, ...]
    sup_values: tuple[float, ...]
    window_values: tuple[float | None, ...]
    limsup_estimate: float
    trend: str
    reference: float


def default_cuts(grid: DiskGrid, schedule: Sequence[float] = DEFAULT_CUT_SCHEDULE) -> list[float]:
    """Clip a cut schedule to cuts the grid can see (cut < r_max)."""
    kept = [float(c) for c in schedule if c < grid.r_max]
    return kept if kept else [float(schedule[0])]


def tail_sup(
    f: PointFunc,
    gate: PointFunc,
    grid: DiskGrid,
    cuts: Sequence[float],
    polish_iters: int = 40,
    global_sup: float | None = None,
    trend_cfg: TrendConfig = TrendConfig(),
) -> TailEstimate:
    """Suprema of f over {gate > cut} for an increasing cut schedule.

    Cumulative sups get a monotone envelope (a valid lower bound since the
    true tails are nonincreasing).  Trends are read off the per-band maxima:
    cumulative tails are monotone by construction and cannot reveal growth,
    while band maxima grow exactly when f blows up along gate -> 1.
    """
    cuts = [float(c) for c in cuts]
    if len(cuts) < 3:
        raise ParameterError("need at least 3 cuts")
    if any(b <= a for a, b in zip(cuts, cuts[1:])) or cuts[-1] >= 1.0:
        raise ParameterError("cuts must be strictly increasing and < 1")

    m = len(cuts)
    cut_best = [-math.inf] * m
    cut_arg: list[tuple[complex, float, int]] = [(0j, 1.0, 64)] * m
    win_best = [-math.inf] * m
    global_best = -math.inf
    skipped = 0
    total = 0
    edges = np.array(cuts + [np.inf])
    for (r, omr, n), (z, omz2) in zip(grid.rings(), grid.blocks()):
        fv = np.asarray(f(z, omz2), dtype=float)
        gv = np.asarray(gate(z, omz2), dtype=float)
        ok = np.isfinite(fv) & np.isfinite(gv)
        skipped += int((~ok).sum())
        total += n
        if not ok.any():
            continue
        fv = np.where(ok, fv, -math.inf)
        gmax = float(fv.max())
        if gmax > global_best:
            global_best = gmax
        for i, c in enumerate(cuts):
            sel = ok & (gv > c)
            if sel.any():
                vals = np.where(sel, fv, -math.inf)
                j = int(np.argmax(vals))
                if vals[j] > cut_best[i]:
                    cut_best[i] = float(vals[j])
                    cut_arg[i] = (complex(z[j]), omr, n)
        band = np.searchsorted(edges, gv, side="left")
        for i in range(m):
            sel = ok & (band == i + 1)
            if sel.any():
                v = float(np.where(sel, fv, -math.inf).max())
                if v > win_best[i]:
                    win_best[i] = v

    if skipped > 0.01 * max(total, 1):
        raise GridEvaluationError(f"{skipped}/{total} grid points failed to evaluate")

    reference = float(global_sup) if global_sup is not None else (global_best if math.isfinite(global_best) else 0.0)

    polished: list[float | None] = []
    for i, c in enumerate(cuts):
        if not math.isfinite(cut_best[i]):
            polished.append(None)
            continue
        z0, d0, n0 = cut_arg[i]

        def _feasible(z, omz2, _c=c):
            g = gate(np.asarray(z), np.asarray(omz2))
            return bool(np.isfinite(g) and g > _c)

        v, _ = _polish(f, cut_best[i], z0, d0, n0, grid, polish_iters, feasible=_feasible)
        polished.append(v)

    # Monotone envelope from the outermost cut inward.
    env: list[float] = [0.0] * m
    running = 0.0
    for i in range(m - 1, -1, -1):
        if polished[i] is not None:
            running = max(running, polished[i])
        env[i] = running

    windows = tuple(v if math.isfinite(v) else None for v in win_best)
    last_nonempty = polished[-1] is not None
    if last_nonempty:
        limsup = env[-1]
        trend = classify_trend([w for w in windows if w is not None], reference, trend_cfg)
    else:
        limsup = 0.0
        trend = "decreasing-to-zero"
    return TailEstimate(
        cuts=tuple(cuts),
        sup_values=tuple(env),
        window_values=windows,
        limsup_estimate=limsup,
        trend=trend,
        reference=reference,
    )


# ---------------------------------------------------------------------------
# Quadrature


@dataclass(frozen=True)
class QuadratureConfig:
    """Radial/angular quadrature knobs for disk integrals.

    Radial: composite Gauss-Legendre on dyadic subintervals
    [1-2^-l, 1-2^-(l+1)], l = 0..levels-1.  Angular: trapezoid circle
    means with count max(theta_base, theta_coeff/(1-r)) capped at
    theta_cap (boundary-peaked integrands need the adaptive growth).
    """

    levels: int = 40
    gl_nodes: int = 32
    theta_base: int = 256
    theta_coeff: float = 4.0
    theta_cap: int = 2 ** 14

    def n_theta(self, r: float) -> int:
        n = max(self.theta_base, int(math.ceil(self.theta_coeff / max(1.0 - r, 1e-300))))
        return max(64, min(n, self.theta_cap))


@lru_cache(maxsize=8)
def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def circle_mean(f: AnalyticSymbol, r: float, p: float, n: int) -> float:
    """Mean of |f(r e^{i theta})|^p over n equispaced angles.

    The rectangle rule on the circle is spectrally accurate for smooth
    integrands and exact for |z^k|^p, which is constant on circles.
    """
    if not 0.0 <= r < 1.0:
        raise ParameterError("radius must satisfy 0 <= r < 1")
    if n < 64:
        raise ParameterError("n must be >= 64")
    theta = 2.0 * np.pi * np.arange(n) / n
    z = r * np.exp(1j * theta)
    w = evaluate(f, z)
    vals = np.abs(w) ** p
    if not np.isfinite(vals).all():
        bad = int(np.argmax(~np.isfinite(vals)))
        raise EvaluationError("circle mean evaluation failed", complex(z[bad]))
    return float(vals.mean())


def bergman_integral(
    f: AnalyticSymbol,
    p: float,
    alpha: float,
    quad: QuadratureConfig = QuadratureConfig(),
) -> float:
    """(alpha+1) * integral of |f|^p (1-|z|^2)^alpha over the disk.

    Area measure is normalized (the constant function 1 integrates to 1).
    Reduced to 2(alpha+1) * int_0^rmax M_p(r) r (1-r^2)^alpha dr with M_p
    the circle mean; evaluated in the boundary variable w = 1-r so weights
    near r = 1 keep full precision.
    """
    if p < 1:
        raise ParameterError("p must be >= 1")
    if alpha <= -1:
        raise ParameterError("alpha must be > -1")
    x, gw = _gl_nodes(quad.gl_nodes)
    total = 0.0
    for level in range(quad.levels):
        hi = 2.0 ** (-level)
        lo = hi / 2.0
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        ws = mid + half * x
        for wnode, weight in zip(ws, gw):
            r = 1.0 - wnode
            m = circle_mean(f, r, p, quad.n_theta(r))
            total += weight * half * m * r * (wnode * (2.0 - wnode)) ** alpha
    return 2.0 * (alpha + 1.0) * total
