"""Equivalent boundedness/compactness criteria and their cross-check.

Three independent routes decide how a weighted composition operator
u*(f o phi) acts from a Bergman or Hardy space into the Bloch space:

* direct: boundary suprema of the weighted symbol ratios P and Q gated on
  |phi(z)| -> 1;
* testfn: Bloch norms of the operator applied to kernel-type peak
  functions concentrating at |a| -> 1;
* sequence: the weighted power sequences j^s * ||I_u(phi^j)||_B and
  j^s * ||J_u(phi^(j-1))||_B through their closed derivative forms.

Each route classifies the operator on its own; the report records per-pair
agreement, a majority verdict, and essential-norm proxies (the three
boundary limsups), which agree up to equivalence constants whenever the
operator is bounded and non-compact.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .disk import (
    DEFAULT_CUT_SCHEDULE,
    DiskGrid,
    ParameterError,
    SupEstimate,
    TailEstimate,
    TrendConfig,
    build_grid,
    classify_trend,
    default_cuts,
    sup_estimate,
    tail_sup,
)
from .expr import AnalyticSymbol, evaluate, int_pow, parse_symbol, validate_self_map
from .oracles import lemma_limit, monomial_weighted_norm
from .spaces import (
    SpaceSpec,
    TestFunctionFamily,
    bloch_norm,
    bloch_seminorm,
    make_test_function,
    parse_space,
    weighted_sup_norm,
)

__all__ = [
    "CLASS_BOUNDED_NONCOMPACT",
    "CLASS_COMPACT",
    "CLASS_INDETERMINATE",
    "CLASS_UNBOUNDED",
    "DiagnosticsReport",
    "DirectCriterion",
    "Lemma33Row",
    "Prerequisites",
    "ProxyReport",
    "RunConfig",
    "SelfMapError",
    "SeqTail",
    "SequenceCriterion",
    "TestFunctionCriterion",
    "analyze",
    "classify",
    "default_j_schedule",
    "direct_criterion",
    "essential_norm_proxies",
    "hinf_comp_sequence",
    "hinf_comp_sup",
    "lemma33_check",
    "prerequisites",
    "sequence_criterion",
    "testfn_criterion",
]

CLASS_UNBOUNDED = "Unbounded"
CLASS_BOUNDED_NONCOMPACT = "BoundedNonCompact"
CLASS_COMPACT = "Compact"
CLASS_INDETERMINATE = "Indeterminate"


class SelfMapError(ValueError):
    """phi failed the self-map probe (some |phi(z)| >= 1 on the grid)."""

    def __init__(self, max_abs: float, witness: complex):
        super().__init__(f"phi is not a self-map: |phi({witness})| = {max_abs}")
        self.max_abs = max_abs
        self.witness = witness


def _verdict_from_trends(*trends: str) -> str:
    """Combine part trends into a per-criterion verdict.

    Growth on either part signals unboundedness.  A confirmed plateau on
    either part certifies a positive boundary limsup (the proxies are
    maxima over the parts), so it decides BoundedNonCompact even when the
    companion part decays too slowly for the detector to confirm; Compact
    requires every part to decay to zero.
    """
    if "growing" in trends:
        return CLASS_UNBOUNDED
    if "plateau" in trends:
        return CLASS_BOUNDED_NONCOMPACT
    if all(t == "decreasing-to-zero" for t in trends):
        return CLASS_COMPACT
    return CLASS_INDETERMINATE


# ---------------------------------------------------------------------------
# Prerequisites


@dataclass(frozen=True)
class Prerequisites:
    """Necessary finiteness checks from applying the operator to 1 and z:
    the Bloch seminorm of u and sup (1-|z|^2)|phi'(z)||u(z)|."""

    u_bloch_seminorm: float
    K_tilde: float


def prerequisites(u: AnalyticSymbol, phi: AnalyticSymbol, grid: DiskGrid, polish_iters: int = 40) -> Prerequisites:
    du = u.derivative()
    dphi = phi.derivative()

    def u_semi(z, omz2):
        return omz2 * np.abs(evaluate(du, z))

    def k_tilde(z, omz2):
        return omz2 * np.abs(evaluate(dphi, z)) * np.abs(evaluate(u, z))

    return Prerequisites(
        u_bloch_seminorm=sup_estimate(u_semi, grid, polish_iters).value,
        K_tilde=sup_estimate(k_tilde, grid, polish_iters).value,
    )


# ---------------------------------------------------------------------------
# Direct criterion


@dataclass(frozen=True)
class DirectCriterion:
    P_sup: SupEstimate
    Q_sup: SupEstimate
    P_tail: TailEstimate
    Q_tail: TailEstimate
    verdict: str


def direct_criterion(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    spec: SpaceSpec,
    grid: DiskGrid,
    cuts: Sequence[float],
    polish_iters: int = 40,
    trend_cfg: TrendConfig = TrendConfig(),
) -> DirectCriterion:
    """Whole-disk suprema and boundary tails of the two symbol ratios.

    With s = spec.sigma, the parts are
      P(z) = (1-|z|^2)|u'(z)| / (1-|phi(z)|^2)^s
      Q(z) = (1-|z|^2)|u(z) phi'(z)| / (1-|phi(z)|^2)^(s+1)
    gated on |phi(z)| above each cut.
    """
    sigma = spec.sigma
    du = u.derivative()
    dphi = phi.derivative()

    def gate(z, omz2):
        return np.abs(evaluate(phi, z))

    def p_part(z, omz2):
        w = evaluate(phi, z)
        return omz2 * np.abs(evaluate(du, z)) / (1.0 - np.abs(w) ** 2) ** sigma

    def q_part(z, omz2):
        w = evaluate(phi, z)
        return (
            omz2
            * np.abs(evaluate(u, z))
            * np.abs(evaluate(dphi, z))
            / (1.0 - np.abs(w) ** 2) ** (sigma + 1.0)
        )

    p_sup = sup_estimate(p_part, grid, polish_iters)
    q_sup = sup_estimate(q_part, grid, polish_iters)
    p_tail = tail_sup(p_part, gate, grid, cuts, polish_iters, global_sup=p_sup.value, trend_cfg=trend_cfg)
    q_tail = tail_sup(q_part, gate, grid, cuts, polish_iters, global_sup=q_sup.value, trend_cfg=trend_cfg)
    return DirectCriterion(
        P_sup=p_sup,
        Q_sup=q_sup,
        P_tail=p_tail,
        Q_tail=q_tail,
        verdict=_verdict_from_trends(p_tail.trend, q_tail.trend),
    )


# ---------------------------------------------------------------------------
# Test-function criterion


@dataclass(frozen=True)
class TestFunctionCriterion:
    A_tail: TailEstimate
    B_tail: TailEstimate
    families: tuple[str, str]
    verdict: str


def admissible_a_cuts(
    cuts: Sequence[float],
    grid: DiskGrid,
    phi_max: float,
    resolution_factor: float = 1.0,
) -> list[float]:
    """Peak-location radii the grid can honestly handle.

    A peak at |a| = rho has angular width ~ (1-rho); the grid resolves it
    only while 1-rho is at least the finest angular spacing.  Once rho
    exceeds the observed sup|phi| the composed peak lives strictly inside
    phi's range and resolution no longer matters, so those cuts stay.
    """
    spacing = 2.0 * math.pi / float(grid.angle_counts.max())
    kept = [c for c in cuts if (1.0 - c) >= resolution_factor * spacing or c >= phi_max]
    return kept if kept else [float(cuts[0])]


def _ring_tail(cuts: Sequence[float], ring_values: Sequence[float], reference: float, trend_cfg: TrendConfig) -> TailEstimate:
    """TailEstimate over peak radii: every ring is populated by
    construction, cumulative sups envelope the per-ring maxima."""
    m = len(cuts)
    env = [0.0] * m
    running = 0.0
    for i in range(m - 1, -1, -1):
        running = max(running, ring_values[i])
        env[i] = running
    return TailEstimate(
        cuts=tuple(float(c) for c in cuts),
        sup_values=tuple(env),
        window_values=tuple(ring_values),
        limsup_estimate=ring_values[-1],
        trend=classify_trend(list(ring_values), reference, trend_cfg),
        reference=reference,
    )


def testfn_criterion(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    spec: SpaceSpec,
    grid: DiskGrid,
    a_cuts: Sequence[float],
    n_angles: int = 32,
    polish_iters: int = 40,
    trend_cfg: TrendConfig = TrendConfig(),
) -> TestFunctionCriterion:
    """Bloch norms of the operator applied to the two peak families.

    For each radius rho in ``a_cuts`` and each of ``n_angles`` equispaced
    angles, the composed symbol u(z) * F_a(phi(z)) is built by tree
    substitution and its Bloch norm (symbolic derivative, grid sup) is
    taken; the tail over rho -> 1 decides the verdict.  The reference ring
    a = 0 (where every family member is constant) scales the zero
    tolerance.
    """
    fam1, fam2 = ("f", "g") if spec.kind == "bergman" else ("hardy_p", "hardy_q")
    tails = []
    for fam_name in (fam1, fam2):
        ring_values = []
        ref = _composed_bloch_norm(u, phi, spec, fam_name, 0j, grid, polish_iters)
        for rho in a_cuts:
            best = 0.0
            for k in range(n_angles):
                theta = 2.0 * math.pi * k / n_angles
                a = rho * complex(math.cos(theta), math.sin(theta))
                val = _composed_bloch_norm(u, phi, spec, fam_name, a, grid, polish_iters)
                if val > best:
                    best = val
            ring_values.append(best)
        reference = max([ref] + ring_values)
        tails.append(_ring_tail(a_cuts, ring_values, reference, trend_cfg))
    a_tail, b_tail = tails
    return TestFunctionCriterion(
        A_tail=a_tail,
        B_tail=b_tail,
        families=(fam1, fam2),
        verdict=_verdict_from_trends(a_tail.trend, b_tail.trend),
    )


def _composed_bloch_norm(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    spec: SpaceSpec,
    family: str,
    a: complex,
    grid: DiskGrid,
    polish_iters: int,
) -> float:
    peak = make_test_function(TestFunctionFamily(family=family, a=a, spec=spec))
    composed = u * peak.compose(phi)
    return bloch_norm(composed, grid, polish_iters)


# ---------------------------------------------------------------------------
# Power-sequence criterion


@dataclass(frozen=True)
class SeqTail:
    """Trend summary of a nonnegative sequence indexed by j."""

    limsup: float
    trend: str


@dataclass(frozen=True)
class SequenceCriterion:
    exponent: float
    j_values: tuple[int, ...]
    sI: tuple[float, ...]
    sJ: tuple[float, ...]
    sup_I: float
    sup_J: float
    tail_I: SeqTail
    tail_J: SeqTail
    verdict: str


def default_j_schedule(j_max: int = 1000) -> list[int]:
    """1..50 densely, then geometric steps (factor 1.5), capped at j_max.

    The geometric tail keeps the growth detector meaningful: the last
    entry sits more than a factor two above the entry three positions
    earlier, so linear growth in j is seen as growth.
    """
    j_max = min(int(j_max), 1000)
    js = list(range(1, min(50, j_max) + 1))
    v = 50
    while True:
        v = int(round(v * 1.5))
        if v > j_max:
            break
        js.append(v)
    if js[-1] != j_max and j_max > 50:
        js.append(j_max)
    return js


def sequence_criterion(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    spec: SpaceSpec,
    grid: DiskGrid,
    j_values: Sequence[int] | None = None,
    polish_iters: int = 40,
    trend_cfg: TrendConfig = TrendConfig(),
) -> SequenceCriterion:
    """Weighted power sequences through their closed derivative forms.

    No numerical integration: the antiderivative operators satisfy
    (I_u(phi^j))' = j u phi' phi^(j-1) and (J_u(phi^(j-1)))' = u' phi^(j-1),
    so with s = spec.sigma
      sI_j = j^(s+1) * sup (1-|z|^2)|u(z)||phi'(z)||phi(z)|^(j-1)
      sJ_j = j^s     * sup (1-|z|^2)|u'(z)||phi(z)|^(j-1).
    """
    if j_values is None:
        j_values = default_j_schedule()
    j_values = [int(j) for j in j_values]
    if not j_values or any(j <= 0 for j in j_values) or any(b <= a for a, b in zip(j_values, j_values[1:])):
        raise ParameterError("j_values must be positive and increasing")
    sigma = spec.sigma
    du = u.derivative()
    dphi = phi.derivative()

    # One pass caches the j-independent ring data.
    rings_data = []
    for (r, omr, n), (z, omz2) in zip(grid.rings(), grid.blocks()):
        w = np.abs(evaluate(phi, z))
        fi = omz2 * np.abs(evaluate(u, z)) * np.abs(evaluate(dphi, z))
        fj = omz2 * np.abs(evaluate(du, z))
        rings_data.append((z, omr, n, w, fi, fj))

    def scan_max(weights_idx: int, j: int) -> tuple[float, complex, float, int]:
        best, best_z, best_d, best_n = -math.inf, 0j, 1.0, 64
        for z, omr, n, w, fi, fj in rings_data:
            base = fi if weights_idx == 0 else fj
            with np.errstate(all="ignore"):
                vals = base * np.power(w, j - 1)
            vals = np.where(np.isfinite(vals), vals, -math.inf)
            i = int(np.argmax(vals))
            if vals[i] > best:
                best, best_z, best_d, best_n = float(vals[i]), complex(z[i]), omr, n
        return best, best_z, best_d, best_n

    from .disk import _polish  # internal polish reused for the per-j sups

    sI, sJ = [], []
    for j in j_values:
        for idx, out in ((0, sI), (1, sJ)):
            gv, z0, d0, n0 = scan_max(idx, j)
            if idx == 0:

                def f_point(z, omz2, _j=j):
                    return (
                        omz2
                        * np.abs(evaluate(u, z))
                        * np.abs(evaluate(dphi, z))
                        * np.abs(evaluate(phi, z)) ** (_j - 1)
                    )

            else:

                def f_point(z, omz2, _j=j):
                    return omz2 * np.abs(evaluate(du, z)) * np.abs(evaluate(phi, z)) ** (_j - 1)

            val, _ = _polish(f_point, gv, z0, d0, n0, grid, polish_iters)
            scale = float(j) ** (sigma + 1.0) if idx == 0 else float(j) ** sigma
            out.append(scale * max(val, 0.0))

    sup_i, sup_j = max(sI), max(sJ)
    tail_i = SeqTail(limsup=max(sI[-3:]), trend=classify_trend(sI, sup_i, trend_cfg))
    tail_j = SeqTail(limsup=max(sJ[-3:]), trend=classify_trend(sJ, sup_j, trend_cfg))
    return SequenceCriterion(
        exponent=sigma,
        j_values=tuple(j_values),
        sI=tuple(sI),
        sJ=tuple(sJ),
        sup_I=sup_i,
        sup_J=sup_j,
        tail_I=tail_i,
        tail_J=tail_j,
        verdict=_verdict_from_trends(tail_i.trend, tail_j.trend),
    )


# ---------------------------------------------------------------------------
# Weighted sup-space machinery


def hinf_comp_sup(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    alpha_src: float,
    alpha_tgt: float,
    grid: DiskGrid,
    polish_iters: int = 40,
) -> SupEstimate:
    """sup (1-|z|^2)^a_tgt |u(z)| / (1-|phi(z)|^2)^a_src.

    The standard-weight transfer quantity: finite exactly when the
    weighted composition operator is bounded between the two weighted
    sup-norm spaces (the associated weight of a standard weight is
    itself).
    """
    if alpha_src <= 0 or alpha_tgt <= 0:
        raise ParameterError("weights need positive exponents")

    def integrand(z, omz2):
        w = evaluate(phi, z)
        return omz2 ** alpha_tgt * np.abs(evaluate(u, z)) / (1.0 - np.abs(w) ** 2) ** alpha_src

    return sup_estimate(integrand, grid, polish_iters)


def hinf_comp_sequence(
    u: AnalyticSymbol,
    phi: AnalyticSymbol,
    alpha_src: float,
    alpha_tgt: float,
    grid: DiskGrid,
    k_max: int = 50,
    polish_iters: int = 40,
) -> tuple[list[float], float]:
    """Ratios ||u phi^k||_{a_tgt} / ||z^k||_{a_src} for k = 0..k_max.

    Numerators come from the grid sup, denominators from the closed-form
    monomial oracle.  Returns (ratios, sup of ratios).
    """
    if k_max < 10:
        raise ParameterError("k_max must be >= 10")
    ratios = []
    for k in range(k_max + 1):
        num = weighted_sup_norm(u * int_pow(phi, k), alpha_tgt, grid, polish_iters).value
        den = monomial_weighted_norm(k + 1, alpha_src)
        ratios.append(num / den)
    return ratios, max(ratios)


@dataclass(frozen=True)
class Lemma33Row:
    k: int
    value: float
    limit: float
    rel_error: float


def lemma33_check(alpha: float, k_schedule: Sequence[int]) -> list[Lemma33Row]:
    """Convergence table of k^alpha * ||z^(k-1)|| toward (2 alpha/e)^alpha."""
    if alpha <= 0:
        raise ParameterError("alpha must be > 0")
    limit = lemma_limit(alpha)
    rows = []
    for k in k_schedule:
        k = int(k)
        val = float(k) ** alpha * monomial_weighted_norm(k, alpha)
        rows.append(Lemma33Row(k=k, value=val, limit=limit, rel_error=abs(val - limit) / limit))
    return rows


# ---------------------------------------------------------------------------
# Classification, proxies, report


def classify(direct: DirectCriterion, testfn: TestFunctionCriterion, seq: SequenceCriterion) -> tuple[str, dict, dict]:
    """Majority vote over the three per-criterion verdicts.

    Returns (final, per_criterion, agreement-flags); a three-way split
    falls back to Indeterminate.  A single noisy criterion can therefore
    never silently flip the verdict: disagreement is visible in the flags.
    """
    per = {
        "direct": direct.verdict,
        "testfn": testfn.verdict,
        "sequence": seq.verdict,
    }
    votes = list(per.values())
    final = CLASS_INDETERMINATE
    for cand in votes:
        if votes.count(cand) >= 2:
            final = cand
            break
    agreement = {
        "direct_vs_testfn": per["direct"] == per["testfn"],
        "direct_vs_sequence": per["direct"] == per["sequence"],
        "testfn_vs_sequence": per["testfn"] == per["sequence"],
    }
    agreement["unanimous"] = all(agreement.values())
    return final, per, agreement


@dataclass(frozen=True)
class ProxyReport:
    """The three essential-norm proxies and their pairwise ratios.

    Values at or below their zero tolerance are snapped to zero; a 0/0
    ratio reports as 1, a one-sided zero as None (incomparable).
    """

    proxy_PQ: float
    proxy_AB: float
    proxy_seq: float
    ratios: dict[str, float | None]
    within_factor: bool
    factor: float


def essential_norm_proxies(
    direct: DirectCriterion,
    testfn: TestFunctionCriterion,
    seq: SequenceCriterion,
    classification: str,
    trend_cfg: TrendConfig = TrendConfig(),
    factor: float = 25.0,
) -> ProxyReport:
    if classification == CLASS_UNBOUNDED:
        raise ValueError("essential-norm proxies are undefined for an unbounded operator")

    def snap(value: float, reference: float) -> float:
        return 0.0 if value <= trend_cfg.tol_scale * (1.0 + reference) else value

    ref_pq = max(direct.P_sup.value, direct.Q_sup.value)
    ref_ab = max(testfn.A_tail.reference, testfn.B_tail.reference)
    ref_seq = max(seq.sup_I, seq.sup_J)
    p_pq = snap(max(direct.P_tail.limsup_estimate, direct.Q_tail.limsup_estimate), ref_pq)
    p_ab = snap(max(testfn.A_tail.limsup_estimate, testfn.B_tail.limsup_estimate), ref_ab)
    p_seq = snap(max(seq.tail_I.limsup, seq.tail_J.limsup), ref_seq)

    def ratio(a: float, b: float) -> float | None:
        if a == 0.0 and b == 0.0:
            return 1.0
        if a == 0.0 or b == 0.0:
            return None
        return a / b

    ratios = {
        "PQ_over_AB": ratio(p_pq, p_ab),
        "PQ_over_seq": ratio(p_pq, p_seq),
        "AB_over_seq": ratio(p_ab, p_seq),
    }
    within = all(r is not None and 1.0 / factor <= r <= factor for r in ratios.values())
    return ProxyReport(
        proxy_PQ=p_pq,
        proxy_AB=p_ab,
        proxy_seq=p_seq,
        ratios=ratios,
        within_factor=within,
        factor=factor,
    )


# ---------------------------------------------------------------------------
# Orchestration


@dataclass
class RunConfig:
    """All analysis knobs; echoed verbatim into every report."""

    u_text: str = ""
    phi_text: str = ""
    space_text: str = ""
    levels: int = 40
    angular_base: int = 64
    cut_schedule: tuple[float, ...] = DEFAULT_CUT_SCHEDULE
    j_max: int = 1000
    k_max: int = 50
    polish_iters: int = 40
    a_angles: int = 32
    a_resolution_factor: float = 1.0
    tol_scale: float = 1e-3
    grow_factor: float = 2.0
    decay_factor: float = 0.5
    plateau_lo: float = 0.8
    plateau_hi: float = 1.25
    lookback: int = 3
    comparability_factor: float = 25.0
    output_path: str = ""

    def trend(self) -> TrendConfig:
        return TrendConfig(
            tol_scale=self.tol_scale,
            grow_factor=self.grow_factor,
            decay_factor=self.decay_factor,
            plateau_lo=self.plateau_lo,
            plateau_hi=self.plateau_hi,
            lookback=self.lookback,
        )

    def to_dict(self) -> dict:
        return {
            "u_text": self.u_text,
            "phi_text": self.phi_text,
            "space_text": self.space_text,
            "levels": self.levels,
            "angular_base": self.angular_base,
            "cut_schedule": list(self.cut_schedule),
            "j_max": self.j_max,
            "k_max": self.k_max,
            "polish_iters": self.polish_iters,
            "a_angles": self.a_angles,
            "a_resolution_factor": self.a_resolution_factor,
            "tol_scale": self.tol_scale,
            "grow_factor": self.grow_factor,
            "decay_factor": self.decay_factor,
            "plateau_lo": self.plateau_lo,
            "plateau_hi": self.plateau_hi,
            "lookback": self.lookback,
            "comparability_factor": self.comparability_factor,
        }


def _complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _sup_dict(s: SupEstimate) -> dict:
    return {
        "value": s.value,
        "argmax": _complex_pair(s.argmax),
        "refined": s.refined,
        "grid_value": s.grid_value,
        "skipped": s.skipped,
    }


def _tail_dict(t: TailEstimate) -> dict:
    return {
        "cuts": list(t.cuts),
        "sup_values": list(t.sup_values),
        "window_values": list(t.window_values),
        "limsup_estimate": t.limsup_estimate,
        "trend": t.trend,
        "reference": t.reference,
    }


@dataclass
class DiagnosticsReport:
    """Full cross-checked verdict for one (u, phi, space) triple."""

    spec: SpaceSpec
    prerequisites: Prerequisites
    self_map: object
    P_sup: SupEstimate
    Q_sup: SupEstimate
    P_tail: TailEstimate
    Q_tail: TailEstimate
    A_tail: TailEstimate
    B_tail: TailEstimate
    seq: SequenceCriterion
    classification: str
    criterion_classifications: dict
    agreement: dict
    proxies: ProxyReport | None
    config: RunConfig
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-ready document; field names are the stable report schema.

        Timings are deliberately not part of the document so identical
        configs serialize byte-identically.
        """
        spec_d = {"kind": self.spec.kind, "p": self.spec.p}
        if self.spec.kind == "bergman":
            spec_d["alpha"] = self.spec.alpha
        proxies_d = None
        ratios_d = None
        if self.proxies is not None:
            proxies_d = {
                "proxy_PQ": self.proxies.proxy_PQ,
                "proxy_AB": self.proxies.proxy_AB,
                "proxy_seq": self.proxies.proxy_seq,
                "within_factor": self.proxies.within_factor,
                "factor": self.proxies.factor,
            }
            ratios_d = dict(self.proxies.ratios)
        return {
            "spec": spec_d,
            "prerequisites": {
                "u_bloch_seminorm": self.prerequisites.u_bloch_seminorm,
                "K_tilde": self.prerequisites.K_tilde,
            },
            "self_map": {
                "max_abs_observed": self.self_map.max_abs_observed,
                "witness": _complex_pair(self.self_map.witness),
                "passed": self.self_map.passed,
            },
            "P_sup": _sup_dict(self.P_sup),
            "Q_sup": _sup_dict(self.Q_sup),
            "P_tail": _tail_dict(self.P_tail),
            "Q_tail": _tail_dict(self.Q_tail),
            "A_tail": _tail_dict(self.A_tail),
            "B_tail": _tail_dict(self.B_tail),
            "seq": {
                "exponent": self.seq.exponent,
                "j_values": list(self.seq.j_values),
                "sI": list(self.seq.sI),
                "sJ": list(self.seq.sJ),
                "sup_I": self.seq.sup_I,
                "sup_J": self.seq.sup_J,
                "tail_I": {"limsup": self.seq.tail_I.limsup, "trend": self.seq.tail_I.trend},
                "tail_J": {"limsup": self.seq.tail_J.limsup, "trend": self.seq.tail_J.trend},
                "verdict": self.seq.verdict,
            },
            "classification": self.classification,
            "criterion_classifications": dict(self.criterion_classifications),
            "agreement": dict(self.agreement),
            "proxies": proxies_d,
            "proxy_ratios": ratios_d,
            "config": self.config.to_dict(),
        }


def analyze(
    u: AnalyticSymbol | str,
    phi: AnalyticSymbol | str,
    space: SpaceSpec | str,
    config: RunConfig | None = None,
) -> DiagnosticsReport:
    """Run all three criteria on one symbol pair and assemble the report.

    Raises :class:`blochcomp.expr.ParseError` on bad expression text and
    :class:`SelfMapError` when phi is not a self-map of the disk.
    """
    cfg = config or RunConfig()
    u_sym = parse_symbol(u) if isinstance(u, str) else u
    phi_sym = parse_symbol(phi) if isinstance(phi, str) else phi
    spec = parse_space(space) if isinstance(space, str) else space
    if isinstance(u, str):
        cfg.u_text = u
    if isinstance(phi, str):
        cfg.phi_text = phi
    if isinstance(space, str):
        cfg.space_text = space

    timings: dict[str, float] = {}
    t0 = time.perf_counter()
    grid = build_grid(cfg.levels, cfg.angular_base)
    smc = validate_self_map(phi_sym, grid)
    if not smc.passed:
        raise SelfMapError(smc.max_abs_observed, smc.witness)
    timings["setup"] = time.perf_counter() - t0

    trend_cfg = cfg.trend()
    cuts = default_cuts(grid, cfg.cut_schedule)

    t0 = time.perf_counter()
    prereq = prerequisites(u_sym, phi_sym, grid, cfg.polish_iters)
    timings["prerequisites"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    direct = direct_criterion(u_sym, phi_sym, spec, grid, cuts, cfg.polish_iters, trend_cfg)
    timings["direct"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    a_cuts = admissible_a_cuts(cuts, grid, smc.max_abs_observed, cfg.a_resolution_factor)
    testfn = testfn_criterion(
        u_sym, phi_sym, spec, grid, a_cuts, cfg.a_angles, cfg.polish_iters, trend_cfg
    )
    timings["testfn"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    seq = sequence_criterion(
        u_sym, phi_sym, spec, grid, default_j_schedule(cfg.j_max), cfg.polish_iters, trend_cfg
    )
    timings["sequence"] = time.perf_counter() - t0

    final, per, agreement = classify(direct, testfn, seq)
    proxies = None
    if final != CLASS_UNBOUNDED:
        proxies = essential_norm_proxies(direct, testfn, seq, final, trend_cfg, cfg.comparability_factor)

    return DiagnosticsReport(
        spec=spec,
        prerequisites=prereq,
        self_map=smc,
        P_sup=direct.P_sup,
        Q_sup=direct.Q_sup,
        P_tail=direct.P_tail,
        Q_tail=direct.Q_tail,
        A_tail=testfn.A_tail,
        B_tail=testfn.B_tail,
        seq=seq,
        classification=final,
        criterion_classifications=per,
        agreement=agreement,
        proxies=proxies,
        config=cfg,
        timings=timings,
    )
