"""Integrability of distance powers on the circle and the exponent delta(K).

``integrability_norm`` returns ``math.inf`` when the integral diverges.
For finite arc unions divergence is decided from the local structure
(a positive exponent on a set of positive length, or an endpoint exponent
``>= 1``); the running-estimate cap of the quadrature is kept as a
fallback.
"""
from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .circle import (TWO_PI, CompactBoundarySet, boundary_dist, lebesgue_measure, merge_times,
                     neighborhood_measure)
from .errors import DomainError
from .quadrature import DEFAULT_QUAD, Diverged, QuadratureConfig, adaptive_gk, integrate_singular_panel

ANGLE_TOL = 1e-12


def _is_endpoint(theta: float, pts: np.ndarray) -> bool:
    if pts.size == 0:
        return False
    d = np.abs((pts - theta + math.pi) % TWO_PI - math.pi)
    return bool(np.min(d) <= ANGLE_TOL)


def _breakpoints(groups) -> np.ndarray:
    breaks = np.unique(np.concatenate(groups)) if groups else np.empty(0)
    if breaks.size > 1:
        breaks = breaks[np.append(True, np.diff(breaks) > ANGLE_TOL)]
        if breaks[-1] - breaks[0] > TWO_PI - ANGLE_TOL:
            breaks = breaks[:-1]
    if breaks.size == 0:
        breaks = np.array([0.0])
    if breaks.size == 1:
        breaks = np.array([breaks[0], breaks[0] + math.pi])
    return breaks


def structurally_divergent(E: CompactBoundarySet, F: CompactBoundarySet, a: float, b: float) -> bool:
    """Exact divergence test for ``rho_E^-a rho_F^-b`` on finite arc unions.

    Near an endpoint the distance vanishes linearly, so the integral is
    infinite iff some exponent hits a set of positive length or the exponents
    meeting at one endpoint sum to at least 1.
    """
    if a < 0 or b < 0:
        raise DomainError("exponents must be nonnegative")
    singular = [(K, c) for K, c in ((E, a), (F, b)) if c > 0]
    for K, _ in singular:
        if K.is_empty:
            raise DomainError("singular set is empty")
        if lebesgue_measure(K) > 0:
            return True
    ends = [K.endpoints for K, _ in singular]
    for theta in (np.concatenate(ends) if ends else []):
        if sum(c for (K, c), pts in zip(singular, ends) if _is_endpoint(theta, pts)) >= 1.0:
            return True
    return False


def boundary_integral(weight: Callable[[np.ndarray], np.ndarray] | None,
                      E: CompactBoundarySet, F: CompactBoundarySet, a: float, b: float,
                      cfg: QuadratureConfig = DEFAULT_QUAD, extra_breaks=(),
                      cap: float | None = None) -> float:
    """``int_T weight(theta) rho_E^-a rho_F^-b dm`` over the normalized circle.

    ``weight`` must be bounded and smooth away from ``extra_breaks``; it is
    called with absolute angles.  Returns ``math.inf`` on divergence.
    """
    cap = cfg.divergence_cap if cap is None else cap
    singular = [(K, c) for K, c in ((E, a), (F, b)) if c > 0]
    if structurally_divergent(E, F, a, b):
        return math.inf
    ends = [K.endpoints for K, _ in singular]
    breaks = _breakpoints(ends + [np.asarray(extra_breaks, float) % TWO_PI])
    nodes = np.append(breaks, breaks[0] + TWO_PI)

    def exponent_at(theta):
        return sum(c for (K, c), pts in zip(singular, ends) if _is_endpoint(theta, pts))

    def g(anchor, offset):
        offset = np.asarray(offset, dtype=float)
        val = np.ones(offset.shape)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            for K, c in singular:
                val = val * boundary_dist(anchor, offset, K) ** (-c)
            if weight is not None:
                val = val * weight(anchor + offset)
        return val / TWO_PI

    total = 0.0
    try:
        for i, (lo, hi) in enumerate(zip(nodes[:-1], nodes[1:])):
            # anchors are the stored break angles: (lo + 2 pi) % 2 pi may miss them by an ulp
            a_lo, a_hi = float(breaks[i]), float(breaks[(i + 1) % breaks.size])
            v, _ = integrate_singular_panel(g, float(lo), float(hi), exponent_at(lo), exponent_at(hi),
                                            cfg, cap=cap - abs(total), anchors=(a_lo, a_hi))
            total += v
            if abs(total) > cap:
                return math.inf
    except Diverged:
        return math.inf
    return total


def integrability_norm(E: CompactBoundarySet, F: CompactBoundarySet, a: float, b: float,
                       cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``|| rho_E^-a rho_F^-b ||_1`` on the circle, or ``math.inf``."""
    if a == 0 and b == 0:
        return 1.0
    return boundary_integral(None, E, F, a, b, cfg)


def i_characteristic(d: float, K: CompactBoundarySet, cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """``I(d, K) = int_0^2 m(K_t) t^-(d+1) dt``, or ``math.inf``.

    Uses the exact ``m(K_t)``; panels break where components merge.
    """
    if not d > 0:
        raise DomainError("d must be positive")
    if K.is_empty:
        raise DomainError("empty set")
    m0 = lebesgue_measure(K)
    if m0 > 0:
        return math.inf
    if d >= 1.0:
        return math.inf
    ts = merge_times(K)
    nodes = np.unique(np.concatenate([[0.0, 2.0], ts[(ts > 0) & (ts < 2.0)]]))

    def g(anchor, offset):
        t = anchor + np.asarray(offset, dtype=float)
        t = np.maximum(t, 1e-300)
        # m(K_t)/t stays bounded for null K; t^-(d+1) alone overflows first
        with np.errstate(divide="ignore", invalid="ignore"):
            return (neighborhood_measure(K, t) / t) * t ** (-d)

    total = 0.0
    try:
        for lo, hi in zip(nodes[:-1], nodes[1:]):
            v, _ = integrate_singular_panel(g, float(lo), float(hi), d if lo == 0.0 else 0.0, 0.0, cfg,
                                            cap=cfg.divergence_cap)
            total += v
    except Diverged:
        return math.inf
    return total if total <= cfg.divergence_cap else math.inf


def _stage_increments(K: CompactBoundarySet, d: float, stages: range) -> np.ndarray:
    """Integrals of ``m(K_t) t^-(d+1)`` over one self-similarity period per stage."""
    spec = K.generator
    base_len = spec.base[1] - spec.base[0]
    scales = [2.0 * math.sin(0.5 * base_len * spec.ratio ** j) for j in range(spec.stage + 1)]
    out = []
    for j in stages:
        lo, hi = scales[j + 1], scales[j]
        inner = merge_times(K)
        inner = inner[(inner > lo) & (inner < hi)]
        nodes = np.unique(np.concatenate([[lo, hi], inner]))
        val = 0.0
        for x0, x1 in zip(nodes[:-1], nodes[1:]):
            v, _ = adaptive_gk(lambda t: neighborhood_measure(K, t) * t ** (-d - 1.0), x0, x1,
                               DEFAULT_QUAD)
            val += v
        out.append(val)
    return np.array(out)


def cantor_diverges(K: CompactBoundarySet, d: float) -> bool:
    """Resolved-scale divergence proxy for a Cantor-stage set.

    A finite stage has positive length, so its true exponent is 0.  The
    limiting Cantor set is represented by the scales the stage resolves:
    the contribution of one self-similarity period to ``I(d, K)`` must shrink
    from one stage to the next for ``I`` to converge.
    """
    spec = K.generator
    if spec is None or spec.stage < 4:
        raise DomainError("resolved-scale proxy needs a Cantor set of stage >= 4")
    j = spec.stage - 3
    inc = _stage_increments(K, d, range(j - 1, j + 1))
    return bool(inc[1] >= inc[0])


def delta_exponent(K: CompactBoundarySet, tol: float = 1e-3,
                   cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Numerical estimate of ``delta(K) = sup{d >= 0 : rho_K^-d in L^1}``.

    Bisection over ``[0, 1]`` on a divergence test; returns the bracket
    midpoint once its width is below ``tol``.  Explicit sets use the
    divergence flag of :func:`integrability_norm`; Cantor-stage sets use the
    resolved-scale proxy :func:`cantor_diverges`.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if K.generator is not None and K.generator.stage >= 4:
        diverges = lambda d: cantor_diverges(K, d)  # noqa: E731
    else:
        diverges = lambda d: structurally_divergent(K, K, d, 0.0)  # noqa: E731
    lo, hi = 0.0, 1.0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if diverges(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
