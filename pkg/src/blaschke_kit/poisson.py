"""Poisson integrals, the majorant ``P_{a,b}`` and harmonic measures of arc unions."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .circle import (TWO_PI, CompactBoundarySet, dist_to_set, neighborhood, sample_boundary)
from .domains import LevelDomain
from .errors import DomainError
from .norms import boundary_integral, integrability_norm, structurally_divergent
from .quadrature import DEFAULT_QUAD, QuadratureConfig
from .report import FAIL, PASS, SKIPPED, VerificationRecord


@dataclass(frozen=True)
class SingularBoundaryDensity:
    """The boundary density ``rho_E^-a * rho_F^-b``."""

    E: CompactBoundarySet
    F: CompactBoundarySet
    a: float
    b: float

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise DomainError("exponents must be nonnegative")

    def __call__(self, theta) -> np.ndarray:
        return v_ab(np.exp(1j * np.asarray(theta, dtype=float)), self)

    def is_integrable(self) -> bool:
        return not structurally_divergent(self.E, self.F, self.a, self.b)

    def norm(self, cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
        return integrability_norm(self.E, self.F, self.a, self.b, cfg)


@dataclass(frozen=True)
class GrowthClassSpec:
    """Growth bound ``v(z) <= M rho_E^-p(z) rho_F^-q(z)``."""

    E: CompactBoundarySet
    F: CompactBoundarySet
    p: float
    q: float
    M: float = 1.0

    def __post_init__(self):
        if not (self.p > 0 and self.q > 0 and self.M > 0):
            raise DomainError("p, q and M must be positive")

    def bound(self, z) -> np.ndarray:
        return self.M * v_ab(z, SingularBoundaryDensity(self.E, self.F, self.p, self.q))


def _check_open_disk(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("point must lie in the open unit disk")
    return z


def poisson_kernel(z, theta) -> np.ndarray | float:
    """``(1 - |z|^2) / |e^{i theta} - z|^2``."""
    z = _check_open_disk(z)
    out = (1.0 - np.abs(z) ** 2) / np.abs(np.exp(1j * np.asarray(theta, dtype=float)) - z) ** 2
    return float(out) if np.ndim(out) == 0 else out


def v_ab(z, density: SingularBoundaryDensity) -> np.ndarray | float:
    """``rho_E^-a(z) rho_F^-b(z)``; ``inf`` on ``E`` or ``F`` when the exponent is positive."""
    z = np.asarray(z, dtype=complex)
    out = np.ones(z.shape)
    with np.errstate(divide="ignore"):
        for K, c in ((density.E, density.a), (density.F, density.b)):
            if c > 0:
                out = out * np.asarray(dist_to_set(z, K), dtype=float) ** (-c)
    return float(out) if out.ndim == 0 else out


def harmonic_majorant(z: complex, density: SingularBoundaryDensity,
                      cfg: QuadratureConfig = DEFAULT_QUAD) -> float:
    """Poisson integral ``P_{a,b}(z)`` of the density.

    Panels split at the density's singular endpoints, at ``arg z`` and at
    ``arg z +- 4^k (1 - |z|)`` so the kernel peak is resolved as ``|z| -> 1``.
    """
    z = complex(_check_open_disk(z))
    if not density.is_integrable():
        raise DomainError("density is not integrable on the circle")
    r = abs(z)
    breaks: list[float] = []
    if r > 0:
        th = math.atan2(z.imag, z.real)
        breaks.append(th)
        w = 1.0 - r
        while w < 0.5:
            breaks += [th - w, th + w]
            w *= 4.0
    kern = lambda theta: poisson_kernel(z, theta)  # noqa: E731
    val = boundary_integral(kern if r > 0 else None, density.E, density.F, density.a, density.b,
                            cfg, extra_breaks=breaks)
    if not math.isfinite(val):
        raise DomainError("density is not integrable on the circle")
    return val


def arc_harmonic_measure(lam, arc: tuple[float, float]) -> np.ndarray | float:
    """Harmonic measure at ``lam`` of the closed arc ``[theta1, theta2]``.

    Closed form ``(2*alpha - L) / (2*pi)`` with ``alpha`` the angle the arc
    subtends at ``lam``; the subtended angle is recovered from the oriented
    angle between the endpoint chords.
    """
    lam = _check_open_disk(lam)
    lo, hi = float(arc[0]), float(arc[1])
    length = hi - lo
    if length <= 0:
        out = np.zeros(lam.shape)
    elif length >= TWO_PI - 1e-15:
        out = np.ones(lam.shape)
    else:
        a0 = np.angle((np.exp(1j * hi) - lam) / (np.exp(1j * lo) - lam))
        x = np.mod(a0 - 0.5 * length, TWO_PI)
        x = np.where(x > 1.5 * math.pi, x - TWO_PI, x)
        out = np.clip(x / math.pi, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def set_harmonic_measure(lam, S: CompactBoundarySet) -> np.ndarray | float:
    """``omega(lam, S; D)`` as an exact sum over the arcs of ``S``."""
    lam = _check_open_disk(lam)
    if S.is_full:
        out = np.ones(lam.shape)
    else:
        out = np.zeros(lam.shape)
        for arc in S.arcs:
            out = out + arc_harmonic_measure(lam, arc)
        out = np.clip(out, 0.0, 1.0)
    return float(out) if np.ndim(out) == 0 else out


def sample_level_curve(K: CompactBoundarySet, t: float, n: int, rng: np.random.Generator,
                       max_batches: int = 200) -> np.ndarray:
    """Points of ``gamma_t(K) = {z in D : rho_K(z) = t}``.

    Candidates lie on circles ``|z - zeta'| = t`` around endpoints and
    interior points ``zeta'`` of ``K``, restricted to their in-disk arcs;
    those with ``rho_K(z) = t`` (the circle is not cut by another piece of
    ``K``) are kept.
    """
    if not 0 < t < 2:
        raise DomainError("t must lie in (0, 2)")
    ends = K.endpoints
    out: list[np.ndarray] = []
    have = 0
    # in-disk part of the circle around zeta' is psi - arg zeta' in (c, 2pi - c)
    c = math.acos(-t / 2.0)
    for _ in range(max_batches):
        m = max(64, 2 * (n - have))
        half = m // 2
        base = np.concatenate([rng.choice(ends, size=half), sample_boundary(K, m - half, rng)])
        psi = base + c + (TWO_PI - 2 * c) * rng.random(m)
        z = np.exp(1j * base) + t * np.exp(1j * psi)
        z = z[np.abs(z) < 1.0]
        keep = z[dist_to_set(z, K) >= t * (1.0 - 1e-12)]
        out.append(keep)
        have += keep.size
        if have >= n:
            break
    return np.concatenate(out)[:n]


def harmonic_measure_lower_check(K: CompactBoundarySet, t: float, samples: int,
                                 seed: int) -> VerificationRecord:
    """Lower bound ``omega(lam, K_t; D) >= 1/3`` on ``gamma_t(K)``."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    lam = sample_level_curve(K, t, samples, rng)
    om = set_harmonic_measure(lam, neighborhood(K, t))
    i = int(np.argmin(om))
    ok = bool(om[i] >= 1.0 / 3.0 - 1e-9)
    return VerificationRecord(
        "harmonic_measure_lower", "level-curve lower bound omega >= 1/3",
        PASS if ok else FAIL, lhs=float(om[i]), rhs=1.0 / 3.0, tolerance=1e-9,
        witness=[float(lam[i].real), float(lam[i].imag)],
        details={"t": t, "samples": int(lam.size), "set": K.to_spec()},
        wall_time=time.perf_counter() - t0)


def check_harmonic_measure_upper(K: CompactBoundarySet, t: float, l: float, samples: int,
                                 seed: int, grid_resolution: int = 128) -> VerificationRecord:
    """Upper bound ``omega(lam, K_t; D) <= (l/t)(1 - |lam|)`` on ``Omega_{kt}(K)``, ``k = pi/l + 1``.

    Half the samples are uniform on the domain and half uniform on its part
    of the boundary band ``1 - |lam| <= t/l`` where the bound is not trivial.
    """
    t0 = time.perf_counter()
    if not 0 < l < 1:
        raise DomainError("l must lie in (0, 1)")
    k = math.pi / l + 1.0
    details = {"t": t, "l": l, "k": k, "set": K.to_spec()}
    if not 0 < t < 1.0 / k:
        return VerificationRecord("harmonic_measure_upper", "upper bound needs t < 1/k", SKIPPED,
                                  details=details | {"reason": "precondition t < 1/k violated"})
    dom = LevelDomain(K, k * t, grid_resolution)
    rng = np.random.default_rng(seed)
    lam = np.concatenate([dom.sample(samples - samples // 2, rng),
                          dom.sample(samples // 2, rng, band=t / l)])
    if lam.size == 0:
        return VerificationRecord("harmonic_measure_upper", "empty inner domain", SKIPPED,
                                  details=details | {"reason": "empty domain"})
    om = set_harmonic_measure(lam, neighborhood(K, t))
    rhs = (l / t) * (1.0 - np.abs(lam))
    ratio = om / rhs
    i = int(np.argmax(ratio))
    ok = bool(ratio[i] <= 1.0 + 1e-9)
    return VerificationRecord(
        "harmonic_measure_upper", "omega(lam, K_t) <= (l/t)(1-|lam|) on Omega_kt",
        PASS if ok else FAIL, lhs=float(om[i]), rhs=float(rhs[i]), tolerance=1e-9,
        witness=[float(lam[i].real), float(lam[i].imag)],
        details=details | {"max_ratio": float(ratio[i]), "samples": int(lam.size)},
        wall_time=time.perf_counter() - t0)
