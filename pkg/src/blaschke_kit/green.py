"""Green's functions: the disk closed form and walk-on-spheres for level domains."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .circle import CompactBoundarySet
from .domains import LevelDomain, Membership, ProductLevelDomain, _Domain
from .errors import AccuracyError, DomainError
from .report import FAIL, PASS, SKIPPED, VerificationRecord

KAPPA_SINGLE = 12.0 * math.pi + 1.0
KAPPA_PRODUCT = 24.0 * math.pi + 1.0


@dataclass(frozen=True)
class WosConfig:
    shell_eps: float = 1e-5
    walkers: int = 20000
    max_steps: int = 100000
    seed: int = 0

    def __post_init__(self):
        if not self.shell_eps > 0:
            raise DomainError("shell_eps must be positive")
        if self.walkers < 100:
            raise DomainError("walkers must be at least 100")


@dataclass(frozen=True)
class GreenEstimate:
    """A Monte Carlo Green's function value with walk diagnostics."""

    estimate: float
    std_error: float
    mean_steps: float
    circle_exits: int
    level_exits: int

    def __iter__(self):
        yield self.estimate
        yield self.std_error


def green_disk(z, lam) -> np.ndarray | float:
    """``G_D(z, lam) = log|(1 - conj(lam) z) / (z - lam)|``; ``inf`` at ``z = lam``."""
    z = np.asarray(z, dtype=complex)
    lam = np.asarray(lam, dtype=complex)
    if np.any(np.abs(z) >= 1) or np.any(np.abs(lam) >= 1):
        raise DomainError("points must lie in the open unit disk")
    with np.errstate(divide="ignore"):
        out = np.log(np.abs(1.0 - np.conj(lam) * z)) - np.log(np.abs(z - lam))
    return float(out) if out.ndim == 0 else out


def _stream(cfg: WosConfig, key: complex) -> np.random.Generator:
    # one deterministic stream per start point, split from cfg.seed
    words = np.frombuffer(np.array([key.real, key.imag]).tobytes(), dtype=np.uint32)
    return np.random.default_rng(np.random.SeedSequence([cfg.seed & 0xFFFFFFFF, *words.tolist()]))


def walk_on_spheres(start: complex, radius: Callable[[np.ndarray], np.ndarray],
                    exit_value: Callable[[np.ndarray, np.ndarray], np.ndarray],
                    cfg: WosConfig, rng: np.random.Generator):
    """Harmonic extension at ``start`` of boundary data, by walk-on-spheres.

    ``radius(z)`` must be a safe radius and ``exit_value(z, on_circle)``
    evaluates the data at the boundary point nearest to walkers that ended
    inside the ``shell_eps`` shell.  Returns ``(values, steps, on_circle)``.
    """
    n = cfg.walkers
    z = np.full(n, start, dtype=complex)
    steps = np.zeros(n, dtype=np.int64)
    values = np.zeros(n)
    on_circle = np.zeros(n, bool)
    live = np.arange(n)
    for _ in range(cfg.max_steps):
        if live.size == 0:
            break
        zl = z[live]
        r = radius(zl)
        done = r <= cfg.shell_eps
        if np.any(done):
            idx = live[done]
            circ = 1.0 - np.abs(z[idx]) <= cfg.shell_eps
            on_circle[idx] = circ
            values[idx] = exit_value(z[idx], circ)
            live = live[~done]
            r = r[~done]
        z[live] += r * np.exp(2j * math.pi * rng.random(live.size))
        steps[live] += 1
    if live.size > 0.01 * n:
        raise AccuracyError(f"{live.size} walkers exceeded max_steps", None, None)
    if live.size:
        # stragglers read the datum of whichever boundary piece binds the radius
        circ = 1.0 - np.abs(z[live]) <= radius(z[live])
        values[live] = exit_value(z[live], circ)
        on_circle[live] = circ
    return values, steps, on_circle


def _summarize(g0: float, values: np.ndarray, steps: np.ndarray, circ: np.ndarray) -> GreenEstimate:
    n = values.size
    return GreenEstimate(g0 - float(values.mean()), float(values.std(ddof=1) / math.sqrt(n)),
                         float(steps.mean()), int(circ.sum()), int(n - circ.sum()))


def disk_green_wos(z0: complex, lam: complex, cfg: WosConfig = WosConfig()) -> GreenEstimate:
    """Walk-on-spheres estimate of ``G_D(z0, lam)``; calibration against :func:`green_disk`."""
    z0, lam = complex(z0), complex(lam)
    if abs(z0) >= 1 or abs(lam) >= 1:
        raise DomainError("points must lie in the open unit disk")
    if z0 == lam:
        raise DomainError("pole and evaluation point coincide")

    def radius(z):
        return 1.0 - np.abs(z)

    def data(z, _circ):
        xi = z / np.abs(z)
        return -np.log(np.abs(xi - z0))

    vals, steps, circ = walk_on_spheres(lam, radius, data, cfg, _stream(cfg, lam))
    return _summarize(-math.log(abs(lam - z0)), vals, steps, circ)


def green_at_origin(dom: _Domain, lam: complex, cfg: WosConfig = WosConfig()) -> GreenEstimate:
    """``G_Omega(0, lam) = log(1/|lam|) - h(0, lam)`` by walk-on-spheres from ``lam``.

    ``h`` is the harmonic extension of ``log(1/|xi|)``.  Walkers stopping in
    the shell of the unit circle read 0 (ties go to the circle); the others
    read ``log(1/|xi|)`` at their projection onto the active level curve.
    """
    lam = complex(lam)
    if lam == 0:
        raise DomainError("lam must differ from the pole at 0")
    if dom.membership(lam)[0] != Membership.INSIDE:
        raise DomainError("lam is not certified to lie in the domain")

    def data(z, circ):
        out = np.zeros(z.shape)
        lv = ~circ
        if np.any(lv):
            out[lv] = -np.log(np.abs(dom.project(z[lv])))
        return out

    vals, steps, circ = walk_on_spheres(lam, dom.safe_radius, data, cfg, _stream(cfg, lam))
    return _summarize(-math.log(abs(lam)), vals, steps, circ)


def verify_green_lower_bound(kind: str, sets, t: float, s: float | None = None,
                             sample_count: int = 50, cfg: WosConfig = WosConfig(),
                             grid_resolution: int = 128) -> VerificationRecord:
    """Check ``G(0, lam) >= (1 - |lam|)/2`` on the inner domain within 3 standard errors.

    ``kind`` is ``"single"`` (``sets = K``, inner domain ``Omega_{kappa t}``
    with ``kappa = 12 pi + 1``) or ``"product"`` (``sets = (E, F)``,
    ``kappa = 24 pi + 1``).  Half the samples are uniform on the inner
    domain, half in the band ``|lam| >= 1/2``.
    """
    t0 = time.perf_counter()
    if kind == "single":
        K: CompactBoundarySet = sets
        kappa = KAPPA_SINGLE
        levels = (t,)
        outer: _Domain = LevelDomain(K, t, grid_resolution)
        inner: _Domain = LevelDomain(K, kappa * t, grid_resolution)
        details = {"set": K.to_spec()}
    elif kind == "product":
        E, F = sets
        s = t if s is None else s
        kappa = KAPPA_PRODUCT
        levels = (t, s)
        outer = ProductLevelDomain(E, F, t, s, grid_resolution)
        inner = ProductLevelDomain(E, F, kappa * t, kappa * s, grid_resolution)
        details = {"E": E.to_spec(), "F": F.to_spec(), "s": s}
    else:
        raise DomainError(f"unknown kind {kind!r}")
    details |= {"kind": kind, "t": t, "kappa": kappa, "walkers": cfg.walkers,
                "shell_eps": cfg.shell_eps}
    check = f"green_lower_bound_{kind}"
    prov = "G(0, lam) >= (1 - |lam|)/2 on the inner level domain"
    if any(not 0 < lv < 1.0 / kappa for lv in levels):
        return VerificationRecord(check, prov, SKIPPED,
                                  details=details | {"reason": "precondition level < 1/kappa violated"})
    rng = np.random.default_rng(cfg.seed)
    lam = np.concatenate([inner.sample(sample_count - sample_count // 2, rng),
                          inner.sample(sample_count // 2, rng, band=0.5)])
    lam = lam[lam != 0]
    if lam.size == 0:
        return VerificationRecord(check, prov, SKIPPED, details=details | {"reason": "empty domain"})
    worst = (math.inf, None, None)
    steps = []
    for z in lam:
        est = green_at_origin(outer, z, cfg)
        bound = 0.5 * (1.0 - abs(z))
        margin = est.estimate + 3.0 * est.std_error - bound
        steps.append(est.mean_steps)
        if margin < worst[0]:
            worst = (margin, z, est)
    margin, z, est = worst
    return VerificationRecord(
        check, prov, PASS if margin >= 0 else FAIL, lhs=est.estimate, rhs=float(0.5 * (1 - abs(z))),
        tolerance=3.0 * est.std_error, std_error=est.std_error,
        witness=[float(z.real), float(z.imag)],
        details=details | {"worst_margin": float(margin), "samples": int(lam.size),
                           "mean_steps": float(np.mean(steps)), "circle_exits": est.circle_exits,
                           "level_exits": est.level_exits},
        wall_time=time.perf_counter() - t0)
