"""Riesz measures, Blaschke systems and weighted mass integrals.

Normalization: ``mu = (2 pi)^-1 Laplacian(v)``, so ``log|z - a|`` carries
mass 1 at ``a`` and a simple zero of an analytic ``f`` is a unit atom of
the Riesz measure of ``log|f|``.
"""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .circle import CompactBoundarySet, dist_to_set, sample_boundary
from .errors import DomainError
from .green import green_disk
from .report import FAIL, PASS, VerificationRecord

log = logging.getLogger(__name__)

Evaluable = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DiscreteMeasure:
    """Point masses ``sum_i mass_i * delta(location_i)`` in the open disk."""

    locations: np.ndarray
    masses: np.ndarray

    def __post_init__(self):
        loc = np.atleast_1d(np.asarray(self.locations, dtype=complex))
        m = np.atleast_1d(np.asarray(self.masses, dtype=float))
        if loc.shape != m.shape:
            raise DomainError("locations and masses differ in length")
        if np.any(np.abs(loc) >= 1):
            raise DomainError("atoms must lie in the open disk")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise DomainError("masses must be finite and positive")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "masses", m)

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "mass"])
        for z, m in zip(self.locations, self.masses):
            w.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(m))])
        return buf.getvalue()


@dataclass(frozen=True)
class GridMeasure:
    """Cell masses of a grid Laplacian.

    ``spacing`` holds the stencil step of every cell (uniform grids repeat
    one value).  ``band`` tags the dyadic annulus of each cell for R-sweeps
    (0 for plain grids).  Excluded and skipped cells are counted, never
    silently dropped.
    """

    locations: np.ndarray
    masses: np.ndarray
    spacing: np.ndarray
    R: float
    exclusion: float
    band: np.ndarray | None = None
    excluded_cells: int = 0
    excluded_mass: float = 0.0
    skipped_cells: int = 0
    clamped_mass: float = 0.0
    negative_mass: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def h(self) -> float:
        return float(self.spacing.max()) if self.spacing.size else 0.0

    @property
    def total(self) -> float:
        return float(self.masses.sum())

    def restrict(self, mask: np.ndarray) -> "GridMeasure":
        return GridMeasure(self.locations[mask], self.masses[mask], self.spacing[mask], self.R,
                           self.exclusion, None if self.band is None else self.band[mask])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "R", "excluded_mass"])
        w.writerow([repr(self.h), repr(float(self.R)), repr(float(self.excluded_mass))])
        w.writerow(["re", "im", "mass"])
        for z, m in zip(self.locations, self.masses):
            w.writerow([repr(float(z.real)), repr(float(z.imag)), repr(float(m))])
        return buf.getvalue()


def _finish_cells(c, mass, spacing, R, exclusion, band, excluded, skipped, meta) -> GridMeasure:
    pos = mass[mass > 0].sum()
    tiny = (mass < 0) & (mass >= -1e-9 * max(pos, 1e-300))
    clamped = float(-mass[tiny].sum())
    mass = np.where(tiny, 0.0, mass)
    neg = float(-mass[mass < 0].sum())
    if clamped > 0:
        log.info("clamped %.3e of negative discretization mass", clamped)
    if neg > 0:
        log.warning("grid Laplacian has %.3e of genuinely negative mass", neg)
    excl_mass = float(np.nansum(np.where(np.isfinite(excluded), excluded, 0.0)))
    return GridMeasure(c, mass, spacing, R, exclusion, band, int(excluded.size), excl_mass,
                       skipped, clamped, neg, meta)


def _exclusion_distance(c: np.ndarray, sets: Sequence[CompactBoundarySet]) -> np.ndarray:
    if not sets:
        return np.full(c.shape, np.inf)
    return np.min([dist_to_set(c, K) for K in sets], axis=0)


def grid_riesz_measure(v: Evaluable, h: float, R: float, exclusion: float | None = None,
                       sets: Sequence[CompactBoundarySet] = ()) -> GridMeasure:
    """5-point Laplacian masses ``Delta_h v * h^2 / (2 pi)`` on the square grid ``h Z^2``.

    Cells with center in ``|z| <= R`` are kept, except those within
    ``exclusion`` (default ``4h``) of the singular ``sets``; cells whose
    stencil meets a non-finite value of ``v`` are skipped and counted.
    """
    if not 0 < R < 1:
        raise DomainError("R must lie in (0, 1)")
    if not 0 < h < (1.0 - R) / 4.0:
        raise DomainError("need 0 < h < (1 - R)/4")
    exclusion = 4.0 * h if exclusion is None else exclusion
    n = int(math.floor(R / h))
    ax = np.arange(-n, n + 1) * h
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    c = (X + 1j * Y).ravel()
    c = c[np.abs(c) <= R]
    mass, ok = _stencil_mass(v, c, h)
    far = _exclusion_distance(c, sets) >= exclusion
    keep = far & ok
    meta = {"grid": "cartesian", "h": h}
    return _finish_cells(c[keep], mass[keep], np.full(int(keep.sum()), h), R, exclusion,
                         np.zeros(int(keep.sum()), int), mass[~far], int((far & ~ok).sum()), meta)


def _stencil_mass(v: Evaluable, c: np.ndarray, h: float | np.ndarray):
    with np.errstate(all="ignore"):
        vals = [np.asarray(v(c + d), dtype=float) for d in (h, -h, 1j * h, -1j * h)]
        v0 = np.asarray(v(c), dtype=float)
        mass = (vals[0] + vals[1] + vals[2] + vals[3] - 4.0 * v0) / (2.0 * math.pi)
    ok = np.isfinite(mass)
    return np.where(ok, mass, 0.0), ok


def _polar_stencil_mass(v: Evaluable, r: np.ndarray, th: np.ndarray, dr: float, dth: float):
    """Riesz mass of a polar cell from the 5-point polar Laplacian."""
    e = np.exp(1j * th)
    with np.errstate(all="ignore"):
        v0 = np.asarray(v(r * e), dtype=float)
        vp = np.asarray(v((r + dr) * e), dtype=float)
        vm = np.asarray(v((r - dr) * e), dtype=float)
        va = np.asarray(v(r * np.exp(1j * (th + dth))), dtype=float)
        vb = np.asarray(v(r * np.exp(1j * (th - dth))), dtype=float)
        lap = ((vp - 2 * v0 + vm) / dr ** 2 + (vp - vm) / (2 * dr * r)
               + (va - 2 * v0 + vb) / (r * dth) ** 2)
        mass = lap * r * dr * dth / (2.0 * math.pi)
    ok = np.isfinite(mass)
    return np.where(ok, mass, 0.0), ok


def dyadic_radii(k_max: int, k_min: int = 2) -> np.ndarray:
    """The R-sweep ``R_k = 1 - 2^-k`` for ``k_min <= k <= k_max``."""
    return 1.0 - 2.0 ** -np.arange(k_min, k_max + 1, dtype=float)


def annular_riesz_measure(v: Evaluable, k_max: int, sets: Sequence[CompactBoundarySet] = (),
                          cells_per_width: int = 8, exclusion_factor: float = 4.0,
                          core_cells: int = 64) -> GridMeasure:
    """Riesz masses on ``|z| < 1 - 2^-k_max`` with resolution graded toward the circle.

    The disk ``|z| < 1/2`` and each dyadic annulus ``1 - 2^(1-j) <= |z| < 1 - 2^-j``
    carry a polar grid whose step is ``width / cells_per_width``; the
    ``band`` of a cell is its annulus index ``j`` (1 for the central disk).
    Cells closer than ``exclusion_factor`` steps to the ``sets`` are excluded.
    """
    if k_max < 1:
        raise DomainError("k_max must be at least 1")
    locs, masses, steps, bands, excl = [], [], [], [], []
    skipped = 0
    for j in range(1, k_max + 1):
        r_in, r_out = (0.0, 0.5) if j == 1 else (1.0 - 2.0 ** (1 - j), 1.0 - 2.0 ** -j)
        nr = core_cells if j == 1 else cells_per_width
        dr = (r_out - r_in) / nr
        n_th = int(math.ceil(2.0 * math.pi * r_out / dr))
        dth = 2.0 * math.pi / n_th
        rr = r_in + (np.arange(nr) + 0.5) * dr
        tt = (np.arange(n_th) + 0.5) * dth
        R_, T_ = np.meshgrid(rr, tt, indexing="ij")
        r, th = R_.ravel(), T_.ravel()
        m, ok = _polar_stencil_mass(v, r, th, dr, dth)
        c = r * np.exp(1j * th)
        far = _exclusion_distance(c, sets) >= exclusion_factor * dr
        keep = far & ok
        skipped += int((far & ~ok).sum())
        locs.append(c[keep])
        masses.append(m[keep])
        steps.append(np.full(int(keep.sum()), dr))
        bands.append(np.full(int(keep.sum()), j))
        excl.append(m[~far])
    meta = {"grid": "polar-dyadic", "k_max": k_max, "cells_per_width": cells_per_width}
    return _finish_cells(np.concatenate(locs), np.concatenate(masses), np.concatenate(steps),
                         1.0 - 2.0 ** -k_max, exclusion_factor, np.concatenate(bands),
                         np.concatenate(excl), skipped, meta)


# Blaschke systems --------------------------------------------------------

@dataclass(frozen=True)
class BlaschkeSystem:
    """Zeros ``lambda_n`` in the open disk with finite Blaschke sum."""

    zeros: np.ndarray
    targets: CompactBoundarySet | None = None

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.zeros, dtype=complex))
        if np.any(np.abs(z) >= 1):
            raise DomainError("zeros must lie in the open disk")
        object.__setattr__(self, "zeros", z)
        if not math.isfinite(self.blaschke_sum):
            raise DomainError("Blaschke sum diverges")

    @property
    def blaschke_sum(self) -> float:
        return float(np.sum(1.0 - np.abs(self.zeros)))

    def as_measure(self) -> DiscreteMeasure:
        return DiscreteMeasure(self.zeros, np.ones(self.zeros.size))

    def __len__(self) -> int:
        return int(self.zeros.size)


def blaschke_zero_generator(E: CompactBoundarySet, rate: float, count: int, seed: int) -> BlaschkeSystem:
    """Zeros ``(1 - 2^(-n*rate)) zeta_n``, ``n = 1..count``, with ``zeta_n`` drawn on ``E``."""
    if count < 1:
        raise DomainError("count must be at least 1")
    if not rate > 0:
        raise DomainError("rate must be positive")
    rng = np.random.default_rng(seed)
    zeta = sample_boundary(E, count, rng)
    n = np.arange(1, count + 1, dtype=float)
    return BlaschkeSystem((1.0 - 2.0 ** (-n * rate)) * np.exp(1j * zeta), E)


def log_blaschke_modulus(z, B: BlaschkeSystem) -> np.ndarray | float:
    """``log|B(z)| = -sum_n G_D(z, lambda_n)``; ``-inf`` at a zero."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape)
    for lam in B.zeros:
        out = out - green_disk(z, lam)
    return float(out) if np.ndim(out) == 0 else out


def riesz_representation_check(B: BlaschkeSystem, rtol: float = 1e-10) -> VerificationRecord:
    """``log|B(0)|`` from the Green sum against ``log`` of the product of ``|lambda_n|``."""
    t0 = time.perf_counter()
    if np.any(B.zeros == 0):
        raise DomainError("0 is a zero of B")
    lhs = log_blaschke_modulus(0.0, B) if len(B) else 0.0
    # independent route: one product, one logarithm (rescaled to avoid underflow)
    mant, expo = 1.0, 0
    for a in np.abs(B.zeros):
        mant, e = math.frexp(mant * float(a))
        expo += e
    rhs = math.log(mant) + expo * math.log(2.0) if len(B) else 0.0
    ok = abs(lhs - rhs) <= rtol * max(abs(rhs), 1e-300) or lhs == rhs
    return VerificationRecord("riesz_representation", "log|B(0)| = -sum G_D(0, lambda_n)",
                              PASS if ok else FAIL, lhs=lhs, rhs=rhs, tolerance=rtol,
                              witness=None if ok else "zero list",
                              details={"zeros": len(B)}, wall_time=time.perf_counter() - t0)


# weighted sums -----------------------------------------------------------

def _atoms(mu) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(mu, BlaschkeSystem):
        mu = mu.as_measure()
    return mu.locations, mu.masses


def weighted_mass_integral(mu, sets: Iterable[tuple[CompactBoundarySet, float]] = ()) -> float:
    """``sum mass * (1 - |lambda|) * prod_i rho_{K_i}(lambda)^alpha_i``."""
    loc, m = _atoms(mu)
    w = m * (1.0 - np.abs(loc))
    for K, alpha in sets:
        if alpha < 0:
            raise DomainError("exponents must be nonnegative")
        if alpha > 0:
            w = w * dist_to_set(loc, K) ** alpha
    return float(w.sum())


def weighted_sweep(mu: GridMeasure, sets: Iterable[tuple[CompactBoundarySet, float]],
                   k_values: Sequence[int]) -> np.ndarray:
    """Weighted integrals over ``|lambda| < 1 - 2^-k`` for a banded grid measure."""
    loc, m = mu.locations, mu.masses
    w = m * (1.0 - np.abs(loc))
    for K, alpha in sets:
        if alpha > 0:
            w = w * dist_to_set(loc, K) ** alpha
    per_band = np.bincount(mu.band, weights=w, minlength=max(k_values) + 1)
    csum = np.cumsum(per_band)
    return np.array([csum[k] for k in k_values])


def truncated_mass(mu, E: CompactBoundarySet, F: CompactBoundarySet, xi: float, eta: float) -> float:
    """``sum mass * (1 - |lambda|)`` over atoms with ``rho_E > xi`` and ``rho_F > eta``."""
    if not (xi > 0 and eta > 0):
        raise DomainError("xi and eta must be positive")
    loc, m = _atoms(mu)
    sel = (dist_to_set(loc, E) > xi) & (dist_to_set(loc, F) > eta)
    return float(np.sum(m[sel] * (1.0 - np.abs(loc[sel]))))


# growth constants --------------------------------------------------------

@dataclass(frozen=True)
class GrowthEstimate:
    value: float
    argmax: complex


def growth_sampling_plan(E: CompactBoundarySet, F: CompactBoundarySet, levels: int = 24,
                         rays: int = 64, radial: int = 48) -> np.ndarray:
    """Polar grid plus radial approaches ``(1 - 2^-j) zeta`` toward the points of ``E`` and ``F``."""
    r = 1.0 - 2.0 ** -np.linspace(0.1, levels, radial)
    th = np.linspace(0.0, 2 * math.pi, rays, endpoint=False)
    pts = [np.outer(r, np.exp(1j * th)).ravel()]
    anchors = np.concatenate([E.endpoints, F.endpoints])
    depth = 1.0 - 2.0 ** -np.arange(1, levels + 1, dtype=float)
    pts.append(np.outer(depth, np.exp(1j * anchors)).ravel())
    return np.concatenate(pts)


def growth_constant_estimate(v: Evaluable, E: CompactBoundarySet, F: CompactBoundarySet,
                             p: float, q: float, points: np.ndarray | None = None) -> GrowthEstimate:
    """``M_hat = max(0, sup_z v(z) rho_E^p(z) rho_F^q(z))`` over a sampling plan."""
    z = growth_sampling_plan(E, F) if points is None else np.asarray(points, dtype=complex)
    with np.errstate(all="ignore"):
        vals = np.asarray(v(z), dtype=float) * dist_to_set(z, E) ** p * dist_to_set(z, F) ** q
    vals = np.where(np.isfinite(vals), vals, -np.inf)
    i = int(np.argmax(vals))
    return GrowthEstimate(max(0.0, float(vals[i])), complex(z[i]))


# regularization at the origin -------------------------------------------

def regularize_origin(v: Evaluable, nodes: int = 4096) -> Evaluable:
    """``v_1 = max(v, h)`` on ``|z| < 1/2`` and ``v`` elsewhere.

    ``h`` is the Poisson integral over ``|z| = 1/2`` of the trace of ``v``
    (trapezoid rule, exact for trigonometric polynomials of degree below
    ``nodes``).  Raises :class:`DomainError` if the trace is not integrable
    at that resolution.
    """
    th = 2 * math.pi * np.arange(nodes) / nodes
    zeta = np.exp(1j * th)
    trace = np.asarray(v(0.5 * zeta), dtype=float)
    if not np.all(np.isfinite(trace)):
        raise DomainError("trace of v on |z| = 1/2 is not integrable")
    coarse = trace[::2].mean()
    if abs(coarse - trace.mean()) > 1e-6 * max(1.0, abs(trace.mean())):
        raise DomainError("trace of v on |z| = 1/2 is not resolved by the quadrature")

    def h(z: np.ndarray) -> np.ndarray:
        w = 2.0 * z[..., None]
        ker = (1.0 - np.abs(w) ** 2) / np.abs(zeta - w) ** 2
        return (ker * trace).mean(axis=-1)

    def v1(z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        out = np.asarray(v(z), dtype=float).copy()
        inner = np.abs(z) < 0.5
        if np.any(inner):
            with np.errstate(invalid="ignore"):
                out[inner] = np.fmax(out[inner], h(z[inner]))
        return float(out[0]) if scalar else out

    return v1
