"""Level-set domains ``Omega_t(K)`` and ``Omega_{t,s}(E, F)``.

A domain is the connected component containing 0 of
``{z in D : rho_K(z) > t}`` (resp. ``rho_E > t and rho_F > s``).
Membership is decided without false positives:

* points with ``rho > 2*level`` for every constraint are inside, since that
  whole set is connected to 0 inside the domain;
* otherwise a certified march (steps of half the Lipschitz gap) towards such
  a point, or towards a certified grid cell of the origin component, proves
  membership;
* a conservative 8-connected grid of cells that *might* meet the domain
  proves non-membership when the point's cell is cut off from 0.

Anything left over is reported as indeterminate.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .circle import CompactBoundarySet, dist_to_set, nearest_point
from .errors import DomainError, IndeterminateError

MARCH_STEPS = 4000
GAP_FLOOR = 1e-10


class Membership(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    INDETERMINATE = "indeterminate"


class _Domain:
    """Shared machinery; subclasses define ``constraints``."""

    grid_resolution: int

    @property
    def constraints(self) -> tuple[tuple[CompactBoundarySet, float], ...]:
        raise NotImplementedError

    @property
    def is_empty(self) -> bool:
        return max(level for _, level in self.constraints) >= 1.0

    def gap(self, z) -> np.ndarray:
        """``min_i (rho_{K_i}(z) - level_i)``; 1-Lipschitz, positive on the sublevel set."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return np.min([dist_to_set(z, K) - lv for K, lv in self.constraints], axis=0)

    def safe_radius(self, z) -> np.ndarray:
        """Radius of a disk around ``z`` contained in the open sublevel set and in D."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return np.minimum(self.gap(z), 1.0 - np.abs(z))

    def core(self, z) -> np.ndarray:
        """The fast-path region ``rho_i > 2*level_i`` for all constraints."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        ok = np.abs(z) < 1.0
        for K, lv in self.constraints:
            ok &= dist_to_set(z, K) > 2.0 * lv
        return ok

    def project(self, z) -> np.ndarray:
        """Nearest point on the active level curve (the constraint attaining the gap)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        gaps = np.array([dist_to_set(z, K) - lv for K, lv in self.constraints])
        which = np.argmin(gaps, axis=0)
        out = np.empty_like(z)
        for i, (K, lv) in enumerate(self.constraints):
            sel = which == i
            if np.any(sel):
                zz = z[sel]
                k = nearest_point(zz, K)
                d = np.abs(zz - k)
                out[sel] = k + (zz - k) * (lv / np.where(d > 0, d, 1.0))
        return out

    # membership ---------------------------------------------------------

    def membership(self, z) -> np.ndarray:
        """Array of :class:`Membership` values for the points ``z``."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.full(z.shape, Membership.INDETERMINATE, dtype=object)
        if self.is_empty:
            out[:] = Membership.OUTSIDE
            return out
        inside_disk = np.abs(z) < 1.0
        g = np.full(z.shape, -np.inf)
        g[inside_disk] = self.gap(z[inside_disk])
        out[~(g > 0)] = Membership.OUTSIDE
        todo = g > 0
        fast = np.zeros(z.shape, bool)
        fast[todo] = self.core(z[todo])
        out[fast] = Membership.INSIDE
        todo &= ~fast
        if np.any(todo):
            idx = np.flatnonzero(todo)
            reached = self._march(z[idx], np.zeros(idx.size, complex), toward_core=True)
            out[idx[reached]] = Membership.INSIDE
            todo[idx[reached]] = False
        if np.any(todo):
            grid = _grid(self)
            for i in np.flatnonzero(todo):
                out[i] = grid.classify(self, z[i])
        return out

    def contains(self, z) -> bool | np.ndarray:
        """Membership as booleans; raises :class:`IndeterminateError` when undecided."""
        scalar = np.ndim(z) == 0
        m = self.membership(z)
        if np.any(m == Membership.INDETERMINATE):
            raise IndeterminateError("membership undecided at the configured grid resolution")
        res = m == Membership.INSIDE
        return bool(res[0]) if scalar else res

    def _march(self, a: np.ndarray, b: np.ndarray, toward_core: bool = False) -> np.ndarray:
        """Certified straight-line marches from ``a`` to ``b`` (vectorized).

        Each step moves half the current gap, so every point passed lies in
        the open sublevel set; segments between disk points stay in D.
        Success means reaching ``b`` (or the core when ``toward_core``).
        """
        p = a.copy()
        ok = np.zeros(a.shape, bool)
        live = np.ones(a.shape, bool)
        for _ in range(MARCH_STEPS):
            if not np.any(live):
                break
            i = np.flatnonzero(live)
            g = self.gap(p[i])
            if toward_core:
                hit = self.core(p[i])
                ok[i[hit]] = True
                live[i[hit]] = False
            rem = np.abs(b[i] - p[i])
            arrive = rem < g
            ok[i[arrive & live[i]]] = True
            live[i[arrive]] = False
            stuck = g < GAP_FLOOR
            live[i[stuck]] = False
            i2 = i[live[i]]
            if i2.size == 0:
                break
            g2 = self.gap(p[i2])
            d = b[i2] - p[i2]
            p[i2] = p[i2] + d / np.abs(d) * np.minimum(0.5 * g2, np.abs(d))
        return ok

    def sample(self, n: int, rng: np.random.Generator, band: float | None = None,
               max_batches: int = 200) -> np.ndarray:
        """Rejection-sample ``n`` points uniformly from the domain.

        With ``band`` the proposal is uniform on ``1 - band <= |z| < 1``.
        Indeterminate proposals are rejected.  Returns fewer points only if
        the acceptance rate is negligible.
        """
        if self.is_empty or n <= 0:
            return np.empty(0, complex)
        got: list[np.ndarray] = []
        have = 0
        r_in = 0.0 if band is None else max(0.0, 1.0 - band)
        for _ in range(max_batches):
            m = max(64, 2 * (n - have))
            r = np.sqrt(r_in ** 2 + (1.0 - r_in ** 2) * rng.random(m))
            z = r * np.exp(2j * np.pi * rng.random(m))
            z = z[np.abs(z) < 1.0]
            acc = z[self.membership(z) == Membership.INSIDE]
            got.append(acc)
            have += acc.size
            if have >= n:
                break
        return np.concatenate(got)[:n]


@dataclass(frozen=True)
class LevelDomain(_Domain):
    """``Omega_t(K)``: component of ``{rho_K > t}`` containing 0."""

    K: CompactBoundarySet
    t: float
    grid_resolution: int = 128

    def __post_init__(self):
        if self.K.is_empty:
            raise DomainError("level domain of an empty set")
        if not self.t > 0:
            raise DomainError("level must be positive")
        if self.grid_resolution < 8:
            raise DomainError("grid_resolution must be at least 8")

    @property
    def constraints(self):
        return ((self.K, self.t),)


@dataclass(frozen=True)
class ProductLevelDomain(_Domain):
    """``Omega_{t,s}(E, F)``: component of ``{rho_E > t, rho_F > s}`` containing 0."""

    E: CompactBoundarySet
    F: CompactBoundarySet
    t: float
    s: float
    grid_resolution: int = 128

    def __post_init__(self):
        if self.E.is_empty or self.F.is_empty:
            raise DomainError("level domain of an empty set")
        if not (self.t > 0 and self.s > 0):
            raise DomainError("levels must be positive")
        if self.grid_resolution < 8:
            raise DomainError("grid_resolution must be at least 8")

    @property
    def constraints(self):
        return ((self.E, self.t), (self.F, self.s))


@dataclass
class _Grid:
    """Cartesian cell classification of one domain (odd cell count, 0 at a center)."""

    n: int
    h: float
    certain: np.ndarray = field(repr=False)
    possible: np.ndarray = field(repr=False)
    origin_connected: bool

    def cell(self, z: complex) -> tuple[int, int]:
        half = self.n // 2
        i = int(round(z.real / self.h)) + half
        j = int(round(z.imag / self.h)) + half
        return min(max(i, 0), self.n - 1), min(max(j, 0), self.n - 1)

    def center(self, i: int, j: int) -> complex:
        half = self.n // 2
        return complex((i - half) * self.h, (j - half) * self.h)

    def classify(self, dom: _Domain, z: complex) -> Membership:
        i, j = self.cell(z)
        if not self.possible[i, j]:
            return Membership.OUTSIDE
        if not self.origin_connected:
            return Membership.INDETERMINATE
        targets = [self.center(a, b)
                   for a in range(max(i - 3, 0), min(i + 4, self.n))
                   for b in range(max(j - 3, 0), min(j + 4, self.n)) if self.certain[a, b]]
        if targets:
            tz = np.array(targets, complex)
            order = np.argsort(np.abs(tz - z))[:6]
            tz = tz[order]
            if np.any(dom._march(np.full(tz.size, z), tz)):
                return Membership.INSIDE
        return Membership.INDETERMINATE


@functools.lru_cache(maxsize=32)
def _grid(dom: _Domain) -> _Grid:
    """Memoized flood fill for ``dom``.

    ``certain`` cells lie inside D with positive gap on the whole cell and
    are 4-connected to the origin cell.  ``possible`` cells may meet the
    open sublevel set and are 8-connected to the origin cell.
    """
    n = 2 * dom.grid_resolution + 1
    h = 2.0 / n
    half = n // 2
    ax = (np.arange(n) - half) * h
    X, Y = np.meshgrid(ax, ax, indexing="ij")
    c = (X + 1j * Y).ravel()
    r = h / math.sqrt(2.0)
    mod = np.abs(c)
    g = np.full(c.shape, -np.inf)
    near = mod - r < 1.0
    g[near] = dom.gap(c[near])
    cert = ((mod + r < 1.0) & (g - r > 0)).reshape(n, n)
    poss = (near & (g + r > 0)).reshape(n, n)
    lab4, _ = ndimage.label(cert)
    lab8, _ = ndimage.label(poss, structure=np.ones((3, 3), int))
    o = lab4[half, half]
    certain = (lab4 == o) if o else np.zeros_like(cert)
    o8 = lab8[half, half]
    possible = (lab8 == o8) if o8 else np.zeros_like(poss)
    return _Grid(n, h, certain, possible, bool(o))


def contains(domain: _Domain, z) -> bool | np.ndarray:
    return domain.contains(z)
