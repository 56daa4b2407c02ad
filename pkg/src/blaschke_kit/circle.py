"""Compact subsets of the unit circle built from finitely many closed arcs.

Angles are radians.  A set is stored as a sorted tuple of disjoint closed
intervals ``(lo, hi)`` with ``0 <= lo <= hi <= 2*pi``; an arc crossing the
angle 0 is stored as two pieces ``(lo, 2*pi)`` and ``(0, hi)``.  Points are
degenerate intervals with ``lo == hi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12


@dataclass(frozen=True)
class CantorSpec:
    base: tuple[float, float]
    stage: int
    ratio: float


def _normalize(arcs: Iterable[Sequence[float]]) -> tuple[tuple[float, float], ...]:
    pieces = []
    for a in arcs:
        lo, hi = float(a[0]), float(a[1])
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise DomainError(f"non-finite arc endpoint in {a!r}")
        if hi < lo:
            hi += TWO_PI * math.ceil((lo - hi) / TWO_PI)
        if hi - lo >= TWO_PI - MERGE_TOL:
            return ((0.0, TWO_PI),)
        lo_n = lo % TWO_PI
        if lo_n > TWO_PI - MERGE_TOL:
            lo_n = 0.0      # angles a rounding error below 2 pi are angle 0
        hi_n = lo_n + (hi - lo)
        if hi_n <= TWO_PI + MERGE_TOL:
            pieces.append((lo_n, min(hi_n, TWO_PI)))
        else:
            pieces.append((lo_n, TWO_PI))
            pieces.append((0.0, hi_n - TWO_PI))
    pieces.sort()
    merged: list[list[float]] = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1] + MERGE_TOL:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if len(merged) == 1 and merged[0][0] <= MERGE_TOL and merged[0][1] >= TWO_PI - MERGE_TOL:
        return ((0.0, TWO_PI),)
    return tuple((lo, hi) for lo, hi in merged)


@dataclass(frozen=True)
class CompactBoundarySet:
    """A finite union of closed arcs (and points) on the unit circle."""

    arcs: tuple[tuple[float, float], ...]
    generator: CantorSpec | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arcs", _normalize(self.arcs))

    # constructors -----------------------------------------------------
    @classmethod
    def from_arcs(cls, arcs: Iterable[Sequence[float]]) -> "CompactBoundarySet":
        s = cls(tuple(tuple(a) for a in arcs))
        if s.is_empty:
            raise DomainError("a boundary set needs at least one arc or point")
        return s

    @classmethod
    def from_points(cls, angles: Iterable[float]) -> "CompactBoundarySet":
        return cls.from_arcs((a, a) for a in angles)

    @classmethod
    def point(cls, angle: float) -> "CompactBoundarySet":
        return cls.from_points([angle])

    @classmethod
    def full_circle(cls) -> "CompactBoundarySet":
        return cls(((0.0, TWO_PI),))

    @classmethod
    def empty(cls) -> "CompactBoundarySet":
        return cls(())

    @classmethod
    def cantor(cls, base: Sequence[float], stage: int, ratio: float) -> "CompactBoundarySet":
        """Middle-removal Cantor construction on the base arc.

        Each stage keeps the two end pieces of every arc, each of relative
        length ``ratio``; stage ``s`` therefore has ``2**s`` arcs of length
        ``ratio**s`` times the base length.
        """
        if stage < 0 or int(stage) != stage:
            raise DomainError("cantor stage must be a nonnegative integer")
        if not 0.0 < ratio < 0.5:
            raise DomainError("cantor ratio must lie in (0, 1/2)")
        lo, hi = float(base[0]), float(base[1])
        if hi < lo:
            hi += TWO_PI
        if not 0.0 < hi - lo < TWO_PI:
            raise DomainError("cantor base must be a proper arc of positive length")
        starts = np.array([lo])
        length = hi - lo
        for _ in range(int(stage)):
            length *= ratio
            starts = np.concatenate([starts, starts + length / ratio - length])
        starts.sort()
        s = cls(tuple((a, a + length) for a in starts), CantorSpec((lo, hi), int(stage), float(ratio)))
        return s

    # basic queries -----------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return len(self.arcs) == 0

    @property
    def is_full(self) -> bool:
        return self.arcs == ((0.0, TWO_PI),)

    @property
    def endpoints(self) -> np.ndarray:
        """Distinct arc endpoints reduced to [0, 2*pi)."""
        if self.is_empty or self.is_full:
            return np.empty(0)
        pts = np.array([x for arc in self.arcs for x in arc]) % TWO_PI
        return np.unique(pts)

    def components(self) -> list[tuple[float, float]]:
        """Arcs with the pieces split at angle 0 glued back together.

        The second endpoint may exceed 2*pi for an arc crossing 0.
        """
        arcs = list(self.arcs)
        if self.is_full or len(arcs) < 2:
            return arcs
        first, last = arcs[0], arcs[-1]
        if first[0] <= MERGE_TOL and last[1] >= TWO_PI - MERGE_TOL:
            return [(last[0], first[1] + TWO_PI)] + arcs[1:-1]
        return arcs

    def gaps(self) -> list[float]:
        """Angular lengths of the open gaps between consecutive components."""
        comps = self.components()
        if self.is_empty or self.is_full:
            return []
        out = []
        for i, (lo, hi) in enumerate(comps):
            nxt = comps[(i + 1) % len(comps)][0]
            g = (nxt - hi) % TWO_PI
            if len(comps) == 1:
                g = TWO_PI - (hi - lo)
            out.append(g)
        return out

    def contains_angle(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float) % TWO_PI
        out = np.zeros(theta.shape, dtype=bool)
        for lo, hi in self.arcs:
            out |= (theta >= lo - MERGE_TOL) & (theta <= hi + MERGE_TOL)
        return out

    def to_spec(self) -> dict:
        if self.generator is not None:
            g = self.generator
            return {"cantor": {"base": list(g.base), "stage": g.stage, "ratio": g.ratio}}
        if all(lo == hi for lo, hi in self.arcs):
            return {"points": [lo for lo, _ in self.arcs]}
        return {"arcs": [list(a) for a in self.components()]}


def parse_set_spec(spec: dict) -> CompactBoundarySet:
    """Build a set from the scenario-file grammar.

    Accepted forms: ``{"arcs": [[t1, t2], ...]}``, ``{"points": [t, ...]}``
    and ``{"cantor": {"base": [t1, t2], "stage": s, "ratio": r}}``.
    ``arcs`` and ``points`` may appear together.
    """
    if not isinstance(spec, dict):
        raise DomainError(f"set spec must be an object, got {spec!r}")
    if "cantor" in spec:
        c = spec["cantor"]
        return CompactBoundarySet.cantor(c["base"], int(c["stage"]), float(c["ratio"]))
    arcs = [tuple(a) for a in spec.get("arcs", [])]
    arcs += [(p, p) for p in spec.get("points", [])]
    unknown = set(spec) - {"arcs", "points"}
    if unknown:
        raise DomainError(f"unknown set spec keys {sorted(unknown)}")
    return CompactBoundarySet.from_arcs(arcs)


# distances ---------------------------------------------------------------

def _arc_arrays(K: CompactBoundarySet):
    a = np.array(K.arcs, dtype=float)
    return a[:, 0], a[:, 1]


def dist_to_set(w, K: CompactBoundarySet):
    """Euclidean distance from plane points ``w`` (complex) to ``K``."""
    if K.is_empty:
        raise DomainError("distance to an empty set is undefined")
    w = np.asarray(w, dtype=complex)
    scalar = w.ndim == 0
    w = np.atleast_1d(w)
    r = np.abs(w)
    ang = np.angle(w) % TWO_PI
    best = np.full(w.shape, np.inf)
    for lo, hi in K.arcs:
        d = np.minimum(np.abs(w - np.exp(1j * lo)), np.abs(w - np.exp(1j * hi)))
        if hi > lo:
            inside = (r > 0) & (ang >= lo) & (ang <= hi)
            d = np.where(inside, np.abs(r - 1.0), d)
        np.minimum(best, d, out=best)
    return float(best[0]) if scalar else best


def nearest_point(w, K: CompactBoundarySet):
    """A nearest point of ``K`` to each ``w``, as unit complex numbers."""
    if K.is_empty:
        raise DomainError("nearest point of an empty set is undefined")
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    r = np.abs(w)
    ang = np.angle(w) % TWO_PI
    best = np.full(w.shape, np.inf)
    where = np.zeros(w.shape, dtype=complex)
    for lo, hi in K.arcs:
        for e in (np.exp(1j * lo), np.exp(1j * hi)):
            d = np.abs(w - e)
            upd = d < best
            best = np.where(upd, d, best)
            where = np.where(upd, e, where)
        if hi > lo:
            inside = (r > 0) & (ang >= lo) & (ang <= hi)
            d = np.abs(r - 1.0)
            upd = inside & (d < best)
            best = np.where(upd, d, best)
            where = np.where(upd, np.exp(1j * ang), where)
    return where


def boundary_dist(anchor: float, offset, K: CompactBoundarySet) -> np.ndarray:
    """Distance from ``exp(i*(anchor + offset))`` to ``K``.

    Angle differences are formed as ``(anchor - endpoint) + offset`` so that
    points a tiny offset away from an endpoint anchor keep full relative
    precision.  Used by the singular quadratures.
    """
    offset = np.asarray(offset, dtype=float)
    best = np.full(offset.shape, np.inf)
    for lo, hi in K.arcs:
        d_lo = (anchor - lo) + offset
        d_hi = (anchor - hi) + offset
        chord = np.minimum(2.0 * np.abs(np.sin(0.5 * d_lo)), 2.0 * np.abs(np.sin(0.5 * d_hi)))
        if hi > lo:
            length = hi - lo
            inside = (np.mod(d_lo, TWO_PI) <= length) & (np.mod(-d_hi, TWO_PI) <= length)
            chord = np.where(inside, 0.0, chord)
        np.minimum(best, chord, out=best)
    return best


# neighborhoods and measure ----------------------------------------------

def chord_half_width(t: float) -> float:
    """Angular half-width of the arc of points within chord distance ``t``."""
    return 2.0 * math.asin(min(t, 2.0) / 2.0)


def neighborhood(K: CompactBoundarySet, t: float) -> CompactBoundarySet:
    """Closed neighborhood ``{zeta on the circle : rho_K(zeta) <= t}``."""
    if not t > 0:
        raise DomainError(f"neighborhood radius must be positive, got {t}")
    if K.is_empty:
        raise DomainError("neighborhood of an empty set")
    if t >= 2.0 or K.is_full:
        return CompactBoundarySet.full_circle()
    phi = chord_half_width(t)
    return CompactBoundarySet(tuple((lo - phi, hi + phi) for lo, hi in K.arcs))


def complement_closure(S: CompactBoundarySet) -> CompactBoundarySet:
    """Closure of the circle minus ``S``; empty when ``S`` is the full circle."""
    if S.is_empty:
        return CompactBoundarySet.full_circle()
    if S.is_full:
        return CompactBoundarySet.empty()
    comps = S.components()
    out = []
    for i, (_, hi) in enumerate(comps):
        nxt = comps[(i + 1) % len(comps)][0]
        if len(comps) == 1:
            nxt = comps[0][0] + TWO_PI
        elif nxt < hi:
            nxt += TWO_PI
        if nxt - hi > MERGE_TOL:
            out.append((hi, nxt))
    return CompactBoundarySet(tuple(out))


def complement_neighborhood(K: CompactBoundarySet, t: float) -> CompactBoundarySet:
    """``K_t'``: closure of the circle minus the neighborhood ``K_t``."""
    return complement_closure(neighborhood(K, t))


def lebesgue_measure(S: CompactBoundarySet) -> float:
    """Normalized arc length of ``S``."""
    return sum(hi - lo for lo, hi in S.arcs) / TWO_PI


def neighborhood_measure(K: CompactBoundarySet, t) -> np.ndarray | float:
    """``m(K_t)`` for scalar or array ``t``, without building the arcs.

    Dilating every component by the half-width ``phi`` covers
    ``min(g, 2*phi)`` of each gap ``g``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr <= 0):
        raise DomainError("neighborhood radius must be positive")
    phi = 2.0 * np.arcsin(np.minimum(t_arr, 2.0) / 2.0)
    gaps = np.asarray(K.gaps(), dtype=float)
    if K.is_full:
        out = np.ones_like(phi)
    else:
        covered = np.minimum(gaps[None, :], 2.0 * phi.reshape(-1, 1)).sum(axis=1)
        out = np.minimum((sum(hi - lo for lo, hi in K.arcs) + covered) / TWO_PI, 1.0).reshape(phi.shape)
    return float(out) if out.ndim == 0 else out


def merge_times(K: CompactBoundarySet) -> np.ndarray:
    """Radii ``t`` at which neighboring components of ``K_t`` merge."""
    gaps = np.asarray(K.gaps(), dtype=float)
    return np.unique(2.0 * np.sin(np.minimum(gaps, TWO_PI) / 4.0))


def union(*sets: CompactBoundarySet) -> CompactBoundarySet:
    return CompactBoundarySet(tuple(a for s in sets for a in s.arcs))


def intersects(A: CompactBoundarySet, B: CompactBoundarySet) -> bool:
    for lo1, hi1 in A.arcs:
        for lo2, hi2 in B.arcs:
            if lo1 <= hi2 + MERGE_TOL and lo2 <= hi1 + MERGE_TOL:
                return True
    return False


def set_distance(A: CompactBoundarySet, B: CompactBoundarySet) -> float:
    """Euclidean distance between two boundary sets."""
    if intersects(A, B):
        return 0.0
    pts = np.exp(1j * np.concatenate([A.endpoints, [lo for lo, _ in A.arcs]]))
    d_ab = float(np.min(dist_to_set(pts, B)))
    pts = np.exp(1j * np.concatenate([B.endpoints, [lo for lo, _ in B.arcs]]))
    return min(d_ab, float(np.min(dist_to_set(pts, A))))


def sample_boundary(K: CompactBoundarySet, n: int, rng: np.random.Generator) -> np.ndarray:
    """Angles drawn from ``K``: by arc length if ``K`` has length, else uniformly over points."""
    arcs = np.array(K.arcs)
    lengths = arcs[:, 1] - arcs[:, 0]
    if lengths.sum() > 0:
        idx = rng.choice(len(arcs), size=n, p=lengths / lengths.sum())
        return arcs[idx, 0] + rng.random(n) * lengths[idx]
    return arcs[rng.integers(0, len(arcs), size=n), 0]
