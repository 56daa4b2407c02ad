"""Layer-cake identities for atomic measures, both sides in closed form.

For ``nu = sum sigma_i delta_i`` the distribution function ``nu(f > x)`` is
piecewise constant between consecutive distinct values of ``f``, so the
layer-cake integral reduces to a finite sum of power increments.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class WeightedSample:
    """Atoms with values ``f_i, g_i >= 0`` and masses ``sigma_i > 0``."""

    f: np.ndarray
    sigma: np.ndarray
    g: np.ndarray | None = None

    def __post_init__(self):
        f = np.atleast_1d(np.asarray(self.f, dtype=float))
        s = np.atleast_1d(np.asarray(self.sigma, dtype=float))
        if f.shape != s.shape:
            raise DomainError("f and sigma differ in length")
        if not (np.all(np.isfinite(f)) and np.all(np.isfinite(s))):
            raise DomainError("entries must be finite")
        if np.any(f < 0) or np.any(s <= 0):
            raise DomainError("need f >= 0 and sigma > 0")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "sigma", s)
        if self.g is not None:
            g = np.atleast_1d(np.asarray(self.g, dtype=float))
            if g.shape != f.shape or not np.all(np.isfinite(g)) or np.any(g < 0):
                raise DomainError("g must be finite, nonnegative and match f")
            object.__setattr__(self, "g", g)

    def swapped(self) -> "WeightedSample":
        if self.g is None:
            raise DomainError("sample has no g values")
        return WeightedSample(self.g, self.sigma, self.f)


def _levels(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values and, per atom, the index of its value."""
    u, inv = np.unique(values, return_inverse=True)
    return u, inv


def lcr_1d_check(sample: WeightedSample, c: float) -> tuple[float, float]:
    """``sum sigma f^c`` against ``int_0^inf c x^(c-1) nu(f > x) dx``."""
    if not c > 0:
        raise DomainError("c must be positive")
    lhs = float(np.sum(sample.sigma * sample.f ** c))
    u, inv = _levels(sample.f)
    mass = np.bincount(inv, weights=sample.sigma, minlength=u.size)
    tail = np.cumsum(mass[::-1])[::-1]          # nu(f >= u_k) = nu(f > x) on (u_{k-1}, u_k]
    steps = np.diff(np.concatenate([[0.0], u ** c]))
    return lhs, float(np.sum(tail * steps))


def lcr_2d_check(sample: WeightedSample, alpha: float, beta: float) -> tuple[float, float]:
    """``sum sigma f^alpha g^beta`` against the two-variable layer-cake integral."""
    if not (alpha > 0 and beta > 0):
        raise DomainError("alpha and beta must be positive")
    if sample.g is None:
        raise DomainError("sample has no g values")
    lhs = float(np.sum(sample.sigma * sample.f ** alpha * sample.g ** beta))
    u, iu = _levels(sample.f)
    w, iw = _levels(sample.g)
    S = np.zeros((u.size, w.size))
    np.add.at(S, (iu, iw), sample.sigma)
    S = S[::-1, ::-1].cumsum(axis=0).cumsum(axis=1)[::-1, ::-1]
    du = np.diff(np.concatenate([[0.0], u ** alpha]))
    dw = np.diff(np.concatenate([[0.0], w ** beta]))
    return lhs, float(du @ S @ dw)
