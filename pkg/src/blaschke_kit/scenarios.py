"""Scenario definitions and end-to-end verification runners.

Each runner reproduces one statement on a concrete subharmonic function,
usually the extremal member ``v = M rho_E^-p rho_F^-q`` of the growth class,
and returns a :class:`VerificationReport`.  R-sweeps use ``R_k = 1 - 2^-k``.
"""
from __future__ import annotations

import json
import math
import os
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .circle import (CompactBoundarySet, dist_to_set, intersects, parse_set_spec, set_distance,
                     union)
from .domains import LevelDomain, Membership, ProductLevelDomain
from .errors import DomainError, InvalidScenario
from .green import WosConfig, verify_green_lower_bound
from .layer_cake import WeightedSample, lcr_1d_check, lcr_2d_check
from .norms import delta_exponent, integrability_norm
from .poisson import (SingularBoundaryDensity, check_harmonic_measure_upper, harmonic_majorant,
                      harmonic_measure_lower_check, v_ab)
from .quadrature import QuadratureConfig
from .report import FAIL, PASS, SKIPPED, VerificationRecord, VerificationReport
from .riesz import (BlaschkeSystem, annular_riesz_measure, blaschke_zero_generator, dyadic_radii,
                    growth_constant_estimate, log_blaschke_modulus, riesz_representation_check,
                    weighted_mass_integral, weighted_sweep)

KINDS = ("theorem_2_1", "theorem_main_i", "theorem_main_ii", "prop_separate",
         "corollary_zero_sets", "theorem_inverse", "prop_suite")

SEED_ENV = "BLASCHKE_KIT_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


@dataclass
class Controls:
    """Numerical knobs of a scenario."""

    k_min: int = 2
    k_max: int = 12
    cells_per_width: int = 8
    rel_tol: float = 1e-8
    bound_tol: float = 0.05
    plateau_tol: float = 0.05
    plateau_window: int = 1
    growth_threshold: float = 1.25
    walkers: int = 20000
    shell_eps: float = 1e-5
    samples: int = 50
    seed: int = field(default_factory=default_seed)
    # zero-set corollary
    rate: float = 1.0
    count: int = 30
    c: float = 1.0
    c_prime: float = 1.0

    @property
    def ks(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1))

    @property
    def quad(self) -> QuadratureConfig:
        return QuadratureConfig(rel_tol=self.rel_tol)

    @property
    def wos(self) -> WosConfig:
        return WosConfig(shell_eps=self.shell_eps, walkers=self.walkers, seed=self.seed)


@dataclass
class Scenario:
    id: str
    kind: str
    E: CompactBoundarySet | None = None
    F: CompactBoundarySet | None = None
    p: float = 1.0
    q: float = 1.0
    a: float = 0.0
    b: float = 0.0
    eps: float = 0.1
    p_prime: float | None = None
    q_prime: float | None = None
    M: float = 1.0
    controls: Controls = field(default_factory=Controls)

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        try:
            known = {f.name for f in fields(cls)}
            extra = set(d) - known
            if extra:
                raise InvalidScenario(f"unknown scenario fields {sorted(extra)}")
            kw: dict[str, Any] = {k: v for k, v in d.items() if k not in ("E", "F", "controls")}
            for key in ("E", "F"):
                if d.get(key) is not None:
                    kw[key] = parse_set_spec(d[key])
            ctl = dict(d.get("controls", {}))
            cknown = {f.name for f in fields(Controls)}
            if set(ctl) - cknown:
                raise InvalidScenario(f"unknown controls {sorted(set(ctl) - cknown)}")
            kw["controls"] = Controls(**ctl)
            sc = cls(**kw)
        except (TypeError, KeyError, DomainError) as exc:
            raise InvalidScenario(str(exc)) from exc
        sc.validate()
        return sc

    @classmethod
    def load(cls, path: str | Path) -> "Scenario":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidScenario(f"{path}: {exc}") from exc
        return cls.from_dict(data)

    def validate(self) -> None:
        """Raise :class:`InvalidScenario` unless the targeted statement's hypotheses hold."""
        if self.kind not in KINDS:
            raise InvalidScenario(f"unknown kind {self.kind!r}")
        if self.kind == "prop_suite":
            return
        if self.E is None or self.F is None:
            raise InvalidScenario("E and F are required")
        if self.E.is_empty or self.F.is_empty:
            raise InvalidScenario("E and F must be nonempty")
        if not (self.p > 0 and self.q > 0 and self.M > 0):
            raise InvalidScenario("p, q and M must be positive")
        if self.a < 0 or self.b < 0:
            raise InvalidScenario("a and b must be nonnegative")
        c = self.controls
        if not 1 <= c.k_min < c.k_max:
            raise InvalidScenario("need 1 <= k_min < k_max")
        k = self.kind
        if k in ("theorem_main_i", "theorem_main_ii", "corollary_zero_sets",
                 "theorem_inverse") and not self.eps > 0:
            raise InvalidScenario("eps must be positive")
        if k in ("theorem_main_i", "corollary_zero_sets"):
            if not (0 <= self.a < self.p and 0 <= self.b < self.q):
                raise InvalidScenario("need 0 <= a < p and 0 <= b < q")
        elif k == "theorem_main_ii":
            if not ((self.a < self.p and self.b >= self.q) or (self.b < self.q and self.a >= self.p)):
                raise InvalidScenario("need a < p with b >= q, or b < q with a >= p")
        elif k == "prop_separate":
            if self.p_prime is None or self.q_prime is None:
                raise InvalidScenario("p_prime and q_prime are required")
            if self.p_prime < 0 or self.q_prime < 0:
                raise InvalidScenario("p_prime and q_prime must be nonnegative")
            if not self.p_prime + self.q_prime > max(self.p, self.q):
                raise InvalidScenario("need p' + q' > max(p, q)")
        elif k == "theorem_inverse":
            if intersects(self.E, self.F) or set_distance(self.E, self.F) <= 0:
                raise InvalidScenario("E and F must be disjoint")

    def to_dict(self) -> dict:
        d = {"id": self.id, "kind": self.kind, "p": self.p, "q": self.q, "a": self.a, "b": self.b,
             "eps": self.eps, "p_prime": self.p_prime, "q_prime": self.q_prime, "M": self.M,
             "controls": self.controls.__dict__.copy()}
        if self.E is not None:
            d["E"] = self.E.to_spec()
        if self.F is not None:
            d["F"] = self.F.to_spec()
        return d


# helpers -----------------------------------------------------------------

def _extremal(sc: Scenario, p: float | None = None, q: float | None = None) -> Callable:
    dens = SingularBoundaryDensity(sc.E, sc.F, sc.p if p is None else p, sc.q if q is None else q)
    M = sc.M
    return lambda z: M * v_ab(z, dens)


def _sweep_record(check: str, prov: str, ks: list[int], values: np.ndarray, plateau_tol: float,
                  window: int = 1) -> VerificationRecord:
    """Boundedness of a nondecreasing sweep: the last ``window`` relative increments are small."""
    R = dyadic_radii(ks[-1], ks[0])
    inc = np.diff(values) / np.where(values[1:] > 0, values[1:], 1.0)
    monotone = bool(np.all(np.diff(values) >= -1e-12 * np.abs(values[1:]).max(initial=1.0)))
    tail = inc[-window:] if inc.size else np.zeros(1)
    ok = monotone and bool(np.all(tail < plateau_tol))
    j = int(np.argmax(tail)) + inc.size - tail.size
    return VerificationRecord(
        check, prov, PASS if ok else FAIL, lhs=float(tail.max()), rhs=plateau_tol,
        tolerance=plateau_tol, witness=None if ok else {"R": float(R[j + 1])},
        details={"monotone": monotone, "final_value": float(values[-1])},
        series={"R": R.tolist(), "value": values.tolist()})


def _growth_record(check: str, prov: str, ks: list[int], values: np.ndarray,
                   threshold: float) -> VerificationRecord:
    R = dyadic_radii(ks[-1], ks[0])
    ratio = values[1:] / np.where(values[:-1] > 0, values[:-1], np.nan)
    j = int(np.nanargmin(ratio))
    ok = bool(np.all(ratio >= threshold))
    return VerificationRecord(
        check, prov, PASS if ok else FAIL, lhs=float(ratio[j]), rhs=threshold,
        witness=None if ok else {"R": float(R[j + 1])},
        details={"last_growth": float(ratio[-1]), "final_value": float(values[-1])},
        series={"R": R.tolist(), "value": values.tolist()})


def _timed(fn):
    def wrapper(sc: Scenario, *args) -> VerificationReport:
        t0 = time.perf_counter()
        try:
            sc.validate()
            rep = fn(sc, *args)
        except InvalidScenario as exc:
            return VerificationReport(sc.id, sc.kind, [], valid=False, message=str(exc))
        dt = time.perf_counter() - t0
        for r in rep.records:
            r.wall_time = r.wall_time or dt
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _norm_or_invalid(E, F, a, b, cfg) -> float:
    n = integrability_norm(E, F, a, b, cfg)
    if not math.isfinite(n):
        raise InvalidScenario(f"density rho_E^-{a} rho_F^-{b} is not integrable")
    return n


# runners -----------------------------------------------------------------

@_timed
def run_theorem_2_1(sc: Scenario) -> VerificationReport:
    """Blaschke condition ``int (1-|l|) dmu <= M ||rho_E^-p rho_F^-q||_1`` over the R-sweep."""
    c = sc.controls
    norm = _norm_or_invalid(sc.E, sc.F, sc.p, sc.q, c.quad)
    rep = VerificationReport(sc.id, sc.kind)
    mu = annular_riesz_measure(_extremal(sc), c.k_max, [sc.E, sc.F], c.cells_per_width)
    vals = weighted_sweep(mu, [], c.ks)
    rhs = sc.M * norm
    R = dyadic_radii(c.k_max, c.k_min)
    j = int(np.argmax(vals))
    ok = bool(np.all(vals <= rhs * (1 + c.bound_tol)))
    rep.add(VerificationRecord(
        "blaschke_condition", "int (1-|l|) dmu <= M ||rho_E^-p rho_F^-q||_1 for every R",
        PASS if ok else FAIL, lhs=float(vals[j]), rhs=rhs, tolerance=c.bound_tol,
        witness=None if ok else {"R": float(R[j])},
        details={"M": sc.M, "norm": norm, "excluded_cells": mu.excluded_cells,
                 "negative_mass": mu.negative_mass},
        series={"R": R.tolist(), "value": vals.tolist()}))
    rep.add(_sweep_record("blaschke_sweep_bounded", "Blaschke sum bounded as R -> 1", c.ks, vals,
                          c.plateau_tol, c.plateau_window))
    return rep


def _bound9_record(sc: Scenario, mu, norm: float, variant: str) -> VerificationRecord:
    """Decay of truncated masses: ``sigma(D_{xi,eta}) xi^(p-a) eta^(q-b)`` stays below the constant."""
    grid = np.geomspace(1e-3, 1.0, 13)
    w = mu.masses * (1.0 - np.abs(mu.locations))
    rE, rF = dist_to_set(mu.locations, sc.E), dist_to_set(mu.locations, sc.F)
    if variant == "i":
        kappa = 24 * math.pi + 1
        const = 2 * (2 * kappa) ** (sc.p + sc.q - sc.a - sc.b) * sc.M * norm
        pairs = [(x, y) for x in grid for y in grid]
        scaled = [float(w[(rE > x) & (rF > y)].sum()) * x ** (sc.p - sc.a) * y ** (sc.q - sc.b)
                  for x, y in pairs]
    else:
        kappa = 12 * math.pi + 1
        if sc.a < sc.p:
            r, e, g = rE, sc.p - sc.a, sc.b - sc.q
        else:
            r, e, g = rF, sc.q - sc.b, sc.a - sc.p
        const = (2 * kappa) ** e * 2 ** (g + 1) * sc.M * norm
        pairs = [(x, 0.0) for x in grid]
        scaled = [float(w[r > x].sum()) * x ** e for x, _ in pairs]
    i = int(np.argmax(scaled))
    ok = scaled[i] <= const
    return VerificationRecord(
        "truncated_mass_decay", "sigma(D_xi,eta) xi^(p-a) eta^(q-b) <= 2(2 kappa)^(p+q-a-b) M norm",
        PASS if ok else FAIL, lhs=float(scaled[i]), rhs=float(const),
        witness=None if ok else {"xi": pairs[i][0], "eta": pairs[i][1]},
        details={"kappa": kappa, "max_scaled": float(scaled[i])})


def run_theorem_main(sc: Scenario, variant: str | None = None) -> VerificationReport:
    """Weighted Blaschke condition with exponents ``p-a+eps``, ``q-b+eps`` (variant i or ii)."""
    variant = variant or ("i" if sc.kind == "theorem_main_i" else "ii")
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    return _run_theorem_main(sc, variant)


@_timed
def _run_theorem_main(sc: Scenario, variant: str) -> VerificationReport:
    c = sc.controls
    if variant == "i" and not (sc.a < sc.p and sc.b < sc.q):
        raise InvalidScenario("variant i needs a < p and b < q")
    norm = _norm_or_invalid(sc.E, sc.F, sc.a, sc.b, c.quad)
    rep = VerificationReport(sc.id, sc.kind)
    mu = annular_riesz_measure(_extremal(sc), c.k_max, [sc.E, sc.F], c.cells_per_width)
    if variant == "i":
        weights = [(sc.E, sc.p - sc.a + sc.eps), (sc.F, sc.q - sc.b + sc.eps)]
    elif sc.a < sc.p:
        weights = [(sc.E, sc.p - sc.a + sc.eps)]
    else:
        weights = [(sc.F, sc.q - sc.b + sc.eps)]
    vals = weighted_sweep(mu, weights, c.ks)
    rec = _sweep_record("weighted_sweep_bounded", f"weighted Blaschke condition ({variant})", c.ks,
                        vals, c.plateau_tol, c.plateau_window)
    rec.details |= {"C_hat": float(vals[-1] / (sc.M * norm)), "norm": norm, "M": sc.M,
                    "exponents": [w for _, w in weights], "eps": sc.eps}
    rep.add(rec)
    rep.add(_bound9_record(sc, mu, norm, variant))
    return rep


@_timed
def run_prop_separate(sc: Scenario) -> VerificationReport:
    """Separate integrability: weights ``rho_E^p' rho_F^q'`` and the elementary inequality."""
    c = sc.controls
    nE = _norm_or_invalid(sc.E, sc.E, sc.p, 0.0, c.quad)
    nF = _norm_or_invalid(sc.F, sc.F, sc.q, 0.0, c.quad)
    rep = VerificationReport(sc.id, sc.kind)
    pp, qq = sc.p_prime, sc.q_prime
    eps = (pp + qq - max(sc.p, sc.q)) / 4.0
    C = 2.0 ** (pp + qq - min(sc.p, sc.q) - 2 * eps)
    x = np.linspace(0.0, 2.0, 401)
    X, Y = np.meshgrid(x, x, indexing="ij")
    lhs = X ** pp * Y ** qq
    rhs = C * (X ** (sc.p + eps) + Y ** (sc.q + eps))
    gap = lhs - rhs * (1.0 + 1e-12)
    ratio = np.divide(lhs, rhs, out=np.zeros_like(lhs), where=rhs > 0)
    i = np.unravel_index(int(np.argmax(ratio)), ratio.shape)
    ok = bool(np.all(gap <= 0))
    rep.add(VerificationRecord(
        "elementary_inequality", "x^p' y^q' <= C (x^(p+eps) + y^(q+eps)) on [0,2]^2",
        PASS if ok else FAIL, lhs=float(lhs[i]), rhs=float(rhs[i]), tolerance=1e-12,
        witness=None if ok else {"x": float(X[i]), "y": float(Y[i])},
        details={"C": C, "eps": eps, "nodes": int(gap.size), "max_ratio": float(ratio[i])}))
    mu = annular_riesz_measure(_extremal(sc), c.k_max, [sc.E, sc.F], c.cells_per_width)
    vals = weighted_sweep(mu, [(sc.E, pp), (sc.F, qq)], c.ks)
    rec = _sweep_record("weighted_sweep_bounded", "weights rho_E^p' rho_F^q' bounded as R -> 1",
                        c.ks, vals, c.plateau_tol, c.plateau_window)
    rec.details |= {"C_hat": float(vals[-1] / (sc.M * (nE + nF))), "norm_E": nE, "norm_F": nF}
    rep.add(rec)
    return rep


def _anchor_points(K: CompactBoundarySet) -> np.ndarray:
    return np.exp(1j * np.array([0.5 * (lo + hi) for lo, hi in K.components()]))


@_timed
def run_corollary_zero_sets(sc: Scenario) -> VerificationReport:
    """Zeros of ``f = B exp(c sum 1/(1 - conj(zeta) z))`` with singular factors anchored on E and F."""
    c = sc.controls
    norm = _norm_or_invalid(sc.E, sc.F, sc.a, sc.b, c.quad)
    rep = VerificationReport(sc.id, sc.kind)
    if c.count > 0:
        B = blaschke_zero_generator(union(sc.E, sc.F), c.rate, c.count, c.seed)
    else:
        B = BlaschkeSystem(np.empty(0, complex))
    anchors = [(w, c.c) for w in _anchor_points(sc.E)] + [(w, c.c_prime) for w in _anchor_points(sc.F)]

    def log_f(z):
        z = np.asarray(z, dtype=complex)
        out = log_blaschke_modulus(z, B) if len(B) else np.zeros(z.shape)
        for w, cw in anchors:
            out = out + cw * np.real(1.0 / (1.0 - np.conj(w) * z))
        return out

    growth = growth_constant_estimate(log_f, sc.E, sc.F, sc.p, sc.q)
    log_f0 = float(log_f(0.0))
    quantitative = log_f0 < 0
    weights = [(sc.E, sc.p - sc.a + sc.eps), (sc.F, sc.q - sc.b + sc.eps)]
    S = weighted_mass_integral(B, weights)
    finite = math.isfinite(S)
    rep.add(VerificationRecord(
        "zero_sum_finite", "weighted Blaschke sum over the zeros is finite",
        PASS if finite else FAIL, lhs=S, witness=None if finite else "zero list",
        details={"zeros": len(B), "log_f0": log_f0, "quantitative_mode": quantitative,
                 "M_hat": growth.value, "argmax": [growth.argmax.real, growth.argmax.imag]}))
    if not quantitative:
        bound = growth.value * norm
        C_hat = S / bound if bound > 0 else (0.0 if S == 0 else math.inf)
        ok = math.isfinite(C_hat)
        rep.add(VerificationRecord(
            "zero_sum_bound", "sum (1-|l_n|) rho_E^(p-a+eps) rho_F^(q-b+eps) <= C M norm",
            PASS if ok else FAIL, lhs=S, rhs=bound, witness=None if ok else "zero list",
            details={"C_hat": C_hat, "norm": norm}))
    rep.add(riesz_representation_check(B))
    return rep


@_timed
def run_theorem_inverse(sc: Scenario) -> VerificationReport:
    """Optimality: exponents ``p - delta(E) - eps`` diverge while ``+2 eps`` plateau."""
    c = sc.controls
    dE, dF = delta_exponent(sc.E), delta_exponent(sc.F)
    if not (sc.p > dE and sc.q > dF):
        raise InvalidScenario("need p > delta(E) and q > delta(F)")
    if not 0 < sc.eps < min(sc.p - dE, sc.q - dF):
        raise InvalidScenario("need 0 < eps < min(p - delta(E), q - delta(F))")
    sep = set_distance(sc.E, sc.F)
    t = s = sep / 3.0       # then no point is within t of E and within s of F
    rep = VerificationReport(sc.id, sc.kind)
    dens_E = SingularBoundaryDensity(sc.E, sc.E, sc.p, 0.0)
    dens_F = SingularBoundaryDensity(sc.F, sc.F, sc.q, 0.0)
    v0 = lambda z: v_ab(z, dens_E) + v_ab(z, dens_F)  # noqa: E731
    mu = annular_riesz_measure(v0, c.k_max, [sc.E, sc.F], c.cells_per_width)
    div = weighted_sweep(mu, [(sc.E, sc.p - dE - sc.eps), (sc.F, sc.q - dF - sc.eps)], c.ks)
    conv = weighted_sweep(mu, [(sc.E, sc.p - dE + 2 * sc.eps), (sc.F, sc.q - dF + 2 * sc.eps)], c.ks)
    rec = _growth_record("divergent_control", "exponents p-delta-eps: sweep grows without plateau",
                         c.ks, div, c.growth_threshold)
    rec.details |= {"delta_E": dE, "delta_F": dF, "t": t, "s": s, "separation": sep}
    rep.add(rec)
    rep.add(_sweep_record("convergent_contrast", "exponents p-delta+2eps: sweep plateaus", c.ks, conv,
                          c.plateau_tol, c.plateau_window))
    return rep


@_timed
def run_prop_suite(sc: Scenario) -> VerificationReport:
    """Invariant suites of the geometric propositions, with seeded random instances."""
    c = sc.controls
    rng = np.random.default_rng(c.seed)
    rep = VerificationReport(sc.id, sc.kind)
    point = CompactBoundarySet.point(0.0)
    two = CompactBoundarySet.from_points([0.0, 2.0])
    arc = CompactBoundarySet.from_arcs([[1.0, 1.4]])
    for K, t in ((point, 0.3), (two, 0.1), (arc, 0.05)):
        rep.add(harmonic_measure_lower_check(K, t, c.samples, int(rng.integers(2 ** 31))))
    for K, t, l in ((point, 0.01, 1 / 12), (two, 0.005, 1 / 24), (arc, 0.002, 1 / 12)):
        rep.add(check_harmonic_measure_upper(K, t, l, c.samples, int(rng.integers(2 ** 31))))
    # precondition t < 1/k deliberately violated: must come back skipped
    rep.add(check_harmonic_measure_upper(point, 0.1, 1 / 12, c.samples, 0))
    wos = c.wos
    rep.add(verify_green_lower_bound("single", point, 0.01, sample_count=c.samples, cfg=wos))
    rep.add(verify_green_lower_bound("product", (point, CompactBoundarySet.point(math.pi)), 0.005,
                                     sample_count=c.samples, cfg=wos))
    rep.add(_inclusion_record(rng, c.samples))
    rep.add(_lcr_record(rng))
    rep.add(_doubling_record(rng))
    rep.add(_majorant_record(rng, c.quad))
    return rep


def _inclusion_record(rng, n: int) -> VerificationRecord:
    """Points with ``rho_K > s`` belong to ``Omega_{s/2}(K)`` (single and product forms)."""
    E, F = CompactBoundarySet.from_arcs([[0.2, 0.5]]), CompactBoundarySet.from_points([3.0, 4.0])
    worst = None
    checked = 0
    for s in (0.05, 0.2, 0.6):
        z = np.sqrt(rng.random(4 * n)) * np.exp(2j * math.pi * rng.random(4 * n))
        sel = dist_to_set(z, E) > s
        m1 = LevelDomain(E, s / 2).membership(z[sel])
        bad = z[sel][m1 != Membership.INSIDE]
        sel2 = sel & (dist_to_set(z, F) > s)
        m2 = ProductLevelDomain(E, F, s / 2, s / 2).membership(z[sel2])
        bad2 = z[sel2][m2 != Membership.INSIDE]
        checked += int(sel.sum() + sel2.sum())
        if bad.size or bad2.size:
            worst = complex(np.concatenate([bad, bad2])[0])
    ok = worst is None
    return VerificationRecord("inclusion", "{rho > s} lies in Omega_{s/2}", PASS if ok else FAIL,
                              witness=None if ok else [worst.real, worst.imag],
                              details={"points": checked})


def _lcr_record(rng) -> VerificationRecord:
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 200))
        S = WeightedSample(2 * rng.random(n), rng.random(n) + 0.01, 2 * rng.random(n))
        for lhs, rhs in (lcr_1d_check(S, 0.7), lcr_2d_check(S, 1.3, 0.4)):
            worst = max(worst, abs(lhs - rhs) / abs(lhs))
    ok = worst <= 1e-12
    return VerificationRecord("layer_cake", "one- and two-dimensional layer cake identities",
                              PASS if ok else FAIL, lhs=worst, rhs=1e-12, tolerance=1e-12,
                              witness=None if ok else "random sample")


def _doubling_record(rng) -> VerificationRecord:
    K = CompactBoundarySet.from_arcs([[0.3, 0.9], [2.0, 2.0], [4.0, 5.0]])
    z = np.sqrt(rng.random(2000)) * np.exp(2j * math.pi * rng.random(2000))
    r = rng.random(2000)
    ratio = dist_to_set(z, K) / (2.0 * dist_to_set(r * z, K))
    i = int(np.argmax(ratio))
    ok = bool(ratio[i] <= 1.0 + 1e-12)
    return VerificationRecord("radial_doubling", "rho_K(z) <= 2 rho_K(r z)", PASS if ok else FAIL,
                              lhs=float(ratio[i]), rhs=1.0,
                              witness=None if ok else [float(z[i].real), float(z[i].imag)])


def _majorant_record(rng, cfg: QuadratureConfig) -> VerificationRecord:
    dens = SingularBoundaryDensity(CompactBoundarySet.point(0.0), CompactBoundarySet.point(math.pi),
                                   0.5, 0.5)
    z = 0.95 * np.sqrt(rng.random(20)) * np.exp(2j * math.pi * rng.random(20))
    gaps = [harmonic_majorant(w, dens, cfg) - v_ab(w, dens) for w in z]
    i = int(np.argmin(gaps))
    ok = gaps[i] >= -1e-7
    return VerificationRecord("harmonic_majorant", "v_ab <= P_ab", PASS if ok else FAIL,
                              lhs=float(gaps[i]), rhs=0.0,
                              witness=None if ok else [float(z[i].real), float(z[i].imag)])


RUNNERS = {
    "theorem_2_1": run_theorem_2_1,
    "theorem_main_i": lambda sc: run_theorem_main(sc, "i"),
    "theorem_main_ii": lambda sc: run_theorem_main(sc, "ii"),
    "prop_separate": run_prop_separate,
    "corollary_zero_sets": run_corollary_zero_sets,
    "theorem_inverse": run_theorem_inverse,
    "prop_suite": run_prop_suite,
}


def run_scenario(sc: Scenario) -> VerificationReport:
    return RUNNERS[sc.kind](sc)
