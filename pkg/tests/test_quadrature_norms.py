import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from blaschke_kit import (AccuracyError, CompactBoundarySet, DomainError, QuadratureConfig,
                          delta_exponent, i_characteristic, integrability_norm)
from blaschke_kit.circle import neighborhood_measure
from blaschke_kit.quadrature import adaptive_gk, integrate_singular_panel

from .conftest import TWO_PI

ZERO = CompactBoundarySet.point(0.0)
PI = CompactBoundarySet.point(math.pi)


def point_norm(c: float) -> float:
    # int (2|sin(th/2)|)^-c dth/2pi = 2^-c B((1-c)/2, 1/2)/pi
    return 2.0 ** -c * special.beta(0.5 * (1.0 - c), 0.5) / math.pi


@pytest.mark.parametrize("f, a, b, exact", [
    (np.sin, 0.0, math.pi, 2.0),
    (np.exp, -1.0, 2.0, math.e ** 2 - math.e ** -1),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 50.0, math.atan(50.0)),
])
def test_adaptive_gk_smooth(f, a, b, exact):
    val, err = adaptive_gk(f, a, b)
    assert val == pytest.approx(exact, rel=1e-10)
    assert err < 1e-7


def test_adaptive_gk_reports_unreachable_accuracy():
    cfg = QuadratureConfig(rel_tol=1e-14, max_depth=4)
    with pytest.raises(AccuracyError):
        adaptive_gk(lambda x: np.sin(1.0 / (x + 1e-4)), 0.0, 1.0, cfg)


@pytest.mark.parametrize("kw", [{"rel_tol": 0.0}, {"max_depth": 2}])
def test_quadrature_config_rejects(kw):
    with pytest.raises(DomainError):
        QuadratureConfig(**kw)


@pytest.mark.parametrize("c", [0.1, 0.5, 0.9, 0.99])
def test_singular_panel_against_beta(c):
    # int_0^1 u^-c (1-u)^-c du = B(1-c, 1-c)
    g = lambda anchor, off: np.abs(anchor + np.asarray(off)) ** -c * np.abs(1 - anchor - np.asarray(off)) ** -c
    val, _ = integrate_singular_panel(g, 0.0, 1.0, c, c, QuadratureConfig())
    assert val == pytest.approx(special.beta(1 - c, 1 - c), rel=1e-8)


def test_norm_trivial_exponents():
    assert integrability_norm(ZERO, PI, 0.0, 0.0) == 1.0


@pytest.mark.parametrize("c", [0.2, 0.5, 0.8, 0.95])
def test_norm_single_point_beta(c):
    assert integrability_norm(ZERO, PI, c, 0.0) == pytest.approx(point_norm(c), rel=1e-8)


def test_norm_antipodal_beta():
    # rho_0 rho_pi = 2|sin th| on the circle
    exact = special.beta(0.25, 0.5) / (math.pi * math.sqrt(2.0))
    assert integrability_norm(ZERO, PI, 0.5, 0.5) == pytest.approx(exact, rel=1e-10)
    assert exact == pytest.approx(1.1803, abs=1e-4)


def test_norm_against_scipy_quad():
    E = CompactBoundarySet.from_points([0.3, 2.0])
    F = CompactBoundarySet.point(4.0)
    f = lambda th: (min(abs(np.exp(1j * th) - np.exp(1j * x)) for x in (0.3, 2.0)) ** -0.4
                    * abs(np.exp(1j * th) - np.exp(4j)) ** -0.7)
    pts = [0.3, 2.0, 4.0, 1.15, 1.15 + math.pi]
    ref, _ = integrate.quad(f, 0.0, TWO_PI, points=pts, limit=400, epsabs=1e-12, epsrel=1e-10)
    assert integrability_norm(E, F, 0.4, 0.7) == pytest.approx(ref / TWO_PI, rel=1e-7)


@pytest.mark.parametrize("E, F, a, b", [
    (ZERO, PI, 1.0, 0.0),
    (ZERO, ZERO, 0.6, 0.6),
    (CompactBoundarySet.from_arcs([(0, 1)]), PI, 0.01, 0.0),
])
def test_norm_divergence(E, F, a, b):
    assert integrability_norm(E, F, a, b) == math.inf


@pytest.mark.parametrize("d", [0.2, 0.5, 0.9, 0.99])
def test_i_characteristic_point_closed_form(d):
    # m(K_t) = 2 arcsin(t/2)/pi for a point
    f = lambda t: 2.0 * math.asin(t / 2.0) / math.pi * t ** (-d - 1.0)
    ref, _ = integrate.quad(f, 0.0, 2.0, limit=200, epsabs=1e-13, epsrel=1e-12)
    assert i_characteristic(d, ZERO) == pytest.approx(ref, rel=1e-7)


def test_i_characteristic_infinite_cases():
    assert i_characteristic(1.0, ZERO) == math.inf
    assert i_characteristic(0.3, CompactBoundarySet.from_arcs([(0, 0.1)])) == math.inf
    with pytest.raises(DomainError):
        i_characteristic(0.0, ZERO)


@given(st.lists(st.floats(0, TWO_PI), min_size=1, max_size=4), st.floats(0.05, 0.95))
def test_norm_layer_cake_identity(pts, d):
    # ||rho^-d||_1 = 2^-d + d I(d, K)
    K = CompactBoundarySet.from_points(pts)
    lhs = integrability_norm(K, K, d, 0.0)
    rhs = 2.0 ** -d + d * i_characteristic(d, K)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_neighborhood_measure_vectorized():
    t = np.array([0.1, 1.0, 2.0])
    m = neighborhood_measure(ZERO, t)
    assert m == pytest.approx(2.0 * np.arcsin(t / 2.0) / math.pi, abs=1e-15)


@pytest.mark.parametrize("K, expected, tol", [
    (ZERO, 1.0, 2e-3),
    (CompactBoundarySet.from_points([0.0, 1.0, 3.0]), 1.0, 2e-3),
    (CompactBoundarySet.from_arcs([(0.0, 0.5)]), 0.0, 2e-3),
])
def test_delta_explicit_sets(K, expected, tol):
    assert delta_exponent(K) == pytest.approx(expected, abs=tol)


@pytest.mark.slow
def test_delta_cantor_proxy():
    K = CompactBoundarySet.cantor((0.0, 1.0), 8, 1.0 / 3.0)
    # 1 - log 2 / log 3
    assert delta_exponent(K, tol=1e-2) == pytest.approx(1 - math.log(2) / math.log(3), abs=0.02)
