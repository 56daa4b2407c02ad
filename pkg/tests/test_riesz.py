import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke_kit import (BlaschkeSystem, CompactBoundarySet, DiscreteMeasure, DomainError,
                          annular_riesz_measure, blaschke_zero_generator, grid_riesz_measure,
                          growth_constant_estimate, log_blaschke_modulus, regularize_origin,
                          riesz_representation_check, truncated_mass, weighted_mass_integral)
from blaschke_kit.circle import dist_to_set
from blaschke_kit.riesz import dyadic_radii, weighted_sweep

ZERO = CompactBoundarySet.point(0.0)
PI = CompactBoundarySet.point(math.pi)


def power_singularity(a):
    return lambda z: np.abs(np.asarray(z) - 1.0) ** -a


@pytest.mark.parametrize("a", [0.5, 1.0, 1.5])
def test_grid_laplacian_of_power(a):
    # Delta |z-1|^-a = a^2 |z-1|^(-a-2)
    mu = grid_riesz_measure(power_singularity(a), 1.0 / 128, 0.9, sets=[ZERO])
    exact = a * a * np.abs(mu.locations - 1.0) ** (-a - 2) * mu.h ** 2 / (2 * math.pi)
    assert np.abs(mu.masses - exact).sum() <= 0.02 * exact.sum()


def test_log_has_unit_mass():
    lam0 = 0.21 + 0.13j
    mu = grid_riesz_measure(lambda z: np.log(np.abs(z - lam0)), 1.0 / 64, 0.8)
    assert mu.total == pytest.approx(1.0, abs=1e-3)
    assert mu.skipped_cells == 0


def test_harmonic_function_has_no_mass():
    mu = grid_riesz_measure(lambda z: np.real(z ** 3 + 2 * z), 1.0 / 64, 0.8)
    assert mu.total == pytest.approx(0.0, abs=1e-10)


def test_mass_is_additive():
    v1 = power_singularity(0.5)
    v2 = lambda z: np.abs(np.asarray(z)) ** 2
    a = grid_riesz_measure(v1, 1 / 64, 0.8, sets=[ZERO])
    b = grid_riesz_measure(v2, 1 / 64, 0.8, sets=[ZERO])
    ab = grid_riesz_measure(lambda z: v1(z) + v2(z), 1 / 64, 0.8, sets=[ZERO])
    assert ab.total == pytest.approx(a.total + b.total, rel=1e-10)


def test_grid_spacing_precondition():
    with pytest.raises(DomainError):
        grid_riesz_measure(power_singularity(1.0), 0.05, 0.9)


def test_exclusion_is_reported():
    mu = grid_riesz_measure(power_singularity(1.0), 1 / 64, 0.9, exclusion=0.2, sets=[ZERO])
    assert mu.excluded_cells > 0
    assert mu.excluded_mass > 0
    assert np.all(dist_to_set(mu.locations, ZERO) >= 0.2)


def test_annular_grid_bands():
    v = lambda z: np.abs(np.asarray(z)) ** 2
    mu = annular_riesz_measure(v, 6)
    assert set(np.unique(mu.band)) == set(range(1, 7))
    # Delta |z|^2 = 4: total mass 4 * area / (2 pi) = 2 R^2
    assert mu.total == pytest.approx(2 * (1 - 2 ** -6) ** 2, rel=1e-2)
    sweep = weighted_sweep(mu, [], [2, 4, 6])
    assert np.all(np.diff(sweep) > 0)


def test_dyadic_radii():
    assert dyadic_radii(4) == pytest.approx([0.75, 0.875, 0.9375])


def test_csv_layout():
    mu = grid_riesz_measure(lambda z: np.abs(np.asarray(z)) ** 2, 1 / 16, 0.5)
    lines = mu.to_csv().splitlines()
    assert lines[0] == "h,R,excluded_mass"
    assert lines[2] == "re,im,mass"
    assert len(lines) == 3 + mu.locations.size
    d = DiscreteMeasure([0.5, 0.1j], [1.0, 2.0]).to_csv().splitlines()
    assert d == ["re,im,mass", "0.5,0.0,1.0", "0.0,0.1,2.0"]


@pytest.mark.parametrize("loc, mass", [([1.0], [1.0]), ([0.5], [0.0]), ([0.5, 0.2], [1.0])])
def test_discrete_measure_rejects(loc, mass):
    with pytest.raises(DomainError):
        DiscreteMeasure(loc, mass)


def test_generator_examples():
    B = blaschke_zero_generator(ZERO, 1.0, 10, seed=0)
    assert len(B) == 10
    assert np.abs(B.zeros) == pytest.approx(1 - 2.0 ** -np.arange(1, 11))
    assert np.angle(B.zeros) == pytest.approx(np.zeros(10), abs=1e-15)
    assert B.blaschke_sum == pytest.approx(1 - 2.0 ** -10)
    with pytest.raises(DomainError):
        blaschke_zero_generator(ZERO, 1.0, 0, seed=0)


def test_generator_is_deterministic():
    E = CompactBoundarySet.from_arcs([(0, 1)])
    a = blaschke_zero_generator(E, 0.5, 20, seed=3)
    b = blaschke_zero_generator(E, 0.5, 20, seed=3)
    assert np.array_equal(a.zeros, b.zeros)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.5])
def test_weighted_sum_geometric_series(alpha):
    # radial zeros 1 - 2^-n toward 1: sum 2^-n (2^-n)^alpha
    B = blaschke_zero_generator(ZERO, 1.0, 40, seed=0)
    r = 2.0 ** -(1 + alpha)
    oracle = r * (1 - r ** 40) / (1 - r)
    assert weighted_mass_integral(B, [(ZERO, alpha)]) == pytest.approx(oracle, rel=1e-12)


@given(st.floats(0, 3), st.floats(0, 3))
def test_weighted_sum_decreases_in_exponent(a1, a2):
    B = blaschke_zero_generator(CompactBoundarySet.from_arcs([(0, 2)]), 0.7, 25, seed=1)
    lo, hi = sorted((a1, a2))
    # rho <= 2, so normalize by 2^alpha to get monotonicity
    assert (weighted_mass_integral(B, [(ZERO, hi)]) / 2 ** hi
            <= weighted_mass_integral(B, [(ZERO, lo)]) / 2 ** lo * (1 + 1e-12))


def test_truncated_mass_examples_and_monotonicity():
    B = BlaschkeSystem(np.array([0.5, -0.5, 0.5j]))
    total = truncated_mass(B, ZERO, PI, 1e-3, 1e-3)
    assert total == pytest.approx(1.5)
    assert truncated_mass(B, ZERO, PI, 0.6, 1e-3) == pytest.approx(1.0)
    xs = np.linspace(0.01, 1.9, 20)
    vals = [truncated_mass(B, ZERO, PI, x, 0.1) for x in xs]
    assert np.all(np.diff(vals) <= 0)
    with pytest.raises(DomainError):
        truncated_mass(B, ZERO, PI, 0.0, 0.1)


def test_log_modulus_examples():
    B = BlaschkeSystem(np.array([0.5]))
    assert log_blaschke_modulus(0.0, B) == pytest.approx(math.log(0.5))
    assert log_blaschke_modulus(0.5, B) == -math.inf
    z = 0.3 * np.exp(1j * np.linspace(0, 6, 10))
    assert np.all(log_blaschke_modulus(z, B) <= 0)


def test_representation_check_random_systems():
    rng = np.random.default_rng(99)
    for _ in range(100):
        n = int(rng.integers(1, 60))
        zeros = np.sqrt(rng.uniform(0.0001, 0.999, n)) * np.exp(2j * math.pi * rng.random(n))
        assert riesz_representation_check(BlaschkeSystem(zeros)).passed


def test_representation_rejects_zero_at_origin():
    with pytest.raises(DomainError):
        riesz_representation_check(BlaschkeSystem(np.array([0.0, 0.5])))


def test_growth_constant_examples():
    v = lambda z: 2 * np.real(1 / (1 - np.asarray(z)))
    est = growth_constant_estimate(v, ZERO, PI, 1.0, 1.0)
    # 2 Re 1/(1-z) |1-z| |1+z| -> 4 along the radius toward 1
    assert est.value == pytest.approx(4.0, rel=1e-3)
    neg = growth_constant_estimate(lambda z: -np.ones(np.shape(z)), ZERO, PI, 1.0, 1.0)
    assert neg.value == 0.0


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_regularize_origin():
    v = lambda z: np.log(np.abs(np.asarray(z)))
    v1 = regularize_origin(v)
    assert v1(0.0) == pytest.approx(math.log(0.5), abs=1e-12)
    assert v1(0.25) == pytest.approx(math.log(0.5), abs=1e-12)
    assert v1(0.7) == pytest.approx(math.log(0.7))
    with pytest.raises(DomainError):
        regularize_origin(lambda z: np.abs(np.asarray(z) - 0.5) ** -2)
