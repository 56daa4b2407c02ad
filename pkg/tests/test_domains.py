import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blaschke_kit import (CompactBoundarySet, DomainError, IndeterminateError, LevelDomain, Membership,
                          ProductLevelDomain, contains)
from blaschke_kit.circle import dist_to_set

from .conftest import boundary_sets, disk_points

ZERO = CompactBoundarySet.point(0.0)
PI = CompactBoundarySet.point(math.pi)
# arc leaving a gap around angle 0: the disks of radius t about the gap ends
# pinch off a pocket near z = 1 where rho_K > t
POCKET = CompactBoundarySet.from_arcs([(1.0, 2 * math.pi - 1.0)])
NARROW = CompactBoundarySet.from_arcs([(0.4, 2 * math.pi - 0.4)])


def test_origin_inside():
    assert contains(LevelDomain(ZERO, 0.5), 0.0)


def test_far_point_inside_near_point_outside():
    D = LevelDomain(ZERO, 0.1)
    assert contains(D, -0.9)
    assert not contains(D, 0.95)


def test_level_at_least_one_is_empty():
    D = LevelDomain(ZERO, 1.2)
    assert D.is_empty
    assert not contains(D, 0.0)


def test_pocket_is_excluded():
    D = LevelDomain(POCKET, 0.9)
    assert D.gap(0.99)[0] > 0              # rho_K > t there ...
    assert not contains(D, 0.99)            # ... but not in the component of 0


def test_narrow_pinch_is_indeterminate_then_resolved():
    z = 0.9999
    coarse = LevelDomain(NARROW, 0.393, grid_resolution=16)
    assert coarse.membership(z)[0] == Membership.INDETERMINATE
    with pytest.raises(IndeterminateError):
        coarse.contains(z)
    fine = LevelDomain(NARROW, 0.393, grid_resolution=512)
    assert fine.membership(z)[0] == Membership.OUTSIDE


@given(boundary_sets(), st.floats(0.01, 0.9), disk_points(0.999))
def test_points_with_small_rho_are_outside(K, t, z):
    if dist_to_set(z, K) <= t:
        assert LevelDomain(K, t).membership(z)[0] == Membership.OUTSIDE


@given(boundary_sets(), st.floats(0.01, 0.45), disk_points(0.999))
def test_superlevel_of_twice_the_level_is_inside(K, s, z):
    # {rho_K > s} lies in Omega_{s/2}(K)
    if dist_to_set(z, K) > s:
        assert LevelDomain(K, s / 2).membership(z)[0] == Membership.INSIDE


@given(boundary_sets(), st.floats(0.01, 0.5), st.floats(1.0, 3.0), disk_points(0.999))
def test_nested_domains(K, t, factor, z):
    small, big = LevelDomain(K, t * factor), LevelDomain(K, t)
    if small.membership(z)[0] == Membership.INSIDE:
        assert big.membership(z)[0] == Membership.INSIDE


@given(disk_points(0.999), st.floats(0.01, 0.45), st.floats(0.01, 0.45))
def test_product_domain_is_intersection_of_constraints(z, t, s):
    D = ProductLevelDomain(ZERO, PI, t, s)
    m = D.membership(z)[0]
    if m == Membership.INSIDE:
        assert dist_to_set(z, ZERO) > t and dist_to_set(z, PI) > s


def test_product_domain_empty():
    assert ProductLevelDomain(ZERO, PI, 0.1, 1.0).is_empty


def test_bad_level_rejected():
    with pytest.raises(DomainError):
        LevelDomain(ZERO, 0.0)


@pytest.mark.parametrize("band", [None, 0.05])
def test_samples_are_certified_members(band):
    D = LevelDomain(CompactBoundarySet.from_points([0.0, 2.0]), 0.05)
    z = D.sample(200, np.random.default_rng(5), band=band)
    assert z.size == 200
    assert np.all(D.membership(z) == Membership.INSIDE)
    if band is not None:
        assert np.all(1 - np.abs(z) <= band)


def test_safe_radius_stays_in_domain():
    D = LevelDomain(ZERO, 0.2)
    z = D.sample(100, np.random.default_rng(2))
    r = D.safe_radius(z)
    edge = z[:, None] + r[:, None] * np.exp(2j * math.pi * np.arange(32) / 32)
    assert np.all(np.abs(edge) <= 1 + 1e-12)
    assert np.all(dist_to_set(edge, ZERO) >= 0.2 - 1e-12)
