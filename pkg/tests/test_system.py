import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threebody.system import (
    ALL_ARRANGEMENTS,
    Arrangement,
    ThreeBodySystem,
    arrangements,
    kinetic_coefficients,
    pair_couplings,
)

charges = st.integers(-4, 4).filter(lambda z: z != 0)
masses = st.floats(min_value=1e-2, max_value=1e4, allow_nan=False, allow_infinity=False)
systems = st.builds(
    lambda z, m: ThreeBodySystem(tuple(z), tuple(m)),
    st.lists(charges, min_size=3, max_size=3),
    st.lists(masses, min_size=3, max_size=3),
)


def test_equal_unit_masses():
    c = kinetic_coefficients(ThreeBodySystem((-1, 1, -1), (1, 1, 1)))
    assert (c.alpha, c.beta, c.gamma) == (1.0, 1.0, 1.0)
    assert c.xi == 3.0
    assert c.zeta == -3.0
    assert c.eta == -3.0


@pytest.mark.parametrize("m3, alpha", [(7294.299536, 0.50006855), (1836.1527, 0.5002723)])
def test_heavy_third_particle(m3, alpha):
    c = kinetic_coefficients(ThreeBodySystem((-1, -1, 2), (1, 1, m3)))
    assert c.alpha == pytest.approx(alpha, abs=5e-8)
    assert c.beta == 1.0
    assert c.gamma == 1.0


@given(systems)
def test_coefficient_signs(system):
    c = kinetic_coefficients(system)
    assert c.alpha > 0 and c.beta > 0 and c.gamma > 0 and c.xi > 0
    assert c.zeta < 0 and c.eta < 0


@pytest.mark.parametrize(
    "z, expected",
    [((-1, -1, 2), (1, -2, -2)), ((-1, 1, -1), (-1, -1, 1)), ((1, -1, 1), (-1, -1, 1))],
)
def test_pair_couplings(z, expected):
    p = pair_couplings(ThreeBodySystem(z, (1, 1, 1)))
    assert (p.z12, p.z23, p.z13) == expected
    assert all(isinstance(v, int) for v in (p.z12, p.z23, p.z13))


def _distinct_permutation_count(system):
    # multinomial 3! / prod(multiplicity!) over identical (charge, mass) pairs
    counts = Counter(zip(system.charges, system.masses))
    return math.factorial(3) // math.prod(math.factorial(c) for c in counts.values())


@pytest.mark.parametrize(
    "system, expected",
    [
        (ThreeBodySystem((-1, -1, 2), (1, 1, 7294.299536)), 3),
        (ThreeBodySystem((-1, 1, -1), (1, 1, 1)), 3),
        (ThreeBodySystem((-1, 2, 3), (1, 5, 7)), 6),
    ],
)
def test_arrangement_counts(system, expected):
    found = arrangements(system)
    assert len(found) == expected == _distinct_permutation_count(system)
    assert found[0] == system


@given(systems)
def test_arrangements_match_multinomial(system):
    found = arrangements(system)
    assert len(found) == _distinct_permutation_count(system)
    assert len({(s.charges, s.masses) for s in found}) == len(found)


@given(systems, st.sampled_from(ALL_ARRANGEMENTS))
def test_arrangement_inverse_restores(system, arrangement):
    assert arrangement.inverse().apply(arrangement.apply(system)) == system


@given(systems)
def test_swapping_ends_swaps_alpha_beta(system):
    c, s = kinetic_coefficients(system), kinetic_coefficients(system.swapped_ends())
    p, q = pair_couplings(system), pair_couplings(system.swapped_ends())
    assert (s.alpha, s.beta) == (c.beta, c.alpha)
    assert (q.z12, q.z23, q.z13) == (p.z23, p.z12, p.z13)


@given(systems, st.floats(min_value=1e-3, max_value=1e3))
def test_scale_covariance(system, scale):
    c = kinetic_coefficients(system)
    scaled = kinetic_coefficients(ThreeBodySystem(system.charges, tuple(m * scale for m in system.masses)))
    for name in ("alpha", "beta", "gamma", "xi", "zeta", "eta"):
        assert getattr(scaled, name) == pytest.approx(getattr(c, name) / scale, rel=1e-12)


@pytest.mark.parametrize(
    "z, m",
    [((0, 1, -1), (1, 1, 1)), ((1.5, 1, -1), (1, 1, 1)), ((1, 1, -1), (1, 0, 1)), ((1, 1, -1), (1, -2, 1)), ((1, -1), (1, 1))],
)
def test_invalid_systems_rejected(z, m):
    with pytest.raises((ValueError, TypeError)):
        ThreeBodySystem(z, m)


def test_integral_float_charge_accepted():
    assert ThreeBodySystem((2.0, -1, -1), (1, 1, 1)).charges == (2, -1, -1)


def test_bad_permutation():
    with pytest.raises(ValueError):
        Arrangement((0, 0, 1))


@settings(max_examples=20)
@given(systems)
def test_system_is_hashable_and_frozen(system):
    assert hash(system) == hash(ThreeBodySystem(system.charges, system.masses))
    with pytest.raises(Exception):
        system.charges = (1, 1, 1)
