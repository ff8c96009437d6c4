import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from threebody.kappa1 import (
    K_MIN,
    CalibrationError,
    EmptyWindowError,
    Kappa1Match,
    NoMatchError,
    b1,
    calibrate_r0,
    find_matches,
    is_bound,
    lowest_match,
    nu,
    radial_wavefunction_kappa1,
    scan_matching,
    sign_changes,
    total_energy,
)
from threebody.specfun import SpecialFunctionDomainError, gamma_ratio
from threebody.system import ThreeBodySystem

PS_REFERENCE = -0.261995


@pytest.fixture(scope="module")
def ps_matches():
    return find_matches(ThreeBodySystem((-1, 1, -1), (1, 1, 1)))


def ps_nu(k):
    return math.sqrt(2.25 - 4.0 ** (1.0 / k))


def test_nu_examples():
    assert nu(0.0, 0) == 0.5
    assert nu(2.0 - 4.0 ** (1 / 3), 0) == pytest.approx(0.81400, abs=1e-5)
    assert nu(2.0, 1) == pytest.approx(math.sqrt(4.25))
    with pytest.raises(SpecialFunctionDomainError):
        nu(-0.3, 0)


@pytest.mark.parametrize("n, l", [(1, 0), (2, 0), (2, 1), (3, 2)])
def test_coupling_bound(n, l):
    # a bound level needs 0 < A1 < n^2 - (l + 1/2)^2
    upper = n * n - (l + 0.5) ** 2
    for a1 in np.linspace(-0.2, upper + 0.5, 41):
        if a1 + (l + 0.5) ** 2 <= 0:
            continue
        assert is_bound(n, l, nu(a1, l)) == (0.0 < a1 < upper)


def test_b1_examples():
    assert b1(1, 1.0, 2.0) == 0.0
    assert b1(1, 1.7, 2.0) == 0.0
    assert b1(2, 1.7, 2.0) < 0.0
    assert -1e-3 < b1(1, 1.0 - 1e-6, 1.0) < 0.0
    with pytest.raises(ValueError):
        b1(1, 0.5, 0.0)


def test_b1_nondecreasing_toward_zero():
    for n in (1, 2, 3):
        grid = np.linspace(0.01, n - 1e-9, 400)
        values = [b1(n, float(v), 1.0) for v in grid]
        assert all(a <= b for a, b in zip(values, values[1:]))
        # B1 ~ -(eps Gamma(2n))^(1/n) as nu = n - eps, so the approach to 0 is slow for n > 1
        tail = [b1(n, n - eps, 1.0) for eps in (1e-3, 1e-6, 1e-9, 1e-12)]
        assert all(a < b < 0.0 for a, b in zip(tail, tail[1:]))
        assert abs(tail[-1]) < 0.02 * abs(tail[0])


@given(st.integers(1, 6), st.floats(0.01, 0.99), st.floats(0.01, 50.0))
def test_b1_term_matching(n, frac, r0):
    v = frac * n
    lhs = ((r0 / 2.0) * math.sqrt(-b1(n, v, r0))) ** (2 * v)
    assert abs(lhs / gamma_ratio(n, v) - 1.0) < 1e-10


@given(st.integers(1, 6), st.floats(0.01, 0.99), st.floats(0.01, 50.0), st.sampled_from([0.5, 2.0, 4.0, 0.25]))
def test_b1_scaling_exact_for_powers_of_two(n, frac, r0, s):
    assert b1(n, frac * n, s * r0) == b1(n, frac * n, r0) / (s * s)


@given(st.integers(1, 6), st.floats(0.01, 0.99), st.floats(0.01, 50.0), st.floats(0.01, 100.0))
def test_b1_scaling(n, frac, r0, s):
    a, b = b1(n, frac * n, s * r0), b1(n, frac * n, r0) / (s * s)
    assert abs(a - b) <= 1e-15 * abs(b) * 4


def test_ps_minus_symmetric_point(ps_minus):
    curve = scan_matching(ps_minus, 3, (0.9, 1.1), steps=3)
    mid = curve.samples[1]
    assert mid.wp == 1.0 and mid.feasible and mid.lhs == mid.rhs


def test_scan_curve_shape(helium):
    curve = scan_matching(helium, 3, steps=50)
    wps = [s.wp for s in curve.samples]
    assert len(wps) == 50 and all(a < b for a, b in zip(wps, wps[1:]))
    assert wps[-1] == pytest.approx(2 ** (-1 / 3))


def test_scan_errors(helium, ps_minus):
    with pytest.raises(ValueError):
        scan_matching(ps_minus, 2)
    with pytest.raises(ValueError):
        scan_matching(ps_minus, 3, steps=1)
    with pytest.raises(EmptyWindowError):
        scan_matching(ps_minus, 3, (1.0, 1.0))
    with pytest.raises(EmptyWindowError):
        scan_matching(ThreeBodySystem((1, 1, 1), (1, 1, 1)), 3)


@pytest.mark.parametrize("k", [7, 8, 12])
def test_ps_minus_no_level_past_six(ps_minus, k):
    assert ps_nu(k) > 1.0
    curve = scan_matching(ps_minus, k, steps=101)
    assert not any(s.feasible for s in curve.samples)


def test_ps_minus_matches(ps_matches):
    matches = ps_matches
    assert [m.k for m in matches] == [3, 4, 5, 6]
    for m in matches:
        assert m.wp_star == pytest.approx(1.0, abs=1e-9)
        assert 0.5 < m.nu1 < 1.0 and m.nu1 == pytest.approx(ps_nu(m.k), abs=1e-9)
        assert m.energy_coefficient == pytest.approx(-4 * gamma_ratio(1, ps_nu(m.k)) ** (1 / ps_nu(m.k)), rel=1e-9)
    best = lowest_match(matches)
    assert best.k == 3 and best.energy_coefficient == pytest.approx(-0.5155, abs=2e-4)


def test_matches_independent_of_r0(ps_minus):
    a = [m.wp_star for m in find_matches(ps_minus, k_max=8, r0_ref=1.0)]
    b = [m.wp_star for m in find_matches(ps_minus, k_max=8, r0_ref=10.0)]
    assert a == b


def test_helium_has_no_match(helium):
    assert find_matches(helium, k_max=16) == []
    assert sign_changes(scan_matching(helium, 3, steps=2000)) == []
    with pytest.raises(NoMatchError):
        calibrate_r0(helium, -2.9037)


def test_calibration(ps_minus, ps_matches):
    r0 = calibrate_r0(ps_minus, PS_REFERENCE, matches=ps_matches)
    assert r0 == pytest.approx(6.56, abs=0.01)
    best = lowest_match(ps_matches)
    assert total_energy([-0.25, best.energy(r0)]) == pytest.approx(PS_REFERENCE, abs=1e-12)
    for reference in (-0.25, -0.2):
        with pytest.raises(CalibrationError):
            calibrate_r0(ps_minus, reference, matches=ps_matches, e0=-0.25)


def test_calibration_defaults_to_own_search(ps_minus):
    assert calibrate_r0(ps_minus, PS_REFERENCE, e0=-0.25) == pytest.approx(6.5555, abs=1e-4)


def test_match_energy_requires_radius():
    m = Kappa1Match(3, 1.0, 0.814, 0.814, -0.515488)
    with pytest.raises(ValueError):
        m.energy()
    assert m.energy(2.0) == pytest.approx(-0.128872)


def test_total_energy():
    assert total_energy([-0.25, -0.515488 / 6.56**2]) == pytest.approx(-0.26198, abs=1e-5)
    assert total_energy([-0.25]) == -0.25
    with pytest.raises(ValueError):
        total_energy([])
    with pytest.raises(ValueError):
        total_energy([-1.0, -0.1, -0.01])


def test_radial_wavefunction():
    v, r0 = 0.814, 6.56
    value = -0.515488 / r0**2
    assert radial_wavefunction_kappa1(v, value, r0, r0) == 0.0
    assert radial_wavefunction_kappa1(v, value, 1.0, r0) == 0.0
    assert radial_wavefunction_kappa1(v, value, r0 * (1 + 1e-9), r0) > 0.0
    assert radial_wavefunction_kappa1(v, value, 5e3, r0) < 1e-100
    with pytest.raises(ValueError):
        radial_wavefunction_kappa1(v, 0.1, 10.0, r0)


def test_k_floor():
    assert K_MIN == 3
    assert find_matches(ThreeBodySystem((-1, 1, -1), (1, 1, 1)), k_max=2) == []
