"""The kappa = 1 transition potential A1/r^2 with a hard-core cut-off.

With a hard core at r0 the bound solutions are sqrt(r) K_nu(r sqrt(-B1)),
nu^2 = A1 + (l + 1/2)^2, and matching the I_nu and I_{-nu} series gives

    B1 = -(2/r0)^2 (Gamma(n + nu) / Gamma(n - nu))^(1/nu),   n > nu,

and B1 = 0 (no bound state) for n <= nu. Unlike kappa = 0 the multiplier wp
is not fixed in closed form: it is a root of alpha B1(1) = beta B1(2). Both
sides scale as 1/r0^2, so the search runs on r0^2 B1 and r0 only enters
through calibrate_r0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .geometry import InfeasibleGeometry, dk_nonempty, feasibility_window
from .kappa0 import effective_couplings, spectrum_kappa0
from .specfun import SpecialFunctionDomainError, bessel_k, log_gamma_ratio
from .system import ThreeBodySystem, kinetic_coefficients, pair_couplings

KAPPA = 1
# k = kappa + p + 1 with p >= 1; at k = 2 the kappa = 1 coupling vanishes identically
K_MIN = KAPPA + 2
DEFAULT_STEPS = 500
WP_TOL = 1e-12


class EmptyWindowError(ValueError):
    pass


class NoMatchError(LookupError):
    """No solution of alpha B1(1) = beta B1(2): kappa = 1 does not contribute."""


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class Kappa1Match:
    k: int
    wp_star: float
    nu1: float
    nu2: float
    energy_coefficient: float
    n1: int = 1
    n2: int = 1
    l1: int = 0
    l2: int = 0
    r0: Optional[float] = None
    bessel_residual: float = math.nan

    def energy(self, r0: Optional[float] = None) -> float:
        """E1 = energy_coefficient / r0^2 in Hartree."""
        r0 = self.r0 if r0 is None else r0
        if r0 is None or not r0 > 0.0:
            raise ValueError("a positive cut-off radius is required")
        return self.energy_coefficient / (r0 * r0)


@dataclass(frozen=True)
class ScanSample:
    wp: float
    lhs: float
    rhs: float
    feasible: bool


@dataclass(frozen=True)
class ScanCurve:
    k: int
    samples: list[ScanSample]
    n1: int = 1
    n2: int = 1
    l1: int = 0
    l2: int = 0


def nu(a1: float, l: int) -> float:
    radicand = a1 + (l + 0.5) ** 2
    if not radicand > 0.0:
        raise SpecialFunctionDomainError(f"nu^2 = A1 + (l + 1/2)^2 = {radicand!r} is not positive")
    return math.sqrt(radicand)


def _scaled_b1(n: int, nu_value: float) -> float:
    """r0^2 B1."""
    if not nu_value > 0.0:
        raise ValueError("nu must be positive")
    if n <= nu_value:
        return 0.0
    return -4.0 * math.exp(log_gamma_ratio(n, nu_value) / nu_value)


def b1(n: int, nu_value: float, r0: float) -> float:
    if not r0 > 0.0:
        raise ValueError("r0 must be positive")
    return _scaled_b1(n, nu_value) / (r0 * r0)


def is_bound(n: int, l: int, nu_value: float) -> bool:
    """l + 1/2 < nu < n: a repulsive r^-2 core with a B1 < 0 level below it."""
    return l + 0.5 < nu_value < n


def _sample(system, coeffs, couplings, k, wp, n1, n2, l1, l2) -> tuple[ScanSample, float, float]:
    report = dk_nonempty(system.charges, wp, k)
    if not report.feasible:
        return ScanSample(wp, math.nan, math.nan, False), math.nan, math.nan
    eff = effective_couplings(couplings, coeffs, wp, report.solution.ck, KAPPA)
    try:
        nu1 = nu(eff.a_kappa_1, l1)
        nu2 = nu(eff.a_kappa_2, l2)
    except SpecialFunctionDomainError:
        return ScanSample(wp, math.nan, math.nan, False), math.nan, math.nan
    lhs = coeffs.alpha * _scaled_b1(n1, nu1)
    rhs = coeffs.beta * _scaled_b1(n2, nu2)
    ok = is_bound(n1, l1, nu1) and is_bound(n2, l2, nu2)
    return ScanSample(wp, lhs, rhs, ok), nu1, nu2


def _check_k(k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < K_MIN:
        raise ValueError(f"kappa = 1 needs an integer exponent k >= {K_MIN}, got {k!r}")


def scan_matching(
    system: ThreeBodySystem,
    k: int,
    wp_range: Optional[Sequence[float]] = None,
    steps: int = DEFAULT_STEPS,
    n1: int = 1,
    n2: int = 1,
    l1: int = 0,
    l2: int = 0,
) -> ScanCurve:
    """Sample alpha r0^2 B1(1) and beta r0^2 B1(2) on a uniform wp grid.

    Without wp_range the grid spans the geometric feasibility window for k.
    Samples where the geometry fails or either branch has no bound level are
    marked infeasible (lhs, rhs are NaN when the geometry itself fails).
    """
    _check_k(k)
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if wp_range is None:
        try:
            wp_range = feasibility_window(system.charges, k)
        except InfeasibleGeometry as exc:
            raise EmptyWindowError(str(exc)) from exc
    lo, hi = map(float, wp_range)
    if not hi > lo:
        raise EmptyWindowError(f"empty multiplier window ({lo}, {hi})")
    coeffs = kinetic_coefficients(system)
    couplings = pair_couplings(system)
    samples = [
        _sample(system, coeffs, couplings, k, float(wp), n1, n2, l1, l2)[0]
        for wp in np.linspace(lo, hi, steps)
    ]
    return ScanCurve(k=k, samples=samples, n1=n1, n2=n2, l1=l1, l2=l2)


def sign_changes(curve: ScanCurve) -> list[tuple[float, float]]:
    """Brackets [wp_a, wp_b] of adjacent feasible samples where lhs - rhs changes sign
    (a sample with lhs == rhs exactly gives a zero-width bracket)."""
    brackets = []
    samples = curve.samples
    for i, s in enumerate(samples):
        if not s.feasible:
            continue
        d = s.lhs - s.rhs
        if d == 0.0:
            brackets.append((s.wp, s.wp))
            continue
        if i + 1 < len(samples):
            t = samples[i + 1]
            if t.feasible and d * (t.lhs - t.rhs) < 0.0:
                brackets.append((s.wp, t.wp))
    return brackets


def _refine(difference, a: float, b: float) -> Optional[float]:
    fa = difference(a)
    if fa is None:
        return None
    if a == b or fa == 0.0:
        return a
    while b - a > WP_TOL:
        mid = 0.5 * (a + b)
        if mid in (a, b):
            break
        fm = difference(mid)
        if fm is None:
            return None
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (fa < 0.0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def find_matches(
    system: ThreeBodySystem,
    n_max: int = 1,
    k_max: int = 64,
    r0_ref: Optional[float] = None,
    steps: int = DEFAULT_STEPS,
    l1: int = 0,
    l2: int = 0,
) -> list[Kappa1Match]:
    """Every (k, wp*) solving alpha B1(1) = beta B1(2), ascending in (k, wp*).

    An empty list means kappa = 1 does not shift the energy of this arrangement.
    """
    if k_max < K_MIN:
        return []
    coeffs = kinetic_coefficients(system)
    couplings = pair_couplings(system)
    matches = []
    for k in range(K_MIN, k_max + 1):
        try:
            window = feasibility_window(system.charges, k)
        except InfeasibleGeometry:
            return []
        for n1 in range(l1 + 1, n_max + 1):
            for n2 in range(l2 + 1, n_max + 1):
                curve = scan_matching(system, k, window, steps, n1, n2, l1, l2)

                def difference(wp, n1=n1, n2=n2):
                    s = _sample(system, coeffs, couplings, k, wp, n1, n2, l1, l2)[0]
                    return s.lhs - s.rhs if s.feasible else None

                roots = []
                for a, b in sign_changes(curve):
                    root = _refine(difference, a, b)
                    if root is None or any(abs(root - r) <= 10 * WP_TOL for r in roots):
                        continue
                    roots.append(root)
                for root in roots:
                    match = _validate(system, coeffs, couplings, k, root, n1, n2, l1, l2, r0_ref)
                    if match is not None:
                        matches.append(match)
    matches.sort(key=lambda m: (m.k, m.wp_star, m.n1, m.n2))
    return matches


def _validate(system, coeffs, couplings, k, wp, n1, n2, l1, l2, r0_ref) -> Optional[Kappa1Match]:
    sample, nu1, nu2 = _sample(system, coeffs, couplings, k, wp, n1, n2, l1, l2)
    if not sample.feasible:
        return None
    coefficient = sample.lhs
    return Kappa1Match(
        k=k,
        wp_star=wp,
        nu1=nu1,
        nu2=nu2,
        energy_coefficient=coefficient,
        n1=n1,
        n2=n2,
        l1=l1,
        l2=l2,
        r0=r0_ref,
        bessel_residual=_bessel_residual(nu1, coefficient / coeffs.alpha),
    )


def _bessel_residual(nu_value: float, scaled_b1: float) -> float:
    """K_nu(r0 sqrt(-B1)); r0 drops out of the argument. NaN when nu is too close to an integer."""
    try:
        return bessel_k(nu_value, math.sqrt(-scaled_b1))
    except SpecialFunctionDomainError:
        return math.nan


def lowest_match(matches: Sequence[Kappa1Match]) -> Optional[Kappa1Match]:
    return min(matches, key=lambda m: m.energy_coefficient, default=None)


def calibrate_r0(
    system: ThreeBodySystem,
    reference_total: float,
    matches: Optional[Sequence[Kappa1Match]] = None,
    e0: Optional[float] = None,
) -> float:
    """Cut-off radius for which E0 + E1 reproduces a reference total energy.

    E0 defaults to the kappa = 0 infimum of this arrangement and E1 to the
    lowest kappa = 1 match.
    """
    if matches is None:
        matches = find_matches(system)
    best = lowest_match(matches)
    if best is None:
        raise NoMatchError("no kappa=1 contribution: alpha B1(1) = beta B1(2) has no solution")
    if e0 is None:
        e0 = spectrum_kappa0(system).infimum.energy
    gap = reference_total - e0
    if not gap < 0.0:
        raise CalibrationError(
            f"reference {reference_total!r} must lie below the kappa=0 energy {e0!r}"
        )
    return math.sqrt(best.energy_coefficient / gap)


def total_energy(energies: Sequence[float]) -> float:
    """E = E0 + E1. Only kappa = 0 (required) and kappa = 1 terms are known."""
    if len(energies) == 0:
        raise ValueError("the kappa = 0 energy is required")
    if len(energies) > 2:
        raise ValueError("no formulas exist for kappa >= 2 terms")
    return math.fsum(energies)


def radial_wavefunction_kappa1(nu_value: float, b1_value: float, r: float, r0: float) -> float:
    """u(r) = sqrt(r) K_nu(r sqrt(-B1)) outside the hard core, zero inside."""
    if not r0 > 0.0:
        raise ValueError("r0 must be positive")
    if not b1_value < 0.0:
        raise ValueError("b1_value must be negative for a bound state")
    if r <= r0:
        return 0.0
    return math.sqrt(r) * bessel_k(nu_value, r * math.sqrt(-b1_value))
