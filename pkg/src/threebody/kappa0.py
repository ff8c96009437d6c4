"""Coulombic (kappa = 0) bound states at threshold.

Each branch i = 1, 2 is a hydrogen-like radial problem
u'' + (B - l(l+1)/r^2 - A/r) u = 0 with A = Z_eff/alpha (or /beta) and
B = E/alpha (or /beta). Requiring both branches to give the same energy
fixes the multiplier wp = (n1/n2) sqrt(alpha/beta).

Only the ground state of H0 is claimed: the cross term gamma (grad12 . grad23)
of the kinetic energy leaves the infimum of the spectrum unchanged, so it is
dropped throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .geometry import INF, Exponent, check_exponent, dk_nonempty, stable
from .specfun import whittaker_m
from .system import (
    KineticCoefficients,
    PairCouplings,
    ThreeBodySystem,
    arrangements,
    kinetic_coefficients,
    pair_couplings,
)

EARLY_STOP_TOL = 1e-12
EARLY_STOP_RUN = 3


class UnstableSystemError(ValueError):
    pass


@dataclass(frozen=True)
class QuantumNumbers:
    n1: int
    n2: int
    l1: int = 0
    l2: int = 0

    def __post_init__(self):
        for n, l in ((self.n1, self.l1), (self.n2, self.l2)):
            if l < 0 or n < l + 1:
                raise ValueError(f"need n >= l + 1 >= 1, got n={n}, l={l}")


@dataclass(frozen=True)
class EffectiveCouplings:
    z12_eff: float
    z23_eff: float
    a_kappa_1: float
    a_kappa_2: float


@dataclass(frozen=True)
class SpectrumEntry:
    kappa: int
    arrangement: int
    n1: int
    n2: int
    l1: int
    l2: int
    k: Exponent
    energy: float


@dataclass
class Spectrum:
    entries: list[SpectrumEntry]
    systems: list[ThreeBodySystem]
    infimum_by_arrangement: dict[int, SpectrumEntry] = field(default_factory=dict)

    @property
    def infimum(self) -> Optional[SpectrumEntry]:
        return lowest_entry(self.entries)


def lowest_entry(entries: list[SpectrumEntry], rtol: float = 1e-12) -> Optional[SpectrumEntry]:
    """Lowest energy; among ties within rtol prefer k = INF, then the first listed."""
    if not entries:
        return None
    floor = min(e.energy for e in entries)
    ties = [e for e in entries if e.energy <= floor + rtol * abs(floor)]
    return next((e for e in ties if e.k is INF), ties[0])


def wp_for(n1: int, n2: int, coeffs: KineticCoefficients) -> float:
    if n1 < 1 or n2 < 1:
        raise ValueError("principal quantum numbers start at 1")
    return (n1 / n2) * math.sqrt(coeffs.alpha / coeffs.beta)


def effective_couplings(
    couplings: PairCouplings,
    coeffs: KineticCoefficients,
    wp: float,
    ck: float,
    kappa: int,
) -> EffectiveCouplings:
    """Strengths of the kappa-th derivative of the Coulomb sum along r12 and r23."""
    power = kappa + 1
    bracket = couplings.z12 + couplings.z23 * wp**power + couplings.z13 * (wp / ck) ** power
    z12_eff = (-1) ** kappa * math.factorial(kappa) * bracket
    z23_eff = z12_eff / wp**power
    return EffectiveCouplings(
        z12_eff=z12_eff,
        z23_eff=z23_eff,
        a_kappa_1=z12_eff / coeffs.alpha,
        a_kappa_2=z23_eff / coeffs.beta,
    )


def branch_energies(eff: EffectiveCouplings, coeffs: KineticCoefficients, n1: int, n2: int) -> tuple[float, float]:
    """E = alpha B(1) and E = beta B(2) with B = -A^2 / (4 n^2)."""
    e1 = -coeffs.alpha * eff.a_kappa_1**2 / (4.0 * n1 * n1)
    e2 = -coeffs.beta * eff.a_kappa_2**2 / (4.0 * n2 * n2)
    return e1, e2


def _closed_form(system: ThreeBodySystem, coeffs: KineticCoefficients, n1: int, n2: int, wp: float, k, ck: float) -> float:
    z1, z2, z3 = system.charges
    s1 = n1 * math.sqrt(coeffs.alpha)
    s2 = n2 * math.sqrt(coeffs.beta)
    if k is INF:
        if wp <= 1.0:
            inner = z1 * (z2 + z3) / s1 + z2 * z3 / s2
        else:
            inner = z1 * z2 / s1 + z3 * (z1 + z2) / s2
    else:
        inner = z1 * z2 / s1 + (z3 / s2) * (z2 + z1 / ck)
    return -0.25 * inner * inner


def energy_kappa0(system: ThreeBodySystem, n1: int, n2: int, k: Exponent, l1: int = 0, l2: int = 0) -> Optional[float]:
    """Threshold energy E(n1, n2, k) in Hartree, or None without a bound state.

    None means the geometry is infeasible at wp = (n1/n2) sqrt(alpha/beta) or
    the effective Coulomb coupling is repulsive.
    """
    QuantumNumbers(n1, n2, l1, l2)
    k = check_exponent(k)
    coeffs = kinetic_coefficients(system)
    wp = wp_for(n1, n2, coeffs)
    report = dk_nonempty(system.charges, wp, k)
    if not report.feasible:
        return None
    ck = report.solution.ck
    eff = effective_couplings(pair_couplings(system), coeffs, wp, ck, 0)
    if eff.z12_eff >= 0.0:
        return None
    return _closed_form(system, coeffs, n1, n2, wp, k, ck)


def _scan_arrangement(system: ThreeBodySystem, index: int, n_max: int, k_max: int) -> list[SpectrumEntry]:
    entries = []
    for n1 in range(1, n_max + 1):
        for n2 in range(1, n_max + 1):
            e_inf = energy_kappa0(system, n1, n2, INF)
            finite = []
            run = 0
            for k in range(2, k_max + 1):
                energy = energy_kappa0(system, n1, n2, k)
                if energy is None:
                    run = 0
                    continue
                finite.append(SpectrumEntry(0, index, n1, n2, 0, 0, k, energy))
                if e_inf is not None and abs(energy - e_inf) < EARLY_STOP_TOL:
                    run += 1
                    if run >= EARLY_STOP_RUN:
                        break
                else:
                    run = 0
            entries.extend(finite)
            if e_inf is not None:
                entries.append(SpectrumEntry(0, index, n1, n2, 0, 0, INF, e_inf))
    return entries


def spectrum_kappa0(
    system: ThreeBodySystem,
    n_max: int = 5,
    k_max: int = 64,
    scan_arrangements: bool = False,
) -> Spectrum:
    """All feasible E(n1, n2, k) with n1, n2 <= n_max, k in 2..k_max and INF.

    Energies do not depend on l1, l2 beyond n >= l + 1, so entries carry
    l1 = l2 = 0. Ordering is by arrangement, n1, n2, then ascending k.
    """
    if n_max < 1 or k_max < 2:
        raise ValueError("need n_max >= 1 and k_max >= 2")
    if not stable(system):
        raise UnstableSystemError(f"system with charges {system.charges} is unstable")
    systems = arrangements(system) if scan_arrangements else [system]
    entries = []
    best = {}
    for index, candidate in enumerate(systems):
        found = _scan_arrangement(candidate, index, n_max, k_max)
        if found:
            best[index] = lowest_entry(found)
        entries.extend(found)
    return Spectrum(entries=entries, systems=systems, infimum_by_arrangement=best)


def radial_wavefunction_kappa0(n: int, l: int, a0: float, r: float) -> float:
    """Unnormalised u(r) = M_{n, l+1/2}(2 r sqrt(-B0)) with B0 = -a0^2 / (4 n^2)."""
    if not a0 < 0.0:
        raise ValueError("bound states need an attractive coupling a0 < 0")
    QuantumNumbers(n, n, l, l)
    if not r > 0.0:
        raise ValueError("r must be positive")
    z = r * abs(a0) / n
    return whittaker_m(n, l + 0.5, z)
