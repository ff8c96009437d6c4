"""Three-body systems, charge arrangements and kinetic coefficients.

Everything here is in atomic units: charges in units of the elementary
charge, masses in electron masses.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple


def _as_charge(value) -> int:
    if isinstance(value, bool):
        raise TypeError("charges must be integers, not booleans")
    if isinstance(value, int):
        charge = value
    elif isinstance(value, float) and value.is_integer():
        charge = int(value)
    else:
        raise ValueError(f"charge {value!r} is not an integer")
    if charge == 0:
        raise ValueError("charges must be nonzero")
    return charge


def _as_mass(value) -> float:
    mass = float(value)
    if not math.isfinite(mass) or mass <= 0.0:
        raise ValueError(f"mass {value!r} must be positive and finite")
    return mass


@dataclass(frozen=True)
class ThreeBodySystem:
    charges: Tuple[int, int, int]
    masses: Tuple[float, float, float]
    label: Optional[str] = None

    def __post_init__(self):
        if len(self.charges) != 3 or len(self.masses) != 3:
            raise ValueError("a three-body system needs exactly three charges and three masses")
        object.__setattr__(self, "charges", tuple(_as_charge(z) for z in self.charges))
        object.__setattr__(self, "masses", tuple(_as_mass(m) for m in self.masses))

    def permuted(self, permutation: Sequence[int]) -> "ThreeBodySystem":
        """Return the system with particle ``i`` taken from position ``permutation[i]``."""
        return ThreeBodySystem(
            charges=tuple(self.charges[p] for p in permutation),
            masses=tuple(self.masses[p] for p in permutation),
            label=self.label,
        )

    def swapped_ends(self) -> "ThreeBodySystem":
        """Relabel particles 1 and 3."""
        return self.permuted((2, 1, 0))


@dataclass(frozen=True)
class PairCouplings:
    z12: int
    z23: int
    z13: int


@dataclass(frozen=True)
class KineticCoefficients:
    alpha: float
    beta: float
    gamma: float
    xi: float
    zeta: float
    eta: float


@dataclass(frozen=True)
class Arrangement:
    """A relabelling of the particles; ``permutation[i]`` is the source index of particle ``i``."""

    permutation: Tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.permutation) != [0, 1, 2]:
            raise ValueError(f"{self.permutation!r} is not a permutation of (0, 1, 2)")
        object.__setattr__(self, "permutation", tuple(self.permutation))

    def apply(self, system: ThreeBodySystem) -> ThreeBodySystem:
        return system.permuted(self.permutation)

    def inverse(self) -> "Arrangement":
        inv = [0, 0, 0]
        for i, p in enumerate(self.permutation):
            inv[p] = i
        return Arrangement(tuple(inv))


ALL_ARRANGEMENTS = tuple(Arrangement(p) for p in itertools.permutations(range(3)))


def pair_couplings(system: ThreeBodySystem) -> PairCouplings:
    z1, z2, z3 = system.charges
    return PairCouplings(z12=z1 * z2, z23=z2 * z3, z13=z1 * z3)


def kinetic_coefficients(system: ThreeBodySystem) -> KineticCoefficients:
    """Reduced-mass constants of the kinetic operator written in the relative
    coordinates r12, r23 (and the equivalent r13 forms)."""
    inv1, inv2, inv3 = (1.0 / m for m in system.masses)
    return KineticCoefficients(
        alpha=0.5 * (inv2 + inv3),
        beta=0.5 * (inv1 + inv2),
        gamma=inv2,
        xi=0.5 * (inv1 + 4.0 * inv2 + inv3),
        zeta=-(2.0 * inv2 + inv3),
        eta=-(inv1 + 2.0 * inv2),
    )


def arrangements(system: ThreeBodySystem) -> list[ThreeBodySystem]:
    """Distinct joint permutations of (charge, mass); the original comes first."""
    seen = set()
    out = []
    for arrangement in ALL_ARRANGEMENTS:
        candidate = arrangement.apply(system)
        key = (candidate.charges, candidate.masses)
        if key in seen:
            continue
        seen.add(key)
        out.append(candidate)
    return out
