"""Bound-state energies of Coulomb three-body systems from one-dimensional
radial problems with inverse-power potentials."""

from .geometry import INF, dk_nonempty, feasible_k_set, stable
from .kappa0 import energy_kappa0, spectrum_kappa0, wp_for
from .kappa1 import calibrate_r0, find_matches, scan_matching, total_energy
from .system import ThreeBodySystem, arrangements, kinetic_coefficients, pair_couplings

__all__ = [
    "INF",
    "ThreeBodySystem",
    "arrangements",
    "calibrate_r0",
    "dk_nonempty",
    "energy_kappa0",
    "feasible_k_set",
    "find_matches",
    "kinetic_coefficients",
    "pair_couplings",
    "scan_matching",
    "spectrum_kappa0",
    "stable",
    "total_energy",
    "wp_for",
]
