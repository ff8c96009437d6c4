"""Reproduce the headline numbers for helium, Ps- and positron-hydrogen.

    python3 scripts/numerical_results.py
"""
from threebody.cli import lookup
from threebody.geometry import INF, dk_nonempty
from threebody.kappa0 import energy_kappa0, spectrum_kappa0
from threebody.kappa1 import calibrate_r0, find_matches, lowest_match, total_energy
from threebody.system import kinetic_coefficients

PS_REFERENCE = -0.261995


def helium():
    system = lookup("helium")
    spectrum = spectrum_kappa0(system, n_max=1, scan_arrangements=True)
    print("helium, kappa = 0")
    for index, entry in sorted(spectrum.infimum_by_arrangement.items()):
        print(f"  arrangement {spectrum.systems[index].charges}: E(1,1,{entry.k}) = {entry.energy:.6f} Hartree")
    for candidate in spectrum.systems:
        print(f"  kappa = 1 matches for {candidate.charges}: {len(find_matches(candidate))}")


def ps_minus():
    system = lookup("ps-minus")
    e0 = spectrum_kappa0(system).infimum.energy
    sol = dk_nonempty(system.charges, 1.0, INF).solution
    print("Ps-, kappa = 0")
    print(f"  E(1,1,inf) = {e0:.6f} Hartree, omega = {sol.omega:.6f} (pi/3 = 1.047198)")
    matches = find_matches(system)
    print("Ps-, kappa = 1")
    for m in matches:
        print(f"  k={m.k} wp*={m.wp_star:.6f} nu={m.nu1:.6f} E1 = {m.energy_coefficient:.6f}/r0^2")
    best = lowest_match(matches)
    r0 = calibrate_r0(system, PS_REFERENCE, matches=matches, e0=e0)
    total = total_energy([e0, best.energy(r0)])
    print(f"  r0 = {r0:.4f} reproduces E0 + E1 = {total:.6f} Hartree")


def positron_hydrogen():
    system = lookup("e+hydrogen")
    energy = energy_kappa0(system, 2, 1, INF)
    wp = 2 * (kinetic_coefficients(system).alpha / kinetic_coefficients(system).beta) ** 0.5
    print("e+H, kappa = 0")
    print(f"  E(2,1,inf) at wp = {wp:.6f}: {energy:.6f} Hartree = {2 * energy:.6f} Ry")


if __name__ == "__main__":
    helium()
    ps_minus()
    positron_hydrogen()
