"""Triangle geometry behind the stability criterion.

For an exponent k the charge-weighted sum Z12/r12^k + Z23/r23^k + Z13/r13^k
must vanish. Writing r12/r23 = wp and r13/r23 = c_k turns this into a
condition on the side ratios (1, wp, c_k) of the particle triangle; the
angles omega (at particle 1), sigma (at particle 3) and tau = omega + sigma
follow from the sine law.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Sequence, Union

from .system import PairCouplings, ThreeBodySystem, arrangements, kinetic_coefficients

EXCLUDED_WP_RTOL = 1e-9
UNIT_WP_ATOL = 1e-12
CLOSURE_TOL = 1e-10


@total_ordering
class _Infinity:
    """The k = infinity limit. Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("threebody.INF")

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Exponent = Union[int, _Infinity]


class GeometryError(ValueError):
    pass


class ExcludedMultiplierError(GeometryError):
    """Z12 + Z23 wp^k vanishes: wp sits on the excluded value (-Z1/Z3)^(1/k)."""


class InfeasibleGeometry(GeometryError):
    pass


def check_exponent(k) -> Exponent:
    if k is INF:
        return k
    if isinstance(k, bool) or not isinstance(k, int) or k < 2:
        raise ValueError(f"k must be an integer >= 2 or INF, got {k!r}")
    return k


def parse_exponent(text: str) -> Exponent:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return INF
    return check_exponent(int(text))


def _wp_power_class(wp: float) -> int:
    """-1, 0, +1 as wp^k tends to 0, 1, infinity for k -> infinity."""
    if abs(wp - 1.0) <= UNIT_WP_ATOL:
        return 0
    return -1 if wp < 1.0 else 1


@dataclass(frozen=True)
class GeometrySolution:
    k: Exponent
    wp: float
    ck: float
    omega: float
    sigma: float
    tau: float

    @property
    def side_ratios(self) -> tuple[float, float, float]:
        """(r12, r23, r13) with r12 = 1."""
        return 1.0, 1.0 / self.wp, self.ck / self.wp

    @property
    def angle_case(self) -> int:
        """Quadrant case of (omega, sigma): 1 both acute, 2 sigma obtuse, 3 omega obtuse."""
        half = 0.5 * math.pi
        if self.omega <= half:
            return 1 if self.sigma <= half else 2
        return 3 if self.sigma <= half else 4

    def closure_errors(self) -> tuple[float, float, float]:
        s_omega = math.sin(self.omega)
        return (
            abs(self.tau - self.omega - self.sigma),
            abs(math.sin(self.sigma) - self.wp * s_omega),
            abs(math.sin(self.tau) - self.ck * s_omega),
        )

    def validates(self, tol: float = CLOSURE_TOL) -> bool:
        return max(self.closure_errors()) <= tol and self.angle_case != 4


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    case: Optional[int] = None
    reason: Optional[str] = None
    solution: Optional[GeometrySolution] = None


def c_k(couplings: PairCouplings, wp: float, k: Exponent) -> float:
    """Side ratio r13/r23 that makes the exponent-k sum vanish at multiplier wp."""
    check_exponent(k)
    z12, z23, z13 = couplings.z12, couplings.z23, couplings.z13
    if k is INF:
        side = _wp_power_class(wp)
        if side < 0:
            denominator, result = z12, wp
        elif side > 0:
            denominator, result = z23, 1.0
        else:
            denominator, result = z12 + z23, 1.0
        if denominator == 0:
            raise ExcludedMultiplierError(f"excluded multiplier wp={wp!r} at k=INF")
        if -z13 / denominator <= 0.0:
            raise InfeasibleGeometry(f"nonpositive c_k base at wp={wp!r}, k=INF")
        return result
    denominator = z12 + z23 * wp**k
    if denominator == 0.0:
        raise ExcludedMultiplierError(f"excluded multiplier wp={wp!r} at k={k}")
    base = -z13 / denominator
    if base <= 0.0:
        raise InfeasibleGeometry(f"nonpositive c_k base {base!r} at wp={wp!r}, k={k}")
    return base ** (1.0 / k) * wp


def sign_condition(charges: Sequence[int], wp: float, k: Exponent) -> bool:
    """Z2/Z3 + (Z2/Z1) wp^k < 0, i.e. the c_k base is positive."""
    z1, z2, z3 = charges
    if k is INF:
        side = _wp_power_class(wp)
        if side < 0:
            return z2 / z3 < 0.0
        if side > 0:
            return z2 / z1 < 0.0
        return z2 / z3 + z2 / z1 < 0.0
    return z2 / z3 + (z2 / z1) * wp**k < 0.0


def triangle_product(wp: float, ck: float) -> float:
    return (1.0 + ck + wp) * (1.0 + ck - wp) * (1.0 - ck + wp) * (ck + wp - 1.0)


def omega_from(wp: float, ck: float) -> Optional[float]:
    """Principal angle omega in [0, pi/2] from the side triplet (1, wp, ck).

    None when the triplet violates the triangle inequality or sin(omega) > 1.
    """
    if not (wp > 0.0 and ck > 0.0):
        return None
    product = triangle_product(wp, ck)
    if product <= 0.0:
        return None
    s = math.sqrt(product) / (2.0 * wp * ck)
    if s > 1.0:
        if s - 1.0 > 1e-12:
            return None
        s = 1.0
    return math.asin(s)


def solve_angles(wp: float, ck: float, k: Exponent) -> Optional[GeometrySolution]:
    """Interior triangle angles for sides r23 = 1, r12 = wp, r13 = ck.

    The sine of omega comes from omega_from; the cosine law fixes which
    quadrant omega and sigma are in.
    """
    principal = omega_from(wp, ck)
    if principal is None:
        return None
    sin_omega = math.sin(principal)
    cos_omega = (wp * wp + ck * ck - 1.0) / (2.0 * wp * ck)
    cos_sigma = (1.0 + ck * ck - wp * wp) / (2.0 * ck)
    omega = math.atan2(sin_omega, cos_omega)
    sigma = math.atan2(wp * sin_omega, cos_sigma)
    tau = omega + sigma
    if not (0.0 < omega < math.pi and 0.0 < sigma < math.pi and tau < math.pi):
        return None
    return GeometrySolution(k=k, wp=wp, ck=ck, omega=omega, sigma=sigma, tau=tau)


def charge_case(charges: Sequence[int]) -> Optional[int]:
    """Which particle carries the odd sign: 3 -> case 1, 1 -> case 2, 2 -> case 3."""
    s1, s2, s3 = (z > 0 for z in charges)
    if s1 == s2 != s3:
        return 1
    if s2 == s3 != s1:
        return 2
    if s1 == s3 != s2:
        return 3
    return None


def _case_condition(case: int, charges: Sequence[int], wp: float, k: Exponent) -> bool:
    if case == 3:
        return wp > 0.0
    z1, _, z3 = charges
    threshold = -z1 / z3
    if k is INF:
        side = _wp_power_class(wp)
        power = {-1: 0.0, 0: 1.0, 1: math.inf}[side]
    else:
        power = wp**k
    return power < threshold if case == 1 else power > threshold


def _is_excluded(charges: Sequence[int], wp: float, k: Exponent) -> bool:
    z1, _, z3 = charges
    if z1 / z3 >= 0.0:
        return False
    if k is INF:
        return _wp_power_class(wp) == 0 and z1 == -z3
    excluded = (-z1 / z3) ** (1.0 / k)
    return abs(wp - excluded) <= EXCLUDED_WP_RTOL * excluded


def dk_nonempty(charges: Sequence[int], wp: float, k: Exponent) -> FeasibilityReport:
    """Is there a nondegenerate triangle solving the exponent-k criterion at wp?"""
    k = check_exponent(k)
    charges = tuple(charges)
    case = charge_case(charges)
    if case is None:
        return FeasibilityReport(False, reason="no particle of opposite sign")
    if not wp > 0.0:
        return FeasibilityReport(False, case, reason="degenerate multiplier wp <= 0")
    if not _case_condition(case, charges, wp, k):
        return FeasibilityReport(False, case, reason="charge-sign case condition fails")
    if _is_excluded(charges, wp, k):
        return FeasibilityReport(False, case, reason="excluded multiplier")
    if not sign_condition(charges, wp, k):
        return FeasibilityReport(False, case, reason="sign condition fails")
    z1, z2, z3 = charges
    couplings = PairCouplings(z1 * z2, z2 * z3, z1 * z3)
    try:
        ck = c_k(couplings, wp, k)
    except ExcludedMultiplierError:
        return FeasibilityReport(False, case, reason="excluded multiplier")
    except InfeasibleGeometry:
        return FeasibilityReport(False, case, reason="sign condition fails")
    solution = solve_angles(wp, ck, k)
    if solution is None:
        return FeasibilityReport(False, case, reason="triangle violation")
    if solution.angle_case == 4:
        return FeasibilityReport(False, case, reason="angle case 4")
    return FeasibilityReport(True, case, solution=solution)


def feasible_k_set(
    charges: Sequence[int], wp: float, k_max: int, include_inf: bool = True
) -> list[Exponent]:
    """Exponents in 2..k_max (and INF) with a feasible geometry, ascending."""
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    ks: list[Exponent] = [k for k in range(2, k_max + 1) if dk_nonempty(charges, wp, k).feasible]
    if include_inf and dk_nonempty(charges, wp, INF).feasible:
        ks.append(INF)
    return ks


def residual(couplings: PairCouplings, solution: GeometrySolution) -> float:
    """Z12/r12^k + Z23/r23^k + Z13/r13^k at r12 = 1, r23 = 1/wp, r13 = ck/wp."""
    k = solution.k
    if k is INF:
        raise ValueError("residual needs a finite exponent")
    wp, ck = solution.wp, solution.ck
    return couplings.z12 + couplings.z23 * wp**k + couplings.z13 * (wp / ck) ** k


def feasibility_window(charges: Sequence[int], k: int) -> tuple[float, float]:
    """An interval of wp that contains every feasible multiplier for exponent k."""
    k = check_exponent(k)
    if k is INF:
        raise ValueError("feasibility_window needs a finite exponent")
    case = charge_case(charges)
    if case is None:
        raise InfeasibleGeometry("no particle of opposite sign")
    z1, z2, z3 = charges
    if case == 1:
        return 0.0, (-z1 / z3) ** (1.0 / k)
    if case == 3:
        # c_k is bounded by |Z1/Z2|^(1/k) and the triangle needs wp < 1 + c_k
        return 0.0, 1.0 + abs(z1 / z2) ** (1.0 / k)
    lo = (-z1 / z3) ** (1.0 / k)
    couplings = PairCouplings(z1 * z2, z2 * z3, z1 * z3)
    # c_k decreases with wp here, so wp - 1 - c_k changes sign once
    hi = max(2.0, 2.0 * lo)
    while hi - 1.0 - c_k(couplings, hi, k) <= 0.0:
        hi *= 2.0
    return lo, hi


@dataclass(frozen=True)
class StabilityResult:
    stable: bool
    system: Optional[ThreeBodySystem] = None
    witness: Optional[GeometrySolution] = None

    def __bool__(self):
        return self.stable


def stable(system: ThreeBodySystem, k_max: int = 16) -> StabilityResult:
    """Search the arrangements for a feasible triangle; the first one found is the witness."""
    if charge_case(system.charges) is None:
        return StabilityResult(False)
    for candidate in arrangements(system):
        coeffs = kinetic_coefficients(candidate)
        natural = math.sqrt(coeffs.alpha / coeffs.beta)
        for wp in (natural, 1.0):
            for k in [*range(2, k_max + 1), INF]:
                report = dk_nonempty(candidate.charges, wp, k)
                if report.feasible:
                    return StabilityResult(True, candidate, report.solution)
    return StabilityResult(False)
