"""Real-argument special functions used by the radial solutions.

Gamma comes from the standard library; the modified Bessel functions and the
Whittaker function M are evaluated from their power series, with a continued
fraction for K at larger arguments where the reflection formula cancels.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

INTEGER_ORDER_GUARD = 1e-6


class SpecialFunctionDomainError(ValueError):
    pass


class AccuracyError(ArithmeticError):
    """A series or continued fraction did not converge within the term budget."""


@dataclass(frozen=True)
class AccuracyContract:
    rel_tol: float = 1e-12
    max_terms: int = 500

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


DEFAULT_CONTRACT = AccuracyContract()


def ln_gamma(x: float) -> float:
    if not x > 0.0:
        raise SpecialFunctionDomainError(f"ln_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def gamma_ratio(n: int, nu: float) -> float:
    """Gamma(n + nu) / Gamma(n - nu) for 0 < nu < n."""
    return math.exp(log_gamma_ratio(n, nu))


def log_gamma_ratio(n: int, nu: float) -> float:
    if n < 1:
        raise SpecialFunctionDomainError(f"n must be a positive integer, got {n!r}")
    if not 0.0 < nu < n:
        raise SpecialFunctionDomainError(f"gamma_ratio needs 0 < nu < n, got nu={nu!r}, n={n}")
    return math.lgamma(n + nu) - math.lgamma(n - nu)


def _near_integer(nu: float, guard: float = INTEGER_ORDER_GUARD) -> bool:
    return abs(nu - round(nu)) <= guard


def bessel_i(nu: float, z: float, contract: AccuracyContract = DEFAULT_CONTRACT) -> float:
    """Modified Bessel function of the first kind by its ascending series.

    Negative non-integer orders are allowed (needed by the reflection formula
    for K).
    """
    if not z > 0.0:
        raise SpecialFunctionDomainError(f"bessel_i needs z > 0, got {z!r}")
    if nu < 0.0 and _near_integer(nu, 0.0):
        # I_{-m} = I_m for integer m
        nu = -nu
    half = 0.5 * z
    q = half * half
    # first term (z/2)^nu / Gamma(nu + 1), sign carried by Gamma for nu < -1
    term = math.exp(nu * math.log(half)) / math.gamma(nu + 1.0)
    total = term
    stop = contract.rel_tol / 10.0
    for m in range(1, contract.max_terms):
        term *= q / (m * (m + nu))
        total += term
        # the terms only settle into one sign once m exceeds -nu
        if m + nu > 0.0 and abs(term) <= stop * abs(total):
            return total
    raise AccuracyError(f"I_{nu}({z}) did not converge in {contract.max_terms} terms")


def _bessel_k_series(nu: float, z: float, contract: AccuracyContract) -> float:
    return 0.5 * math.pi * (bessel_i(-nu, z, contract) - bessel_i(nu, z, contract)) / math.sin(nu * math.pi)


def _bessel_k_cf2(nu: float, z: float, contract: AccuracyContract) -> float:
    # Steed's continued fraction for K_mu, K_{mu+1} with |mu| <= 1/2, then
    # upward recurrence K_{v+1} = (2v/z) K_v + K_{v-1}.
    steps = int(nu + 0.5)
    mu = nu - steps
    mu2 = mu * mu
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25 - mu2
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, contract.max_terms + 2):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels) <= 0.1 * contract.rel_tol * abs(s):
            break
    else:
        raise AccuracyError(f"K_{nu}({z}) continued fraction did not converge")
    h *= a1
    k_mu = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / s
    k_next = k_mu * (mu + z + 0.5 - h) / z
    for i in range(1, steps + 1):
        k_mu, k_next = k_next, (mu + i) * (2.0 / z) * k_next + k_mu
    return k_mu


def bessel_k(nu: float, z: float, contract: AccuracyContract = DEFAULT_CONTRACT) -> float:
    """Modified Bessel function of the second kind for non-integer order.

    K_nu = (pi/2) (I_{-nu} - I_nu) / sin(nu pi). For z > 2 the two series
    cancel badly, so a continued fraction is used instead.
    """
    if not z > 0.0:
        raise SpecialFunctionDomainError(f"bessel_k needs z > 0, got {z!r}")
    nu = abs(nu)
    if _near_integer(nu):
        raise SpecialFunctionDomainError(
            f"bessel_k order {nu!r} lies within {INTEGER_ORDER_GUARD:g} of an integer"
        )
    if z <= 2.0:
        return _bessel_k_series(nu, z, contract)
    return _bessel_k_cf2(nu, z, contract)


def kummer_m(a: float, b: float, z: float, contract: AccuracyContract = DEFAULT_CONTRACT) -> float:
    """Confluent hypergeometric 1F1(a; b; z); a polynomial when a is a nonpositive integer."""
    if b <= 0.0 and float(b).is_integer():
        raise SpecialFunctionDomainError(f"1F1 undefined for b = {b!r}")
    term = 1.0
    total = 1.0
    stop = contract.rel_tol / 10.0
    terminating = a <= 0.0 and float(a).is_integer()
    for m in range(contract.max_terms):
        term *= (a + m) / (b + m) * z / (m + 1)
        total += term
        if term == 0.0 and terminating:
            return total
        if not terminating and m + a > 0.0 and abs(term) <= stop * abs(total):
            return total
    raise AccuracyError(f"1F1({a}; {b}; {z}) did not converge in {contract.max_terms} terms")


def whittaker_m(n: float, mu: float, z: float, contract: AccuracyContract = DEFAULT_CONTRACT) -> float:
    """Whittaker M_{n,mu}(z) = z^(mu+1/2) exp(-z/2) 1F1(mu + 1/2 - n; 2 mu + 1; z)."""
    if not z > 0.0:
        raise SpecialFunctionDomainError(f"whittaker_m needs z > 0, got {z!r}")
    b = 2.0 * mu + 1.0
    if b <= 0.0 and b.is_integer():
        raise SpecialFunctionDomainError(f"whittaker_m undefined for mu = {mu!r}")
    series = kummer_m(mu + 0.5 - n, b, z, contract)
    prefactor = math.exp((mu + 0.5) * math.log(z) - 0.5 * z)
    return prefactor * series
