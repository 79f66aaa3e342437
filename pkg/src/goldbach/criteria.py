"""
Criteria module for the Goldbach sieve toolkit.

This module implements the computation methods that bound or exclude elements of
G_N without enumerating it: divisor bounds for N = 2p, cyclotomic and
mono-orbital classification, window sets and the translation exclusion criterion.
Every criterion here can be cross-checked against symmetry_group_for(N).
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from .modarith import divisors, is_prime, is_prime_or_one, prime_or_one_mask, two_adic_split, units
from .sieve import build_sieve, goldbach_oracle, prime_split
from .symmetry import CheckResult, SymmetryGroup, symmetry_group_for

# Configure logging
logger = logging.getLogger(__name__)

VERDICTS = ("excluded-by-1", "excluded-by-2", "excluded-by-3", "excluded-by-4", "not-excluded")


class WindowSet(BaseModel):
    """
    Odd q < m with q and m - q both 1 or prime, embedded in Z_N.

    Attributes:
        m (int): Even window width, 0 < m < N
        N (int): The ambient modulus
        members (tuple): Sorted members, closed under x -> m - x
    """
    m: int = Field(..., description="Window width")
    N: int = Field(..., description="Ambient modulus")
    members: Tuple[int, ...] = Field(..., description="Sorted members")


class NClassification(BaseModel):
    """Orbit-count classification of an even N."""
    N: int = Field(..., description="The even number")
    cyclotomic: bool = Field(..., description="Every odd prime <= sqrt(N) divides N")
    mono_orbital: bool = Field(..., description="Exactly one orbit Q_k")
    qmo: bool = Field(..., description="At most one orbit Q_k")
    goldbach_consistent: bool = Field(..., description="Complement equals the prime-pair oracle")
    qmo_descendants_hold: bool = Field(..., description="2^j * odd part is q.m.o for 1 < j < k")


class DivisorBound(BaseModel):
    """Order constraint on G_2p from the units inside and outside the sieve."""
    p: int = Field(..., description="The odd prime")
    alpha: int = Field(..., description="Covered units")
    beta: int = Field(..., description="Complement without p")
    gcd: int = Field(..., description="gcd(alpha, beta)")
    allowed: Tuple[int, ...] = Field(..., description="Divisors of the gcd")
    even_allowed: Tuple[int, ...] = Field(..., description="Even divisors of the gcd")
    group_order: int = Field(..., description="Enumerated |G_2p|")
    divides: bool = Field(..., description="|G_2p| divides the gcd")


class TranslationBound(BaseModel):
    """Order constraint on G_N^(1) from the odd residues inside and outside the sieve."""
    N: int = Field(..., description="The even number")
    alpha: int = Field(..., description="Covered odd residues")
    beta: int = Field(..., description="Complement size")
    gcd: int = Field(..., description="gcd(alpha, beta)")
    bound_generator: int = Field(..., description="G_N^(1) lies in <T_(N/gcd)>")
    translation_order: int = Field(..., description="Enumerated |G_N^(1)|")
    divides: bool = Field(..., description="|G_N^(1)| divides the gcd")
    contained: bool = Field(..., description="G_N^(1) lies in <T_bound_generator>")


class CyclotomicReport(BaseModel):
    """Structure of G_N for a cyclotomic N."""
    N: int = Field(..., description="The even number")
    complement_is_units: bool = Field(..., description="Complement equals U(Z_N)")
    unit_part_is_units: bool = Field(..., description="H equals U(Z_N)")
    translation_generator: Optional[int] = Field(None, description="The 2m with G_N^(1) = <T_2m>")
    group_order: int = Field(..., description="|G_N|")


class ExclusionVerdict(BaseModel):
    """Result of the translation exclusion criterion for T_(2 d alpha)."""
    N: int = Field(..., description="The even number")
    d: int = Field(..., description="Half the divisor 2d of N")
    alpha: int = Field(..., description="Unit multiplier")
    translation: int = Field(..., description="2 d alpha")
    intersection: Tuple[int, ...] = Field(..., description="Window set meet complement")
    symmetric: bool = Field(..., description="Intersection fixed by x -> 2 d alpha - x")
    coverage: Tuple[int, ...] = Field(..., description="Union of translates of the intersection")
    verdict: str = Field(..., description="First test that fired, or not-excluded")


def _require_parameters(N: int, d: int, alpha: int) -> int:
    if N < 2 or N % 2:
        raise ValueError(f"expected an even number >= 2, got {N}")
    if d < 1 or N % (2 * d):
        raise ValueError(f"2d={2 * d} does not divide {N}")
    if math.gcd(alpha, N) != 1:
        raise ValueError(f"alpha={alpha} is not coprime to {N}")
    m = 2 * d * alpha
    if not 0 < m < N:
        raise ValueError(f"2 d alpha = {m} must lie strictly between 0 and {N}")
    return m


def window_set(m: int, N: int) -> WindowSet:
    """
    Build the window set of width m inside Z_N.

    Args:
        m (int): Even width with 0 < m < N
        N (int): The ambient modulus

    Returns:
        WindowSet: The odd q < m with q and m - q both 1 or prime

    Example:
        >>> window_set(2, 12).members
        (1,)
    """
    if m % 2 or not 0 < m < N:
        raise ValueError(f"window width must be even with 0 < m < N, got m={m}, N={N}")
    mask = prime_or_one_mask(m)
    q = np.arange(1, m, 2)
    members = q[mask[q] & mask[m - q]]
    return WindowSet(m=m, N=N, members=tuple(int(x) for x in members))


def _coverage(N: int, m: int, intersection: np.ndarray) -> np.ndarray:
    """Mask of the union of T_(m j)(intersection) over the cyclic group <T_m>."""
    step = math.gcd(m, N)
    covered = np.zeros(N, dtype=bool)
    if intersection.size:
        shifts = np.arange(0, N, step)
        covered[(intersection[:, None] + shifts[None, :]) % N] = True
    return covered


def _window_meet(N: int, m: int) -> np.ndarray:
    sieve = build_sieve(N)
    window = np.asarray(window_set(m, N).members, dtype=np.int64)
    return window[sieve.complement_mask[window]] if window.size else window


def exclusion_criterion(N: int, d: int, alpha: int) -> ExclusionVerdict:
    """
    Apply the four exclusion tests for T_(2 d alpha) in order.

    With I the window set of width 2 d alpha met with the complement and U the
    union of its translates under <T_(2 d alpha)>, the tests fire when
    (1) I is empty, (2) I is not fixed by x -> 2 d alpha - x,
    (3) U is a proper subset of the complement, (4) U differs from the complement.

    Args:
        N (int): The even number
        d (int): With 2d dividing N
        alpha (int): A unit modulo N

    Returns:
        ExclusionVerdict: The first test that fired, or "not-excluded"
    """
    m = _require_parameters(N, d, alpha)
    sieve = build_sieve(N)
    meet = _window_meet(N, m)
    meet_set = set(meet.tolist())
    symmetric = {(m - x) % N for x in meet_set} == meet_set
    covered = _coverage(N, m, meet)
    complement = sieve.complement_mask

    if not meet_set:
        verdict = "excluded-by-1"
    elif not symmetric:
        verdict = "excluded-by-2"
    elif not (covered & ~complement).any() and (complement & ~covered).any():
        verdict = "excluded-by-3"
    elif not np.array_equal(covered, complement):
        verdict = "excluded-by-4"
    else:
        verdict = "not-excluded"
    logger.debug(f"Exclusion criterion N={N} d={d} alpha={alpha}: {verdict}")
    return ExclusionVerdict(
        N=N,
        d=d,
        alpha=alpha,
        translation=m,
        intersection=tuple(sorted(meet_set)),
        symmetric=symmetric,
        coverage=tuple(int(x) for x in np.flatnonzero(covered)),
        verdict=verdict,
    )


def coverage_identity_check(N: int, d: int, alpha: int) -> bool:
    """Whether the complement equals the union of translates of its window meet."""
    m = _require_parameters(N, d, alpha)
    covered = _coverage(N, m, _window_meet(N, m))
    return bool(np.array_equal(covered, build_sieve(N).complement_mask))


def subgroup_coverage_check(N: int, d: int, alpha: int) -> bool:
    """The coverage identity for every nonzero multiple of T_(2 d alpha)."""
    m = _require_parameters(N, d, alpha)
    complement = build_sieve(N).complement_mask
    for j in range(1, N // (2 * d)):
        width = (m * j) % N
        if width == 0:
            continue
        if not np.array_equal(_coverage(N, width, _window_meet(N, width)), complement):
            return False
    return True


def valid_parameters(N: int) -> List[Tuple[int, int]]:
    """All (d, alpha) with 2d | N, gcd(alpha, N) = 1 and 0 < 2 d alpha < N."""
    result = []
    for two_d in divisors(N):
        if two_d % 2:
            continue
        d = two_d // 2
        result.extend((d, alpha) for alpha in range(1, (N - 1) // two_d + 1) if math.gcd(alpha, N) == 1)
    return sorted(result)


def prop81_bound(p: int) -> DivisorBound:
    """
    Bound |G_2p| by the divisors of gcd(alpha, beta).

    alpha counts the units of Z_2p covered by the sieve and beta the complement
    residues other than p; together they account for all p - 1 units.

    Args:
        p (int): An odd prime

    Returns:
        DivisorBound: The bound and the enumerated order
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"expected an odd prime, got {p}")
    N = 2 * p
    sieve = build_sieve(N)
    unit_list = np.asarray(units(N).elements, dtype=np.int64)
    alpha = int(sieve.covering[unit_list].sum())
    beta = len([x for x in sieve.complement if x != p])
    gcd = math.gcd(alpha, beta)
    allowed = tuple(divisors(gcd)) if gcd else ()
    order = symmetry_group_for(N).order
    return DivisorBound(
        p=p,
        alpha=alpha,
        beta=beta,
        gcd=gcd,
        allowed=allowed,
        even_allowed=tuple(x for x in allowed if x % 2 == 0),
        group_order=order,
        divides=gcd > 0 and gcd % order == 0,
    )


def prop83_safe_prime(p: int) -> Optional[str]:
    """'Z2' when p = 2q + 1 with q prime, None otherwise."""
    if not is_prime(p):
        raise ValueError(f"expected a prime, got {p}")
    if p > 3 and is_prime((p - 1) // 2):
        return "Z2"
    return None


def is_cyclotomic(N: int) -> bool:
    """Whether every odd prime <= sqrt(N) divides N."""
    return not prime_split(N).q_list


def cyclotomic_structure_check(N: int) -> CyclotomicReport:
    """Compare the complement and H with U(Z_N) for a cyclotomic N."""
    if not is_cyclotomic(N):
        raise ValueError(f"{N} is not cyclotomic")
    unit_list = units(N).elements
    group = symmetry_group_for(N)
    return CyclotomicReport(
        N=N,
        complement_is_units=build_sieve(N).complement == unit_list,
        unit_part_is_units=group.unit_part == unit_list,
        translation_generator=group.g1_generator,
        group_order=group.order,
    )


def converse_cyclotomic_check(N: int) -> CheckResult:
    """H = U(Z_N) must force N to be cyclotomic."""
    if N <= 6 or N % 2:
        raise ValueError(f"expected an even number > 6, got {N}")
    group = symmetry_group_for(N)
    if not build_sieve(N).complement or group.unit_part != units(N).elements:
        return CheckResult(holds=True, applicable=False, note="H is a proper subgroup of U(Z_N)")
    return CheckResult(holds=is_cyclotomic(N))


def orbit_classification(N: int) -> NClassification:
    """
    Classify N by the number of orbits Q_k in its sieve.

    Also records whether a mono-orbital sieve matches the prime-pair oracle and
    whether a q.m.o number 2^k * odd passes the property to 2^j * odd, 1 < j < k.
    """
    q_count = len(prime_split(N).q_list)
    qmo = q_count <= 1
    consistent = True
    if q_count == 1 and N >= 6:
        consistent = list(build_sieve(N).complement) == goldbach_oracle(N)

    descendants = True
    k, odd = two_adic_split(N)
    if qmo and k > 1:
        descendants = all(len(prime_split(2 ** j * odd).q_list) <= 1 for j in range(2, k))

    return NClassification(
        N=N,
        cyclotomic=q_count == 0,
        mono_orbital=q_count == 1,
        qmo=qmo,
        goldbach_consistent=consistent,
        qmo_descendants_hold=descendants,
    )


def prop89_translation_bound(N: int) -> TranslationBound:
    """
    Bound G_N^(1) by gcd(alpha, beta), alpha the covered odd residues and beta
    the complement size, so that alpha + beta = N/2.
    """
    if N < 6 or N % 2:
        raise ValueError(f"expected an even number >= 6, got {N}")
    sieve = build_sieve(N)
    alpha = int(sieve.covering[1::2].sum())
    beta = len(sieve.complement)
    gcd = math.gcd(alpha, beta)
    bound = N // gcd if gcd else N
    group = symmetry_group_for(N)
    order = group.translation_order
    g1 = group.g1_generator
    return TranslationBound(
        N=N,
        alpha=alpha,
        beta=beta,
        gcd=gcd,
        bound_generator=bound,
        translation_order=order,
        divides=gcd > 0 and gcd % order == 0,
        contained=g1 is None or g1 % bound == 0,
    )


def prop814_check(group: SymmetryGroup) -> CheckResult:
    """T_D in G_N forces f_(1+Dt) into H for every unit 1 + Dt."""
    N = group.N
    translations = [f.b for f in group.elements if f.a == 1 and f.b > 0]
    if not translations:
        return CheckResult(holds=True, applicable=False, note="no nontrivial translations")
    unit_set = units(N)
    for D in translations:
        for t in range(1, N):
            u = (1 + D * t) % N
            if u in unit_set and not group.has_unit(u):
                return CheckResult(holds=False, note=f"T_{D} in G but f_{u} is not")
    return CheckResult(holds=True)


def prop815_check(group: SymmetryGroup) -> CheckResult:
    """H = {1, N-1} pins G_N down to <f_-1> or <T_(N/2) f_(1+N/2)> x <f_-1>."""
    N = group.N
    if N <= 2 or group.unit_part != (1, N - 1):
        return CheckResult(holds=True, applicable=False, note="H is not {1, N-1}")
    k, _ = two_adic_split(N)
    half = N // 2
    expected = {(1, 0), (N - 1, 0)}
    if k > 1:
        expected |= {((1 + half) % N, half), ((N - 1 - half) % N, half)}
    return CheckResult(holds=set(group.keys) == expected)


def prop816_check(N: int, d: int, alpha: int) -> CheckResult:
    """T_(2 d alpha) in G_N forces a nonempty window meet fixed by x -> 2 d alpha - x."""
    verdict = exclusion_criterion(N, d, alpha)
    if not symmetry_group_for(N).has_translation(verdict.translation):
        return CheckResult(holds=True, applicable=False, note=f"T_{verdict.translation} not in G_{N}")
    return CheckResult(holds=bool(verdict.intersection) and verdict.symmetric)


def prop823_check(N: int) -> CheckResult:
    """T_2 lies outside G_N for every N >= 10."""
    if N % 2:
        raise ValueError(f"expected an even number, got {N}")
    group = symmetry_group_for(N)
    if N < 10:
        return CheckResult(holds=True, applicable=False, note=f"N < 10: T_2 in G_{N} is {group.has_translation(2)}")
    if not build_sieve(N).complement:
        return CheckResult(holds=True, applicable=False, note="empty complement")
    return CheckResult(holds=not group.has_translation(2))


def power_of_two_translation_check(N: int) -> CheckResult:
    """For N = 2^k, T_(N/2) outside G_N forces a trivial G_N^(1)."""
    k, odd = two_adic_split(N)
    if odd != 1 or k < 1:
        return CheckResult(holds=True, applicable=False, note="N is not a power of two")
    group = symmetry_group_for(N)
    if group.has_translation(N // 2):
        return CheckResult(holds=True, applicable=False, note=f"T_{N // 2} in G_{N}")
    return CheckResult(holds=group.g1_generator is None)


def goldbach_pair_check(N: int) -> bool:
    """Whether the complement holds a pair of primes, not only 1 and N - 1."""
    return any(
        x != 1 and N - x != 1 and is_prime_or_one(x) and is_prime_or_one(N - x)
        for x in build_sieve(N).complement
    )
